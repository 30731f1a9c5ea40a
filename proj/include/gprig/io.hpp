#pragma once

// CSV persistence. All floating values are written with 17 significant digits
// so that a file read back reproduces the in-memory doubles exactly.

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gprig/error.hpp"
#include "gprig/grid.hpp"
#include "gprig/solvernd.hpp"

namespace gprig {

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Header `x,u,v`, one row per node.
inline void write_profile_csv(std::ostream& os, const ProfilePair& p) {
  os << "x,u,v\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    os << format_double(p.grid.x(i)) << ',' << format_double(p.u[i]) << ',' << format_double(p.v[i]) << '\n';
  }
}

namespace detail {
inline std::vector<double> split_numbers(const std::string& line, std::size_t expected, std::size_t lineno) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Io, "bad number '" + cell + "' on line " + std::to_string(lineno));
    }
  }
  if (out.size() != expected) {
    throw Error(ErrorKind::Io, "expected " + std::to_string(expected) + " columns on line " + std::to_string(lineno));
  }
  return out;
}
}  // namespace detail

/// Reads a profile written by write_profile_csv. The grid is rebuilt from the
/// first and last x values and the row count; the x column must match it.
inline ProfilePair read_profile_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("x,u,v", 0) != 0) throw Error(ErrorKind::Io, "missing header x,u,v");
  std::vector<double> xs, us, vs;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto row = detail::split_numbers(line, 3, lineno);
    xs.push_back(row[0]);
    us.push_back(row[1]);
    vs.push_back(row[2]);
  }
  if (xs.size() < 3) throw Error(ErrorKind::Io, "profile needs at least 3 rows");
  if (xs.front() != -xs.back()) throw Error(ErrorKind::Io, "profile grid is not symmetric about 0");
  const Grid1D g(xs.back(), xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::abs(xs[i] - g.x(i)) > 1e-9 * (1.0 + g.half_length())) {
      throw Error(ErrorKind::Io, "profile grid is not uniform at row " + std::to_string(i + 2));
    }
  }
  return ProfilePair(g, std::move(us), std::move(vs));
}

/// Header `xp,xn,u,v`; transverse index outer, normal index inner.
inline void write_slab_csv(std::ostream& os, const SlabField& f) {
  os << "xp,xn,u,v\n";
  for (std::size_t t = 0; t < f.nt(); ++t) {
    for (std::size_t j = 0; j < f.nn(); ++j) {
      const std::size_t k = f.index(t, j);
      os << format_double(f.transverse.x(t)) << ',' << format_double(f.normal.x(j)) << ',' << format_double(f.u[k])
         << ',' << format_double(f.v[k]) << '\n';
    }
  }
}

/// Header `step,energy,update_norm`.
inline void write_energy_trace_csv(std::ostream& os, const FlowOutcome& out) {
  os << "step,energy,update_norm\n";
  for (std::size_t k = 0; k < out.energy_trace.size(); ++k) {
    os << k << ',' << format_double(out.energy_trace[k]) << ',' << format_double(out.update_trace[k]) << '\n';
  }
}

template <class Writer>
void write_file(const std::string& path, Writer&& writer) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  writer(os);
  if (!os) throw Error(ErrorKind::Io, "write to '" + path + "' failed");
}

}  // namespace gprig
