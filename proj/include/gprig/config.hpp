#pragma once

// Run configuration shared by the command-line tools. Stored on disk as flat
// `key = value` text grouped in [sections]; every run writes its resolved
// configuration next to its outputs so it can be replayed with --config.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "gprig/error.hpp"
#include "gprig/io.hpp"
#include "gprig/solver1d.hpp"
#include "gprig/solvernd.hpp"
#include "gprig/verify.hpp"

namespace gprig {

struct RunConfig {
  double lambda = 3.0;
  double half_length = 20.0;
  std::size_t n = 2001;
  int transverse_dims = 1;
  SolveOptions solve;
  double dt = 0.0;
  double steady_tol = 1e-10;
  int max_steps = 200000;
  double slab_width = 8.0;
  std::size_t slab_nt = 64;
  std::size_t slab_nn = 801;
  double amplitude = 0.1;
  double box_width = 8.0;
  std::size_t box_n = 64;
  double sweep_from = 2.0;
  double sweep_to = 6.0;
  double sweep_step = 0.5;
  std::string mode = "gibbons";
  std::uint64_t seed = 7;
  std::size_t jobs = 1;
  std::string out;             // empty: GP_RIGIDITY_OUT, else ./gprig-out
  std::string stages = "all";  // comma list for the verify battery

  FlowOptions flow() const {
    FlowOptions f;
    f.dt = dt;
    f.steady_tol = steady_tol;
    f.max_steps = max_steps;
    f.rng_seed = seed;
    return f;
  }

  SuiteOptions suite() const {
    SuiteOptions o;
    o.half_length = half_length;
    o.n = n;
    o.solve = solve;
    o.flow = flow();
    o.seed = seed;
    o.jobs = jobs;
    o.gibbons_width = slab_width;
    o.gibbons_nt = slab_nt;
    o.gibbons_nn = slab_nn;
    o.gibbons_amplitude = amplitude;
    o.box_width = box_width;
    o.box_n = box_n;
    o.stages = parse_stages(stages);
    return o;
  }

  /// Throws InvalidArgument naming the first offending field.
  void validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
      throw Error(ErrorKind::InvalidArgument, "invalid config field '" + field + "': " + why);
    };
    if (!std::isfinite(lambda) || lambda <= 0.0) fail("model.lambda", "must be finite and > 0");
    if (!std::isfinite(half_length) || half_length <= 0.0) fail("grid.L", "must be finite and > 0");
    if (n < 3) fail("grid.n", "must be >= 3");
    if (transverse_dims < 0) fail("grid.transverse_dims", "must be >= 0");
    if (!(solve.newton_tol > 0.0)) fail("solve.tol", "must be > 0");
    if (solve.max_iters < 1) fail("solve.max_iters", "must be >= 1");
    if (!(solve.damping_min > 0.0 && solve.damping_min <= 1.0)) fail("solve.damping_min", "must lie in (0, 1]");
    if (!(solve.continuation_step > 0.0)) fail("solve.continuation_step", "must be > 0");
    if (!(dt >= 0.0)) fail("flow.dt", "must be >= 0 (0 selects the stability bound)");
    if (!(steady_tol > 0.0)) fail("flow.steady_tol", "must be > 0");
    if (max_steps < 1) fail("flow.max_steps", "must be >= 1");
    if (!(slab_width > 0.0)) fail("slab.width", "must be > 0");
    if (slab_nt < 1) fail("slab.nt", "must be >= 1");
    if (slab_nn < 3) fail("slab.nn", "must be >= 3");
    if (!(amplitude >= 0.0 && amplitude <= 1.0)) fail("slab.amplitude", "must lie in [0, 1]");
    if (!(box_width > 0.0)) fail("box.width", "must be > 0");
    if (box_n < 1) fail("box.n", "must be >= 1");
    if (!(sweep_step > 0.0)) fail("sweep.step", "must be > 0");
    if (mode != "gibbons" && mode != "liouville" && mode != "lambda1") {
      fail("relax.mode", "must be one of gibbons, liouville, lambda1");
    }
    if (jobs < 1) fail("run.jobs", "must be >= 1");
    try {
      (void)parse_stages(stages);
    } catch (const Error& e) {
      fail("verify.stages", e.what());
    }
  }

  /// "all", or a comma list drawn from profiles, uniqueness, gibbons,
  /// liouville, unit, counterexample.
  static SuiteStages parse_stages(const std::string& text) {
    if (text == "all") return {};
    SuiteStages s = SuiteStages::none();
    std::stringstream ss(text);
    std::string item;
    bool any = false;
    while (std::getline(ss, item, ',')) {
      if (item == "profiles") s.profiles = true;
      else if (item == "uniqueness") s.uniqueness = true;
      else if (item == "gibbons") s.gibbons = true;
      else if (item == "liouville") s.liouville = true;
      else if (item == "unit") s.unit = true;
      else if (item == "counterexample") s.counterexample = true;
      else throw Error(ErrorKind::InvalidArgument, "unknown stage '" + item + "'");
      any = true;
    }
    if (!any) throw Error(ErrorKind::InvalidArgument, "empty stage list");
    return s;
  }
};

namespace detail {

struct ConfigField {
  const char* section;
  const char* key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <class T>
T parse_value(const std::string& text, const std::string& field) {
  std::istringstream is(text);
  T value{};
  if constexpr (std::is_same_v<T, bool>) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw Error(ErrorKind::InvalidArgument, "invalid config field '" + field + "': expected true/false");
  } else if constexpr (std::is_same_v<T, std::string>) {
    return text;
  } else if constexpr (std::is_floating_point_v<T>) {
    try {
      std::size_t used = 0;
      value = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "invalid config field '" + field + "': not a number: '" + text + "'");
    }
    return value;
  } else {
    if (!text.empty() && text.front() == '-' && std::is_unsigned_v<T>) {
      throw Error(ErrorKind::InvalidArgument, "invalid config field '" + field + "': must be non-negative");
    }
    is >> value;
    if (!is || is.peek() != std::char_traits<char>::eof()) {
      throw Error(ErrorKind::InvalidArgument, "invalid config field '" + field + "': not an integer: '" + text + "'");
    }
    return value;
  }
}

template <class T>
std::string show_value(const T& v) {
  if constexpr (std::is_same_v<T, bool>) {
    return v ? "true" : "false";
  } else if constexpr (std::is_same_v<T, std::string>) {
    return v;
  } else if constexpr (std::is_floating_point_v<T>) {
    return format_double(v);
  } else {
    return std::to_string(v);
  }
}

template <class T>
ConfigField field(const char* section, const char* key, T RunConfig::*member) {
  const std::string name = std::string(section) + "." + key;
  return {section, key, [member, name](RunConfig& c, const std::string& s) { c.*member = parse_value<T>(s, name); },
          [member](const RunConfig& c) { return show_value(c.*member); }};
}

template <class T>
ConfigField solve_field(const char* key, T SolveOptions::*member) {
  const std::string name = std::string("solve.") + key;
  return {"solve", key,
          [member, name](RunConfig& c, const std::string& s) { c.solve.*member = parse_value<T>(s, name); },
          [member](const RunConfig& c) { return show_value(c.solve.*member); }};
}

inline const std::vector<ConfigField>& config_fields() {
  static const std::vector<ConfigField> fields = {
      field("model", "lambda", &RunConfig::lambda),
      field("grid", "L", &RunConfig::half_length),
      field("grid", "n", &RunConfig::n),
      field("grid", "transverse_dims", &RunConfig::transverse_dims),
      solve_field("tol", &SolveOptions::newton_tol),
      solve_field("max_iters", &SolveOptions::max_iters),
      solve_field("damping_min", &SolveOptions::damping_min),
      solve_field("continuation_step", &SolveOptions::continuation_step),
      solve_field("phase_pinning", &SolveOptions::phase_pinning),
      field("flow", "dt", &RunConfig::dt),
      field("flow", "steady_tol", &RunConfig::steady_tol),
      field("flow", "max_steps", &RunConfig::max_steps),
      field("slab", "width", &RunConfig::slab_width),
      field("slab", "nt", &RunConfig::slab_nt),
      field("slab", "nn", &RunConfig::slab_nn),
      field("slab", "amplitude", &RunConfig::amplitude),
      field("box", "width", &RunConfig::box_width),
      field("box", "n", &RunConfig::box_n),
      field("sweep", "from", &RunConfig::sweep_from),
      field("sweep", "to", &RunConfig::sweep_to),
      field("sweep", "step", &RunConfig::sweep_step),
      field("relax", "mode", &RunConfig::mode),
      field("run", "seed", &RunConfig::seed),
      field("run", "jobs", &RunConfig::jobs),
      field("run", "out", &RunConfig::out),
      field("verify", "stages", &RunConfig::stages),
  };
  return fields;
}

}  // namespace detail

/// Sets one field from its dotted name (`section.key`).
inline void set_config_value(RunConfig& c, const std::string& dotted, const std::string& value) {
  for (const auto& f : detail::config_fields()) {
    if (dotted == std::string(f.section) + "." + f.key) {
      f.set(c, value);
      return;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown config field '" + dotted + "'");
}

/// Overlays the values found in an INI stream onto `c`.
inline void load_config(RunConfig& c, std::istream& is) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(is, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw Error(ErrorKind::InvalidArgument, "config key '" + section + "' must live inside a [section]");
    }
    for (const auto& [key, value] : body) set_config_value(c, section + "." + key, value.data());
  }
}

inline void load_config_file(RunConfig& c, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Io, "cannot open config '" + path + "'");
  load_config(c, is);
}

inline std::string to_ini(const RunConfig& c) {
  std::ostringstream os;
  std::string current;
  for (const auto& f : detail::config_fields()) {
    if (current != f.section) {
      if (!current.empty()) os << '\n';
      current = f.section;
      os << '[' << current << "]\n";
    }
    os << f.key << " = " << f.get(c) << '\n';
  }
  return os.str();
}

}  // namespace gprig
