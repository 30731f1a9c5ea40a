#pragma once

// Semi-implicit gradient-flow relaxation on 2D fields:
//
//   (I - dt D_t)(I - dt D_n) u_new = u + dt f(u, v)   (same for v),
//
// D_t, D_n the periodic / Dirichlet second differences. The reaction is
// explicit, so dt is limited by the spectrum of the reaction Jacobian on
// [-1,1]^2 only. Fixed points are exactly the zeros of residual_slab.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "gprig/banded.hpp"
#include "gprig/error.hpp"
#include "gprig/grid.hpp"
#include "gprig/model.hpp"

namespace gprig {

/// Largest admissible pseudo-time step: 0.9 / |lower bound of the reaction
/// Jacobian spectrum on [-1,1]^2| = 0.9 / (2 + 3 lambda).
inline double max_flow_dt(const Params& p) noexcept { return 0.9 / std::abs(jacobian_lower_bound(p)); }

struct FlowOptions {
  double dt = 0.0;            // 0 selects max_flow_dt
  double steady_tol = 1e-10;  // stop when max |update| <= steady_tol * dt
  int max_steps = 200000;
  std::uint64_t rng_seed = 7;

  double resolved_dt(const Params& p) const { return dt > 0.0 ? dt : max_flow_dt(p); }

  void validate() const {
    if (!(dt >= 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidArgument, "dt must be >= 0");
    if (!(steady_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "steady_tol must be > 0");
    if (max_steps < 1) throw Error(ErrorKind::InvalidArgument, "max_steps must be >= 1");
  }
};

struct FlowOutcome {
  SlabField field;
  int steps = 0;
  double final_update = 0.0;
  bool converged = false;
  double dt = 0.0;
  std::vector<double> energy_trace;  // entry 0 is the initial energy
  std::vector<double> update_trace;  // entry k is the update of step k (entry 0 unused, 0)
};

/// Applies flow steps for a fixed (params, axes, dt); the line factorizations
/// are built once.
class FlowStepper {
 public:
  FlowStepper(const Params& p, const Axis& transverse, const Axis& normal, double dt)
      : params_(p), transverse_(transverse), normal_(normal), dt_(dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidArgument, "dt must be > 0");
    const double limit = max_flow_dt(p);
    if (dt > limit) {
      throw Error(ErrorKind::StepTooLarge,
                  "dt = " + std::to_string(dt) + " exceeds the stability bound " + std::to_string(limit));
    }
    const double rt = dt / (transverse.h() * transverse.h());
    line_t_ = CyclicTridiagonalFactor(transverse.size(), 1.0 + 2.0 * rt, -rt);
    const double rn = dt / (normal.h() * normal.h());
    if (normal.is_periodic()) {
      line_n_periodic_ = CyclicTridiagonalFactor(normal.size(), 1.0 + 2.0 * rn, -rn);
    } else {
      const std::size_t m = normal.size() - 2;
      std::vector<double> off(m, -rn), mid(m, 1.0 + 2.0 * rn);
      line_n_ = TridiagonalFactor(off, mid, off);
    }
    rn_ = rn;
  }

  double dt() const noexcept { return dt_; }

  /// One step; Dirichlet rows are left untouched.
  SlabField step(const SlabField& f) const {
    if (!(f.transverse == transverse_) || !(f.normal == normal_)) {
      throw Error(ErrorKind::InvalidArgument, "field axes differ from the stepper's");
    }
    SlabField next = f;
    const std::size_t nt = f.nt(), nn = f.nn();
    const bool dir = f.dirichlet_normal();
    const std::size_t j0 = dir ? 1 : 0, j1 = dir ? nn - 1 : nn;
    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t j = j0; j < j1; ++j) {
        const StatePair r = reaction(params_, f.at(t, j));
        const std::size_t k = f.index(t, j);
        next.u[k] += dt_ * r.u;
        next.v[k] += dt_ * r.v;
      }
    }
    solve_component(next, next.u, f.bc.left.u, f.bc.right.u);
    solve_component(next, next.v, f.bc.left.v, f.bc.right.v);
    return next;
  }

 private:
  void solve_component(const SlabField& f, std::vector<double>& data, double left, double right) const {
    const std::size_t nt = f.nt(), nn = f.nn();
    const bool dir = f.dirichlet_normal();
    const std::size_t j0 = dir ? 1 : 0, j1 = dir ? nn - 1 : nn;
    std::vector<double> line(nt);
    for (std::size_t j = j0; j < j1; ++j) {
      for (std::size_t t = 0; t < nt; ++t) line[t] = data[f.index(t, j)];
      line_t_.solve_in_place(line);
      for (std::size_t t = 0; t < nt; ++t) data[f.index(t, j)] = line[t];
    }
    for (std::size_t t = 0; t < nt; ++t) {
      std::span<double> row(data.data() + f.index(t, 0), nn);
      if (dir) {
        row[1] += rn_ * left;
        row[nn - 2] += rn_ * right;
        line_n_.solve_in_place(row.subspan(1, nn - 2));
      } else {
        line_n_periodic_.solve_in_place(row);
      }
    }
  }

  Params params_;
  Axis transverse_, normal_;
  double dt_;
  double rn_ = 0.0;
  CyclicTridiagonalFactor line_t_;
  CyclicTridiagonalFactor line_n_periodic_;
  TridiagonalFactor line_n_;
};

inline SlabField flow_step(const Params& p, const SlabField& f, double dt) {
  return FlowStepper(p, f.transverse, f.normal, dt).step(f);
}

/// Largest nodewise change between two fields on the same axes.
inline double max_update(const SlabField& a, const SlabField& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.u.size(); ++k) {
    m = std::max({m, std::abs(a.u[k] - b.u[k]), std::abs(a.v[k] - b.v[k])});
  }
  return m;
}

/// Iterates flow steps until the max-norm update drops to steady_tol * dt.
/// Never throws on non-convergence; inspect `converged`.
inline FlowOutcome relax_attempt(const Params& p, const SlabField& f0, const FlowOptions& opts) {
  opts.validate();
  f0.validate();
  const double dt = opts.resolved_dt(p);
  const FlowStepper stepper(p, f0.transverse, f0.normal, dt);
  FlowOutcome out{f0, 0, 0.0, false, dt, {}, {}};
  out.energy_trace.push_back(discrete_energy_slab(p, out.field));
  out.update_trace.push_back(0.0);
  for (int s = 1; s <= opts.max_steps; ++s) {
    SlabField next = stepper.step(out.field);
    const double upd = max_update(next, out.field);
    out.field = std::move(next);
    out.steps = s;
    out.final_update = upd;
    out.energy_trace.push_back(discrete_energy_slab(p, out.field));
    out.update_trace.push_back(upd);
    if (!std::isfinite(upd)) break;
    if (upd <= opts.steady_tol * dt) {
      out.converged = true;
      break;
    }
  }
  return out;
}

inline FlowOutcome relax_to_steady(const Params& p, const SlabField& f0, const FlowOptions& opts) {
  FlowOutcome out = relax_attempt(p, f0, opts);
  if (!out.converged) {
    throw Error(ErrorKind::NonConvergence,
                "relaxation did not reach steady state in " + std::to_string(out.steps) +
                    " steps (last update " + std::to_string(out.final_update) + ")");
  }
  return out;
}

/// Largest energy increase between consecutive trace entries (<= 0 when the
/// trace is non-increasing).
inline double max_energy_increase(const std::vector<double>& trace) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < trace.size(); ++k) worst = std::max(worst, trace[k] - trace[k - 1]);
  return trace.size() < 2 ? 0.0 : worst;
}

/// Roundoff allowance when asserting a non-increasing energy trace.
inline double energy_roundoff(const std::vector<double>& trace) {
  double scale = 1.0;
  for (double e : trace) scale = std::max(scale, std::abs(e));
  return 1e-12 * scale;
}

/// max over x_N rows of (max - min over x') of u and of v.
inline double transverse_anisotropy(const SlabField& f) {
  double worst = 0.0;
  for (std::size_t j = 0; j < f.nn(); ++j) {
    double ulo = f.u[f.index(0, j)], uhi = ulo, vlo = f.v[f.index(0, j)], vhi = vlo;
    for (std::size_t t = 1; t < f.nt(); ++t) {
      const std::size_t k = f.index(t, j);
      ulo = std::min(ulo, f.u[k]);
      uhi = std::max(uhi, f.u[k]);
      vlo = std::min(vlo, f.v[k]);
      vhi = std::max(vhi, f.v[k]);
    }
    worst = std::max({worst, uhi - ulo, vhi - vlo});
  }
  return worst;
}

/// Transverse average of each x_N row, as a profile on the normal grid.
inline ProfilePair extract_1d(const SlabField& f, double max_anisotropy) {
  if (!f.dirichlet_normal()) throw Error(ErrorKind::InvalidArgument, "extract_1d needs a Dirichlet normal axis");
  const double a = transverse_anisotropy(f);
  if (a > max_anisotropy) {
    throw Error(ErrorKind::TooAnisotropic,
                "transverse anisotropy " + std::to_string(a) + " exceeds " + std::to_string(max_anisotropy));
  }
  ProfilePair prof(f.normal.as_grid());
  for (std::size_t j = 0; j < f.nn(); ++j) {
    double su = 0.0, sv = 0.0;
    for (std::size_t t = 0; t < f.nt(); ++t) {
      su += f.u[f.index(t, j)];
      sv += f.v[f.index(t, j)];
    }
    prof.u[j] = su / static_cast<double>(f.nt());
    prof.v[j] = sv / static_cast<double>(f.nt());
  }
  if (f.nt() == 1 || a == 0.0) {
    for (std::size_t j = 0; j < f.nn(); ++j) prof.set(j, f.at(0, j));
  }
  return prof;
}

// ---------------------------------------------------------------------------
// Initial data for the standard experiments

/// Explicit L = 3 heteroclinic embedded in a slab plus a transverse-dependent
/// perturbation a * s(x') * 4w(1-w) of each component w (s built from two
/// randomly phased Fourier modes, |s| <= 1). Values stay inside [0, 1].
inline SlabField gibbons_initial_data(const Axis& transverse, const Grid1D& normal, double amplitude,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const double pu1 = phase(rng), pu2 = phase(rng), pv1 = phase(rng), pv2 = phase(rng);
  const double k = 2.0 * std::numbers::pi / (transverse.hi() - transverse.lo());
  SlabField f(transverse, Axis::dirichlet(normal));
  for (std::size_t t = 0; t < f.nt(); ++t) {
    const double xp = transverse.x(t);
    const double su = 0.5 * (std::sin(k * xp + pu1) + std::cos(2.0 * k * xp + pu2));
    const double sv = 0.5 * (std::sin(k * xp + pv1) + std::cos(2.0 * k * xp + pv2));
    for (std::size_t j = 1; j + 1 < f.nn(); ++j) {
      const StatePair s = lambda3_closed_form(0.0, normal.x(j));
      f.set(t, j, {s.u + amplitude * su * 4.0 * s.u * (1.0 - s.u), s.v + amplitude * sv * 4.0 * s.v * (1.0 - s.v)});
    }
  }
  f.pin_boundary();
  return f;
}

/// Fully periodic box with independent uniform values in (lo, hi) per node.
inline SlabField random_periodic_data(const Axis& a, const Axis& b, std::uint64_t seed, double lo = 0.05,
                                      double hi = 0.95) {
  SlabField f(a, b);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  for (std::size_t k = 0; k < f.u.size(); ++k) {
    f.u[k] = dist(rng);
    f.v[k] = dist(rng);
  }
  return f;
}

}  // namespace gprig
