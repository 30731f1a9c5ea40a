#pragma once

// Uniform finite-difference discretization: the 1D interval [-L, L] carrying a
// heteroclinic profile, and the 2D slab (periodic in x', Dirichlet or periodic
// in x_N). Residuals use the second-order 3-point (resp. 5-point) Laplacian.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gprig/error.hpp"
#include "gprig/model.hpp"

namespace gprig {

/// Nodes x_i = -L + i h, h = 2L/(n-1), with both endpoints exact.
class Grid1D {
 public:
  Grid1D(double half_length, std::size_t n) : half_length_(half_length), n_(n) {
    if (!std::isfinite(half_length) || half_length <= 0.0) {
      throw Error(ErrorKind::InvalidArgument, "L must be finite and > 0");
    }
    if (n < 3) throw Error(ErrorKind::InvalidArgument, "n must be >= 3, got " + std::to_string(n));
    h_ = 2.0 * half_length / static_cast<double>(n - 1);
  }

  double half_length() const noexcept { return half_length_; }
  std::size_t size() const noexcept { return n_; }
  double h() const noexcept { return h_; }

  double x(std::size_t i) const noexcept {
    if (i + 1 == n_) return half_length_;
    return -half_length_ + static_cast<double>(i) * h_;
  }

  /// Index of the node closest to x = 0 (the centre node when n is odd).
  std::size_t center() const noexcept { return (n_ - 1) / 2; }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double half_length_;
  std::size_t n_;
  double h_;
};

/// Boundary values pinned at x = -L (left) and x = +L (right).
struct Dirichlet {
  StatePair left{0.0, 1.0};
  StatePair right{1.0, 0.0};

  /// The heteroclinic data (0,1) at -L and (1,0) at +L.
  static Dirichlet heteroclinic() { return {}; }
};

/// Discrete pair (u_i, v_i) on a Grid1D.
struct ProfilePair {
  Grid1D grid;
  std::vector<double> u;
  std::vector<double> v;

  explicit ProfilePair(const Grid1D& g) : grid(g), u(g.size(), 0.0), v(g.size(), 0.0) {}
  ProfilePair(const Grid1D& g, std::vector<double> uu, std::vector<double> vv)
      : grid(g), u(std::move(uu)), v(std::move(vv)) {
    validate();
  }

  template <class Fn>
  static ProfilePair sample(const Grid1D& g, Fn&& fn) {
    ProfilePair p(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const StatePair s = fn(g.x(i));
      p.u[i] = s.u;
      p.v[i] = s.v;
    }
    p.validate();
    return p;
  }

  std::size_t size() const noexcept { return grid.size(); }
  StatePair at(std::size_t i) const noexcept { return {u[i], v[i]}; }
  void set(std::size_t i, const StatePair& s) noexcept { u[i] = s.u; v[i] = s.v; }

  /// Boundary values as currently stored.
  Dirichlet boundary() const { return {at(0), at(size() - 1)}; }

  void validate() const {
    if (u.size() != grid.size() || v.size() != grid.size()) {
      throw Error(ErrorKind::InvalidArgument, "profile arrays do not match grid size");
    }
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (!std::isfinite(u[i]) || !std::isfinite(v[i])) {
        throw Error(ErrorKind::InvalidArgument, "non-finite profile value at node " + std::to_string(i));
      }
    }
  }
};

/// Sup-norm over all nodes, or over interior nodes only.
inline double max_abs(const ProfilePair& p, bool interior_only = false) {
  const std::size_t lo = interior_only ? 1 : 0;
  const std::size_t hi = interior_only ? p.size() - 1 : p.size();
  double m = 0.0;
  for (std::size_t i = lo; i < hi; ++i) m = std::max({m, std::abs(p.u[i]), std::abs(p.v[i])});
  return m;
}

/// Sup-distance between two profiles on the same grid.
inline double sup_distance(const ProfilePair& a, const ProfilePair& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidArgument, "profiles on different grids");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max({m, std::abs(a.u[i] - b.u[i]), std::abs(a.v[i] - b.v[i])});
  }
  return m;
}

/// Piecewise-linear interpolation; clamps to the end values outside [-L, L].
inline StatePair interpolate(const ProfilePair& p, double x) {
  const std::size_t n = p.size();
  if (x <= -p.grid.half_length()) return p.at(0);
  if (x >= p.grid.half_length()) return p.at(n - 1);
  const double s = (x + p.grid.half_length()) / p.grid.h();
  const std::size_t i = std::min(static_cast<std::size_t>(s), n - 2);
  const double w = s - static_cast<double>(i);
  return {(1.0 - w) * p.u[i] + w * p.u[i + 1], (1.0 - w) * p.v[i] + w * p.v[i + 1]};
}

/// Linear resampling onto another grid.
inline ProfilePair resample(const ProfilePair& p, const Grid1D& g) {
  return ProfilePair::sample(g, [&](double x) { return interpolate(p, x); });
}

/// Interior rows: (u[i-1] - 2u[i] + u[i+1])/h^2 + f(u[i], v[i]).
/// Boundary rows: stored value minus the Dirichlet datum.
inline ProfilePair residual_1d(const Params& p, const ProfilePair& prof,
                               const Dirichlet& bc = Dirichlet::heteroclinic()) {
  const std::size_t n = prof.size();
  const double inv_h2 = 1.0 / (prof.grid.h() * prof.grid.h());
  ProfilePair r(prof.grid);
  r.u[0] = prof.u[0] - bc.left.u;
  r.v[0] = prof.v[0] - bc.left.v;
  r.u[n - 1] = prof.u[n - 1] - bc.right.u;
  r.v[n - 1] = prof.v[n - 1] - bc.right.v;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const StatePair f = reaction(p, prof.at(i));
    r.u[i] = (prof.u[i - 1] - 2.0 * prof.u[i] + prof.u[i + 1]) * inv_h2 + f.u;
    r.v[i] = (prof.v[i - 1] - 2.0 * prof.v[i] + prof.v[i + 1]) * inv_h2 + f.v;
  }
  return r;
}

/// Discrete energy  sum_cells h (|Du|^2 + |Dv|^2)/2  +  trapezoid(W),
/// forward differences for the gradient.
inline double discrete_energy_1d(const Params& p, const ProfilePair& prof) {
  const std::size_t n = prof.size();
  const double h = prof.grid.h();
  double grad = 0.0, pot = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double du = prof.u[i + 1] - prof.u[i], dv = prof.v[i + 1] - prof.v[i];
    grad += du * du + dv * dv;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    pot += w * potential(p, prof.at(i));
  }
  return 0.5 * grad / h + h * pot;
}

struct MonotoneReport {
  double min_du = 0.0;  // smallest forward difference of u
  double max_dv = 0.0;  // largest forward difference of v

  bool strict() const noexcept { return min_du > 0.0 && max_dv < 0.0; }
};

inline MonotoneReport check_discrete_monotone(const ProfilePair& prof) {
  MonotoneReport r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i + 1 < prof.size(); ++i) {
    r.min_du = std::min(r.min_du, prof.u[i + 1] - prof.u[i]);
    r.max_dv = std::max(r.max_dv, prof.v[i + 1] - prof.v[i]);
  }
  return r;
}

/// Universal bounds: (i) |u|,|v| <= 1 always; (ii) u^2+v^2 <= 1 for L >= 1;
/// (iii) u^2+v^2 <= 2/(L+1) for L < 1. Margins are bound minus measured
/// value (negative = violation); a bound passes when margin >= -slack.
struct BoundReport {
  double max_abs_u = 0.0;
  double max_abs_v = 0.0;
  double max_norm2 = 0.0;  // max of u^2 + v^2
  double slack = 0.0;
  double margin_i = 0.0;
  double regime_bound = 1.0;  // right-hand side of (ii) or (iii)
  double margin_regime = 0.0;
  bool unit_or_above = true;  // true: (ii) applies, false: (iii)

  bool pass_i() const noexcept { return margin_i >= -slack; }
  bool pass_regime() const noexcept { return margin_regime >= -slack; }
  bool pass() const noexcept { return pass_i() && pass_regime(); }
};

inline BoundReport check_bounds(const Params& p, std::span<const double> u, std::span<const double> v,
                                double slack = 0.0) {
  if (u.size() != v.size()) throw Error(ErrorKind::InvalidArgument, "component arrays differ in size");
  BoundReport r;
  r.slack = slack;
  for (std::size_t i = 0; i < u.size(); ++i) {
    r.max_abs_u = std::max(r.max_abs_u, std::abs(u[i]));
    r.max_abs_v = std::max(r.max_abs_v, std::abs(v[i]));
    r.max_norm2 = std::max(r.max_norm2, u[i] * u[i] + v[i] * v[i]);
  }
  r.margin_i = 1.0 - std::max(r.max_abs_u, r.max_abs_v);
  r.unit_or_above = p.lambda() >= 1.0;
  r.regime_bound = r.unit_or_above ? 1.0 : 2.0 / (p.lambda() + 1.0);
  r.margin_regime = r.regime_bound - r.max_norm2;
  return r;
}

inline BoundReport check_bounds(const Params& p, const ProfilePair& prof, double slack = 0.0) {
  return check_bounds(p, prof.u, prof.v, slack);
}

enum class SumOrdering { Below, Above, Equal, NotApplicable };

constexpr const char* to_string(SumOrdering s) noexcept {
  switch (s) {
    case SumOrdering::Below: return "u+v<1";
    case SumOrdering::Above: return "u+v>1";
    case SumOrdering::Equal: return "u+v=1";
    case SumOrdering::NotApplicable: return "n/a";
  }
  return "?";
}

/// Ordering of u+v against 1 over interior nodes. Expected: below for L > 3,
/// above for 1 < L < 3, equal at L = 3 (within `equal_tol`).
struct SumReport {
  double min_sum = 0.0;
  double max_sum = 0.0;
  SumOrdering expected = SumOrdering::NotApplicable;
  double margin = 0.0;  // signed slack of the expected ordering
  bool pass = false;
};

inline SumReport check_sum_vs_one(const Params& p, std::span<const double> u, std::span<const double> v,
                                  double equal_tol = 0.0) {
  SumReport r;
  r.min_sum = std::numeric_limits<double>::infinity();
  r.max_sum = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < u.size(); ++i) {
    r.min_sum = std::min(r.min_sum, u[i] + v[i]);
    r.max_sum = std::max(r.max_sum, u[i] + v[i]);
  }
  const double l = p.lambda();
  if (l <= 1.0) {
    r.expected = SumOrdering::NotApplicable;
    r.pass = true;
  } else if (l == 3.0) {
    r.expected = SumOrdering::Equal;
    r.margin = equal_tol - std::max(std::abs(r.min_sum - 1.0), std::abs(r.max_sum - 1.0));
    r.pass = r.margin >= 0.0;
  } else if (l > 3.0) {
    r.expected = SumOrdering::Below;
    r.margin = 1.0 - r.max_sum;
    r.pass = r.max_sum < 1.0;
  } else {
    r.expected = SumOrdering::Above;
    r.margin = r.min_sum - 1.0;
    r.pass = r.min_sum > 1.0;
  }
  return r;
}

inline SumReport check_sum_vs_one(const Params& p, const ProfilePair& prof, double equal_tol = 0.0) {
  return check_sum_vs_one(p, prof.u, prof.v, equal_tol);
}

// ---------------------------------------------------------------------------
// 2D slab

/// One axis of a 2D field. Periodic axes have n distinct nodes x_i = lo + i h
/// with h = (hi - lo)/n; Dirichlet axes include both endpoints, h = (hi - lo)/(n-1).
class Axis {
 public:
  static Axis periodic(double width, std::size_t n) { return Axis(-0.5 * width, 0.5 * width, n, true); }
  static Axis dirichlet(const Grid1D& g) { return Axis(-g.half_length(), g.half_length(), g.size(), false); }

  bool is_periodic() const noexcept { return periodic_; }
  std::size_t size() const noexcept { return n_; }
  double h() const noexcept { return h_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double x(std::size_t i) const noexcept {
    if (!periodic_ && i + 1 == n_) return hi_;
    return lo_ + static_cast<double>(i) * h_;
  }
  Grid1D as_grid() const {
    if (periodic_) throw Error(ErrorKind::InvalidArgument, "periodic axis has no Dirichlet grid");
    return Grid1D(hi_, n_);
  }

  friend bool operator==(const Axis&, const Axis&) = default;

 private:
  Axis(double lo, double hi, std::size_t n, bool periodic) : lo_(lo), hi_(hi), n_(n), periodic_(periodic) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || hi <= lo) {
      throw Error(ErrorKind::InvalidArgument, "axis extent must be finite and positive");
    }
    if (n < (periodic ? 1u : 3u)) throw Error(ErrorKind::InvalidArgument, "too few nodes on axis");
    h_ = (hi - lo) / static_cast<double>(periodic ? n : n - 1);
  }

  double lo_, hi_;
  std::size_t n_;
  bool periodic_;
  double h_ = 0.0;
};

/// Pair (u, v) on transverse x nodes * normal x_N nodes. The transverse axis is
/// always periodic. Storage is row-major with the normal index contiguous.
struct SlabField {
  Axis transverse;
  Axis normal;
  Dirichlet bc;  // used only when the normal axis is Dirichlet
  std::vector<double> u;
  std::vector<double> v;

  SlabField(const Axis& t, const Axis& n, const Dirichlet& b = Dirichlet::heteroclinic())
      : transverse(t), normal(n), bc(b), u(t.size() * n.size(), 0.0), v(t.size() * n.size(), 0.0) {
    if (!t.is_periodic()) throw Error(ErrorKind::InvalidArgument, "transverse axis must be periodic");
    if (!n.is_periodic()) pin_boundary();
  }

  std::size_t nt() const noexcept { return transverse.size(); }
  std::size_t nn() const noexcept { return normal.size(); }
  std::size_t index(std::size_t t, std::size_t j) const noexcept { return t * nn() + j; }
  StatePair at(std::size_t t, std::size_t j) const noexcept { return {u[index(t, j)], v[index(t, j)]}; }
  void set(std::size_t t, std::size_t j, const StatePair& s) noexcept {
    u[index(t, j)] = s.u;
    v[index(t, j)] = s.v;
  }
  bool dirichlet_normal() const noexcept { return !normal.is_periodic(); }

  /// Overwrites the x_N = -L and x_N = +L rows with the Dirichlet data.
  void pin_boundary() {
    for (std::size_t t = 0; t < nt(); ++t) {
      set(t, 0, bc.left);
      set(t, nn() - 1, bc.right);
    }
  }

  void validate() const {
    if (u.size() != nt() * nn() || v.size() != u.size()) {
      throw Error(ErrorKind::InvalidArgument, "field arrays do not match axes");
    }
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (!std::isfinite(u[k]) || !std::isfinite(v[k])) {
        throw Error(ErrorKind::InvalidArgument, "non-finite field value");
      }
    }
  }
};

/// Copies a 1D profile into every transverse row.
inline SlabField embed(const ProfilePair& prof, const Axis& transverse) {
  SlabField f(transverse, Axis::dirichlet(prof.grid), prof.boundary());
  for (std::size_t t = 0; t < f.nt(); ++t) {
    for (std::size_t j = 0; j < f.nn(); ++j) f.set(t, j, prof.at(j));
  }
  return f;
}

/// 5-point residual; transverse indices wrap, normal boundary rows (Dirichlet
/// case) hold the defect against the boundary data.
inline SlabField residual_slab(const Params& p, const SlabField& f) {
  SlabField r = f;
  const std::size_t nt = f.nt(), nn = f.nn();
  const double it2 = 1.0 / (f.transverse.h() * f.transverse.h());
  const double in2 = 1.0 / (f.normal.h() * f.normal.h());
  const bool dir = f.dirichlet_normal();
  for (std::size_t t = 0; t < nt; ++t) {
    const std::size_t tm = (t + nt - 1) % nt, tp = (t + 1) % nt;
    for (std::size_t j = 0; j < nn; ++j) {
      const std::size_t k = f.index(t, j);
      if (dir && (j == 0 || j + 1 == nn)) {
        const StatePair b = j == 0 ? f.bc.left : f.bc.right;
        r.u[k] = f.u[k] - b.u;
        r.v[k] = f.v[k] - b.v;
        continue;
      }
      const std::size_t jm = j == 0 ? nn - 1 : j - 1, jp = j + 1 == nn ? 0 : j + 1;
      const std::size_t km = f.index(t, jm), kp = f.index(t, jp);
      const std::size_t ktm = f.index(tm, j), ktp = f.index(tp, j);
      const StatePair fr = reaction(p, f.at(t, j));
      r.u[k] = (f.u[ktm] - 2.0 * f.u[k] + f.u[ktp]) * it2 + (f.u[km] - 2.0 * f.u[k] + f.u[kp]) * in2 + fr.u;
      r.v[k] = (f.v[ktm] - 2.0 * f.v[k] + f.v[ktp]) * it2 + (f.v[km] - 2.0 * f.v[k] + f.v[kp]) * in2 + fr.v;
    }
  }
  return r;
}

/// Sup-norm over the field; interior_only skips Dirichlet boundary rows.
inline double max_abs(const SlabField& f, bool interior_only = false) {
  double m = 0.0;
  for (std::size_t t = 0; t < f.nt(); ++t) {
    for (std::size_t j = 0; j < f.nn(); ++j) {
      if (interior_only && f.dirichlet_normal() && (j == 0 || j + 1 == f.nn())) continue;
      const std::size_t k = f.index(t, j);
      m = std::max({m, std::abs(f.u[k]), std::abs(f.v[k])});
    }
  }
  return m;
}

/// Discrete energy of a 2D field: forward differences (wrapping where
/// periodic), trapezoid weights along a Dirichlet normal axis.
inline double discrete_energy_slab(const Params& p, const SlabField& f) {
  const std::size_t nt = f.nt(), nn = f.nn();
  const double ht = f.transverse.h(), hn = f.normal.h();
  const bool dir = f.dirichlet_normal();
  double grad_t = 0.0, grad_n = 0.0, pot = 0.0;
  for (std::size_t t = 0; t < nt; ++t) {
    const std::size_t tp = (t + 1) % nt;
    for (std::size_t j = 0; j < nn; ++j) {
      const std::size_t k = f.index(t, j);
      const double wn = (dir && (j == 0 || j + 1 == nn)) ? 0.5 : 1.0;
      const double dut = f.u[f.index(tp, j)] - f.u[k], dvt = f.v[f.index(tp, j)] - f.v[k];
      grad_t += wn * (dut * dut + dvt * dvt);
      if (!dir || j + 1 < nn) {
        const std::size_t kp = f.index(t, j + 1 == nn ? 0 : j + 1);
        const double dun = f.u[kp] - f.u[k], dvn = f.v[kp] - f.v[k];
        grad_n += dun * dun + dvn * dvn;
      }
      pot += wn * potential(p, f.at(t, j));
    }
  }
  return 0.5 * grad_t * hn / ht + 0.5 * grad_n * ht / hn + ht * hn * pot;
}

inline BoundReport check_bounds(const Params& p, const SlabField& f, double slack = 0.0) {
  return check_bounds(p, f.u, f.v, slack);
}

}  // namespace gprig
