#pragma once

// Pointwise algebra of the competing two-component system
//
//   -u'' = u - u^3 - L u v^2,   -v'' = v - v^3 - L u^2 v,   L > 0,
//
// together with its potential, the explicit solutions available at L = 3 and
// the change of variables that decouples L = 3 into two Allen-Cahn equations.

#include <cmath>
#include <numbers>
#include <string>

#include "gprig/error.hpp"

namespace gprig {

enum class Regime { SubUnit, Unit, SuperUnit, Special };

constexpr const char* to_string(Regime r) noexcept {
  switch (r) {
    case Regime::SubUnit: return "sub-unit";
    case Regime::Unit: return "unit";
    case Regime::SuperUnit: return "super-unit";
    case Regime::Special: return "special";
  }
  return "?";
}

/// Coupling strength of the system. Always finite and strictly positive.
class Params {
 public:
  explicit Params(double lambda) : lambda_(lambda) {
    if (!std::isfinite(lambda) || lambda <= 0.0) {
      throw Error(ErrorKind::InvalidArgument,
                  "lambda must be finite and > 0, got " + std::to_string(lambda));
    }
  }

  double lambda() const noexcept { return lambda_; }

  /// Exact comparisons: Unit only for lambda == 1, Special only for lambda == 3.
  Regime regime() const noexcept {
    if (lambda_ < 1.0) return Regime::SubUnit;
    if (lambda_ == 1.0) return Regime::Unit;
    if (lambda_ == 3.0) return Regime::Special;
    return Regime::SuperUnit;
  }

  bool segregated() const noexcept { return lambda_ > 1.0; }

 private:
  double lambda_;
};

struct StatePair {
  double u = 0.0;
  double v = 0.0;

  friend constexpr bool operator==(const StatePair&, const StatePair&) = default;
};

inline bool is_finite(const StatePair& s) noexcept {
  return std::isfinite(s.u) && std::isfinite(s.v);
}

/// Checked construction for values entering from outside the library.
inline StatePair make_state(double u, double v) {
  StatePair s{u, v};
  if (!is_finite(s)) throw Error(ErrorKind::InvalidArgument, "non-finite state value");
  return s;
}

constexpr StatePair swapped(const StatePair& s) noexcept { return {s.v, s.u}; }

/// Symmetric 2x2 matrix stored densely; used for pointwise Jacobians.
struct Mat2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

  constexpr double det() const noexcept { return a11 * a22 - a12 * a21; }
  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

/// Right-hand side of the system: (u - u^3 - L u v^2, v - v^3 - L u^2 v).
inline StatePair reaction(const Params& p, const StatePair& s) noexcept {
  const double l = p.lambda();
  const double uu = s.u * s.u, vv = s.v * s.v;
  return {s.u * (1.0 - uu - l * vv), s.v * (1.0 - vv - l * uu)};
}

/// Jacobian of `reaction`; the diagonal entries are the coefficients of the
/// linearized system, c1 = 1 - 3u^2 - L v^2 and c2 = 1 - 3v^2 - L u^2.
inline Mat2 reaction_jacobian(const Params& p, const StatePair& s) noexcept {
  const double l = p.lambda();
  const double off = -2.0 * l * s.u * s.v;
  return {1.0 - 3.0 * s.u * s.u - l * s.v * s.v, off, off,
          1.0 - 3.0 * s.v * s.v - l * s.u * s.u};
}

/// W(u,v) = (u^2-1)^2/4 + (v^2-1)^2/4 + (L/2) u^2 v^2, so that reaction = -grad W.
inline double potential(const Params& p, const StatePair& s) noexcept {
  const double a = s.u * s.u - 1.0, b = s.v * s.v - 1.0;
  return 0.25 * a * a + 0.25 * b * b + 0.5 * p.lambda() * s.u * s.u * s.v * s.v;
}

/// Lower bound on the smallest eigenvalue of reaction_jacobian over [-1,1]^2
/// (Gershgorin: min c1 - max |off-diagonal| = -2 - L - 2L).
inline double jacobian_lower_bound(const Params& p) noexcept {
  return -2.0 - 3.0 * p.lambda();
}

namespace detail {
inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be finite");
}
inline double kink(double t) noexcept { return std::tanh(t / std::numbers::sqrt2); }
}  // namespace detail

/// Explicit heteroclinic at L = 3: u = (1 + tanh((t+alpha)/sqrt2))/2, v = 1 - u.
inline StatePair lambda3_closed_form(double alpha, double t) {
  detail::require_finite(alpha, "alpha");
  detail::require_finite(t, "t");
  const double k = detail::kink(t + alpha);
  return {0.5 * (1.0 + k), 0.5 * (1.0 - k)};
}

/// Sign-changing solution at L = 3 built from two shifted kinks. Its u is
/// increasing through zero; v is negative and non-monotone.
inline StatePair remark_counterexample(double alpha, double t) {
  detail::require_finite(alpha, "alpha");
  detail::require_finite(t, "t");
  if (alpha <= 0.0) throw Error(ErrorKind::InvalidArgument, "alpha must be > 0");
  const double a = detail::kink(t), b = detail::kink(t + alpha);
  return {0.5 * (a + b), 0.5 * (a - b)};
}

/// Allen-Cahn variables w1 = u + v, w2 = u - v.
struct AcPair {
  double w1 = 0.0;
  double w2 = 0.0;
};

constexpr AcPair ac_decompose(const StatePair& s) noexcept { return {s.u + s.v, s.u - s.v}; }

constexpr StatePair ac_compose(double w1, double w2) noexcept {
  return {0.5 * (w1 + w2), 0.5 * (w1 - w2)};
}

/// g(w) = w - w^3.
constexpr double allen_cahn_reaction(double w) noexcept { return w - w * w * w; }

/// The unique positive constant solution for L in (0,1): u = v = 1/sqrt(1+L).
inline double liouville_constant(const Params& p) {
  if (!(p.lambda() < 1.0)) {
    throw Error(ErrorKind::Regime, "positive constant solution requires lambda in (0,1)");
  }
  return 1.0 / std::sqrt(1.0 + p.lambda());
}

}  // namespace gprig
