#pragma once

// Direct O(n) solvers for the banded systems that appear in the discretized
// problem: scalar tridiagonal (Dirichlet lines), cyclic tridiagonal (periodic
// lines) and block tridiagonal with 2x2 blocks (the coupled Newton system).

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gprig/error.hpp"
#include "gprig/model.hpp"

namespace gprig {

/// LU factorization of a tridiagonal matrix, reusable across right-hand sides.
/// Row i reads lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1]; lower[0] and
/// upper[n-1] are ignored. No pivoting: intended for diagonally dominant input.
class TridiagonalFactor {
 public:
  TridiagonalFactor() = default;

  TridiagonalFactor(std::span<const double> lower, std::span<const double> diag,
                    std::span<const double> upper)
      : lower_(lower.begin(), lower.end()), inv_pivot_(diag.size()), upper_star_(diag.size()) {
    const std::size_t n = diag.size();
    if (n == 0 || lower.size() != n || upper.size() != n) {
      throw Error(ErrorKind::InvalidArgument, "tridiagonal band sizes differ");
    }
    double prev_upper_star = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double pivot = diag[i] - (i > 0 ? lower[i] * prev_upper_star : 0.0);
      if (pivot == 0.0 || !std::isfinite(pivot)) {
        throw Error(ErrorKind::SingularJacobian, "zero pivot in tridiagonal solve at row " + std::to_string(i));
      }
      inv_pivot_[i] = 1.0 / pivot;
      upper_star_[i] = (i + 1 < n ? upper[i] : 0.0) * inv_pivot_[i];
      prev_upper_star = upper_star_[i];
    }
  }

  std::size_t size() const noexcept { return inv_pivot_.size(); }

  /// Overwrites rhs with the solution.
  void solve_in_place(std::span<double> rhs) const {
    const std::size_t n = size();
    rhs[0] *= inv_pivot_[0];
    for (std::size_t i = 1; i < n; ++i) {
      rhs[i] = (rhs[i] - lower_[i] * rhs[i - 1]) * inv_pivot_[i];
    }
    for (std::size_t i = n - 1; i-- > 0;) {
      rhs[i] -= upper_star_[i] * rhs[i + 1];
    }
  }

 private:
  std::vector<double> lower_;
  std::vector<double> inv_pivot_;
  std::vector<double> upper_star_;
};

/// Thomas algorithm, one-shot.
inline std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                             std::span<const double> upper, std::span<const double> rhs) {
  TridiagonalFactor f(lower, diag, upper);
  std::vector<double> x(rhs.begin(), rhs.end());
  f.solve_in_place(x);
  return x;
}

/// Constant-coefficient periodic tridiagonal system
///   off x[i-1] + diag x[i] + off x[i+1] = rhs[i],  indices mod n,
/// solved with the Sherman-Morrison correction of a Thomas factorization.
class CyclicTridiagonalFactor {
 public:
  CyclicTridiagonalFactor() = default;

  CyclicTridiagonalFactor(std::size_t n, double diag, double off) : n_(n), diag_(diag), off_(off) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty periodic line");
    if (n <= 2) {
      // Both neighbours coincide (or equal the node itself): the matrix is dense and tiny.
      return;
    }
    gamma_ = -diag;
    std::vector<double> lower(n, off), d(n, diag), upper(n, off);
    d[0] = diag - gamma_;
    d[n - 1] = diag - off * off / gamma_;
    inner_ = TridiagonalFactor(lower, d, upper);
    z_.assign(n, 0.0);
    z_[0] = gamma_;
    z_[n - 1] = off;
    inner_.solve_in_place(z_);
    denom_ = 1.0 + z_[0] + off * z_[n - 1] / gamma_;
    if (denom_ == 0.0) throw Error(ErrorKind::SingularJacobian, "singular periodic line system");
  }

  std::size_t size() const noexcept { return n_; }

  void solve_in_place(std::span<double> rhs) const {
    if (n_ == 1) {
      rhs[0] /= diag_ + 2.0 * off_;
      return;
    }
    if (n_ == 2) {
      const double a = diag_, b = 2.0 * off_;
      const double det = a * a - b * b;
      const double x0 = (a * rhs[0] - b * rhs[1]) / det;
      const double x1 = (a * rhs[1] - b * rhs[0]) / det;
      rhs[0] = x0;
      rhs[1] = x1;
      return;
    }
    inner_.solve_in_place(rhs);
    const double factor = (rhs[0] + off_ * rhs[n_ - 1] / gamma_) / denom_;
    for (std::size_t i = 0; i < n_; ++i) rhs[i] -= factor * z_[i];
  }

 private:
  std::size_t n_ = 0;
  double diag_ = 0.0, off_ = 0.0, gamma_ = 0.0, denom_ = 1.0;
  TridiagonalFactor inner_;
  std::vector<double> z_;
};

namespace detail {
inline Mat2 mul(const Mat2& a, const Mat2& b) noexcept {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}
inline Mat2 sub(const Mat2& a, const Mat2& b) noexcept {
  return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
}
inline StatePair mul(const Mat2& a, const StatePair& x) noexcept {
  return {a.a11 * x.u + a.a12 * x.v, a.a21 * x.u + a.a22 * x.v};
}
inline StatePair sub(const StatePair& a, const StatePair& b) noexcept { return {a.u - b.u, a.v - b.v}; }
inline Mat2 inverse(const Mat2& a, std::size_t row) {
  const double det = a.det();
  const double scale = std::abs(a.a11) + std::abs(a.a12) + std::abs(a.a21) + std::abs(a.a22);
  if (!std::isfinite(det) || std::abs(det) <= 1e-300 * (1.0 + scale * scale)) {
    throw Error(ErrorKind::SingularJacobian, "singular 2x2 pivot block at node " + std::to_string(row));
  }
  const double inv = 1.0 / det;
  return {a.a22 * inv, -a.a12 * inv, -a.a21 * inv, a.a11 * inv};
}
}  // namespace detail

/// Block Thomas elimination for 2x2 blocks:
///   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i].
/// Throws SingularJacobian when a Schur-complement pivot block is singular.
inline std::vector<StatePair> solve_block_tridiagonal(std::span<const Mat2> lower, std::span<const Mat2> diag,
                                                      std::span<const Mat2> upper,
                                                      std::span<const StatePair> rhs) {
  using namespace detail;
  const std::size_t n = diag.size();
  if (n == 0 || lower.size() != n || upper.size() != n || rhs.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "block tridiagonal sizes differ");
  }
  std::vector<Mat2> upper_star(n);
  std::vector<StatePair> y(n);
  Mat2 inv = inverse(diag[0], 0);
  upper_star[0] = mul(inv, upper[0]);
  y[0] = mul(inv, rhs[0]);
  for (std::size_t i = 1; i < n; ++i) {
    inv = inverse(sub(diag[i], mul(lower[i], upper_star[i - 1])), i);
    upper_star[i] = mul(inv, upper[i]);
    y[i] = mul(inv, sub(rhs[i], mul(lower[i], y[i - 1])));
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    y[i] = sub(y[i], mul(upper_star[i], y[i + 1]));
  }
  return y;
}

}  // namespace gprig
