#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "gprig/banded.hpp"

using namespace gprig;

namespace {

// Dense Gaussian elimination with partial pivoting: the oracle for every band solver.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    }
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= m * a[k][j];
      b[i] -= m * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace

TEST(Tridiagonal, MatchesDenseSolve) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (std::size_t n : {1u, 2u, 3u, 7u, 40u}) {
    std::vector<double> lo(n), di(n), up(n), rhs(n);
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = d(rng);
      up[i] = d(rng);
      di[i] = 3.0 + d(rng);
      rhs[i] = d(rng);
      a[i][i] = di[i];
      if (i > 0) a[i][i - 1] = lo[i];
      if (i + 1 < n) a[i][i + 1] = up[i];
    }
    const auto x = solve_tridiagonal(lo, di, up, rhs);
    const auto ref = dense_solve(a, rhs);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(x[i], ref[i], 1e-13);
  }
}

TEST(Tridiagonal, ZeroPivotIsReported) {
  std::vector<double> lo{0, 1}, di{0, 1}, up{1, 0};
  EXPECT_THROW(TridiagonalFactor(lo, di, up), Error);
  std::vector<double> bad{1.0};
  EXPECT_THROW(TridiagonalFactor(bad, di, up), Error);
}

TEST(CyclicTridiagonal, MatchesDenseSolve) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (std::size_t n : {1u, 2u, 3u, 4u, 9u, 64u}) {
    const double diag = 1.0 + 2.0 * 0.7, off = -0.7;
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      a[i][i] += diag;
      a[i][(i + 1) % n] += off;
      a[i][(i + n - 1) % n] += off;
    }
    std::vector<double> rhs(n);
    for (auto& r : rhs) r = d(rng);
    const auto ref = dense_solve(a, rhs);
    CyclicTridiagonalFactor f(n, diag, off);
    std::vector<double> x = rhs;
    f.solve_in_place(x);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(x[i], ref[i], 1e-13) << "n=" << n;
  }
}

TEST(BlockTridiagonal, MatchesDenseSolve) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (std::size_t n : {1u, 2u, 5u, 30u}) {
    std::vector<Mat2> lo(n), di(n), up(n);
    std::vector<StatePair> rhs(n);
    const std::size_t m = 2 * n;
    std::vector<std::vector<double>> a(m, std::vector<double>(m, 0.0));
    std::vector<double> b(m);
    auto put = [&](std::size_t bi, std::size_t bj, const Mat2& blk) {
      a[2 * bi][2 * bj] = blk.a11;
      a[2 * bi][2 * bj + 1] = blk.a12;
      a[2 * bi + 1][2 * bj] = blk.a21;
      a[2 * bi + 1][2 * bj + 1] = blk.a22;
    };
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = {d(rng), d(rng), d(rng), d(rng)};
      up[i] = {d(rng), d(rng), d(rng), d(rng)};
      di[i] = {6.0 + d(rng), d(rng), d(rng), 6.0 + d(rng)};
      rhs[i] = {d(rng), d(rng)};
      b[2 * i] = rhs[i].u;
      b[2 * i + 1] = rhs[i].v;
      put(i, i, di[i]);
      if (i > 0) put(i, i - 1, lo[i]);
      if (i + 1 < n) put(i, i + 1, up[i]);
    }
    const auto x = solve_block_tridiagonal(lo, di, up, rhs);
    const auto ref = dense_solve(a, b);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(x[i].u, ref[2 * i], 1e-13);
      EXPECT_NEAR(x[i].v, ref[2 * i + 1], 1e-13);
    }
  }
}

TEST(BlockTridiagonal, SingularBlockIsReported) {
  std::vector<Mat2> lo(2), di{Mat2{1, 1, 1, 1}, Mat2{1, 0, 0, 1}}, up(2);
  std::vector<StatePair> rhs(2);
  EXPECT_THROW(solve_block_tridiagonal(lo, di, up, rhs), Error);
  std::vector<Mat2> short_band(1);
  EXPECT_THROW(solve_block_tridiagonal(short_band, di, up, rhs), Error);
}
