#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "gprig/grid.hpp"

using namespace gprig;

namespace {

ProfilePair closed_form_sample(const Grid1D& g, double alpha = 0.0) {
  return ProfilePair::sample(g, [alpha](double x) { return lambda3_closed_form(alpha, x); });
}

ProfilePair constant_profile(const Grid1D& g, StatePair s) {
  return ProfilePair::sample(g, [s](double) { return s; });
}

}  // namespace

TEST(Grid1D, EndpointsAndSpacing) {
  const Grid1D g(20.0, 2001);
  EXPECT_EQ(g.x(0), -20.0);
  EXPECT_EQ(g.x(2000), 20.0);
  EXPECT_DOUBLE_EQ(g.h(), 0.02);
  EXPECT_EQ(g.center(), 1000u);
  EXPECT_EQ(g.x(g.center()), 0.0);
  const Grid1D odd(0.7, 13);
  EXPECT_EQ(odd.x(12), 0.7);
  EXPECT_EQ(odd.x(0), -0.7);
  EXPECT_THROW(Grid1D(20.0, 2), Error);
  EXPECT_THROW(Grid1D(0.0, 11), Error);
  EXPECT_THROW(Grid1D(-1.0, 11), Error);
}

TEST(ProfilePair, ValidationAndResampling) {
  const Grid1D g(5.0, 11);
  EXPECT_THROW(ProfilePair(g, std::vector<double>(10), std::vector<double>(11)), Error);
  std::vector<double> bad(11, 0.0);
  bad[3] = std::nan("");
  EXPECT_THROW(ProfilePair(g, bad, std::vector<double>(11)), Error);

  const ProfilePair lin = ProfilePair::sample(g, [](double x) { return StatePair{x, -2 * x}; });
  const StatePair mid = interpolate(lin, 0.3);
  EXPECT_NEAR(mid.u, 0.3, 1e-15);
  EXPECT_NEAR(mid.v, -0.6, 1e-15);
  EXPECT_EQ(interpolate(lin, -9.0).u, -5.0);
  EXPECT_EQ(interpolate(lin, 9.0).u, 5.0);
  const ProfilePair fine = resample(lin, Grid1D(5.0, 41));
  for (std::size_t i = 0; i < fine.size(); ++i) EXPECT_NEAR(fine.u[i], fine.grid.x(i), 1e-14);
}

TEST(Residual1D, ClosedFormIsSecondOrder) {
  const Params p(3.0);
  const Grid1D g(20.0, 2001);
  const ProfilePair r = residual_1d(p, closed_form_sample(g));
  EXPECT_LE(max_abs(r), g.h() * g.h());

  // Observed order across a dyadic refinement sequence.
  double prev = 0.0;
  for (std::size_t n : {501u, 1001u, 2001u, 4001u}) {
    const double res = max_abs(residual_1d(p, closed_form_sample(Grid1D(20.0, n))), true);
    if (prev > 0.0) {
      const double order = std::log2(prev / res);
      EXPECT_GE(order, 1.8) << "n=" << n;
      EXPECT_LE(order, 2.2) << "n=" << n;
      EXPECT_NEAR(prev / res, 4.0, 0.8);
    }
    prev = res;
  }
}

TEST(Residual1D, LiouvilleConstantIsExact) {
  const Params p(0.5);
  const double c = 1.0 / std::sqrt(1.5);
  const Grid1D g(10.0, 101);
  const ProfilePair r = residual_1d(p, constant_profile(g, {c, c}), Dirichlet{{c, c}, {c, c}});
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    EXPECT_NEAR(r.u[i], 0.0, 1e-15);
    EXPECT_NEAR(r.v[i], 0.0, 1e-15);
  }
  EXPECT_EQ(r.u[0], 0.0);
}

TEST(Residual1D, BoundaryRowsAreTheDefect) {
  const Grid1D g(3.0, 7);
  const ProfilePair r = residual_1d(Params(2.0), ProfilePair(g));
  EXPECT_EQ(r.u[0], 0.0);
  EXPECT_EQ(r.v[0], -1.0);
  EXPECT_EQ(r.u[6], -1.0);
  EXPECT_EQ(r.v[6], 0.0);
}

TEST(ResidualSlab, EmbeddingCommutesWithResidual) {
  const Params p(3.0);
  const Grid1D g(20.0, 401);
  const ProfilePair prof = closed_form_sample(g);
  const ProfilePair r1 = residual_1d(p, prof, prof.boundary());
  const SlabField f = embed(prof, Axis::periodic(8.0, 16));
  const SlabField rs = residual_slab(p, f);
  for (std::size_t t = 0; t < f.nt(); ++t) {
    for (std::size_t j = 0; j < f.nn(); ++j) {
      ASSERT_EQ(rs.u[f.index(t, j)], r1.u[j]);
      ASSERT_EQ(rs.v[f.index(t, j)], r1.v[j]);
    }
  }
  EXPECT_LE(max_abs(rs), g.h() * g.h());
}

TEST(ResidualSlab, ZeroFieldReportsBoundaryData) {
  const Grid1D g(4.0, 9);
  SlabField f(Axis::periodic(2.0, 4), Axis::dirichlet(g));
  std::fill(f.u.begin(), f.u.end(), 0.0);
  std::fill(f.v.begin(), f.v.end(), 0.0);
  const SlabField r = residual_slab(Params(2.0), f);
  for (std::size_t t = 0; t < f.nt(); ++t) {
    EXPECT_EQ(r.at(t, 0).u, 0.0);
    EXPECT_EQ(r.at(t, 0).v, -1.0);
    EXPECT_EQ(r.at(t, 8).u, -1.0);
    EXPECT_EQ(r.at(t, 8).v, 0.0);
    EXPECT_EQ(r.at(t, 4).u, 0.0);
  }
}

TEST(Axis, PeriodicAndDirichlet) {
  const Axis a = Axis::periodic(8.0, 64);
  EXPECT_TRUE(a.is_periodic());
  EXPECT_DOUBLE_EQ(a.h(), 0.125);
  EXPECT_EQ(a.x(0), -4.0);
  EXPECT_THROW(a.as_grid(), Error);
  const Axis d = Axis::dirichlet(Grid1D(20.0, 801));
  EXPECT_EQ(d.x(800), 20.0);
  EXPECT_EQ(d.as_grid(), Grid1D(20.0, 801));
  EXPECT_THROW(SlabField(d, d), Error);
}

// No gradient, so only W(1,0) = 1/4 integrated over [-20, 20].
TEST(Energy1D, ConstantEquilibrium) {
  const Grid1D g(20.0, 201);
  EXPECT_NEAR(discrete_energy_1d(Params(3.0), constant_profile(g, {1.0, 0.0})), 10.0, 1e-12);
  EXPECT_NEAR(discrete_energy_1d(Params(0.5), constant_profile(g, {0.0, 1.0})), 10.0, 1e-12);
}

// Independent oracle: adaptive Gauss-Kronrod quadrature of the continuum
// energy density of the explicit profile, u' = sech^2(x/sqrt2)/(2 sqrt2), v' = -u'.
TEST(Energy1D, MatchesQuadratureOracle) {
  const Params p(3.0);
  auto density = [](double x) {
    const double k = std::tanh(x / std::sqrt(2.0));
    const double u = 0.5 * (1 + k), v = 0.5 * (1 - k);
    const double du = (1 - k * k) / (2 * std::sqrt(2.0));
    const double w = (u * u - 1) * (u * u - 1) / 4 + (v * v - 1) * (v * v - 1) / 4 + 1.5 * u * u * v * v;
    return du * du + w;  // (|u'|^2 + |v'|^2)/2 with |v'| = |u'|
  };
  double err = 0.0;
  const double exact = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(density, -20.0, 20.0, 15, 1e-13,
                                                                                    &err);
  const double discrete = discrete_energy_1d(p, closed_form_sample(Grid1D(20.0, 2001)));
  EXPECT_NEAR(discrete, exact, 1e-4);
}

TEST(Energy1D, TranslationConsistent) {
  const Params p(3.0);
  const Grid1D g(20.0, 2001);
  auto pinned = [&](double alpha) {
    ProfilePair s = closed_form_sample(g, alpha);
    s.set(0, {0.0, 1.0});
    s.set(g.size() - 1, {1.0, 0.0});
    return s;
  };
  const double e0 = discrete_energy_1d(p, pinned(0.0));
  for (int cells : {1, 3, 10, -7}) {
    EXPECT_NEAR(discrete_energy_1d(p, pinned(cells * g.h())), e0, 1e-8) << cells;
  }
}

TEST(Energy1D, SlabEnergyOfEmbeddingScalesWithWidth) {
  const Params p(3.0);
  const Grid1D g(20.0, 401);
  const ProfilePair prof = closed_form_sample(g);
  const SlabField f = embed(prof, Axis::periodic(8.0, 16));
  EXPECT_NEAR(discrete_energy_slab(p, f), 8.0 * discrete_energy_1d(p, prof), 1e-10);
}

TEST(Monotone, ClosedFormSwappedAndConstant) {
  const Grid1D g(20.0, 2001);
  const ProfilePair cf = closed_form_sample(g);
  const MonotoneReport m = check_discrete_monotone(cf);
  EXPECT_GT(m.min_du, 0.0);
  EXPECT_LT(m.max_dv, 0.0);
  EXPECT_TRUE(m.strict());

  ProfilePair sw(g, cf.v, cf.u);
  const MonotoneReport ms = check_discrete_monotone(sw);
  EXPECT_LT(ms.min_du, 0.0);
  EXPECT_GT(ms.max_dv, 0.0);
  EXPECT_FALSE(ms.strict());

  const MonotoneReport mc = check_discrete_monotone(constant_profile(g, {0.3, 0.3}));
  EXPECT_EQ(mc.min_du, 0.0);
  EXPECT_EQ(mc.max_dv, 0.0);
  EXPECT_FALSE(mc.strict());
}

TEST(Bounds, EqualityCasesPass) {
  const double s = std::sqrt(0.5);
  const Grid1D g(1.0, 5);
  // equality holds up to one rounding of s*s
  const BoundReport b1 = check_bounds(Params(1.0), constant_profile(g, {s, s}), 1e-15);
  EXPECT_NEAR(b1.max_norm2, 1.0, 1e-15);
  EXPECT_TRUE(b1.unit_or_above);
  EXPECT_TRUE(b1.pass_regime()) << b1.margin_regime;

  const double c = 1.0 / std::sqrt(1.5);
  const BoundReport b2 = check_bounds(Params(0.5), constant_profile(g, {c, c}), 1e-15);
  EXPECT_NEAR(b2.max_norm2, 4.0 / 3.0, 1e-15);
  EXPECT_FALSE(b2.unit_or_above);
  EXPECT_NEAR(b2.regime_bound, 4.0 / 3.0, 1e-15);
  EXPECT_TRUE(b2.pass());
}

TEST(Bounds, ViolationMargin) {
  const Grid1D g(1.0, 5);
  ProfilePair prof = constant_profile(g, {0.2, 0.2});
  prof.u[2] = 1.1;
  const BoundReport b = check_bounds(Params(2.0), prof);
  EXPECT_NEAR(b.margin_i, -0.1, 1e-15);
  EXPECT_FALSE(b.pass_i());
  EXPECT_TRUE(check_bounds(Params(2.0), prof, 0.11).pass_i());
}

TEST(SumVsOne, ClosedFormIsExactlyOne) {
  const Grid1D g(20.0, 2001);
  const SumReport s = check_sum_vs_one(Params(3.0), closed_form_sample(g));
  EXPECT_EQ(s.expected, SumOrdering::Equal);
  EXPECT_NEAR(s.min_sum, 1.0, 1e-15);
  EXPECT_NEAR(s.max_sum, 1.0, 1e-15);
  EXPECT_TRUE(check_sum_vs_one(Params(3.0), closed_form_sample(g), 1e-15).pass);
}

TEST(SumVsOne, VerdictFollowsCoupling) {
  const Grid1D g(1.0, 5);
  const ProfilePair above = constant_profile(g, {0.6, 0.6});
  const ProfilePair below = constant_profile(g, {0.4, 0.4});
  EXPECT_EQ(check_sum_vs_one(Params(2.0), above).expected, SumOrdering::Above);
  EXPECT_TRUE(check_sum_vs_one(Params(2.0), above).pass);
  EXPECT_FALSE(check_sum_vs_one(Params(2.0), below).pass);
  EXPECT_EQ(check_sum_vs_one(Params(6.0), below).expected, SumOrdering::Below);
  EXPECT_TRUE(check_sum_vs_one(Params(6.0), below).pass);
  EXPECT_FALSE(check_sum_vs_one(Params(6.0), above).pass);
  EXPECT_EQ(check_sum_vs_one(Params(0.5), above).expected, SumOrdering::NotApplicable);
}
