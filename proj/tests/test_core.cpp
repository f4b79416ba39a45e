#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>

#include "issc/core.hpp"
#include "issc/error.hpp"

using namespace issc;

TEST(BoundaryParams, RejectsDegenerateData) {
  EXPECT_NO_THROW((BoundaryParams{1, 0, 0, 1, 1}.validate()));
  EXPECT_THROW((BoundaryParams{1, 0, 0, 1, 0}.validate()), Error);
  EXPECT_THROW((BoundaryParams{1, 0, 0, 1, -2}.validate()), Error);
  EXPECT_THROW((BoundaryParams{0, 0, 0, 1, 1}.validate()), Error);
  EXPECT_THROW((BoundaryParams{1, 1, 0, 0, 1}.validate()), Error);
}

TEST(BoundaryParams, DirichletRightFollowsA2) {
  EXPECT_TRUE((BoundaryParams{1, 0, 0, 1, 1}.dirichlet_right()));
  EXPECT_FALSE((BoundaryParams{1, 0.5, 0, 1, 1}.dirichlet_right()));
}

TEST(Grid, NodesCoverUnitInterval) {
  for (std::size_t n : {2u, 3u, 7u, 64u, 1000u}) {
    const Grid g = build_grid(n);
    ASSERT_EQ(g.n_nodes(), n + 1);
    EXPECT_EQ(g.node(0), 0.0);
    EXPECT_EQ(g.node(n), 1.0);
    EXPECT_NEAR(g.h() * double(n), 1.0, 1e-15);
    for (std::size_t i = 1; i <= n; ++i) EXPECT_LT(g.node(i - 1), g.node(i));
  }
}

TEST(Grid, TooFewCellsRejected) {
  EXPECT_THROW(build_grid(0), Error);
  EXPECT_THROW(build_grid(1), Error);
}

TEST(Energy, TrapezoidMatchesClosedForms) {
  const Grid g = build_grid(50);
  std::vector<double> ones(g.n_nodes(), 1.0);
  EXPECT_NEAR(l2_norm_sq(ones, g), 1.0, 1e-14);

  // Trapezoid rule on x^2 over [0,1] overshoots by h^2/6.
  std::vector<double> x(g.nodes().begin(), g.nodes().end());
  EXPECT_NEAR(l2_norm_sq(x, g), 1.0 / 3.0 + g.h() * g.h() / 6.0, 1e-14);

  Field zero{0.0, std::vector<double>(g.n_nodes(), 0.0)};
  EXPECT_EQ(l2_norm_sq(zero, g), 0.0);
}

TEST(Energy, NonnegativeAndHomogeneous) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  const Grid g = build_grid(33);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> u(g.n_nodes());
    for (auto& v : u) v = normal(rng);
    const double e = l2_norm_sq(u, g);
    EXPECT_GE(e, 0.0);
    std::vector<double> scaled = u;
    for (auto& v : scaled) v *= 3.0;
    EXPECT_NEAR(l2_norm_sq(scaled, g), 9.0 * e, 1e-12 * e);
  }
}

TEST(Signals, EvaluateEachKind) {
  EXPECT_EQ(DisturbanceSignal::zero().value(3.0), 0.0);
  EXPECT_EQ(DisturbanceSignal::constant(2.5).value(10.0), 2.5);
  EXPECT_NEAR(DisturbanceSignal::sinusoid(0.1, 2.0).value(0.7), 0.1 * std::sin(1.4), 1e-16);
  EXPECT_NEAR(DisturbanceSignal::sinusoid(1.0, 1.0, 0.5).value(0.0), std::sin(0.5), 1e-16);
  EXPECT_NEAR(DisturbanceSignal::decaying_exp(2.0, 3.0).value(0.5), 2.0 * std::exp(-1.5), 1e-15);

  const auto table = DisturbanceSignal::table({0.0, 1.0, 3.0}, {0.0, 2.0, -2.0});
  EXPECT_DOUBLE_EQ(table.value(0.5), 1.0);
  EXPECT_DOUBLE_EQ(table.value(2.0), 0.0);
  EXPECT_DOUBLE_EQ(table.value(10.0), -2.0);
}

TEST(Signals, NegativeTimeRejected) {
  EXPECT_THROW(eval_signal(DisturbanceSignal::constant(1.0), -1e-9), Error);
  EXPECT_NO_THROW(eval_signal(DisturbanceSignal::constant(1.0), 0.0));
}

TEST(Signals, TableValidation) {
  EXPECT_THROW(DisturbanceSignal::table({}, {}), Error);
  EXPECT_THROW(DisturbanceSignal::table({0.0, 1.0}, {1.0}), Error);
  EXPECT_THROW(DisturbanceSignal::table({1.0, 0.0}, {1.0, 2.0}), Error);
}

TEST(Signals, ScaledAndZero) {
  const auto s = DisturbanceSignal::sinusoid(0.1, 2.0, 0.3);
  const auto k = s.scaled(-4.0);
  for (double t : {0.0, 0.4, 2.2}) EXPECT_NEAR(k.value(t), -4.0 * s.value(t), 1e-15);
  EXPECT_TRUE(DisturbanceSignal::zero().is_zero());
  EXPECT_FALSE(s.is_zero());
  EXPECT_EQ(s.describe(), "sinusoid(0.10000000000000001, 2, 0.29999999999999999)");
}

TEST(Profiles, SupNormAtMostOne) {
  for (Profile p : {Profile::uniform, Profile::sine, Profile::cosine}) {
    double sup = 0.0;
    for (int i = 0; i <= 1000; ++i) sup = std::max(sup, std::abs(eval_profile(p, i / 1000.0)));
    EXPECT_LE(sup, 1.0);
    EXPECT_GT(sup, 0.99) << profile_name(p);
  }
}

TEST(Shapes, DerivativesMatchFiniteDifferences) {
  FourierSeries f;
  f.a0 = 0.3;
  f.a = {1.0, -0.5, 0.25};
  f.b = {0.2, 0.7};
  f.omega = 2.1;
  f.shift = -0.4;
  Polynomial p{{1.0, -2.0, 0.5, 3.0}};
  const double h = 1e-6;
  for (double x : {-1.3, 0.0, 0.37, 1.9}) {
    EXPECT_NEAR(f.derivative(x), (f.value(x + h) - f.value(x - h)) / (2 * h), 1e-7);
    EXPECT_NEAR(p.derivative(x), (p.value(x + h) - p.value(x - h)) / (2 * h), 1e-7);
  }
  EXPECT_DOUBLE_EQ(p.value(2.0), 1.0 - 4.0 + 2.0 + 24.0);
}

TEST(FormatReal, RoundTripsExactly) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::ldexp(mant(rng), expo(rng));
    EXPECT_EQ(std::stod(format_real(x)), x);
  }
  EXPECT_EQ(format_real(0.0), "0");
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
}
