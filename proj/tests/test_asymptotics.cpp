#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "msmd/asymptotics.hpp"
#include "oracles.hpp"

namespace msmd {
namespace {

using R = Rational;

TEST(ExponentF, Examples) {
  EXPECT_DOUBLE_EQ(exponent_f(0.5, 0.75), 1.0);
  EXPECT_EQ(exponent_f(R(1, 2), R(3, 4)), R(1));
  EXPECT_EQ(exponent_f(R(1, 3), R(1)), R(2));
  EXPECT_NEAR(exponent_f(1.0 / 3.0, 1.0), 2.0, 1e-12);
  for (double x : {0.05, 0.2, 1.0 / 7, 0.5, 0.99, 1.0}) EXPECT_EQ(exponent_f(x, 0.0), 0.0);
}

TEST(ExponentF, DomainChecked) {
  EXPECT_THROW(exponent_f(0.0, 0.5), InputError);
  EXPECT_THROW(exponent_f(1.5, 0.5), InputError);
  EXPECT_THROW(exponent_f(0.5, -0.1), InputError);
  EXPECT_THROW(exponent_f(0.5, 1.1), InputError);
}

TEST(ExponentF, ReciprocalGuard) {
  // A float a hair away from 1/3 is treated as 1/3.
  const double x = 1.0 / 3.0 + 1e-14;
  EXPECT_EQ(floor_reciprocal(x), 3);
  EXPECT_EQ(floor_reciprocal(1.0 / 3.0 + 1e-9), 2);
  EXPECT_EQ(floor_reciprocal(R(1, 3)), 3);
  EXPECT_EQ(floor_reciprocal(R(2, 7)), 3);
}

TEST(SolveLevel, Examples) {
  EXPECT_EQ(solve_level(R(1, 2), R(1)).root, R(3, 4));
  EXPECT_EQ(solve_level(R(1, 4), R(1)).root, R(7, 12));
  EXPECT_EQ(solve_level(R(1, 8), R(4)).root, R(15, 16));
  const auto f = solve_level(0.125, 4.0);
  EXPECT_NEAR(f.root, 15.0 / 16.0, 1e-12);
  EXPECT_NEAR(f.bisection, 15.0 / 16.0, 1e-11);
}

TEST(SolveLevel, NoRootRejected) {
  EXPECT_THROW(solve_level(0.5, 1.5), NoRootError);
  EXPECT_THROW(solve_level(R(1, 3), R(2)), NoRootError);  // f_{1/3}(1) = 2 exactly
  EXPECT_THROW(solve_level(0.2, 4.0), NoRootError);
}

TEST(Thresholds, Examples) {
  EXPECT_EQ(y1(R(1, 3)), R(2, 3));
  EXPECT_EQ(y1(R(1, 4)), R(7, 12));
  EXPECT_EQ(y1(R(1, 2)), R(3, 4));
  EXPECT_EQ(y4(R(1, 8)), R(15, 16));
  EXPECT_NEAR(y1(1.0 / 3.0), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(y4(0.125), 15.0 / 16.0, 1e-12);
  EXPECT_THROW(y4(0.2), ThresholdUndefined);
  EXPECT_THROW(y4(R(1, 5)), ThresholdUndefined);
  EXPECT_THROW(y1(0.6), ThresholdUndefined);
  EXPECT_THROW(y1(0.0), ThresholdUndefined);
}

TEST(Thresholds, RootAboveLowerEdge) {
  const double y = y1(0.4);
  EXPECT_GT(y, increasing_from(0.4));
  EXPECT_LT(y, 1.0);
  EXPECT_NEAR(oracle::f_sum(0.4, y), 1.0, 1e-12);
}

TEST(Thresholds, JumpAtReciprocal) {
  const double left = y1(1.0 / 3.0);
  const double right = y1(1.0 / 3.0 + 1e-6);
  EXPECT_NEAR(left, 2.0 / 3.0, 1e-12);
  // floor(1/x) drops to 2, so the root is 1 - (3x - 1)/2 just right of 1/3.
  EXPECT_NEAR(right, 1.0 - (3.0 * (1.0 / 3.0 + 1e-6) - 1.0) / 2.0, 1e-12);
  EXPECT_GT(right - left, 0.3);
}

TEST(Curves, GridAndRanges) {
  const auto grid = curve_grid(0.01, 0.5, 0.01, 1e-6);
  EXPECT_TRUE(std::any_of(grid.begin(), grid.end(), [](double x) { return std::fabs(x - 1.0 / 3.0) < 1e-15; }));
  EXPECT_TRUE(std::any_of(grid.begin(), grid.end(), [](double x) { return std::fabs(x - (1.0 / 3.0 + 1e-6)) < 1e-15; }));
  EXPECT_TRUE(std::is_sorted(grid.begin(), grid.end()));
  const auto curves = emit_curves(grid, {1.0, 4.0});
  ASSERT_EQ(curves.size(), 2u);
  const auto& one = curves[0].points;
  ASSERT_FALSE(one.empty());
  EXPECT_NEAR(one.back().x, 0.5, 1e-15);
  EXPECT_NEAR(one.back().y, 0.75, 1e-12);
  for (const auto& pt : curves[1].points) EXPECT_LE(pt.x, 0.125 + 1e-12);
  EXPECT_NEAR(curves[1].points.back().x, 0.125, 1e-15);
  for (const auto& c : curves)
    for (const auto& pt : c.points) {
      EXPECT_NEAR(oracle::f_sum(pt.x, pt.y), c.level, 1e-12);
      EXPECT_GT(pt.y, increasing_from(pt.x));
      EXPECT_LE(pt.y, 1.0);
    }
}

TEST(Curves, RationalGridIsExact) {
  const auto grid = curve_grid(R(1, 100), R(1, 2), R(1, 100), R(1, 1000000));
  const auto curves = emit_curves(grid, {R(1), R(4)});
  for (const auto& c : curves)
    for (const auto& pt : c.points) EXPECT_EQ(exponent_f(pt.x, pt.y), c.level);
  EXPECT_EQ(curves[0].points.back().y, R(3, 4));
  EXPECT_EQ(curves[1].points.back().y, R(15, 16));
}

TEST(Regime, Examples) {
  EXPECT_EQ(regime(1e6, 0.3).i_star, 3);
  EXPECT_EQ(regime(1e6, 1.0 / 3.0).i_star, 2);
  const auto r = regime(1e6, 0.125);
  EXPECT_EQ(r.i_star, 7);
  EXPECT_NEAR(r.c, 1.0, 1e-9);
  EXPECT_NEAR(r.d, std::pow(1e6, 0.125), 1e-9);
  EXPECT_THROW(regime(2, 0.5), InputError);
  EXPECT_THROW(regime(100, 1.0), InputError);
}

TEST(Regime, InvariantsOnRandomExponents) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ux(0.02, 0.98);
  for (int i = 0; i < 500; ++i) {
    const double x = ux(rng);
    const double n = std::pow(10.0, 3 + i % 10);
    const auto r = regime(n, x);
    EXPECT_LT(std::pow(r.d, r.i_star), n);
    EXPECT_NEAR(std::pow(r.d, r.i_star + 1) / r.c, n, n * 1e-9);
    EXPECT_GT(r.gamma, 0.0);
    EXPECT_GE(r.gamma, std::sqrt(std::log(n) / r.d));
  }
}

TEST(BinomPmfMax, Examples) {
  const auto a = binom_pmf_max(4, 0.5);
  EXPECT_EQ(a.argmax, 2u);
  EXPECT_NEAR(a.probability, 0.375, 1e-15);
  const auto b = binom_pmf_max(50, 0.0);
  EXPECT_EQ(b.argmax, 0u);
  EXPECT_EQ(b.probability, 1.0);
  EXPECT_EQ(binom_pmf_max(50, 1.0).argmax, 50u);
  const auto c = binom_pmf_max(100, 0.3);
  EXPECT_NEAR(c.probability, 0.0867838, 1e-6);
  EXPECT_LE(c.probability, 1.0 / std::sqrt(30.0));
  EXPECT_EQ(binom_pmf_max(0, 0.4).probability, 1.0);
  EXPECT_THROW(binom_pmf_max(3, 1.2), InputError);
}

TEST(BinomPmfMax, TiesPickTheFirstMaximiser) {
  // Bin(3, 1/2): pmf(1) = pmf(2) = 3/8.
  const auto r = binom_pmf_max(3, 0.5);
  EXPECT_EQ(r.argmax, 1u);
  EXPECT_NEAR(r.probability, 0.375, 1e-15);
}

// Properties

TEST(ExponentProperties, ZeroBelowEdgeAndStrictlyIncreasingAbove) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = 0.01 + 0.99 * u(rng);
    const double edge = increasing_from(x);
    double y = u(rng);
    double y2 = u(rng);
    if (y > y2) std::swap(y, y2);
    EXPECT_NEAR(exponent_f(x, y), oracle::f_sum(x, y), 1e-12);
    if (y <= edge) {
      EXPECT_EQ(exponent_f(x, y), 0.0);
    }
    if (y >= edge && y < y2) {
      EXPECT_LT(exponent_f(x, y), exponent_f(x, y2));
    }
  }
}

TEST(ExponentProperties, SlopeAtLeastOneWherePositive) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const double x = 0.01 + 0.99 * u(rng);
    const double y = u(rng);
    if (!(exponent_f(x, y) > 0.0)) continue;
    const double eps = (1.0 - y) * u(rng);
    EXPECT_GE(exponent_f(x, y + eps) - exponent_f(x, y), eps - 1e-12);
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(ExponentProperties, BisectionMatchesClosedForm) {
  for (int i = 1; i <= 1000; ++i) {
    const double x1 = 0.5 * i / 1000.0;
    const auto r1 = solve_level(x1, 1.0);
    EXPECT_NEAR(r1.root, r1.bisection, 1e-11) << x1;
    const double x4 = 0.125 * i / 1000.0;
    const auto r4 = solve_level(x4, 4.0);
    EXPECT_NEAR(r4.root, r4.bisection, 1e-11) << x4;
  }
}

TEST(ExponentProperties, LevelAttainedThroughoutRange) {
  for (int i = 1; i <= 1000; ++i) {
    EXPECT_GT(exponent_f(0.125 * i / 1000.0, 1.0), 4.0);
    EXPECT_GT(exponent_f(0.5 * i / 1000.0, 1.0), 1.0);
  }
}

TEST(ExponentProperties, RationalRootsAreExact) {
  for (std::int64_t den = 2; den <= 80; ++den)
    for (std::int64_t num = 1; 2 * num <= den; ++num) {
      const R x(num, den);
      const R y = y1(x);
      EXPECT_EQ(exponent_f(x, y), R(1));
      EXPECT_NEAR(y.to_double(), y1(x.to_double()), 1e-12);
      if (8 * num <= den) {
        const R z = y4(x);
        EXPECT_EQ(exponent_f(x, z), R(4));
        EXPECT_NEAR(z.to_double(), y4(x.to_double()), 1e-12);
      }
    }
}

TEST(BinomProperties, AgreesWithEnumeration) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.001, 0.999);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t trials = i < 100 ? i : 100 + rng() % 901;
    const double p = u(rng);
    long double sum = 0;
    long double best = -1;
    for (std::uint64_t z = 0; z <= trials; ++z) {
      const long double q = oracle::binom_pmf_direct(trials, p, z);
      sum += q;
      best = std::max(best, q);
    }
    EXPECT_NEAR(double(sum), 1.0, 1e-12);
    const auto r = binom_pmf_max(trials, p);
    EXPECT_NEAR(r.probability, double(best), 1e-12 + 1e-10 * double(best));
    EXPECT_NEAR(double(oracle::binom_pmf_direct(trials, p, r.argmax)), double(best), 1e-10 * double(best));
  }
}

}  // namespace
}  // namespace msmd
