#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "msmd/expansion.hpp"
#include "msmd/gnp.hpp"

namespace msmd {
namespace {

TEST(Expansion, LevelZeroIsExact) {
  const auto g = families::cycle(30);
  const auto params = regime_with_degree(30, 2.0, 0.2);
  const auto rep = audit_expansion(g, params, 10, 1);
  EXPECT_EQ(rep.at(0, 1).min_ratio, 1.0);
  EXPECT_EQ(rep.at(0, 1).max_ratio, 1.0);
  EXPECT_EQ(rep.at(0, 2).max_abs_deviation, 0.0);
  EXPECT_EQ(rep.at(0, 1).samples, 10u);
}

TEST(Expansion, CompleteGraphLevelOne) {
  const auto g = families::complete(12);
  const auto params = regime_with_degree(12, 11.0, 0.9);
  ASSERT_EQ(params.i_star, 1);
  const auto rep = audit_expansion(g, params, 12, 2);
  const auto& one = rep.at(1, 1);
  EXPECT_EQ(one.samples, 12u);
  EXPECT_EQ(one.min_ratio, 1.0);
  EXPECT_EQ(one.max_ratio, 1.0);
  EXPECT_EQ(one.within, 12u);
  // Nothing lies at distance 2 in K_n.
  EXPECT_TRUE(rep.partial);
  EXPECT_EQ(rep.at(2, 1).empty_layers, 12u);
}

TEST(Expansion, SingletonsSampledWithoutReplacement) {
  // Star with 7 leaves: sampling all 8 vertices must hit the centre exactly once.
  const auto g = families::star(7);
  const auto rep = audit_expansion(g, regime_with_degree(8, 1.75, 0.3), 8, 5);
  const auto& r = rep.at(1, 1).ratios;
  ASSERT_EQ(r.size(), 8u);
  EXPECT_EQ(std::count(r.begin(), r.end(), 7 / 1.75), 1);
  EXPECT_EQ(std::count(r.begin(), r.end(), 1 / 1.75), 7);
}

TEST(Expansion, InputChecks) {
  const auto g = families::cycle(10);
  EXPECT_THROW(audit_expansion(g, regime_with_degree(11, 2.0, 0.3), 5, 1), InputError);
  EXPECT_THROW(audit_expansion(g, regime_with_degree(10, 3.0, 0.3), 5, 1), InputError);
  EXPECT_THROW(audit_expansion(g, regime_with_degree(10, 2.0, 0.3), 0, 1), InputError);
  const auto two = Graph::from_edges(4, {{0, 1}, {2, 3}});
  EXPECT_THROW(audit_expansion(two, regime_with_degree(4, 1.0, 0.3), 2, 1), DisconnectedGraphError);
}

TEST(Expansion, RandomGraphFirstLevelWithinThreeGamma) {
  const std::size_t n = 20000;
  const auto g = generate_gnp(RandomGraphSpec::with_exponent(n, 0.5, 7));
  const auto params = regime_with_degree(double(n), g.average_degree(), 0.5);
  const auto rep = audit_expansion(g, params, 100, 7);
  const auto& one = rep.at(1, 1);
  EXPECT_EQ(one.samples, 100u);
  EXPECT_LE(one.max_abs_deviation, 3 * params.gamma);
  EXPECT_EQ(one.within, 100u);
  // Pairs: |S_1({u,v})| about 2d.
  EXPECT_LE(rep.at(1, 2).max_abs_deviation, 3 * params.gamma);
}

TEST(Expansion, ThreadCountInvariance) {
  const auto g = generate_gnp(RandomGraphSpec::with_exponent(3000, 0.4, 1));
  const auto params = regime_with_degree(3000, g.average_degree(), 0.4);
  const auto a = audit_expansion(g, params, 40, 9, 3.0, 1);
  const auto b = audit_expansion(g, params, 40, 9, 3.0, 8);
  ASSERT_EQ(a.levels.size(), b.levels.size());
  for (std::size_t i = 0; i < a.levels.size(); ++i) EXPECT_EQ(a.levels[i].ratios, b.levels[i].ratios);
}

}  // namespace
}  // namespace msmd
