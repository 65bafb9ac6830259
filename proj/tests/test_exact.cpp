#include <gtest/gtest.h>

#include <random>

#include "msmd/exact.hpp"
#include "oracles.hpp"

namespace msmd {
namespace {

using Set = std::vector<Vertex>;

TEST(BetaExact, SmallFamilies) {
  for (std::size_t n = 2; n <= 10; ++n) {
    const auto r = beta_exact(families::path(n));
    EXPECT_EQ(r.size, ExtendedCount(1));
    EXPECT_EQ(r.witness, Set{0});
  }
  for (std::size_t n = 2; n <= 7; ++n) EXPECT_EQ(beta_exact(families::complete(n)).size, ExtendedCount(n - 1));
  EXPECT_EQ(beta_exact(families::cycle(6)).size, ExtendedCount(2));
}

TEST(BetaMsExact, SmallFamilies) {
  const auto p5 = beta_ms_exact(families::path(5));
  EXPECT_EQ(p5.size, ExtendedCount(1));
  EXPECT_EQ(p5.witness, Set{0});
  EXPECT_TRUE(beta_ms_exact(families::cycle(4)).size.is_infinite());
  const auto c6 = beta_ms_exact(families::cycle(6));
  EXPECT_EQ(c6.size, ExtendedCount(3));
  EXPECT_TRUE(verify_resolving(families::cycle(6), c6.witness, ResolvingKind::multiset).resolving);
}

TEST(BetaMsExact, InfinityOnlyAfterEverySubset) {
  const auto r = beta_ms_exact(families::cycle(4));
  EXPECT_EQ(r.subsets_examined, 15u);
  EXPECT_TRUE(r.witness.empty());
  EXPECT_FALSE(r.lower_bound_only);
}

TEST(BetaMsExact, PathsUpToTwelve) {
  for (std::size_t n = 2; n <= 12; ++n) EXPECT_EQ(beta_ms_exact(families::path(n)).size, ExtendedCount(1)) << n;
}

TEST(BetaMsOutExact, SmallFamilies) {
  for (std::size_t n = 2; n <= 7; ++n) EXPECT_EQ(beta_ms_out_exact(families::complete(n)).size, ExtendedCount(n - 1));
  EXPECT_EQ(beta_ms_out_exact(families::path(3)).size, ExtendedCount(1));
  EXPECT_EQ(beta_ms_out_exact(families::petersen()).size, ExtendedCount(9));
}

TEST(DimensionReport, Examples) {
  const auto p4 = dimension_report(families::path(4));
  EXPECT_EQ(p4.beta, 1u);
  EXPECT_EQ(p4.beta_ms_out, 1u);
  EXPECT_EQ(p4.beta_ms, ExtendedCount(1));

  const auto k4 = dimension_report(families::complete(4));
  EXPECT_EQ(k4.beta, 3u);
  EXPECT_EQ(k4.beta_ms_out, 3u);
  EXPECT_TRUE(k4.beta_ms.is_infinite());
  EXPECT_TRUE(k4.beta_ms_witness.empty());

  const auto c6 = dimension_report(families::cycle(6));
  EXPECT_EQ(c6.beta, 2u);
  EXPECT_EQ(c6.beta_ms, ExtendedCount(3));
  EXPECT_GE(c6.beta_ms_out, 2u);
  EXPECT_LE(c6.beta_ms_out, 3u);
  EXPECT_EQ(c6.subsets_examined(), c6.beta_examined + c6.beta_ms_out_examined + c6.beta_ms_examined);
}

TEST(Budget, RefusesLargeGraphs) {
  EXPECT_THROW(beta_exact(families::path(17)), BudgetExceeded);
  EXPECT_THROW(beta_ms_exact(families::path(17)), BudgetExceeded);
  EXPECT_THROW(dimension_report(families::path(17)), BudgetExceeded);
  EXPECT_NO_THROW(beta_exact(families::path(17), {.budget = 17}));
  EXPECT_THROW(beta_exact(families::path(5), {.budget = 23}), InputError);
  EXPECT_THROW(beta_exact(families::path(1)), InputError);
}

TEST(LowerBoundMode, StopsAfterRequestedSize) {
  SolverOptions opt;
  opt.max_size = 2;
  const auto c6 = beta_ms_exact(families::cycle(6), opt);
  EXPECT_TRUE(c6.lower_bound_only);
  EXPECT_EQ(c6.size, ExtendedCount(3));
  EXPECT_EQ(c6.subsets_examined, 6u + 15u);
  opt.max_size = 3;
  const auto found = beta_ms_exact(families::cycle(6), opt);
  EXPECT_FALSE(found.lower_bound_only);
  EXPECT_EQ(found.size, ExtendedCount(3));
}

TEST(NonMonotone, PathOfFourHasAFailingSuperset) {
  const auto g = families::path(4);
  const auto w = find_nonmonotone_superset(g);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->resolving, Set{0});
  EXPECT_TRUE(verify_resolving(g, w->resolving, ResolvingKind::multiset).resolving);
  auto bigger = w->resolving;
  bigger.push_back(w->added);
  EXPECT_FALSE(verify_resolving(g, bigger, ResolvingKind::multiset).resolving);
  // Both endpoints also fail: 0 and 3 read the same multiset.
  EXPECT_FALSE(verify_resolving(g, Set{0, 3}, ResolvingKind::multiset).resolving);
}

TEST(ExactProperties, DiameterTwoNonPathsHaveNoMultisetResolvingSet) {
  std::mt19937 rng(99);
  int checked = 0;
  for (int trial = 0; trial < 3000 && checked < 300; ++trial) {
    const std::size_t n = 3 + trial % 7;
    const auto g = oracle::random_graph(n, 0.55 + 0.05 * (trial % 6), rng);
    const auto d = oracle::diameter_fw(g);
    if (d == oracle::kInf || d > 2 || oracle::is_path_graph(g)) continue;
    EXPECT_TRUE(beta_ms_exact(g).size.is_infinite());
    ++checked;
  }
  EXPECT_GE(checked, 300);
}

TEST(ExactProperties, MatchesBitmaskBruteForce) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const auto g = oracle::random_connected_graph(3 + trial % 6, 0.3 + 0.1 * (trial % 4), rng);
    const auto ms = oracle::min_resolving_bruteforce(g, oracle::Kind::multiset);
    const auto r = dimension_report(g);
    EXPECT_EQ(r.beta, oracle::min_resolving_bruteforce(g, oracle::Kind::metric));
    EXPECT_EQ(r.beta_ms_out, oracle::min_resolving_bruteforce(g, oracle::Kind::outer));
    if (ms == 0) {
      EXPECT_TRUE(r.beta_ms.is_infinite());
    } else {
      EXPECT_EQ(r.beta_ms, ExtendedCount(ms));
    }
  }
}

TEST(ExactProperties, WitnessIsLexicographicallyLeast) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = oracle::random_connected_graph(4 + trial % 5, 0.4, rng);
    const auto r = beta_exact(g);
    const auto d = oracle::floyd_warshall(g);
    const std::size_t n = g.order();
    // Smallest lexicographic set of the optimal size, by sorted enumeration.
    std::vector<Set> all;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      if (std::size_t(__builtin_popcount(mask)) != r.size.value()) continue;
      Set R;
      for (Vertex v = 0; v < n; ++v)
        if (mask & (1u << v)) R.push_back(v);
      if (oracle::resolves_naive(d, R, oracle::Kind::metric)) all.push_back(R);
    }
    ASSERT_FALSE(all.empty());
    EXPECT_EQ(r.witness, *std::min_element(all.begin(), all.end()));
  }
}

TEST(ExactProperties, ThreadCountInvariance) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = oracle::random_connected_graph(14, 0.25, rng);
    const auto a = dimension_report(g, {.threads = 1});
    const auto b = dimension_report(g, {.threads = 8});
    EXPECT_EQ(a.beta_witness, b.beta_witness);
    EXPECT_EQ(a.beta_ms_witness, b.beta_ms_witness);
    EXPECT_EQ(a.beta_ms_out_witness, b.beta_ms_out_witness);
    EXPECT_EQ(a.subsets_examined(), b.subsets_examined());
  }
}

}  // namespace
}  // namespace msmd
