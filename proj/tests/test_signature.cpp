#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "msmd/bfs.hpp"
#include "msmd/signature.hpp"
#include "oracles.hpp"

namespace msmd {
namespace {

using Counts = std::vector<std::uint32_t>;

TEST(MultisetSignature, PathSingleSensor) {
  const std::vector<Vertex> R{0};
  EXPECT_EQ(multiset_signature(families::path(3), R, 2).counts, (Counts{0, 0, 1}));
}

TEST(MultisetSignature, CycleExample) {
  const std::vector<Vertex> R{0, 1, 3};
  EXPECT_EQ(multiset_signature(families::cycle(6), R, 2).counts, (Counts{0, 2, 1, 0}));
}

TEST(MultisetSignature, FullSetGivesSphereSizes) {
  const auto g = families::petersen();
  std::vector<Vertex> all(g.order());
  for (Vertex v = 0; v < all.size(); ++v) all[v] = v;
  for (Vertex v = 0; v < g.order(); ++v) {
    const auto sig = multiset_signature(g, all, v);
    const auto t = bfs_spheres(g, {v});
    for (std::size_t k = 0; k < sig.counts.size(); ++k) EXPECT_EQ(sig.counts[k], t.sphere_size(k));
  }
}

TEST(MultisetSignature, EmptyOrRepeatedSetRejected) {
  const auto g = families::path(3);
  EXPECT_THROW(multiset_signature(g, std::vector<Vertex>{}, 0), InputError);
  EXPECT_THROW(multiset_signature(g, std::vector<Vertex>{1, 1}, 0), InputError);
  EXPECT_THROW(multiset_signature(g, std::vector<Vertex>{4}, 0), InputError);
}

TEST(MultisetSignature, DisconnectedGraphGetsInfinityCoordinate) {
  const auto g = Graph::from_edges(5, {{0, 1}, {1, 2}, {3, 4}});
  const std::vector<Vertex> R{0, 3};
  // max finite distance 2, so width 4 with the last slot for "other component".
  EXPECT_EQ(multiset_signature(g, R, 2).counts, (Counts{0, 0, 1, 1}));
  EXPECT_EQ(multiset_signature(g, R, 4).counts, (Counts{0, 1, 0, 1}));
  const auto table = multiset_signatures(g, R);
  EXPECT_EQ(table.width(), 4u);
}

TEST(VerifyResolving, PathEndpoint) {
  const auto v = verify_resolving(families::path(4), std::vector<Vertex>{0}, ResolvingKind::multiset);
  EXPECT_TRUE(v.resolving);
  EXPECT_FALSE(v.witness);
}

TEST(VerifyResolving, TriangleNeverResolves) {
  const auto g = families::complete(3);
  for (const std::vector<Vertex>& R : {std::vector<Vertex>{0}, {0, 1}, {0, 1, 2}, {2}}) {
    const auto v = verify_resolving(g, R, ResolvingKind::multiset);
    EXPECT_FALSE(v.resolving);
    ASSERT_TRUE(v.witness);
    const auto [a, b] = *v.witness;
    EXPECT_NE(a, b);
    EXPECT_EQ(multiset_signature(g, R, a), multiset_signature(g, R, b));
    EXPECT_EQ(multiset_signature(g, R, a).counts, v.witness_signature);
  }
}

TEST(VerifyResolving, CycleSixWithThreeSensors) {
  const auto g = families::cycle(6);
  const std::vector<Vertex> R{0, 1, 3};
  // Signatures by hand: 0:(1,1,0,1) 1:(1,1,1,0) 2:(0,2,1,0) 3:(1,0,1,1) 4:(0,1,1,1) 5:(0,1,2,0).
  const Counts expected[] = {{1, 1, 0, 1}, {1, 1, 1, 0}, {0, 2, 1, 0}, {1, 0, 1, 1}, {0, 1, 1, 1}, {0, 1, 2, 0}};
  for (Vertex v = 0; v < 6; ++v) EXPECT_EQ(multiset_signature(g, R, v).counts, expected[v]);
  EXPECT_TRUE(verify_resolving(g, R, ResolvingKind::multiset).resolving);
}

TEST(VerifyResolving, OuterIgnoresPairsInsideR) {
  // K_4 with R = three vertices: the only vertex outside R is trivially distinguished.
  const auto g = families::complete(4);
  const std::vector<Vertex> R{0, 1, 2};
  EXPECT_TRUE(verify_resolving(g, R, ResolvingKind::outer_multiset).resolving);
  EXPECT_FALSE(verify_resolving(g, R, ResolvingKind::multiset).resolving);
  EXPECT_TRUE(verify_resolving(g, R, ResolvingKind::metric).resolving);
}

TEST(VerifyResolving, WitnessIsFirstCollisionInScanOrder) {
  // Star K_{1,3}, R = {0}: leaves 1,2,3 all read (0,1,0); first pair is (1,2).
  const auto v = verify_resolving(families::star(3), std::vector<Vertex>{0}, ResolvingKind::multiset);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(*v.witness, (std::pair<Vertex, Vertex>{1, 2}));
}

TEST(Embedding, MultisetDimensionIsDiameterPlusOne) {
  const auto emb = embed_multiset(families::path(3), std::vector<Vertex>{0});
  EXPECT_EQ(emb.cols, 3u);
  const std::vector<double> expected{1, 0, 0, 0, 1, 0, 0, 0, 1};
  EXPECT_EQ(emb.data, expected);
  const auto c6 = embed_multiset(families::cycle(6), std::vector<Vertex>{0, 1, 3});
  EXPECT_EQ(c6.cols, 4u);
  for (Vertex v = 0; v < 6; ++v)
    for (Vertex w = v + 1; w < 6; ++w) {
      const auto a = c6.row(v);
      const auto b = c6.row(w);
      EXPECT_FALSE(std::equal(a.begin(), a.end(), b.begin()));
    }
}

TEST(Embedding, MetricRowsAndDistortion) {
  const auto emb = embed_metric(families::path(4), std::vector<Vertex>{0, 3});
  EXPECT_EQ(emb.cols, 2u);
  const std::vector<double> expected{0, 3, 1, 2, 2, 1, 3, 0};
  EXPECT_EQ(emb.data, expected);
  EXPECT_EQ(emb.distortion.pairs, 6u);
  // Worst pair is (0,3): 3 sqrt 2 against graph distance 3.
  EXPECT_NEAR(emb.distortion.max_abs, 3.0 * std::sqrt(2.0) - 3.0, 1e-12);
  EXPECT_EQ(emb.distortion.worst, (std::pair<Vertex, Vertex>{0, 3}));
}

TEST(Embedding, SingleSensorIsExactOnPairsThroughIt) {
  const auto g = families::petersen();
  const auto emb = embed_metric(g, std::vector<Vertex>{4});
  const DistanceMatrix dm(g);
  for (Vertex w = 0; w < g.order(); ++w) EXPECT_DOUBLE_EQ(std::fabs(emb.row(4)[0] - emb.row(w)[0]), dm(4, w));
}

TEST(Embedding, DisconnectedRejected) {
  EXPECT_THROW(embed_multiset(families::empty(3), std::vector<Vertex>{0}), DisconnectedGraphError);
  EXPECT_THROW(embed_metric(families::empty(3), std::vector<Vertex>{0}), DisconnectedGraphError);
}

class SignatureProperties : public ::testing::Test {
 protected:
  std::mt19937 rng{7};

  std::vector<Vertex> random_subset(std::size_t n) {
    std::vector<Vertex> R;
    std::bernoulli_distribution coin(0.4);
    while (R.empty()) {
      for (Vertex v = 0; v < n; ++v)
        if (coin(rng)) R.push_back(v);
    }
    return R;
  }
};

TEST_F(SignatureProperties, CountsSumToSensorCount) {
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = oracle::random_graph(2 + trial % 12, 0.3, rng);
    const auto R = random_subset(g.order());
    const auto table = multiset_signatures(g, R, {std::nullopt, 1u + trial % 3});
    for (Vertex v = 0; v < g.order(); ++v) {
      const auto row = table.row(v);
      EXPECT_EQ(std::accumulate(row.begin(), row.end(), 0u), R.size());
      EXPECT_LE(row[0], 1u);
      EXPECT_EQ(row[0], std::count(R.begin(), R.end(), v) ? 1u : 0u);
    }
  }
}

TEST_F(SignatureProperties, ChainOfResolvingNotions) {
  for (int trial = 0; trial < 500; ++trial) {
    const auto g = oracle::random_graph(2 + trial % 11, 0.35, rng);
    const auto R = random_subset(g.order());
    const bool ms = verify_resolving(g, R, ResolvingKind::multiset).resolving;
    const bool out = verify_resolving(g, R, ResolvingKind::outer_multiset).resolving;
    const bool met = verify_resolving(g, R, ResolvingKind::metric).resolving;
    if (ms) {
      EXPECT_TRUE(out);
    }
    if (out) {
      EXPECT_TRUE(met);
    }
  }
}

TEST_F(SignatureProperties, AgreesWithNaiveComparison) {
  for (int trial = 0; trial < 600; ++trial) {
    const auto g = oracle::random_graph(2 + trial % 11, trial % 2 ? 0.3 : 0.5, rng);
    const auto R = random_subset(g.order());
    EXPECT_EQ(verify_resolving(g, R, ResolvingKind::multiset).resolving,
              oracle::resolves_naive(g, R, oracle::Kind::multiset));
    EXPECT_EQ(verify_resolving(g, R, ResolvingKind::outer_multiset).resolving,
              oracle::resolves_naive(g, R, oracle::Kind::outer));
    EXPECT_EQ(verify_resolving(g, R, ResolvingKind::metric).resolving,
              oracle::resolves_naive(g, R, oracle::Kind::metric));
    EXPECT_EQ(confirm_multiset_resolving(g, R), oracle::resolves_naive(g, R, oracle::Kind::multiset));
  }
}

TEST_F(SignatureProperties, PermutingRIsInvisibleToMultisetSignatures) {
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_connected_graph(3 + trial % 9, 0.4, rng);
    auto R = random_subset(g.order());
    auto shuffled = R;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (Vertex v = 0; v < g.order(); ++v) {
      EXPECT_EQ(multiset_signature(g, R, v), multiset_signature(g, shuffled, v));
      const auto s = metric_signature(g, R, v);
      const auto t = metric_signature(g, shuffled, v);
      for (std::size_t i = 0; i < R.size(); ++i) {
        const auto j = std::find(shuffled.begin(), shuffled.end(), R[i]) - shuffled.begin();
        EXPECT_EQ(s.dists[i], t.dists[j]);
      }
    }
  }
}

TEST_F(SignatureProperties, WitnessesBalanceAcrossEachLevel) {
  // For colliding v, w: |S_i^R(v) \ S_i(w)| == |S_i^R(w) \ S_i(v)| at every i.
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto g = oracle::random_connected_graph(4 + trial % 9, 0.35, rng);
    const auto R = random_subset(g.order());
    const auto verdict = verify_resolving(g, R, ResolvingKind::multiset);
    if (!verdict.witness) continue;
    const auto [v, w] = *verdict.witness;
    const DistanceMatrix dm(g);
    for (Dist i = 0; i <= dm.diameter(); ++i) {
      int only_v = 0;
      int only_w = 0;
      for (Vertex r : R) {
        if (dm(v, r) == i && dm(w, r) != i) ++only_v;
        if (dm(w, r) == i && dm(v, r) != i) ++only_w;
      }
      EXPECT_EQ(only_v, only_w);
    }
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(VerifyResolving, ThreadCountDoesNotChangeVerdict) {
  std::mt19937 rng(3);
  const auto g = oracle::random_connected_graph(60, 0.1, rng);
  std::vector<Vertex> R;
  for (Vertex v = 0; v < 60; v += 3) R.push_back(v);
  const auto a = verify_resolving(g, R, ResolvingKind::multiset, {std::nullopt, 1});
  const auto b = verify_resolving(g, R, ResolvingKind::multiset, {std::nullopt, 8});
  EXPECT_EQ(a.resolving, b.resolving);
  EXPECT_EQ(a.witness, b.witness);
}

}  // namespace
}  // namespace msmd
