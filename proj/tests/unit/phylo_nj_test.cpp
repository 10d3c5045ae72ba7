#include "bioperf/phylo_nj.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "bioperf/error.hpp"
#include "tree_oracle.hpp"

namespace bioperf {
namespace {

using testing::OracleTree;

// Built from ((A:2,B:3):3,(C:4,D:5)).
DistanceMatrix four_taxa() {
  return DistanceMatrix({"A", "B", "C", "D"}, {{0, 5, 9, 10}, {5, 0, 10, 11}, {9, 10, 0, 9},
                                               {10, 11, 9, 0}});
}

OracleTree four_taxa_oracle() {
  // Leaves 0..3 = A..D, node 4 joins A/B, node 5 joins C/D.
  OracleTree t;
  t.leaves = 4;
  t.nodes = 6;
  t.edges = {{0, 4, 2}, {1, 4, 3}, {2, 5, 4}, {3, 5, 5}, {4, 5, 3}};
  return t;
}

std::set<testing::Split> splits(const PhyloTree& t) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : t.edges()) edges.emplace_back(e.a, e.b);
  std::string anchor;
  for (NodeId n : t.leaves()) {
    if (anchor.empty() || t.nodes()[n].name < anchor) anchor = t.nodes()[n].name;
  }
  return testing::splits_of(
      t.nodes().size(), edges,
      [&](std::size_t n) { return t.nodes()[n].leaf ? t.nodes()[n].name : std::string(); }, anchor);
}

std::set<testing::Split> splits(const OracleTree& t) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : t.edges) edges.emplace_back(e.a, e.b);
  return testing::splits_of(
      t.nodes, edges,
      [&](std::size_t n) { return n < t.leaves ? testing::taxon_name(n) : std::string(); },
      testing::taxon_name(0));
}

DistanceMatrix matrix_of(const OracleTree& t) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < t.leaves; ++i) labels.push_back(testing::taxon_name(i));
  auto d = testing::leaf_distances(t);
  // Exact symmetry for the validator.
  for (std::size_t a = 0; a < t.leaves; ++a) {
    for (std::size_t b = 0; b < a; ++b) d[a][b] = d[b][a];
  }
  return DistanceMatrix(labels, d);
}

TEST(DistanceMatrix, Validation) {
  EXPECT_THROW(DistanceMatrix({"A"}, {{0}}), ValidationError);
  EXPECT_THROW(DistanceMatrix({"A", "B"}, {{0, 1}, {2, 0}}), ValidationError);
  EXPECT_THROW(DistanceMatrix({"A", "B"}, {{-1, 1}, {1, 0}}), ValidationError);
  EXPECT_THROW(DistanceMatrix({"A", "B"}, {{0, -1}, {-1, 0}}), ValidationError);
  EXPECT_THROW(DistanceMatrix({"A", "A"}, {{0, 1}, {1, 0}}), ValidationError);
  EXPECT_THROW(DistanceMatrix({"A", "B"}, {{0, 1}, {1}}), ValidationError);
  EXPECT_NO_THROW(DistanceMatrix({"A", "B"}, {{0, 1}, {1, 0}}));
}

TEST(NetDivergence, HandSums) {
  const DistanceMatrix d({"x", "y", "z"}, {{0, 5, 9}, {5, 0, 10}, {9, 10, 0}});
  EXPECT_EQ(net_divergence(d, 0), 14.0);
  EXPECT_EQ(net_divergence(DistanceMatrix({"a", "b"}, {{0, 7}, {7, 0}}), 0), 7.0);
  EXPECT_EQ(net_divergence(four_taxa(), 0), 24.0);
  EXPECT_THROW(net_divergence(d, 3), std::out_of_range);
}

TEST(NetDivergence, SumCountsEachDistanceTwice) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = matrix_of(testing::random_binary_tree(3 + trial % 6, rng));
    double total = 0.0;
    double pairs = 0.0;
    for (std::size_t a = 0; a < m.size(); ++a) {
      total += net_divergence(m, a);
      for (std::size_t b = a + 1; b < m.size(); ++b) pairs += m(a, b);
    }
    EXPECT_NEAR(total, 2.0 * pairs, 1e-9 * total);
  }
}

TEST(NjBuild, FourTaxaOracleIsAdditive) {
  // The fixture matrix really is the path-length matrix of the stated tree.
  const auto d = testing::leaf_distances(four_taxa_oracle());
  const auto m = four_taxa();
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) EXPECT_EQ(d[a][b], m(a, b));
  }
}

TEST(NjBuild, FourTaxaRecoversTree) {
  const PhyloTree t = nj_build(four_taxa());
  ASSERT_EQ(t.edges().size(), 5u);
  EXPECT_FALSE(t.clamped_negative);
  EXPECT_EQ(splits(t), (std::set<testing::Split>{{"C", "D"}}));

  auto leaf_branch = [&](const std::string& name) {
    const auto inc = t.incident(t.leaf_id(name));
    EXPECT_EQ(inc.size(), 1u);
    return t.edges()[inc.front()].length;
  };
  EXPECT_NEAR(leaf_branch("A"), 2.0, 1e-12);
  EXPECT_NEAR(leaf_branch("B"), 3.0, 1e-12);
  EXPECT_NEAR(leaf_branch("C"), 4.0, 1e-12);
  EXPECT_NEAR(leaf_branch("D"), 5.0, 1e-12);
  for (const auto& e : t.edges()) {
    if (!t.nodes()[e.a].leaf && !t.nodes()[e.b].leaf) EXPECT_NEAR(e.length, 3.0, 1e-12);
  }
}

TEST(NjBuild, TwoTaxaSingleEdge) {
  const PhyloTree t = nj_build(DistanceMatrix({"a", "b"}, {{0, 7}, {7, 0}}));
  ASSERT_EQ(t.edges().size(), 1u);
  EXPECT_EQ(t.edges()[0].length, 7.0);
  EXPECT_EQ(t.nodes().size(), 2u);
}

TEST(NjBuild, ThreeTaxaStarSolvesThreePointEquations) {
  // a + b = 5, a + c = 9, b + c = 10  =>  a = 2, b = 3, c = 7.
  const PhyloTree t = nj_build(DistanceMatrix({"x", "y", "z"}, {{0, 5, 9}, {5, 0, 10}, {9, 10, 0}}));
  ASSERT_EQ(t.nodes().size(), 4u);
  ASSERT_EQ(t.edges().size(), 3u);
  const NodeId center = 3;
  EXPECT_FALSE(t.nodes()[center].leaf);
  const double expected[] = {2, 3, 7};
  for (NodeId leaf = 0; leaf < 3; ++leaf) {
    const auto inc = t.incident(leaf);
    ASSERT_EQ(inc.size(), 1u);
    const auto& e = t.edges()[inc.front()];
    EXPECT_TRUE(e.a == center || e.b == center);
    EXPECT_NEAR(e.length, expected[leaf], 1e-12);
  }
}

TEST(NjBuild, ClampsNegativeBranchOntoSibling) {
  // First join is (A, D) with raw lengths -0.25 / 5.25, clamped to 0 / 5.
  const DistanceMatrix d({"A", "B", "C", "D"},
                         {{0, 3, 2, 5}, {3, 0, 2, 8}, {2, 2, 0, 8}, {5, 8, 8, 0}});
  const PhyloTree t = nj_build(d);
  EXPECT_TRUE(t.clamped_negative);
  ASSERT_GE(t.edges().size(), 2u);
  EXPECT_EQ(t.nodes()[t.edges()[0].a].name, "A");
  EXPECT_EQ(t.edges()[0].length, 0.0);
  EXPECT_EQ(t.nodes()[t.edges()[1].a].name, "D");
  EXPECT_DOUBLE_EQ(t.edges()[1].length, 5.0);
  for (const auto& e : t.edges()) EXPECT_GE(e.length, 0.0);
}

TEST(NjBuild, ClampsNegativeFinalEdge) {
  // Triangle inequality violated: the last edge would be -4.
  const PhyloTree t = nj_build(DistanceMatrix({"A", "B", "C"}, {{0, 10, 1}, {10, 0, 1}, {1, 1, 0}}));
  EXPECT_TRUE(t.clamped_negative);
  for (const auto& e : t.edges()) EXPECT_GE(e.length, 0.0);
}

TEST(NjBuild, TieBreaksOnLowestPair) {
  // Equidistant taxa: every pair ties, so (A, B) joins first.
  const PhyloTree t =
      nj_build(DistanceMatrix({"A", "B", "C", "D"},
                              {{0, 2, 2, 2}, {2, 0, 2, 2}, {2, 2, 0, 2}, {2, 2, 2, 0}}));
  EXPECT_EQ(t.nodes()[t.edges()[0].a].name, "A");
  EXPECT_EQ(t.nodes()[t.edges()[1].a].name, "B");
}

TEST(NjBuild, StructureOnArbitraryMatrices) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> w(0.0, 20.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + trial % 7;
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < n; ++a) {
      labels.push_back(testing::taxon_name(a));
      for (std::size_t b = a + 1; b < n; ++b) d[a][b] = d[b][a] = w(rng);
    }
    const PhyloTree t = nj_build(DistanceMatrix(labels, d));
    EXPECT_EQ(t.edges().size(), 2 * n - 3);
    EXPECT_EQ(t.nodes().size() - n, n - 2);
    for (const auto& e : t.edges()) EXPECT_GE(e.length, 0.0);
    for (NodeId leaf : t.leaves()) EXPECT_EQ(t.incident(leaf).size(), 1u);
    for (NodeId i = 0; i < t.nodes().size(); ++i) {
      if (!t.nodes()[i].leaf) EXPECT_EQ(t.incident(i).size(), 3u);
    }
    // Connected: every leaf reaches leaf 0.
    for (const auto& name : labels) EXPECT_NO_THROW(paths_between_leaves(t, labels[0], name));
  }
}

TEST(NjBuild, RecoversRandomAdditiveTrees) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 4 + trial % 5;
    const OracleTree truth = testing::random_binary_tree(n, rng);
    const DistanceMatrix d = matrix_of(truth);
    const PhyloTree t = nj_build(d);
    ASSERT_EQ(splits(t), splits(truth)) << "trial " << trial;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        EXPECT_NEAR(path_length(t, d.labels()[a], d.labels()[b]), d(a, b), 1e-9);
      }
    }
  }
}

TEST(NjBuild, PermutationInvariant) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 4 + trial % 5;
    const DistanceMatrix d = matrix_of(testing::random_binary_tree(n, rng));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (std::size_t a = 0; a < n; ++a) {
      labels.push_back(d.labels()[perm[a]]);
      for (std::size_t b = 0; b < n; ++b) rows[a][b] = d(perm[a], perm[b]);
    }
    const PhyloTree original = nj_build(d);
    const PhyloTree shuffled = nj_build(DistanceMatrix(labels, rows));
    EXPECT_EQ(splits(original), splits(shuffled));
    for (const auto& x : d.labels()) {
      for (const auto& y : d.labels()) {
        EXPECT_NEAR(path_length(original, x, y), path_length(shuffled, x, y), 1e-9);
      }
    }
  }
}

TEST(PathsBetweenLeaves, SingleEdge) {
  const PhyloTree t = nj_build(DistanceMatrix({"a", "b"}, {{0, 7}, {7, 0}}));
  EXPECT_EQ(paths_between_leaves(t, "a", "b"), std::vector<std::size_t>{0});
  EXPECT_TRUE(paths_between_leaves(t, "a", "a").empty());
}

TEST(PathsBetweenLeaves, FourTaxaWalkOrder) {
  const PhyloTree t = nj_build(four_taxa());
  const auto path = paths_between_leaves(t, "A", "C");
  ASSERT_EQ(path.size(), 3u);
  const auto& first = t.edges()[path[0]];
  const auto& middle = t.edges()[path[1]];
  const auto& last = t.edges()[path[2]];
  EXPECT_TRUE(first.a == t.leaf_id("A") || first.b == t.leaf_id("A"));
  EXPECT_NEAR(first.length, 2.0, 1e-12);
  EXPECT_NEAR(middle.length, 3.0, 1e-12);
  EXPECT_TRUE(last.a == t.leaf_id("C") || last.b == t.leaf_id("C"));
  EXPECT_NEAR(last.length, 4.0, 1e-12);
  EXPECT_THROW(paths_between_leaves(t, "A", "Z"), ValidationError);
  EXPECT_THROW(paths_between_leaves(t, "HTU1", "A"), ValidationError);
}

TEST(MidpointRoot, FourTaxa) {
  const PhyloTree t = nj_build(four_taxa());
  const PhyloTree rooted = midpoint_root(t);
  ASSERT_TRUE(rooted.root);
  EXPECT_EQ(rooted.nodes()[*rooted.root].name, "root");
  EXPECT_EQ(rooted.edges().size(), t.edges().size() + 1);
  // The longest leaf path is B-D (11); the root sits 5.5 from both ends.
  double to_b = 0.0;
  double to_d = 0.0;
  for (std::size_t e = 0; e < rooted.edges().size(); ++e) {
    const auto& edge = rooted.edges()[e];
    if (edge.a == *rooted.root || edge.b == *rooted.root) {
      (edge.length > 1.0 ? to_b : to_d) = edge.length;
    }
  }
  EXPECT_NEAR(to_b, 2.5, 1e-12);
  EXPECT_NEAR(to_d, 0.5, 1e-12);
  for (const auto& x : {"A", "B", "C", "D"}) {
    for (const auto& y : {"A", "B", "C", "D"}) {
      EXPECT_NEAR(path_length(rooted, x, y), path_length(t, x, y), 1e-12);
    }
  }
}

TEST(MidpointRoot, SingleEdgeSplitsInHalf) {
  const PhyloTree rooted = midpoint_root(nj_build(DistanceMatrix({"a", "b"}, {{0, 7}, {7, 0}})));
  ASSERT_EQ(rooted.edges().size(), 2u);
  EXPECT_EQ(rooted.edges()[0].length, 3.5);
  EXPECT_EQ(rooted.edges()[1].length, 3.5);
}

}  // namespace
}  // namespace bioperf
