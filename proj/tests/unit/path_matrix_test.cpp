#include "bioperf/path_matrix.hpp"

#include <gtest/gtest.h>

#include <random>

#include "bioperf/error.hpp"

namespace bioperf {
namespace {

// Star over four leaves with links created as L1 = A, L2 = C, L3 = D, L4 = B,
// so the A-B path uses exactly L1 and L4.
PhyloTree table3_tree() {
  PhyloTree t;
  const auto a = t.add_node("A", true);
  const auto b = t.add_node("B", true);
  const auto c = t.add_node("C", true);
  const auto d = t.add_node("D", true);
  const auto hub = t.add_node("HTU1", false);
  t.add_edge(a, hub, 1);
  t.add_edge(c, hub, 1);
  t.add_edge(d, hub, 1);
  t.add_edge(b, hub, 1);
  return t;
}

IncidenceMatrix table3() { return build_incidence(table3_tree(), {{"A", "B"}}); }

IncidenceMatrix random_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> dim(0, 7);
  std::bernoulli_distribution bit(0.4);
  const std::size_t rows = dim(rng);
  const std::size_t cols = dim(rng);
  std::vector<std::string> rl, cl;
  for (std::size_t i = 0; i < rows; ++i) rl.push_back("L" + std::to_string(i + 1));
  for (std::size_t j = 0; j < cols; ++j) cl.push_back("P" + std::to_string(j + 1));
  std::vector<std::vector<std::uint8_t>> e(rows, std::vector<std::uint8_t>(cols));
  for (auto& row : e) {
    for (auto& x : row) x = bit(rng) ? 1 : 0;
  }
  return IncidenceMatrix(rl, cl, e);
}

TEST(Incidence, Table3Column) {
  const auto r = table3();
  EXPECT_EQ(r.row_labels(), (std::vector<std::string>{"L1", "L2", "L3", "L4"}));
  EXPECT_EQ(r.column_labels(), std::vector<std::string>{"P1"});
  EXPECT_EQ(r.entries(), (std::vector<std::vector<std::uint8_t>>{{1}, {0}, {0}, {1}}));
  EXPECT_EQ(to_csv(r), "R,P1\nL1,1\nL2,0\nL3,0\nL4,1\n");
}

TEST(Incidence, Table3Transpose) {
  const auto t = transpose(table3());
  EXPECT_EQ(t.row_labels(), std::vector<std::string>{"P1"});
  EXPECT_EQ(t.entries(), (std::vector<std::vector<std::uint8_t>>{{1, 0, 0, 1}}));
  EXPECT_EQ(to_csv(t, "R^T"), "R^T,L1,L2,L3,L4\nP1,1,0,0,1\n");
}

TEST(Incidence, Table3RangeDomainRobustness) {
  const auto r = table3();
  EXPECT_EQ(range_of(r), std::set<std::string>{"P1"});
  EXPECT_EQ(domain_of(r), (std::set<std::string>{"L1", "L4"}));
  EXPECT_EQ(robustness(r, "L1", "P1"), 1);
  EXPECT_EQ(robustness(r, "L2", "P1"), 0);
  EXPECT_THROW(robustness(r, "L9", "P1"), ValidationError);
  EXPECT_THROW(robustness(r, "L1", "P2"), ValidationError);
}

TEST(Incidence, EdgeCases) {
  const auto empty = build_incidence(table3_tree(), {});
  EXPECT_EQ(empty.row_count(), 4u);
  EXPECT_EQ(empty.column_count(), 0u);
  EXPECT_TRUE(range_of(empty).empty());
  EXPECT_TRUE(domain_of(empty).empty());

  const auto self = build_incidence(table3_tree(), {{"C", "C"}});
  for (std::size_t i = 0; i < self.row_count(); ++i) EXPECT_EQ(self.at(i, 0), 0);
  EXPECT_TRUE(range_of(self).empty());

  EXPECT_THROW(build_incidence(table3_tree(), {{"A", "Z"}}), ValidationError);
}

TEST(Incidence, ColumnOnesMatchPathEdges) {
  const PhyloTree t = nj_build(DistanceMatrix(
      {"A", "B", "C", "D", "E"}, {{0, 5, 9, 9, 8}, {5, 0, 10, 10, 9}, {9, 10, 0, 8, 7},
                                  {9, 10, 8, 0, 3}, {8, 9, 7, 3, 0}}));
  const auto pairs = all_leaf_pairs(t);
  EXPECT_EQ(pairs.size(), 10u);
  EXPECT_EQ(pairs.front(), (LeafPair{"A", "B"}));
  EXPECT_EQ(pairs.back(), (LeafPair{"D", "E"}));
  const auto r = build_incidence(t, pairs);
  EXPECT_EQ(r.row_count(), t.edges().size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto path = paths_between_leaves(t, pairs[p].first, pairs[p].second);
    std::size_t ones = 0;
    for (std::size_t l = 0; l < r.row_count(); ++l) ones += r.at(l, p);
    EXPECT_EQ(ones, path.size());
    for (std::size_t e : path) EXPECT_EQ(r.at(e, p), 1);
  }
  // Every link of a tree lies on some leaf-to-leaf path.
  EXPECT_EQ(domain_of(r).size(), t.edges().size());
}

TEST(Incidence, RandomInvolutionAndDuality) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto m = random_matrix(rng);
    const auto t = transpose(m);
    ASSERT_EQ(transpose(t), m);
    ASSERT_EQ(range_of(m), domain_of(t));
    ASSERT_EQ(domain_of(m), range_of(t));
    for (std::size_t i = 0; i < m.row_count(); ++i) {
      for (std::size_t j = 0; j < m.column_count(); ++j) ASSERT_EQ(m.at(i, j), t.at(j, i));
    }
  }
}

TEST(Incidence, Validation) {
  EXPECT_THROW(IncidenceMatrix({"L1"}, {"P1"}, {{2}}), ValidationError);
  EXPECT_THROW(IncidenceMatrix({"L1"}, {"P1", "P2"}, {{1}}), ValidationError);
  EXPECT_THROW(IncidenceMatrix({"L1", "L2"}, {"P1"}, {{1}}), ValidationError);
  EXPECT_NO_THROW(IncidenceMatrix({"L1"}, {"P1"}, {{0}}));
}

}  // namespace
}  // namespace bioperf
