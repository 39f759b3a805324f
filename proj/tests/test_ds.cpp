#include <gtest/gtest.h>

#include "cminer/ds.hpp"
#include "cminer/error.hpp"
#include "cminer/serial_reference.hpp"
#include "support/generators.hpp"

namespace cminer {
namespace {

using testing::Rng;

DependencyGraph abc_graph(Weight ab, Weight ba, Weight ac) {
  GraphBuilder b(/*implicit_elements=*/true);
  b.touch_element(ElementId("A"));
  b.touch_element(ElementId("B"));
  b.touch_element(ElementId("C"));
  if (ab) b.add_edge(ElementId("A"), ElementId("B"), ab);
  if (ba) b.add_edge(ElementId("B"), ElementId("A"), ba);
  if (ac) b.add_edge(ElementId("A"), ElementId("C"), ac);
  return std::move(b).build();
}

TEST(ComputeDs, SingleElementIsZero) {
  GraphBuilder b;
  b.add_element({ElementId("A"), std::nullopt, {}});
  for (auto s : {DSStrategy::raw_out, DSStrategy::symmetric_sum, DSStrategy::normalized_symmetric,
                 DSStrategy::jaccard}) {
    const auto m = compute_ds(GraphBuilder(b).build(), s);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m.at(0, 0), 0.0);
  }
}

TEST(ComputeDs, SymmetricSumAddsBothDirections) {
  const auto m = compute_ds(abc_graph(3, 1, 0), DSStrategy::symmetric_sum);
  EXPECT_EQ(m.at(0, 1), 4.0);
  EXPECT_EQ(m.at(1, 0), 4.0);
}

TEST(ComputeDs, NormalizedDividesByLargestPair) {
  // symmetric sums {AB: 4, AC: 2, BC: 0} over max 4
  const auto m = compute_ds(abc_graph(3, 1, 2), DSStrategy::normalized_symmetric);
  EXPECT_EQ(m.at(0, 1), 1.0);
  EXPECT_EQ(m.at(0, 2), 0.5);
  EXPECT_EQ(m.at(1, 2), 0.0);
  EXPECT_EQ(m.strategy(), DSStrategy::normalized_symmetric);
}

TEST(ComputeDs, RawOutIsTheAdjacencyFunction) {
  Rng rng(21);
  for (int round = 0; round < 20; ++round) {
    const auto g = testing::random_graph(rng);
    const auto m = compute_ds(g, DSStrategy::raw_out);
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        EXPECT_EQ(m.at(i, j), static_cast<double>(g.weight(i, j)));
  }
}

TEST(ComputeDs, JaccardOnNeighbourSets) {
  // nb(A)={B,C}, nb(B)={A}, nb(C)={A}
  const auto m = compute_ds(abc_graph(3, 1, 2), DSStrategy::jaccard);
  EXPECT_EQ(m.at(1, 2), 1.0);        // {A} vs {A}
  EXPECT_EQ(m.at(0, 1), 0.0);        // {B,C} vs {A}
  GraphBuilder b(true);
  b.touch_element(ElementId("X"));
  b.touch_element(ElementId("Y"));
  EXPECT_EQ(compute_ds(std::move(b).build(), DSStrategy::jaccard).at(0, 1), 0.0);
}

TEST(ComputeDs, EdgelessNormalizedIsAllZero) {
  GraphBuilder b(true);
  for (auto id : {"A", "B", "C"}) b.touch_element(ElementId(id));
  const auto m = compute_ds(std::move(b).build(), DSStrategy::normalized_symmetric);
  for (double v : m.values()) EXPECT_EQ(v, 0.0);
}

TEST(ComputeDs, InvariantsOnRandomGraphs) {
  Rng rng(5);
  for (int round = 0; round < 40; ++round) {
    const auto g = testing::random_graph(rng, {.max_elements = 14});
    for (auto s : {DSStrategy::symmetric_sum, DSStrategy::normalized_symmetric, DSStrategy::jaccard}) {
      const auto m = compute_ds(g, s);
      for (std::size_t i = 0; i < m.size(); ++i) {
        EXPECT_EQ(m.at(i, i), 0.0);
        for (std::size_t j = 0; j < m.size(); ++j) {
          EXPECT_EQ(m.at(i, j), m.at(j, i));
          EXPECT_GE(m.at(i, j), 0.0);
          if (s != DSStrategy::symmetric_sum) {
            EXPECT_LE(m.at(i, j), 1.0);
          }
        }
      }
      EXPECT_EQ(compute_ds(g, s), m);  // deterministic
    }
  }
}

TEST(ComputeDs, NormalizedIgnoresUniformScaling) {
  Rng rng(9);
  std::uniform_int_distribution<int> factor(2, 1000);
  for (int round = 0; round < 30; ++round) {
    const auto g = testing::random_graph(rng);
    const Weight k = factor(rng);
    GraphBuilder scaled;
    for (const auto& e : g.elements()) scaled.add_element(e);
    for (const auto& e : g.edges()) scaled.add_edge(g.id(e.source), g.id(e.target), e.weight * k);
    EXPECT_EQ(compute_ds(std::move(scaled).build(), DSStrategy::normalized_symmetric),
              compute_ds(g, DSStrategy::normalized_symmetric));
  }
}

TEST(ComputeDs, MatchesSerialReferenceBitForBit) {
  Rng rng(13);
  for (int round = 0; round < 20; ++round) {
    const auto g = testing::random_graph(rng, {.max_elements = 80, .edge_probability = 0.1});
    for (auto s : {DSStrategy::raw_out, DSStrategy::symmetric_sum, DSStrategy::normalized_symmetric,
                   DSStrategy::jaccard}) {
      EXPECT_EQ(compute_ds(g, s), serial::compute_ds(g, s));
    }
  }
}

TEST(DistinctThresholds, ZeroMatrixHasNone) {
  DSMatrix m({ElementId("a"), ElementId("b")}, {0, 0, 0, 0}, DSStrategy::normalized_symmetric);
  EXPECT_TRUE(distinct_thresholds(m).empty());
}

TEST(DistinctThresholds, DedupedAndSorted) {
  const auto m = compute_ds(abc_graph(3, 1, 2), DSStrategy::normalized_symmetric);
  EXPECT_EQ(distinct_thresholds(m), (std::vector<double>{0.5, 1.0}));
}

TEST(DistinctThresholds, BoundedByPairCount) {
  Rng rng(17);
  for (int round = 0; round < 20; ++round) {
    const auto g = testing::random_graph(rng, {.min_elements = 13, .max_elements = 13,
                                               .edge_probability = 0.8, .max_weight = 1000});
    EXPECT_LE(distinct_thresholds(compute_ds(g)).size(), 13u * 12u / 2u);
  }
}

TEST(DSMatrix, ValidatesInvariants) {
  const std::vector<ElementId> ab{ElementId("a"), ElementId("b")};
  EXPECT_THROW(DSMatrix(ab, {1, 0, 0, 0}, DSStrategy::raw_out), ValidationError);
  EXPECT_THROW(DSMatrix(ab, {0, 0.5, 0.4, 0}, DSStrategy::symmetric_sum), ValidationError);
  EXPECT_THROW(DSMatrix(ab, {0, 2, 2, 0}, DSStrategy::jaccard), ValidationError);
  EXPECT_THROW(DSMatrix(ab, {0, -1, -1, 0}, DSStrategy::symmetric_sum), ValidationError);
  EXPECT_THROW(DSMatrix(ab, {0, 1}, DSStrategy::raw_out), ValidationError);
  EXPECT_THROW(DSMatrix({ElementId("a"), ElementId("a")}, {0, 0, 0, 0}, DSStrategy::raw_out),
               ValidationError);
  EXPECT_NO_THROW(DSMatrix(ab, {0, 5, 2, 0}, DSStrategy::raw_out));
}

TEST(MatrixCsv, HeaderAndNineDigits) {
  DSMatrix m({ElementId("a"), ElementId("b")}, {0, 1.0 / 3.0, 1.0 / 3.0, 0},
             DSStrategy::normalized_symmetric);
  EXPECT_EQ(to_matrix_csv(m), "a,b\n0,0.333333333\n0.333333333,0\n");
}

TEST(Strategy, NamesRoundTrip) {
  for (auto s : {DSStrategy::raw_out, DSStrategy::symmetric_sum, DSStrategy::normalized_symmetric,
                 DSStrategy::jaccard}) {
    EXPECT_EQ(parse_strategy(to_string(s)), s);
  }
  EXPECT_THROW(parse_strategy("cosine"), ValidationError);
}

}  // namespace
}  // namespace cminer
