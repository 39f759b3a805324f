#include <gtest/gtest.h>

#include "cminer/clusterer.hpp"
#include "cminer/metrics.hpp"
#include "cminer/serial_reference.hpp"
#include "support/generators.hpp"

// The OpenMP kernels must agree exactly with their serial references.

namespace cminer {
namespace {

using testing::Rng;

const DSStrategy kAll[] = {DSStrategy::raw_out, DSStrategy::symmetric_sum,
                           DSStrategy::normalized_symmetric, DSStrategy::jaccard};

TEST(Kernels, ComputeDsMatchesSerial) {
  Rng rng(2024);
  for (int round = 0; round < 40; ++round) {
    const auto g = testing::random_graph(rng, {.min_elements = 1, .max_elements = 60,
                                               .edge_probability = 0.15, .max_weight = 20});
    for (auto s : kAll) EXPECT_EQ(compute_ds(g, s), serial::compute_ds(g, s));
  }
}

TEST(Kernels, SweepMatchesSerial) {
  Rng rng(2025);
  for (int round = 0; round < 20; ++round) {
    const auto g = testing::random_graph(rng, {.min_elements = 5, .max_elements = 40,
                                               .edge_probability = 0.1, .max_weight = 30});
    const auto m = compute_ds(g);
    EXPECT_EQ(sweep(m), serial::sweep(m));
  }
}

TEST(Kernels, ExhaustiveSplitMatchesSerial) {
  Rng rng(2026);
  for (int round = 0; round < 10; ++round) {
    const auto g = testing::random_graph(rng, {.min_elements = 2, .max_elements = kExhaustiveSplitLimit,
                                               .edge_probability = 0.3, .max_weight = 4});
    Component c{"K", {}};
    for (const auto& e : g.elements()) c.members.push_back(e.id);
    if (c.members.size() < 2) continue;
    EXPECT_EQ(split_component(c, g), serial::split_exhaustive(c, g));
  }
}

}  // namespace
}  // namespace cminer
