#pragma once

// Single-threaded reference versions of the OpenMP kernels. They follow the
// textbook definitions as literally as possible and are what the parallel
// kernels are tested and benchmarked against.

#include <vector>

#include "cminer/clusterer.hpp"
#include "cminer/ds.hpp"
#include "cminer/metrics.hpp"

namespace cminer::serial {

DSMatrix compute_ds(const DependencyGraph& graph, DSStrategy strategy);

// One independent cluster() call per threshold, in descending order.
std::vector<Clustering> sweep(const DSMatrix& matrix);

// Exhaustive minimum-cut bipartition, any member count the caller can afford.
SplitResult split_exhaustive(const Component& component, const DependencyGraph& graph);

}  // namespace cminer::serial
