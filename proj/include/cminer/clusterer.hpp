#pragma once

#include <span>
#include <string>
#include <vector>

#include "cminer/component.hpp"
#include "cminer/ds.hpp"
#include "cminer/graph.hpp"

namespace cminer {

/// Partition of the matrix elements obtained at one threshold.
///
/// Members are sorted by id and clusters are ordered by their smallest
/// member, so equal partitions compare equal.
struct Clustering {
  double f_min = 0.0;
  std::vector<std::vector<ElementId>> clusters;
  DSStrategy strategy = kDefaultStrategy;

  friend bool operator==(const Clustering&, const Clustering&) = default;
};

/// Threshold merge with transitive closure: two elements share a cluster iff
/// they are connected through pairs whose clustering value is >= f_min.
/// Throws ValidationError for a negative (or NaN) f_min.
Clustering cluster(const DSMatrix& matrix, double f_min);

/// One clustering per distinct positive matrix value plus a leading
/// all-singletons entry just above the maximum, in descending f_min order.
/// Thresholds are clustered concurrently (OpenMP).
std::vector<Clustering> sweep(const DSMatrix& matrix);

/// Throws InvariantError unless `clustering` partitions `universe` exactly
/// and is in canonical order.
void assert_partition(const Clustering& clustering, std::span<const ElementId> universe);

/// One component per cluster. A cluster is named after the most common
/// container label among its members; clusters with no labels or a tied vote
/// fall back to "C<k>" (k = 1-based cluster position). Repeated names get a
/// "#2", "#3", ... suffix in cluster order.
ComponentSet map_to_components(const Clustering& clustering, const DependencyGraph& graph);

// {"f_min":..,"strategy":..,"clusters":[[ids]]}
std::string to_clustering_json(const Clustering& clustering);

}  // namespace cminer
