#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cminer/graph.hpp"

namespace cminer {

// How the dependency strength between two elements is derived from the
// invocation graph. The clustering threshold is interpreted in the units of
// the chosen strategy.
//
//   raw_out               F_ij = w(i->j), asymmetric
//   symmetric_sum         F_ij = w(i->j) + w(j->i)
//   normalized_symmetric  symmetric_sum / max symmetric_sum, in [0, 1]
//   jaccard               |nb(i) & nb(j)| / |nb(i) | nb(j)| on undirected
//                         neighbour sets, 0 when the union is empty
enum class DSStrategy { raw_out, symmetric_sum, normalized_symmetric, jaccard };

inline constexpr DSStrategy kDefaultStrategy = DSStrategy::normalized_symmetric;

std::string_view to_string(DSStrategy strategy);
DSStrategy parse_strategy(std::string_view name);
bool is_symmetric(DSStrategy strategy);

/// Dense n x n dependency-strength matrix, row-major, indexed in `order()`.
class DSMatrix {
 public:
  /// Validates the invariants for `strategy`: zero diagonal, finite
  /// non-negative values, symmetry for symmetric strategies and the [0, 1]
  /// range for normalized_symmetric and jaccard. Throws ValidationError.
  DSMatrix(std::vector<ElementId> order, std::vector<double> values, DSStrategy strategy);

  std::size_t size() const noexcept { return order_.size(); }
  std::span<const ElementId> order() const noexcept { return order_; }
  std::span<const double> values() const noexcept { return values_; }
  DSStrategy strategy() const noexcept { return strategy_; }

  double at(std::size_t i, std::size_t j) const { return values_[i * order_.size() + j]; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values_).subspan(i * order_.size(), order_.size());
  }

  /// Value the clusterer compares against F_min: the matrix entry itself for
  /// symmetric strategies, max(F_ij, F_ji) for raw_out.
  double clustering_value(std::size_t i, std::size_t j) const {
    const double a = at(i, j);
    if (strategy_ != DSStrategy::raw_out) return a;
    const double b = at(j, i);
    return a < b ? b : a;
  }

  friend bool operator==(const DSMatrix&, const DSMatrix&) = default;

 private:
  std::vector<ElementId> order_;
  std::vector<double> values_;
  DSStrategy strategy_;
};

/// Rows are computed in parallel (OpenMP); the result is bit-identical to
/// serial::compute_ds.
DSMatrix compute_ds(const DependencyGraph& graph, DSStrategy strategy = kDefaultStrategy);

/// Strictly increasing list of the distinct positive off-diagonal values.
std::vector<double> distinct_thresholds(const DSMatrix& matrix);

/// Header row of element ids, then the full square matrix, 9 significant digits.
std::string to_matrix_csv(const DSMatrix& matrix);

}  // namespace cminer
