#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cminer/component.hpp"
#include "cminer/graph.hpp"

namespace cminer {

// weighted: total weight of invocations leaving the component.
// distinct: number of distinct outside elements it invokes.
enum class CbomMode { weighted, distinct };

std::string_view to_string(CbomMode mode);
CbomMode parse_cbom_mode(std::string_view name);

/// Coupling of `component` to the rest of `all`: invocations whose source is
/// a member and whose target is outside it. Throws ValidationError if `all`
/// does not partition the graph, LookupError if `component` is not in `all`.
Weight cbom(const Component& component, const ComponentSet& all, const DependencyGraph& graph,
            CbomMode mode = CbomMode::weighted);

struct CbomEntry {
  std::string name;
  Weight cbom = 0;

  friend bool operator==(const CbomEntry&, const CbomEntry&) = default;
};

/// Name with the largest CBOM, lexicographically smallest on ties.
/// Throws ValidationError on an empty list.
std::string select_reconfigurable_max(std::span<const CbomEntry> entries);

/// Names with CBOM strictly greater than `p`, sorted by name.
std::vector<std::string> select_reconfigurable_threshold(std::span<const CbomEntry> entries,
                                                         Weight p);

struct SelectionRule {
  enum class Kind { max, threshold };
  Kind kind = Kind::max;
  Weight p = 0;  // threshold only

  static SelectionRule max() { return {}; }
  static SelectionRule threshold(Weight p) { return {Kind::threshold, p}; }
};

struct CbomRow {
  std::string name;
  Weight cbom = 0;
  double cohesion = 0.0;
};

struct CbomReport {
  CbomMode mode = CbomMode::weighted;
  std::vector<CbomRow> rows;  // component-set order
  SelectionRule rule;
  std::vector<std::string> reconfigurable;
};

std::vector<CbomEntry> cbom_entries(const ComponentSet& set, const DependencyGraph& graph,
                                    CbomMode mode);
CbomReport cbom_report(const ComponentSet& set, const DependencyGraph& graph, CbomMode mode,
                       SelectionRule rule);
std::vector<std::string> select_reconfigurable(std::span<const CbomEntry> entries,
                                               SelectionRule rule);

/// Internal weight / (internal + outgoing external weight); 0 when nothing
/// touches the component.
double cohesion(const Component& component, const DependencyGraph& graph);

enum class SplitMethod { exhaustive, heuristic };

std::string_view to_string(SplitMethod method);

struct SplitResult {
  Component original;
  std::array<Component, 2> parts;  // "<name>_1" holds the smallest member
  Weight cut_weight = 0;
  SplitMethod method = SplitMethod::exhaustive;

  friend bool operator==(const SplitResult&, const SplitResult&) = default;
};

/// Largest member count searched exhaustively (2^(n-1) - 1 bipartitions).
inline constexpr std::size_t kExhaustiveSplitLimit = 15;

/// Two-way split of `component` minimising the invocation weight crossing
/// the cut in either direction. Both parts are non-empty.
///
/// Up to kExhaustiveSplitLimit members every bipartition is evaluated (in
/// parallel). Ties go to the partition whose first part, which always holds
/// the smallest member id, has the lexicographically smallest member list.
///
/// Larger components use a local search: starting from the id-order halves
/// and from the lightest-connected members cut off on their own, it keeps
/// applying the best single-member move or member swap that lowers the cut
/// until none does. The best local optimum wins, with the same tie-break.
///
/// Throws ValidationError for fewer than two members or unknown members.
SplitResult split_component(const Component& component, const DependencyGraph& graph);

/// Replaces the split component in `set` by its two parts, in place.
ComponentSet apply_split(const ComponentSet& set, const SplitResult& split);

}  // namespace cminer
