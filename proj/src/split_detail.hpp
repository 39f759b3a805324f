#pragma once

#include <cstddef>
#include <vector>

#include "cminer/metrics.hpp"

namespace cminer::detail {

// Component members (sorted by id) and the symmetric invocation weight
// between every pair of them.
struct LocalGraph {
  std::vector<std::size_t> members;  // graph indices
  std::vector<Weight> link;          // m x m, link[a][b] = w(a->b) + w(b->a)

  std::size_t size() const noexcept { return members.size(); }
  Weight at(std::size_t a, std::size_t b) const { return link[a * members.size() + b]; }
};

LocalGraph local_graph(const Component& component, const DependencyGraph& graph);

// side[a] == 1 puts member a in the second part. side[0] is always 0.
using Sides = std::vector<char>;

Weight cut_weight(const LocalGraph& local, const Sides& side);

// Canonical tie-break: the first parts compared as sorted member lists.
bool first_part_precedes(const Sides& a, const Sides& b);

Sides sides_from_mask(std::size_t m, std::uint32_t mask);

SplitResult make_split(const Component& component, const Sides& side, Weight cut,
                       SplitMethod method);

}  // namespace cminer::detail
