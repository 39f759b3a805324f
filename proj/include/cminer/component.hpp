#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cminer/ds.hpp"
#include "cminer/graph.hpp"

namespace cminer {

/// A named group of elements exposed as one business component.
struct Component {
  std::string name;
  std::vector<ElementId> members;  // sorted, non-empty

  friend bool operator==(const Component&, const Component&) = default;
};

struct ComponentSet {
  std::vector<Component> components;
  double source_f_min = 0.0;
  DSStrategy strategy = kDefaultStrategy;

  const Component* find(std::string_view name) const;

  friend bool operator==(const ComponentSet&, const ComponentSet&) = default;
};

/// Throws ValidationError unless the components have unique names, are
/// non-empty and partition exactly the graph's element set.
void check_partition(const ComponentSet& set, const DependencyGraph& graph);

// "components/1" documents, the hand-off format between pipeline stages.
std::string to_components_json(const ComponentSet& set);
ComponentSet parse_components_json(std::string_view text);

}  // namespace cminer
