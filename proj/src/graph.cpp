#include "cminer/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "cminer/error.hpp"

namespace cminer {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string prefixed(const std::string& where, const std::string& message) {
  return where.empty() ? message : where + ": " + message;
}

}  // namespace

std::string format_location(std::size_t line, std::size_t column) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

ElementId::ElementId(std::string value) : value_(std::move(value)) {
  if (value_.empty()) {
    throw ValidationError("element id must not be empty");
  }
  if (is_space(value_.front()) || is_space(value_.back())) {
    throw ValidationError("element id '" + value_ +
                          "' has leading or trailing whitespace");
  }
}

std::optional<std::size_t> DependencyGraph::index_of(std::string_view id) const {
  auto it = std::lower_bound(
      elements_.begin(), elements_.end(), id,
      [](const Element& e, std::string_view key) { return e.id.str() < key; });
  if (it == elements_.end() || it->id.str() != id) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

Weight DependencyGraph::weight(std::size_t source, std::size_t target) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{source, target},
                             [](const DependencyEdge& e, const auto& key) {
                               return std::pair{e.source, e.target} < key;
                             });
  if (it == edges_.end() || it->source != source || it->target != target) return 0;
  return it->weight;
}

Weight DependencyGraph::total_weight() const {
  return std::accumulate(edges_.begin(), edges_.end(), Weight{0},
                         [](Weight acc, const DependencyEdge& e) { return acc + e.weight; });
}

void GraphBuilder::add_element(Element element) {
  const std::string& key = element.id.str();
  if (index_.contains(key)) {
    throw ValidationError("duplicate element id '" + key + "'");
  }
  std::set<std::string_view> seen;
  for (const auto& m : element.method_names) {
    if (m.empty()) {
      throw ValidationError("element '" + key + "' has an empty method name");
    }
    if (!seen.insert(m).second) {
      throw ValidationError("element '" + key + "' lists method '" + m + "' twice");
    }
  }
  index_.emplace(key, elements_.size());
  elements_.push_back(std::move(element));
}

void GraphBuilder::touch_element(const ElementId& id) {
  if (!index_.contains(id.str())) {
    add_element(Element{id, std::nullopt, {}});
  }
}

void GraphBuilder::add_edge(const ElementId& source, const ElementId& target, Weight weight,
                            const std::string& where) {
  if (weight <= 0) {
    throw ValidationError(prefixed(
        where, "edge " + source.str() + " -> " + target.str() +
                   " has non-positive weight " + std::to_string(weight)));
  }
  if (implicit_elements_) {
    touch_element(source);
    touch_element(target);
  }
  auto src = index_.find(source.str());
  if (src == index_.end()) {
    throw ValidationError(prefixed(where, "edge references unknown element '" +
                                              source.str() + "'"));
  }
  auto dst = index_.find(target.str());
  if (dst == index_.end()) {
    throw ValidationError(prefixed(where, "edge references unknown element '" +
                                              target.str() + "'"));
  }
  if (src->second == dst->second) {
    warnings_.push_back(prefixed(where, "self-edge on '" + source.str() + "' dropped"));
    return;
  }
  Weight& slot = edges_[{src->second, dst->second}];
  if (slot > std::numeric_limits<Weight>::max() - weight) {
    throw ValidationError(prefixed(where, "edge weight overflow on " + source.str() +
                                              " -> " + target.str()));
  }
  slot += weight;
}

DependencyGraph GraphBuilder::build() && {
  // Re-index into id order.
  std::vector<std::size_t> order(elements_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return elements_[a].id < elements_[b].id;
  });
  std::vector<std::size_t> remap(elements_.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) remap[order[pos]] = pos;

  DependencyGraph graph;
  graph.elements_.reserve(elements_.size());
  for (std::size_t old : order) graph.elements_.push_back(std::move(elements_[old]));

  graph.edges_.reserve(edges_.size());
  for (const auto& [key, w] : edges_) {
    graph.edges_.push_back({remap[key.first], remap[key.second], w});
  }
  std::sort(graph.edges_.begin(), graph.edges_.end(),
            [](const DependencyEdge& a, const DependencyEdge& b) {
              return std::pair{a.source, a.target} < std::pair{b.source, b.target};
            });
  elements_.clear();
  index_.clear();
  edges_.clear();
  return graph;
}

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "json") return GraphFormat::json;
  if (name == "dot") return GraphFormat::dot;
  if (name == "csv") return GraphFormat::csv;
  throw ValidationError("unknown graph format '" + std::string(name) +
                        "' (expected json, dot or csv)");
}

ParsedGraph parse_graph(std::string_view text, GraphFormat format) {
  switch (format) {
    case GraphFormat::json:
      return parse_json_graph(text);
    case GraphFormat::dot:
      return parse_dot_graph(text);
    case GraphFormat::csv:
      return ingest_invocation_log(text);
  }
  throw InvariantError("unhandled graph format");
}

namespace {

void extend_orders(std::span<const std::string> methods, std::vector<std::size_t>& prefix,
                   std::vector<bool>& used, std::vector<std::string>& out) {
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (used[i]) continue;
    prefix.push_back(i);
    used[i] = true;

    std::string rendered;
    for (std::size_t idx : prefix) rendered += methods[idx] + "(";
    rendered.append(prefix.size(), ')');
    out.push_back(std::move(rendered));

    extend_orders(methods, prefix, used, out);
    used[i] = false;
    prefix.pop_back();
  }
}

}  // namespace

std::vector<std::string> enumerate_execution_orders(std::span<const std::string> methods) {
  if (methods.empty()) {
    throw ValidationError("execution orders need at least one method");
  }
  std::set<std::string_view> seen;
  for (const auto& m : methods) {
    if (!seen.insert(m).second) {
      throw ValidationError("duplicate method name '" + m + "'");
    }
  }
  std::vector<std::string> out;
  std::vector<std::size_t> prefix;
  std::vector<bool> used(methods.size(), false);
  // Preorder DFS visits index sequences in lexicographic order.
  extend_orders(methods, prefix, used, out);
  return out;
}

}  // namespace cminer
