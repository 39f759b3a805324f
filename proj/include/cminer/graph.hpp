#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cminer {

using Weight = std::int64_t;

// Name of a class or business element. Non-empty, no surrounding whitespace,
// compared byte-wise.
class ElementId {
 public:
  explicit ElementId(std::string value);

  const std::string& str() const noexcept { return value_; }

  friend auto operator<=>(const ElementId&, const ElementId&) = default;
  friend bool operator==(const ElementId&, const ElementId&) = default;

 private:
  std::string value_;
};

struct Element {
  ElementId id;
  std::optional<std::string> container;  // tier / package label
  std::vector<std::string> method_names;

  friend bool operator==(const Element&, const Element&) = default;
};

// Endpoints are indices into DependencyGraph::elements().
struct DependencyEdge {
  std::size_t source = 0;
  std::size_t target = 0;
  Weight weight = 1;

  friend bool operator==(const DependencyEdge&, const DependencyEdge&) = default;
};

/// Weighted directed invocation graph between elements.
///
/// Immutable once built. Elements are kept sorted by id and edges sorted by
/// (source, target), so two graphs holding the same data compare equal
/// regardless of the order it was supplied in. Build one with GraphBuilder.
class DependencyGraph {
 public:
  DependencyGraph() = default;

  std::span<const Element> elements() const noexcept { return elements_; }
  std::span<const DependencyEdge> edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }

  const ElementId& id(std::size_t index) const { return elements_.at(index).id; }
  std::optional<std::size_t> index_of(std::string_view id) const;

  /// Weight of source -> target, 0 when there is no such edge.
  Weight weight(std::size_t source, std::size_t target) const;

  Weight total_weight() const;

  friend bool operator==(const DependencyGraph&, const DependencyGraph&) = default;

 private:
  friend class GraphBuilder;

  std::vector<Element> elements_;
  std::vector<DependencyEdge> edges_;
};

/// Accumulates elements and edges, then normalizes into a DependencyGraph.
///
/// Duplicate (source, target) edges are merged by summing their weights and
/// self-edges are dropped (with a warning). Edges may only name elements that
/// were added first unless `implicit_elements` is set, in which case unknown
/// endpoints are created on the fly (DOT and CSV ingest).
class GraphBuilder {
 public:
  explicit GraphBuilder(bool implicit_elements = false)
      : implicit_elements_(implicit_elements) {}

  /// Throws ValidationError on a duplicate id or duplicate method names.
  void add_element(Element element);

  /// Adds a bare element unless the id is already known.
  void touch_element(const ElementId& id);

  /// `where` is prefixed to error messages.
  void add_edge(const ElementId& source, const ElementId& target, Weight weight,
                const std::string& where = {});

  bool has_element(const ElementId& id) const { return index_.contains(id.str()); }

  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  DependencyGraph build() &&;

 private:
  bool implicit_elements_;
  std::vector<Element> elements_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::map<std::pair<std::size_t, std::size_t>, Weight> edges_;
  std::vector<std::string> warnings_;
};

/// A graph together with any non-fatal diagnostics raised while reading it.
struct ParsedGraph {
  DependencyGraph graph;
  std::vector<std::string> warnings;
};

// JSON "depgraph/1" documents.
ParsedGraph parse_json_graph(std::string_view text);
std::string to_json_graph(const DependencyGraph& graph);

// DOT subset: `digraph`, node statements, `A -> B [weight=K];` edge statements.
// Node attributes `container` and `methods` (comma separated) are honoured so
// that element metadata survives a round trip; other attributes are ignored
// with a warning.
ParsedGraph parse_dot_graph(std::string_view text);
std::string to_dot_graph(const DependencyGraph& graph);

// CSV invocation log with header `caller,callee[,count]`.
ParsedGraph ingest_invocation_log(std::string_view csv_text);
std::string to_invocation_log(const DependencyGraph& graph);

enum class GraphFormat { json, dot, csv };

GraphFormat parse_graph_format(std::string_view name);
ParsedGraph parse_graph(std::string_view text, GraphFormat format);

/// Every ordered sequence of distinct methods of length 1..n, rendered as
/// nested calls ("m1(m2())"), in lexicographic order of the index sequence.
std::vector<std::string> enumerate_execution_orders(std::span<const std::string> methods);

}  // namespace cminer
