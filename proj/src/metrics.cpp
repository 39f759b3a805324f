#include "cminer/metrics.hpp"

#include <algorithm>
#include <set>

#include "cminer/error.hpp"

namespace cminer {

std::string_view to_string(CbomMode mode) {
  return mode == CbomMode::weighted ? "weighted" : "distinct";
}

CbomMode parse_cbom_mode(std::string_view name) {
  if (name == "weighted") return CbomMode::weighted;
  if (name == "distinct") return CbomMode::distinct;
  throw ValidationError("unknown CBOM mode '" + std::string(name) +
                        "' (expected weighted or distinct)");
}

namespace {

// owner[i] = position in set.components of the component holding element i.
std::vector<std::size_t> ownership(const ComponentSet& set, const DependencyGraph& graph) {
  check_partition(set, graph);
  std::vector<std::size_t> owner(graph.size());
  for (std::size_t c = 0; c < set.components.size(); ++c) {
    for (const auto& id : set.components[c].members) owner[*graph.index_of(id.str())] = c;
  }
  return owner;
}

std::vector<std::size_t> member_indices(const Component& component, const DependencyGraph& graph) {
  std::vector<std::size_t> out;
  out.reserve(component.members.size());
  for (const auto& id : component.members) {
    auto idx = graph.index_of(id.str());
    if (!idx) {
      throw ValidationError("component '" + component.name + "' names unknown element '" +
                            id.str() + "'");
    }
    out.push_back(*idx);
  }
  return out;
}

std::vector<Weight> cbom_all(const ComponentSet& set, const DependencyGraph& graph,
                             CbomMode mode) {
  const auto owner = ownership(set, graph);
  std::vector<Weight> out(set.components.size(), 0);
  if (mode == CbomMode::weighted) {
    for (const auto& e : graph.edges()) {
      if (owner[e.source] != owner[e.target]) out[owner[e.source]] += e.weight;
    }
    return out;
  }
  std::set<std::pair<std::size_t, std::size_t>> targets;  // (component, element)
  for (const auto& e : graph.edges()) {
    if (owner[e.source] != owner[e.target]) targets.emplace(owner[e.source], e.target);
  }
  for (const auto& [c, t] : targets) ++out[c];
  return out;
}

}  // namespace

Weight cbom(const Component& component, const ComponentSet& all, const DependencyGraph& graph,
            CbomMode mode) {
  auto it = std::find(all.components.begin(), all.components.end(), component);
  if (it == all.components.end()) {
    throw LookupError("component '" + component.name + "' is not part of the component set");
  }
  return cbom_all(all, graph, mode)[static_cast<std::size_t>(it - all.components.begin())];
}

std::string select_reconfigurable_max(std::span<const CbomEntry> entries) {
  if (entries.empty()) throw ValidationError("no components to choose from");
  const CbomEntry* best = &entries.front();
  for (const auto& e : entries) {
    if (e.cbom > best->cbom || (e.cbom == best->cbom && e.name < best->name)) best = &e;
  }
  return best->name;
}

std::vector<std::string> select_reconfigurable_threshold(std::span<const CbomEntry> entries,
                                                         Weight p) {
  if (p < 0) throw ValidationError("P must be non-negative");
  std::vector<std::string> out;
  for (const auto& e : entries) {
    if (e.cbom > p) out.push_back(e.name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> select_reconfigurable(std::span<const CbomEntry> entries,
                                               SelectionRule rule) {
  if (rule.kind == SelectionRule::Kind::threshold) {
    return select_reconfigurable_threshold(entries, rule.p);
  }
  if (entries.empty()) return {};
  return {select_reconfigurable_max(entries)};
}

std::vector<CbomEntry> cbom_entries(const ComponentSet& set, const DependencyGraph& graph,
                                    CbomMode mode) {
  const auto values = cbom_all(set, graph, mode);
  std::vector<CbomEntry> out;
  out.reserve(values.size());
  for (std::size_t c = 0; c < values.size(); ++c) {
    out.push_back({set.components[c].name, values[c]});
  }
  return out;
}

CbomReport cbom_report(const ComponentSet& set, const DependencyGraph& graph, CbomMode mode,
                       SelectionRule rule) {
  const auto entries = cbom_entries(set, graph, mode);
  CbomReport report;
  report.mode = mode;
  report.rule = rule;
  for (std::size_t c = 0; c < entries.size(); ++c) {
    report.rows.push_back(
        {entries[c].name, entries[c].cbom, cohesion(set.components[c], graph)});
  }
  report.reconfigurable = select_reconfigurable(entries, rule);
  return report;
}

double cohesion(const Component& component, const DependencyGraph& graph) {
  const auto members = member_indices(component, graph);
  std::vector<bool> inside(graph.size(), false);
  for (auto m : members) inside[m] = true;
  Weight internal = 0;
  Weight outgoing = 0;
  for (const auto& e : graph.edges()) {
    if (!inside[e.source]) continue;
    (inside[e.target] ? internal : outgoing) += e.weight;
  }
  const Weight total = internal + outgoing;
  return total == 0 ? 0.0 : static_cast<double>(internal) / static_cast<double>(total);
}

std::string_view to_string(SplitMethod method) {
  return method == SplitMethod::exhaustive ? "exhaustive" : "heuristic";
}

ComponentSet apply_split(const ComponentSet& set, const SplitResult& split) {
  ComponentSet out;
  out.source_f_min = set.source_f_min;
  out.strategy = set.strategy;
  bool replaced = false;
  for (const auto& c : set.components) {
    if (c == split.original) {
      out.components.push_back(split.parts[0]);
      out.components.push_back(split.parts[1]);
      replaced = true;
    } else {
      out.components.push_back(c);
    }
  }
  if (!replaced) {
    throw LookupError("component '" + split.original.name + "' is not part of the component set");
  }
  std::set<std::string> names;
  for (const auto& c : out.components) {
    if (!names.insert(c.name).second) {
      throw ValidationError("split would create a second component named '" + c.name + "'");
    }
  }
  return out;
}

}  // namespace cminer
