#include "reports.hpp"

#include <algorithm>
#include <cstdio>

namespace cminer::cli {

using nlohmann::json;

namespace {

json ids(const std::vector<ElementId>& members) {
  json out = json::array();
  for (const auto& id : members) out.push_back(id.str());
  return out;
}

std::string joined(const std::vector<ElementId>& members) {
  std::string out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ", ";
    out += members[i].str();
  }
  return out;
}

std::string joined(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out.empty() ? "(none)" : out;
}

}  // namespace

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string table(const std::vector<std::string>& header,
                  const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t c = 0; c < width.size(); ++c) {
      const std::string cell = c < cells.size() ? cells[c] : "";
      out += cell;
      if (c + 1 < width.size()) out += std::string(width[c] - cell.size() + 2, ' ');
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };
  std::string out = line(header);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  out += line(rule);
  for (const auto& row : rows) out += line(row);
  return out;
}

json to_json(const Clustering& clustering) {
  json clusters = json::array();
  for (const auto& members : clustering.clusters) clusters.push_back(ids(members));
  return {{"f_min", clustering.f_min},
          {"strategy", to_string(clustering.strategy)},
          {"clusters", std::move(clusters)}};
}

json to_json(const ComponentSet& set) {
  return json::parse(to_components_json(set));
}

json to_json(const SelectionRule& rule) {
  if (rule.kind == SelectionRule::Kind::max) return {{"kind", "max"}};
  return {{"kind", "threshold"}, {"p", rule.p}};
}

json to_json(const CbomReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"name", r.name}, {"cbom", r.cbom}, {"cohesion", r.cohesion}});
  }
  return {{"mode", to_string(report.mode)},
          {"rule", to_json(report.rule)},
          {"components", std::move(rows)},
          {"reconfigurable", report.reconfigurable}};
}

json to_json(const SplitResult& split) {
  json parts = json::array();
  for (const auto& p : split.parts) parts.push_back({{"name", p.name}, {"members", ids(p.members)}});
  return {{"original", split.original.name},
          {"method", to_string(split.method)},
          {"cut_weight", split.cut_weight},
          {"parts", std::move(parts)}};
}

json to_json(const AnalysisSection& section) {
  json splits = json::array();
  for (std::size_t k = 0; k < section.splits.size(); ++k) {
    json s = to_json(section.splits[k]);
    for (std::size_t p = 0; p < 2; ++p) {
      s["parts"][p]["cbom"] = section.cbom_after[2 * k + p].cbom;
      s["parts"][p]["cohesion"] = section.cohesion_after[2 * k + p];
    }
    splits.push_back(std::move(s));
  }
  json components = json::array();
  for (const auto& c : section.components.components) {
    components.push_back({{"name", c.name}, {"members", ids(c.members)}});
  }
  json out = to_json(section.clustering);
  out["components"] = std::move(components);
  out["cbom"] = to_json(section.cbom);
  out["splits"] = std::move(splits);
  if (!section.unsplittable.empty()) out["unsplittable"] = section.unsplittable;
  return out;
}

json to_json(const std::vector<ReuseRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"name", r.name},
                   {"reuse_count", r.reuse_count},
                   {"node", r.node},
                   {"unused", r.unused}});
  }
  return out;
}

json to_json(const ComponentRecord& record) {
  return {{"name", record.name},
          {"reuse_count", record.reuse_count},
          {"node", record.node},
          {"members", ids(record.members)},
          {"version", record.version}};
}

std::string text_graph(const DependencyGraph& graph) {
  std::vector<std::vector<std::string>> elements;
  for (const auto& e : graph.elements()) {
    std::string methods;
    for (std::size_t i = 0; i < e.method_names.size(); ++i) {
      if (i) methods += ", ";
      methods += e.method_names[i];
    }
    elements.push_back({e.id.str(), e.container.value_or("-"), methods});
  }
  std::vector<std::vector<std::string>> edges;
  for (const auto& e : graph.edges()) {
    edges.push_back({graph.id(e.source).str(), graph.id(e.target).str(), std::to_string(e.weight)});
  }
  return std::to_string(graph.size()) + " elements, " + std::to_string(graph.edges().size()) +
         " edges, total weight " + std::to_string(graph.total_weight()) + "\n\n" +
         table({"Element", "Container", "Methods"}, elements) + "\n" +
         table({"Source", "Target", "Weight"}, edges);
}

std::string text_clustering(const Clustering& clustering) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < clustering.clusters.size(); ++k) {
    rows.push_back({std::to_string(k + 1), std::to_string(clustering.clusters[k].size()),
                    joined(clustering.clusters[k])});
  }
  return "f_min " + format_real(clustering.f_min) + " (" + std::string(to_string(clustering.strategy)) +
         "): " + std::to_string(clustering.clusters.size()) + " clusters\n" +
         table({"Cluster", "Size", "Members"}, rows);
}

std::string text_components(const ComponentSet& set) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : set.components) {
    rows.push_back({c.name, std::to_string(c.members.size()), joined(c.members)});
  }
  return table({"Component", "Size", "Members"}, rows);
}

std::string text_cbom(const CbomReport& report) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : report.rows) {
    rows.push_back({r.name, std::to_string(r.cbom), format_real(r.cohesion)});
  }
  std::string rule = report.rule.kind == SelectionRule::Kind::max
                         ? "max"
                         : "threshold P=" + std::to_string(report.rule.p);
  return table({"Component", "CBOM (" + std::string(to_string(report.mode)) + ")", "Cohesion"},
               rows) +
         "Reconfigurable (" + rule + "): " + joined(report.reconfigurable) + "\n";
}

std::string text_split(const SplitResult& split) {
  return "Split " + split.original.name + " (" + std::string(to_string(split.method)) +
         ", cut weight " + std::to_string(split.cut_weight) + ")\n" +
         table({"Part", "Members"}, {{split.parts[0].name, joined(split.parts[0].members)},
                                     {split.parts[1].name, joined(split.parts[1].members)}});
}

std::string text_section(const AnalysisSection& section) {
  std::string out = text_clustering(section.clustering) + "\n" +
                    text_components(section.components) + "\n" + text_cbom(section.cbom);
  for (std::size_t k = 0; k < section.splits.size(); ++k) {
    const auto& split = section.splits[k];
    std::vector<std::vector<std::string>> rows;
    for (std::size_t p = 0; p < 2; ++p) {
      rows.push_back({split.parts[p].name, joined(split.parts[p].members),
                      std::to_string(section.cbom_after[2 * k + p].cbom),
                      format_real(section.cohesion_after[2 * k + p])});
    }
    out += "\nSplit " + split.original.name + " (" + std::string(to_string(split.method)) +
           ", cut weight " + std::to_string(split.cut_weight) + ")\n" +
           table({"Part", "Members", "CBOM", "Cohesion"}, rows);
  }
  for (const auto& name : section.unsplittable) {
    out += "\n" + name + " has a single member and cannot be split\n";
  }
  return out;
}

std::string text_reuse(const std::vector<ReuseRow>& rows) {
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    cells.push_back({r.name, std::to_string(r.reuse_count), r.node, r.unused ? "unused" : ""});
  }
  return table({"Component", "Count of Reuse", "Node", "Status"}, cells);
}

std::string text_record(const ComponentRecord& record) {
  return table({"Field", "Value"}, {{"name", record.name},
                                    {"reuse_count", std::to_string(record.reuse_count)},
                                    {"node", record.node},
                                    {"version", std::to_string(record.version)},
                                    {"members", joined(record.members)}});
}

}  // namespace cminer::cli
