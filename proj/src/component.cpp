#include "cminer/component.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "cminer/error.hpp"

namespace cminer {

namespace {

using nlohmann::json;

constexpr const char* kComponentsSchema = "components/1";

}  // namespace

const Component* ComponentSet::find(std::string_view name) const {
  auto it = std::find_if(components.begin(), components.end(),
                         [&](const Component& c) { return c.name == name; });
  return it == components.end() ? nullptr : &*it;
}

void check_partition(const ComponentSet& set, const DependencyGraph& graph) {
  std::set<std::string> names;
  std::set<ElementId> seen;
  for (const auto& c : set.components) {
    if (c.name.empty()) throw ValidationError("component with an empty name");
    if (!names.insert(c.name).second) {
      throw ValidationError("component name '" + c.name + "' used twice");
    }
    if (c.members.empty()) throw ValidationError("component '" + c.name + "' has no members");
    for (const auto& id : c.members) {
      if (!graph.index_of(id.str())) {
        throw ValidationError("component '" + c.name + "' names unknown element '" + id.str() +
                              "'");
      }
      if (!seen.insert(id).second) {
        throw ValidationError("element '" + id.str() + "' belongs to two components");
      }
    }
  }
  if (seen.size() != graph.size()) {
    throw ValidationError("components do not cover every element of the graph");
  }
}

std::string to_components_json(const ComponentSet& set) {
  json components = json::array();
  for (const auto& c : set.components) {
    json members = json::array();
    for (const auto& id : c.members) members.push_back(id.str());
    components.push_back({{"name", c.name}, {"members", std::move(members)}});
  }
  json doc = {{"schema", kComponentsSchema},
              {"strategy", to_string(set.strategy)},
              {"source_f_min", set.source_f_min},
              {"components", std::move(components)}};
  return doc.dump(2) + "\n";
}

ComponentSet parse_components_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON document", "byte " + std::to_string(e.byte));
  }
  try {
    if (doc.at("schema").get<std::string>() != kComponentsSchema) {
      throw ParseError(std::string("unsupported schema, expected \"") + kComponentsSchema + "\"",
                       "/schema");
    }
    ComponentSet set;
    set.strategy = parse_strategy(doc.at("strategy").get<std::string>());
    set.source_f_min = doc.at("source_f_min").get<double>();
    for (const auto& item : doc.at("components")) {
      Component c{item.at("name").get<std::string>(), {}};
      for (const auto& id : item.at("members")) c.members.emplace_back(id.get<std::string>());
      std::sort(c.members.begin(), c.members.end());
      set.components.push_back(std::move(c));
    }
    return set;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid component set: ") + e.what(), "");
  }
}

}  // namespace cminer
