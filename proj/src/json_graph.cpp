#include <cstdint>

#include <json.hpp>

#include "cminer/error.hpp"
#include "cminer/graph.hpp"

namespace cminer {

namespace {

using nlohmann::json;

constexpr const char* kGraphSchema = "depgraph/1";

std::string location_of_byte(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return format_location(line, column);
}

const json& require(const json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw ParseError(std::string("missing field '") + key + "'", where);
  }
  return *it;
}

std::string require_string(const json& value, const std::string& where) {
  if (!value.is_string()) throw ParseError("expected a string", where);
  return value.get<std::string>();
}

ElementId element_id(const json& value, const std::string& where) {
  try {
    return ElementId(require_string(value, where));
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), where);
  }
}

}  // namespace

ParsedGraph parse_json_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON document", location_of_byte(text, e.byte));
  }
  if (!doc.is_object()) throw ParseError("graph document must be an object", "/");

  if (auto it = doc.find("schema"); it != doc.end()) {
    if (!it->is_string() || it->get<std::string>() != kGraphSchema) {
      throw ParseError(std::string("unsupported schema, expected \"") + kGraphSchema + "\"",
                       "/schema");
    }
  }

  GraphBuilder builder;
  const json& elements = require(doc, "elements", "/");
  if (!elements.is_array()) throw ParseError("expected an array", "/elements");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const std::string where = "/elements/" + std::to_string(i);
    const json& item = elements[i];
    if (!item.is_object()) throw ParseError("expected an object", where);

    Element element{element_id(require(item, "id", where), where + "/id"), std::nullopt, {}};
    if (auto c = item.find("container"); c != item.end() && !c->is_null()) {
      element.container = require_string(*c, where + "/container");
    }
    if (auto m = item.find("methods"); m != item.end() && !m->is_null()) {
      if (!m->is_array()) throw ParseError("expected an array", where + "/methods");
      for (std::size_t k = 0; k < m->size(); ++k) {
        element.method_names.push_back(
            require_string((*m)[k], where + "/methods/" + std::to_string(k)));
      }
    }
    try {
      builder.add_element(std::move(element));
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }

  const json& edges = require(doc, "edges", "/");
  if (!edges.is_array()) throw ParseError("expected an array", "/edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "/edges/" + std::to_string(i);
    const json& item = edges[i];
    if (!item.is_object()) throw ParseError("expected an object", where);
    ElementId source = element_id(require(item, "source", where), where + "/source");
    ElementId target = element_id(require(item, "target", where), where + "/target");
    const json& weight = require(item, "weight", where);
    if (!weight.is_number_integer()) {
      throw ParseError("weight must be an integer", where + "/weight");
    }
    if (weight.is_number_unsigned() &&
        weight.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      throw ParseError("weight out of range", where + "/weight");
    }
    builder.add_edge(source, target, weight.get<Weight>(), where);
  }

  ParsedGraph parsed;
  parsed.warnings = builder.warnings();
  parsed.graph = std::move(builder).build();
  return parsed;
}

std::string to_json_graph(const DependencyGraph& graph) {
  json elements = json::array();
  for (const auto& e : graph.elements()) {
    json item = {{"id", e.id.str()}};
    if (e.container) item["container"] = *e.container;
    if (!e.method_names.empty()) item["methods"] = e.method_names;
    elements.push_back(std::move(item));
  }
  json edges = json::array();
  for (const auto& e : graph.edges()) {
    edges.push_back({{"source", graph.id(e.source).str()},
                     {"target", graph.id(e.target).str()},
                     {"weight", e.weight}});
  }
  json doc = {{"schema", kGraphSchema}, {"elements", std::move(elements)},
              {"edges", std::move(edges)}};
  return doc.dump(2) + "\n";
}

}  // namespace cminer
