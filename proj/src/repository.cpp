#include "cminer/repository.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cminer/error.hpp"

namespace cminer {

namespace {

using nlohmann::json;

void check_name(std::string_view name) {
  if (name.empty()) throw ValidationError("component name must not be empty");
}

std::vector<ElementId> sorted_members(std::vector<ElementId> members) {
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw ValidationError("member list names an element twice");
  }
  return members;
}

}  // namespace

const ComponentRecord* RepositoryStore::find(std::string_view name) const {
  auto it = std::find_if(records_.begin(), records_.end(),
                         [&](const ComponentRecord& r) { return r.name == name; });
  return it == records_.end() ? nullptr : &*it;
}

ComponentRecord& RepositoryStore::lookup(std::string_view name) {
  auto it = std::find_if(records_.begin(), records_.end(),
                         [&](const ComponentRecord& r) { return r.name == name; });
  if (it == records_.end()) {
    throw LookupError("no component named '" + std::string(name) + "' in the repository");
  }
  return *it;
}

void RepositoryStore::register_component(std::string name, std::string node,
                                         std::vector<ElementId> members) {
  check_name(name);
  if (find(name)) {
    throw LookupError("component '" + name + "' is already registered");
  }
  records_.push_back({std::move(name), 0, std::move(node), sorted_members(std::move(members)), 1});
}

void RepositoryStore::record_reuse(std::string_view name) { ++lookup(name).reuse_count; }

void RepositoryStore::update_members(std::string_view name, std::vector<ElementId> members) {
  ComponentRecord& record = lookup(name);
  auto sorted = sorted_members(std::move(members));
  if (sorted == record.members) return;
  record.members = std::move(sorted);
  ++record.version;
}

std::vector<ReuseRow> RepositoryStore::reuse_report() const {
  std::vector<ReuseRow> rows;
  rows.reserve(records_.size());
  for (const auto& r : records_) rows.push_back({r.name, r.reuse_count, r.node, r.reuse_count == 0});
  std::sort(rows.begin(), rows.end(), [](const ReuseRow& a, const ReuseRow& b) {
    if (a.reuse_count != b.reuse_count) return a.reuse_count > b.reuse_count;
    return a.name < b.name;
  });
  return rows;
}

std::string to_repository_json(const RepositoryStore& store) {
  json records = json::array();
  for (const auto& r : store.records()) {
    json members = json::array();
    for (const auto& id : r.members) members.push_back(id.str());
    records.push_back({{"name", r.name},
                       {"reuse_count", r.reuse_count},
                       {"node", r.node},
                       {"members", std::move(members)},
                       {"version", r.version}});
  }
  json doc = {{"schema_version", store.schema_version()}, {"records", std::move(records)}};
  return doc.dump(2) + "\n";
}

RepositoryStore parse_repository(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON document", "byte " + std::to_string(e.byte));
  }
  if (!doc.is_object()) throw ParseError("repository must be a JSON object", "/");
  auto schema = doc.find("schema_version");
  if (schema == doc.end() || !schema->is_string() || *schema != kRepositorySchema) {
    throw ParseError("schema mismatch, expected \"" + std::string(kRepositorySchema) + "\"",
                     "/schema_version");
  }
  auto records = doc.find("records");
  if (records == doc.end() || !records->is_array()) {
    throw ParseError("expected an array", "/records");
  }

  RepositoryStore store;
  std::set<std::string> names;
  for (std::size_t i = 0; i < records->size(); ++i) {
    const std::string where = "/records/" + std::to_string(i);
    const json& item = (*records)[i];
    try {
      ComponentRecord r;
      r.name = item.at("name").get<std::string>();
      check_name(r.name);
      const json& count = item.at("reuse_count");
      if (!count.is_number_unsigned()) throw ValidationError("reuse_count must be >= 0");
      r.reuse_count = count.get<std::uint64_t>();
      r.node = item.at("node").get<std::string>();
      const json& version = item.at("version");
      if (!version.is_number_unsigned() || version.get<std::uint64_t>() == 0) {
        throw ValidationError("version must be a positive integer");
      }
      r.version = version.get<std::uint64_t>();
      std::vector<ElementId> members;
      for (const auto& m : item.at("members")) members.emplace_back(m.get<std::string>());
      r.members = sorted_members(std::move(members));
      if (!names.insert(r.name).second) {
        throw ValidationError("duplicate component name '" + r.name + "'");
      }
      store.records_.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ParseError(e.what(), where);
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  return store;
}

void save(const RepositoryStore& store, const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << to_repository_json(store);
    out.flush();
    if (!out) throw Error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot replace " + path.string());
  }
}

RepositoryStore load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_repository(buffer.str());
}

}  // namespace cminer
