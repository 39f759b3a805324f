#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cminer/graph.hpp"

namespace cminer {

/// One row of the component management relation.
struct ComponentRecord {
  std::string name;
  std::uint64_t reuse_count = 0;  // reuse events, not distinct reusing systems
  std::string node;               // opaque label tying the record to a clustering
  std::vector<ElementId> members;
  std::uint64_t version = 1;      // bumped on content changes only

  friend bool operator==(const ComponentRecord&, const ComponentRecord&) = default;
};

struct ReuseRow {
  std::string name;
  std::uint64_t reuse_count = 0;
  std::string node;
  bool unused = false;

  friend bool operator==(const ReuseRow&, const ReuseRow&) = default;
};

inline constexpr std::string_view kRepositorySchema = "repo/1";

/// Local component repository. Mutators either succeed or throw and leave the
/// store untouched. Not synchronised: callers serialise writers.
class RepositoryStore {
 public:
  const std::vector<ComponentRecord>& records() const noexcept { return records_; }
  const std::string& schema_version() const noexcept { return schema_version_; }
  std::size_t size() const noexcept { return records_.size(); }

  const ComponentRecord* find(std::string_view name) const;

  /// New record with reuse_count 0 and version 1. LookupError on a duplicate name.
  void register_component(std::string name, std::string node, std::vector<ElementId> members);

  /// reuse_count + 1; the version is left alone.
  void record_reuse(std::string_view name);

  /// Replaces the member list (e.g. after a split) and bumps the version.
  void update_members(std::string_view name, std::vector<ElementId> members);

  /// Descending reuse count, ties by name; zero counts flagged unused.
  std::vector<ReuseRow> reuse_report() const;

  friend bool operator==(const RepositoryStore&, const RepositoryStore&) = default;

 private:
  friend RepositoryStore parse_repository(std::string_view text);

  ComponentRecord& lookup(std::string_view name);

  std::vector<ComponentRecord> records_;
  std::string schema_version_{kRepositorySchema};
};

std::string to_repository_json(const RepositoryStore& store);
/// Validates the schema and every record invariant; throws ParseError or
/// ValidationError.
RepositoryStore parse_repository(std::string_view text);

/// Writes a temporary sibling file and renames it over `path`.
void save(const RepositoryStore& store, const std::filesystem::path& path);
RepositoryStore load(const std::filesystem::path& path);

}  // namespace cminer
