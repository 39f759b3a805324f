#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cminer/error.hpp"
#include "cminer/repository.hpp"
#include "support/generators.hpp"

namespace cminer {
namespace {

namespace fs = std::filesystem;
using testing::Rng;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "cminer_repo_tests";
  fs::create_directories(dir);
  const auto p = dir / (name + "_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + ".json");
  fs::remove(p);
  return p;
}

RepositoryStore table_store() {
  return load(fs::path(CMINER_FIXTURE_DIR) / "table1_repo.json");
}

TEST(Repository, RegisterStartsAtZero) {
  RepositoryStore s;
  s.register_component("WBR", "N_i", {ElementId("b"), ElementId("a")});
  const auto* r = s.find("WBR");
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->reuse_count, 0u);
  EXPECT_EQ(r->version, 1u);
  EXPECT_EQ(r->members, (std::vector<ElementId>{ElementId("a"), ElementId("b")}));
  EXPECT_EQ(s.find("BR"), nullptr);
}

TEST(Repository, DuplicateRegistrationLeavesStoreUntouched) {
  RepositoryStore s;
  s.register_component("WBR", "N_i", {});
  const auto before = s;
  EXPECT_THROW(s.register_component("WBR", "N_x", {}), LookupError);
  EXPECT_EQ(s, before);
  EXPECT_THROW(s.register_component("", "N", {}), ValidationError);
  EXPECT_THROW(s.register_component("X", "N", {ElementId("a"), ElementId("a")}), ValidationError);
}

TEST(Repository, ReuseCounting) {
  RepositoryStore s;
  s.register_component("WBR", "N_i", {});
  for (int k = 0; k < 23; ++k) s.record_reuse("WBR");
  EXPECT_EQ(s.find("WBR")->reuse_count, 23u);
  s.record_reuse("WBR");
  EXPECT_EQ(s.find("WBR")->reuse_count, 24u);
  EXPECT_EQ(s.find("WBR")->version, 1u);
  EXPECT_THROW(s.record_reuse("nope"), LookupError);
}

TEST(Repository, ThirtySixIncrements) {
  RepositoryStore s;
  s.register_component("DAO", "N_k", {});
  for (int k = 0; k < 36; ++k) s.record_reuse("DAO");
  EXPECT_EQ(s.find("DAO")->reuse_count, 36u);
}

TEST(Repository, TableReportOrder) {
  const auto rows = table_store().reuse_report();
  const std::vector<ReuseRow> expected{
      {"DAO", 36, "N_k", false}, {"WBR", 24, "N_i", false}, {"BR", 10, "N_j", false}};
  EXPECT_EQ(rows, expected);
}

TEST(Repository, UnusedFlagAndNameTieBreak) {
  RepositoryStore s;
  s.register_component("Zeta", "N1", {});
  s.register_component("Alpha", "N2", {});
  s.register_component("Beta", "N3", {});
  s.record_reuse("Beta");
  const auto rows = s.reuse_report();
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].name, "Beta");
  EXPECT_FALSE(rows[0].unused);
  EXPECT_EQ(rows[1].name, "Alpha");
  EXPECT_TRUE(rows[1].unused);
  EXPECT_EQ(rows[2].name, "Zeta");
  EXPECT_TRUE(rows[2].unused);
}

TEST(Repository, UpdateMembersBumpsVersionOnChangeOnly) {
  RepositoryStore s;
  s.register_component("DAO", "N_k", {ElementId("a"), ElementId("b")});
  s.update_members("DAO", {ElementId("b"), ElementId("a")});
  EXPECT_EQ(s.find("DAO")->version, 1u);
  s.update_members("DAO", {ElementId("a")});
  EXPECT_EQ(s.find("DAO")->version, 2u);
  EXPECT_THROW(s.update_members("X", {}), LookupError);
}

TEST(Repository, SaveLoadRoundTrip) {
  const auto path = scratch("roundtrip");
  auto s = table_store();
  s.record_reuse("BR");
  save(s, path);
  EXPECT_EQ(load(path), s);
  EXPECT_FALSE(fs::exists(path.string() + ".tmp"));
}

TEST(Repository, RandomStoresRoundTrip) {
  Rng rng(12);
  for (int round = 0; round < 100; ++round) {
    const auto s = testing::random_store(rng);
    const auto text = to_repository_json(s);
    EXPECT_EQ(parse_repository(text), s);
    EXPECT_EQ(to_repository_json(parse_repository(text)), text);
  }
}

TEST(Repository, ReportIsATotalOrder) {
  Rng rng(13);
  for (int round = 0; round < 100; ++round) {
    const auto rows = testing::random_store(rng).reuse_report();
    for (std::size_t k = 1; k < rows.size(); ++k) {
      const auto& a = rows[k - 1];
      const auto& b = rows[k];
      EXPECT_TRUE(a.reuse_count > b.reuse_count ||
                  (a.reuse_count == b.reuse_count && a.name < b.name));
    }
    for (const auto& r : rows) EXPECT_EQ(r.unused, r.reuse_count == 0);
  }
}

TEST(Repository, EmptyStore) {
  const RepositoryStore s;
  EXPECT_EQ(parse_repository(to_repository_json(s)), s);
  EXPECT_TRUE(s.reuse_report().empty());
  EXPECT_EQ(s.schema_version(), "repo/1");
}

TEST(Repository, RejectsBadDocuments) {
  EXPECT_THROW(parse_repository("{"), ParseError);
  EXPECT_THROW(parse_repository(R"({"schema_version":"repo/2","records":[]})"), Error);
  EXPECT_THROW(parse_repository(R"({"schema_version":"repo/1","records":[
      {"name":"A","reuse_count":1,"node":"N","members":[],"version":1},
      {"name":"A","reuse_count":2,"node":"N","members":[],"version":1}]})"),
               ValidationError);
  EXPECT_THROW(parse_repository(R"({"schema_version":"repo/1","records":[
      {"name":"A","reuse_count":-1,"node":"N","members":[],"version":1}]})"),
               ValidationError);
  EXPECT_THROW(parse_repository(R"({"schema_version":"repo/1","records":[
      {"name":"A","reuse_count":1,"node":"N","members":[],"version":0}]})"),
               ValidationError);
}

TEST(Repository, LoadMissingFileFails) {
  EXPECT_THROW(load(scratch("missing")), Error);
}

}  // namespace
}  // namespace cminer
