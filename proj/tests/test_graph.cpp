#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "cminer/error.hpp"
#include "cminer/graph.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace cminer {
namespace {

using testing::Rng;

std::string fixture_text(const std::string& name) {
  std::ifstream in(std::string(CMINER_FIXTURE_DIR) + "/" + name);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Weight edge_weight(const DependencyGraph& g, const std::string& a, const std::string& b) {
  return g.weight(*g.index_of(a), *g.index_of(b));
}

TEST(ElementId, RejectsEmptyAndPaddedNames) {
  EXPECT_THROW(ElementId(""), ValidationError);
  EXPECT_THROW(ElementId(" DAO.EmployeeDao"), ValidationError);
  EXPECT_THROW(ElementId("DAO.EmployeeDao\t"), ValidationError);
  EXPECT_EQ(ElementId("DAO.EmployeeDao").str(), "DAO.EmployeeDao");
}

TEST(GraphBuilder, RejectsDuplicateMethods) {
  GraphBuilder b;
  EXPECT_THROW(b.add_element({ElementId("A"), std::nullopt, {"m1", "m1"}}), ValidationError);
}

TEST(JsonGraph, EmptyDocument) {
  const auto parsed = parse_json_graph(R"({"elements":[],"edges":[]})");
  EXPECT_TRUE(parsed.graph.empty());
  EXPECT_TRUE(parsed.graph.edges().empty());
}

TEST(JsonGraph, HrPortalHasThirteenTieredElements) {
  const auto g = parse_json_graph(fixture_text("hr_portal.json")).graph;
  ASSERT_EQ(g.size(), 13u);
  std::map<std::string, int> tiers;
  for (const auto& e : g.elements()) ++tiers[e.container.value()];
  EXPECT_EQ(tiers["WBR"], 5);
  EXPECT_EQ(tiers["BR"], 3);
  EXPECT_EQ(tiers["DAO"], 5);
}

TEST(JsonGraph, DuplicateEdgesMergeBySum) {
  const auto g = parse_json_graph(R"({"elements":[{"id":"A"},{"id":"B"}],
    "edges":[{"source":"A","target":"B","weight":2},{"source":"A","target":"B","weight":3}]})")
                     .graph;
  ASSERT_EQ(g.edges().size(), 1u);
  EXPECT_EQ(edge_weight(g, "A", "B"), 5);
}

TEST(JsonGraph, SelfEdgeDroppedWithWarning) {
  const auto parsed = parse_json_graph(
      R"({"elements":[{"id":"A"}],"edges":[{"source":"A","target":"A","weight":4}]})");
  EXPECT_TRUE(parsed.graph.edges().empty());
  ASSERT_EQ(parsed.warnings.size(), 1u);
  EXPECT_NE(parsed.warnings[0].find("/edges/0"), std::string::npos);
}

TEST(JsonGraph, ErrorsCarryLocation) {
  try {
    parse_json_graph("{\n  \"elements\": [,]\n}");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(e.location().find("line 2"), std::string::npos) << e.what();
  }
  try {
    parse_json_graph(R"({"elements":[{"id":"A"}],"edges":[{"source":"A","target":"Z","weight":1}]})");
    FAIL() << "expected an unknown-element error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("/edges/0"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("'Z'"), std::string::npos) << e.what();
  }
  EXPECT_THROW(
      parse_json_graph(
          R"({"elements":[{"id":"A"},{"id":"B"}],"edges":[{"source":"A","target":"B","weight":0}]})"),
      ValidationError);
  EXPECT_THROW(
      parse_json_graph(
          R"({"elements":[{"id":"A"},{"id":"B"}],"edges":[{"source":"A","target":"B","weight":-2}]})"),
      ValidationError);
  EXPECT_THROW(
      parse_json_graph(
          R"({"elements":[{"id":"A"},{"id":"B"}],"edges":[{"source":"A","target":"B","weight":1.5}]})"),
      ParseError);
  EXPECT_THROW(parse_json_graph(R"({"schema":"depgraph/9","elements":[],"edges":[]})"), ParseError);
  EXPECT_THROW(parse_json_graph(R"({"elements":[{"id":"A"},{"id":"A"}],"edges":[]})"),
               ValidationError);
}

TEST(DotGraph, EmptyDigraph) { EXPECT_TRUE(parse_dot_graph("digraph g {}").graph.empty()); }

TEST(DotGraph, SingleWeightedEdge) {
  const auto g = parse_dot_graph("digraph g { A -> B [weight=3]; }").graph;
  EXPECT_EQ(g.size(), 2u);
  ASSERT_EQ(g.edges().size(), 1u);
  EXPECT_EQ(edge_weight(g, "A", "B"), 3);
}

TEST(DotGraph, RepeatedStatementsCount) {
  const auto g = parse_dot_graph("digraph g { A -> B; A -> B; }").graph;
  ASSERT_EQ(g.edges().size(), 1u);
  EXPECT_EQ(edge_weight(g, "A", "B"), 2);
}

TEST(DotGraph, NodeMetadataChainsAndComments) {
  const auto parsed = parse_dot_graph(R"(
    // leading comment
    digraph "hr" {
      rankdir = LR;
      "dao.EmployeeDao" [container="DAO", methods="find,save", shape=box];
      web.Login -> biz.Service -> "dao.EmployeeDao" [weight=4, color=red];
      /* block
         comment */
    }
  )");
  const auto& g = parsed.graph;
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(edge_weight(g, "web.Login", "biz.Service"), 4);
  EXPECT_EQ(edge_weight(g, "biz.Service", "dao.EmployeeDao"), 4);
  const auto& dao = g.elements()[*g.index_of("dao.EmployeeDao")];
  EXPECT_EQ(dao.container, "DAO");
  EXPECT_EQ(dao.method_names, (std::vector<std::string>{"find", "save"}));
  // rankdir, shape and color are ignored, not fatal.
  EXPECT_EQ(parsed.warnings.size(), 3u);
}

TEST(DotGraph, Errors) {
  EXPECT_THROW(parse_dot_graph("graph g { A -- B; }"), ParseError);
  EXPECT_THROW(parse_dot_graph("digraph g { A -- B; }"), ParseError);
  EXPECT_THROW(parse_dot_graph("digraph g { A -> B [weight=x]; }"), ParseError);
  EXPECT_THROW(parse_dot_graph("digraph g { A -> B [weight=0]; }"), ValidationError);
  EXPECT_THROW(parse_dot_graph("digraph g { subgraph s { A } }"), ParseError);
  try {
    parse_dot_graph("digraph g {\n  A -> ;\n}");
    FAIL() << "expected a syntax error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location(), "line 2, column 8");
  }
}

TEST(InvocationLog, HeaderOnlyIsEmpty) {
  EXPECT_TRUE(ingest_invocation_log("caller,callee,count\n").graph.empty());
}

TEST(InvocationLog, CountsSumPerPair) {
  const auto g = ingest_invocation_log("caller,callee,count\nW1,D1,4\nW1,D1,6\n").graph;
  ASSERT_EQ(g.edges().size(), 1u);
  EXPECT_EQ(edge_weight(g, "W1", "D1"), 10);
}

TEST(InvocationLog, SelfCallKeepsElementDropsEdge) {
  const auto g = ingest_invocation_log("caller,callee,count\nA,A,5\n").graph;
  EXPECT_EQ(g.size(), 1u);
  EXPECT_TRUE(g.edges().empty());
}

TEST(InvocationLog, CountDefaultsToOne) {
  const auto g = ingest_invocation_log("caller,callee\nA,B\nA,B\n").graph;
  EXPECT_EQ(edge_weight(g, "A", "B"), 2);
  const auto h = ingest_invocation_log("caller,callee,count\r\nA,B,\r\nA,B\r\n").graph;
  EXPECT_EQ(edge_weight(h, "A", "B"), 2);
}

TEST(InvocationLog, Errors) {
  EXPECT_THROW(ingest_invocation_log(""), ParseError);
  EXPECT_THROW(ingest_invocation_log("A,B,3\n"), ParseError);
  EXPECT_THROW(ingest_invocation_log("caller,callee,count\n,B,1\n"), ParseError);
  EXPECT_THROW(ingest_invocation_log("caller,callee,count\nA,,1\n"), ParseError);
  EXPECT_THROW(ingest_invocation_log("caller,callee,count\nA,B,two\n"), ParseError);
  try {
    ingest_invocation_log("caller,callee,count\nA,B,1\nA,B,x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location(), "line 3");
  }
}

TEST(InvocationLog, WeightConservationProperty) {
  Rng rng(7);
  std::uniform_int_distribution<int> pick(0, 5);
  std::uniform_int_distribution<int> count(1, 20);
  for (int round = 0; round < 50; ++round) {
    std::string csv = "caller,callee,count\n";
    Weight total = 0;
    Weight self = 0;
    for (int row = 0; row < 30; ++row) {
      const int a = pick(rng);
      const int b = pick(rng);
      const int c = count(rng);
      csv += "E" + std::to_string(a) + ",E" + std::to_string(b) + "," + std::to_string(c) + "\n";
      total += c;
      if (a == b) self += c;
    }
    EXPECT_EQ(ingest_invocation_log(csv).graph.total_weight(), total - self);
  }
}

TEST(GraphFormats, AllIngestPathsAgree) {
  Rng rng(11);
  for (int round = 0; round < 10; ++round) {
    // CSV cannot express isolated elements or metadata.
    auto g = testing::random_graph(rng, {.min_elements = 2, .max_elements = 10,
                                         .edge_probability = 0.5, .metadata = false});
    GraphBuilder trimmed;
    for (const auto& e : g.edges()) trimmed.touch_element(g.id(e.source));
    for (const auto& e : g.edges()) trimmed.touch_element(g.id(e.target));
    for (const auto& e : g.edges()) trimmed.add_edge(g.id(e.source), g.id(e.target), e.weight);
    g = std::move(trimmed).build();

    const auto from_json = parse_json_graph(to_json_graph(g)).graph;
    const auto from_dot = parse_dot_graph(to_dot_graph(g)).graph;
    const auto from_csv = ingest_invocation_log(to_invocation_log(g)).graph;
    EXPECT_EQ(from_json, g);
    EXPECT_EQ(from_dot, g);
    EXPECT_EQ(from_csv, g);
  }
}

TEST(GraphFormats, RoundTripIsFixedPoint) {
  Rng rng(3);
  for (int round = 0; round < 30; ++round) {
    const auto g = testing::random_graph(rng, {.min_elements = 0});
    EXPECT_EQ(parse_json_graph(to_json_graph(g)).graph, g);
    EXPECT_EQ(parse_dot_graph(to_dot_graph(g)).graph, g);
  }
}

TEST(DotGraph, QuotedIdsWithEscapesRoundTrip) {
  GraphBuilder b;
  b.add_element({ElementId("a \"quoted\" \\ name"), std::string("tier \"x\""), {"run"}});
  b.add_element({ElementId("digraph"), std::nullopt, {}});
  b.add_edge(ElementId("a \"quoted\" \\ name"), ElementId("digraph"), 7);
  const auto g = std::move(b).build();
  EXPECT_EQ(parse_dot_graph(to_dot_graph(g)).graph, g);
}

TEST(ExecutionOrders, SingleMethod) {
  const std::vector<std::string> methods{"m1"};
  EXPECT_EQ(enumerate_execution_orders(methods), (std::vector<std::string>{"m1()"}));
}

TEST(ExecutionOrders, TwoMethodsGiveTheFourListedForms) {
  const std::vector<std::string> methods{"m1", "m2"};
  EXPECT_EQ(enumerate_execution_orders(methods),
            (std::vector<std::string>{"m1()", "m1(m2())", "m2()", "m2(m1())"}));
}

TEST(ExecutionOrders, ThreeMethods) {
  const std::vector<std::string> methods{"a", "b", "c"};
  const auto orders = enumerate_execution_orders(methods);
  EXPECT_EQ(orders.size(), testing::count_ordered_sequences(3));
  EXPECT_EQ(orders.size(), 15u);
  EXPECT_EQ(orders[1], "a(b())");
  EXPECT_EQ(orders[2], "a(b(c()))");
  EXPECT_EQ(orders.back(), "c(b(a()))");
}

TEST(ExecutionOrders, CountsMatchPermutationOracle) {
  for (std::size_t k = 1; k <= 6; ++k) {
    std::vector<std::string> methods;
    for (std::size_t i = 0; i < k; ++i) methods.push_back("m" + std::to_string(i + 1));
    EXPECT_EQ(enumerate_execution_orders(methods).size(), testing::count_ordered_sequences(k))
        << "k=" << k;
  }
}

TEST(ExecutionOrders, Errors) {
  EXPECT_THROW(enumerate_execution_orders(std::vector<std::string>{}), ValidationError);
  EXPECT_THROW(enumerate_execution_orders(std::vector<std::string>{"m", "m"}), ValidationError);
}

}  // namespace
}  // namespace cminer
