#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "cminer/clusterer.hpp"
#include "cminer/ds.hpp"
#include "cminer/error.hpp"
#include "cminer/graph.hpp"
#include "cminer/metrics.hpp"
#include "cminer/repository.hpp"
#include "reports.hpp"

namespace cminer::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string input;
  std::string input_format;  // inferred from the extension when empty
  std::string strategy{to_string(kDefaultStrategy)};
  std::optional<double> f_min;
  bool sweep = false;
  std::string cbom_mode = "weighted";
  std::string rule = "max";
  std::optional<long long> p;
  std::string repo;
  std::string format = "text";
  std::string emit_matrix;
  bool no_header = false;

  std::string components;  // components/1 file
  std::string cbom;        // CBOM table file
  bool apply = false;
  bool split = false;
  std::string output;

  std::string name;
  std::string node;
  std::vector<std::string> members;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out) throw Error("write to " + path + " failed");
}

GraphFormat input_format(const RunConfig& c) {
  if (!c.input_format.empty()) return parse_graph_format(c.input_format);
  const auto ext = std::filesystem::path(c.input).extension().string();
  if (ext == ".dot" || ext == ".gv") return GraphFormat::dot;
  if (ext == ".csv") return GraphFormat::csv;
  return GraphFormat::json;
}

DependencyGraph load_graph(const RunConfig& c, std::ostream& err) {
  if (c.input.empty()) throw UsageError("--input is required");
  auto parsed = parse_graph(read_file(c.input), input_format(c));
  for (const auto& w : parsed.warnings) err << "warning: " << w << "\n";
  return std::move(parsed.graph);
}

DependencyGraph load_nonempty_graph(const RunConfig& c, std::ostream& err) {
  auto graph = load_graph(c, err);
  if (graph.empty()) throw ValidationError("empty graph");
  return graph;
}

SelectionRule selection_rule(const RunConfig& c) {
  if (c.rule == "max") {
    if (c.p) throw UsageError("--p is only valid with --rule threshold");
    return SelectionRule::max();
  }
  if (!c.p) throw UsageError("--rule threshold requires --p");
  if (*c.p < 0) throw UsageError("--p must be non-negative");
  return SelectionRule::threshold(*c.p);
}

void require_one_threshold_mode(const RunConfig& c) {
  if (c.sweep == c.f_min.has_value()) {
    throw UsageError("give exactly one of --f-min or --sweep");
  }
}

DSMatrix matrix_for(const DependencyGraph& graph, const RunConfig& c) {
  auto matrix = compute_ds(graph, parse_strategy(c.strategy));
  if (!c.emit_matrix.empty()) write_file(c.emit_matrix, to_matrix_csv(matrix));
  return matrix;
}

ComponentSet obtain_components(const DependencyGraph& graph, const RunConfig& c) {
  if (!c.components.empty()) {
    if (c.f_min) throw UsageError("--components and --f-min are mutually exclusive");
    auto set = parse_components_json(read_file(c.components));
    check_partition(set, graph);
    return set;
  }
  if (!c.f_min) throw UsageError("give a component set with --components or cluster with --f-min");
  return map_to_components(cluster(matrix_for(graph, c), *c.f_min), graph);
}

void header(std::ostream& out, const RunConfig& c, const std::string& command,
            const std::string& detail = {}) {
  if (c.format != "text" || c.no_header) return;
  out << "# component-miner " << kVersion << " " << command;
  if (!detail.empty()) out << " (" << detail << ")";
  out << "\n\n";
}

std::string strategy_detail(const RunConfig& c) { return "strategy=" + c.strategy; }

void emit_json(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

// --- pipeline commands -------------------------------------------------------

int cmd_ingest(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto graph = load_graph(c, err);
  if (c.format == "json") {
    out << to_json_graph(graph);
  } else if (c.format == "dot") {
    out << to_dot_graph(graph);
  } else if (c.format == "csv") {
    out << to_invocation_log(graph);
  } else {
    header(out, c, "ingest", c.input);
    out << text_graph(graph);
  }
  return kExitOk;
}

int cmd_cluster(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_one_threshold_mode(c);
  const auto graph = load_nonempty_graph(c, err);
  const auto matrix = matrix_for(graph, c);
  if (c.sweep) {
    const auto chain = sweep(matrix);
    if (c.format == "json") {
      json entries = json::array();
      for (const auto& cl : chain) entries.push_back(to_json(cl));
      emit_json(out, {{"strategy", c.strategy}, {"sweep", std::move(entries)}});
      return kExitOk;
    }
    header(out, c, "cluster --sweep", strategy_detail(c));
    for (std::size_t k = 0; k < chain.size(); ++k) {
      if (k) out << "\n";
      out << text_clustering(chain[k]);
    }
    return kExitOk;
  }
  const auto clustering = cluster(matrix, *c.f_min);
  if (c.format == "json") {
    emit_json(out, to_json(clustering));
  } else {
    header(out, c, "cluster", strategy_detail(c));
    out << text_clustering(clustering);
  }
  return kExitOk;
}

int cmd_components(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (!c.f_min) throw UsageError("components needs --f-min");
  const auto graph = load_nonempty_graph(c, err);
  const auto set = map_to_components(cluster(matrix_for(graph, c), *c.f_min), graph);
  if (c.format == "json") {
    out << to_components_json(set);
  } else {
    header(out, c, "components", strategy_detail(c) + ", f_min=" + format_real(*c.f_min));
    out << text_components(set);
  }
  return kExitOk;
}

int cmd_cbom(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto rule = selection_rule(c);
  const auto graph = load_nonempty_graph(c, err);
  const auto set = obtain_components(graph, c);
  const auto report = cbom_report(set, graph, parse_cbom_mode(c.cbom_mode), rule);
  if (c.format == "json") {
    emit_json(out, to_json(report));
  } else {
    header(out, c, "cbom");
    out << text_cbom(report);
  }
  return kExitOk;
}

std::vector<CbomEntry> parse_cbom_table(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON document", "byte " + std::to_string(e.byte));
  }
  auto value_of = [](const json& v, const std::string& name) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ValidationError("CBOM of '" + name + "' must be a non-negative integer");
    }
    return static_cast<Weight>(v.get<long long>());
  };
  std::vector<CbomEntry> entries;
  if (doc.is_object() && doc.contains("components") && doc["components"].is_array()) {
    for (const auto& item : doc["components"]) {
      if (!item.is_object() || !item.contains("name") || !item.contains("cbom") ||
          !item["name"].is_string()) {
        throw ParseError("each entry needs a string 'name' and an integer 'cbom'", "/components");
      }
      const auto name = item["name"].get<std::string>();
      entries.push_back({name, value_of(item["cbom"], name)});
    }
  } else if (doc.is_object()) {
    for (const auto& [name, v] : doc.items()) entries.push_back({name, value_of(v, name)});
  } else {
    throw ParseError("expected an object mapping component names to CBOM values", "/");
  }
  return entries;
}

int cmd_reconfigure(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto rule = selection_rule(c);

  if (!c.cbom.empty()) {
    if (!c.input.empty() || !c.components.empty() || c.f_min) {
      throw UsageError("--cbom works on a CBOM table alone; drop --input/--components/--f-min");
    }
    if (c.apply) throw UsageError("--apply needs the graph: use --input with a component set");
    const auto entries = parse_cbom_table(read_file(c.cbom));
    const auto selected = select_reconfigurable(entries, rule);
    if (c.format == "json") {
      json rows = json::array();
      for (const auto& e : entries) rows.push_back({{"name", e.name}, {"cbom", e.cbom}});
      emit_json(out, {{"rule", to_json(rule)},
                      {"components", std::move(rows)},
                      {"reconfigurable", selected}});
    } else {
      header(out, c, "reconfigure", c.cbom);
      std::vector<std::vector<std::string>> rows;
      for (const auto& e : entries) rows.push_back({e.name, std::to_string(e.cbom)});
      out << table({"Component", "CBOM"}, rows) << "Reconfigurable: ";
      for (std::size_t i = 0; i < selected.size(); ++i) out << (i ? ", " : "") << selected[i];
      out << (selected.empty() ? "(none)\n" : "\n");
    }
    return kExitOk;
  }

  const auto graph = load_nonempty_graph(c, err);
  auto set = obtain_components(graph, c);
  const auto report = cbom_report(set, graph, parse_cbom_mode(c.cbom_mode), rule);

  std::vector<SplitResult> splits;
  std::vector<std::string> unsplittable;
  for (const auto& name : report.reconfigurable) {
    const Component* component = set.find(name);
    if (component->members.size() < 2) {
      unsplittable.push_back(name);
      continue;
    }
    splits.push_back(split_component(*component, graph));
  }
  ComponentSet applied = set;
  if (c.apply) {
    for (const auto& s : splits) applied = apply_split(applied, s);
    check_partition(applied, graph);
    if (!c.output.empty()) write_file(c.output, to_components_json(applied));
  }

  if (c.format == "json") {
    json doc = {{"cbom", to_json(report)}, {"splits", json::array()}};
    for (const auto& s : splits) doc["splits"].push_back(to_json(s));
    if (!unsplittable.empty()) doc["unsplittable"] = unsplittable;
    if (c.apply) doc["components"] = to_json(applied);
    emit_json(out, doc);
    return kExitOk;
  }
  header(out, c, "reconfigure");
  out << text_cbom(report);
  for (const auto& s : splits) out << "\n" << text_split(s);
  for (const auto& name : unsplittable) out << "\n" << name << " has a single member and cannot be split\n";
  if (c.apply) out << "\nComponent set after applying the splits\n" << text_components(applied);
  return kExitOk;
}

AnalysisSection analyze_at(const Clustering& clustering, const DependencyGraph& graph,
                           const RunConfig& c, SelectionRule rule) {
  AnalysisSection section;
  section.clustering = clustering;
  section.components = map_to_components(clustering, graph);
  section.cbom = cbom_report(section.components, graph, parse_cbom_mode(c.cbom_mode), rule);
  if (!c.split) return section;

  for (const auto& name : section.cbom.reconfigurable) {
    const Component* component = section.components.find(name);
    if (component->members.size() < 2) {
      section.unsplittable.push_back(name);
      continue;
    }
    auto split = split_component(*component, graph);
    const auto after = apply_split(section.components, split);
    const auto entries = cbom_entries(after, graph, parse_cbom_mode(c.cbom_mode));
    for (const auto& part : split.parts) {
      for (const auto& e : entries) {
        if (e.name == part.name) section.cbom_after.push_back(e);
      }
      section.cohesion_after.push_back(cohesion(part, graph));
    }
    section.splits.push_back(std::move(split));
  }
  return section;
}

RepositoryStore load_or_empty(const std::string& path) {
  if (!std::filesystem::exists(path)) return RepositoryStore{};
  return load(path);
}

int cmd_analyze(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_one_threshold_mode(c);
  const auto rule = selection_rule(c);
  if (!c.repo.empty() && c.sweep) throw UsageError("--repo registers one clustering; use --f-min");
  const auto graph = load_nonempty_graph(c, err);
  const auto matrix = matrix_for(graph, c);

  std::vector<Clustering> clusterings;
  if (c.sweep) {
    clusterings = sweep(matrix);
  } else {
    clusterings.push_back(cluster(matrix, *c.f_min));
  }
  std::vector<AnalysisSection> sections;
  for (const auto& cl : clusterings) sections.push_back(analyze_at(cl, graph, c, rule));

  std::vector<std::string> registered;
  if (!c.repo.empty()) {
    auto store = load_or_empty(c.repo);
    const auto& comps = sections.front().components.components;
    for (std::size_t k = 0; k < comps.size(); ++k) {
      if (store.find(comps[k].name)) continue;
      store.register_component(comps[k].name, "N" + std::to_string(k + 1), comps[k].members);
      registered.push_back(comps[k].name);
    }
    save(store, c.repo);
  }

  if (c.format == "json") {
    json doc = {{"command", "analyze"},
                {"strategy", c.strategy},
                {"cbom_mode", c.cbom_mode},
                {"rule", to_json(rule)},
                {"mode", c.sweep ? "sweep" : "f_min"},
                {"sections", json::array()}};
    for (const auto& s : sections) doc["sections"].push_back(to_json(s));
    if (!c.repo.empty()) doc["registered"] = registered;
    emit_json(out, doc);
    return kExitOk;
  }
  header(out, c, "analyze", strategy_detail(c) + ", cbom=" + c.cbom_mode);
  for (std::size_t k = 0; k < sections.size(); ++k) {
    if (k) out << "\n";
    out << text_section(sections[k]);
  }
  if (!c.repo.empty()) {
    out << "\nRegistered in " << c.repo << ": ";
    for (std::size_t i = 0; i < registered.size(); ++i) out << (i ? ", " : "") << registered[i];
    out << (registered.empty() ? "(nothing new)\n" : "\n");
  }
  return kExitOk;
}

// --- repository -------------------------------------------------------------

std::string repo_path(const RunConfig& c) {
  if (c.repo.empty()) {
    throw UsageError(std::string("no repository: pass --repo or set ") + kRepoEnvVar);
  }
  return c.repo;
}

int cmd_repo_add(const RunConfig& c, std::ostream& out) {
  const auto path = repo_path(c);
  auto store = load_or_empty(path);
  std::vector<ElementId> members;
  for (const auto& m : c.members) members.emplace_back(m);
  store.register_component(c.name, c.node, std::move(members));
  save(store, path);
  if (c.format == "json") {
    emit_json(out, to_json(*store.find(c.name)));
  } else {
    out << "registered " << c.name << "\n";
  }
  return kExitOk;
}

int cmd_repo_touch(const RunConfig& c, std::ostream& out) {
  const auto path = repo_path(c);
  auto store = load_or_empty(path);
  store.record_reuse(c.name);
  save(store, path);
  const auto* record = store.find(c.name);
  if (c.format == "json") {
    emit_json(out, to_json(*record));
  } else {
    out << record->name << " reuse count " << record->reuse_count << "\n";
  }
  return kExitOk;
}

int cmd_repo_list(const RunConfig& c, std::ostream& out) {
  const auto path = repo_path(c);
  const auto rows = load_or_empty(path).reuse_report();
  if (c.format == "json") {
    emit_json(out, to_json(rows));
  } else {
    header(out, c, "repo list", path);
    out << text_reuse(rows);
  }
  return kExitOk;
}

int cmd_repo_show(const RunConfig& c, std::ostream& out) {
  const auto store = load_or_empty(repo_path(c));
  const auto* record = store.find(c.name);
  if (!record) throw LookupError("no component named '" + c.name + "' in the repository");
  if (c.format == "json") {
    emit_json(out, to_json(*record));
  } else {
    out << text_record(*record);
  }
  return kExitOk;
}

// --- option wiring -----------------------------------------------------------

const std::vector<std::string> kStrategies = {"raw_out", "symmetric_sum", "normalized_symmetric",
                                              "jaccard"};

void input_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--input", c.input, "Dependency graph file")->required();
  sub->add_option("--input-format", c.input_format,
                  "json, dot or csv (default: from the file extension)")
      ->check(CLI::IsMember({"json", "dot", "csv"}));
}

void strategy_option(CLI::App* sub, RunConfig& c) {
  sub->add_option("--strategy", c.strategy,
                  "Dependency strength definition; normalized_symmetric keeps "
                  "thresholds in [0,1]")
      ->check(CLI::IsMember(kStrategies))
      ->capture_default_str();
}

void format_option(CLI::App* sub, RunConfig& c, std::vector<std::string> allowed = {"json", "text"}) {
  sub->add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember(std::move(allowed)))
      ->capture_default_str();
  sub->add_flag("--no-header", c.no_header, "Omit the banner line in text reports");
}

void rule_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--cbom-mode", c.cbom_mode, "weighted (invocation weight) or distinct (targets)")
      ->check(CLI::IsMember({"weighted", "distinct"}))
      ->capture_default_str();
  sub->add_option("--rule", c.rule, "max: largest CBOM; threshold: every CBOM > P")
      ->check(CLI::IsMember({"max", "threshold"}))
      ->capture_default_str();
  sub->add_option("--p", c.p, "Scalar P for --rule threshold (no default)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Identify reusable business components by dependency-strength clustering",
               "component-miner"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto* ingest = app.add_subcommand("ingest", "Parse and normalize a dependency graph");
  input_options(ingest, c);
  format_option(ingest, c, {"json", "text", "dot", "csv"});

  auto* cluster_cmd = app.add_subcommand("cluster", "Threshold clustering of the DS matrix");
  input_options(cluster_cmd, c);
  strategy_option(cluster_cmd, c);
  auto* f_min_opt = cluster_cmd->add_option("--f-min", c.f_min, "Minimum dependency strength");
  cluster_cmd->add_flag("--sweep", c.sweep, "Cluster at every distinct DS value")->excludes(f_min_opt);
  cluster_cmd->add_option("--emit-matrix", c.emit_matrix, "Write the DS matrix as CSV");
  format_option(cluster_cmd, c);

  auto* components = app.add_subcommand("components", "Map clusters to named components");
  input_options(components, c);
  strategy_option(components, c);
  components->add_option("--f-min", c.f_min, "Minimum dependency strength")->required();
  components->add_option("--emit-matrix", c.emit_matrix, "Write the DS matrix as CSV");
  format_option(components, c);

  auto* cbom_cmd = app.add_subcommand("cbom", "Coupling (CBOM) per component");
  input_options(cbom_cmd, c);
  strategy_option(cbom_cmd, c);
  cbom_cmd->add_option("--components", c.components, "Component set file (components/1)");
  cbom_cmd->add_option("--f-min", c.f_min, "Cluster inline instead of --components");
  rule_options(cbom_cmd, c);
  format_option(cbom_cmd, c);

  auto* reconfigure = app.add_subcommand("reconfigure", "Select and split over-coupled components");
  reconfigure->add_option("--input", c.input, "Dependency graph file");
  reconfigure->add_option("--input-format", c.input_format, "json, dot or csv")
      ->check(CLI::IsMember({"json", "dot", "csv"}));
  strategy_option(reconfigure, c);
  reconfigure->add_option("--components", c.components, "Component set file (components/1)");
  reconfigure->add_option("--f-min", c.f_min, "Cluster inline instead of --components");
  reconfigure->add_option("--cbom", c.cbom, "Select from a CBOM table instead of a graph");
  rule_options(reconfigure, c);
  reconfigure->add_flag("--apply", c.apply, "Replace each selected component by its split");
  reconfigure->add_option("--output", c.output, "With --apply, write the new component set here");
  format_option(reconfigure, c);

  auto* analyze = app.add_subcommand("analyze", "Run the whole pipeline");
  input_options(analyze, c);
  strategy_option(analyze, c);
  auto* analyze_f_min = analyze->add_option("--f-min", c.f_min, "Minimum dependency strength");
  analyze->add_flag("--sweep", c.sweep, "One section per distinct DS value")->excludes(analyze_f_min);
  rule_options(analyze, c);
  analyze->add_flag("--split", c.split, "Split every selected component in two");
  analyze->add_option("--repo", c.repo, "Register the components in this repository");
  analyze->add_option("--emit-matrix", c.emit_matrix, "Write the DS matrix as CSV");
  format_option(analyze, c);

  auto* repo = app.add_subcommand("repo", "Component management relation");
  repo->require_subcommand(1);
  repo->fallthrough();
  repo->add_option("--repo", c.repo, "Repository file (repo/1)")->envname(kRepoEnvVar);
  auto* repo_add = repo->add_subcommand("add", "Register a component");
  repo_add->add_option("name", c.name, "Component name")->required();
  repo_add->add_option("--node", c.node, "Node label");
  repo_add->add_option("--members", c.members, "Comma separated member ids")->delimiter(',');
  format_option(repo_add, c);
  auto* repo_touch = repo->add_subcommand("touch", "Record one reuse");
  repo_touch->add_option("name", c.name, "Component name")->required();
  format_option(repo_touch, c);
  auto* repo_list = repo->add_subcommand("list", "Components by count of reuse");
  format_option(repo_list, c);
  auto* repo_show = repo->add_subcommand("show", "One repository record");
  repo_show->add_option("name", c.name, "Component name")->required();
  format_option(repo_show, c);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(c, out, err);
    if (cluster_cmd->parsed()) return cmd_cluster(c, out, err);
    if (components->parsed()) return cmd_components(c, out, err);
    if (cbom_cmd->parsed()) return cmd_cbom(c, out, err);
    if (reconfigure->parsed()) return cmd_reconfigure(c, out, err);
    if (analyze->parsed()) return cmd_analyze(c, out, err);
    if (repo_add->parsed()) return cmd_repo_add(c, out);
    if (repo_touch->parsed()) return cmd_repo_touch(c, out);
    if (repo_list->parsed()) return cmd_repo_list(c, out);
    if (repo_show->parsed()) return cmd_repo_show(c, out);
    throw UsageError("no command given");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LookupError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace cminer::cli
