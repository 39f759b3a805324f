#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cminer/clusterer.hpp"
#include "cminer/metrics.hpp"
#include "cminer/repository.hpp"

namespace cminer::cli {

// Everything analyze reports for one threshold.
struct AnalysisSection {
  Clustering clustering;
  ComponentSet components;
  CbomReport cbom;
  std::vector<SplitResult> splits;
  std::vector<std::string> unsplittable;  // selected but single-member
  std::vector<CbomEntry> cbom_after;      // per split, the two parts
  std::vector<double> cohesion_after;     // per split, the two parts
};

nlohmann::json to_json(const Clustering& clustering);
nlohmann::json to_json(const ComponentSet& set);
nlohmann::json to_json(const CbomReport& report);
nlohmann::json to_json(const SplitResult& split);
nlohmann::json to_json(const SelectionRule& rule);
nlohmann::json to_json(const AnalysisSection& section);
nlohmann::json to_json(const std::vector<ReuseRow>& rows);
nlohmann::json to_json(const ComponentRecord& record);

std::string text_graph(const DependencyGraph& graph);
std::string text_clustering(const Clustering& clustering);
std::string text_components(const ComponentSet& set);
std::string text_cbom(const CbomReport& report);
std::string text_split(const SplitResult& split);
std::string text_section(const AnalysisSection& section);
std::string text_reuse(const std::vector<ReuseRow>& rows);
std::string text_record(const ComponentRecord& record);

std::string format_real(double value);

// Fixed-width table: columns padded to their widest cell, two spaces apart.
std::string table(const std::vector<std::string>& header,
                  const std::vector<std::vector<std::string>>& rows);

}  // namespace cminer::cli
