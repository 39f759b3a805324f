#include "cminer/clusterer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include <json.hpp>

#include "cminer/error.hpp"
#include "cminer/union_find.hpp"
#include "parallel.hpp"

namespace cminer {

namespace {

std::vector<std::vector<ElementId>> canonical_clusters(const DSMatrix& matrix, UnionFind& sets) {
  const std::size_t n = matrix.size();
  std::map<std::size_t, std::vector<ElementId>> by_root;
  for (std::size_t i = 0; i < n; ++i) by_root[sets.find(i)].push_back(matrix.order()[i]);

  std::vector<std::vector<ElementId>> clusters;
  clusters.reserve(by_root.size());
  for (auto& [root, members] : by_root) {
    std::sort(members.begin(), members.end());
    clusters.push_back(std::move(members));
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return clusters;
}

}  // namespace

Clustering cluster(const DSMatrix& matrix, double f_min) {
  if (!(f_min >= 0.0)) {
    throw ValidationError("f_min must be non-negative");
  }
  const std::size_t n = matrix.size();
  UnionFind sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (matrix.clustering_value(i, j) >= f_min) sets.unite(i, j);
    }
  }
  Clustering out{f_min, canonical_clusters(matrix, sets), matrix.strategy()};
  assert_partition(out, matrix.order());
  return out;
}

std::vector<Clustering> sweep(const DSMatrix& matrix) {
  const auto thresholds = distinct_thresholds(matrix);
  const double top = thresholds.empty() ? 0.0 : thresholds.back();

  std::vector<double> cuts;
  cuts.reserve(thresholds.size() + 1);
  cuts.push_back(std::nextafter(top, std::numeric_limits<double>::infinity()));
  cuts.insert(cuts.end(), thresholds.rbegin(), thresholds.rend());

  std::vector<Clustering> out(cuts.size());
  const auto count = static_cast<std::ptrdiff_t>(cuts.size());
  detail::ExceptionSlot failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    failure.capture([&] {
      out[static_cast<std::size_t>(k)] = cluster(matrix, cuts[static_cast<std::size_t>(k)]);
    });
  }
  failure.rethrow();
  return out;
}

void assert_partition(const Clustering& clustering, std::span<const ElementId> universe) {
  std::set<ElementId> expected(universe.begin(), universe.end());
  std::set<ElementId> seen;
  const ElementId* previous_head = nullptr;
  for (const auto& members : clustering.clusters) {
    if (members.empty()) throw InvariantError("clustering contains an empty cluster");
    if (!std::is_sorted(members.begin(), members.end())) {
      throw InvariantError("cluster members are not in canonical order");
    }
    if (previous_head && !(*previous_head < members.front())) {
      throw InvariantError("clusters are not in canonical order");
    }
    previous_head = &members.front();
    for (const auto& id : members) {
      if (!expected.contains(id)) throw InvariantError("cluster member '" + id.str() + "' unknown");
      if (!seen.insert(id).second) {
        throw InvariantError("element '" + id.str() + "' appears in two clusters");
      }
    }
  }
  if (seen.size() != expected.size()) throw InvariantError("clustering does not cover all elements");
}

ComponentSet map_to_components(const Clustering& clustering, const DependencyGraph& graph) {
  std::vector<ElementId> universe;
  universe.reserve(graph.size());
  for (const auto& e : graph.elements()) universe.push_back(e.id);
  try {
    assert_partition(clustering, universe);
  } catch (const InvariantError& e) {
    throw ValidationError(std::string("clustering does not match the graph: ") + e.what());
  }

  std::vector<std::string> base_names;
  for (std::size_t k = 0; k < clustering.clusters.size(); ++k) {
    std::map<std::string, std::size_t> votes;
    for (const auto& id : clustering.clusters[k]) {
      const auto& element = graph.elements()[*graph.index_of(id.str())];
      if (element.container) ++votes[*element.container];
    }
    std::string name = "C" + std::to_string(k + 1);
    std::size_t best = 0;
    bool tied = false;
    for (const auto& [label, count] : votes) {
      if (count > best) {
        best = count;
        name = label;
        tied = false;
      } else if (count == best) {
        tied = true;
      }
    }
    if (tied || votes.empty()) name = "C" + std::to_string(k + 1);
    base_names.push_back(std::move(name));
  }

  ComponentSet set;
  set.source_f_min = clustering.f_min;
  set.strategy = clustering.strategy;
  std::set<std::string> taken;
  for (std::size_t k = 0; k < clustering.clusters.size(); ++k) {
    std::string name = base_names[k];
    for (int suffix = 2; taken.contains(name); ++suffix) {
      name = base_names[k] + "#" + std::to_string(suffix);
    }
    taken.insert(name);
    set.components.push_back({std::move(name), clustering.clusters[k]});
  }
  return set;
}

std::string to_clustering_json(const Clustering& clustering) {
  nlohmann::json clusters = nlohmann::json::array();
  for (const auto& members : clustering.clusters) {
    nlohmann::json ids = nlohmann::json::array();
    for (const auto& id : members) ids.push_back(id.str());
    clusters.push_back(std::move(ids));
  }
  nlohmann::json doc = {{"f_min", clustering.f_min},
                        {"strategy", to_string(clustering.strategy)},
                        {"clusters", std::move(clusters)}};
  return doc.dump(2) + "\n";
}

}  // namespace cminer
