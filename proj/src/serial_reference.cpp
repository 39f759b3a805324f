#include "cminer/serial_reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "cminer/error.hpp"
#include "split_detail.hpp"

namespace cminer::serial {

DSMatrix compute_ds(const DependencyGraph& graph, DSStrategy strategy) {
  const std::size_t n = graph.size();
  std::vector<ElementId> order;
  for (const auto& e : graph.elements()) order.push_back(e.id);
  std::vector<double> values(n * n, 0.0);

  if (strategy == DSStrategy::jaccard) {
    std::vector<std::set<std::size_t>> nb(n);
    for (const auto& e : graph.edges()) {
      nb[e.source].insert(e.target);
      nb[e.target].insert(e.source);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        std::set<std::size_t> uni = nb[i];
        uni.insert(nb[j].begin(), nb[j].end());
        std::size_t inter = 0;
        for (auto k : nb[i]) inter += nb[j].count(k);
        values[i * n + j] =
            uni.empty() ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni.size());
      }
    }
    return DSMatrix(std::move(order), std::move(values), strategy);
  }

  Weight max_sym = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      Weight v = graph.weight(i, j);
      if (strategy != DSStrategy::raw_out) v += graph.weight(j, i);
      values[i * n + j] = static_cast<double>(v);
      max_sym = std::max(max_sym, v);
    }
  }
  if (strategy == DSStrategy::normalized_symmetric && max_sym > 0) {
    for (auto& v : values) v /= static_cast<double>(max_sym);
  }
  return DSMatrix(std::move(order), std::move(values), strategy);
}

std::vector<Clustering> sweep(const DSMatrix& matrix) {
  const auto thresholds = distinct_thresholds(matrix);
  const double top = thresholds.empty() ? 0.0 : thresholds.back();
  std::vector<Clustering> out;
  out.push_back(cluster(matrix, std::nextafter(top, std::numeric_limits<double>::infinity())));
  for (auto it = thresholds.rbegin(); it != thresholds.rend(); ++it) {
    out.push_back(cluster(matrix, *it));
  }
  return out;
}

SplitResult split_exhaustive(const Component& component, const DependencyGraph& graph) {
  if (component.members.size() < 2) {
    throw ValidationError("component '" + component.name +
                          "' needs at least two members to be split");
  }
  if (component.members.size() > 31) {
    throw ValidationError("exhaustive split is limited to 31 members");
  }
  const auto local = detail::local_graph(component, graph);
  const std::size_t m = local.size();
  const std::uint32_t last = (std::uint32_t{1} << (m - 1)) - 1;

  detail::Sides best;
  Weight best_cut = std::numeric_limits<Weight>::max();
  for (std::uint32_t mask = 1; mask <= last; ++mask) {
    auto side = detail::sides_from_mask(m, mask);
    const Weight cut = detail::cut_weight(local, side);
    if (cut < best_cut || (cut == best_cut && detail::first_part_precedes(side, best))) {
      best_cut = cut;
      best = std::move(side);
    }
  }
  return detail::make_split(component, best, best_cut, SplitMethod::exhaustive);
}

}  // namespace cminer::serial
