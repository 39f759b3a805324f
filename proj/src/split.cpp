#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <numeric>

#include "cminer/error.hpp"
#include "cminer/metrics.hpp"
#include "parallel.hpp"
#include "split_detail.hpp"

namespace cminer {

namespace detail {

LocalGraph local_graph(const Component& component, const DependencyGraph& graph) {
  std::vector<ElementId> sorted = component.members;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("component '" + component.name + "' lists a member twice");
  }
  LocalGraph local;
  std::vector<std::size_t> position(graph.size(), std::numeric_limits<std::size_t>::max());
  for (const auto& id : sorted) {
    auto idx = graph.index_of(id.str());
    if (!idx) {
      throw ValidationError("component '" + component.name + "' names unknown element '" +
                            id.str() + "'");
    }
    position[*idx] = local.members.size();
    local.members.push_back(*idx);
  }
  const std::size_t m = local.members.size();
  local.link.assign(m * m, 0);
  for (const auto& e : graph.edges()) {
    const std::size_t a = position[e.source];
    const std::size_t b = position[e.target];
    if (a < m && b < m) {
      local.link[a * m + b] += e.weight;
      local.link[b * m + a] += e.weight;
    }
  }
  return local;
}

Weight cut_weight(const LocalGraph& local, const Sides& side) {
  const std::size_t m = local.size();
  Weight cut = 0;
  for (std::size_t a = 0; a < m; ++a) {
    if (side[a]) continue;
    for (std::size_t b = 0; b < m; ++b) {
      if (side[b]) cut += local.at(a, b);
    }
  }
  return cut;
}

bool first_part_precedes(const Sides& a, const Sides& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  const std::size_t m = a.size();
  while (true) {
    while (i < m && a[i]) ++i;
    while (j < m && b[j]) ++j;
    if (i == m || j == m) return i == m && j != m;
    if (i != j) return i < j;
    ++i;
    ++j;
  }
}

Sides sides_from_mask(std::size_t m, std::uint32_t mask) {
  Sides side(m, 0);
  for (std::size_t k = 1; k < m; ++k) side[k] = static_cast<char>((mask >> (k - 1)) & 1u);
  return side;
}

SplitResult make_split(const Component& component, const Sides& side, Weight cut,
                       SplitMethod method) {
  std::vector<ElementId> sorted = component.members;
  std::sort(sorted.begin(), sorted.end());
  SplitResult result;
  result.original = component;
  result.parts[0].name = component.name + "_1";
  result.parts[1].name = component.name + "_2";
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    result.parts[side[a] ? 1 : 0].members.push_back(sorted[a]);
  }
  result.cut_weight = cut;
  result.method = method;
  if (result.parts[0].members.empty() || result.parts[1].members.empty()) {
    throw InvariantError("split produced an empty part");
  }
  return result;
}

}  // namespace detail

namespace {

using detail::LocalGraph;
using detail::Sides;

struct Candidate {
  Weight cut = std::numeric_limits<Weight>::max();
  std::uint32_t mask = 0;
};

// first_part_precedes() on masks. Bit k set moves member k + 1 to the second
// part; member 0 is always in the first.
bool mask_precedes(std::uint32_t a, std::uint32_t b, std::uint32_t full) {
  const std::uint32_t diff = a ^ b;
  if (diff == 0) return false;
  const int d = __builtin_ctz(diff);
  const std::uint32_t above = full & ~((std::uint32_t{2} << d) - 1);
  if (!((a >> d) & 1u)) return (~b & above) != 0;  // a keeps the member, b does not
  return (~a & above) == 0;
}

bool better(const Candidate& x, const Candidate& y, std::uint32_t full) {
  if (x.cut != y.cut) return x.cut < y.cut;
  return mask_precedes(x.mask, y.mask, full);
}

SplitResult split_exhaustive_parallel(const Component& component, const LocalGraph& local) {
  const std::size_t m = local.size();
  const std::uint32_t full = (std::uint32_t{1} << (m - 1)) - 1;
  const auto last = static_cast<std::int64_t>(full);
  std::vector<Candidate> best_per_thread;

#pragma omp parallel
  {
    Candidate best;
#pragma omp for schedule(static)
    for (std::int64_t mask = 1; mask <= last; ++mask) {
      Weight cut = 0;
      for (std::size_t a = 0; a < m; ++a) {
        if (a > 0 && ((mask >> (a - 1)) & 1)) continue;
        for (std::size_t b = 1; b < m; ++b) {
          if ((mask >> (b - 1)) & 1) cut += local.at(a, b);
        }
      }
      const Candidate here{cut, static_cast<std::uint32_t>(mask)};
      if (better(here, best, full)) best = here;
    }
#pragma omp critical
    best_per_thread.push_back(best);
  }

  Candidate best;
  for (const auto& c : best_per_thread) {
    if (better(c, best, full)) best = c;
  }
  return detail::make_split(component, detail::sides_from_mask(m, best.mask), best.cut,
                            SplitMethod::exhaustive);
}

// Best single-member move or pair swap; returns false when nothing lowers the cut.
bool improve(const LocalGraph& local, Sides& side) {
  const std::size_t m = local.size();
  std::vector<Weight> gain(m, 0);  // external minus internal connection
  std::array<std::size_t, 2> count{0, 0};
  for (std::size_t a = 0; a < m; ++a) {
    ++count[static_cast<std::size_t>(side[a])];
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      gain[a] += side[a] == side[b] ? -local.at(a, b) : local.at(a, b);
    }
  }

  Weight best_gain = 0;
  std::size_t move_a = m;
  std::size_t move_b = m;
  for (std::size_t a = 0; a < m; ++a) {
    if (count[static_cast<std::size_t>(side[a])] > 1 && gain[a] > best_gain) {
      best_gain = gain[a];
      move_a = a;
      move_b = m;
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (side[a]) continue;
    for (std::size_t b = 0; b < m; ++b) {
      if (!side[b]) continue;
      const Weight g = gain[a] + gain[b] - 2 * local.at(a, b);
      if (g > best_gain) {
        best_gain = g;
        move_a = a;
        move_b = b;
      }
    }
  }
  if (move_a == m) return false;
  side[move_a] ^= 1;
  if (move_b != m) side[move_b] ^= 1;
  return true;
}

void normalize(Sides& side) {
  if (side[0]) {
    for (auto& s : side) s ^= 1;
  }
}

SplitResult split_heuristic(const Component& component, const LocalGraph& local) {
  const std::size_t m = local.size();
  std::vector<Sides> seeds;

  Sides halves(m, 0);
  for (std::size_t a = (m + 1) / 2; a < m; ++a) halves[a] = 1;
  seeds.push_back(std::move(halves));

  std::vector<Weight> degree(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) degree[a] += local.at(a, b);
  }
  std::vector<std::size_t> by_degree(m);
  std::iota(by_degree.begin(), by_degree.end(), std::size_t{0});
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](std::size_t a, std::size_t b) { return degree[a] < degree[b]; });
  constexpr std::size_t kSingletonSeeds = 16;
  for (std::size_t k = 0; k < std::min(m, kSingletonSeeds); ++k) {
    Sides alone(m, 0);
    alone[by_degree[k]] = 1;
    normalize(alone);
    seeds.push_back(std::move(alone));
  }

  const auto count = static_cast<std::ptrdiff_t>(seeds.size());
  std::vector<Weight> cuts(seeds.size());
  const std::size_t max_steps = m * m + 16;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t s = 0; s < count; ++s) {
    Sides& side = seeds[static_cast<std::size_t>(s)];
    for (std::size_t step = 0; step < max_steps && improve(local, side); ++step) {
    }
    normalize(side);
    cuts[static_cast<std::size_t>(s)] = detail::cut_weight(local, side);
  }

  std::size_t best = 0;
  for (std::size_t s = 1; s < seeds.size(); ++s) {
    if (cuts[s] < cuts[best] ||
        (cuts[s] == cuts[best] && detail::first_part_precedes(seeds[s], seeds[best]))) {
      best = s;
    }
  }
  return detail::make_split(component, seeds[best], cuts[best], SplitMethod::heuristic);
}

}  // namespace

SplitResult split_component(const Component& component, const DependencyGraph& graph) {
  if (component.members.size() < 2) {
    throw ValidationError("component '" + component.name +
                          "' needs at least two members to be split");
  }
  const LocalGraph local = detail::local_graph(component, graph);
  if (local.size() <= kExhaustiveSplitLimit) return split_exhaustive_parallel(component, local);
  return split_heuristic(component, local);
}

}  // namespace cminer
