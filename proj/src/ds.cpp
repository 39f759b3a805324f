#include "cminer/ds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cminer/error.hpp"

namespace cminer {

std::string_view to_string(DSStrategy strategy) {
  switch (strategy) {
    case DSStrategy::raw_out: return "raw_out";
    case DSStrategy::symmetric_sum: return "symmetric_sum";
    case DSStrategy::normalized_symmetric: return "normalized_symmetric";
    case DSStrategy::jaccard: return "jaccard";
  }
  return "unknown";
}

DSStrategy parse_strategy(std::string_view name) {
  for (auto s : {DSStrategy::raw_out, DSStrategy::symmetric_sum,
                 DSStrategy::normalized_symmetric, DSStrategy::jaccard}) {
    if (name == to_string(s)) return s;
  }
  throw ValidationError("unknown DS strategy '" + std::string(name) + "'");
}

bool is_symmetric(DSStrategy strategy) { return strategy != DSStrategy::raw_out; }

DSMatrix::DSMatrix(std::vector<ElementId> order, std::vector<double> values, DSStrategy strategy)
    : order_(std::move(order)), values_(std::move(values)), strategy_(strategy) {
  const std::size_t n = order_.size();
  if (values_.size() != n * n) {
    throw ValidationError("DS matrix has " + std::to_string(values_.size()) +
                          " values, expected " + std::to_string(n * n));
  }
  std::vector<ElementId> sorted = order_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("DS matrix order lists an element twice");
  }
  const bool unit_range =
      strategy_ == DSStrategy::normalized_symmetric || strategy_ == DSStrategy::jaccard;
  for (std::size_t i = 0; i < n; ++i) {
    if (at(i, i) != 0.0) throw ValidationError("DS matrix diagonal must be 0");
    for (std::size_t j = 0; j < n; ++j) {
      const double v = at(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw ValidationError("DS matrix values must be finite and non-negative");
      }
      if (unit_range && v > 1.0) {
        throw ValidationError("DS value above 1 for strategy " + std::string(to_string(strategy_)));
      }
      if (is_symmetric(strategy_) && v != at(j, i)) {
        throw ValidationError("DS matrix must be symmetric for strategy " +
                              std::string(to_string(strategy_)));
      }
    }
  }
}

namespace {

// Dense adjacency weights, row-major.
std::vector<Weight> dense_weights(const DependencyGraph& graph) {
  const std::size_t n = graph.size();
  std::vector<Weight> w(n * n, 0);
  for (const auto& e : graph.edges()) w[e.source * n + e.target] = e.weight;
  return w;
}

// Undirected neighbour sets as bitsets of 64-bit words.
std::vector<std::uint64_t> neighbour_bits(const DependencyGraph& graph, std::size_t words) {
  std::vector<std::uint64_t> bits(graph.size() * words, 0);
  for (const auto& e : graph.edges()) {
    bits[e.source * words + e.target / 64] |= std::uint64_t{1} << (e.target % 64);
    bits[e.target * words + e.source / 64] |= std::uint64_t{1} << (e.source % 64);
  }
  return bits;
}

}  // namespace

DSMatrix compute_ds(const DependencyGraph& graph, DSStrategy strategy) {
  const std::size_t n = graph.size();
  const auto sn = static_cast<std::ptrdiff_t>(n);
  std::vector<double> values(n * n, 0.0);

  std::vector<ElementId> order;
  order.reserve(n);
  for (const auto& e : graph.elements()) order.push_back(e.id);

  if (strategy == DSStrategy::jaccard) {
    const std::size_t words = (n + 63) / 64;
    const auto bits = neighbour_bits(graph, words);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t si = 0; si < sn; ++si) {
      const auto i = static_cast<std::size_t>(si);
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        int inter = 0;
        int uni = 0;
        for (std::size_t k = 0; k < words; ++k) {
          const std::uint64_t a = bits[i * words + k];
          const std::uint64_t b = bits[j * words + k];
          inter += __builtin_popcountll(a & b);
          uni += __builtin_popcountll(a | b);
        }
        values[i * n + j] = uni == 0 ? 0.0 : static_cast<double>(inter) / uni;
      }
    }
    return DSMatrix(std::move(order), std::move(values), strategy);
  }

  const auto w = dense_weights(graph);
  Weight max_sym = 0;
#pragma omp parallel for reduction(max : max_sym) schedule(static)
  for (std::ptrdiff_t si = 0; si < sn; ++si) {
    const auto i = static_cast<std::size_t>(si);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      Weight v = w[i * n + j];
      if (strategy != DSStrategy::raw_out) v += w[j * n + i];
      values[i * n + j] = static_cast<double>(v);
      max_sym = std::max(max_sym, v);
    }
  }

  if (strategy == DSStrategy::normalized_symmetric && max_sym > 0) {
    const double denom = static_cast<double>(max_sym);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t si = 0; si < sn; ++si) {
      const auto i = static_cast<std::size_t>(si);
      for (std::size_t j = 0; j < n; ++j) values[i * n + j] /= denom;
    }
  }
  return DSMatrix(std::move(order), std::move(values), strategy);
}

std::vector<double> distinct_thresholds(const DSMatrix& matrix) {
  std::vector<double> out;
  const std::size_t n = matrix.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && matrix.at(i, j) > 0.0) out.push_back(matrix.at(i, j));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string to_matrix_csv(const DSMatrix& matrix) {
  std::string out;
  const std::size_t n = matrix.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (j) out += ',';
    out += matrix.order()[j].str();
  }
  out += '\n';
  char buf[32];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out += ',';
      std::snprintf(buf, sizeof buf, "%.9g", matrix.at(i, j));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace cminer
