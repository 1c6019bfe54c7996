// Copyright 2026-present the knntest authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "knntest/ground_truth.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "knntest/error.hpp"
#include "knntest/parallel.hpp"
#include "knn_index.hpp"

namespace knntest {
namespace {

void check_k(std::size_t n, std::uint32_t k) {
  if (k < 1 || k >= n) {
    throw UsageError("k must satisfy 1 <= k < n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
  }
}

void check_vertex(const GeometricGraph& g, VertexId v) {
  if (v >= g.n()) {
    throw UsageError("vertex " + std::to_string(v) + " out of range");
  }
}

/// Squared distances from v to every vertex; entry v is left unused.
void distances_from(const PointSet& points, VertexId v, std::vector<double>& out) {
  const std::size_t n = points.size();
  const std::size_t dim = points.dim();
  out.resize(n);
  const double* pv = points.row(v);
  for (std::size_t u = 0; u < n; ++u) {
    out[u] = dist2_unchecked(pv, points.row(static_cast<VertexId>(u)), dim);
  }
}

/// k-th smallest of dist over u != v.
double kth_smallest(const std::vector<double>& dist, VertexId v, std::uint32_t k, std::vector<double>& scratch) {
  scratch.clear();
  scratch.reserve(dist.size());
  for (std::size_t u = 0; u < dist.size(); ++u) {
    if (u != v) {
      scratch.push_back(dist[u]);
    }
  }
  std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end());
  return scratch[k - 1];
}

std::vector<VertexId> sorted_copy(std::span<const VertexId> ids) {
  std::vector<VertexId> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool contains(const std::vector<VertexId>& sorted, VertexId u) {
  return std::binary_search(sorted.begin(), sorted.end(), u);
}

std::size_t insertions_needed(std::uint32_t k, std::span<const VertexId> inside, std::span<const VertexId> tied,
                              const std::vector<VertexId>& sorted_neighbors) {
  std::size_t missing_inside = 0;
  for (VertexId u : inside) {
    if (!contains(sorted_neighbors, u)) {
      ++missing_inside;
    }
  }
  std::size_t tied_present = 0;
  for (VertexId u : tied) {
    if (contains(sorted_neighbors, u)) {
      ++tied_present;
    }
  }
  const std::size_t filled = inside.size() + tied_present;
  return missing_inside + (filled >= k ? 0 : k - filled);
}

}  // namespace

std::size_t num_nearer(const GeometricGraph& g, VertexId v, VertexId w) {
  check_vertex(g, v);
  check_vertex(g, w);
  if (v == w) {
    throw UsageError("num_nearer: v and w must differ");
  }
  const auto& points = g.points();
  const double reference = dist2_unchecked(points.row(v), points.row(w), points.dim());
  std::size_t count = 0;
  for (VertexId u = 0; u < g.n(); ++u) {
    if (u != v && dist2_unchecked(points.row(v), points.row(u), points.dim()) < reference) {
      ++count;
    }
  }
  return count;
}

std::vector<VertexId> k_nearest_set(const GeometricGraph& g, VertexId v, std::uint32_t k) {
  check_vertex(g, v);
  check_k(g.n(), k);
  std::vector<double> dist;
  std::vector<double> scratch;
  distances_from(g.points(), v, dist);
  // u has at most k-1 strictly nearer vertices iff dist(u) <= k-th distance.
  const double kth = kth_smallest(dist, v, k, scratch);
  std::vector<VertexId> out;
  for (VertexId u = 0; u < g.n(); ++u) {
    if (u != v && dist[u] <= kth) {
      out.push_back(u);
    }
  }
  return out;
}

WitnessSet witnesses_of(const GeometricGraph& g, VertexId v, std::uint32_t k) {
  check_vertex(g, v);
  check_k(g.n(), k);
  std::vector<double> dist;
  std::vector<double> scratch;
  distances_from(g.points(), v, dist);
  const double kth = kth_smallest(dist, v, k, scratch);
  const auto neighbors = sorted_copy(g.neighbors(v));

  WitnessSet result;
  result.vertex = v;
  std::vector<VertexId> inside;
  std::vector<VertexId> tied;
  for (VertexId u = 0; u < g.n(); ++u) {
    if (u == v || dist[u] > kth) {
      continue;
    }
    (dist[u] < kth ? inside : tied).push_back(u);
    if (!contains(neighbors, u)) {
      result.witnesses.push_back(u);
    }
  }
  result.degree_deficit = g.degree(v) < k ? k - g.degree(v) : 0;
  result.required_insertions = insertions_needed(k, inside, tied, neighbors);
  return result;
}

GeometricGraph build_exact_knn_graph(const PointSet& points, std::uint32_t k) {
  const std::size_t n = points.size();
  if (n <= k || k < 1) {
    throw UsageError("build_exact_knn_graph: need n > k >= 1 (n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                     ")");
  }
  const detail::KnnIndex index(points);
  AdjacencyList adjacency(n);
  parallel_for(n, [&](std::size_t index_v) {
    const auto v = static_cast<VertexId>(index_v);
    // Ties at the k-th distance go to the smaller id.
    std::vector<std::pair<double, VertexId>> candidates;
    index.within(v, index.kth_dist2(v, k), [&](VertexId u, double d) { candidates.emplace_back(d, u); });
    std::sort(candidates.begin(), candidates.end());
    auto& list = adjacency[v];
    list.reserve(k);
    for (std::uint32_t i = 0; i < k; ++i) {
      list.push_back(candidates[i].second);
    }
  });
  return GeometricGraph(points, std::move(adjacency), k);
}

KnnReference::KnnReference(const PointSet& points, std::uint32_t k) : k_(k) {
  const std::size_t n = points.size();
  check_k(n, k);
  kth_dist2_.resize(n);
  std::vector<std::vector<VertexId>> inside(n);
  std::vector<std::vector<VertexId>> tied(n);
  const detail::KnnIndex index(points);
  parallel_for(n, [&](std::size_t index_v) {
    const auto v = static_cast<VertexId>(index_v);
    const double kth = index.kth_dist2(v, k);
    kth_dist2_[v] = kth;
    index.within(v, kth, [&](VertexId u, double d) { (d < kth ? inside[v] : tied[v]).push_back(u); });
    std::sort(inside[v].begin(), inside[v].end());
    std::sort(tied[v].begin(), tied[v].end());
  });
  inside_offsets_.assign(n + 1, 0);
  tied_offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    inside_offsets_[v + 1] = inside_offsets_[v] + inside[v].size();
    tied_offsets_[v + 1] = tied_offsets_[v] + tied[v].size();
  }
  inside_.reserve(inside_offsets_[n]);
  tied_.reserve(tied_offsets_[n]);
  for (std::size_t v = 0; v < n; ++v) {
    inside_.insert(inside_.end(), inside[v].begin(), inside[v].end());
    tied_.insert(tied_.end(), tied[v].begin(), tied[v].end());
  }
}

std::size_t KnnReference::required_insertions(VertexId v, std::span<const VertexId> neighbors) const {
  return insertions_needed(k_, strictly_inside(v), tied(v), sorted_copy(neighbors));
}

DistanceReport epsilon_distance(const GeometricGraph& g, std::uint32_t k, const EdgeBudget& budget,
                                std::optional<double> epsilon) {
  check_k(g.n(), k);
  return epsilon_distance(g, KnnReference(g.points(), k), budget, epsilon);
}

DistanceReport epsilon_distance(const GeometricGraph& g, const KnnReference& reference, const EdgeBudget& budget,
                                std::optional<double> epsilon) {
  if (reference.n() != g.n()) {
    throw UsageError("epsilon_distance: reference was built for a different point set");
  }
  if (!(budget.d > 0.0)) {
    throw UsageError("epsilon_distance: d must be positive");
  }
  if (epsilon && !(*epsilon > 0.0)) {
    throw UsageError("epsilon_distance: epsilon must be positive");
  }
  const std::uint32_t k = reference.k();
  DistanceReport report;
  report.budget = budget;
  std::size_t low_degree = 0;
  const double degree_cap = epsilon ? 100.0 * k / *epsilon : 0.0;
  for (VertexId v = 0; v < g.n(); ++v) {
    const std::size_t m = reference.required_insertions(v, g.neighbors(v));
    report.min_edits += m;
    if (m > 0) {
      ++report.incomplete_count;
      if (epsilon && static_cast<double>(g.degree(v)) <= degree_cap) {
        ++low_degree;
      }
    }
  }
  report.epsilon_distance =
      static_cast<double>(report.min_edits) / (budget.d * static_cast<double>(g.n()));
  if (epsilon) {
    report.low_degree_incomplete_count = low_degree;
  }
  return report;
}

std::size_t max_shared_knn(const PointSet& points, std::uint32_t k) {
  const std::size_t n = points.size();
  if (n <= k || k < 1) {
    throw UsageError("max_shared_knn: need n > k >= 1");
  }
  const detail::KnnIndex index(points);
  std::vector<std::size_t> shared(n, 0);
  for (VertexId q = 0; q < n; ++q) {
    index.within(q, index.kth_dist2(q, k), [&](VertexId p, double) { ++shared[p]; });
  }
  return *std::max_element(shared.begin(), shared.end());
}

bool confirms_rejection(const GeometricGraph& g, std::uint32_t k, VertexId v, std::optional<VertexId> witness) {
  if (v >= g.n()) {
    return false;
  }
  if (g.degree(v) < k) {
    return true;
  }
  if (!witness) {
    return false;
  }
  const VertexId u = *witness;
  if (u >= g.n() || u == v || g.has_edge(v, u)) {
    return false;
  }
  std::vector<double> radii;
  for (VertexId w : g.neighbors(v)) {
    radii.push_back(dist2(g.point(v), g.point(w)));
  }
  std::nth_element(radii.begin(), radii.begin() + (k - 1), radii.end());
  if (!(dist2(g.point(v), g.point(u)) < radii[k - 1])) {
    return false;
  }
  return witnesses_of(g, v, k).required_insertions > 0;
}

}  // namespace knntest
