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

#include "knntest/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "knntest/error.hpp"

namespace knntest {

double dist2(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw UsageError("dist2: dimension mismatch (" + std::to_string(p.size()) + " vs " + std::to_string(q.size()) +
                     ")");
  }
  return dist2_unchecked(p.data(), q.data(), p.size());
}

std::uint64_t stable_ceil(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw UsageError("stable_ceil: expected a finite non-negative value");
  }
  const double nearest = std::nearbyint(x);
  if (std::fabs(x - nearest) <= 1e-9 * std::max(1.0, x)) {
    return static_cast<std::uint64_t>(nearest);
  }
  return static_cast<std::uint64_t>(std::ceil(x));
}

PointSet::PointSet(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) {
    throw UsageError("PointSet: dimension must be at least 1");
  }
  if (coords_.size() % dim_ != 0) {
    throw UsageError("PointSet: coordinate count is not a multiple of the dimension");
  }
  if (!std::all_of(coords_.begin(), coords_.end(), [](double c) { return std::isfinite(c); })) {
    throw UsageError("PointSet: coordinates must be finite");
  }
}

void PointSet::push_back(std::span<const double> point) {
  if (dim_ == 0) {
    if (point.empty()) {
      throw UsageError("PointSet: dimension must be at least 1");
    }
    dim_ = point.size();
  }
  if (point.size() != dim_) {
    throw UsageError("PointSet: dimension mismatch on push_back");
  }
  if (!std::all_of(point.begin(), point.end(), [](double c) { return std::isfinite(c); })) {
    throw UsageError("PointSet: coordinates must be finite");
  }
  coords_.insert(coords_.end(), point.begin(), point.end());
}

GeometricGraph::GeometricGraph(PointSet points, AdjacencyList adjacency, std::optional<std::uint32_t> k_hint)
    : points_(std::move(points)), adjacency_(std::move(adjacency)), k_hint_(k_hint) {
  const std::size_t n = points_.size();
  if (adjacency_.size() != n) {
    throw UsageError("GeometricGraph: " + std::to_string(adjacency_.size()) + " adjacency lists for " +
                     std::to_string(n) + " vertices");
  }
  // Stamp per target: last source vertex that listed it.
  std::vector<std::size_t> seen(n, static_cast<std::size_t>(-1));
  for (std::size_t v = 0; v < n; ++v) {
    for (VertexId u : adjacency_[v]) {
      if (u >= n) {
        throw UsageError("GeometricGraph: vertex " + std::to_string(v) + " lists out-of-range id " +
                         std::to_string(u));
      }
      if (u == v) {
        throw UsageError("GeometricGraph: self-loop at vertex " + std::to_string(v));
      }
      if (seen[u] == v) {
        throw UsageError("GeometricGraph: duplicate edge " + std::to_string(v) + " -> " + std::to_string(u));
      }
      seen[u] = v;
    }
    edge_count_ += adjacency_[v].size();
  }
}

std::size_t GeometricGraph::max_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& list : adjacency_) {
    best = std::max(best, list.size());
  }
  return best;
}

bool GeometricGraph::has_edge(VertexId v, VertexId u) const noexcept {
  const auto& list = adjacency_[v];
  return std::find(list.begin(), list.end(), u) != list.end();
}

EdgeBudget EdgeBudget::provided(double d) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw UsageError("EdgeBudget: d must be positive and finite");
  }
  return {d, Source::provided};
}

EdgeBudget EdgeBudget::from_graph(const GeometricGraph& g, std::uint32_t k) {
  if (g.n() == 0) {
    throw UsageError("EdgeBudget: empty graph");
  }
  const double average = static_cast<double>(g.edge_count()) / static_cast<double>(g.n());
  return {std::max(average, static_cast<double>(k)), Source::computed};
}

const char* to_string(EdgeBudget::Source source) noexcept {
  return source == EdgeBudget::Source::provided ? "provided" : "computed";
}

}  // namespace knntest
