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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace knntest {

using VertexId = std::uint32_t;

/// Squared Euclidean distance. Throws UsageError on dimension mismatch.
double dist2(std::span<const double> p, std::span<const double> q);

/// Hot-path variant; sizes must already agree.
inline double dist2_unchecked(const double* p, const double* q, std::size_t dim) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double diff = p[i] - q[i];
    sum += diff * diff;
  }
  return sum;
}

/// ceil(x) that treats values within a few ulps of an integer as that
/// integer, so that e.g. 0.01 * 8 * 10 * 1000 sizes to 800 and not 801.
std::uint64_t stable_ceil(double x);

/// Row-major matrix of n points in R^dim. All entries finite.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t dim, std::vector<double> coords);

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> operator[](VertexId v) const noexcept {
    return {coords_.data() + static_cast<std::size_t>(v) * dim_, dim_};
  }
  const double* row(VertexId v) const noexcept { return coords_.data() + static_cast<std::size_t>(v) * dim_; }
  const std::vector<double>& data() const noexcept { return coords_; }

  void push_back(std::span<const double> point);

  bool operator==(const PointSet&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

using AdjacencyList = std::vector<std::vector<VertexId>>;

/// Directed graph with a coordinate per vertex. Immutable once built; the
/// constructor enforces: ids in range, no self-loops, no duplicate targets
/// within one list, one coordinate row per vertex.
class GeometricGraph {
 public:
  GeometricGraph() = default;
  GeometricGraph(PointSet points, AdjacencyList adjacency, std::optional<std::uint32_t> k_hint = std::nullopt);

  std::size_t n() const noexcept { return points_.size(); }
  std::size_t dim() const noexcept { return points_.dim(); }
  const PointSet& points() const noexcept { return points_; }
  std::span<const double> point(VertexId v) const noexcept { return points_[v]; }

  std::span<const VertexId> neighbors(VertexId v) const noexcept { return adjacency_[v]; }
  std::size_t degree(VertexId v) const noexcept { return adjacency_[v].size(); }
  const AdjacencyList& adjacency() const noexcept { return adjacency_; }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::size_t max_degree() const noexcept;
  bool has_edge(VertexId v, VertexId u) const noexcept;

  std::optional<std::uint32_t> k_hint() const noexcept { return k_hint_; }

  bool operator==(const GeometricGraph&) const = default;

 private:
  PointSet points_;
  AdjacencyList adjacency_;
  std::size_t edge_count_ = 0;
  std::optional<std::uint32_t> k_hint_;
};

/// Average-degree bound d, the denominator of the epsilon-distance.
struct EdgeBudget {
  enum class Source { provided, computed };

  double d = 0.0;
  Source source = Source::computed;

  static EdgeBudget provided(double d);
  /// max(|E|/n, k): the average degree, raised to k when the graph is too
  /// sparse to be a k-NN graph at all.
  static EdgeBudget from_graph(const GeometricGraph& g, std::uint32_t k);
};

const char* to_string(EdgeBudget::Source source) noexcept;

}  // namespace knntest
