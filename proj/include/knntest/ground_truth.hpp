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

// Exact, brute-force k-NN semantics. Everything here reads the graph
// directly (no oracle accounting) and costs O(n^2 dim) at worst.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "knntest/core.hpp"

namespace knntest {

/// |{u != v : dist(v,u) < dist(v,w)}|. Throws UsageError when v == w.
std::size_t num_nearer(const GeometricGraph& g, VertexId v, VertexId w);

/// {u != v : num_nearer(v,u) <= k-1}, ascending by id. Larger than k when
/// the k-th distance is tied.
std::vector<VertexId> k_nearest_set(const GeometricGraph& g, VertexId v, std::uint32_t k);

struct WitnessSet {
  VertexId vertex = 0;
  /// k-nearest vertices that are not out-neighbors, ascending by id.
  std::vector<VertexId> witnesses;
  /// max(0, k - deg(v)).
  std::size_t degree_deficit = 0;
  /// Minimum insertions that make v satisfied under the most favorable
  /// tie-breaking. Zero whenever witnesses are all tied at the k-th distance
  /// and enough tied vertices are already neighbors.
  std::size_t required_insertions = 0;

  /// Literal definition: some witness exists or the degree is below k.
  bool incomplete() const noexcept { return !witnesses.empty() || degree_deficit > 0; }
};

WitnessSet witnesses_of(const GeometricGraph& g, VertexId v, std::uint32_t k);

/// Exact k-NN graph: every vertex points to its k nearest, ties at the k-th
/// distance broken towards smaller ids, adjacency ordered by (distance, id).
/// Throws UsageError when n <= k.
GeometricGraph build_exact_knn_graph(const PointSet& points, std::uint32_t k);

/// Per-vertex k-th nearest distance together with the vertices strictly
/// inside it and those tied on it. Depends on the points only, so one
/// reference serves every graph over the same point set.
class KnnReference {
 public:
  KnnReference(const PointSet& points, std::uint32_t k);

  std::uint32_t k() const noexcept { return k_; }
  std::size_t n() const noexcept { return kth_dist2_.size(); }
  double kth_dist2(VertexId v) const noexcept { return kth_dist2_[v]; }
  std::span<const VertexId> strictly_inside(VertexId v) const noexcept {
    return {inside_.data() + inside_offsets_[v], inside_offsets_[v + 1] - inside_offsets_[v]};
  }
  std::span<const VertexId> tied(VertexId v) const noexcept {
    return {tied_.data() + tied_offsets_[v], tied_offsets_[v + 1] - tied_offsets_[v]};
  }

  /// Minimum insertions for v given its current adjacency list.
  std::size_t required_insertions(VertexId v, std::span<const VertexId> neighbors) const;

 private:
  std::uint32_t k_;
  std::vector<double> kth_dist2_;
  std::vector<std::size_t> inside_offsets_;
  std::vector<VertexId> inside_;
  std::vector<std::size_t> tied_offsets_;
  std::vector<VertexId> tied_;
};

struct DistanceReport {
  std::uint64_t min_edits = 0;
  double epsilon_distance = 0.0;
  /// Vertices with required_insertions > 0.
  std::size_t incomplete_count = 0;
  /// Incomplete vertices with deg <= 100k/eps, when eps was supplied.
  std::optional<std::size_t> low_degree_incomplete_count;
  EdgeBudget budget;
};

/// Edit distance to the k-NN property. Only insertions are ever needed,
/// so min_edits = sum_v required_insertions(v) and
/// epsilon_distance = min_edits / (d n).
DistanceReport epsilon_distance(const GeometricGraph& g, std::uint32_t k, const EdgeBudget& budget,
                                std::optional<double> epsilon = std::nullopt);
DistanceReport epsilon_distance(const GeometricGraph& g, const KnnReference& reference, const EdgeBudget& budget,
                                std::optional<double> epsilon = std::nullopt);

/// max over p of |{q : num_nearer(q,p) <= k-1}|. Throws UsageError when n <= k.
std::size_t max_shared_knn(const PointSet& points, std::uint32_t k);

/// Ground-truth check of tester evidence. Low-degree evidence (no witness):
/// deg(v) < k. Witness evidence: u is not an out-neighbor of v, u lies
/// strictly inside v's k-th neighbor distance, and v is incomplete.
bool confirms_rejection(const GeometricGraph& g, std::uint32_t k, VertexId v, std::optional<VertexId> witness);

}  // namespace knntest
