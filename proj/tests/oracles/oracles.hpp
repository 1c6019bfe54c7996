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

// Reference implementations used only by tests. Each one recomputes its
// answer from raw coordinates by exhaustive enumeration; none calls into the
// library beyond reading the graph.

#include <cstdint>
#include <vector>

#include "knntest/core.hpp"

namespace knntest::oracle {

/// Squared distance, summed left to right.
double sq_dist(const PointSet& points, VertexId a, VertexId b);

/// Exhaustive minimum over all k-subsets T of V \ {v} whose members are all
/// at least as close as every non-member, of |T \ N(v)|.
std::uint64_t min_insertions(const GeometricGraph& g, VertexId v, std::uint32_t k);
std::uint64_t min_insertions(const GeometricGraph& g, std::uint32_t k);

/// True iff every vertex's list contains some valid k-subset.
bool is_knn_graph(const GeometricGraph& g, std::uint32_t k);

/// |{q != p : p is among q's k nearest}|, where "among the k nearest" means
/// fewer than k points are strictly closer to q than p.
std::size_t shared_knn(const PointSet& points, VertexId p, std::uint32_t k);
std::size_t max_shared_knn(const PointSet& points, std::uint32_t k);

struct KReduction {
  /// Size of each removed cluster (excluding its anchor).
  std::vector<std::size_t> removed;
  /// Anchors that survive, the vertices p is a 1-NN of among survivors.
  std::vector<VertexId> survivors;
};

/// Shrinks Q = {q : p among q's k nearest} by visiting survivors from the
/// farthest to p inward and discarding the other members of Q that lie
/// within distance |q - p| of q.
KReduction k_reduce(const PointSet& points, VertexId p, std::uint32_t k);

/// n points with integer coordinates in [0, side)^dim, so ties are common.
PointSet grid_points(std::size_t n, std::size_t dim, int side, std::uint64_t seed);

/// Random adjacency, each list a uniformly chosen subset of size in
/// [lo, hi] (clamped to n - 1).
AdjacencyList random_adjacency(std::size_t n, std::size_t lo, std::size_t hi, std::uint64_t seed);

}  // namespace knntest::oracle
