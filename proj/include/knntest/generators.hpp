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

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "knntest/core.hpp"
#include "knntest/rng.hpp"

namespace knntest {

/// Complete digraph on k+1 points x, x+1, ..., x+k along the first axis,
/// zero-padded to `dim` coordinates.
GeometricGraph line_gadget(double x, std::uint32_t k, std::size_t dim = 1);

/// Placement of n / (k+1) line gadgets, gadget i based at 3 (k+1) i.
struct GadgetLayout {
  std::uint32_t k = 1;
  std::uint32_t k_prime = 2;
  std::size_t gadget_count = 0;
  /// Base coordinate of each gadget before any relocation; strictly
  /// increasing.
  std::vector<double> positions;
  /// (source, target): source gadget moved onto target's coordinates.
  std::vector<std::pair<std::size_t, std::size_t>> duplicated_pairs;

  /// Base coordinate of each gadget after relocation.
  std::vector<double> placed_positions() const;
};

/// Layout of the YES distribution. Throws UsageError unless (k+1) | n.
GadgetLayout layout_d1(std::size_t n, std::uint32_t k);

/// Layout of the far distribution: 2 ceil(eps n / (k+1)) distinct gadgets
/// drawn without replacement, the first half relocated onto the second.
GadgetLayout layout_d2(std::size_t n, std::uint32_t k, double epsilon, Rng& rng);

/// Realizes a layout as a graph, vertex ids assigned through a uniform
/// permutation drawn from rng.
GeometricGraph realize_layout(const GadgetLayout& layout, Rng& rng);

/// Seeded draws from the two distributions; vertex labels uniformly
/// permuted.
GeometricGraph sample_d1(std::size_t n, std::uint32_t k, std::uint64_t seed);
GeometricGraph sample_d2(std::size_t n, std::uint32_t k, double epsilon, std::uint64_t seed);

/// Unit vectors to the 12 vertices of an icosahedron, rotated so that no
/// vertex has a zero first coordinate (six on each side of x = 0).
const std::array<std::array<double, 3>, 12>& icosahedron_directions();

struct TightConstruction {
  GeometricGraph graph;  // empty adjacency
  VertexId focal = 0;    // the origin
};

/// Kissing configuration around the origin (dim 1: +-1; dim 3: icosahedron
/// at radius 1), each point split into k coincident copies. Every copy has
/// the origin as a k-nearest neighbor, so max_shared_knn is k psi_dim.
TightConstruction tight_witness_construction(std::size_t dim, std::uint32_t k);

/// Replaces ceil(f n k) distinct adjacency slots (capped at |E|) with
/// targets drawn uniformly from outside the vertex's current list.
/// Degrees are preserved. Throws UsageError if a chosen vertex already
/// points to every other vertex or if min degree < k.
GeometricGraph corrupt_edges(const GeometricGraph& g, std::uint32_t k, double fraction, std::uint64_t seed);

struct DimensionLowerBound {
  GeometricGraph far;    // stale adjacency; epsilon-far
  GeometricGraph exact;  // same vertices, displaced points parked, exact k-NN graph
  std::size_t cluster_count = 0;
  std::size_t perturbed_count = 0;
  /// Ids of the inserted points (one per perturbed cluster); these are the
  /// only vertices whose coordinates differ between the two graphs.
  std::vector<VertexId> inserted;
};

/// Two instances that differ only at a few inserted points: c clusters of
/// the dim-3 tight construction centered at (i, 0, 0), i = 1..c; in the
/// first m clusters the center moves to (i - eta, 0, 0) and a new point
/// appears at (i + eta, 0, 0). m is the smallest count that makes the
/// stale graph epsilon-far. Throws UsageError if m would exceed c.
DimensionLowerBound dimension_lb_instances(std::size_t dim, std::uint32_t k, double epsilon, std::size_t c);

/// Uniform points in [0,1]^dim.
PointSet uniform_points(std::size_t n, std::size_t dim, std::uint64_t seed);

/// Isotropic Gaussian clusters with centers uniform in [0,1]^dim.
PointSet gaussian_mixture_points(std::size_t n, std::size_t dim, std::size_t clusters, double sigma,
                                 std::uint64_t seed);

}  // namespace knntest
