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

#include "knntest/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "knntest/error.hpp"
#include "knntest/ground_truth.hpp"

namespace knntest {
namespace {

void check_gadget_params(std::size_t n, std::uint32_t k) {
  if (k < 1) {
    throw UsageError("gadgets: k must be at least 1");
  }
  if (n == 0 || n % (k + 1) != 0) {
    throw UsageError("gadgets: n=" + std::to_string(n) + " is not a positive multiple of k+1=" +
                     std::to_string(k + 1));
  }
}

std::array<std::array<double, 3>, 12> make_icosahedron() {
  constexpr double phi = std::numbers::phi;
  const std::array<std::array<double, 3>, 12> raw{{{0, 1, phi},
                                                    {0, 1, -phi},
                                                    {0, -1, phi},
                                                    {0, -1, -phi},
                                                    {1, phi, 0},
                                                    {1, -phi, 0},
                                                    {-1, phi, 0},
                                                    {-1, -phi, 0},
                                                    {phi, 0, 1},
                                                    {phi, 0, -1},
                                                    {-phi, 0, 1},
                                                    {-phi, 0, -1}}};
  // Rotation about the y axis by 0.3 rad moves every vertex off x = 0.
  const double c = std::cos(0.3);
  const double s = std::sin(0.3);
  std::array<std::array<double, 3>, 12> out{};
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto& p = raw[i];
    const double norm = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    out[i] = {(c * p[0] + s * p[2]) / norm, p[1] / norm, (-s * p[0] + c * p[2]) / norm};
  }
  return out;
}

}  // namespace

GeometricGraph line_gadget(double x, std::uint32_t k, std::size_t dim) {
  if (k < 1 || dim < 1) {
    throw UsageError("line_gadget: need k >= 1 and dim >= 1");
  }
  const std::uint32_t size = k + 1;
  std::vector<double> coords(static_cast<std::size_t>(size) * dim, 0.0);
  AdjacencyList adjacency(size);
  for (std::uint32_t j = 0; j < size; ++j) {
    coords[j * dim] = x + j;
    for (std::uint32_t other = 0; other < size; ++other) {
      if (other != j) {
        adjacency[j].push_back(other);
      }
    }
  }
  return GeometricGraph(PointSet(dim, std::move(coords)), std::move(adjacency), k);
}

std::vector<double> GadgetLayout::placed_positions() const {
  std::vector<double> placed = positions;
  for (const auto& [source, target] : duplicated_pairs) {
    placed[source] = positions[target];
  }
  return placed;
}

GadgetLayout layout_d1(std::size_t n, std::uint32_t k) {
  check_gadget_params(n, k);
  GadgetLayout layout;
  layout.k = k;
  layout.k_prime = k + 1;
  layout.gadget_count = n / layout.k_prime;
  layout.positions.resize(layout.gadget_count);
  for (std::size_t i = 0; i < layout.gadget_count; ++i) {
    layout.positions[i] = 3.0 * layout.k_prime * static_cast<double>(i);
  }
  return layout;
}

GadgetLayout layout_d2(std::size_t n, std::uint32_t k, double epsilon, Rng& rng) {
  GadgetLayout layout = layout_d1(n, k);
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw UsageError("sample_d2: epsilon must lie in (0, 1]");
  }
  const std::uint64_t moved = stable_ceil(epsilon * static_cast<double>(n) / layout.k_prime);
  if (2 * moved > layout.gadget_count) {
    throw UsageError("sample_d2: 2 ceil(eps n / (k+1)) = " + std::to_string(2 * moved) + " exceeds the " +
                     std::to_string(layout.gadget_count) + " gadgets");
  }
  const auto picks = sample_without_replacement(static_cast<std::uint32_t>(layout.gadget_count),
                                                static_cast<std::uint32_t>(2 * moved), rng);
  for (std::uint64_t i = 0; i < moved; ++i) {
    layout.duplicated_pairs.emplace_back(picks[i], picks[i + moved]);
  }
  return layout;
}

GeometricGraph realize_layout(const GadgetLayout& layout, Rng& rng) {
  const std::size_t n = layout.gadget_count * layout.k_prime;
  const auto labels = random_permutation(static_cast<std::uint32_t>(n), rng);
  const auto placed = layout.placed_positions();
  std::vector<double> coords(n);
  AdjacencyList adjacency(n);
  for (std::size_t g = 0; g < layout.gadget_count; ++g) {
    const std::size_t first = g * layout.k_prime;
    for (std::uint32_t j = 0; j < layout.k_prime; ++j) {
      const VertexId id = labels[first + j];
      coords[id] = placed[g] + j;
      auto& list = adjacency[id];
      list.reserve(layout.k);
      for (std::uint32_t other = 0; other < layout.k_prime; ++other) {
        if (other != j) {
          list.push_back(labels[first + other]);
        }
      }
    }
  }
  return GeometricGraph(PointSet(1, std::move(coords)), std::move(adjacency), layout.k);
}

GeometricGraph sample_d1(std::size_t n, std::uint32_t k, std::uint64_t seed) {
  Rng rng(seed);
  return realize_layout(layout_d1(n, k), rng);
}

GeometricGraph sample_d2(std::size_t n, std::uint32_t k, double epsilon, std::uint64_t seed) {
  Rng rng(seed);
  const GadgetLayout layout = layout_d2(n, k, epsilon, rng);
  return realize_layout(layout, rng);
}

const std::array<std::array<double, 3>, 12>& icosahedron_directions() {
  static const auto directions = make_icosahedron();
  return directions;
}

TightConstruction tight_witness_construction(std::size_t dim, std::uint32_t k) {
  if (k < 1) {
    throw UsageError("tight_witness_construction: k must be at least 1");
  }
  PointSet points;
  const std::vector<double> origin(dim, 0.0);
  if (dim == 1) {
    points.push_back(origin);
    for (const double x : {-1.0, 1.0}) {
      for (std::uint32_t copy = 0; copy < k; ++copy) {
        points.push_back(std::vector<double>{x});
      }
    }
  } else if (dim == 3) {
    points.push_back(origin);
    for (const auto& direction : icosahedron_directions()) {
      for (std::uint32_t copy = 0; copy < k; ++copy) {
        points.push_back(direction);
      }
    }
  } else {
    throw UsageError("tight_witness_construction: only dimensions 1 and 3 are supported");
  }
  const std::size_t n = points.size();
  return {GeometricGraph(std::move(points), AdjacencyList(n), k), 0};
}

GeometricGraph corrupt_edges(const GeometricGraph& g, std::uint32_t k, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw UsageError("corrupt_edges: fraction must lie in [0, 1]");
  }
  const std::size_t n = g.n();
  for (VertexId v = 0; v < n; ++v) {
    if (g.degree(v) < k) {
      throw UsageError("corrupt_edges: vertex " + std::to_string(v) + " has degree below k");
    }
  }
  AdjacencyList adjacency = g.adjacency();
  std::vector<std::size_t> offsets(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    offsets[v + 1] = offsets[v] + adjacency[v].size();
  }
  const std::size_t slots = offsets[n];
  const auto wanted = std::min<std::uint64_t>(slots, stable_ceil(fraction * static_cast<double>(n) * k));

  Rng rng(seed);
  Rng slot_rng = rng.split(1);
  Rng target_rng = rng.split(2);
  const auto chosen =
      sample_without_replacement(static_cast<std::uint32_t>(slots), static_cast<std::uint32_t>(wanted), slot_rng);
  for (const std::uint32_t slot : chosen) {
    const auto v = static_cast<VertexId>(std::upper_bound(offsets.begin(), offsets.end(), slot) - offsets.begin() - 1);
    auto& list = adjacency[v];
    if (list.size() + 1 >= n) {
      throw UsageError("corrupt_edges: vertex " + std::to_string(v) + " already points to every other vertex");
    }
    VertexId u = 0;
    do {
      u = static_cast<VertexId>(target_rng.below(n));
    } while (u == v || std::find(list.begin(), list.end(), u) != list.end());
    list[slot - offsets[v]] = u;
  }
  return GeometricGraph(g.points(), std::move(adjacency), g.k_hint());
}

DimensionLowerBound dimension_lb_instances(std::size_t dim, std::uint32_t k, double epsilon, std::size_t c) {
  if (dim != 3) {
    throw UsageError("dimension_lb_instances: only dimension 3 is supported");
  }
  if (k < 1 || c < 1 || !(epsilon > 0.0 && epsilon <= 1.0)) {
    throw UsageError("dimension_lb_instances: need k >= 1, c >= 1, epsilon in (0, 1]");
  }
  // Cluster radius 1/4 keeps clusters 1/2 apart, well beyond the in-cluster
  // k-th neighbor distance. The closest distinct positions inside a cluster
  // are center and shell (distance radius), so eta = radius / 8.
  constexpr double radius = 0.25;
  constexpr double eta = radius / 8.0;
  const std::size_t cluster_size = 12 * static_cast<std::size_t>(k) + 1;
  const std::size_t base_n = c * cluster_size;

  PointSet cluster_points;
  for (std::size_t i = 1; i <= c; ++i) {
    const double x = static_cast<double>(i);
    cluster_points.push_back(std::vector<double>{x, 0.0, 0.0});
    for (const auto& direction : icosahedron_directions()) {
      const std::vector<double> p{x + radius * direction[0], radius * direction[1], radius * direction[2]};
      for (std::uint32_t copy = 0; copy < k; ++copy) {
        cluster_points.push_back(p);
      }
    }
  }
  const GeometricGraph original = build_exact_knn_graph(cluster_points, k);

  auto build = [&](std::size_t m) {
    PointSet far_points;
    PointSet parked_points;
    for (std::size_t v = 0; v < base_n; ++v) {
      const auto p = cluster_points[static_cast<VertexId>(v)];
      std::vector<double> moved(p.begin(), p.end());
      const std::size_t cluster = v / cluster_size;
      if (v % cluster_size == 0 && cluster < m) {
        moved[0] -= eta;
      }
      far_points.push_back(moved);
      parked_points.push_back(moved);
    }
    DimensionLowerBound out;
    out.cluster_count = c;
    out.perturbed_count = m;
    for (std::size_t i = 0; i < m; ++i) {
      far_points.push_back(std::vector<double>{static_cast<double>(i + 1) + eta, 0.0, 0.0});
      parked_points.push_back(std::vector<double>{-1.0, 0.0, 0.0});
      out.inserted.push_back(static_cast<VertexId>(base_n + i));
    }
    out.exact = build_exact_knn_graph(parked_points, k);
    AdjacencyList stale = original.adjacency();
    for (const VertexId q : out.inserted) {
      const auto list = out.exact.neighbors(q);
      stale.emplace_back(list.begin(), list.end());
    }
    out.far = GeometricGraph(std::move(far_points), std::move(stale), k);
    return out;
  };

  // The 6k shell copies on the +x side of each perturbed cluster each miss
  // exactly one edge (to the inserted point), and every degree is k, so
  // 6 m > eps (c (12k+1) + m) suffices; the loop confirms exactly.
  std::size_t m = std::max<std::size_t>(1, stable_ceil(2.0 * epsilon * static_cast<double>(c)));
  while (6.0 * static_cast<double>(m) <= epsilon * static_cast<double>(base_n + m)) {
    ++m;
  }
  for (; m <= c; ++m) {
    DimensionLowerBound out = build(m);
    const auto report = epsilon_distance(out.far, k, EdgeBudget::from_graph(out.far, k));
    if (report.epsilon_distance > epsilon) {
      return out;
    }
  }
  throw UsageError("dimension_lb_instances: c=" + std::to_string(c) + " clusters are too few to be " +
                   std::to_string(epsilon) + "-far");
}

PointSet uniform_points(std::size_t n, std::size_t dim, std::uint64_t seed) {
  if (dim < 1) {
    throw UsageError("uniform_points: dim must be at least 1");
  }
  Rng rng(seed);
  std::vector<double> coords(n * dim);
  for (auto& c : coords) {
    c = rng.uniform01();
  }
  return PointSet(dim, std::move(coords));
}

PointSet gaussian_mixture_points(std::size_t n, std::size_t dim, std::size_t clusters, double sigma,
                                 std::uint64_t seed) {
  if (dim < 1 || clusters < 1 || !(sigma > 0.0)) {
    throw UsageError("gaussian_mixture_points: need dim >= 1, clusters >= 1, sigma > 0");
  }
  Rng rng(seed);
  std::vector<double> centers(clusters * dim);
  for (auto& c : centers) {
    c = rng.uniform01();
  }
  std::vector<double> coords(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t cluster = rng.below(clusters);
    for (std::size_t j = 0; j < dim; ++j) {
      coords[i * dim + j] = centers[cluster * dim + j] + sigma * rng.normal();
    }
  }
  return PointSet(dim, std::move(coords));
}

}  // namespace knntest
