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

#include "knntest/tester.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "knntest/error.hpp"
#include "knntest/ground_truth.hpp"
#include "knntest/rng.hpp"

namespace knntest {
namespace {

constexpr std::uint64_t kSampleStream = 1;
constexpr std::uint64_t kWitnessStream = 2;

/// What the tester knows about one sampled vertex after reading its
/// neighborhood: its coordinate, sorted neighbor ids, and r_k(v), the k-th
/// smallest squared distance to a neighbor.
struct LocalView {
  std::vector<double> coord;
  std::vector<VertexId> sorted_neighbors;
  double kth_neighbor_dist2 = 0.0;

  bool is_neighbor(VertexId u) const {
    return std::binary_search(sorted_neighbors.begin(), sorted_neighbors.end(), u);
  }
};

/// Requires deg >= k.
LocalView read_neighborhood(OracleSession& session, VertexId v, std::size_t degree, std::uint32_t k) {
  LocalView view;
  const auto own = session.coord(v);
  view.coord.assign(own.begin(), own.end());
  std::vector<double> radii;
  radii.reserve(degree);
  view.sorted_neighbors.reserve(degree);
  for (std::size_t i = 1; i <= degree; ++i) {
    const auto w = session.neighbor(v, i);
    if (!w) {
      throw std::logic_error("oracle returned no neighbor below the reported degree");
    }
    view.sorted_neighbors.push_back(*w);
    const auto wc = session.coord(*w);
    radii.push_back(dist2_unchecked(view.coord.data(), wc.data(), view.coord.size()));
  }
  std::nth_element(radii.begin(), radii.begin() + (k - 1), radii.end());
  view.kth_neighbor_dist2 = radii[k - 1];
  std::sort(view.sorted_neighbors.begin(), view.sorted_neighbors.end());
  return view;
}

}  // namespace

void TesterConfig::validate() const {
  if (k < 1) {
    throw UsageError("tester: k must be at least 1");
  }
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw UsageError("tester: epsilon must lie in (0, 1]");
  }
  if (dim && *dim == 0) {
    throw UsageError("tester: dimension must be at least 1");
  }
  if (mode == SizingMode::experiment && !(c1 > 0.0 && c2 > 0.0 && std::isfinite(c1) && std::isfinite(c2))) {
    throw UsageError("tester: c1 and c2 must be positive in experiment mode");
  }
}

std::uint64_t kissing_number(std::size_t dim) {
  static constexpr std::array<std::uint64_t, 8> kKnown{2, 6, 12, 24, 44, 78, 134, 240};
  if (dim == 0) {
    throw UsageError("kissing_number: dimension must be at least 1");
  }
  if (dim <= kKnown.size()) {
    return kKnown[dim - 1];
  }
  const double bound = std::ceil(std::exp2(0.401 * 1.2 * static_cast<double>(dim)));
  return std::max<std::uint64_t>(kKnown.back(), static_cast<std::uint64_t>(bound));
}

SampleSizes sample_sizes(std::size_t n, std::size_t dim, const TesterConfig& cfg) {
  cfg.validate();
  if (n < 2) {
    throw UsageError("sample_sizes: need n >= 2");
  }
  const double root_n = std::sqrt(static_cast<double>(n));
  const double k = cfg.k;
  SampleSizes sizes;
  if (cfg.mode == SizingMode::theory) {
    const double psi = static_cast<double>(kissing_number(dim));
    sizes.s_prime = std::min<std::uint64_t>(n, stable_ceil(100.0 * k * root_n / cfg.epsilon));
    sizes.t = stable_ceil(std::numbers::ln10 * k * psi * root_n);
  } else {
    sizes.s_prime = std::min<std::uint64_t>(n, stable_ceil(cfg.c1 * 8.0 * k * root_n));
    sizes.t = stable_ceil(cfg.c2 * k * std::numbers::ln10 * root_n);
  }
  sizes.degree_cap = cfg.degree_cap_override.value_or(stable_ceil(100.0 * k / cfg.epsilon));
  return sizes;
}

bool local_witness_check(OracleSession& session, VertexId v, VertexId u, std::uint32_t k) {
  if (u == v) {
    throw UsageError("local_witness_check: u and v must differ");
  }
  if (k < 1) {
    throw UsageError("local_witness_check: k must be at least 1");
  }
  const std::size_t degree = session.degree(v);
  if (degree < k) {
    return true;
  }
  const LocalView view = read_neighborhood(session, v, degree, k);
  const auto uc = session.coord(u);
  return !view.is_neighbor(u) && dist2(view.coord, uc) < view.kth_neighbor_dist2;
}

Verdict run_tester(OracleSession& session, const TesterConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  cfg.validate();
  const std::size_t n = session.vertex_count();
  const std::size_t dim = cfg.dim.value_or(session.dim());

  Verdict verdict;
  verdict.planned = sample_sizes(n, dim, cfg);

  Rng sample_rng(derive_seed(cfg.seed, kSampleStream));
  Rng witness_rng(derive_seed(cfg.seed, kWitnessStream));
  const auto s_prime = sample_without_replacement(static_cast<std::uint32_t>(n),
                                                  static_cast<std::uint32_t>(verdict.planned.s_prime), sample_rng);

  // T is drawn with replacement; a repeated draw answers the same checks,
  // so only first occurrences are scanned, in draw order.
  std::vector<VertexId> t_distinct;
  {
    std::vector<bool> drawn(n, false);
    for (std::uint64_t i = 0; i < verdict.planned.t; ++i) {
      const auto u = static_cast<VertexId>(witness_rng.below(n));
      if (!drawn[u]) {
        drawn[u] = true;
        t_distinct.push_back(u);
      }
    }
  }
  const std::size_t session_dim = session.dim();
  std::vector<double> t_coords;
  t_coords.reserve(t_distinct.size() * session_dim);
  std::size_t t_fetched = 0;

  auto finish = [&](Decision decision, std::optional<Evidence> evidence) {
    verdict.decision = decision;
    verdict.evidence = evidence;
    verdict.queries = session.tally();
    verdict.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - started);
#ifndef NDEBUG
    if (evidence && !confirms_rejection(session.graph(), cfg.k, evidence->vertex, evidence->witness)) {
      throw std::logic_error("tester produced evidence that ground truth does not confirm");
    }
#endif
    return verdict;
  };

  for (const VertexId v : s_prime) {
    const std::size_t degree = session.degree(v);
    ++verdict.s_prime_examined;
    if (degree > verdict.planned.degree_cap) {
      continue;
    }
    ++verdict.s_examined;
    if (degree < cfg.k) {
      return finish(Decision::reject, Evidence{v, std::nullopt, RejectReason::low_degree});
    }
    const LocalView view = read_neighborhood(session, v, degree, cfg.k);
    for (std::size_t j = 0; j < t_distinct.size(); ++j) {
      const VertexId u = t_distinct[j];
      if (u == v) {
        continue;
      }
      while (t_fetched <= j) {
        const auto uc = session.coord(t_distinct[t_fetched]);
        t_coords.insert(t_coords.end(), uc.begin(), uc.end());
        ++t_fetched;
      }
      const double d = dist2_unchecked(view.coord.data(), t_coords.data() + j * session_dim, session_dim);
      if (d < view.kth_neighbor_dist2 && !view.is_neighbor(u)) {
        return finish(Decision::reject, Evidence{v, u, RejectReason::witness});
      }
    }
  }
  return finish(Decision::accept, std::nullopt);
}

Verdict run_tester(const GeometricGraph& g, const TesterConfig& cfg) {
  OracleSession session(g);
  return run_tester(session, cfg);
}

std::uint64_t query_bound(const Verdict& verdict) {
  const auto& p = verdict.planned;
  return p.s_prime + 2 * verdict.s_examined * (p.degree_cap + 1) + p.t;
}

const char* to_string(Decision decision) noexcept {
  return decision == Decision::accept ? "accept" : "reject";
}

const char* to_string(RejectReason reason) noexcept {
  return reason == RejectReason::witness ? "witness" : "low-degree";
}

const char* to_string(SizingMode mode) noexcept {
  return mode == SizingMode::theory ? "theory" : "experiment";
}

}  // namespace knntest
