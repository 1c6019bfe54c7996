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

#include "knntest/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "knntest/error.hpp"
#include "knntest/generators.hpp"
#include "knntest/parallel.hpp"
#include "knntest/rng.hpp"

namespace knntest {

KnowledgeState simulate_queries(GadgetDistribution dist, std::size_t n, std::uint32_t k, double epsilon,
                                std::size_t budget, RevealStrategy strategy, std::uint64_t seed) {
  if (strategy != RevealStrategy::uniform_fresh) {
    throw UsageError("simulate_queries: unsupported strategy");
  }
  Rng rng(seed);
  Rng layout_rng = rng.split(1);
  Rng reveal_rng = rng.split(2);
  const GadgetLayout layout =
      dist == GadgetDistribution::d1 ? layout_d1(n, k) : layout_d2(n, k, epsilon, layout_rng);
  if (budget > layout.gadget_count) {
    throw UsageError("simulate_queries: budget " + std::to_string(budget) + " exceeds the " +
                     std::to_string(layout.gadget_count) + " gadgets");
  }
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> partner(layout.gadget_count, kNone);
  for (const auto& [source, target] : layout.duplicated_pairs) {
    partner[source] = target;
    partner[target] = source;
  }
  const auto placed = layout.placed_positions();

  KnowledgeState state;
  std::vector<bool> revealed(layout.gadget_count, false);
  const auto order = sample_without_replacement(static_cast<std::uint32_t>(layout.gadget_count),
                                                static_cast<std::uint32_t>(budget), reveal_rng);
  for (const std::uint32_t gadget : order) {
    ++state.queries_used;
    revealed[gadget] = true;
    state.revealed.push_back({gadget, placed[gadget]});
    if (partner[gadget] != kNone && revealed[partner[gadget]]) {
      state.duplicate_seen = true;
    }
  }
  return state;
}

std::size_t lower_bound_budget(std::size_t n, std::uint32_t k, double epsilon) {
  if (!(epsilon > 0.0) || k < 1) {
    throw UsageError("lower_bound_budget: need k >= 1 and epsilon > 0");
  }
  const double ratio = static_cast<double>(n) / (8.0 * epsilon * (k + 1.0));
  return static_cast<std::size_t>(std::floor(std::sqrt(ratio) + 1e-12));
}

CollisionEstimate estimate_collision_probability(std::size_t n, std::uint32_t k, double epsilon, std::size_t budget,
                                                 std::size_t trials, std::uint64_t seed) {
  if (trials < 100) {
    throw UsageError("estimate_collision_probability: need at least 100 trials");
  }
  std::vector<char> hit(trials, 0);
  parallel_for(trials, [&](std::size_t i) {
    const auto state = simulate_queries(GadgetDistribution::d2, n, k, epsilon, budget, RevealStrategy::uniform_fresh,
                                        derive_seed(seed, i));
    hit[i] = state.duplicate_seen ? 1 : 0;
  });
  CollisionEstimate estimate;
  estimate.trials = trials;
  estimate.collisions = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
  estimate.p_hat = static_cast<double>(estimate.collisions) / static_cast<double>(trials);
  estimate.std_error = std::sqrt(estimate.p_hat * (1.0 - estimate.p_hat) / static_cast<double>(trials));
  const double b = static_cast<double>(budget);
  estimate.union_bound = b * b * epsilon * (k + 1.0) / static_cast<double>(n);
  return estimate;
}

std::pair<std::vector<std::uint64_t>, std::size_t> reveal_histogram(GadgetDistribution dist, std::size_t n,
                                                                    std::uint32_t k, double epsilon,
                                                                    std::size_t budget, std::size_t trials,
                                                                    std::size_t bins, std::uint64_t seed) {
  if (bins < 1) {
    throw UsageError("reveal_histogram: need at least one bin");
  }
  const GadgetLayout reference = layout_d1(n, k);
  const double span = 3.0 * reference.k_prime * static_cast<double>(reference.gadget_count);
  std::vector<std::uint64_t> histogram(bins, 0);
  std::size_t kept = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto state =
        simulate_queries(dist, n, k, epsilon, budget, RevealStrategy::uniform_fresh, derive_seed(seed, i));
    if (state.duplicate_seen) {
      continue;
    }
    ++kept;
    for (const auto& gadget : state.revealed) {
      const auto bin = static_cast<std::size_t>(gadget.base / span * static_cast<double>(bins));
      ++histogram[std::min(bin, bins - 1)];
    }
  }
  return {histogram, kept};
}

const char* to_string(GadgetDistribution dist) noexcept {
  return dist == GadgetDistribution::d1 ? "d1" : "d2";
}

}  // namespace knntest
