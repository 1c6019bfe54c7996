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

// Monte-Carlo view of the query lower bound. A query against a gadget
// instance reveals the whole gadget it touches; an algorithm can only tell
// the far distribution from the YES distribution once it has revealed both
// copies of a duplicated gadget.

#include <cstdint>
#include <utility>
#include <vector>

namespace knntest {

enum class GadgetDistribution { d1, d2 };

/// Query strategies. Adaptivity cannot help before a collision, so a
/// single non-adaptive strategy is enough to measure collision odds.
enum class RevealStrategy { uniform_fresh };

struct RevealedGadget {
  std::size_t gadget = 0;
  double base = 0.0;  // coordinate after relocation
};

struct KnowledgeState {
  std::vector<RevealedGadget> revealed;
  bool duplicate_seen = false;
  std::size_t queries_used = 0;
};

/// Reveals `budget` distinct gadgets uniformly among the undiscovered ones,
/// on a fresh instance drawn from `dist`. budget <= n / (k+1).
KnowledgeState simulate_queries(GadgetDistribution dist, std::size_t n, std::uint32_t k, double epsilon,
                                std::size_t budget, RevealStrategy strategy, std::uint64_t seed);

/// floor(sqrt(n / (8 eps (k+1)))).
std::size_t lower_bound_budget(std::size_t n, std::uint32_t k, double epsilon);

struct CollisionEstimate {
  double p_hat = 0.0;
  double std_error = 0.0;
  /// Union bound b^2 eps (k+1) / n.
  double union_bound = 0.0;
  std::size_t trials = 0;
  std::size_t collisions = 0;
};

/// Fraction of independent trials (per-trial seeds derived from `seed`) in
/// which a D2 instance revealed a duplicated pair within `budget` queries.
/// Trial i uses the same stream for every budget, so the estimate is
/// monotone in budget. Throws UsageError when trials < 100.
CollisionEstimate estimate_collision_probability(std::size_t n, std::uint32_t k, double epsilon, std::size_t budget,
                                                 std::size_t trials, std::uint64_t seed);

/// Histogram of revealed base coordinates over `trials` runs, bucketed into
/// `bins` equal slices of the base range. For D2, trials that saw a
/// duplicate are dropped (the conditioning event). Second: trials kept.
std::pair<std::vector<std::uint64_t>, std::size_t> reveal_histogram(GadgetDistribution dist, std::size_t n,
                                                                    std::uint32_t k, double epsilon,
                                                                    std::size_t budget, std::size_t trials,
                                                                    std::size_t bins, std::uint64_t seed);

const char* to_string(GadgetDistribution dist) noexcept;

}  // namespace knntest
