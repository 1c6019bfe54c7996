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

#include <chrono>
#include <cstdint>
#include <optional>

#include "knntest/core.hpp"
#include "knntest/oracle.hpp"

namespace knntest {

/// How the two sample sizes are chosen.
///  - theory:     |S'| = 100 k sqrt(n) / eps,  |T| = ln(10) k psi sqrt(n)
///  - experiment: |S'| = c1 8 k sqrt(n),       |T| = c2 k sqrt(n) ln(10)
/// Both modes prune vertices of degree above ceil(100 k / eps).
enum class SizingMode { theory, experiment };

struct TesterConfig {
  std::uint32_t k = 1;
  double epsilon = 0.1;
  /// Ambient dimension used to look up the kissing number; taken from the
  /// graph when unset.
  std::optional<std::size_t> dim;
  SizingMode mode = SizingMode::theory;
  double c1 = 0.01;
  double c2 = 0.5;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> degree_cap_override;

  /// Throws UsageError on k < 1, eps outside (0, 1], or non-positive c1/c2
  /// in experiment mode.
  void validate() const;
};

struct SampleSizes {
  std::uint64_t s_prime = 0;
  std::uint64_t t = 0;
  std::uint64_t degree_cap = 0;

  bool operator==(const SampleSizes&) const = default;
};

SampleSizes sample_sizes(std::size_t n, std::size_t dim, const TesterConfig& cfg);

/// Best known upper bounds on the kissing number for dim <= 8; beyond that
/// ceil(2^(0.401 * 1.2 * dim)), floored at the dim = 8 value.
std::uint64_t kissing_number(std::size_t dim);

/// Decides locally whether u witnesses that v is incomplete: true iff
/// deg(v) < k, or u is not an out-neighbor of v and lies strictly inside
/// the k-th smallest neighbor distance of v. Queries deg(v), every neighbor
/// id and coordinate of v, v's coordinate and u's coordinate.
bool local_witness_check(OracleSession& session, VertexId v, VertexId u, std::uint32_t k);

enum class Decision { accept, reject };
enum class RejectReason { witness, low_degree };

struct Evidence {
  VertexId vertex = 0;
  std::optional<VertexId> witness;
  RejectReason reason = RejectReason::witness;

  bool operator==(const Evidence&) const = default;
};

struct Verdict {
  Decision decision = Decision::accept;
  std::optional<Evidence> evidence;
  SampleSizes planned;
  /// Members of S' whose degree was read before the run ended.
  std::uint64_t s_prime_examined = 0;
  /// Low-degree members (the set S) that were examined.
  std::uint64_t s_examined = 0;
  QueryTally queries;
  std::chrono::nanoseconds elapsed{0};
};

/// One-sided tester. Draws S' without replacement and T with replacement
/// from independent streams of cfg.seed, keeps the vertices of S' with
/// degree <= degree_cap, and rejects on the first vertex of degree < k or
/// the first (v, u) in S x T that passes local_witness_check.
Verdict run_tester(OracleSession& session, const TesterConfig& cfg);
Verdict run_tester(const GeometricGraph& g, const TesterConfig& cfg);

/// Worst-case queries for a finished run, any degrees up to the cap:
/// |S'| degrees + |S| cap neighbor ids + |S| (cap + 1) + |T| coordinates.
std::uint64_t query_bound(const Verdict& verdict);

const char* to_string(Decision decision) noexcept;
const char* to_string(RejectReason reason) noexcept;
const char* to_string(SizingMode mode) noexcept;

}  // namespace knntest
