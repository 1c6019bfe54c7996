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

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "knntest/core.hpp"

namespace knntest {

struct QueryTally {
  std::uint64_t neighbor = 0;
  std::uint64_t degree = 0;
  std::uint64_t coord = 0;

  std::uint64_t total() const noexcept { return neighbor + degree + coord; }
  bool operator==(const QueryTally&) const = default;
};

/// Query-counting access to a GeometricGraph through the three oracle
/// functions: i-th neighbor, degree, and coordinate. Each distinct
/// (kind, vertex, index) is charged once; repeats are answered from memo.
///
/// n and the dimension are part of the input description and are free.
/// A session belongs to one logical task; sessions over the same graph may
/// run concurrently.
class OracleSession {
 public:
  explicit OracleSession(const GeometricGraph& graph);

  std::size_t vertex_count() const noexcept { return graph_->n(); }
  std::size_t dim() const noexcept { return graph_->dim(); }

  /// i is 1-based. Returns nullopt (the "no such neighbor" symbol) when
  /// degree(v) < i.
  std::optional<VertexId> neighbor(VertexId v, std::size_t i);
  std::size_t degree(VertexId v);
  /// Degree found by binary search over neighbor(v, i); charged only as
  /// neighbor queries, O(log n) of them.
  std::size_t degree_by_search(VertexId v);
  std::span<const double> coord(VertexId v);

  const QueryTally& tally() const noexcept { return tally_; }

  /// Unmetered access, for post-hoc verification only.
  const GeometricGraph& graph() const noexcept { return *graph_; }

 private:
  void check_vertex(VertexId v) const;

  const GeometricGraph* graph_;
  QueryTally tally_;
  std::vector<bool> degree_asked_;
  std::vector<bool> coord_asked_;
  std::unordered_set<std::uint64_t> neighbor_asked_;
};

}  // namespace knntest
