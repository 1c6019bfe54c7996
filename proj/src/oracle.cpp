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

#include "knntest/oracle.hpp"

#include <string>

#include "knntest/error.hpp"

namespace knntest {

OracleSession::OracleSession(const GeometricGraph& graph)
    : graph_(&graph), degree_asked_(graph.n(), false), coord_asked_(graph.n(), false) {}

void OracleSession::check_vertex(VertexId v) const {
  if (v >= graph_->n()) {
    throw UsageError("oracle: vertex " + std::to_string(v) + " out of range [0, " + std::to_string(graph_->n()) +
                     ")");
  }
}

std::optional<VertexId> OracleSession::neighbor(VertexId v, std::size_t i) {
  check_vertex(v);
  if (i < 1 || i > graph_->n()) {
    throw UsageError("oracle: neighbor index " + std::to_string(i) + " out of range [1, " +
                     std::to_string(graph_->n()) + "]");
  }
  const std::uint64_t key = (static_cast<std::uint64_t>(v) << 32) | static_cast<std::uint64_t>(i);
  if (neighbor_asked_.insert(key).second) {
    ++tally_.neighbor;
  }
  const auto list = graph_->neighbors(v);
  if (i > list.size()) {
    return std::nullopt;
  }
  return list[i - 1];
}

std::size_t OracleSession::degree(VertexId v) {
  check_vertex(v);
  if (!degree_asked_[v]) {
    degree_asked_[v] = true;
    ++tally_.degree;
  }
  return graph_->degree(v);
}

std::size_t OracleSession::degree_by_search(VertexId v) {
  check_vertex(v);
  // Slot lo is filled (or lo == 0); slot hi + 1 is empty. Degrees are at
  // most n - 1, so slot n is empty without asking.
  std::size_t lo = 0;
  std::size_t hi = graph_->n() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (neighbor(v, mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

std::span<const double> OracleSession::coord(VertexId v) {
  check_vertex(v);
  if (!coord_asked_[v]) {
    coord_asked_[v] = true;
    ++tally_.coord;
  }
  return graph_->point(v);
}

}  // namespace knntest
