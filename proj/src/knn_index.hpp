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

// Exact k-d tree over a PointSet. Box bounds are summed in the same order
// as dist2_unchecked, and rounding is monotone, so a bound never exceeds
// the computed distance of any point in the box: results match a linear
// scan bit for bit, ties included.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "knntest/core.hpp"

namespace knntest::detail {

class KnnIndex {
 public:
  explicit KnnIndex(const PointSet& points, std::size_t leaf_size = 16) : points_(points), dim_(points.dim()) {
    order_.resize(points.size());
    for (std::size_t i = 0; i < order_.size(); ++i) {
      order_[i] = static_cast<VertexId>(i);
    }
    if (!order_.empty()) {
      build(0, order_.size(), leaf_size);
    }
  }

  /// k-th smallest squared distance from v to the other points; k < n.
  double kth_dist2(VertexId v, std::uint32_t k) const {
    const double* q = points_.row(v);
    std::priority_queue<double> best;
    visit(q, [&] { return best.size() < k ? kInfinity : best.top(); },
          [&](VertexId u, double d) {
            if (u == v) {
              return;
            }
            if (best.size() < k) {
              best.push(d);
            } else if (d < best.top()) {
              best.pop();
              best.push(d);
            }
          });
    return best.top();
  }

  /// Calls f(u, d) for every u != v with d = dist2(v, u) <= r2.
  template <typename F>
  void within(VertexId v, double r2, F&& f) const {
    const double* q = points_.row(v);
    visit(q, [r2] { return r2; },
          [&](VertexId u, double d) {
            if (u != v && d <= r2) {
              f(u, d);
            }
          });
  }

 private:
  static constexpr double kInfinity = std::numeric_limits<double>::infinity();

  struct Node {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t left = 0;  // children; 0 marks a leaf
    std::size_t right = 0;
  };

  std::size_t build(std::size_t begin, std::size_t end, std::size_t leaf_size) {
    const std::size_t id = nodes_.size();
    nodes_.push_back({begin, end, 0, 0});
    lo_.resize((id + 1) * dim_);
    hi_.resize((id + 1) * dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      double mn = kInfinity;
      double mx = -kInfinity;
      for (std::size_t i = begin; i < end; ++i) {
        const double x = points_.row(order_[i])[j];
        mn = std::min(mn, x);
        mx = std::max(mx, x);
      }
      lo_[id * dim_ + j] = mn;
      hi_[id * dim_ + j] = mx;
    }
    if (end - begin <= leaf_size) {
      return id;
    }
    std::size_t axis = 0;
    for (std::size_t j = 1; j < dim_; ++j) {
      if (hi_[id * dim_ + j] - lo_[id * dim_ + j] > hi_[id * dim_ + axis] - lo_[id * dim_ + axis]) {
        axis = j;
      }
    }
    if (!(hi_[id * dim_ + axis] > lo_[id * dim_ + axis])) {
      return id;  // all points coincide
    }
    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                     order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](VertexId a, VertexId b) { return points_.row(a)[axis] < points_.row(b)[axis]; });
    const std::size_t left = build(begin, mid, leaf_size);
    const std::size_t right = build(mid, end, leaf_size);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  double box_bound(std::size_t id, const double* q) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      const double lo = lo_[id * dim_ + j];
      const double hi = hi_[id * dim_ + j];
      double gap = 0.0;
      if (q[j] < lo) {
        gap = lo - q[j];
      } else if (q[j] > hi) {
        gap = q[j] - hi;
      }
      sum += gap * gap;
    }
    return sum;
  }

  /// Depth-first, nearer child first; a box is skipped when its bound
  /// exceeds radius(), which may shrink during the walk.
  template <typename Radius, typename Emit>
  void visit(const double* q, Radius&& radius, Emit&& emit) const {
    std::vector<std::pair<double, std::size_t>> stack;
    stack.emplace_back(box_bound(0, q), 0);
    while (!stack.empty()) {
      const auto [bound, id] = stack.back();
      stack.pop_back();
      if (bound > radius()) {
        continue;
      }
      const Node& node = nodes_[id];
      if (node.left == 0) {
        for (std::size_t i = node.begin; i < node.end; ++i) {
          const VertexId u = order_[i];
          emit(u, dist2_unchecked(q, points_.row(u), dim_));
        }
        continue;
      }
      const double bl = box_bound(node.left, q);
      const double br = box_bound(node.right, q);
      if (bl <= br) {
        stack.emplace_back(br, node.right);
        stack.emplace_back(bl, node.left);
      } else {
        stack.emplace_back(bl, node.left);
        stack.emplace_back(br, node.right);
      }
    }
  }

  const PointSet& points_;
  std::size_t dim_;
  std::vector<VertexId> order_;
  std::vector<Node> nodes_;
  std::vector<double> lo_;
  std::vector<double> hi_;
};

}  // namespace knntest::detail
