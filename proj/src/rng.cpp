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

#include "knntest/rng.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <utility>

namespace knntest {

std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t count, Rng& rng) {
  count = std::min(count, n);
  std::vector<std::uint32_t> out;
  out.reserve(count);
  if (static_cast<std::uint64_t>(count) * 8 >= n) {
    std::vector<std::uint32_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0u);
    for (std::uint32_t i = 0; i < count; ++i) {
      const auto j = static_cast<std::uint32_t>(i + rng.below(n - i));
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return out;
  }
  // Sparse variant: only displaced slots are materialized. Same draw
  // sequence and result as the dense branch.
  std::unordered_map<std::uint32_t, std::uint32_t> displaced;
  auto slot = [&](std::uint32_t i) {
    const auto it = displaced.find(i);
    return it == displaced.end() ? i : it->second;
  };
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto j = static_cast<std::uint32_t>(i + rng.below(n - i));
    const std::uint32_t at_i = slot(i);
    const std::uint32_t at_j = slot(j);
    displaced[j] = at_i;
    out.push_back(at_j);
  }
  return out;
}

std::vector<std::uint32_t> random_permutation(std::uint32_t n, Rng& rng) {
  return sample_without_replacement(n, n, rng);
}

}  // namespace knntest
