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

// Stable JSON renderings for command-line output. Keys are emitted in a
// fixed order and wall-clock time only appears when asked for, so equal
// inputs give equal bytes.

#include <string>

#include "knntest/adversary.hpp"
#include "knntest/ground_truth.hpp"
#include "knntest/tester.hpp"

namespace knntest {

std::string to_json(const Verdict& verdict, bool include_timing = false);
std::string to_json(const DistanceReport& report);
std::string to_json(const CollisionEstimate& estimate, std::size_t budget);

}  // namespace knntest
