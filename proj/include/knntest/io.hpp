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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "knntest/core.hpp"

namespace knntest {

// .knng text format (UTF-8, LF line endings):
//
//   knng 1 <n> <dim> <k_hint or 0>
//   <dim floats>                      one line per vertex, in id order
//   <deg> <id_1> ... <id_deg>         one line per vertex, in id order
//
// Floats are written as the shortest decimal that parses back to the same
// binary64, so write -> read is bit-exact.

/// Shortest round-tripping decimal for a finite double.
std::string format_double(double value);

GeometricGraph read_knng(std::istream& in);
GeometricGraph read_knng(const std::filesystem::path& path);
void write_knng(std::ostream& out, const GeometricGraph& g);
void write_knng(const std::filesystem::path& path, const GeometricGraph& g);

/// One point per line, comma-separated. Blank lines and lines starting
/// with '#' are skipped; a first line that does not parse as numbers is
/// treated as a header.
PointSet read_points_csv(std::istream& in);
PointSet read_points_csv(const std::filesystem::path& path);
void write_points_csv(std::ostream& out, const PointSet& points);
void write_points_csv(const std::filesystem::path& path, const PointSet& points);

}  // namespace knntest
