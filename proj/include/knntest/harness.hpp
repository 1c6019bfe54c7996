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

// Recall sweeps: exact k-NN graphs over synthetic points are corrupted at
// several rates, bucketed by their exact epsilon-distance, and tested under
// every (c1, c2) cell of a grid.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "knntest/tester.hpp"

namespace knntest {

enum class PointDistribution { uniform, gaussian_mixture };

struct DatasetSpec {
  std::size_t n = 1024;
  std::size_t dim = 2;
  PointDistribution distribution = PointDistribution::uniform;
  /// Mixture parameters; ignored for uniform points.
  std::size_t clusters = 8;
  double sigma = 0.05;
  /// Fraction of the n k edge slots rewired per instance.
  std::vector<double> fractions;
  /// Corruption seeds per fraction.
  std::size_t seeds = 1;
};

struct SweepConfig {
  std::uint32_t k = 10;
  /// Only sets the degree cap ceil(100 k / eps) in experiment mode.
  double epsilon = 0.01;
  std::vector<std::pair<double, double>> grid;
  std::vector<DatasetSpec> datasets;
  /// Upper boundaries of the distance classes (0, b0], (b0, b1], ...;
  /// 1.0 is appended when the last boundary is below it.
  std::vector<double> buckets;
  std::size_t trials_per_cell = 1;
  std::size_t min_bucket = 30;

  /// Throws UsageError unless buckets are strictly increasing and positive,
  /// the grid and datasets are non-empty and every n exceeds k.
  void validate() const;
};

struct SweepRow {
  double c1 = 0.0;
  double c2 = 0.0;
  double bucket_lo = 0.0;
  double bucket_hi = 0.0;
  std::uint64_t instances = 0;
  std::uint64_t rejects = 0;
  double recall = 0.0;
  double mean_queries = 0.0;
  double mean_ratio = 0.0;

  bool operator==(const SweepRow&) const = default;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::uint64_t seed = 0;
  std::string version;
  std::uint32_t k = 0;
  /// Corrupted graphs that still satisfy the property; tested, never bucketed.
  std::uint64_t zero_distance_instances = 0;
  /// Every reject, checked against ground truth.
  std::uint64_t verified_rejects = 0;
  std::vector<std::string> warnings;
  std::string note;

  bool operator==(const SweepReport&) const = default;
};

/// Deterministic in (cfg, seed). Throws std::logic_error if any reject
/// fails ground-truth verification.
SweepReport run_sweep(const SweepConfig& cfg, std::uint64_t seed);

/// Total distinct queries over n k.
double query_budget_ratio(const Verdict& verdict, std::size_t n, std::uint32_t k);

/// Index of the class containing a positive distance; boundaries as
/// normalized by the sweep (last one 1.0).
std::size_t bucket_index(const std::vector<double>& boundaries, double distance);

enum class ReportFormat { csv, json };

std::string export_report(const SweepReport& report, ReportFormat format);
/// Throws IoError naming the path.
void export_report(const SweepReport& report, ReportFormat format, const std::filesystem::path& path);
SweepReport parse_report_json(std::string_view text);

SweepConfig parse_sweep_config(std::string_view text);
SweepConfig load_sweep_config(const std::filesystem::path& path);
std::string sweep_config_to_json(const SweepConfig& cfg);

const char* to_string(PointDistribution distribution) noexcept;

/// Library version string.
const char* version() noexcept;

}  // namespace knntest
