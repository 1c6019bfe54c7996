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

#include "knntest/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "knntest/error.hpp"
#include "knntest/generators.hpp"
#include "knntest/ground_truth.hpp"
#include "knntest/io.hpp"
#include "knntest/parallel.hpp"
#include "knntest/rng.hpp"

#ifndef KNNTEST_VERSION
#define KNNTEST_VERSION "0.0.0"
#endif

namespace knntest {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kCsvHeader = "c1,c2,bucket_lo,bucket_hi,instances,rejects,recall,mean_queries,mean_ratio\n";

constexpr const char* kCorruptionNote =
    "instances are exact k-NN graphs with a fraction of edge slots rewired to random targets; "
    "this stands in for approximate index outputs and only roughly matches their error profile";

std::vector<double> normalized_boundaries(const std::vector<double>& buckets) {
  std::vector<double> boundaries = buckets;
  if (boundaries.empty() || boundaries.back() < 1.0) {
    boundaries.push_back(1.0);
  }
  return boundaries;
}

PointSet make_points(const DatasetSpec& dataset, std::uint64_t seed) {
  return dataset.distribution == PointDistribution::uniform
             ? uniform_points(dataset.n, dataset.dim, seed)
             : gaussian_mixture_points(dataset.n, dataset.dim, dataset.clusters, dataset.sigma, seed);
}

// Per-run outcome, written into a fixed slot.
struct RunOutcome {
  bool rejected = false;
  std::uint64_t queries = 0;
  double ratio = 0.0;
};

struct InstanceOutcome {
  double distance = 0.0;
  std::vector<RunOutcome> runs;  // cell-major, then trial
};

struct Accumulator {
  std::uint64_t instances = 0;
  std::uint64_t rejects = 0;
  double queries = 0.0;
  double ratio = 0.0;
};

[[noreturn]] void config_error(const std::string& detail) { throw FormatError(0, "sweep config: " + detail); }

void check_keys(const json& object, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!object.is_object()) {
    config_error(where + " must be an object");
  }
  for (const auto& item : object.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* key) { return item.key() == key; })) {
      config_error("unknown field '" + item.key() + "' in " + where);
    }
  }
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw FormatError(0, std::string(what) + ": " + e.what());
  }
}

}  // namespace

void SweepConfig::validate() const {
  if (k < 1) {
    throw UsageError("sweep: k must be at least 1");
  }
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw UsageError("sweep: epsilon must lie in (0, 1]");
  }
  if (grid.empty()) {
    throw UsageError("sweep: grid is empty");
  }
  for (const auto& [c1, c2] : grid) {
    if (!(c1 > 0.0) || !(c2 > 0.0)) {
      throw UsageError("sweep: grid constants must be positive");
    }
  }
  if (datasets.empty()) {
    throw UsageError("sweep: no datasets");
  }
  for (const auto& dataset : datasets) {
    if (dataset.n <= k || dataset.dim < 1) {
      throw UsageError("sweep: every dataset needs n > k and dim >= 1");
    }
    if (dataset.fractions.empty() || dataset.seeds < 1) {
      throw UsageError("sweep: every dataset needs fractions and at least one seed");
    }
    for (const double f : dataset.fractions) {
      if (!(f >= 0.0 && f <= 1.0)) {
        throw UsageError("sweep: corruption fractions must lie in [0, 1]");
      }
    }
    if (dataset.distribution == PointDistribution::gaussian_mixture && (dataset.clusters < 1 || !(dataset.sigma > 0))) {
      throw UsageError("sweep: mixtures need clusters >= 1 and sigma > 0");
    }
  }
  if (buckets.empty() || !(buckets.front() > 0.0)) {
    throw UsageError("sweep: first bucket boundary must be positive");
  }
  for (std::size_t i = 1; i < buckets.size(); ++i) {
    if (!(buckets[i] > buckets[i - 1])) {
      throw UsageError("sweep: bucket boundaries must be strictly increasing");
    }
  }
  if (trials_per_cell < 1) {
    throw UsageError("sweep: trials_per_cell must be at least 1");
  }
}

std::size_t bucket_index(const std::vector<double>& boundaries, double distance) {
  const auto it = std::lower_bound(boundaries.begin(), boundaries.end(), distance);
  if (!(distance > 0.0) || it == boundaries.end()) {
    throw UsageError("bucket_index: distance outside (0, " + format_double(boundaries.back()) + "]");
  }
  return static_cast<std::size_t>(it - boundaries.begin());
}

double query_budget_ratio(const Verdict& verdict, std::size_t n, std::uint32_t k) {
  return static_cast<double>(verdict.queries.total()) / (static_cast<double>(n) * static_cast<double>(k));
}

SweepReport run_sweep(const SweepConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const std::vector<double> boundaries = normalized_boundaries(cfg.buckets);
  const std::size_t cells = cfg.grid.size();
  const std::size_t runs_per_instance = cells * cfg.trials_per_cell;

  SweepReport report;
  report.seed = seed;
  report.version = version();
  report.k = cfg.k;
  report.note = kCorruptionNote;

  std::vector<Accumulator> acc(cells * boundaries.size());

  for (std::size_t di = 0; di < cfg.datasets.size(); ++di) {
    const DatasetSpec& dataset = cfg.datasets[di];
    const std::uint64_t dataset_seed = derive_seed(seed, di);
    const PointSet points = make_points(dataset, derive_seed(dataset_seed, 0));
    const GeometricGraph exact = build_exact_knn_graph(points, cfg.k);
    const KnnReference reference(points, cfg.k);

    const std::size_t count = dataset.fractions.size() * dataset.seeds;
    std::vector<InstanceOutcome> outcomes(count);
    parallel_for(count, [&](std::size_t i) {
      const double fraction = dataset.fractions[i / dataset.seeds];
      const std::uint64_t instance_seed = derive_seed(dataset_seed, 1 + i);
      const GeometricGraph corrupted = corrupt_edges(exact, cfg.k, fraction, instance_seed);
      const DistanceReport truth = epsilon_distance(corrupted, reference, EdgeBudget::from_graph(corrupted, cfg.k));

      InstanceOutcome& out = outcomes[i];
      out.distance = truth.epsilon_distance;
      out.runs.resize(runs_per_instance);
      for (std::size_t cell = 0; cell < cells; ++cell) {
        for (std::size_t t = 0; t < cfg.trials_per_cell; ++t) {
          const std::size_t slot = cell * cfg.trials_per_cell + t;
          TesterConfig tc;
          tc.k = cfg.k;
          tc.epsilon = cfg.epsilon;
          tc.mode = SizingMode::experiment;
          tc.c1 = cfg.grid[cell].first;
          tc.c2 = cfg.grid[cell].second;
          tc.seed = derive_seed(instance_seed, 1 + slot);
          const Verdict verdict = run_tester(corrupted, tc);
          if (verdict.decision == Decision::reject) {
            const Evidence& ev = *verdict.evidence;
            if (!confirms_rejection(corrupted, cfg.k, ev.vertex, ev.witness)) {
              throw std::logic_error("sweep: unverified reject at vertex " + std::to_string(ev.vertex));
            }
          }
          out.runs[slot] = {verdict.decision == Decision::reject, verdict.queries.total(),
                            query_budget_ratio(verdict, dataset.n, cfg.k)};
        }
      }
    });

    for (const InstanceOutcome& out : outcomes) {
      const bool far = out.distance > 0.0;
      for (const RunOutcome& run : out.runs) {
        report.verified_rejects += run.rejected ? 1 : 0;
      }
      if (!far) {
        ++report.zero_distance_instances;
        continue;
      }
      const std::size_t bucket = bucket_index(boundaries, out.distance);
      for (std::size_t cell = 0; cell < cells; ++cell) {
        Accumulator& a = acc[cell * boundaries.size() + bucket];
        for (std::size_t t = 0; t < cfg.trials_per_cell; ++t) {
          const RunOutcome& run = out.runs[cell * cfg.trials_per_cell + t];
          ++a.instances;
          a.rejects += run.rejected ? 1 : 0;
          a.queries += static_cast<double>(run.queries);
          a.ratio += run.ratio;
        }
      }
    }
  }

  std::set<std::size_t> warned;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    for (std::size_t b = 0; b < boundaries.size(); ++b) {
      const Accumulator& a = acc[cell * boundaries.size() + b];
      const double lo = b == 0 ? 0.0 : boundaries[b - 1];
      const double hi = boundaries[b];
      if (a.instances == 0 || a.instances < cfg.min_bucket) {
        if (warned.insert(b).second) {
          report.warnings.push_back("bucket (" + format_double(lo) + ", " + format_double(hi) + "] dropped: " +
                                    std::to_string(a.instances) + " runs, minimum " +
                                    std::to_string(cfg.min_bucket));
        }
        continue;
      }
      SweepRow row;
      row.c1 = cfg.grid[cell].first;
      row.c2 = cfg.grid[cell].second;
      row.bucket_lo = lo;
      row.bucket_hi = hi;
      row.instances = a.instances;
      row.rejects = a.rejects;
      const auto denom = static_cast<double>(a.instances);
      row.recall = static_cast<double>(a.rejects) / denom;
      row.mean_queries = a.queries / denom;
      row.mean_ratio = a.ratio / denom;
      report.rows.push_back(row);
    }
  }
  return report;
}

std::string export_report(const SweepReport& report, ReportFormat format) {
  if (format == ReportFormat::csv) {
    std::string out = kCsvHeader;
    for (const SweepRow& row : report.rows) {
      out += format_double(row.c1) + ',' + format_double(row.c2) + ',' + format_double(row.bucket_lo) + ',' +
             format_double(row.bucket_hi) + ',' + std::to_string(row.instances) + ',' + std::to_string(row.rejects) +
             ',' + format_double(row.recall) + ',' + format_double(row.mean_queries) + ',' +
             format_double(row.mean_ratio) + '\n';
    }
    return out;
  }
  json doc;
  doc["metadata"] = {{"seed", report.seed},
                     {"version", report.version},
                     {"k", report.k},
                     {"zero_distance_instances", report.zero_distance_instances},
                     {"verified_rejects", report.verified_rejects},
                     {"warnings", report.warnings},
                     {"note", report.note}};
  json rows = json::array();
  for (const SweepRow& row : report.rows) {
    rows.push_back({{"c1", row.c1},
                    {"c2", row.c2},
                    {"bucket_lo", row.bucket_lo},
                    {"bucket_hi", row.bucket_hi},
                    {"instances", row.instances},
                    {"rejects", row.rejects},
                    {"recall", row.recall},
                    {"mean_queries", row.mean_queries},
                    {"mean_ratio", row.mean_ratio}});
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + '\n';
}

void export_report(const SweepReport& report, ReportFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out << export_report(report, format);
  out.flush();
  if (!out) {
    throw IoError("write to '" + path.string() + "' failed");
  }
}

SweepReport parse_report_json(std::string_view text) {
  const json doc = parse_json(text, "report");
  SweepReport report;
  try {
    const json& meta = doc.at("metadata");
    report.seed = meta.at("seed").get<std::uint64_t>();
    report.version = meta.at("version").get<std::string>();
    report.k = meta.at("k").get<std::uint32_t>();
    report.zero_distance_instances = meta.at("zero_distance_instances").get<std::uint64_t>();
    report.verified_rejects = meta.at("verified_rejects").get<std::uint64_t>();
    report.warnings = meta.at("warnings").get<std::vector<std::string>>();
    report.note = meta.at("note").get<std::string>();
    for (const json& r : doc.at("rows")) {
      SweepRow row;
      row.c1 = r.at("c1").get<double>();
      row.c2 = r.at("c2").get<double>();
      row.bucket_lo = r.at("bucket_lo").get<double>();
      row.bucket_hi = r.at("bucket_hi").get<double>();
      row.instances = r.at("instances").get<std::uint64_t>();
      row.rejects = r.at("rejects").get<std::uint64_t>();
      row.recall = r.at("recall").get<double>();
      row.mean_queries = r.at("mean_queries").get<double>();
      row.mean_ratio = r.at("mean_ratio").get<double>();
      report.rows.push_back(row);
    }
  } catch (const json::exception& e) {
    throw FormatError(0, std::string("report: ") + e.what());
  }
  return report;
}

SweepConfig parse_sweep_config(std::string_view text) {
  const json doc = parse_json(text, "sweep config");
  SweepConfig cfg;
  try {
    check_keys(doc, {"k", "epsilon", "grid", "datasets", "buckets", "trials_per_cell", "min_bucket"}, "config");
    cfg.k = doc.at("k").get<std::uint32_t>();
    cfg.epsilon = doc.value("epsilon", cfg.epsilon);
    for (const json& cell : doc.at("grid")) {
      if (!cell.is_array() || cell.size() != 2) {
        config_error("grid entries must be [c1, c2] pairs");
      }
      cfg.grid.emplace_back(cell[0].get<double>(), cell[1].get<double>());
    }
    for (const json& d : doc.at("datasets")) {
      check_keys(d, {"n", "dim", "distribution", "clusters", "sigma", "fractions", "seeds"}, "dataset");
      DatasetSpec dataset;
      dataset.n = d.at("n").get<std::size_t>();
      dataset.dim = d.at("dim").get<std::size_t>();
      const std::string dist = d.value("distribution", std::string("uniform"));
      if (dist == "uniform") {
        dataset.distribution = PointDistribution::uniform;
      } else if (dist == "gaussian-mixture") {
        dataset.distribution = PointDistribution::gaussian_mixture;
      } else {
        config_error("unknown distribution '" + dist + "'");
      }
      dataset.clusters = d.value("clusters", dataset.clusters);
      dataset.sigma = d.value("sigma", dataset.sigma);
      dataset.fractions = d.at("fractions").get<std::vector<double>>();
      dataset.seeds = d.value("seeds", dataset.seeds);
      cfg.datasets.push_back(std::move(dataset));
    }
    cfg.buckets = doc.at("buckets").get<std::vector<double>>();
    cfg.trials_per_cell = doc.value("trials_per_cell", cfg.trials_per_cell);
    cfg.min_bucket = doc.value("min_bucket", cfg.min_bucket);
  } catch (const json::exception& e) {
    config_error(e.what());
  }
  cfg.validate();
  return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_sweep_config(buffer.str());
  } catch (const FormatError& e) {
    throw FormatError(e.line(), e.detail(), path.string());
  }
}

std::string sweep_config_to_json(const SweepConfig& cfg) {
  json doc;
  doc["k"] = cfg.k;
  doc["epsilon"] = cfg.epsilon;
  json grid = json::array();
  for (const auto& [c1, c2] : cfg.grid) {
    grid.push_back({c1, c2});
  }
  doc["grid"] = std::move(grid);
  json datasets = json::array();
  for (const DatasetSpec& dataset : cfg.datasets) {
    datasets.push_back({{"n", dataset.n},
                        {"dim", dataset.dim},
                        {"distribution", to_string(dataset.distribution)},
                        {"clusters", dataset.clusters},
                        {"sigma", dataset.sigma},
                        {"fractions", dataset.fractions},
                        {"seeds", dataset.seeds}});
  }
  doc["datasets"] = std::move(datasets);
  doc["buckets"] = cfg.buckets;
  doc["trials_per_cell"] = cfg.trials_per_cell;
  doc["min_bucket"] = cfg.min_bucket;
  return doc.dump(2) + '\n';
}

const char* to_string(PointDistribution distribution) noexcept {
  return distribution == PointDistribution::uniform ? "uniform" : "gaussian-mixture";
}

const char* version() noexcept { return KNNTEST_VERSION; }

}  // namespace knntest
