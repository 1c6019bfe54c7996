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

// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are pinned
// below; nothing is tuned to the outcome.
//
//   acceptance [--cli PATH] [--work DIR] [criterion ...]

#include <boost/math/distributions/binomial.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "knntest/adversary.hpp"
#include "knntest/generators.hpp"
#include "knntest/ground_truth.hpp"
#include "knntest/harness.hpp"
#include "knntest/io.hpp"
#include "knntest/parallel.hpp"
#include "knntest/rng.hpp"
#include "knntest/serialize.hpp"
#include "knntest/tester.hpp"
#include "oracles.hpp"

namespace {

using namespace knntest;

// ---- pinned parameters ------------------------------------------------------

constexpr std::size_t kC1Points = 2048;
constexpr double kC1Epsilon = 0.1;
constexpr std::size_t kC1RunsPerGraph = 112;  // 9 graphs -> 1008 runs

// 4096 is not a multiple of k+1 = 3; the nearest valid size below is used.
constexpr std::size_t kC2Points = 4095;
constexpr std::uint32_t kC2K = 2;
constexpr double kC2Epsilon = 0.05;
constexpr std::size_t kC2Seeds = 300;
constexpr double kC2MinFrequency = 2.0 / 3.0;
constexpr double kC2MinLowerBound = 0.60;
constexpr double kC2Alpha = 0.01;

constexpr double kC3Constant = 300.0;

constexpr std::size_t kC5Sets = 100;
constexpr std::size_t kC5Points = 200;

constexpr std::size_t kC6Random = 200;

constexpr std::size_t kC7Points = 4096;
constexpr double kC7Epsilon = 0.1;
constexpr std::size_t kC7Trials = 10'000;
constexpr double kC7Sigmas = 3.0;

constexpr std::size_t kC8Points = 16'384;
constexpr std::uint32_t kC8K = 10;
constexpr std::size_t kC8Seeds = 50;
constexpr double kC8TopRecall = 0.9;

constexpr std::size_t kC9Points = 65'536;
constexpr std::uint32_t kC9K = 10;
constexpr double kC9MaxRatio = 0.1;

constexpr std::uint64_t kSeed = 20260101;

// ---- reporting --------------------------------------------------------------

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x, int digits = 4) {
  std::ostringstream out;
  out.precision(digits);
  out << x;
  return out.str();
}

// Theory-mode runs shared between criteria 1, 2 and 3.
struct TheoryRun {
  std::size_t n = 0;
  std::uint32_t k = 0;
  double epsilon = 0.0;
  std::uint64_t psi = 0;
  Verdict verdict;
};

std::vector<TheoryRun> g_theory_runs;
std::vector<DistanceReport> g_far_reports;  // with the epsilon they were generated for
std::vector<double> g_far_epsilons;
std::filesystem::path g_cli;
std::filesystem::path g_work;

// ---- criteria ---------------------------------------------------------------

Outcome criterion1() {
  std::size_t runs = 0;
  std::size_t rejects = 0;
  for (std::uint32_t k : {1u, 5u, 10u}) {
    for (std::size_t dim : {2u, 4u, 8u}) {
      const auto points = uniform_points(kC1Points, dim, derive_seed(kSeed, 100 * k + dim));
      const auto g = build_exact_knn_graph(points, k);
      std::vector<Verdict> verdicts(kC1RunsPerGraph);
      parallel_for(kC1RunsPerGraph, [&](std::size_t i) {
        TesterConfig cfg;
        cfg.k = k;
        cfg.epsilon = kC1Epsilon;
        cfg.seed = derive_seed(kSeed + 1, (100 * k + dim) * 10'000 + i);
        verdicts[i] = run_tester(g, cfg);
      });
      for (auto& v : verdicts) {
        ++runs;
        rejects += v.decision == Decision::reject ? 1 : 0;
        g_theory_runs.push_back({kC1Points, k, kC1Epsilon, kissing_number(dim), std::move(v)});
      }
    }
  }
  return {runs >= 1000 && rejects == 0,
          std::to_string(rejects) + " rejections in " + std::to_string(runs) + " theory-mode runs on exact graphs"};
}

Outcome criterion2() {
  std::vector<Verdict> verdicts(kC2Seeds);
  std::vector<DistanceReport> reports(kC2Seeds);
  parallel_for(kC2Seeds, [&](std::size_t i) {
    const auto g = sample_d2(kC2Points, kC2K, kC2Epsilon, derive_seed(kSeed + 2, i));
    reports[i] = epsilon_distance(g, kC2K, EdgeBudget::from_graph(g, kC2K));
    TesterConfig cfg;
    cfg.k = kC2K;
    cfg.epsilon = kC2Epsilon;
    cfg.seed = derive_seed(kSeed + 3, i);
    verdicts[i] = run_tester(g, cfg);
    if (verdicts[i].decision == Decision::reject &&
        !confirms_rejection(g, kC2K, verdicts[i].evidence->vertex, verdicts[i].evidence->witness)) {
      throw std::logic_error("criterion 2: unverified reject");
    }
  });
  std::size_t rejects = 0;
  for (std::size_t i = 0; i < kC2Seeds; ++i) {
    rejects += verdicts[i].decision == Decision::reject ? 1 : 0;
    g_theory_runs.push_back({kC2Points, kC2K, kC2Epsilon, kissing_number(1), verdicts[i]});
    g_far_reports.push_back(reports[i]);
    g_far_epsilons.push_back(kC2Epsilon);
  }
  const double freq = static_cast<double>(rejects) / kC2Seeds;
  const double lower = boost::math::binomial_distribution<>::find_lower_bound_on_p(
      static_cast<double>(kC2Seeds), static_cast<double>(rejects), kC2Alpha,
      boost::math::binomial_distribution<>::clopper_pearson_exact_interval);
  return {freq >= kC2MinFrequency && lower > kC2MinLowerBound,
          "rejected " + std::to_string(rejects) + "/" + std::to_string(kC2Seeds) + " D2 instances (n=" +
              std::to_string(kC2Points) + "), frequency " + fmt(freq) + ", 99% Clopper-Pearson lower bound " +
              fmt(lower)};
}

Outcome criterion3() {
  if (g_theory_runs.empty()) {
    return {false, "needs the runs of criteria 1 and 2"};
  }
  std::size_t violations = 0;
  double worst_measured = 0.0;
  double worst_closed = 0.0;
  for (const auto& run : g_theory_runs) {
    const auto& v = run.verdict;
    const std::uint64_t closed = v.planned.s_prime + v.s_examined * (v.planned.degree_cap + 2) + v.planned.t;
    const double rhs = kC3Constant * std::sqrt(static_cast<double>(run.n)) * run.k * run.k *
                       static_cast<double>(run.psi) / (run.epsilon * run.epsilon);
    if (v.queries.total() > closed || static_cast<double>(closed) > rhs) {
      ++violations;
    }
    worst_measured = std::max(worst_measured, static_cast<double>(v.queries.total()) / static_cast<double>(closed));
    worst_closed = std::max(worst_closed, static_cast<double>(closed) / rhs);
  }
  return {violations == 0, std::to_string(violations) + " violations over " + std::to_string(g_theory_runs.size()) +
                               " runs; max measured/closed-form " + fmt(worst_measured) +
                               ", max closed-form/(300 sqrt(n) k^2 psi / eps^2) " + fmt(worst_closed)};
}

Outcome criterion4() {
  struct Instance {
    DistanceReport report;
    double epsilon;
    std::size_t n;
    std::uint32_t k;
  };
  std::vector<Instance> instances;
  for (std::size_t i = 0; i < g_far_reports.size(); ++i) {
    instances.push_back({g_far_reports[i], g_far_epsilons[i], kC2Points, kC2K});
  }
  // D2 over a parameter grid.
  for (std::uint32_t k : {1u, 3u, 5u}) {
    for (double eps : {0.01, 0.05, 0.2}) {
      const std::size_t n = 600 * (k + 1);
      for (std::uint64_t s = 0; s < 5; ++s) {
        const auto g = sample_d2(n, k, eps, derive_seed(kSeed + 4, k * 1000 + s));
        instances.push_back({epsilon_distance(g, k, EdgeBudget::from_graph(g, k)), eps, n, k});
      }
    }
  }
  // Dimension lower-bound pairs.
  for (std::uint32_t k : {1u, 2u, 3u}) {
    for (double eps : {0.01, 0.05, 0.1}) {
      const auto pair = dimension_lb_instances(3, k, eps, 60);
      instances.push_back({epsilon_distance(pair.far, k, EdgeBudget::from_graph(pair.far, k)), eps, pair.far.n(), k});
    }
  }
  // Corrupted exact graphs at several target distances.
  const auto points = uniform_points(3000, 3, kSeed + 5);
  for (std::uint32_t k : {2u, 8u}) {
    const auto exact = build_exact_knn_graph(points, k);
    const KnnReference reference(points, k);
    for (double f : {0.002, 0.02, 0.2}) {
      for (double eps : {0.001, 0.01, 0.1}) {
        const auto g = corrupt_edges(exact, k, f, derive_seed(kSeed + 6, static_cast<std::uint64_t>(f * 1e6) + k));
        instances.push_back({epsilon_distance(g, reference, EdgeBudget::from_graph(g, k)), eps, 3000, k});
      }
    }
  }
  std::size_t far = 0;
  std::size_t violations = 0;
  double tightest = std::numeric_limits<double>::infinity();
  for (const auto& inst : instances) {
    if (!(inst.report.epsilon_distance > inst.epsilon)) {
      continue;
    }
    ++far;
    const double needed = inst.epsilon * inst.report.budget.d * static_cast<double>(inst.n) / (2.0 * inst.k);
    if (static_cast<double>(inst.report.incomplete_count) < needed) {
      ++violations;
    }
    tightest = std::min(tightest, static_cast<double>(inst.report.incomplete_count) / needed);
  }
  return {far > 0 && violations == 0, std::to_string(violations) + " violations over " + std::to_string(far) +
                                          " eps-far instances; min incomplete/(eps d n / 2k) " + fmt(tightest)};
}

Outcome criterion5() {
  std::size_t violations = 0;
  std::size_t sets = 0;
  for (std::size_t dim : {1u, 2u, 3u}) {
    for (std::uint32_t k : {1u, 2u, 3u}) {
      for (std::size_t i = 0; i < kC5Sets; ++i) {
        const std::uint64_t seed = derive_seed(kSeed + 7, dim * 100'000 + k * 1000 + i);
        const auto points = i % 2 == 0 ? uniform_points(kC5Points, dim, seed)
                                       : gaussian_mixture_points(kC5Points, dim, 3, 0.05, seed);
        ++sets;
        if (max_shared_knn(points, k) > k * kissing_number(dim)) {
          ++violations;
        }
      }
    }
  }
  std::vector<std::string> tight;
  bool tight_ok = true;
  for (std::uint32_t k = 1; k <= 5; ++k) {
    const auto construction = tight_witness_construction(3, k);
    const auto shared = max_shared_knn(construction.graph.points(), k);
    const auto at_focal = oracle::shared_knn(construction.graph.points(), construction.focal, k);
    tight_ok = tight_ok && shared == 12 * k && at_focal == 12 * k;
    tight.push_back(std::to_string(shared));
  }
  std::string attained;
  for (const auto& t : tight) {
    attained += (attained.empty() ? "" : ",") + t;
  }
  return {violations == 0 && tight_ok, "(a) " + std::to_string(violations) + " violations over " +
                                           std::to_string(sets) + " point sets; (b) dim-3 construction attains " +
                                           attained + " for k=1..5 (12k expected)"};
}

Outcome criterion6() {
  std::vector<std::pair<GeometricGraph, std::uint32_t>> cases;
  Rng rng(kSeed + 8);
  for (std::size_t i = 0; i < kC6Random; ++i) {
    const std::uint32_t k = 1 + static_cast<std::uint32_t>(rng.below(3));
    const std::size_t n = k + 1 + rng.below(12 - k);
    const std::size_t dim = 1 + rng.below(3);
    const int side = 2 + static_cast<int>(rng.below(4));
    const auto points = oracle::grid_points(n, dim, side, rng.next());
    cases.emplace_back(GeometricGraph(points, oracle::random_adjacency(n, 0, n - 1, rng.next())), k);
  }
  for (std::uint32_t k = 1; k <= 3; ++k) {
    const auto gadget = line_gadget(0.0, k);
    cases.emplace_back(gadget, k);
    for (VertexId v = 0; v <= k; ++v) {
      // Each single missing edge, and each whole emptied list.
      for (VertexId u : gadget.neighbors(v)) {
        AdjacencyList adjacency = gadget.adjacency();
        std::erase(adjacency[v], u);
        cases.emplace_back(GeometricGraph(gadget.points(), adjacency), k);
      }
      AdjacencyList emptied = gadget.adjacency();
      emptied[v].clear();
      cases.emplace_back(GeometricGraph(gadget.points(), emptied), k);
    }
    for (std::uint64_t s = 0; s < 4; ++s) {
      cases.emplace_back(sample_d1(12 / (k + 1) * (k + 1), k, s), k);
    }
    const auto line = tight_witness_construction(1, k);
    cases.emplace_back(line.graph, k);
    cases.emplace_back(build_exact_knn_graph(line.graph.points(), k), k);
  }
  for (std::uint64_t s = 0; s < 4; ++s) {
    cases.emplace_back(sample_d2(12, 1, 0.1, s), 1);
    cases.emplace_back(sample_d2(12, 1, 0.3, s), 1);
    cases.emplace_back(sample_d2(12, 2, 0.25, s), 2);
    cases.emplace_back(sample_d2(12, 3, 0.25, s), 3);
  }
  std::size_t mismatches = 0;
  for (const auto& [g, k] : cases) {
    const auto budget = EdgeBudget::from_graph(g, k);
    const auto report = epsilon_distance(g, k, budget);
    const std::uint64_t expected = oracle::min_insertions(g, k);
    const double scaled = static_cast<double>(expected) / (budget.d * static_cast<double>(g.n()));
    if (report.min_edits != expected || report.epsilon_distance != scaled ||
        std::llround(report.epsilon_distance * budget.d * static_cast<double>(g.n())) !=
            static_cast<long long>(expected)) {
      ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches against exhaustive search over " +
                               std::to_string(cases.size()) + " graphs (n <= 12, k <= 3)"};
}

Outcome criterion7() {
  const std::size_t b = lower_bound_budget(kC7Points, 1, kC7Epsilon);
  const auto est = estimate_collision_probability(kC7Points, 1, kC7Epsilon, b, kC7Trials, kSeed + 9);
  const bool quarter = est.p_hat <= 0.25 + kC7Sigmas * est.std_error;
  const bool union_ok = est.p_hat <= est.union_bound + kC7Sigmas * est.std_error;
  return {b == 50 && quarter && union_ok, "b=" + std::to_string(b) + ", p_hat=" + fmt(est.p_hat) + " (stderr " +
                                              fmt(est.std_error) + "), union bound " + fmt(est.union_bound)};
}

SweepConfig criterion8_config() {
  SweepConfig cfg;
  cfg.k = kC8K;
  for (double c1 : {0.001, 0.01, 0.1}) {
    for (double c2 : {0.05, 0.5, 5.0}) {
      cfg.grid.emplace_back(c1, c2);
    }
  }
  DatasetSpec uniform;
  uniform.n = kC8Points;
  uniform.dim = 4;
  uniform.fractions = {5e-5, 5e-4, 3e-3, 7.5e-3, 1.5e-2, 4e-2};
  uniform.seeds = kC8Seeds;
  DatasetSpec mixture = uniform;
  mixture.dim = 8;
  mixture.distribution = PointDistribution::gaussian_mixture;
  mixture.clusters = 16;
  mixture.sigma = 0.05;
  cfg.datasets = {uniform, mixture};
  cfg.buckets = {1e-4, 1e-3, 5e-3, 1e-2, 2e-2};
  cfg.min_bucket = 30;
  return cfg;
}

Outcome criterion8() {
  const auto report = run_sweep(criterion8_config(), kSeed + 10);
  std::map<std::pair<double, double>, std::vector<SweepRow>> by_cell;
  for (const auto& row : report.rows) {
    by_cell[{row.c1, row.c2}].push_back(row);
  }
  bool monotone = true;
  std::string breaks;
  for (const auto& [cell, rows] : by_cell) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].recall < rows[i - 1].recall) {
        monotone = false;
        breaks += " (" + fmt(cell.first) + "," + fmt(cell.second) + ") at " + fmt(rows[i].bucket_lo);
      }
    }
  }
  double top = -1.0;
  std::size_t top_instances = 0;
  const auto it = by_cell.find({0.1, 5.0});
  if (it != by_cell.end()) {
    for (const auto& row : it->second) {
      if (row.bucket_lo >= 0.02) {
        top = row.recall;
        top_instances = row.instances;
      }
    }
  }
  const bool complete = by_cell.size() == 9 && report.warnings.empty();
  std::string per_bucket;
  if (it != by_cell.end()) {
    for (const auto& row : it->second) {
      per_bucket += (per_bucket.empty() ? "" : " ") + fmt(row.recall, 3);
    }
  }
  std::filesystem::create_directories(g_work);
  export_report(report, ReportFormat::csv, g_work / "criterion8_sweep.csv");
  return {complete && monotone && top >= kC8TopRecall,
          std::string(monotone ? "recall non-decreasing in every cell" : "non-monotone:" + breaks) +
              "; cell (0.1,5) recall by bucket [" + per_bucket + "], top bucket " + fmt(top) + " over " +
              std::to_string(top_instances) + " runs" + (complete ? "" : "; missing buckets or cells")};
}

Outcome criterion9() {
  TesterConfig cfg;
  cfg.k = kC9K;
  cfg.mode = SizingMode::experiment;
  cfg.c1 = 0.01;
  cfg.c2 = 0.5;
  cfg.epsilon = 0.01;
  const auto sizes = sample_sizes(kC9Points, 2, cfg);
  // Graphs of out-degree k: |S'| degrees, k ids and k+1 coordinates per
  // member of S, |T| coordinates.
  const std::uint64_t bound = sizes.s_prime + sizes.s_prime * (2 * kC9K + 1) + sizes.t;
  const double formula_ratio = static_cast<double>(bound) / (static_cast<double>(kC9Points) * kC9K);

  const auto g = build_exact_knn_graph(uniform_points(kC9Points, 2, kSeed + 11), kC9K);
  double worst = 0.0;
  bool accepted = true;
  for (std::uint64_t s = 0; s < 5; ++s) {
    cfg.seed = derive_seed(kSeed + 12, s);
    const auto verdict = run_tester(g, cfg);
    accepted = accepted && verdict.decision == Decision::accept;
    worst = std::max(worst, query_budget_ratio(verdict, kC9Points, kC9K));
  }
  return {formula_ratio <= kC9MaxRatio && worst <= formula_ratio && accepted,
          "|S'|=" + std::to_string(sizes.s_prime) + ", |T|=" + std::to_string(sizes.t) + ", formula ratio " +
              fmt(formula_ratio) + ", measured max " + fmt(worst) + " on an exact 10-NN graph"};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Outcome criterion10() {
  std::vector<std::string> failures;
  auto same = [&](const std::string& what, const std::function<std::string()>& produce) {
    if (produce() != produce()) {
      failures.push_back(what);
    }
  };
  const auto g = sample_d2(900, 2, 0.05, 3);
  same("tester verdict", [&] {
    TesterConfig cfg;
    cfg.k = 2;
    cfg.epsilon = 0.05;
    cfg.seed = 99;
    return to_json(run_tester(g, cfg));
  });
  same("distance report", [&] { return to_json(epsilon_distance(g, 2, EdgeBudget::from_graph(g, 2), 0.05)); });
  same("collision estimate", [&] { return to_json(estimate_collision_probability(2048, 1, 0.1, 30, 2000, 5), 30); });
  same("generated graph", [&] {
    std::ostringstream out;
    write_knng(out, corrupt_edges(build_exact_knn_graph(uniform_points(300, 3, 4), 4), 4, 0.05, 6));
    return out.str();
  });
  SweepConfig small;
  small.k = 3;
  small.grid = {{0.1, 0.5}, {0.5, 5.0}};
  DatasetSpec ds;
  ds.n = 300;
  ds.dim = 2;
  ds.fractions = {0.0, 0.01, 0.1};
  ds.seeds = 4;
  small.datasets = {ds};
  small.buckets = {0.005, 0.05};
  small.min_bucket = 1;
  same("sweep csv", [&] { return export_report(run_sweep(small, 8), ReportFormat::csv); });
  same("sweep json", [&] { return export_report(run_sweep(small, 8), ReportFormat::json); });

  std::size_t cli_commands = 0;
  if (!g_cli.empty()) {
    std::filesystem::create_directories(g_work);
    const std::string cli = g_cli.string();
    const auto dir = g_work;
    {
      std::ofstream cfg(dir / "sweep.json");
      cfg << sweep_config_to_json(small);
    }
    const std::vector<std::pair<std::string, std::string>> commands{
        {"generate d2 --n 600 --k 2 --epsilon 0.1 --seed 4 -o @/d2.knng", "d2.knng"},
        {"test @/d2.knng --k 2 --epsilon 0.1 --seed 5 --json > @/test.json", "test.json"},
        {"distance @/d2.knng --k 2 > @/distance.json", "distance.json"},
        {"generate points --n 200 --dim 3 --seed 6 -o @/points.csv", "points.csv"},
        {"build-knn @/points.csv --k 4 -o @/exact.knng", "exact.knng"},
        {"generate corrupt @/exact.knng --k 4 --fraction 0.1 --seed 7 -o @/corrupt.knng", "corrupt.knng"},
        {"adversary --n 2048 --k 1 --epsilon 0.1 --trials 500 --seed 8 --json > @/adversary.json", "adversary.json"},
        {"sweep --config @/sweep.json -o @/report.csv --json @/report.json --seed 9", "report.csv"},
        {"sweep --config @/sweep.json -o @/report.csv --json @/report.json --seed 9", "report.json"},
    };
    for (const auto& [args, output] : commands) {
      std::string line = args;
      for (std::size_t pos = line.find('@'); pos != std::string::npos; pos = line.find('@')) {
        line.replace(pos, 1, dir.string());
      }
      const std::string command = "\"" + cli + "\" " + line + " 2>/dev/null";
      std::string first;
      for (int round = 0; round < 2; ++round) {
        const int status = std::system(command.c_str());
        const std::string bytes = slurp(dir / output);
        if (status == -1 || bytes.empty()) {
          failures.push_back("cli " + args + " produced no output");
          break;
        }
        if (round == 0) {
          first = bytes;
        } else if (bytes != first) {
          failures.push_back("cli " + args);
        }
      }
      ++cli_commands;
    }
  }
  std::string detail = failures.empty() ? "library outputs and " + std::to_string(cli_commands) +
                                              " CLI commands byte-identical on re-run"
                                        : "differences:";
  for (const auto& f : failures) {
    detail += " [" + f + "]";
  }
  return {failures.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  g_work = std::filesystem::temp_directory_path() / "knntest_acceptance";
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      g_cli = argv[++i];
    } else if (arg == "--work" && i + 1 < argc) {
      g_work = argv[++i];
    } else {
      selected.insert(std::stoi(arg));
    }
  }
  const std::vector<std::pair<std::string, Outcome (*)()>> criteria{
      {"one-sided error on exact k-NN graphs", criterion1},
      {"soundness on eps-far D2 instances", criterion2},
      {"query complexity closed form", criterion3},
      {"eps-far instances have many incomplete vertices", criterion4},
      {"witness-sharing bound and tightness", criterion5},
      {"eps-distance equals exhaustive minimal edits", criterion6},
      {"lower-bound collision probability", criterion7},
      {"recall-by-bucket shape", criterion8},
      {"query-budget ratio", criterion9},
      {"determinism", criterion10},
  };
  // Criterion 3 reuses the runs of 1 and 2, criterion 4 those of 2.
  if (selected.count(3) || selected.count(4)) {
    selected.insert(2);
  }
  if (selected.count(3)) {
    selected.insert(1);
  }
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!selected.empty() && !selected.count(id)) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += outcome.pass ? 0 : 1;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << criteria[i].first << " -- "
              << outcome.detail << " [" << fmt(seconds, 3) << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
