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

// knntest command line: sublinear k-NN graph testing, exact ground truth,
// instance generators, the collision experiment and recall sweeps.
//
// Exit codes: 0 success / accept, 3 reject, 64 usage, 65 malformed input,
// 70 internal error, 74 I/O error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "knntest/adversary.hpp"
#include "knntest/error.hpp"
#include "knntest/generators.hpp"
#include "knntest/ground_truth.hpp"
#include "knntest/harness.hpp"
#include "knntest/io.hpp"
#include "knntest/serialize.hpp"
#include "knntest/tester.hpp"

namespace {

constexpr int kExitReject = 3;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;
constexpr int kExitIo = 74;

using knntest::GeometricGraph;

struct TestArgs {
  std::string graph;
  std::uint32_t k = 1;
  double epsilon = 0.1;
  std::string mode = "theory";
  double c1 = 0.01;
  double c2 = 0.5;
  std::optional<std::size_t> dim;
  std::optional<std::uint64_t> degree_cap;
  std::uint64_t seed = 0;
  bool json = false;
  bool timing = false;
};

int run_test(const TestArgs& a) {
  const GeometricGraph g = knntest::read_knng(std::filesystem::path(a.graph));
  knntest::TesterConfig cfg;
  cfg.k = a.k;
  cfg.epsilon = a.epsilon;
  cfg.mode = a.mode == "experiment" ? knntest::SizingMode::experiment : knntest::SizingMode::theory;
  cfg.c1 = a.c1;
  cfg.c2 = a.c2;
  cfg.dim = a.dim;
  cfg.degree_cap_override = a.degree_cap;
  cfg.seed = a.seed;
  const knntest::Verdict verdict = knntest::run_tester(g, cfg);
  if (a.json) {
    std::cout << knntest::to_json(verdict, a.timing);
  } else {
    std::cout << knntest::to_string(verdict.decision);
    if (verdict.evidence) {
      std::cout << ' ' << knntest::to_string(verdict.evidence->reason) << " vertex=" << verdict.evidence->vertex;
      if (verdict.evidence->witness) {
        std::cout << " witness=" << *verdict.evidence->witness;
      }
    }
    std::cout << " queries=" << verdict.queries.total() << " s_prime=" << verdict.planned.s_prime
              << " t=" << verdict.planned.t << " degree_cap=" << verdict.planned.degree_cap;
    if (a.timing) {
      std::cout << " elapsed_ms=" << static_cast<double>(verdict.elapsed.count()) / 1e6;
    }
    std::cout << '\n';
  }
  return verdict.decision == knntest::Decision::reject ? kExitReject : 0;
}

struct DistanceArgs {
  std::string graph;
  std::uint32_t k = 1;
  std::optional<double> d;
  std::optional<double> epsilon;
};

int run_distance(const DistanceArgs& a) {
  const GeometricGraph g = knntest::read_knng(std::filesystem::path(a.graph));
  const auto budget = a.d ? knntest::EdgeBudget::provided(*a.d) : knntest::EdgeBudget::from_graph(g, a.k);
  std::cout << knntest::to_json(knntest::epsilon_distance(g, a.k, budget, a.epsilon));
  return 0;
}

struct GenerateArgs {
  std::size_t n = 0;
  std::uint32_t k = 1;
  double epsilon = 0.1;
  std::size_t dim = 3;
  std::size_t clusters = 0;
  double sigma = 0.05;
  double fraction = 0.0;
  std::string input;
  std::string output;
  std::string exact_output;
  std::uint64_t seed = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sublinear property tester for k-nearest-neighbor graphs"};
  app.set_version_flag("--version", std::string(knntest::version()));
  app.require_subcommand(1);

  TestArgs test_args;
  auto* test = app.add_subcommand("test", "Run the property tester on a .knng graph");
  test->add_option("graph", test_args.graph, "Input graph")->required();
  test->add_option("--k", test_args.k, "Neighbors per vertex")->required()->check(CLI::PositiveNumber);
  test->add_option("--epsilon", test_args.epsilon, "Distance parameter in (0, 1]")->required();
  test->add_option("--mode", test_args.mode, "Sample sizing")->check(CLI::IsMember({"theory", "experiment"}));
  test->add_option("--c1", test_args.c1, "Experiment-mode constant for S'");
  test->add_option("--c2", test_args.c2, "Experiment-mode constant for T");
  test->add_option("--dim", test_args.dim, "Dimension for the kissing number (default: the graph's)");
  test->add_option("--degree-cap", test_args.degree_cap, "Override the degree cap");
  test->add_option("--seed", test_args.seed, "Random seed")->required();
  test->add_flag("--json", test_args.json, "Print the verdict as JSON");
  test->add_flag("--timing", test_args.timing, "Include wall-clock time");

  DistanceArgs distance_args;
  auto* distance = app.add_subcommand("distance", "Exact epsilon-distance of a graph to the k-NN property");
  distance->add_option("graph", distance_args.graph, "Input graph")->required();
  distance->add_option("--k", distance_args.k, "Neighbors per vertex")->required()->check(CLI::PositiveNumber);
  distance->add_option("--d", distance_args.d, "Average-degree bound (default max(|E|/n, k))");
  distance->add_option("--epsilon", distance_args.epsilon, "Also count low-degree incomplete vertices");

  std::string points_path;
  std::string knn_out;
  std::uint32_t build_k = 1;
  auto* build = app.add_subcommand("build-knn", "Exact k-NN graph of a points CSV");
  build->add_option("points", points_path, "Points CSV")->required();
  build->add_option("--k", build_k, "Neighbors per vertex")->required()->check(CLI::PositiveNumber);
  build->add_option("-o,--output", knn_out, "Output .knng")->required();

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a generated instance");
  generate->require_subcommand(1);
  auto* gen_d1 = generate->add_subcommand("d1", "Line gadgets (a k-NN graph)");
  gen_d1->add_option("--n", gen.n, "Vertices, a multiple of k+1")->required();
  gen_d1->add_option("--k", gen.k, "Neighbors per vertex")->required()->check(CLI::PositiveNumber);
  auto* gen_d2 = generate->add_subcommand("d2", "Line gadgets with duplicated pairs");
  gen_d2->add_option("--n", gen.n, "Vertices, a multiple of k+1")->required();
  gen_d2->add_option("--k", gen.k, "Neighbors per vertex")->required()->check(CLI::PositiveNumber);
  gen_d2->add_option("--epsilon", gen.epsilon, "Target distance")->required();
  auto* gen_tight = generate->add_subcommand("tight", "Kissing configuration sharing one k-NN");
  gen_tight->add_option("--dim", gen.dim, "1 or 3")->required()->check(CLI::IsMember({1, 3}));
  gen_tight->add_option("--k", gen.k, "Neighbors per vertex")->required()->check(CLI::PositiveNumber);
  auto* gen_dimlb = generate->add_subcommand("dimlb", "Displaced-cluster pair (writes the stale graph)");
  gen_dimlb->add_option("--k", gen.k, "Neighbors per vertex")->required()->check(CLI::PositiveNumber);
  gen_dimlb->add_option("--epsilon", gen.epsilon, "Target distance")->required();
  gen_dimlb->add_option("--clusters", gen.clusters, "Tight-construction clusters")->required();
  gen_dimlb->add_option("--exact-output", gen.exact_output, "Also write the exact graph here");
  auto* gen_corrupt = generate->add_subcommand("corrupt", "Rewire a fraction of a graph's edges");
  gen_corrupt->add_option("input", gen.input, "Input .knng")->required();
  gen_corrupt->add_option("--k", gen.k, "Neighbors per vertex")->required()->check(CLI::PositiveNumber);
  gen_corrupt->add_option("--fraction", gen.fraction, "Fraction of the n k edge slots to rewire")->required()->check(CLI::Range(0.0, 1.0));
  auto* gen_points = generate->add_subcommand("points", "Random points as CSV");
  gen_points->add_option("--n", gen.n, "Number of points")->required();
  gen_points->add_option("--dim", gen.dim, "Dimension")->required()->check(CLI::PositiveNumber);
  gen_points->add_option("--clusters", gen.clusters, "Gaussian mixture with this many clusters (0: uniform)");
  gen_points->add_option("--sigma", gen.sigma, "Mixture standard deviation");
  for (auto* sub : {gen_d1, gen_d2, gen_tight, gen_dimlb, gen_corrupt, gen_points}) {
    sub->add_option("--seed", gen.seed, "Random seed");
    sub->add_option("-o,--output", gen.output, "Output file")->required();
  }

  std::size_t adv_n = 0;
  std::uint32_t adv_k = 1;
  double adv_eps = 0.1;
  std::optional<std::size_t> adv_budget;
  std::size_t adv_trials = 10000;
  std::uint64_t adv_seed = 0;
  bool adv_json = false;
  auto* adversary = app.add_subcommand("adversary", "Collision probability of the lower-bound distribution");
  adversary->add_option("--n", adv_n, "Vertices, a multiple of k+1")->required();
  adversary->add_option("--k", adv_k, "Neighbors per vertex")->required()->check(CLI::PositiveNumber);
  adversary->add_option("--epsilon", adv_eps, "Distance parameter")->required();
  adversary->add_option("--budget", adv_budget, "Queries per trial (default floor(sqrt(n / (8 eps (k+1)))))");
  adversary->add_option("--trials", adv_trials, "Monte-Carlo trials");
  adversary->add_option("--seed", adv_seed, "Random seed")->required();
  adversary->add_flag("--json", adv_json, "Print the estimate as JSON");

  std::string sweep_config;
  std::string sweep_csv;
  std::string sweep_json;
  std::uint64_t sweep_seed = 0;
  auto* sweep = app.add_subcommand("sweep", "Recall-by-distance sweep over a (c1, c2) grid");
  sweep->add_option("--config", sweep_config, "sweep.json")->required();
  sweep->add_option("-o,--output", sweep_csv, "CSV report")->required();
  sweep->add_option("--json", sweep_json, "Also write the JSON report");
  sweep->add_option("--seed", sweep_seed, "Random seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*test) {
      return run_test(test_args);
    }
    if (*distance) {
      return run_distance(distance_args);
    }
    if (*build) {
      const auto points = knntest::read_points_csv(std::filesystem::path(points_path));
      knntest::write_knng(std::filesystem::path(knn_out), knntest::build_exact_knn_graph(points, build_k));
      return 0;
    }
    if (*generate) {
      const std::filesystem::path out(gen.output);
      if (*gen_d1) {
        knntest::write_knng(out, knntest::sample_d1(gen.n, gen.k, gen.seed));
      } else if (*gen_d2) {
        knntest::write_knng(out, knntest::sample_d2(gen.n, gen.k, gen.epsilon, gen.seed));
      } else if (*gen_tight) {
        knntest::write_knng(out, knntest::tight_witness_construction(gen.dim, gen.k).graph);
      } else if (*gen_dimlb) {
        const auto pair = knntest::dimension_lb_instances(3, gen.k, gen.epsilon, gen.clusters);
        knntest::write_knng(out, pair.far);
        if (!gen.exact_output.empty()) {
          knntest::write_knng(std::filesystem::path(gen.exact_output), pair.exact);
        }
      } else if (*gen_corrupt) {
        const auto g = knntest::read_knng(std::filesystem::path(gen.input));
        knntest::write_knng(out, knntest::corrupt_edges(g, gen.k, gen.fraction, gen.seed));
      } else if (*gen_points) {
        const auto points = gen.clusters == 0
                                ? knntest::uniform_points(gen.n, gen.dim, gen.seed)
                                : knntest::gaussian_mixture_points(gen.n, gen.dim, gen.clusters, gen.sigma, gen.seed);
        knntest::write_points_csv(out, points);
      }
      return 0;
    }
    if (*adversary) {
      const std::size_t budget = adv_budget.value_or(knntest::lower_bound_budget(adv_n, adv_k, adv_eps));
      const auto estimate =
          knntest::estimate_collision_probability(adv_n, adv_k, adv_eps, budget, adv_trials, adv_seed);
      if (adv_json) {
        std::cout << knntest::to_json(estimate, budget);
      } else {
        std::cout << "budget=" << budget << " trials=" << estimate.trials << " collisions=" << estimate.collisions
                  << " p_hat=" << knntest::format_double(estimate.p_hat)
                  << " std_error=" << knntest::format_double(estimate.std_error)
                  << " union_bound=" << knntest::format_double(estimate.union_bound) << '\n';
      }
      return 0;
    }
    if (*sweep) {
      const auto cfg = knntest::load_sweep_config(std::filesystem::path(sweep_config));
      const auto report = knntest::run_sweep(cfg, sweep_seed);
      knntest::export_report(report, knntest::ReportFormat::csv, std::filesystem::path(sweep_csv));
      if (!sweep_json.empty()) {
        knntest::export_report(report, knntest::ReportFormat::json, std::filesystem::path(sweep_json));
      }
      for (const auto& warning : report.warnings) {
        std::cerr << "warning: " << warning << '\n';
      }
      return 0;
    }
  } catch (const knntest::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const knntest::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const knntest::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
