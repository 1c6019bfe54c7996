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

// Python bindings. Graphs cross the boundary as GeometricGraph handles;
// points as float64 arrays of shape (n, dim).

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>
#include <vector>

#include "knntest/adversary.hpp"
#include "knntest/error.hpp"
#include "knntest/generators.hpp"
#include "knntest/ground_truth.hpp"
#include "knntest/harness.hpp"
#include "knntest/io.hpp"
#include "knntest/serialize.hpp"
#include "knntest/tester.hpp"

namespace py = pybind11;
using namespace knntest;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

PointSet to_points(const Array& array) {
  if (array.ndim() != 2) {
    throw UsageError("points must be a 2-D array of shape (n, dim)");
  }
  const auto n = static_cast<std::size_t>(array.shape(0));
  const auto dim = static_cast<std::size_t>(array.shape(1));
  return PointSet(dim, std::vector<double>(array.data(), array.data() + n * dim));
}

Array to_array(const PointSet& points) {
  Array out({points.size(), points.dim()});
  std::copy(points.data().begin(), points.data().end(), out.mutable_data());
  return out;
}

TesterConfig make_config(std::uint32_t k, double epsilon, const std::string& mode, double c1, double c2,
                         std::uint64_t seed, std::optional<std::size_t> dim,
                         std::optional<std::uint64_t> degree_cap) {
  TesterConfig cfg;
  cfg.k = k;
  cfg.epsilon = epsilon;
  if (mode == "theory") {
    cfg.mode = SizingMode::theory;
  } else if (mode == "experiment") {
    cfg.mode = SizingMode::experiment;
  } else {
    throw UsageError("mode must be 'theory' or 'experiment'");
  }
  cfg.c1 = c1;
  cfg.c2 = c2;
  cfg.seed = seed;
  cfg.dim = dim;
  cfg.degree_cap_override = degree_cap;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_knntest, m) {
  m.doc() = "Property tester for k-nearest-neighbor graphs";
  m.attr("__version__") = version();

  static py::exception<FormatError> format_error(m, "FormatError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) {
        std::rethrow_exception(p);
      }
    } catch (const FormatError& e) {
      py::set_error(format_error, e.what());
    } catch (const UsageError& e) {
      py::set_error(PyExc_ValueError, e.what());
    } catch (const IoError& e) {
      py::set_error(PyExc_OSError, e.what());
    }
  });

  py::class_<GeometricGraph>(m, "Graph")
      .def(py::init([](const Array& points, const AdjacencyList& adjacency, std::optional<std::uint32_t> k_hint) {
             return GeometricGraph(to_points(points), adjacency, k_hint);
           }),
           py::arg("points"), py::arg("adjacency"), py::arg("k_hint") = std::nullopt)
      .def_property_readonly("n", &GeometricGraph::n)
      .def_property_readonly("dim", &GeometricGraph::dim)
      .def_property_readonly("edge_count", &GeometricGraph::edge_count)
      .def_property_readonly("k_hint", &GeometricGraph::k_hint)
      .def_property_readonly("points", [](const GeometricGraph& g) { return to_array(g.points()); })
      .def_property_readonly("adjacency", &GeometricGraph::adjacency)
      .def("neighbors",
           [](const GeometricGraph& g, VertexId v) {
             if (v >= g.n()) {
               throw py::index_error("vertex out of range");
             }
             const auto list = g.neighbors(v);
             return std::vector<VertexId>(list.begin(), list.end());
           })
      .def("__len__", &GeometricGraph::n)
      .def("__eq__", [](const GeometricGraph& a, const GeometricGraph& b) { return a == b; });

  m.def("read_knng", py::overload_cast<const std::filesystem::path&>(&read_knng), py::arg("path"));
  m.def("write_knng", py::overload_cast<const std::filesystem::path&, const GeometricGraph&>(&write_knng),
        py::arg("path"), py::arg("graph"));
  m.def(
      "read_points_csv",
      [](const std::filesystem::path& path) { return to_array(read_points_csv(path)); }, py::arg("path"));
  m.def(
      "write_points_csv",
      [](const std::filesystem::path& path, const Array& points) { write_points_csv(path, to_points(points)); },
      py::arg("path"), py::arg("points"));

  m.def(
      "build_exact_knn_graph",
      [](const Array& points, std::uint32_t k) {
        const auto set = to_points(points);
        py::gil_scoped_release release;
        return build_exact_knn_graph(set, k);
      },
      py::arg("points"), py::arg("k"));

  m.def(
      "test",
      [](const GeometricGraph& g, std::uint32_t k, double epsilon, const std::string& mode, double c1, double c2,
         std::uint64_t seed, std::optional<std::size_t> dim, std::optional<std::uint64_t> degree_cap) {
        const auto cfg = make_config(k, epsilon, mode, c1, c2, seed, dim, degree_cap);
        std::string json;
        {
          py::gil_scoped_release release;
          json = to_json(run_tester(g, cfg));
        }
        return py::module_::import("json").attr("loads")(json);
      },
      py::arg("graph"), py::arg("k"), py::arg("epsilon"), py::kw_only(), py::arg("mode") = "theory",
      py::arg("c1") = 0.01, py::arg("c2") = 0.5, py::arg("seed") = 0, py::arg("dim") = std::nullopt,
      py::arg("degree_cap") = std::nullopt,
      "Runs the tester; returns the verdict as a dict.");

  m.def(
      "sample_sizes",
      [](std::size_t n, std::size_t dim, std::uint32_t k, double epsilon, const std::string& mode, double c1,
         double c2) {
        const auto sizes = sample_sizes(n, dim, make_config(k, epsilon, mode, c1, c2, 0, dim, std::nullopt));
        return py::dict(py::arg("s_prime") = sizes.s_prime, py::arg("t") = sizes.t,
                        py::arg("degree_cap") = sizes.degree_cap);
      },
      py::arg("n"), py::arg("dim"), py::arg("k"), py::arg("epsilon"), py::kw_only(), py::arg("mode") = "theory",
      py::arg("c1") = 0.01, py::arg("c2") = 0.5);
  m.def("kissing_number", &kissing_number, py::arg("dim"));

  m.def(
      "epsilon_distance",
      [](const GeometricGraph& g, std::uint32_t k, std::optional<double> d, std::optional<double> epsilon) {
        const auto budget = d ? EdgeBudget::provided(*d) : EdgeBudget::from_graph(g, k);
        std::string json;
        {
          py::gil_scoped_release release;
          json = to_json(epsilon_distance(g, k, budget, epsilon));
        }
        return py::module_::import("json").attr("loads")(json);
      },
      py::arg("graph"), py::arg("k"), py::kw_only(), py::arg("d") = std::nullopt,
      py::arg("epsilon") = std::nullopt);
  m.def(
      "max_shared_knn", [](const Array& points, std::uint32_t k) { return max_shared_knn(to_points(points), k); },
      py::arg("points"), py::arg("k"));

  m.def("sample_d1", &sample_d1, py::arg("n"), py::arg("k"), py::arg("seed"));
  m.def("sample_d2", &sample_d2, py::arg("n"), py::arg("k"), py::arg("epsilon"), py::arg("seed"));
  m.def("corrupt_edges", &corrupt_edges, py::arg("graph"), py::arg("k"), py::arg("fraction"), py::arg("seed"));
  m.def(
      "uniform_points", [](std::size_t n, std::size_t dim, std::uint64_t seed) {
        return to_array(uniform_points(n, dim, seed));
      },
      py::arg("n"), py::arg("dim"), py::arg("seed"));
  m.def(
      "gaussian_mixture_points",
      [](std::size_t n, std::size_t dim, std::size_t clusters, double sigma, std::uint64_t seed) {
        return to_array(gaussian_mixture_points(n, dim, clusters, sigma, seed));
      },
      py::arg("n"), py::arg("dim"), py::arg("clusters"), py::arg("sigma"), py::arg("seed"));

  m.def("lower_bound_budget", &lower_bound_budget, py::arg("n"), py::arg("k"), py::arg("epsilon"));
  m.def(
      "estimate_collision_probability",
      [](std::size_t n, std::uint32_t k, double epsilon, std::size_t budget, std::size_t trials,
         std::uint64_t seed) {
        std::string json;
        {
          py::gil_scoped_release release;
          json = to_json(estimate_collision_probability(n, k, epsilon, budget, trials, seed), budget);
        }
        return py::module_::import("json").attr("loads")(json);
      },
      py::arg("n"), py::arg("k"), py::arg("epsilon"), py::arg("budget"), py::arg("trials"), py::arg("seed"));

  m.def(
      "run_sweep",
      [](const std::string& config_json, std::uint64_t seed) {
        const auto cfg = parse_sweep_config(config_json);
        py::gil_scoped_release release;
        return export_report(run_sweep(cfg, seed), ReportFormat::json);
      },
      py::arg("config_json"), py::arg("seed"),
      "Runs a sweep from a JSON config string; returns the JSON report.");
  m.def(
      "sweep_report_to_csv",
      [](const std::string& report_json) {
        return export_report(parse_report_json(report_json), ReportFormat::csv);
      },
      py::arg("report_json"));
}
