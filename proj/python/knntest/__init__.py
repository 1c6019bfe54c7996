# Copyright 2026-present the knntest authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Property tester for k-nearest-neighbor graphs."""

import json as _json

from ._knntest import (
    FormatError,
    Graph,
    __version__,
    build_exact_knn_graph,
    corrupt_edges,
    epsilon_distance,
    estimate_collision_probability,
    gaussian_mixture_points,
    kissing_number,
    lower_bound_budget,
    max_shared_knn,
    read_knng,
    read_points_csv,
    sample_d1,
    sample_d2,
    sample_sizes,
    sweep_report_to_csv,
    uniform_points,
    write_knng,
    write_points_csv,
)
from ._knntest import run_sweep as _run_sweep
from ._knntest import test as _test


def test(graph, k, epsilon, **options):
    """Runs the tester; returns the verdict as a dict.

    Options: mode ('theory' or 'experiment'), c1, c2, seed, dim, degree_cap.
    """
    return _test(graph, k, epsilon, **options)


# Keeps pytest from collecting the tester entry point.
test.__test__ = False


def run_sweep(config, seed):
    """Runs a sweep; `config` is a dict or JSON string. Returns the report dict."""
    text = config if isinstance(config, str) else _json.dumps(config)
    return _json.loads(_run_sweep(text, seed))


__all__ = [
    "FormatError",
    "Graph",
    "__version__",
    "build_exact_knn_graph",
    "corrupt_edges",
    "epsilon_distance",
    "estimate_collision_probability",
    "gaussian_mixture_points",
    "kissing_number",
    "lower_bound_budget",
    "max_shared_knn",
    "read_knng",
    "read_points_csv",
    "run_sweep",
    "sample_d1",
    "sample_d2",
    "sample_sizes",
    "sweep_report_to_csv",
    "test",
    "uniform_points",
    "write_knng",
    "write_points_csv",
]
