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

#include "knntest/serialize.hpp"

#include <json.hpp>

namespace knntest {

namespace {

using json = nlohmann::ordered_json;

json tally_json(const QueryTally& tally) {
  return {{"neighbor", tally.neighbor}, {"degree", tally.degree}, {"coord", tally.coord}, {"total", tally.total()}};
}

}  // namespace

std::string to_json(const Verdict& verdict, bool include_timing) {
  json doc;
  doc["decision"] = to_string(verdict.decision);
  if (verdict.evidence) {
    json evidence;
    evidence["reason"] = to_string(verdict.evidence->reason);
    evidence["vertex"] = verdict.evidence->vertex;
    evidence["witness"] = verdict.evidence->witness ? json(*verdict.evidence->witness) : json(nullptr);
    doc["evidence"] = std::move(evidence);
  } else {
    doc["evidence"] = nullptr;
  }
  doc["planned"] = {{"s_prime", verdict.planned.s_prime},
                    {"t", verdict.planned.t},
                    {"degree_cap", verdict.planned.degree_cap}};
  doc["s_prime_examined"] = verdict.s_prime_examined;
  doc["s_examined"] = verdict.s_examined;
  doc["queries"] = tally_json(verdict.queries);
  doc["query_bound"] = query_bound(verdict);
  if (include_timing) {
    doc["elapsed_ms"] = static_cast<double>(verdict.elapsed.count()) / 1e6;
  }
  return doc.dump(2) + '\n';
}

std::string to_json(const DistanceReport& report) {
  json doc;
  doc["min_edits"] = report.min_edits;
  doc["epsilon_distance"] = report.epsilon_distance;
  doc["incomplete_count"] = report.incomplete_count;
  doc["low_degree_incomplete_count"] =
      report.low_degree_incomplete_count ? json(*report.low_degree_incomplete_count) : json(nullptr);
  doc["budget"] = {{"d", report.budget.d}, {"source", to_string(report.budget.source)}};
  return doc.dump(2) + '\n';
}

std::string to_json(const CollisionEstimate& estimate, std::size_t budget) {
  json doc;
  doc["budget"] = budget;
  doc["trials"] = estimate.trials;
  doc["collisions"] = estimate.collisions;
  doc["p_hat"] = estimate.p_hat;
  doc["std_error"] = estimate.std_error;
  doc["union_bound"] = estimate.union_bound;
  return doc.dump(2) + '\n';
}

}  // namespace knntest
