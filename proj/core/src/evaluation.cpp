// Copyright 2026 The multikin Authors
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

#include "multikin/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "multikin/errors.hpp"

namespace multikin {
namespace {

void check_correspondence(const KinematicGraph& estimated, const KinematicGraph& truth,
                          const Correspondence& corr) {
  const std::set<std::string> truth_vertices(truth.vertices.begin(), truth.vertices.end());
  std::set<std::string> images;
  for (const auto& v : estimated.vertices) {
    const auto it = corr.find(v);
    if (it == corr.end()) throw MissingCorrespondence("no correspondence for vertex '" + v + "'");
    if (!truth_vertices.contains(it->second)) {
      throw MissingCorrespondence("vertex '" + v + "' maps to unknown truth vertex '" +
                                  it->second + "'");
    }
    if (!images.insert(it->second).second) {
      throw MissingCorrespondence("truth vertex '" + it->second + "' is matched twice");
    }
  }
}

// Truth edge matching `e`, and whether it runs the other way.
std::pair<const GraphEdge*, bool> match(const GraphEdge& e, const KinematicGraph& truth,
                                        const Correspondence& corr) {
  const std::string& a = corr.at(e.i);
  const std::string& b = corr.at(e.j);
  const GraphEdge* t = truth.find_edge(a, b);
  if (t == nullptr) return {nullptr, false};
  return {t, t->i != a};
}

bool edges_match(const KinematicGraph& estimated, const KinematicGraph& truth,
                 const Correspondence& corr) {
  for (const auto& e : estimated.edges) {
    const auto [t, flipped] = match(e, truth, corr);
    if (t == nullptr || t->model.type() != e.model.type()) return false;
  }
  return true;
}

}  // namespace

Correspondence identity_correspondence(const KinematicGraph& estimated) {
  Correspondence corr;
  for (const auto& v : estimated.vertices) corr[v] = v;
  return corr;
}

double axis_angle_deg(const Vec3& a, const Vec3& b) {
  const double c = std::clamp(a.normalized().dot(b.normalized()), -1.0, 1.0);
  const double e = std::acos(c) * 180.0 / std::numbers::pi;
  return std::min(e, 180.0 - e);
}

bool soft_success(const KinematicGraph& estimated, const KinematicGraph& truth,
                  const Correspondence& corr) {
  check_correspondence(estimated, truth, corr);
  return edges_match(estimated, truth, corr);
}

bool hard_success(const KinematicGraph& estimated, const KinematicGraph& truth,
                  const Correspondence& corr) {
  check_correspondence(estimated, truth, corr);
  return estimated.vertices.size() == truth.vertices.size() &&
         estimated.edges.size() == truth.edges.size() && edges_match(estimated, truth, corr);
}

double param_error(const KinematicGraph& estimated, const KinematicGraph& truth,
                   const Correspondence& corr) {
  if (!soft_success(estimated, truth, corr)) {
    throw Error("parameter error needs matching models on every edge");
  }
  double sum = 0.0;
  int count = 0;
  for (const auto& e : estimated.edges) {
    if (e.model.type() == ModelType::Rigid) continue;
    const auto [t, flipped] = match(e, truth, corr);
    const EdgeModel est = flipped ? reverse(e.model) : e.model;
    sum += axis_angle_deg(*est.axis(), *t->model.axis());
    ++count;
  }
  if (count == 0) throw NoComparableEdges("every matched edge is rigid");
  return sum / count;
}

DemoResult evaluate_demo(const std::string& id, const KinematicGraph& estimated,
                         const KinematicGraph& truth, const Correspondence& corr) {
  DemoResult row;
  row.id = id;
  row.n_v = static_cast<int>(estimated.vertices.size()) - 1;
  row.n_star = static_cast<int>(truth.vertices.size()) - 1;
  row.soft = soft_success(estimated, truth, corr);
  row.hard = hard_success(estimated, truth, corr);
  if (row.soft) {
    try {
      row.e_param = param_error(estimated, truth, corr);
    } catch (const NoComparableEdges&) {
    }
  }
  return row;
}

double part_count_success(const std::vector<DemoResult>& rows) {
  if (rows.empty()) throw Error("no demonstrations to score");
  const auto hits = std::count_if(rows.begin(), rows.end(),
                                  [](const DemoResult& r) { return r.n_v == r.n_star; });
  return static_cast<double>(hits) / static_cast<double>(rows.size());
}

EvalReport aggregate(std::vector<DemoResult> rows) {
  if (rows.empty()) throw Error("no demonstrations to score");
  std::sort(rows.begin(), rows.end(),
            [](const DemoResult& a, const DemoResult& b) { return a.id < b.id; });
  EvalReport report;
  const double k = static_cast<double>(rows.size());
  report.s_v = part_count_success(rows);
  double hard = 0.0, soft = 0.0, e_sum = 0.0;
  int e_count = 0;
  for (const auto& r : rows) {
    hard += r.hard ? 1.0 : 0.0;
    soft += r.soft ? 1.0 : 0.0;
    if (r.e_param) {
      e_sum += *r.e_param;
      ++e_count;
    } else {
      ++report.e_param_excluded;
    }
  }
  report.s_h = hard / k;
  report.s_s = soft / k;
  if (e_count > 0) report.e_param = e_sum / e_count;
  report.per_demo = std::move(rows);
  return report;
}

}  // namespace multikin
