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

#include "multikin/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>

#include "multikin/errors.hpp"

namespace multikin {
namespace {

constexpr double kTimestampTolerance = 1e-9;

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

double motion_about_mean(const PoseTrajectory& traj) {
  if (traj.size() == 0) return 0.0;
  Vec3 mean = Vec3::Zero();
  std::vector<Eigen::Quaterniond> rots;
  rots.reserve(traj.size());
  for (const auto& s : traj.samples()) {
    mean += s.pose.position();
    rots.push_back(s.pose.orientation());
  }
  const auto n = static_cast<double>(traj.size());
  mean /= n;
  const Eigen::Quaterniond mean_rot = chordal_mean(rots);
  double total = 0.0;
  for (const auto& s : traj.samples()) {
    total += (s.pose.position() - mean).norm() + rotation_angle(s.pose.orientation(), mean_rot);
  }
  return total / n;
}

std::size_t index_of(const std::vector<std::string>& sorted, const std::string& id) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), id);
  if (it == sorted.end() || *it != id) throw Error("unknown cluster '" + id + "'");
  return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace

bool EdgeCandidateSet::empty() const {
  return std::none_of(candidates.begin(), candidates.end(),
                      [](const auto& c) { return c.has_value(); });
}

double bic(const EdgeModel& model, int n_v, std::optional<double> lingual_log_lik) {
  const int n = n_v + (lingual_log_lik ? 1 : 0);
  if (n < 1) throw Error("BIC needs at least one observation");
  return -2.0 * (model.log_lik + lingual_log_lik.value_or(0.0)) +
         model.k * std::log(static_cast<double>(n));
}

double edge_cost(const EdgeModel& model, int n_v, std::optional<double> lingual_log_lik) {
  return bic(model, n_v, lingual_log_lik) / 2.0;
}

std::map<ModelType, double> candidate_bics(const EdgeCandidateSet& cands) {
  const bool fuse = cands.lingual && cands.lingual->informative();
  std::map<ModelType, double> out;
  for (ModelType t : kModelTypes) {
    const auto& model = cands.candidates[static_cast<std::size_t>(t)];
    if (!model) continue;
    std::optional<double> lingual;
    if (fuse) lingual = std::log((*cands.lingual)[t]);
    out[t] = bic(*model, cands.n_v, lingual);
  }
  return out;
}

EdgeModel select_edge_model(const EdgeCandidateSet& cands) {
  const auto bics = candidate_bics(cands);
  if (bics.empty()) {
    throw Error("edge (" + cands.part_i + ", " + cands.part_j + ") has no fitted candidate");
  }
  // std::map iterates in ModelType order, so strict < keeps the simpler model on ties.
  auto best = bics.begin();
  for (auto it = bics.begin(); it != bics.end(); ++it) {
    if (it->second < best->second) best = it;
  }
  return *cands.candidates[static_cast<std::size_t>(best->first)];
}

double KinematicGraph::total_cost() const {
  std::vector<double> costs;
  costs.reserve(edges.size());
  for (const auto& e : edges) costs.push_back(e.cost);
  std::sort(costs.begin(), costs.end());
  double total = 0.0;
  for (double c : costs) total += c;
  return total;
}

const GraphEdge* KinematicGraph::find_edge(const std::string& a, const std::string& b) const {
  for (const auto& e : edges) {
    if ((e.i == a && e.j == b) || (e.i == b && e.j == a)) return &e;
  }
  return nullptr;
}

void KinematicGraph::validate() const {
  std::vector<std::string> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error("kinematic graph has duplicate vertices");
  }
  if (!background.empty() && !std::binary_search(sorted.begin(), sorted.end(), background)) {
    throw Error("kinematic graph background is not a vertex");
  }
  if (edges.size() + 1 != vertices.size()) {
    throw Error("kinematic graph is not a spanning tree: " + std::to_string(vertices.size()) +
                " vertices, " + std::to_string(edges.size()) + " edges");
  }
  DisjointSets sets(sorted.size());
  for (const auto& e : edges) {
    if (!std::isfinite(e.cost)) throw Error("kinematic graph edge has a non-finite cost");
    if (!sets.unite(index_of(sorted, e.i), index_of(sorted, e.j))) {
      throw Error("kinematic graph contains a cycle");
    }
  }
}

std::vector<std::size_t> minimum_spanning_tree(std::size_t vertex_count,
                                               const std::vector<WeightedEdge>& edges) {
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (std::isfinite(edges[k].cost)) order.push_back(k);
  }
  auto key = [&](std::size_t k) {
    const auto& e = edges[k];
    return std::make_tuple(e.cost, std::min(e.u, e.v), std::max(e.u, e.v));
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

  DisjointSets sets(vertex_count);
  std::vector<std::size_t> tree;
  for (std::size_t k : order) {
    if (sets.unite(edges[k].u, edges[k].v)) tree.push_back(k);
  }
  if (vertex_count > 0 && tree.size() + 1 != vertex_count) {
    throw InsufficientParts("the finite-cost edges do not connect all " +
                            std::to_string(vertex_count) + " clusters");
  }
  return tree;
}

std::string find_background(const std::vector<PoseTrajectory>& trajectories) {
  if (trajectories.empty()) throw InsufficientParts("no trajectories");
  std::vector<const PoseTrajectory*> sorted;
  for (const auto& t : trajectories) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->id() < b->id(); });
  const PoseTrajectory* best = sorted.front();
  double best_motion = motion_about_mean(*best);
  for (const auto* t : sorted) {
    const double m = motion_about_mean(*t);
    if (m < best_motion) {
      best = t;
      best_motion = m;
    }
  }
  return best->id();
}

ObservationSequence relative_observations(const PoseTrajectory& a, const PoseTrajectory& b) {
  std::vector<Pose> rel;
  const auto& sa = a.samples();
  const auto& sb = b.samples();
  std::size_t ia = 0;
  std::size_t ib = 0;
  while (ia < sa.size() && ib < sb.size()) {
    const double dt = sa[ia].t - sb[ib].t;
    if (std::abs(dt) <= kTimestampTolerance) {
      rel.push_back(relative(sa[ia].pose, sb[ib].pose));
      ++ia;
      ++ib;
    } else if (dt < 0.0) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return ObservationSequence(a.id(), b.id(), std::move(rel));
}

CandidateGraph fit_candidates(const std::vector<PoseTrajectory>& trajectories,
                              const NoiseModel& noise, std::optional<std::string> background) {
  if (trajectories.size() < 2) {
    throw InsufficientParts("structure inference needs at least two clusters, got " +
                            std::to_string(trajectories.size()));
  }
  std::vector<const PoseTrajectory*> sorted;
  for (const auto& t : trajectories) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->id() < b->id(); });

  CandidateGraph out;
  for (const auto* t : sorted) {
    if (!out.vertices.empty() && out.vertices.back() == t->id()) {
      throw FormatError("duplicate cluster id '" + t->id() + "'");
    }
    out.vertices.push_back(t->id());
  }
  out.background = background ? *background : find_background(trajectories);
  index_of(out.vertices, out.background);

  for (std::size_t a = 0; a < sorted.size(); ++a) {
    for (std::size_t b = a + 1; b < sorted.size(); ++b) {
      const ObservationSequence obs = relative_observations(*sorted[a], *sorted[b]);
      EdgeCandidateSet set;
      set.part_i = obs.part_i;
      set.part_j = obs.part_j;
      set.n_v = static_cast<int>(obs.size());
      for (ModelType t : kModelTypes) {
        try {
          set.candidates[static_cast<std::size_t>(t)] = fit_model(t, obs, noise);
        } catch (const TooFewObservations& e) {
          set.failures.emplace_back(e.what());
        } catch (const DegenerateMotion& e) {
          set.failures.emplace_back(e.what());
        }
      }
      out.edges.push_back(std::move(set));
    }
  }
  return out;
}

KinematicGraph assemble_graph(const CandidateGraph& cands,
                              const std::vector<std::optional<LingualLikelihood>>& lingual) {
  if (!lingual.empty() && lingual.size() != cands.edges.size()) {
    throw Error("lingual likelihoods do not match the candidate edges");
  }
  struct Scored {
    std::size_t cand = 0;
    EdgeModel model;
    std::map<ModelType, double> bics;
    double cost = 0.0;
    bool fused = false;
  };
  std::vector<Scored> scored;
  std::vector<WeightedEdge> weighted;
  for (std::size_t k = 0; k < cands.edges.size(); ++k) {
    EdgeCandidateSet set = cands.edges[k];
    if (set.empty()) continue;
    if (!lingual.empty()) set.lingual = lingual[k];
    Scored s;
    s.cand = k;
    s.bics = candidate_bics(set);
    s.model = select_edge_model(set);
    s.cost = s.bics.at(s.model.type()) / 2.0;
    s.fused = set.lingual && set.lingual->informative();
    weighted.push_back({index_of(cands.vertices, set.part_i), index_of(cands.vertices, set.part_j),
                        s.cost});
    scored.push_back(std::move(s));
  }

  const auto tree = minimum_spanning_tree(cands.vertices.size(), weighted);

  // Orient the tree away from the background.
  const std::size_t nv = cands.vertices.size();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacent(nv);
  for (std::size_t k : tree) {
    adjacent[weighted[k].u].push_back({weighted[k].v, k});
    adjacent[weighted[k].v].push_back({weighted[k].u, k});
  }
  for (auto& list : adjacent) std::sort(list.begin(), list.end());

  KinematicGraph graph;
  graph.background = cands.background;
  graph.vertices = cands.vertices;
  std::vector<bool> seen(nv, false);
  std::queue<std::size_t> frontier;
  const std::size_t root = index_of(cands.vertices, cands.background);
  frontier.push(root);
  seen[root] = true;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (const auto& [v, k] : adjacent[u]) {
      if (seen[v]) continue;
      seen[v] = true;
      frontier.push(v);
      const Scored& s = scored[k];
      const EdgeCandidateSet& set = cands.edges[s.cand];
      GraphEdge edge;
      edge.i = cands.vertices[u];
      edge.j = cands.vertices[v];
      edge.model = (set.part_i == edge.i) ? s.model : reverse(s.model);
      edge.cost = s.cost;
      edge.n = set.n_v;
      edge.lingual = s.fused;
      edge.bic_all = s.bics;
      graph.edges.push_back(std::move(edge));
    }
  }
  graph.validate();
  return graph;
}

}  // namespace multikin
