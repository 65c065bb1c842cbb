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

#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multikin/geometry.hpp"
#include "multikin/kinematics.hpp"
#include "multikin/language.hpp"

namespace multikin {

/// All candidate fits for one unordered pair of clusters. Observations are
/// the transforms of part_j relative to part_i.
struct EdgeCandidateSet {
  std::string part_i;
  std::string part_j;
  int n_v = 0;
  std::array<std::optional<EdgeModel>, 3> candidates;  // indexed by ModelType
  std::vector<std::string> failures;                   // one message per failed fit
  std::optional<LingualLikelihood> lingual;

  bool empty() const;
};

/// -2 (visual + lingual log-likelihood) + k ln(n). n is n_v plus one when a
/// lingual observation is present.
double bic(const EdgeModel& model, int n_v, std::optional<double> lingual_log_lik = std::nullopt);

/// BIC / 2: the negative log posterior under a uniform prior over types.
double edge_cost(const EdgeModel& model, int n_v,
                 std::optional<double> lingual_log_lik = std::nullopt);

/// BIC of every fitted candidate, fusing the set's lingual likelihood.
std::map<ModelType, double> candidate_bics(const EdgeCandidateSet& cands);

/// Lowest-BIC candidate; ties go to the type with fewer parameters.
/// Throws Error when the set has no candidate.
EdgeModel select_edge_model(const EdgeCandidateSet& cands);

struct GraphEdge {
  std::string i;  // parent, closer to the background
  std::string j;  // child
  EdgeModel model;
  double cost = 0.0;
  int n = 0;
  bool lingual = false;
  std::map<ModelType, double> bic_all;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// Spanning tree over clusters rooted at the background. Edge models are
/// expressed in the parent's frame.
struct KinematicGraph {
  std::string background;
  std::vector<std::string> vertices;
  std::vector<GraphEdge> edges;

  /// Sum of edge costs, accumulated in ascending order so the total does
  /// not depend on edge order.
  double total_cost() const;
  const GraphEdge* find_edge(const std::string& a, const std::string& b) const;
  /// Throws Error unless the edges form a spanning tree with finite costs.
  void validate() const;

  friend bool operator==(const KinematicGraph&, const KinematicGraph&) = default;
};

struct WeightedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double cost = 0.0;
};

/// Kruskal over the finite-cost edges; equal costs are taken in (u, v)
/// order with u < v. Returns indices into `edges`. Throws
/// InsufficientParts when the finite edges do not connect every vertex.
std::vector<std::size_t> minimum_spanning_tree(std::size_t vertex_count,
                                               const std::vector<WeightedEdge>& edges);

/// Clusters plus the candidate fits of every pair, ready for scoring.
struct CandidateGraph {
  std::string background;
  std::vector<std::string> vertices;  // sorted by id
  std::vector<EdgeCandidateSet> edges;
};

/// The cluster with the least motion about its mean pose.
std::string find_background(const std::vector<PoseTrajectory>& trajectories);

/// Relative transforms of b in a's frame at the timestamps both share.
ObservationSequence relative_observations(const PoseTrajectory& a, const PoseTrajectory& b);

/// Fits every model type on every pair of clusters. Throws
/// InsufficientParts for fewer than two clusters.
CandidateGraph fit_candidates(const std::vector<PoseTrajectory>& trajectories,
                              const NoiseModel& noise,
                              std::optional<std::string> background = std::nullopt);

/// Selects a model per edge with the given lingual likelihoods (one slot
/// per entry of cands.edges; uninformative ones are ignored) and extracts
/// the minimum spanning tree.
KinematicGraph assemble_graph(const CandidateGraph& cands,
                              const std::vector<std::optional<LingualLikelihood>>& lingual = {});

}  // namespace multikin
