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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multikin/geometry.hpp"
#include "multikin/selection.hpp"

namespace multikin {

/// Estimated vertex id -> ground-truth vertex id.
using Correspondence = std::map<std::string, std::string>;

/// Maps every vertex of `estimated` to the truth vertex of the same id.
Correspondence identity_correspondence(const KinematicGraph& estimated);

/// Angle between two axes in degrees, folded to [0, 90].
double axis_angle_deg(const Vec3& a, const Vec3& b);

/// Every estimated edge has a truth edge of the same type, in either
/// orientation. Throws MissingCorrespondence when the map does not cover
/// every estimated vertex injectively with truth vertices.
bool soft_success(const KinematicGraph& estimated, const KinematicGraph& truth,
                  const Correspondence& corr);

/// soft_success plus a bijection between the vertex sets.
bool hard_success(const KinematicGraph& estimated, const KinematicGraph& truth,
                  const Correspondence& corr);

/// Mean folded axis angle over corresponding non-rigid edges, in degrees.
/// Requires soft success. Throws NoComparableEdges when every edge is rigid.
double param_error(const KinematicGraph& estimated, const KinematicGraph& truth,
                   const Correspondence& corr);

struct DemoResult {
  std::string id;
  int n_v = 0;     // parts in the estimated graph
  int n_star = 0;  // parts in the truth graph
  bool hard = false;
  bool soft = false;
  std::optional<double> e_param;

  friend bool operator==(const DemoResult&, const DemoResult&) = default;
};

DemoResult evaluate_demo(const std::string& id, const KinematicGraph& estimated,
                         const KinematicGraph& truth, const Correspondence& corr);

struct EvalReport {
  std::vector<DemoResult> per_demo;
  double s_v = 0.0;
  double s_h = 0.0;
  double s_s = 0.0;
  std::optional<double> e_param;  // mean over demos that have one
  int e_param_excluded = 0;       // demos without a parameter error

  int demo_count() const { return static_cast<int>(per_demo.size()); }
};

/// Fraction of demos with n_v == n_star. Throws Error on an empty list.
double part_count_success(const std::vector<DemoResult>& rows);

/// Recomputes every aggregate from the rows. Throws Error on an empty list.
EvalReport aggregate(std::vector<DemoResult> rows);

}  // namespace multikin
