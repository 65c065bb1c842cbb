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

#include <array>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "multikin/geometry.hpp"

namespace multikin {

/// Kinematic type of a graph edge. The declaration order is the
/// tie-break order used by model selection (fewest parameters first).
enum class ModelType { Rigid = 0, Prismatic = 1, Rotational = 2 };

inline constexpr std::array<ModelType, 3> kModelTypes = {
    ModelType::Rigid, ModelType::Prismatic, ModelType::Rotational};

std::string_view to_string(ModelType type);
/// Accepts "rigid", "prismatic", "rotational" (case-insensitive).
std::optional<ModelType> parse_model_type(std::string_view text);

/// Relative transforms of part j expressed in the frame of part i.
struct ObservationSequence {
  ObservationSequence(std::string part_i, std::string part_j, std::vector<Pose> transforms);

  std::string part_i;
  std::string part_j;
  std::vector<Pose> transforms;

  std::size_t size() const { return transforms.size(); }
};

struct RigidParams {
  Pose fixed_transform;
  friend bool operator==(const RigidParams&, const RigidParams&) = default;
};

/// Translation along `axis` (unit, part-i frame) from `base`, the relative
/// pose at q = 0.
struct PrismaticParams {
  Pose base;
  Vec3 axis = Vec3::UnitX();
  friend bool operator==(const PrismaticParams&, const PrismaticParams&) = default;
};

/// Rotation by q about the line through `axis_point` along `axis_dir`,
/// applied after `zero_pose`. `axis_point` is the point of the line closest
/// to the part-i origin, so it is orthogonal to `axis_dir`.
struct RotationalParams {
  Vec3 axis_dir = Vec3::UnitZ();
  Vec3 axis_point = Vec3::Zero();
  Pose zero_pose;
  friend bool operator==(const RotationalParams&, const RotationalParams&) = default;
};

using ModelParams = std::variant<RigidParams, PrismaticParams, RotationalParams>;

struct EdgeModel {
  ModelParams params;
  int k = 0;
  double log_lik = 0.0;
  /// One configuration per observation: meters (prismatic) or radians
  /// (rotational). Empty for rigid models.
  std::vector<double> configs;

  ModelType type() const { return static_cast<ModelType>(params.index()); }

  /// Motion axis for non-rigid models.
  std::optional<Vec3> axis() const;

  friend bool operator==(const EdgeModel&, const EdgeModel&) = default;
};

struct NoiseModel {
  double sigma_pos = 0.01;
  double sigma_rot = 2.0 * std::numbers::pi / 180.0;
};

/// Number of free parameters used in the BIC penalty.
int dof_count(ModelType type);

EdgeModel fit_rigid(const ObservationSequence& obs, const NoiseModel& noise = {});
EdgeModel fit_prismatic(const ObservationSequence& obs, const NoiseModel& noise = {});
EdgeModel fit_rotational(const ObservationSequence& obs, const NoiseModel& noise = {});

/// Dispatches to the fitter for `type`.
EdgeModel fit_model(ModelType type, const ObservationSequence& obs, const NoiseModel& noise = {});

/// Relative pose predicted at configuration q (ignored for rigid).
Pose predict(const EdgeModel& model, double q);

/// Gaussian log-likelihood of `obs` under `model`, evaluated at the
/// model's stored configurations.
double log_likelihood(const EdgeModel& model, const ObservationSequence& obs,
                      const NoiseModel& noise);

/// The same joint seen from part j. For every stored index t,
/// predict(reverse(m), reverse(m).configs[t]) equals
/// inverse(predict(m, m.configs[t])); configs may change sign when the
/// re-expressed axis is canonicalized. k and log_lik are carried over.
EdgeModel reverse(const EdgeModel& model);

/// Rigid transform rotating by `angle` about the line through `point`
/// along the unit vector `dir`.
Pose rotation_about_line(const Vec3& dir, const Vec3& point, double angle);

}  // namespace multikin
