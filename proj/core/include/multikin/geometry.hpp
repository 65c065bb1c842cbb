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
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace multikin {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Rigid-body pose: a position in meters and a unit quaternion.
///
/// The quaternion is stored normalized and sign-canonical (w >= 0; when
/// w == 0 the first nonzero vector component is positive), so two poses
/// describing the same transform compare equal component for component.
class Pose {
 public:
  Pose() = default;
  Pose(const Vec3& position, const Eigen::Quaterniond& orientation);

  static Pose identity() { return {}; }
  static Pose translation(double x, double y, double z);
  static Pose rotation(const Vec3& axis, double angle);

  /// Scalar-first quaternion components (w, x, y, z).
  static Pose from_wxyz(const Vec3& position, const std::array<double, 4>& wxyz);

  const Vec3& position() const { return position_; }
  const Eigen::Quaterniond& orientation() const { return orientation_; }
  Mat3 rotation_matrix() const { return orientation_.toRotationMatrix(); }
  std::array<double, 4> wxyz() const;

  /// Maps a point expressed in this pose's frame into the parent frame.
  Vec3 apply(const Vec3& point) const { return position_ + orientation_ * point; }

  friend bool operator==(const Pose& a, const Pose& b);

 private:
  Vec3 position_ = Vec3::Zero();
  Eigen::Quaterniond orientation_ = Eigen::Quaterniond::Identity();
};

/// a * b: apply b, then a.
Pose compose(const Pose& a, const Pose& b);
Pose inverse(const Pose& a);
/// inverse(a) * b, i.e. b expressed in the frame of a.
Pose relative(const Pose& a, const Pose& b);

struct PoseError {
  double translation = 0.0;  // meters
  double rotation = 0.0;     // radians, in [0, pi]
};

PoseError pose_error(const Pose& a, const Pose& b);

/// Geodesic angle between two orientations, in [0, pi].
double rotation_angle(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b);

/// Sign-aligned component-wise mean, renormalized. Aligns every input to
/// the hemisphere of the first one.
Eigen::Quaterniond chordal_mean(const std::vector<Eigen::Quaterniond>& rotations);

/// Rotation vector (axis * angle, angle in [0, pi]) of a rotation.
Vec3 rotation_log(const Eigen::Quaterniond& q);

/// Flips v so that its largest-magnitude component is positive.
Vec3 canonical_direction(const Vec3& v);

struct TimedPose {
  double t = 0.0;
  Pose pose;
  friend bool operator==(const TimedPose&, const TimedPose&) = default;
};

/// Time-ordered pose samples of one trajectory cluster.
class PoseTrajectory {
 public:
  /// Throws FormatError unless timestamps are strictly increasing.
  PoseTrajectory(std::string cluster_id, std::vector<TimedPose> samples);

  const std::string& id() const { return id_; }
  const std::vector<TimedPose>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }

  friend bool operator==(const PoseTrajectory&, const PoseTrajectory&) = default;

 private:
  std::string id_;
  std::vector<TimedPose> samples_;
};

}  // namespace multikin
