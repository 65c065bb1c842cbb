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

#include "multikin/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "multikin/errors.hpp"

namespace multikin {
namespace {

Eigen::Quaterniond canonicalize(Eigen::Quaterniond q) {
  const double n = q.norm();
  // Already-unit inputs are kept bit-exact so serialized poses round-trip.
  if (std::abs(n - 1.0) > 1e-12) q.coeffs() /= n;
  double lead = q.w();
  if (lead == 0.0) {
    for (double c : {q.x(), q.y(), q.z()}) {
      if (c != 0.0) {
        lead = c;
        break;
      }
    }
  }
  if (lead < 0.0) q.coeffs() = -q.coeffs();
  // Negative zeros would break byte-stable comparisons.
  for (int i = 0; i < 4; ++i) {
    if (q.coeffs()[i] == 0.0) q.coeffs()[i] = 0.0;
  }
  return q;
}

}  // namespace

Pose::Pose(const Vec3& position, const Eigen::Quaterniond& orientation)
    : position_(position), orientation_(canonicalize(orientation)) {}

Pose Pose::translation(double x, double y, double z) {
  return {Vec3(x, y, z), Eigen::Quaterniond::Identity()};
}

Pose Pose::rotation(const Vec3& axis, double angle) {
  return {Vec3::Zero(), Eigen::Quaterniond(Eigen::AngleAxisd(angle, axis.normalized()))};
}

Pose Pose::from_wxyz(const Vec3& position, const std::array<double, 4>& wxyz) {
  return {position, Eigen::Quaterniond(wxyz[0], wxyz[1], wxyz[2], wxyz[3])};
}

std::array<double, 4> Pose::wxyz() const {
  return {orientation_.w(), orientation_.x(), orientation_.y(), orientation_.z()};
}

bool operator==(const Pose& a, const Pose& b) {
  return a.position_ == b.position_ && a.orientation_.coeffs() == b.orientation_.coeffs();
}

Pose compose(const Pose& a, const Pose& b) {
  return {a.apply(b.position()), a.orientation() * b.orientation()};
}

Pose inverse(const Pose& a) {
  const Eigen::Quaterniond inv = a.orientation().conjugate();
  return {-(inv * a.position()), inv};
}

Pose relative(const Pose& a, const Pose& b) { return compose(inverse(a), b); }

double rotation_angle(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b) {
  // 2*atan2(|v|, |w|) of the difference rotation; equal to 2*acos(|<a,b>|)
  // but without the precision loss of acos near identity.
  const Eigen::Quaterniond d = a.conjugate() * b;
  return 2.0 * std::atan2(d.vec().norm(), std::abs(d.w()));
}

PoseError pose_error(const Pose& a, const Pose& b) {
  return {(a.position() - b.position()).norm(), rotation_angle(a.orientation(), b.orientation())};
}

Eigen::Quaterniond chordal_mean(const std::vector<Eigen::Quaterniond>& rotations) {
  if (rotations.empty()) return Eigen::Quaterniond::Identity();
  Eigen::Vector4d sum = Eigen::Vector4d::Zero();
  const Eigen::Vector4d& ref = rotations.front().coeffs();
  for (const auto& q : rotations) {
    sum += q.coeffs().dot(ref) < 0.0 ? Eigen::Vector4d(-q.coeffs()) : q.coeffs();
  }
  Eigen::Quaterniond mean;
  mean.coeffs() = sum.normalized();
  return mean;
}

Vec3 rotation_log(const Eigen::Quaterniond& q) {
  Eigen::Quaterniond p = q.w() < 0.0 ? Eigen::Quaterniond(-q.coeffs()) : q;
  const double s = p.vec().norm();
  if (s < 1e-300) return Vec3::Zero();
  const double angle = 2.0 * std::atan2(s, p.w());
  return p.vec() * (angle / s);
}

Vec3 canonical_direction(const Vec3& v) {
  Eigen::Index idx = 0;
  v.cwiseAbs().maxCoeff(&idx);
  return v[idx] < 0.0 ? Vec3(-v) : v;
}

PoseTrajectory::PoseTrajectory(std::string cluster_id, std::vector<TimedPose> samples)
    : id_(std::move(cluster_id)), samples_(std::move(samples)) {
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    if (!(samples_[i].t > samples_[i - 1].t)) {
      throw FormatError("trajectory '" + id_ + "': timestamps must be strictly increasing");
    }
  }
}

}  // namespace multikin
