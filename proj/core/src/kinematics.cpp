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

#include "multikin/kinematics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "multikin/errors.hpp"

namespace multikin {
namespace {

constexpr double kMinSlideVariance = 1e-12;
constexpr double kMinRotationSweep = 0.05;

void require_observations(const ObservationSequence& obs, std::size_t minimum,
                          std::string_view model) {
  if (obs.size() < minimum) {
    throw TooFewObservations(std::string(model) + " fit of edge (" + obs.part_i + ", " +
                             obs.part_j + ") needs at least " + std::to_string(minimum) +
                             " observations, got " + std::to_string(obs.size()));
  }
}

Eigen::Quaterniond mean_orientation(const ObservationSequence& obs) {
  std::vector<Eigen::Quaterniond> qs;
  qs.reserve(obs.size());
  for (const auto& p : obs.transforms) qs.push_back(p.orientation());
  return chordal_mean(qs);
}

Vec3 mean_position(const ObservationSequence& obs) {
  Vec3 sum = Vec3::Zero();
  for (const auto& p : obs.transforms) sum += p.position();
  return sum / static_cast<double>(obs.size());
}

// Unit vectors e1, e2 with (e1, e2, axis) right-handed.
std::pair<Vec3, Vec3> plane_basis(const Vec3& axis) {
  Eigen::Index idx = 0;
  axis.cwiseAbs().minCoeff(&idx);
  Vec3 helper = Vec3::Zero();
  helper[idx] = 1.0;
  const Vec3 e1 = (helper - helper.dot(axis) * axis).normalized();
  return {e1, axis.cross(e1)};
}

double wrap_angle(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

struct Circle {
  Eigen::Vector2d center;
  double radius;
};

// Kåsa algebraic fit on mean-centered points.
Circle fit_circle(const std::vector<Eigen::Vector2d>& points) {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& p : points) mean += p;
  mean /= static_cast<double>(points.size());

  double spread = 0.0;
  for (const auto& p : points) spread = std::max(spread, (p - mean).norm());
  if (spread < 1e-9) return {mean, 0.0};

  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Vector2d d = points[static_cast<std::size_t>(i)] - mean;
    a.row(i) << d.x(), d.y(), 1.0;
    b[i] = d.squaredNorm();
  }
  const Eigen::Vector3d c = a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
  const Eigen::Vector2d center(c[0] / 2.0, c[1] / 2.0);
  const double r2 = c[2] + center.squaredNorm();
  return {mean + center, std::sqrt(std::max(r2, 0.0))};
}

// Least-squares circle x_t = c + Rot(phase_t) v with known phases.
Circle fit_circle_with_phases(const std::vector<Eigen::Vector2d>& points,
                              const std::vector<double>& phases) {
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd a(2 * n, 4);
  Eigen::VectorXd b(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double c = std::cos(phases[static_cast<std::size_t>(i)]);
    const double s = std::sin(phases[static_cast<std::size_t>(i)]);
    a.row(2 * i) << 1.0, 0.0, c, -s;
    a.row(2 * i + 1) << 0.0, 1.0, s, c;
    b[2 * i] = points[static_cast<std::size_t>(i)].x();
    b[2 * i + 1] = points[static_cast<std::size_t>(i)].y();
  }
  const Eigen::Vector4d x = a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
  return {x.head<2>(), x.tail<2>().norm()};
}

EdgeModel finish(ModelParams params, std::vector<double> configs, const ObservationSequence& obs,
                 const NoiseModel& noise);

// Configurations blend the angle of each sample about the circle center
// with its rotation angle, weighted by their noise variances.
EdgeModel rotational_from_circle(const ObservationSequence& obs, const NoiseModel& noise,
                                 const Vec3& axis, const Vec3& e1, const Vec3& e2,
                                 const std::vector<Eigen::Vector2d>& planar,
                                 const std::vector<double>& spin, const Circle& circle) {
  const std::size_t n = obs.size();
  const Vec3 axis_point = circle.center.x() * e1 + circle.center.y() * e2;
  std::vector<double> phase(n);
  for (std::size_t t = 0; t < n; ++t) {
    const Eigen::Vector2d d = planar[t] - circle.center;
    phase[t] = std::atan2(d.y(), d.x());
  }
  double s = 0.0;
  double c = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    s += std::sin(phase[t] - spin[t]);
    c += std::cos(phase[t] - spin[t]);
  }
  const double offset = (circle.radius > 0.0) ? std::atan2(s, c) : 0.0;
  const double w_pos = circle.radius * circle.radius / (noise.sigma_pos * noise.sigma_pos);
  const double w_rot = 1.0 / (noise.sigma_rot * noise.sigma_rot);
  const double blend = w_pos / (w_pos + w_rot);

  std::vector<double> configs(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double from_rotation = offset + spin[t];
    configs[t] = from_rotation + blend * wrap_angle(phase[t] - from_rotation);
  }

  // Zero pose: average of each observation carried back to q = 0.
  Vec3 pos_sum = Vec3::Zero();
  std::vector<Eigen::Quaterniond> rots;
  rots.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    const Pose back = compose(inverse(rotation_about_line(axis, axis_point, configs[t])),
                              obs.transforms[t]);
    pos_sum += back.position();
    rots.push_back(back.orientation());
  }
  RotationalParams params{axis, axis_point,
                          Pose(pos_sum / static_cast<double>(n), chordal_mean(rots))};
  return finish(std::move(params), std::move(configs), obs, noise);
}

EdgeModel finish(ModelParams params, std::vector<double> configs, const ObservationSequence& obs,
                 const NoiseModel& noise) {
  EdgeModel model;
  model.params = std::move(params);
  model.k = dof_count(model.type());
  model.configs = std::move(configs);
  model.log_lik = log_likelihood(model, obs, noise);
  return model;
}

}  // namespace

std::string_view to_string(ModelType type) {
  switch (type) {
    case ModelType::Rigid:
      return "rigid";
    case ModelType::Prismatic:
      return "prismatic";
    case ModelType::Rotational:
      return "rotational";
  }
  return "unknown";
}

std::optional<ModelType> parse_model_type(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (ModelType t : kModelTypes) {
    if (lower == to_string(t)) return t;
  }
  return std::nullopt;
}

ObservationSequence::ObservationSequence(std::string i, std::string j, std::vector<Pose> poses)
    : part_i(std::move(i)), part_j(std::move(j)), transforms(std::move(poses)) {
  if (part_i == part_j) {
    throw Error("observation sequence endpoints must differ, got '" + part_i + "' twice");
  }
}

std::optional<Vec3> EdgeModel::axis() const {
  if (const auto* p = std::get_if<PrismaticParams>(&params)) return p->axis;
  if (const auto* r = std::get_if<RotationalParams>(&params)) return r->axis_dir;
  return std::nullopt;
}

int dof_count(ModelType type) {
  switch (type) {
    case ModelType::Rigid:
      return 6;  // fixed transform
    case ModelType::Prismatic:
      return 7;  // base pose + unit axis - zero-config gauge
    case ModelType::Rotational:
      return 9;  // 2 direction + 2 closest point + zero pose - zero-angle gauge
  }
  return 0;
}

Pose rotation_about_line(const Vec3& dir, const Vec3& point, double angle) {
  const Eigen::Quaterniond q(Eigen::AngleAxisd(angle, dir));
  return {point - q * point, q};
}

EdgeModel fit_rigid(const ObservationSequence& obs, const NoiseModel& noise) {
  require_observations(obs, 2, "rigid");
  return finish(RigidParams{Pose(mean_position(obs), mean_orientation(obs))}, {}, obs, noise);
}

EdgeModel fit_prismatic(const ObservationSequence& obs, const NoiseModel& noise) {
  require_observations(obs, 2, "prismatic");
  const Vec3 centroid = mean_position(obs);
  Mat3 cov = Mat3::Zero();
  for (const auto& p : obs.transforms) {
    const Vec3 d = p.position() - centroid;
    cov += d * d.transpose();
  }
  cov /= static_cast<double>(obs.size());

  const Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
  if (eig.eigenvalues()[2] < kMinSlideVariance) {
    throw DegenerateMotion("prismatic fit of edge (" + obs.part_i + ", " + obs.part_j +
                           "): no detectable sliding");
  }
  const Vec3 axis = canonical_direction(eig.eigenvectors().col(2).normalized());

  std::vector<double> configs;
  configs.reserve(obs.size());
  for (const auto& p : obs.transforms) configs.push_back(axis.dot(p.position() - centroid));

  PrismaticParams params{Pose(centroid, mean_orientation(obs)), axis};
  return finish(std::move(params), std::move(configs), obs, noise);
}

EdgeModel fit_rotational(const ObservationSequence& obs, const NoiseModel& noise) {
  require_observations(obs, 3, "rotational");
  const std::size_t n = obs.size();

  // Rotation vectors relative to the mean orientation; for a hinge every
  // one of them lies along the axis.
  const Eigen::Quaterniond ref = mean_orientation(obs);
  std::vector<Vec3> generators;
  generators.reserve(n);
  Mat3 rot_scatter = Mat3::Zero();
  for (const auto& p : obs.transforms) {
    generators.push_back(rotation_log(p.orientation() * ref.conjugate()));
    rot_scatter += generators.back() * generators.back().transpose();
  }
  const Vec3 centroid = mean_position(obs);
  Mat3 pos_scatter = Mat3::Zero();
  for (const auto& p : obs.transforms) {
    const Vec3 d = p.position() - centroid;
    pos_scatter += d * d.transpose();
  }

  // Candidate axes: the principal rotation direction, and the direction
  // that also keeps the translations orthogonal to it. The second one
  // matters on short arcs, where rotation noise swamps the first.
  const double w_rot = 1.0 / (noise.sigma_rot * noise.sigma_rot);
  const double w_pos = 1.0 / (noise.sigma_pos * noise.sigma_pos);
  std::vector<Vec3> axes;
  for (const Mat3& m : {Mat3(rot_scatter), Mat3(w_rot * rot_scatter - w_pos * pos_scatter)}) {
    const Eigen::SelfAdjointEigenSolver<Mat3> eig(m);
    const Vec3 axis = canonical_direction(eig.eigenvectors().col(2).normalized());
    if (axes.empty() || std::abs(axes.front().dot(axis)) < 1.0 - 1e-12) axes.push_back(axis);
  }

  std::optional<EdgeModel> best;
  for (const Vec3& axis : axes) {
    std::vector<double> spin(n);
    for (std::size_t t = 0; t < n; ++t) spin[t] = axis.dot(generators[t]);
    const auto [lo, hi] = std::minmax_element(spin.begin(), spin.end());
    if (*hi - *lo < kMinRotationSweep) continue;

    // Axis location: circle through the translations projected on the
    // plane orthogonal to the axis, either unconstrained or with the
    // rotation angles as known phases.
    const auto [e1, e2] = plane_basis(axis);
    std::vector<Eigen::Vector2d> planar;
    planar.reserve(n);
    for (const auto& p : obs.transforms) {
      planar.emplace_back(e1.dot(p.position()), e2.dot(p.position()));
    }
    for (const Circle& circle : {fit_circle(planar), fit_circle_with_phases(planar, spin)}) {
      EdgeModel model = rotational_from_circle(obs, noise, axis, e1, e2, planar, spin, circle);
      if (!best || model.log_lik > best->log_lik) best = std::move(model);
    }
  }
  if (!best) {
    throw DegenerateMotion("rotational fit of edge (" + obs.part_i + ", " + obs.part_j +
                           "): rotation sweep below threshold");
  }
  return *std::move(best);
}

EdgeModel fit_model(ModelType type, const ObservationSequence& obs, const NoiseModel& noise) {
  switch (type) {
    case ModelType::Rigid:
      return fit_rigid(obs, noise);
    case ModelType::Prismatic:
      return fit_prismatic(obs, noise);
    case ModelType::Rotational:
      return fit_rotational(obs, noise);
  }
  throw Error("unknown model type");
}

Pose predict(const EdgeModel& model, double q) {
  return std::visit(
      [q](const auto& p) -> Pose {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, RigidParams>) {
          return p.fixed_transform;
        } else if constexpr (std::is_same_v<P, PrismaticParams>) {
          return {p.base.position() + q * p.axis, p.base.orientation()};
        } else {
          return compose(rotation_about_line(p.axis_dir, p.axis_point, q), p.zero_pose);
        }
      },
      model.params);
}

double log_likelihood(const EdgeModel& model, const ObservationSequence& obs,
                      const NoiseModel& noise) {
  const bool rigid = model.type() == ModelType::Rigid;
  if (!rigid && model.configs.size() != obs.size()) {
    throw Error("model has " + std::to_string(model.configs.size()) +
                " configurations but the sequence has " + std::to_string(obs.size()) +
                " observations");
  }
  const double vp = noise.sigma_pos * noise.sigma_pos;
  const double vr = noise.sigma_rot * noise.sigma_rot;
  const double norm = -std::log(2.0 * std::numbers::pi * vp) -
                      0.5 * std::log(2.0 * std::numbers::pi * vr);
  double total = 0.0;
  for (std::size_t t = 0; t < obs.size(); ++t) {
    const Pose expected = predict(model, rigid ? 0.0 : model.configs[t]);
    const PoseError e = pose_error(expected, obs.transforms[t]);
    total += -e.translation * e.translation / (2.0 * vp) - e.rotation * e.rotation / (2.0 * vr) +
             norm;
  }
  return total;
}

EdgeModel reverse(const EdgeModel& model) {
  EdgeModel out = model;
  std::visit(
      [&out](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, RigidParams>) {
          out.params = RigidParams{inverse(p.fixed_transform)};
        } else if constexpr (std::is_same_v<P, PrismaticParams>) {
          // inverse(b + q a) slides along -R^T a from inverse(b).
          const Vec3 raw = -(p.base.orientation().conjugate() * p.axis);
          const Vec3 axis = canonical_direction(raw);
          if (axis != raw) {
            for (double& q : out.configs) q = -q;
          }
          out.params = PrismaticParams{inverse(p.base), axis};
        } else {
          // Z^-1 T(u, c, -q) = T(R_Z^T u, Z^-1 c, -q) Z^-1.
          const Pose zinv = inverse(p.zero_pose);
          const Vec3 raw = zinv.orientation() * p.axis_dir;
          const Vec3 axis = canonical_direction(raw);
          if (axis == raw) {
            for (double& q : out.configs) q = -q;
          }
          Vec3 point = zinv.apply(p.axis_point);
          point -= point.dot(axis) * axis;
          out.params = RotationalParams{axis, point, zinv};
        }
      },
      model.params);
  return out;
}

}  // namespace multikin
