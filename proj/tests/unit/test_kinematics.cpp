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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "multikin/errors.hpp"
#include "multikin/kinematics.hpp"
#include "multikin/random.hpp"

namespace multikin {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

double axis_angle(const Vec3& a, const Vec3& b) {
  return std::acos(std::min(1.0, std::abs(a.normalized().dot(b.normalized()))));
}

ObservationSequence seq(std::vector<Pose> poses) { return {"a", "b", std::move(poses)}; }

std::vector<Pose> door(int steps, double sweep) {
  std::vector<Pose> out;
  for (int t = 0; t < steps; ++t) {
    out.push_back(rotation_about_line(Vec3::UnitZ(), Vec3(1, 0, 0), sweep * t / (steps - 1)));
  }
  return out;
}

double max_residual(const EdgeModel& m, const ObservationSequence& obs) {
  double worst = 0.0;
  for (std::size_t t = 0; t < obs.size(); ++t) {
    const PoseError e =
        pose_error(predict(m, m.configs.empty() ? 0.0 : m.configs[t]), obs.transforms[t]);
    worst = std::max({worst, e.translation, e.rotation});
  }
  return worst;
}

TEST(ObservationSequence, DistinctParts) {
  EXPECT_THROW(ObservationSequence("a", "a", {}), Error);
}

TEST(DofCount, Table) {
  EXPECT_EQ(dof_count(ModelType::Rigid), 6);
  EXPECT_EQ(dof_count(ModelType::Prismatic), 7);
  EXPECT_EQ(dof_count(ModelType::Rotational), 9);
}

TEST(ModelType, NamesRoundTrip) {
  for (ModelType t : kModelTypes) EXPECT_EQ(parse_model_type(to_string(t)), t);
  EXPECT_EQ(parse_model_type("Rotational"), ModelType::Rotational);
  EXPECT_FALSE(parse_model_type("helical"));
}

TEST(FitRigid, ConstantInput) {
  const auto obs = seq(std::vector<Pose>(5, Pose::translation(1, 0, 0)));
  const EdgeModel m = fit_rigid(obs);
  EXPECT_EQ(std::get<RigidParams>(m.params).fixed_transform, Pose::translation(1, 0, 0));
  EXPECT_EQ(m.k, 6);
  EXPECT_TRUE(m.configs.empty());
  EXPECT_EQ(max_residual(m, obs), 0.0);
}

TEST(FitRigid, MatchesArithmeticMeanOracle) {
  Rng rng(123);
  std::vector<Pose> poses;
  Vec3 oracle = Vec3::Zero();
  for (int t = 0; t < 50; ++t) {
    const Vec3 p(1.0 + rng.normal(0, 0.01), rng.normal(0, 0.01), rng.normal(0, 0.01));
    oracle += p;
    poses.push_back(Pose(p, Eigen::Quaterniond::Identity()));
  }
  oracle /= 50.0;
  const Pose fixed = std::get<RigidParams>(fit_rigid(seq(poses)).params).fixed_transform;
  EXPECT_TRUE(fixed.position().isApprox(oracle, 1e-12));
  EXPECT_LT((fixed.position() - Vec3(1, 0, 0)).norm(), 0.005);
}

TEST(FitRigid, SymmetricRotationsAverageToIdentity) {
  const auto obs = seq({Pose::rotation(Vec3::UnitZ(), 10 * kDeg),
                        Pose::rotation(Vec3::UnitZ(), -10 * kDeg)});
  const Pose fixed = std::get<RigidParams>(fit_rigid(obs).params).fixed_transform;
  EXPECT_LT(rotation_angle(fixed.orientation(), Eigen::Quaterniond::Identity()), 1e-15);
}

TEST(FitRigid, TooFewObservations) {
  EXPECT_THROW(fit_rigid(seq({Pose{}})), TooFewObservations);
}

TEST(FitPrismatic, AxisAlignedSlide) {
  std::vector<Pose> poses;
  for (int t = 0; t < 10; ++t) poses.push_back(Pose::translation(0.1 * t, 0, 0));
  const auto obs = seq(poses);
  const EdgeModel m = fit_prismatic(obs);
  EXPECT_EQ(m.k, 7);
  EXPECT_LT(axis_angle(*m.axis(), Vec3::UnitX()), 0.5 * kDeg);
  EXPECT_LT(max_residual(m, obs), 1e-9);
  // Configurations are the projections about the centroid.
  EXPECT_NEAR(m.configs.back() - m.configs.front(), 0.9, 1e-12);
}

TEST(FitPrismatic, DiagonalSlide) {
  const Vec3 dir = Vec3(1, 1, 1).normalized();
  std::vector<Pose> poses;
  for (int t = 0; t < 10; ++t) poses.push_back(Pose(0.1 * t * dir, Eigen::Quaterniond::Identity()));
  const EdgeModel m = fit_prismatic(seq(poses));
  EXPECT_LT(axis_angle(*m.axis(), dir), 0.5 * kDeg);
}

TEST(FitPrismatic, ConstantIsDegenerate) {
  EXPECT_THROW(fit_prismatic(seq(std::vector<Pose>(6, Pose::translation(1, 2, 3)))),
               DegenerateMotion);
}

TEST(FitPrismatic, ScaleEquivariance) {
  Rng rng(8);
  const Vec3 dir = rng.unit_vector();
  std::vector<Pose> small, large;
  for (int t = 0; t < 12; ++t) {
    const Vec3 p = (0.05 * t) * dir + Vec3(rng.normal(0, 0.001), rng.normal(0, 0.001), 0.0);
    small.emplace_back(p, Eigen::Quaterniond::Identity());
    large.emplace_back(3.0 * p, Eigen::Quaterniond::Identity());
  }
  const EdgeModel a = fit_prismatic(seq(small));
  const EdgeModel b = fit_prismatic(seq(large));
  EXPECT_LT(axis_angle(*a.axis(), *b.axis()), 1e-9);
  const double sign = a.axis()->dot(*b.axis()) > 0 ? 1.0 : -1.0;
  for (std::size_t t = 0; t < a.configs.size(); ++t) {
    EXPECT_NEAR(sign * 3.0 * a.configs[t], b.configs[t], 1e-9);
  }
}

TEST(FitRotational, DoorSwing) {
  const auto obs = seq(door(10, kPi / 2));
  const EdgeModel m = fit_rotational(obs);
  const auto& p = std::get<RotationalParams>(m.params);
  EXPECT_EQ(m.k, 9);
  EXPECT_LT(axis_angle(p.axis_dir, Vec3::UnitZ()), 0.5 * kDeg);
  EXPECT_LT((p.axis_point - Vec3(1, 0, 0)).norm(), 1e-6);
  EXPECT_LT(max_residual(m, obs), 1e-6);
  EXPECT_LT(std::abs(p.axis_point.dot(p.axis_dir)), 1e-9);
  EXPECT_NEAR(p.axis_dir.norm(), 1.0, 1e-9);
}

TEST(FitRotational, KasaOracleCenter) {
  // Three points on the circle of radius 2 about (0.5, -1) in the xy-plane.
  const Vec3 center(0.5, -1.0, 0.0);
  std::vector<Pose> poses;
  for (double a : {0.0, 0.4, 0.8, 1.2}) {
    poses.push_back(rotation_about_line(Vec3::UnitZ(), center, a));
  }
  for (auto& p : poses) p = compose(p, Pose::translation(2.5, -1.0, 0.0));
  const EdgeModel m = fit_rotational(seq(poses));
  const auto& r = std::get<RotationalParams>(m.params);
  EXPECT_LT((r.axis_point - center).norm(), 1e-9);
}

TEST(FitRotational, NoisyDoorWithinFrozenBounds) {
  // Bounds frozen from the 95th percentile over these 100 seeds
  // (0.67 deg, 0.0098 m); every seed must stay inside them.
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(s);
    std::vector<Pose> poses;
    for (const Pose& p : door(10, kPi / 2)) {
      Vec3 pos = p.position();
      for (int k = 0; k < 3; ++k) pos[k] += rng.normal(0, 0.005);
      poses.emplace_back(pos, p.orientation());
    }
    const auto& r = std::get<RotationalParams>(fit_rotational(seq(poses)).params);
    EXPECT_LT(axis_angle(r.axis_dir, Vec3::UnitZ()), 2.0 * kDeg) << s;
    EXPECT_LT((r.axis_point - Vec3(1, 0, 0)).norm(), 0.02) << s;
  }
}

TEST(FitRotational, PureTranslationIsDegenerate) {
  std::vector<Pose> poses;
  for (int t = 0; t < 10; ++t) poses.push_back(Pose::translation(0.1 * t, 0, 0));
  EXPECT_THROW(fit_rotational(seq(poses)), DegenerateMotion);
}

TEST(FitRotational, NeedsThreeObservations) {
  EXPECT_THROW(fit_rotational(seq(door(2, 1.0))), TooFewObservations);
}

TEST(FitRotational, FrameEquivariance) {
  Rng rng(31);
  const Pose g(rng.unit_vector(), rng.rotation());
  std::vector<Pose> conj;
  for (const Pose& p : door(12, 1.2)) conj.push_back(compose(compose(g, p), inverse(g)));
  const auto& r = std::get<RotationalParams>(fit_rotational(seq(conj)).params);
  EXPECT_LT(axis_angle(r.axis_dir, g.orientation() * Vec3::UnitZ()), 1e-6);
}

TEST(FitRotational, TimeReversedAxisEqualUpToSign) {
  auto poses = door(12, 1.0);
  const auto fwd = std::get<RotationalParams>(fit_rotational(seq(poses)).params);
  std::reverse(poses.begin(), poses.end());
  const auto bwd = std::get<RotationalParams>(fit_rotational(seq(poses)).params);
  EXPECT_LT(axis_angle(fwd.axis_dir, bwd.axis_dir), 1e-9);
}

TEST(Predict, Definitions) {
  EdgeModel rigid;
  rigid.params = RigidParams{Pose::translation(1, 2, 3)};
  EXPECT_EQ(predict(rigid, 42.0), Pose::translation(1, 2, 3));

  EdgeModel pri;
  pri.params = PrismaticParams{Pose{}, Vec3::UnitX()};
  EXPECT_TRUE(predict(pri, 0.3).position().isApprox(Vec3(0.3, 0, 0)));

  EdgeModel rot;
  rot.params = RotationalParams{Vec3::UnitZ(), Vec3(1, 0, 0), Pose{}};
  const Pose p = predict(rot, kPi);
  EXPECT_TRUE(p.position().isApprox(Vec3(2, 0, 0), 1e-12));
}

TEST(LogLikelihood, ZeroResidualClosedForm) {
  const auto obs = seq(std::vector<Pose>(10, Pose::translation(1, 0, 0)));
  const EdgeModel m = fit_rigid(obs);
  // 10 * (-log(2 pi 0.01^2) - 0.5 log(2 pi (2 deg)^2)), evaluated offline.
  EXPECT_NEAR(m.log_lik, 98.0860455684303, 1e-9);
}

TEST(LogLikelihood, DoublingAResidualDecreases) {
  EdgeModel m;
  m.params = RigidParams{Pose{}};
  const double a = log_likelihood(m, seq({Pose::translation(0.01, 0, 0), Pose{}}), {});
  const double b = log_likelihood(m, seq({Pose::translation(0.02, 0, 0), Pose{}}), {});
  EXPECT_LT(b, a);
  const double c = log_likelihood(m, seq({Pose::rotation(Vec3::UnitX(), 0.01), Pose{}}), {});
  const double d = log_likelihood(m, seq({Pose::rotation(Vec3::UnitX(), 0.02), Pose{}}), {});
  EXPECT_LT(d, c);
}

TEST(LogLikelihood, RotationalBeatsPrismaticOnDoor) {
  const auto obs = seq(door(10, kPi / 2));
  EXPECT_LT(fit_prismatic(obs).log_lik, fit_rotational(obs).log_lik);
}

TEST(LogLikelihood, ConfigCountMismatchThrows) {
  EdgeModel m = fit_prismatic(seq({Pose::translation(0, 0, 0), Pose::translation(1, 0, 0)}));
  m.configs.pop_back();
  EXPECT_THROW(log_likelihood(m, seq({Pose{}, Pose{}}), {}), Error);
}

TEST(FitModel, Dispatch) {
  const auto obs = seq(door(8, 1.0));
  for (ModelType t : kModelTypes) EXPECT_EQ(fit_model(t, obs).type(), t);
}

class ReverseTest : public ::testing::TestWithParam<ModelType> {};

TEST_P(ReverseTest, PredictsInverseTransforms) {
  Rng rng(77);
  const Vec3 dir = rng.unit_vector();
  std::vector<Pose> poses;
  const Pose zero(rng.unit_vector(), rng.rotation());
  for (int t = 0; t < 10; ++t) {
    const double q = 0.1 * t;
    switch (GetParam()) {
      case ModelType::Rigid:
        poses.push_back(zero);
        break;
      case ModelType::Prismatic:
        poses.emplace_back(zero.position() + q * dir, zero.orientation());
        break;
      case ModelType::Rotational:
        poses.push_back(compose(rotation_about_line(dir, Vec3(0.2, -0.3, 0.4), q), zero));
        break;
    }
  }
  const EdgeModel m = fit_model(GetParam(), seq(poses));
  const EdgeModel r = reverse(m);
  EXPECT_EQ(r.k, m.k);
  EXPECT_EQ(r.log_lik, m.log_lik);
  for (std::size_t t = 0; t < poses.size(); ++t) {
    const double q = r.configs.empty() ? 0.0 : r.configs[t];
    const PoseError e = pose_error(predict(r, q), inverse(poses[t]));
    EXPECT_LT(e.translation, 1e-9);
    EXPECT_LT(e.rotation, 1e-9);
  }
  if (const auto axis = r.axis()) {
    EXPECT_EQ(*axis, canonical_direction(*axis));
  }
  const EdgeModel back = reverse(r);
  for (std::size_t t = 0; t < poses.size(); ++t) {
    const double q = back.configs.empty() ? 0.0 : back.configs[t];
    EXPECT_LT(pose_error(predict(back, q), poses[t]).translation, 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(AllTypes, ReverseTest, ::testing::ValuesIn(kModelTypes));

}  // namespace
}  // namespace multikin
