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

#include "multikin/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "multikin/errors.hpp"
#include "multikin/language.hpp"
#include "multikin/random.hpp"

namespace multikin {
namespace {

Vec3 uniform_in_cube(Rng& rng, double half) {
  return {rng.uniform(-half, half), rng.uniform(-half, half), rng.uniform(-half, half)};
}

ModelType draw_type(Rng& rng, const TypeMix& mix) {
  const double total = mix.rigid + mix.prismatic + mix.rotational;
  if (!(total > 0.0)) throw Error("type mix must have positive total weight");
  const double u = rng.uniform() * total;
  if (u < mix.rigid) return ModelType::Rigid;
  if (u < mix.rigid + mix.prismatic) return ModelType::Prismatic;
  return ModelType::Rotational;
}

Pose perturb(const Pose& pose, const NoiseSpec& noise, Rng& rng) {
  Vec3 p = pose.position();
  Eigen::Quaterniond q = pose.orientation();
  if (noise.sigma_pos > 0.0) {
    for (int k = 0; k < 3; ++k) p[k] += rng.normal(0.0, noise.sigma_pos);
  }
  if (noise.sigma_rot > 0.0) {
    const Vec3 axis = rng.unit_vector();
    const double angle = std::abs(rng.normal(0.0, noise.sigma_rot));
    q = Eigen::Quaterniond(Eigen::AngleAxisd(angle, axis)) * q;
  }
  return {p, q};
}

std::vector<std::string> exclusive_verbs(const WordSet& own, const WordSet& other,
                                         const WordSet& nouns) {
  std::vector<std::string> out;
  for (const auto& w : own) {
    if (!other.contains(w) && !nouns.contains(w)) out.push_back(w);
  }
  return out;
}

}  // namespace

std::string_view to_string(Topology topology) {
  switch (topology) {
    case Topology::Random:
      return "tree";
    case Topology::Chain:
      return "chain";
    case Topology::Star:
      return "star";
  }
  return "tree";
}

std::string_view to_string(VerbMode mode) {
  switch (mode) {
    case VerbMode::Unambiguous:
      return "unambiguous";
    case VerbMode::Ambiguous:
      return "ambiguous";
    case VerbMode::Mixed:
      return "mixed";
  }
  return "unambiguous";
}

const std::vector<std::string>& part_names() {
  static const std::vector<std::string> names = {"door", "drawer", "wheel",
                                                 "frame", "seat", "monitor arm"};
  return names;
}

GroundTruthSpec sample_spec(std::uint64_t seed, int n_parts, const TypeMix& mix,
                            Topology topology) {
  if (n_parts < 1 || n_parts > 6) throw Error("n_parts must be in [1, 6]");
  Rng rng(seed);
  GroundTruthSpec spec;
  spec.topology = topology;
  spec.world = Pose(uniform_in_cube(rng, 1.0), rng.rotation());

  std::vector<std::string> names = part_names();
  for (std::size_t k = names.size(); k > 1; --k) {
    std::swap(names[k - 1], names[rng.below(k)]);
  }

  for (int k = 0; k < n_parts; ++k) {
    const std::string id = "part" + std::to_string(k + 1);
    spec.parts.push_back(id);
    spec.names[id] = names[static_cast<std::size_t>(k)];

    JointSpec joint;
    joint.child = id;
    switch (topology) {
      case Topology::Chain:
        joint.parent = k == 0 ? spec.background : spec.parts[static_cast<std::size_t>(k - 1)];
        break;
      case Topology::Star:
        joint.parent = spec.background;
        break;
      case Topology::Random: {
        const auto pick = rng.below(static_cast<std::uint64_t>(k + 1));
        joint.parent = pick == 0 ? spec.background : spec.parts[pick - 1];
        break;
      }
    }
    joint.frequency = k + 1;

    const ModelType type = draw_type(rng, mix);
    const Pose offset(uniform_in_cube(rng, 0.5), rng.rotation());
    switch (type) {
      case ModelType::Rigid:
        joint.model.params = RigidParams{offset};
        break;
      case ModelType::Prismatic:
        joint.model.params = PrismaticParams{offset, rng.unit_vector()};
        joint.q_hi = rng.uniform(0.1, 0.4);
        break;
      case ModelType::Rotational: {
        const Vec3 dir = rng.unit_vector();
        Vec3 point = uniform_in_cube(rng, 0.5);
        point -= point.dot(dir) * dir;
        joint.model.params = RotationalParams{dir, point, offset};
        joint.q_hi = rng.uniform(0.5, 1.5);
        break;
      }
    }
    joint.model.k = dof_count(type);
    spec.joints.push_back(std::move(joint));
  }
  return spec;
}

double joint_config(const JointSpec& joint, double tau) {
  const double s = 0.5 * (1.0 - std::cos(std::numbers::pi * joint.frequency * tau));
  return joint.q_lo + (joint.q_hi - joint.q_lo) * s;
}

std::vector<PoseTrajectory> render(const GroundTruthSpec& spec, int steps,
                                   const NoiseSpec& noise) {
  if (steps < 3) throw Error("render needs at least 3 steps");
  Rng rng(noise.seed);
  std::map<std::string, std::vector<TimedPose>> samples;
  std::vector<std::string> order = {spec.background};
  order.insert(order.end(), spec.parts.begin(), spec.parts.end());

  for (int s = 0; s < steps; ++s) {
    const double tau = static_cast<double>(s) / (steps - 1);
    const double t = 0.1 * s;
    std::map<std::string, Pose> world;
    world[spec.background] = spec.world;
    for (const auto& joint : spec.joints) {
      world[joint.child] =
          compose(world.at(joint.parent), predict(joint.model, joint_config(joint, tau)));
    }
    for (const auto& id : order) {
      samples[id].push_back({t, perturb(world.at(id), noise, rng)});
    }
  }

  std::vector<PoseTrajectory> out;
  for (const auto& id : order) out.emplace_back(id, std::move(samples[id]));
  return out;
}

ObservationSequence render_edge(const JointSpec& joint, int steps, const NoiseSpec& noise) {
  if (steps < 3) throw Error("render needs at least 3 steps");
  Rng rng(noise.seed);
  std::vector<Pose> rel;
  rel.reserve(static_cast<std::size_t>(steps));
  for (int s = 0; s < steps; ++s) {
    const double tau = static_cast<double>(s) / (steps - 1);
    rel.push_back(perturb(predict(joint.model, joint_config(joint, tau)), noise, rng));
  }
  return ObservationSequence(joint.parent, joint.child, std::move(rel));
}

KinematicGraph truth_graph(const GroundTruthSpec& spec, int steps) {
  KinematicGraph g;
  g.background = spec.background;
  g.vertices = {spec.background};
  g.vertices.insert(g.vertices.end(), spec.parts.begin(), spec.parts.end());
  std::sort(g.vertices.begin(), g.vertices.end());
  for (const auto& joint : spec.joints) {
    GraphEdge e;
    e.i = joint.parent;
    e.j = joint.child;
    e.model = joint.model;
    e.model.k = dof_count(e.model.type());
    e.model.log_lik = 0.0;
    if (e.model.type() != ModelType::Rigid) {
      for (int s = 0; s < steps; ++s) {
        e.model.configs.push_back(joint_config(joint, static_cast<double>(s) / (steps - 1)));
      }
    }
    e.n = steps;
    g.edges.push_back(std::move(e));
  }
  g.validate();
  return g;
}

std::string third_person(std::string_view verb) {
  std::string v(verb);
  auto ends = [&](std::string_view s) {
    return v.size() >= s.size() && v.compare(v.size() - s.size(), s.size(), s) == 0;
  };
  if (ends("s") || ends("sh") || ends("ch") || ends("x") || ends("z") || ends("o")) return v + "es";
  if (v.size() > 1 && ends("y") && std::string_view("aeiou").find(v[v.size() - 2]) ==
                                       std::string_view::npos) {
    return v.substr(0, v.size() - 1) + "ies";
  }
  return v + "s";
}

std::string synth_caption(const GroundTruthSpec& spec, VerbMode mode, std::uint64_t seed) {
  Rng rng(seed);
  const ManualDictionary dict = ManualDictionary::standard();
  const WordSet nouns = Lexicons::defaults().parts;
  const auto prismatic = exclusive_verbs(dict.prismatic, dict.rotational, nouns);
  const auto rotational = exclusive_verbs(dict.rotational, dict.prismatic, nouns);
  std::vector<std::string> shared;
  for (const auto& w : dict.prismatic) {
    if (dict.rotational.contains(w)) shared.push_back(w);
  }

  auto pick = [&rng](const std::vector<std::string>& pool) -> const std::string& {
    return pool[rng.below(pool.size())];
  };

  std::string caption;
  for (const auto& joint : spec.joints) {
    const ModelType type = joint.model.type();
    if (type == ModelType::Rigid) continue;
    bool ambiguous = mode == VerbMode::Ambiguous;
    if (mode == VerbMode::Mixed) ambiguous = rng.uniform() < 0.5;
    const std::string& verb =
        ambiguous ? pick(shared) : pick(type == ModelType::Prismatic ? prismatic : rotational);
    if (!caption.empty()) caption += ' ';
    caption += "The " + spec.names.at(joint.child) + " " + third_person(verb) + ".";
  }
  return caption;
}

std::vector<PoseTrajectory> drop_clusters(const std::vector<PoseTrajectory>& trajectories,
                                          int count, std::uint64_t seed,
                                          const std::string& background) {
  std::vector<std::size_t> moving;
  for (std::size_t k = 0; k < trajectories.size(); ++k) {
    if (trajectories[k].id() != background) moving.push_back(k);
  }
  if (count < 0 || static_cast<std::size_t>(count) > moving.size()) {
    throw Error("cannot drop " + std::to_string(count) + " of " + std::to_string(moving.size()) +
                " moving clusters");
  }
  Rng rng(seed);
  for (std::size_t k = moving.size(); k > 1; --k) std::swap(moving[k - 1], moving[rng.below(k)]);
  std::vector<bool> drop(trajectories.size(), false);
  for (int k = 0; k < count; ++k) drop[moving[static_cast<std::size_t>(k)]] = true;

  std::vector<PoseTrajectory> out;
  for (std::size_t k = 0; k < trajectories.size(); ++k) {
    if (!drop[k]) out.push_back(trajectories[k]);
  }
  return out;
}

}  // namespace multikin
