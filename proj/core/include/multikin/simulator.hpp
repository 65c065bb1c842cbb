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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "multikin/geometry.hpp"
#include "multikin/kinematics.hpp"
#include "multikin/selection.hpp"

namespace multikin {

enum class Topology { Random, Chain, Star };

std::string_view to_string(Topology topology);

/// One ground-truth joint. `model` holds the true parameters in the
/// parent's frame; its configs are left empty.
struct JointSpec {
  std::string parent;
  std::string child;
  EdgeModel model;
  double q_lo = 0.0;
  double q_hi = 0.0;
  /// Half-periods of the cosine profile driving this joint over a
  /// demonstration. Distinct per joint so composite motions never collapse
  /// onto a single-joint path.
  int frequency = 1;
};

struct GroundTruthSpec {
  std::string background = "background";
  std::vector<std::string> parts;            // cluster ids
  std::map<std::string, std::string> names;  // cluster id -> part name used in captions
  Pose world;                                // background pose
  std::vector<JointSpec> joints;             // parents before children
  Topology topology = Topology::Random;
};

/// Relative weights of the edge types drawn by sample_spec.
struct TypeMix {
  double rigid = 0.0;
  double prismatic = 0.5;
  double rotational = 0.5;
};

struct NoiseSpec {
  double sigma_pos = 0.0;
  double sigma_rot = 0.0;
  std::uint64_t seed = 0;
};

/// Part names, in the order sample_spec hands them out.
const std::vector<std::string>& part_names();

/// Random scene with 1..6 parts: tree topology, joint types drawn from
/// `mix`, axes uniform on the sphere, axis points inside a 1 m cube,
/// rotational sweeps in [0.5, 1.5] rad and prismatic ranges in
/// [0.1, 0.4] m.
GroundTruthSpec sample_spec(std::uint64_t seed, int n_parts, const TypeMix& mix,
                            Topology topology = Topology::Random);

/// Configuration of `joint` at normalized time tau in [0, 1].
double joint_config(const JointSpec& joint, double tau);

/// Forward kinematics of every cluster at `steps` evenly spaced instants,
/// 0.1 s apart, with Gaussian position noise and random-axis rotation
/// noise of angle |N(0, sigma_rot)| on every sample.
std::vector<PoseTrajectory> render(const GroundTruthSpec& spec, int steps, const NoiseSpec& noise);

/// Relative transforms of one joint with the noise applied directly to
/// each relative pose.
ObservationSequence render_edge(const JointSpec& joint, int steps, const NoiseSpec& noise);

/// Ground-truth kinematic graph with the configurations used by render.
KinematicGraph truth_graph(const GroundTruthSpec& spec, int steps);

enum class VerbMode { Unambiguous, Ambiguous, Mixed };

std::string_view to_string(VerbMode mode);

/// One sentence "The <name> <verb>s." per non-rigid joint. Unambiguous
/// verbs come from the type's exclusive dictionary list, ambiguous ones
/// from the words both lists share.
std::string synth_caption(const GroundTruthSpec& spec, VerbMode mode, std::uint64_t seed);

/// Removes `count` moving clusters chosen at random, mimicking a vision
/// front end that under-segments the scene.
std::vector<PoseTrajectory> drop_clusters(const std::vector<PoseTrajectory>& trajectories,
                                          int count, std::uint64_t seed,
                                          const std::string& background);

/// Third-person singular of a verb ("push" -> "pushes").
std::string third_person(std::string_view verb);

}  // namespace multikin
