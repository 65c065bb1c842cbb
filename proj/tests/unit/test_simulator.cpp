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
#include <set>
#include <sstream>

#include "multikin/errors.hpp"
#include "multikin/evaluation.hpp"
#include "multikin/io.hpp"
#include "multikin/language.hpp"
#include "multikin/pipeline.hpp"
#include "multikin/simulator.hpp"

namespace multikin {
namespace {

ParsedCaption parse(const std::string& text) {
  return parse_caption(tokenize_and_tag(text, Lexicons::defaults()), text);
}

ObservationSequence between(const std::vector<PoseTrajectory>& traj, const std::string& a,
                            const std::string& b) {
  const auto find = [&](const std::string& id) -> const PoseTrajectory& {
    return *std::find_if(traj.begin(), traj.end(), [&](const auto& t) { return t.id() == id; });
  };
  return relative_observations(find(a), find(b));
}

std::vector<std::string> caption_verbs(const std::string& caption) {
  std::vector<std::string> verbs;
  for (const auto& s : parse(caption).statements) verbs.push_back(s.verb);
  return verbs;
}

TEST(SampleSpec, SinglePart) {
  const auto spec = sample_spec(1, 1, {});
  EXPECT_EQ(spec.parts.size(), 1u);
  ASSERT_EQ(spec.joints.size(), 1u);
  EXPECT_EQ(spec.joints[0].parent, spec.background);
  const auto g = truth_graph(spec, 10);
  EXPECT_EQ(g.vertices.size(), 2u);
  EXPECT_EQ(g.edges.size(), 1u);
}

TEST(SampleSpec, Deterministic) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = sample_spec(seed, 4, {0.2, 0.4, 0.4});
    const auto b = sample_spec(seed, 4, {0.2, 0.4, 0.4});
    EXPECT_EQ(truth_graph(a, 10), truth_graph(b, 10));
    EXPECT_EQ(a.names, b.names);
  }
  EXPECT_NE(truth_graph(sample_spec(1, 3, {}), 10), truth_graph(sample_spec(2, 3, {}), 10));
}

TEST(SampleSpec, TypeMixRespected) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (const auto& j : sample_spec(seed, 5, {0, 0, 1}).joints) {
      EXPECT_EQ(j.model.type(), ModelType::Rotational);
    }
    for (const auto& j : sample_spec(seed, 5, {1, 0, 0}).joints) {
      EXPECT_EQ(j.model.type(), ModelType::Rigid);
    }
  }
}

TEST(SampleSpec, Invariants) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto spec = sample_spec(seed, 1 + seed % 6, {0.2, 0.4, 0.4});
    truth_graph(spec, 10).validate();
    std::set<std::string> names;
    for (const auto& [id, name] : spec.names) {
      names.insert(name);
      EXPECT_NE(std::find(part_names().begin(), part_names().end(), name), part_names().end());
    }
    EXPECT_EQ(names.size(), spec.parts.size());
    for (const auto& j : spec.joints) {
      const double range = j.q_hi - j.q_lo;
      if (j.model.type() == ModelType::Rotational) {
        const auto& p = std::get<RotationalParams>(j.model.params);
        EXPECT_GE(range, 0.1);
        EXPECT_NEAR(p.axis_dir.norm(), 1.0, 1e-12);
        EXPECT_LE(p.axis_point.cwiseAbs().maxCoeff(), 1.0);
      } else if (j.model.type() == ModelType::Prismatic) {
        EXPECT_GE(range, 0.05);
      }
    }
  }
  EXPECT_THROW(sample_spec(0, 0, {}), Error);
  EXPECT_THROW(sample_spec(0, 7, {}), Error);
}

TEST(SampleSpec, Topologies) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto chain = sample_spec(seed, 4, {}, Topology::Chain);
    for (std::size_t k = 1; k < chain.joints.size(); ++k) {
      EXPECT_EQ(chain.joints[k].parent, chain.joints[k - 1].child);
    }
    for (const auto& j : sample_spec(seed, 4, {}, Topology::Star).joints) {
      EXPECT_EQ(j.parent, "background");
    }
  }
}

TEST(Render, TrajectoryInvariants) {
  const auto spec = sample_spec(4, 3, {});
  const auto traj = render(spec, 15, {0.01, 0.02, 4});
  ASSERT_EQ(traj.size(), 4u);
  for (const auto& t : traj) {
    ASSERT_EQ(t.size(), 15u);
    for (std::size_t s = 1; s < t.size(); ++s) {
      EXPECT_GT(t.samples()[s].t, t.samples()[s - 1].t);
    }
  }
  EXPECT_THROW(render(spec, 2, {}), Error);
}

TEST(Render, FixedSeedIsByteIdentical) {
  const auto spec = sample_spec(9, 3, {});
  const std::string a = serialize_trajectories({render(spec, 20, {0.01, 0.03, 5}), "background"});
  const std::string b = serialize_trajectories({render(spec, 20, {0.01, 0.03, 5}), "background"});
  const std::string c = serialize_trajectories({render(spec, 20, {0.01, 0.03, 6}), "background"});
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(Render, RigidRelativePosesConstant) {
  const auto spec = sample_spec(2, 3, {1, 0, 0});
  const auto traj = render(spec, 10, {});
  for (const auto& j : spec.joints) {
    const auto obs = between(traj, j.parent, j.child);
    for (const auto& p : obs.transforms) {
      const auto err = pose_error(p, obs.transforms.front());
      EXPECT_LT(err.translation, 1e-9);
      EXPECT_LT(err.rotation, 1e-9);
    }
  }
}

TEST(Render, BackgroundStationaryUpToNoise) {
  const auto spec = sample_spec(3, 2, {});
  const auto traj = render(spec, 10, {});
  const auto& bg = *std::find_if(traj.begin(), traj.end(),
                                 [](const auto& t) { return t.id() == "background"; });
  for (const auto& s : bg.samples()) EXPECT_EQ(s.pose, spec.world);
  EXPECT_EQ(find_background(traj), "background");
}

TEST(Render, DoorAxisRecovered) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto spec = sample_spec(seed, 1, {0, 0, 1});
    const auto& j = spec.joints[0];
    const auto fit = fit_rotational(between(render(spec, 20, {}), j.parent, j.child));
    EXPECT_LT(axis_angle_deg(*fit.axis(), *j.model.axis()), 0.5);
  }
}

TEST(Render, NoisePerturbsEverySample) {
  const auto spec = sample_spec(3, 1, {});
  const auto clean = render(spec, 10, {});
  const auto noisy = render(spec, 10, {0.01, 0.02, 1});
  for (std::size_t c = 0; c < clean.size(); ++c) {
    for (std::size_t s = 0; s < clean[c].size(); ++s) {
      EXPECT_NE(clean[c].samples()[s].pose, noisy[c].samples()[s].pose);
    }
  }
}

TEST(RenderEdge, MatchesJointAtZeroNoise) {
  const auto spec = sample_spec(5, 1, {});
  const auto& j = spec.joints[0];
  const auto a = render_edge(j, 12, {});
  const auto b = between(render(spec, 12, {}), j.parent, j.child);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t s = 0; s < a.size(); ++s) {
    const auto err = pose_error(a.transforms[s], b.transforms[s]);
    EXPECT_LT(err.translation, 1e-9);
    EXPECT_LT(err.rotation, 1e-9);
  }
}

TEST(JointConfig, Profile) {
  const auto spec = sample_spec(5, 1, {});
  const auto& j = spec.joints[0];
  EXPECT_NEAR(joint_config(j, 0.0), j.q_lo, 1e-12);
  for (double tau = 0.0; tau <= 1.0; tau += 0.05) {
    const double q = joint_config(j, tau);
    EXPECT_GE(q, j.q_lo - 1e-12);
    EXPECT_LE(q, j.q_hi + 1e-12);
  }
}

TEST(TruthGraph, ConfigsMatchProfile) {
  const auto spec = sample_spec(6, 2, {});
  const auto g = truth_graph(spec, 8);
  for (std::size_t k = 0; k < spec.joints.size(); ++k) {
    ASSERT_EQ(g.edges[k].model.configs.size(), 8u);
    EXPECT_DOUBLE_EQ(g.edges[k].model.configs[7], joint_config(spec.joints[k], 1.0));
  }
}

TEST(ThirdPerson, Rules) {
  EXPECT_EQ(third_person("push"), "pushes");
  EXPECT_EQ(third_person("slide"), "slides");
  EXPECT_EQ(third_person("carry"), "carries");
  EXPECT_EQ(third_person("play"), "plays");
  EXPECT_EQ(third_person("go"), "goes");
  EXPECT_EQ(third_person("fix"), "fixes");
  EXPECT_EQ(third_person("catch"), "catches");
  EXPECT_EQ(third_person("pass"), "passes");
}

TEST(SynthCaption, VerbMembership) {
  const auto& dict = ManualDictionary::standard();
  const std::set<std::string> shared = {"pull", "push", "move", "close"};
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto spec = sample_spec(seed, 1 + seed % 6, {0.2, 0.4, 0.4});
    int moving = 0;
    for (const auto& j : spec.joints) moving += j.model.type() != ModelType::Rigid;

    const auto unamb = synth_caption(spec, VerbMode::Unambiguous, seed);
    const auto verbs = caption_verbs(unamb);
    EXPECT_EQ(static_cast<int>(verbs.size()), moving) << unamb;
    std::size_t v = 0;
    for (const auto& j : spec.joints) {
      if (j.model.type() == ModelType::Rigid) continue;
      ASSERT_LT(v, verbs.size());
      EXPECT_EQ(classify_manual(dict, verbs[v]), j.model.type() == ModelType::Prismatic
                                                     ? VerbLabel::Prismatic
                                                     : VerbLabel::Rotational)
          << verbs[v];
      ++v;
    }
    for (const auto& verb : caption_verbs(synth_caption(spec, VerbMode::Ambiguous, seed))) {
      EXPECT_TRUE(shared.contains(verb)) << verb;
    }
    if (moving > 0) {
      EXPECT_TRUE(validate_caption(parse(unamb)));
      EXPECT_TRUE(validate_caption(parse(synth_caption(spec, VerbMode::Mixed, seed))));
    }
  }
}

TEST(SynthCaption, TemplateAndDeterminism) {
  GroundTruthSpec spec = sample_spec(7, 1, {0, 0, 1});
  const auto text = synth_caption(spec, VerbMode::Unambiguous, 3);
  EXPECT_EQ(text, synth_caption(spec, VerbMode::Unambiguous, 3));
  EXPECT_EQ(text.rfind("The " + spec.names.at(spec.parts[0]) + " ", 0), 0u) << text;
  EXPECT_EQ(text.back(), '.');
}

TEST(DropClusters, RemovesMovingOnly) {
  const auto spec = sample_spec(8, 3, {});
  const auto traj = render(spec, 10, {});
  const auto dropped = drop_clusters(traj, 1, 2, "background");
  ASSERT_EQ(dropped.size(), 3u);
  EXPECT_NE(std::find_if(dropped.begin(), dropped.end(),
                         [](const auto& t) { return t.id() == "background"; }),
            dropped.end());
  EXPECT_EQ(drop_clusters(traj, 0, 2, "background"), traj);
  EXPECT_EQ(drop_clusters(traj, 3, 2, "background").size(), 1u);
  EXPECT_THROW(drop_clusters(traj, 4, 2, "background"), Error);
  EXPECT_EQ(dropped, drop_clusters(traj, 1, 2, "background"));
}

TEST(RoundTrip, ZeroNoiseChainAndStar) {
  InferenceConfig config;
  config.grounder = std::make_shared<const VerbGrounder>(ManualDictionary::standard());
  for (const auto topology : {Topology::Chain, Topology::Star}) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const auto spec = sample_spec(seed, 1 + seed % 4, {}, topology);
      const auto caption = synth_caption(spec, VerbMode::Unambiguous, seed);
      const auto g = infer_graph(render(spec, 20, {}), parse(caption), config);
      const auto t = truth_graph(spec, 20);
      EXPECT_TRUE(hard_success(g, t, identity_correspondence(g))) << seed;
    }
  }
}

TEST(NoiseMonotonicity, VisionOnlyHardSuccess) {
  const std::vector<double> levels = {0.0, 0.01, 0.05};
  std::vector<int> wins(levels.size(), 0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto spec = sample_spec(seed, 1 + seed % 3, {});
    const auto truth = truth_graph(spec, 20);
    for (std::size_t l = 0; l < levels.size(); ++l) {
      const auto traj = render(spec, 20, {levels[l], levels[l] * 2.0, seed});
      try {
        const auto g = infer_graph(traj, std::nullopt, {});
        wins[l] += hard_success(g, truth, identity_correspondence(g));
      } catch (const Error&) {
      }
    }
  }
  for (std::size_t l = 1; l < levels.size(); ++l) EXPECT_LE(wins[l], wins[l - 1]);
  EXPECT_EQ(wins[0], 100);
}

}  // namespace
}  // namespace multikin
