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
#include <set>

#include "multikin/alignment.hpp"
#include "multikin/errors.hpp"
#include "multikin/io.hpp"
#include "multikin/pipeline.hpp"
#include "multikin/simulator.hpp"

namespace multikin {
namespace {

ParsedCaption parse(const std::string& text) {
  return parse_caption(tokenize_and_tag(text, Lexicons::defaults()), text);
}

std::shared_ptr<const VerbGrounder> manual() {
  return std::make_shared<const VerbGrounder>(ManualDictionary::standard());
}

// part1 rotates, part2 slides; both hang off the background.
GroundTruthSpec door_and_drawer() {
  GroundTruthSpec spec;
  spec.parts = {"part1", "part2"};
  spec.names = {{"part1", "door"}, {"part2", "drawer"}};
  JointSpec door;
  door.parent = "background";
  door.child = "part1";
  door.model.params = RotationalParams{Vec3::UnitZ(), Vec3(1, 0, 0), Pose::translation(0.5, 0, 0)};
  door.model.k = 9;
  door.q_hi = 1.2;
  JointSpec drawer;
  drawer.parent = "background";
  drawer.child = "part2";
  drawer.model.params = PrismaticParams{Pose::translation(0, 1, 0), Vec3::UnitX()};
  drawer.model.k = 7;
  drawer.q_hi = 0.3;
  drawer.frequency = 2;
  spec.joints = {door, drawer};
  return spec;
}

TEST(EnumerateAssignments, Counts) {
  EXPECT_EQ(enumerate_assignments({"door"}, {"bg", "c1"}, "bg").size(), 1u);
  EXPECT_EQ(enumerate_assignments({"door", "lid"}, {"bg", "c1", "c2"}, "bg").size(), 2u);
  EXPECT_EQ(enumerate_assignments({"door", "lid"}, {"bg", "c1", "c2", "c3"}, "bg").size(), 6u);
}

TEST(EnumerateAssignments, MatchesBruteForceOracle) {
  // Every injective map of 2 nouns into 3 clusters, listed independently.
  const std::vector<std::string> clusters = {"c1", "c2", "c3"};
  std::set<std::vector<std::pair<std::string, std::string>>> oracle;
  for (const auto& a : clusters) {
    for (const auto& b : clusters) {
      if (a != b) oracle.insert({{"door", a}, {"lid", b}});
    }
  }
  std::set<std::vector<std::pair<std::string, std::string>>> got;
  for (const auto& a : enumerate_assignments({"door", "lid"}, {"c3", "bg", "c1", "c2"}, "bg")) {
    got.insert(a.pairs);
    EXPECT_EQ(a.unmatched_clusters.size(), 1u);
    EXPECT_TRUE(a.unmatched_nouns.empty());
  }
  EXPECT_EQ(got, oracle);
}

TEST(EnumerateAssignments, LexicographicOrder) {
  const auto all = enumerate_assignments({"door", "lid"}, {"bg", "c1", "c2", "c3"}, "bg");
  EXPECT_EQ(all.front().pairs, (std::vector<std::pair<std::string, std::string>>{
                                   {"door", "c1"}, {"lid", "c2"}}));
  EXPECT_EQ(all[1].pairs, (std::vector<std::pair<std::string, std::string>>{
                              {"door", "c1"}, {"lid", "c3"}}));
  EXPECT_EQ(all.back().pairs, (std::vector<std::pair<std::string, std::string>>{
                                  {"door", "c3"}, {"lid", "c2"}}));
}

TEST(EnumerateAssignments, MoreNounsThanClusters) {
  const auto all = enumerate_assignments({"door", "lid", "knob"}, {"bg", "c1"}, "bg");
  ASSERT_EQ(all.size(), 3u);
  for (const auto& a : all) {
    EXPECT_EQ(a.pairs.size(), 1u);
    EXPECT_EQ(a.unmatched_nouns.size(), 2u);
    EXPECT_TRUE(a.unmatched_clusters.empty());
  }
  EXPECT_EQ(all[0].pairs[0].first, "door");
  EXPECT_EQ(all[2].pairs[0].first, "knob");
}

TEST(EnumerateAssignments, BackgroundNeverAssigned) {
  for (const auto& a : enumerate_assignments({"door", "lid"}, {"bg", "c1", "c2"}, "bg")) {
    for (const auto& [n, c] : a.pairs) EXPECT_NE(c, "bg");
  }
}

TEST(EnumerateAssignments, CapAndEmptyClusters) {
  EXPECT_THROW(enumerate_assignments({"a", "b", "c"}, {"bg", "1", "2", "3"}, "bg", 5),
               TooManyParts);
  EXPECT_NO_THROW(enumerate_assignments({"a", "b", "c"}, {"bg", "1", "2", "3"}, "bg", 6));
  EXPECT_THROW(enumerate_assignments({"a"}, {}, "bg"), Error);
}

TEST(CaptionNouns, FirstMentionOrder) {
  EXPECT_EQ(caption_nouns(parse("The lid slides. The door swings. The lid turns.")),
            (std::vector<std::string>{"lid", "door"}));
}

TEST(AttachLingual, BackgroundEdgeOfAssignedCluster) {
  const auto spec = door_and_drawer();
  const auto cands = fit_candidates(render(spec, 20, {}), {});
  Assignment a;
  a.pairs = {{"door", "part1"}, {"drawer", "part2"}};
  const auto lingual =
      attach_lingual(cands, parse("The door swings. The drawer slides."), a, *manual());
  for (std::size_t k = 0; k < cands.edges.size(); ++k) {
    const auto& e = cands.edges[k];
    if (e.part_i == "background" && e.part_j == "part1") {
      ASSERT_TRUE(lingual[k]);
      EXPECT_EQ((*lingual[k])[ModelType::Rotational], 1.0);
    } else if (e.part_i == "background" && e.part_j == "part2") {
      ASSERT_TRUE(lingual[k]);
      EXPECT_EQ((*lingual[k])[ModelType::Prismatic], 1.0);
    } else {
      EXPECT_FALSE(lingual[k]);
    }
  }
}

TEST(AttachLingual, InterPartEdgeNeedsBothNames) {
  CandidateGraph cands;
  cands.background = "bg";
  cands.vertices = {"bg", "c1", "c2"};
  for (const auto& [i, j] : {std::pair{"bg", "c1"}, std::pair{"bg", "c2"}, std::pair{"c1", "c2"}}) {
    EdgeCandidateSet set;
    set.part_i = i;
    set.part_j = j;
    cands.edges.push_back(set);
  }
  Assignment a;
  a.pairs = {{"bicycle", "c1"}, {"bicycle wheel", "c2"}};
  // "bicycle wheel" contains both phrases; "bicycle" alone does not.
  const auto lingual =
      attach_lingual(cands, parse("The bicycle wheel spins. The bicycle rolls."), a, *manual());
  EXPECT_TRUE(lingual[2]);
  EXPECT_TRUE(lingual[0]);
  EXPECT_TRUE(lingual[1]);
}

TEST(Align, RotatingClusterGetsDoor) {
  const auto cands = fit_candidates(render(door_and_drawer(), 25, {0.002, 0.01, 1}), {});
  for (const auto& text : {"The door rotates; the drawer slides.",
                           "The drawer slides; the door rotates."}) {
    const Alignment result = align(parse(text), cands, *manual());
    ASSERT_NE(result.assignment.cluster_for("door"), nullptr);
    EXPECT_EQ(*result.assignment.cluster_for("door"), "part1") << text;
    EXPECT_EQ(*result.assignment.cluster_for("drawer"), "part2") << text;
  }
}

TEST(Align, WinnerCostIsMinimalOverEnumeration) {
  const auto cands = fit_candidates(render(door_and_drawer(), 25, {0.002, 0.01, 2}), {});
  const auto parsed = parse("The door rotates; the drawer slides.");
  const Alignment best = align(parsed, cands, *manual());
  for (const auto& a : enumerate_assignments(caption_nouns(parsed), cands.vertices, "background")) {
    const auto g = assemble_graph(cands, attach_lingual(cands, parsed, a, *manual()));
    EXPECT_LE(best.graph.total_cost(), g.total_cost());
  }
}

TEST(Align, SingleNounSingleClusterIsIdentity) {
  GroundTruthSpec spec = door_and_drawer();
  spec.parts = {"part1"};
  spec.joints.pop_back();
  const auto cands = fit_candidates(render(spec, 20, {}), {});
  const Alignment result = align(parse("The lid slides."), cands, *manual());
  EXPECT_EQ(*result.assignment.cluster_for("lid"), "part1");
}

TEST(Align, TiesKeepEnumerationOrder) {
  const auto cands = fit_candidates(render(door_and_drawer(), 25, {0.002, 0.01, 3}), {});
  const Alignment result = align(parse("The door moves. The drawer moves."), cands, *manual());
  EXPECT_EQ(*result.assignment.cluster_for("door"), "part1");
  EXPECT_EQ(*result.assignment.cluster_for("drawer"), "part2");
}

TEST(Infer, AmbiguousCaptionEqualsVisionOnly) {
  const auto traj = render(door_and_drawer(), 25, {0.005, 0.02, 4});
  InferenceConfig vision;
  InferenceConfig fused;
  fused.grounder = manual();
  const auto a = infer(traj, std::nullopt, vision);
  const auto b = infer(traj, parse("The door moves. The drawer pulls."), fused);
  EXPECT_EQ(serialize_graph({a.graph, std::nullopt}), serialize_graph({b.graph, std::nullopt}));
  EXPECT_TRUE(b.assignment.has_value());
}

TEST(Infer, InvalidCaptionWarnsAndFallsBack) {
  const auto traj = render(door_and_drawer(), 20, {});
  InferenceConfig fused;
  fused.grounder = manual();
  const auto r = infer(traj, parse("A door and a drawer."), fused);
  EXPECT_FALSE(r.assignment);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_EQ(r.graph, infer_graph(traj, std::nullopt, {}));
}

TEST(Infer, OffModeIgnoresCaptionWithWarning) {
  const auto traj = render(door_and_drawer(), 20, {});
  const auto r = infer(traj, parse("The door swings."), {});
  EXPECT_FALSE(r.assignment);
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(Infer, DoorDemoHasOneRotationalEdge) {
  GroundTruthSpec spec = door_and_drawer();
  spec.parts = {"part1"};
  spec.joints.pop_back();
  InferenceConfig config;
  config.grounder = manual();
  const auto g = infer_graph(render(spec, 20, {}), parse("The door swings open."), config);
  EXPECT_EQ(g.vertices.size(), 2u);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].model.type(), ModelType::Rotational);
  EXPECT_TRUE(g.edges[0].lingual);
}

TEST(Infer, ExplicitBackgroundIsHonored) {
  const auto traj = render(door_and_drawer(), 20, {});
  InferenceConfig config;
  config.background = "part2";
  EXPECT_EQ(infer_graph(traj, std::nullopt, config).background, "part2");
  config.background = "nope";
  EXPECT_THROW(infer_graph(traj, std::nullopt, config), Error);
}

}  // namespace
}  // namespace multikin
