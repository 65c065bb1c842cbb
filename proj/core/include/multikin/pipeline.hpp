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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "multikin/alignment.hpp"
#include "multikin/selection.hpp"

namespace multikin {

struct InferenceConfig {
  NoiseModel noise;
  /// nullptr (or a grounder in Off mode) runs the vision-only baseline.
  std::shared_ptr<const VerbGrounder> grounder;
  std::uint64_t assignment_cap = kDefaultAssignmentCap;
  /// Background cluster; the least-moving cluster when absent.
  std::optional<std::string> background;
};

struct InferenceResult {
  KinematicGraph graph;
  std::optional<Assignment> assignment;
  std::vector<std::string> warnings;
};

/// Candidate fitting, noun alignment when a usable caption and grounder are
/// present, fusion, and tree extraction.
InferenceResult infer(const std::vector<PoseTrajectory>& trajectories,
                      const std::optional<ParsedCaption>& caption, const InferenceConfig& config);

inline KinematicGraph infer_graph(const std::vector<PoseTrajectory>& trajectories,
                                  const std::optional<ParsedCaption>& caption,
                                  const InferenceConfig& config) {
  return infer(trajectories, caption, config).graph;
}

}  // namespace multikin
