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

#include "multikin/pipeline.hpp"

namespace multikin {

InferenceResult infer(const std::vector<PoseTrajectory>& trajectories,
                      const std::optional<ParsedCaption>& caption, const InferenceConfig& config) {
  InferenceResult result;
  const CandidateGraph cands = fit_candidates(trajectories, config.noise, config.background);
  const bool language = config.grounder && config.grounder->mode() != LanguageMode::Off;

  if (caption && language) {
    if (validate_caption(*caption)) {
      Alignment alignment = align(*caption, cands, *config.grounder, config.assignment_cap);
      result.graph = std::move(alignment.graph);
      result.assignment = std::move(alignment.assignment);
      return result;
    }
    result.warnings.emplace_back("caption narrates no motion; using visual observations only");
  } else if (caption && !language) {
    result.warnings.emplace_back("language mode is off; caption ignored");
  }
  result.graph = assemble_graph(cands);
  return result;
}

}  // namespace multikin
