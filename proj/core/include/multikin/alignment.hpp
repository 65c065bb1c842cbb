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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "multikin/language.hpp"
#include "multikin/selection.hpp"

namespace multikin {

/// Injective mapping from caption noun phrases to moving clusters.
struct Assignment {
  std::vector<std::pair<std::string, std::string>> pairs;  // (noun phrase, cluster id)
  std::vector<std::string> unmatched_nouns;
  std::vector<std::string> unmatched_clusters;

  /// nullptr when the phrase is unmatched.
  const std::string* cluster_for(const std::string& noun) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

inline constexpr std::uint64_t kDefaultAssignmentCap = 3628800;  // 10!

/// Distinct noun phrases of a caption in order of first mention.
std::vector<std::string> caption_nouns(const ParsedCaption& parsed);

/// Every injective mapping of size min(|nouns|, |moving clusters|), where
/// the moving clusters are `clusters` minus `background`. Ordered
/// lexicographically by the cluster chosen for each noun in turn, with
/// "unmatched" sorting after every cluster. Throws TooManyParts when the
/// count would exceed `cap`.
std::vector<Assignment> enumerate_assignments(const std::vector<std::string>& nouns,
                                              const std::vector<std::string>& clusters,
                                              const std::string& background,
                                              std::uint64_t cap = kDefaultAssignmentCap);

/// Lingual likelihood per candidate edge implied by one assignment.
/// A statement applies to the edge joining its cluster to the background,
/// and to an inter-part edge when its phrase names both endpoints. The
/// first statement in text order wins an edge.
std::vector<std::optional<LingualLikelihood>> attach_lingual(const CandidateGraph& cands,
                                                             const ParsedCaption& parsed,
                                                             const Assignment& assignment,
                                                             const VerbGrounder& grounder);

struct Alignment {
  Assignment assignment;
  KinematicGraph graph;
};

/// Scores every assignment by the total cost of its fused spanning tree
/// and keeps the cheapest; exact ties keep the earlier assignment.
Alignment align(const ParsedCaption& parsed, const CandidateGraph& cands,
                const VerbGrounder& grounder, std::uint64_t cap = kDefaultAssignmentCap);

}  // namespace multikin
