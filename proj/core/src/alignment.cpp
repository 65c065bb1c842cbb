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

#include "multikin/alignment.hpp"

#include <algorithm>
#include <sstream>

#include "multikin/errors.hpp"

namespace multikin {
namespace {

std::vector<std::string> words_of(const std::string& phrase) {
  std::istringstream in(phrase);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

// True when the words of `part` occur as a contiguous run inside `phrase`.
bool names(const std::string& phrase, const std::string& part) {
  const auto hay = words_of(phrase);
  const auto needle = words_of(part);
  if (needle.empty()) return false;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

// P(n, k) = n! / (n - k)!, saturating once it passes `cap`.
std::uint64_t permutations(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  std::uint64_t count = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    count *= (n - i);
    if (count > cap) return cap + 1;
  }
  return count;
}

}  // namespace

const std::string* Assignment::cluster_for(const std::string& noun) const {
  for (const auto& [n, c] : pairs) {
    if (n == noun) return &c;
  }
  return nullptr;
}

std::vector<std::string> caption_nouns(const ParsedCaption& parsed) {
  std::vector<std::string> nouns;
  for (const auto& s : parsed.statements) {
    if (std::find(nouns.begin(), nouns.end(), s.part) == nouns.end()) nouns.push_back(s.part);
  }
  return nouns;
}

std::vector<Assignment> enumerate_assignments(const std::vector<std::string>& nouns,
                                              const std::vector<std::string>& clusters,
                                              const std::string& background, std::uint64_t cap) {
  if (clusters.empty()) throw Error("alignment needs at least one cluster");
  std::vector<std::string> moving;
  for (const auto& c : clusters) {
    if (c != background) moving.push_back(c);
  }
  std::sort(moving.begin(), moving.end());

  const std::size_t matched = std::min(nouns.size(), moving.size());
  const std::size_t larger = std::max(nouns.size(), moving.size());
  if (permutations(larger, matched, cap) > cap) {
    throw TooManyParts("noun-cluster correspondences exceed the cap of " + std::to_string(cap));
  }
  const std::size_t skip_budget = nouns.size() - matched;

  std::vector<Assignment> out;
  std::vector<int> choice(nouns.size(), -1);
  std::vector<bool> used(moving.size(), false);

  auto emit = [&] {
    Assignment a;
    for (std::size_t n = 0; n < nouns.size(); ++n) {
      if (choice[n] >= 0) {
        a.pairs.emplace_back(nouns[n], moving[static_cast<std::size_t>(choice[n])]);
      } else {
        a.unmatched_nouns.push_back(nouns[n]);
      }
    }
    for (std::size_t c = 0; c < moving.size(); ++c) {
      if (!used[c]) a.unmatched_clusters.push_back(moving[c]);
    }
    out.push_back(std::move(a));
  };

  auto recurse = [&](auto&& self, std::size_t n, std::size_t skipped) -> void {
    if (n == nouns.size()) {
      emit();
      return;
    }
    for (std::size_t c = 0; c < moving.size(); ++c) {
      if (used[c]) continue;
      used[c] = true;
      choice[n] = static_cast<int>(c);
      self(self, n + 1, skipped);
      used[c] = false;
      choice[n] = -1;
    }
    if (skipped < skip_budget) self(self, n + 1, skipped + 1);
  };
  recurse(recurse, 0, 0);
  return out;
}

std::vector<std::optional<LingualLikelihood>> attach_lingual(const CandidateGraph& cands,
                                                             const ParsedCaption& parsed,
                                                             const Assignment& assignment,
                                                             const VerbGrounder& grounder) {
  auto noun_of = [&](const std::string& cluster) -> const std::string* {
    for (const auto& [n, c] : assignment.pairs) {
      if (c == cluster) return &n;
    }
    return nullptr;
  };

  std::vector<std::optional<LingualLikelihood>> out(cands.edges.size());
  for (std::size_t k = 0; k < cands.edges.size(); ++k) {
    const auto& a = cands.edges[k].part_i;
    const auto& b = cands.edges[k].part_j;
    const bool to_background = (a == cands.background) || (b == cands.background);
    const std::string& other = (a == cands.background) ? b : a;
    for (const auto& st : parsed.statements) {
      const std::string* cluster = assignment.cluster_for(st.part);
      if (cluster == nullptr) continue;
      bool applies = false;
      if (to_background) {
        applies = (*cluster == other);
      } else {
        const std::string* na = noun_of(a);
        const std::string* nb = noun_of(b);
        applies = na != nullptr && nb != nullptr && (*cluster == a || *cluster == b) &&
                  names(st.part, *na) && names(st.part, *nb);
      }
      if (applies) {
        out[k] = grounder.likelihood(st.verb);
        break;
      }
    }
  }
  return out;
}

Alignment align(const ParsedCaption& parsed, const CandidateGraph& cands,
                const VerbGrounder& grounder, std::uint64_t cap) {
  const auto assignments =
      enumerate_assignments(caption_nouns(parsed), cands.vertices, cands.background, cap);
  std::optional<Alignment> best;
  std::string last_error;
  for (const auto& assignment : assignments) {
    try {
      KinematicGraph graph =
          assemble_graph(cands, attach_lingual(cands, parsed, assignment, grounder));
      if (!best || graph.total_cost() < best->graph.total_cost()) {
        best = Alignment{assignment, std::move(graph)};
      }
    } catch (const Error& e) {
      last_error = e.what();
    }
  }
  if (!best) throw NoValidAssignment("no noun-cluster assignment produced a graph: " + last_error);
  return *std::move(best);
}

}  // namespace multikin
