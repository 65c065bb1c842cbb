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

#include <array>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "multikin/kinematics.hpp"

namespace multikin {

using WordSet = std::set<std::string, std::less<>>;

// ---------------------------------------------------------------------------
// Tagging and parsing

enum class PosTag { Noun, Verb, Other };

struct TaggedToken {
  std::string surface;
  std::string lemma;
  PosTag tag = PosTag::Other;
  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

/// Word lists driving the tagger.
struct Lexicons {
  WordSet parts;
  WordSet verbs;
  WordSet agents;

  /// Part nouns (including common modifiers such as "front"), the motion
  /// verbs of the manual dictionary, and the agent stoplist.
  static Lexicons defaults();
};

/// Reads one word per line; blank lines and '#' comments are skipped.
WordSet read_word_list(std::istream& in);

/// Reduces an inflected word to its base form. Candidates from the
/// irregular table and the -s/-es/-ing/-ed suffix rules are tried against
/// `known`; the first hit wins. Words with no known candidate fall back to
/// plain suffix stripping.
std::string lemmatize(std::string_view word, const WordSet& known);

std::vector<TaggedToken> tokenize_and_tag(std::string_view text, const WordSet& part_lexicon,
                                          const WordSet& verb_lexicon,
                                          const WordSet& agent_stoplist);

inline std::vector<TaggedToken> tokenize_and_tag(std::string_view text, const Lexicons& lex) {
  return tokenize_and_tag(text, lex.parts, lex.verbs, lex.agents);
}

/// True when every whitespace-separated token has the form word/N, word/V
/// or word/O.
bool is_pretagged(std::string_view text);

/// Reads "surface/TAG" tokens. Agent words are forced to Other.
std::vector<TaggedToken> read_pretagged(std::string_view text, const Lexicons& lex);

struct Statement {
  std::string part;  // noun phrase, lemmas joined by single spaces
  std::string verb;  // lemma
  friend bool operator==(const Statement&, const Statement&) = default;
};

struct ParsedCaption {
  std::vector<Statement> statements;
  std::string raw;
  friend bool operator==(const ParsedCaption&, const ParsedCaption&) = default;
};

/// Pairs each verb with the nearest preceding noun run of its sentence, or
/// the nearest following run when none precedes it.
ParsedCaption parse_caption(const std::vector<TaggedToken>& tokens, std::string raw = {});

/// A caption is usable when it narrates at least one motion.
bool validate_caption(const ParsedCaption& parsed);

// ---------------------------------------------------------------------------
// Word embeddings

class EmbeddingStore {
 public:
  EmbeddingStore(int dimension, std::map<std::string, Eigen::VectorXd, std::less<>> table);

  int dimension() const { return dimension_; }
  std::size_t size() const { return table_.size(); }
  /// nullptr when the word is out of vocabulary.
  const Eigen::VectorXd* find(std::string_view word) const;

 private:
  int dimension_;
  std::map<std::string, Eigen::VectorXd, std::less<>> table_;
};

/// Parses the whitespace-delimited text format: an optional "count dim"
/// header, then "word v1 ... vd" per line. Words are lowercased and a
/// repeated word keeps its last vector.
EmbeddingStore load_embeddings(std::istream& in);

struct SeedDictionary {
  std::vector<std::string> prismatic = {"shift", "insert", "extract"};
  std::vector<std::string> rotational = {"rotate", "circle", "twist"};

  /// Throws Error unless both lists have the same nonzero length and share
  /// no word.
  void validate() const;
};

/// Mean vector of the in-vocabulary seeds. Out-of-vocabulary seeds are
/// skipped and reported through `missing`.
Eigen::VectorXd centroid(const EmbeddingStore& store, const std::vector<std::string>& seeds,
                         std::vector<std::string>* missing = nullptr);

struct CentroidPair {
  Eigen::VectorXd prismatic;
  Eigen::VectorXd rotational;

  static CentroidPair from_seeds(const EmbeddingStore& store, const SeedDictionary& seeds,
                                 std::vector<std::string>* missing = nullptr);
};

enum class VerbLabel { Prismatic, Rotational, Ambiguous, Unknown };

std::string_view to_string(VerbLabel label);

/// Floor applied to zero likelihoods so their logarithm stays finite.
inline constexpr double kLikelihoodFloor = 1e-6;
inline constexpr double kDefaultMargin = 0.1;

VerbLabel classify_hard(const EmbeddingStore& store, const CentroidPair& centroids,
                        std::string_view verb, double margin = kDefaultMargin);

double lingual_likelihood_hard(VerbLabel label, ModelType type);

double lingual_likelihood_soft(const EmbeddingStore& store, const CentroidPair& centroids,
                               std::string_view verb, ModelType type);

/// Verb lists of the manual (oracle) dictionary.
struct ManualDictionary {
  WordSet prismatic;
  WordSet rotational;

  static ManualDictionary standard();
};

VerbLabel classify_manual(const ManualDictionary& dict, std::string_view verb);

// ---------------------------------------------------------------------------
// Verb grounding used by the fusion step

enum class LanguageMode { Off, Hard, Soft, Manual };

std::string_view to_string(LanguageMode mode);
std::optional<LanguageMode> parse_language_mode(std::string_view text);

/// p(D_l | M) for each model type, indexed by ModelType.
struct LingualLikelihood {
  std::array<double, 3> by_type = {0.5, 0.5, 0.5};

  double operator[](ModelType t) const { return by_type[static_cast<std::size_t>(t)]; }
  /// False when every type receives the same likelihood; such an
  /// observation cannot change any ranking and is dropped by the fusion.
  bool informative() const;
};

struct VerbClassification {
  std::string verb;
  VerbLabel hard = VerbLabel::Unknown;
  double prismatic = 0.5;
  double rotational = 0.5;
};

/// Bundles one language mode with the resources it needs.
class VerbGrounder {
 public:
  /// Manual-dictionary grounding.
  explicit VerbGrounder(ManualDictionary dict);
  /// Embedding grounding in hard or soft mode.
  VerbGrounder(LanguageMode mode, std::shared_ptr<const EmbeddingStore> store,
               const SeedDictionary& seeds, double margin = kDefaultMargin,
               std::vector<std::string>* missing_seeds = nullptr);

  LanguageMode mode() const { return mode_; }

  /// Label plus the prismatic/rotational likelihoods the mode assigns.
  VerbClassification classify(std::string_view verb) const;
  LingualLikelihood likelihood(std::string_view verb) const;

 private:
  LanguageMode mode_;
  std::shared_ptr<const EmbeddingStore> store_;
  CentroidPair centroids_;
  ManualDictionary dict_;
  double margin_ = kDefaultMargin;
};

}  // namespace multikin
