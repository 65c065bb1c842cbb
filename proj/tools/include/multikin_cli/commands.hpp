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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "multikin/kinematics.hpp"
#include "multikin/language.hpp"
#include "multikin/simulator.hpp"

namespace multikin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInference = 2;

struct Config {
  double sigma_pos = NoiseModel{}.sigma_pos;  // meters
  double sigma_rot = NoiseModel{}.sigma_rot;  // radians
  double margin = kDefaultMargin;
  LanguageMode language_mode = LanguageMode::Manual;
  SeedDictionary seeds;
  std::optional<std::filesystem::path> parts_lexicon;
  std::optional<std::filesystem::path> verbs_lexicon;
  std::optional<std::filesystem::path> agents_lexicon;
  std::optional<std::filesystem::path> embeddings;
  std::uint64_t assignment_cap = 3628800;
  std::uint64_t seed = 0;
};

/// Sets one key. Throws FormatError on an unknown key or a bad value.
void set_config_value(Config& config, std::string_view key, std::string_view value);

/// Applies "key = value" lines on top of `config`. Blank lines, '#'
/// comments and [section] headers are ignored; values may be quoted.
void apply_config_text(Config& config, std::string_view text);

/// Lexicons named by the config, falling back to the built-in lists.
Lexicons load_lexicons(const Config& config);

/// nullptr in off mode. Throws FormatError when the embeddings cannot be
/// loaded.
std::shared_ptr<const VerbGrounder> make_grounder(const Config& config);

struct InferArgs {
  std::filesystem::path trajectories;
  std::optional<std::filesystem::path> caption;
  std::filesystem::path output;
};

struct SimulateArgs {
  std::filesystem::path output_dir;
  int parts = 2;
  std::optional<ModelType> type;  // every joint of this type when set
  Topology topology = Topology::Random;
  int steps = 30;
  double noise_pos = 0.0;
  double noise_rot = 0.0;
  VerbMode verb_mode = VerbMode::Unambiguous;
  int dropout = 0;
  int demos = 1;
  std::string prefix = "demo";
};

struct EvaluateArgs {
  std::filesystem::path estimated_dir;
  std::filesystem::path truth_dir;
  std::optional<std::filesystem::path> correspondence;
  std::optional<std::filesystem::path> output;
};

int cmd_infer(const InferArgs& args, const Config& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateArgs& args, const Config& config, std::ostream& out,
                 std::ostream& err);
int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err);
int cmd_classify_verb(std::string_view verb, const Config& config, std::ostream& out,
                      std::ostream& err);

}  // namespace multikin::cli
