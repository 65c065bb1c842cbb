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

#include <charconv>
#include <fstream>
#include <string>

#include "multikin/errors.hpp"
#include "multikin_cli/commands.hpp"

namespace multikin::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string_view unquote(std::string_view s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

double to_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw FormatError("config key '" + std::string(key) + "': not a number: '" +
                      std::string(value) + "'");
  }
  return out;
}

std::uint64_t to_u64(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw FormatError("config key '" + std::string(key) + "': not an unsigned integer: '" +
                      std::string(value) + "'");
  }
  return out;
}

std::vector<std::string> to_list(std::string_view value) {
  std::vector<std::string> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    const auto item = trim(value.substr(0, comma));
    if (!item.empty()) out.emplace_back(unquote(item));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

WordSet read_list_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read lexicon " + path.string());
  return read_word_list(in);
}

}  // namespace

void set_config_value(Config& config, std::string_view key, std::string_view raw) {
  const std::string_view value = unquote(trim(raw));
  if (key == "sigma_pos") {
    config.sigma_pos = to_double(key, value);
    if (!(config.sigma_pos > 0.0)) throw FormatError("sigma_pos must be positive");
  } else if (key == "sigma_rot") {
    config.sigma_rot = to_double(key, value);
    if (!(config.sigma_rot > 0.0)) throw FormatError("sigma_rot must be positive");
  } else if (key == "margin") {
    config.margin = to_double(key, value);
    if (!(config.margin >= 0.0)) throw FormatError("margin must be non-negative");
  } else if (key == "language_mode") {
    const auto mode = parse_language_mode(value);
    if (!mode) throw FormatError("unknown language mode '" + std::string(value) + "'");
    config.language_mode = *mode;
  } else if (key == "seeds_prismatic") {
    config.seeds.prismatic = to_list(value);
  } else if (key == "seeds_rotational") {
    config.seeds.rotational = to_list(value);
  } else if (key == "parts_lexicon") {
    config.parts_lexicon = std::filesystem::path(value);
  } else if (key == "verbs_lexicon") {
    config.verbs_lexicon = std::filesystem::path(value);
  } else if (key == "agents_lexicon") {
    config.agents_lexicon = std::filesystem::path(value);
  } else if (key == "embeddings") {
    config.embeddings = std::filesystem::path(value);
  } else if (key == "assignment_cap") {
    config.assignment_cap = to_u64(key, value);
  } else if (key == "seed") {
    config.seed = to_u64(key, value);
  } else {
    throw FormatError("unknown config key '" + std::string(key) + "'");
  }
}

void apply_config_text(Config& config, std::string_view text) {
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    set_config_value(config, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

Lexicons load_lexicons(const Config& config) {
  Lexicons lex = Lexicons::defaults();
  if (config.parts_lexicon) lex.parts = read_list_file(*config.parts_lexicon);
  if (config.verbs_lexicon) lex.verbs = read_list_file(*config.verbs_lexicon);
  if (config.agents_lexicon) lex.agents = read_list_file(*config.agents_lexicon);
  return lex;
}

std::shared_ptr<const VerbGrounder> make_grounder(const Config& config) {
  switch (config.language_mode) {
    case LanguageMode::Off:
      return nullptr;
    case LanguageMode::Manual:
      return std::make_shared<const VerbGrounder>(ManualDictionary::standard());
    case LanguageMode::Hard:
    case LanguageMode::Soft:
      break;
  }
  if (!config.embeddings) {
    throw FormatError(std::string(to_string(config.language_mode)) +
                      " mode needs an embeddings file");
  }
  std::ifstream in(*config.embeddings);
  if (!in) throw FormatError("cannot read embeddings " + config.embeddings->string());
  auto store = std::make_shared<const EmbeddingStore>(load_embeddings(in));
  return std::make_shared<const VerbGrounder>(config.language_mode, std::move(store),
                                              config.seeds, config.margin);
}

}  // namespace multikin::cli
