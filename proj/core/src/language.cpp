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

#include "multikin/language.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "multikin/errors.hpp"

namespace multikin {
namespace {

const WordSet& determiners() {
  static const WordSet words = {"the", "a",   "an",    "this", "that",  "these", "those", "its",
                                "his", "her", "their", "my",   "your",  "our",   "each",  "every"};
  return words;
}

const std::unordered_map<std::string_view, std::string_view>& irregular_forms() {
  static const std::unordered_map<std::string_view, std::string_view> forms = {
      {"is", "be"},        {"are", "be"},        {"was", "be"},       {"were", "be"},
      {"been", "be"},      {"being", "be"},      {"has", "have"},     {"had", "have"},
      {"does", "do"},      {"did", "do"},        {"done", "do"},      {"spun", "spin"},
      {"swung", "swing"},  {"drew", "draw"},     {"drawn", "draw"},   {"wound", "wind"},
      {"bent", "bend"},    {"stuck", "stick"},   {"slid", "slide"},   {"withdrew", "withdraw"},
      {"withdrawn", "withdraw"}, {"shook", "shake"}, {"took", "take"}, {"taken", "take"},
      {"went", "go"},      {"gone", "go"},       {"made", "make"},    {"rode", "ride"},
      {"men", "man"},       {"women", "woman"}, {"people", "person"},
  };
  return forms;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string undouble(std::string stem) {
  const std::size_t n = stem.size();
  if (n >= 3 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) && stem[n - 1] != 'l' &&
      stem[n - 1] != 's' && stem[n - 1] != 'z') {
    stem.pop_back();
  }
  return stem;
}

// Candidate base forms in preference order.
std::vector<std::string> lemma_candidates(std::string_view w) {
  std::vector<std::string> out;
  const std::string word(w);
  out.push_back(word);
  if (auto it = irregular_forms().find(w); it != irregular_forms().end()) {
    out.emplace_back(it->second);
  }
  const std::size_t n = word.size();
  if (ends_with(word, "ies") && n > 4) out.push_back(word.substr(0, n - 3) + "y");
  if (ends_with(word, "es") && n > 3) out.push_back(word.substr(0, n - 2));
  if (ends_with(word, "s") && !ends_with(word, "ss") && n > 2) out.push_back(word.substr(0, n - 1));
  if (ends_with(word, "ing") && n > 4) {
    const std::string stem = word.substr(0, n - 3);
    out.push_back(stem);
    out.push_back(stem + "e");
    out.push_back(undouble(stem));
  }
  if (ends_with(word, "ied") && n > 4) out.push_back(word.substr(0, n - 3) + "y");
  if (ends_with(word, "ed") && n > 3) {
    const std::string stem = word.substr(0, n - 2);
    out.push_back(stem);
    out.push_back(stem + "e");
    out.push_back(undouble(stem));
  }
  return out;
}

std::string strip_suffix(const std::string& w) {
  const std::size_t n = w.size();
  if (ends_with(w, "ies") && n > 4) return w.substr(0, n - 3) + "y";
  if ((ends_with(w, "sses") || ends_with(w, "ches") || ends_with(w, "shes") ||
       ends_with(w, "xes") || ends_with(w, "zes")) && n > 4) {
    return w.substr(0, n - 2);
  }
  if (ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") && n > 3) {
    return w.substr(0, n - 1);
  }
  if (ends_with(w, "ing") && n > 5) return undouble(w.substr(0, n - 3));
  if (ends_with(w, "ed") && n > 4) return undouble(w.substr(0, n - 2));
  return w;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '-' || c == '_';
}

bool is_punct_token(char c) {
  return c == '.' || c == ',' || c == '!' || c == '?' || c == ';' || c == ':';
}

bool is_sentence_end(const TaggedToken& t) {
  return t.tag == PosTag::Other &&
         (t.lemma == "." || t.lemma == "!" || t.lemma == "?" || t.lemma == ";");
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      if (ends_with(current, "'s")) current.resize(current.size() - 2);
      while (!current.empty() && (current.back() == '\'' || current.back() == '-')) {
        current.pop_back();
      }
      if (!current.empty()) words.push_back(current);
      current.clear();
    }
  };
  for (char c : text) {
    if (is_word_char(c)) {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else {
      flush();
      if (is_punct_token(c)) words.emplace_back(1, c);
    }
  }
  flush();
  return words;
}

WordSet merged(const WordSet& a, const WordSet& b) {
  WordSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double denom = a.norm() * b.norm();
  if (denom == 0.0) return 0.0;
  return std::clamp(a.dot(b) / denom, -1.0, 1.0);
}

const WordSet& manual_prismatic_verbs() {
  static const WordSet words = {
      "pull",    "push",   "shift",  "move",    "close",   "remove",   "tug",     "yank",
      "dislocate", "extract", "jerk", "thrust", "poke",    "prod",     "shove",   "displace",
      "stretch", "squeeze", "fasten", "draw",   "join",    "insert",   "embed",   "enter",
      "exit",    "implant", "inject", "introduce", "stick", "admit",   "infuse",  "inlay",
      "instill", "place",  "set",    "penetrate", "withdraw", "intrude", "slide"};
  return words;
}

const WordSet& manual_rotational_verbs() {
  static const WordSet words = {
      "bend",  "yaw",   "turn",   "spin",   "whirl",  "move",   "pull",  "push",  "close",
      "revolve", "rotate", "gyre", "gyrate", "pivot",  "swivel", "twist", "twirl", "circle",
      "roll",  "reel",  "wheel",  "round",  "wrench", "screw",  "tighten", "swing", "cycle",
      "bow",   "flex",  "wind",   "spiral", "twine",  "loosen"};
  return words;
}

}  // namespace

Lexicons Lexicons::defaults() {
  Lexicons lex;
  lex.parts = {"door",     "drawer",   "wheel",   "frame",   "seat",    "monitor",  "arm",
               "bicycle",  "bike",     "chair",   "refrigerator", "fridge", "microwave",
               "cabinet",  "lid",      "handle",  "knob",    "laptop",  "screen",   "faucet",
               "oven",     "window",   "desk",    "box",     "tap",     "leg",      "backrest",
               "armrest",  "front",    "back",    "left",    "right",   "top",      "bottom",
               "upper",    "lower"};
  lex.verbs = merged(manual_prismatic_verbs(), manual_rotational_verbs());
  lex.agents = {"man", "woman", "person", "user", "he", "she", "someone"};
  return lex;
}

WordSet read_word_list(std::istream& in) {
  WordSet words;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string word;
    if (fields >> word) words.insert(lower(word));
  }
  return words;
}

std::string lemmatize(std::string_view word, const WordSet& known) {
  const std::string w = lower(word);
  const auto candidates = lemma_candidates(w);
  for (const auto& c : candidates) {
    if (known.contains(c)) return c;
  }
  if (auto it = irregular_forms().find(w); it != irregular_forms().end()) {
    return std::string(it->second);
  }
  return strip_suffix(w);
}

std::vector<TaggedToken> tokenize_and_tag(std::string_view text, const WordSet& part_lexicon,
                                          const WordSet& verb_lexicon,
                                          const WordSet& agent_stoplist) {
  const WordSet known = merged(merged(part_lexicon, verb_lexicon), agent_stoplist);
  std::vector<TaggedToken> tokens;
  for (auto& word : split_words(text)) {
    TaggedToken tok;
    tok.lemma = (word.size() == 1 && is_punct_token(word[0])) ? word : lemmatize(word, known);
    tok.surface = std::move(word);
    const bool agent = agent_stoplist.contains(tok.lemma) || agent_stoplist.contains(tok.surface);
    const bool verb = verb_lexicon.contains(tok.lemma);
    const bool noun = part_lexicon.contains(tok.lemma);
    if (agent) {
      tok.tag = PosTag::Other;
    } else if (verb && noun) {
      // Words such as "wheel" are nouns after a determiner or inside a noun
      // run, verbs otherwise.
      const bool nominal = !tokens.empty() && (determiners().contains(tokens.back().lemma) ||
                                               tokens.back().tag == PosTag::Noun);
      tok.tag = nominal ? PosTag::Noun : PosTag::Verb;
    } else if (verb) {
      tok.tag = PosTag::Verb;
    } else if (noun) {
      tok.tag = PosTag::Noun;
    }
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

bool is_pretagged(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tok;
  bool any = false;
  while (in >> tok) {
    const auto slash = tok.rfind('/');
    if (slash == std::string::npos || slash == 0 || slash + 2 != tok.size()) return false;
    const char tag = static_cast<char>(std::toupper(static_cast<unsigned char>(tok.back())));
    if (tag != 'N' && tag != 'V' && tag != 'O') return false;
    any = true;
  }
  return any;
}

std::vector<TaggedToken> read_pretagged(std::string_view text, const Lexicons& lex) {
  const WordSet known = merged(merged(lex.parts, lex.verbs), lex.agents);
  std::vector<TaggedToken> tokens;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    const auto slash = tok.rfind('/');
    if (slash == std::string::npos || slash == 0 || slash + 2 != tok.size()) {
      throw FormatError("pre-tagged caption: token '" + tok + "' is not of the form word/TAG");
    }
    const char tag = static_cast<char>(std::toupper(static_cast<unsigned char>(tok.back())));
    TaggedToken t;
    t.surface = lower(tok.substr(0, slash));
    const bool punct = t.surface.size() == 1 && is_punct_token(t.surface[0]);
    t.lemma = punct ? t.surface : lemmatize(t.surface, known);
    switch (tag) {
      case 'N':
        t.tag = PosTag::Noun;
        break;
      case 'V':
        t.tag = PosTag::Verb;
        break;
      case 'O':
        t.tag = PosTag::Other;
        break;
      default:
        throw FormatError("pre-tagged caption: unknown tag in '" + tok + "'");
    }
    if (lex.agents.contains(t.lemma) || lex.agents.contains(t.surface)) t.tag = PosTag::Other;
    tokens.push_back(std::move(t));
  }
  return tokens;
}

ParsedCaption parse_caption(const std::vector<TaggedToken>& tokens, std::string raw) {
  ParsedCaption parsed;
  parsed.raw = std::move(raw);

  struct NounRun {
    std::size_t begin;
    std::size_t end;  // one past the last noun
    std::string phrase;
  };

  std::size_t start = 0;
  while (start < tokens.size()) {
    std::size_t stop = start;
    while (stop < tokens.size() && !is_sentence_end(tokens[stop])) ++stop;

    std::vector<NounRun> runs;
    for (std::size_t i = start; i < stop;) {
      if (tokens[i].tag != PosTag::Noun) {
        ++i;
        continue;
      }
      NounRun run{i, i, {}};
      while (run.end < stop && tokens[run.end].tag == PosTag::Noun) {
        if (!run.phrase.empty()) run.phrase += ' ';
        run.phrase += tokens[run.end].lemma;
        ++run.end;
      }
      i = run.end;
      runs.push_back(std::move(run));
    }

    for (std::size_t i = start; i < stop; ++i) {
      if (tokens[i].tag != PosTag::Verb || tokens[i].lemma.empty()) continue;
      const NounRun* chosen = nullptr;
      for (const auto& run : runs) {
        if (run.end <= i) chosen = &run;
      }
      if (chosen == nullptr) {
        for (const auto& run : runs) {
          if (run.begin > i) {
            chosen = &run;
            break;
          }
        }
      }
      if (chosen != nullptr) parsed.statements.push_back({chosen->phrase, tokens[i].lemma});
    }
    start = stop + 1;
  }
  return parsed;
}

bool validate_caption(const ParsedCaption& parsed) { return !parsed.statements.empty(); }

EmbeddingStore::EmbeddingStore(int dimension,
                               std::map<std::string, Eigen::VectorXd, std::less<>> table)
    : dimension_(dimension), table_(std::move(table)) {
  if (dimension_ < 2) throw FormatError("embedding dimension must be at least 2");
  if (table_.empty()) throw EmptyVocabulary("embedding store has no words");
  for (const auto& [word, vec] : table_) {
    if (vec.size() != dimension_) {
      throw FormatError("embedding for '" + word + "' has the wrong dimension");
    }
  }
}

const Eigen::VectorXd* EmbeddingStore::find(std::string_view word) const {
  const auto it = table_.find(lower(word));
  return it == table_.end() ? nullptr : &it->second;
}

EmbeddingStore load_embeddings(std::istream& in) {
  std::map<std::string, Eigen::VectorXd, std::less<>> table;
  int dim = -1;
  bool first = true;
  std::string line;
  std::size_t line_no = 0;
  auto parse_double = [&](const std::string& field) {
    double v = 0.0;
    const char* end = field.data() + field.size();
    const auto res = std::from_chars(field.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end) {
      throw FormatError("embeddings line " + std::to_string(line_no) + ": '" + field +
                        "' is not a number");
    }
    return v;
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> parts;
    for (std::string f; fields >> f;) parts.push_back(std::move(f));
    if (parts.empty()) continue;

    if (first) {
      first = false;
      if (parts.size() == 2 &&
          std::all_of(parts[0].begin(), parts[0].end(), ::isdigit) &&
          std::all_of(parts[1].begin(), parts[1].end(), ::isdigit)) {
        dim = std::stoi(parts[1]);
        continue;
      }
    }
    const int n = static_cast<int>(parts.size()) - 1;
    if (dim < 0) dim = n;
    if (n != dim) {
      throw FormatError("embeddings line " + std::to_string(line_no) + ": expected " +
                        std::to_string(dim) + " values, got " + std::to_string(n));
    }
    Eigen::VectorXd v(dim);
    for (int k = 0; k < dim; ++k) v[k] = parse_double(parts[static_cast<std::size_t>(k) + 1]);
    table[lower(parts[0])] = std::move(v);
  }
  if (table.empty()) throw EmptyVocabulary("embedding file contains no words");
  return EmbeddingStore(dim, std::move(table));
}

void SeedDictionary::validate() const {
  if (prismatic.empty() || prismatic.size() != rotational.size()) {
    throw Error("seed dictionaries must be nonempty and of equal size");
  }
  for (const auto& w : prismatic) {
    if (std::find(rotational.begin(), rotational.end(), w) != rotational.end()) {
      throw Error("seed word '" + w + "' appears in both seed dictionaries");
    }
  }
}

Eigen::VectorXd centroid(const EmbeddingStore& store, const std::vector<std::string>& seeds,
                         std::vector<std::string>* missing) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(store.dimension());
  int found = 0;
  for (const auto& seed : seeds) {
    if (const auto* v = store.find(seed)) {
      sum += *v;
      ++found;
    } else if (missing != nullptr) {
      missing->push_back(seed);
    }
  }
  if (found == 0) throw AllSeedsOutOfVocabulary("no seed word is in the embedding vocabulary");
  return sum / found;
}

CentroidPair CentroidPair::from_seeds(const EmbeddingStore& store, const SeedDictionary& seeds,
                                      std::vector<std::string>* missing) {
  seeds.validate();
  CentroidPair pair{centroid(store, seeds.prismatic, missing),
                    centroid(store, seeds.rotational, missing)};
  if (pair.prismatic.norm() == 0.0 || pair.rotational.norm() == 0.0) {
    throw Error("seed centroid is the zero vector");
  }
  return pair;
}

std::string_view to_string(VerbLabel label) {
  switch (label) {
    case VerbLabel::Prismatic:
      return "Prismatic";
    case VerbLabel::Rotational:
      return "Rotational";
    case VerbLabel::Ambiguous:
      return "Ambiguous";
    case VerbLabel::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

VerbLabel classify_hard(const EmbeddingStore& store, const CentroidPair& centroids,
                        std::string_view verb, double margin) {
  if (margin < 0.0) throw Error("margin must be non-negative");
  const auto* v = store.find(verb);
  if (v == nullptr || v->norm() == 0.0) return VerbLabel::Unknown;
  const double d_pri = 1.0 - cosine(centroids.prismatic, *v);
  const double d_rot = 1.0 - cosine(centroids.rotational, *v);
  if (std::abs(d_pri - d_rot) <= margin) return VerbLabel::Ambiguous;
  return d_pri < d_rot ? VerbLabel::Prismatic : VerbLabel::Rotational;
}

double lingual_likelihood_hard(VerbLabel label, ModelType type) {
  if (type == ModelType::Rigid) return 0.5;
  switch (label) {
    case VerbLabel::Prismatic:
      return type == ModelType::Prismatic ? 1.0 : kLikelihoodFloor;
    case VerbLabel::Rotational:
      return type == ModelType::Rotational ? 1.0 : kLikelihoodFloor;
    case VerbLabel::Ambiguous:
    case VerbLabel::Unknown:
      return 0.5;
  }
  return 0.5;
}

double lingual_likelihood_soft(const EmbeddingStore& store, const CentroidPair& centroids,
                               std::string_view verb, ModelType type) {
  if (type == ModelType::Rigid) return 0.5;
  const auto* v = store.find(verb);
  if (v == nullptr || v->norm() == 0.0) return 0.5;
  const double sim_pri = (1.0 + cosine(centroids.prismatic, *v)) / 2.0;
  const double sim_rot = (1.0 + cosine(centroids.rotational, *v)) / 2.0;
  const double total = sim_pri + sim_rot;
  if (total <= 0.0) return 0.5;
  return (type == ModelType::Prismatic ? sim_pri : sim_rot) / total;
}

ManualDictionary ManualDictionary::standard() { return {manual_prismatic_verbs(), manual_rotational_verbs()}; }

VerbLabel classify_manual(const ManualDictionary& dict, std::string_view verb) {
  const std::string w = lower(verb);
  const bool pri = dict.prismatic.contains(w);
  const bool rot = dict.rotational.contains(w);
  if (pri && rot) return VerbLabel::Ambiguous;
  if (pri) return VerbLabel::Prismatic;
  if (rot) return VerbLabel::Rotational;
  return VerbLabel::Unknown;
}

std::string_view to_string(LanguageMode mode) {
  switch (mode) {
    case LanguageMode::Off:
      return "off";
    case LanguageMode::Hard:
      return "hard";
    case LanguageMode::Soft:
      return "soft";
    case LanguageMode::Manual:
      return "manual";
  }
  return "off";
}

std::optional<LanguageMode> parse_language_mode(std::string_view text) {
  const std::string s = lower(text);
  for (auto m : {LanguageMode::Off, LanguageMode::Hard, LanguageMode::Soft, LanguageMode::Manual}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

bool LingualLikelihood::informative() const {
  return !(by_type[0] == by_type[1] && by_type[1] == by_type[2]);
}

VerbGrounder::VerbGrounder(ManualDictionary dict)
    : mode_(LanguageMode::Manual), dict_(std::move(dict)) {}

VerbGrounder::VerbGrounder(LanguageMode mode, std::shared_ptr<const EmbeddingStore> store,
                           const SeedDictionary& seeds, double margin,
                           std::vector<std::string>* missing_seeds)
    : mode_(mode), store_(std::move(store)), margin_(margin) {
  if (mode_ != LanguageMode::Hard && mode_ != LanguageMode::Soft) {
    throw Error("embedding grounding requires hard or soft mode");
  }
  if (!store_) throw Error("embedding grounding requires an embedding store");
  if (margin_ < 0.0) throw Error("margin must be non-negative");
  centroids_ = CentroidPair::from_seeds(*store_, seeds, missing_seeds);
}

VerbClassification VerbGrounder::classify(std::string_view verb) const {
  VerbClassification out;
  out.verb = lower(verb);
  switch (mode_) {
    case LanguageMode::Manual:
      out.hard = classify_manual(dict_, out.verb);
      break;
    case LanguageMode::Hard:
    case LanguageMode::Soft:
      out.hard = classify_hard(*store_, centroids_, out.verb, margin_);
      break;
    case LanguageMode::Off:
      return out;
  }
  if (mode_ == LanguageMode::Soft) {
    out.prismatic = lingual_likelihood_soft(*store_, centroids_, out.verb, ModelType::Prismatic);
    out.rotational = lingual_likelihood_soft(*store_, centroids_, out.verb, ModelType::Rotational);
  } else {
    out.prismatic = lingual_likelihood_hard(out.hard, ModelType::Prismatic);
    out.rotational = lingual_likelihood_hard(out.hard, ModelType::Rotational);
  }
  return out;
}

LingualLikelihood VerbGrounder::likelihood(std::string_view verb) const {
  const VerbClassification c = classify(verb);
  return {{0.5, c.prismatic, c.rotational}};
}

}  // namespace multikin
