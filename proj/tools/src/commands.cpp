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

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <set>

#include "multikin/errors.hpp"
#include "multikin/evaluation.hpp"
#include "multikin/io.hpp"
#include "multikin/pipeline.hpp"
#include "multikin/random.hpp"
#include "multikin_cli/commands.hpp"

namespace multikin::cli {
namespace {

namespace fs = std::filesystem;

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

ParsedCaption parse_caption_text(const std::string& text, const Lexicons& lex) {
  const auto tokens = is_pretagged(text) ? read_pretagged(text, lex) : tokenize_and_tag(text, lex);
  return parse_caption(tokens, text);
}

std::string ends_with_id(const fs::path& p, std::string_view suffix) {
  const std::string name = p.filename().string();
  if (name.size() <= suffix.size() || name.compare(name.size() - suffix.size(), suffix.size(),
                                                   suffix) != 0) {
    return {};
  }
  return name.substr(0, name.size() - suffix.size());
}

std::map<std::string, fs::path> list_by_suffix(const fs::path& dir, std::string_view suffix) {
  std::map<std::string, fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (auto id = ends_with_id(entry.path(), suffix); !id.empty()) out[id] = entry.path();
  }
  return out;
}

}  // namespace

int cmd_infer(const InferArgs& args, const Config& config, std::ostream& out, std::ostream& err) {
  TrajectorySet trajectories;
  std::optional<ParsedCaption> caption;
  InferenceConfig inference;
  try {
    trajectories = parse_trajectories(read_file(args.trajectories));
  } catch (const Error& e) {
    err << "error: trajectories: " << e.what() << "\n";
    return kExitInput;
  }
  try {
    if (args.caption) caption = parse_caption_text(read_file(*args.caption), load_lexicons(config));
    inference.grounder = make_grounder(config);
  } catch (const Error& e) {
    err << "error: language: " << e.what() << "\n";
    return kExitInput;
  }
  inference.noise = NoiseModel{config.sigma_pos, config.sigma_rot};
  inference.assignment_cap = config.assignment_cap;
  inference.background = trajectories.background;

  InferenceResult result;
  try {
    result = infer(trajectories.clusters, caption, inference);
  } catch (const Error& e) {
    err << "error: inference: " << e.what() << "\n";
    return kExitInference;
  }
  for (const auto& w : result.warnings) err << "warning: " << w << "\n";

  try {
    write_file(args.output, serialize_graph({result.graph, result.assignment}));
  } catch (const Error& e) {
    err << "error: output: " << e.what() << "\n";
    return kExitInput;
  }

  out << "background " << result.graph.background << "\n";
  for (const auto& e : result.graph.edges) {
    out << "edge " << e.i << " -> " << e.j << " " << to_string(e.model.type())
        << " cost=" << fmt(e.cost) << (e.lingual ? " lingual" : "") << "\n";
  }
  if (result.assignment) {
    for (const auto& [noun, cluster] : result.assignment->pairs) {
      out << "noun \"" << noun << "\" -> " << cluster << "\n";
    }
  }
  out << "total cost " << fmt(result.graph.total_cost()) << "\n";
  return kExitOk;
}

int cmd_simulate(const SimulateArgs& args, const Config& config, std::ostream& out,
                 std::ostream& err) {
  if (args.parts < 1 || args.parts > 6 || args.steps < 3 || args.demos < 1 ||
      args.dropout < 0 || args.dropout > args.parts || args.noise_pos < 0.0 ||
      args.noise_rot < 0.0) {
    err << "error: simulate: invalid options\n";
    return kExitInput;
  }
  TypeMix mix;
  if (args.type) {
    mix = {0.0, 0.0, 0.0};
    switch (*args.type) {
      case ModelType::Rigid:
        mix.rigid = 1.0;
        break;
      case ModelType::Prismatic:
        mix.prismatic = 1.0;
        break;
      case ModelType::Rotational:
        mix.rotational = 1.0;
        break;
    }
  }
  std::error_code ec;
  fs::create_directories(args.output_dir, ec);
  if (ec) {
    err << "error: simulate: cannot create " << args.output_dir.string() << ": " << ec.message()
        << "\n";
    return kExitInput;
  }

  for (int d = 0; d < args.demos; ++d) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(d);
    Rng seeds(seed);
    const std::uint64_t noise_seed = seeds.next_u64();
    const std::uint64_t caption_seed = seeds.next_u64();
    const std::uint64_t dropout_seed = seeds.next_u64();

    const GroundTruthSpec spec = sample_spec(seed, args.parts, mix, args.topology);
    auto clusters = render(spec, args.steps, {args.noise_pos, args.noise_rot, noise_seed});
    if (args.dropout > 0) clusters = drop_clusters(clusters, args.dropout, dropout_seed, spec.background);
    const std::string id = args.prefix + "_" + std::to_string(seed);
    try {
      write_file(args.output_dir / (id + ".traj.json"),
                 serialize_trajectories({std::move(clusters), spec.background}));
      write_file(args.output_dir / (id + ".caption.txt"),
                 synth_caption(spec, args.verb_mode, caption_seed) + "\n");
      write_file(args.output_dir / (id + ".truth.json"),
                 serialize_graph({truth_graph(spec, args.steps), std::nullopt}));
    } catch (const Error& e) {
      err << "error: simulate: " << e.what() << "\n";
      return kExitInput;
    }
    out << "wrote " << id << "\n";
  }
  return kExitOk;
}

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
  std::map<std::string, fs::path> estimated, truth;
  std::optional<Correspondence> corr;
  try {
    if (!fs::is_directory(args.estimated_dir) || !fs::is_directory(args.truth_dir)) {
      throw FormatError("input directories must exist");
    }
    estimated = list_by_suffix(args.estimated_dir, ".graph.json");
    truth = list_by_suffix(args.truth_dir, ".truth.json");
    if (args.correspondence) corr = parse_correspondence(read_file(*args.correspondence));
  } catch (const std::exception& e) {
    err << "error: evaluate: " << e.what() << "\n";
    return kExitInput;
  }
  if (truth.empty()) {
    err << "error: evaluate: no *.truth.json files in " << args.truth_dir.string() << "\n";
    return kExitInput;
  }
  bool mismatch = false;
  for (const auto& [id, path] : truth) {
    if (!estimated.contains(id)) {
      err << "error: evaluate: no estimated graph for demo '" << id << "'\n";
      mismatch = true;
    }
  }
  for (const auto& [id, path] : estimated) {
    if (!truth.contains(id)) {
      err << "error: evaluate: no ground truth for demo '" << id << "'\n";
      mismatch = true;
    }
  }
  if (mismatch) return kExitInput;

  std::vector<DemoResult> rows;
  try {
    for (const auto& [id, path] : truth) {
      const GraphFile t = parse_graph(read_file(path));
      const GraphFile e = parse_graph(read_file(estimated.at(id)));
      rows.push_back(
          evaluate_demo(id, e.graph, t.graph, corr ? *corr : identity_correspondence(e.graph)));
    }
  } catch (const Error& e) {
    err << "error: evaluate: " << e.what() << "\n";
    return kExitInput;
  }
  const EvalReport report = aggregate(std::move(rows));
  if (args.output) {
    try {
      write_file(*args.output, serialize_report(report));
    } catch (const Error& e) {
      err << "error: evaluate: " << e.what() << "\n";
      return kExitInput;
    }
  }
  out << format_report_table(report);
  return kExitOk;
}

int cmd_classify_verb(std::string_view verb, const Config& config, std::ostream& out,
                      std::ostream& err) {
  if (config.language_mode == LanguageMode::Off) {
    err << "error: classify-verb: language mode is off\n";
    return kExitInput;
  }
  std::shared_ptr<const VerbGrounder> grounder;
  try {
    grounder = make_grounder(config);
  } catch (const Error& e) {
    err << "error: classify-verb: " << e.what() << "\n";
    return kExitInput;
  }
  const VerbClassification c = grounder->classify(verb);
  out << "verb=" << c.verb << " label=" << to_string(c.hard) << " p_prismatic=" << fmt(c.prismatic)
      << " p_rotational=" << fmt(c.rotational) << "\n";
  return kExitOk;
}

}  // namespace multikin::cli
