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
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "multikin/errors.hpp"
#include "multikin/io.hpp"
#include "multikin_cli/commands.hpp"

namespace cli = multikin::cli;

int main(int argc, char** argv) {
  CLI::App app{"Kinematic structure learning from pose trajectories and captions"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file");

  // Flag overrides, applied after the config file.
  std::map<std::string, std::string> overrides;
  const std::vector<std::pair<std::string, std::string>> keys = {
      {"sigma-pos", "position noise (m)"},
      {"sigma-rot", "rotation noise (rad)"},
      {"margin", "hard-alignment distance margin"},
      {"language-mode", "off, hard, soft or manual"},
      {"seeds-prismatic", "comma-separated prismatic seed verbs"},
      {"seeds-rotational", "comma-separated rotational seed verbs"},
      {"parts-lexicon", "part noun list"},
      {"verbs-lexicon", "motion verb list"},
      {"agents-lexicon", "agent stoplist"},
      {"embeddings", "word embedding file"},
      {"assignment-cap", "maximum noun-cluster assignments"},
      {"seed", "random seed"},
  };
  for (const auto& [flag, help] : keys) {
    std::string key = flag;
    std::replace(key.begin(), key.end(), '-', '_');
    app.add_option_function<std::string>(
        "--" + flag, [&overrides, key](const std::string& v) { overrides[key] = v; }, help);
  }

  cli::InferArgs infer_args;
  auto* infer = app.add_subcommand("infer", "infer a kinematic graph");
  infer->add_option("trajectories", infer_args.trajectories, "trajectory JSON file")->required();
  infer->add_option("--caption", infer_args.caption, "caption text file");
  infer->add_option("-o,--output", infer_args.output, "graph JSON output")->required();

  cli::SimulateArgs sim_args;
  std::string sim_type = "mixed", sim_topology = "tree", sim_verbs = "unambiguous";
  auto* simulate = app.add_subcommand("simulate", "generate synthetic demonstrations");
  simulate->add_option("-o,--output", sim_args.output_dir, "output directory")->required();
  simulate->add_option("--parts", sim_args.parts, "moving parts (1-6)")->capture_default_str();
  simulate->add_option("--type", sim_type, "rigid, prismatic, rotational or mixed")
      ->capture_default_str();
  simulate->add_option("--topology", sim_topology, "tree, chain or star")->capture_default_str();
  simulate->add_option("--steps", sim_args.steps, "samples per trajectory")->capture_default_str();
  simulate->add_option("--noise-pos", sim_args.noise_pos, "position noise (m)")
      ->capture_default_str();
  simulate->add_option("--noise-rot", sim_args.noise_rot, "rotation noise (rad)")
      ->capture_default_str();
  simulate->add_option("--verbs", sim_verbs, "unambiguous, ambiguous or mixed")
      ->capture_default_str();
  simulate->add_option("--dropout", sim_args.dropout, "moving clusters to drop")
      ->capture_default_str();
  simulate->add_option("--demos", sim_args.demos, "demonstrations, seeds seed..seed+n-1")
      ->capture_default_str();
  simulate->add_option("--prefix", sim_args.prefix, "demo id prefix")->capture_default_str();

  cli::EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "score estimated graphs against ground truth");
  evaluate->add_option("estimated", eval_args.estimated_dir, "directory of <id>.graph.json")
      ->required();
  evaluate->add_option("truth", eval_args.truth_dir, "directory of <id>.truth.json")->required();
  evaluate->add_option("--correspondence", eval_args.correspondence,
                       "JSON map from estimated to truth vertex ids");
  evaluate->add_option("-o,--output", eval_args.output, "report JSON output");

  std::string verb;
  auto* classify = app.add_subcommand("classify-verb", "ground a single verb");
  classify->add_option("verb", verb, "verb to classify")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cli::kExitInput;
  }

  cli::Config config;
  try {
    if (!config_path.empty()) cli::apply_config_text(config, multikin::read_file(config_path));
    for (const auto& [key, value] : overrides) cli::set_config_value(config, key, value);
  } catch (const multikin::Error& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return cli::kExitInput;
  }

  if (*infer) return cli::cmd_infer(infer_args, config, std::cout, std::cerr);
  if (*simulate) {
    if (sim_type != "mixed") {
      sim_args.type = multikin::parse_model_type(sim_type);
      if (!sim_args.type) {
        std::cerr << "error: simulate: unknown type '" << sim_type << "'\n";
        return cli::kExitInput;
      }
    }
    if (sim_topology == "tree") {
      sim_args.topology = multikin::Topology::Random;
    } else if (sim_topology == "chain") {
      sim_args.topology = multikin::Topology::Chain;
    } else if (sim_topology == "star") {
      sim_args.topology = multikin::Topology::Star;
    } else {
      std::cerr << "error: simulate: unknown topology '" << sim_topology << "'\n";
      return cli::kExitInput;
    }
    if (sim_verbs == "unambiguous") {
      sim_args.verb_mode = multikin::VerbMode::Unambiguous;
    } else if (sim_verbs == "ambiguous") {
      sim_args.verb_mode = multikin::VerbMode::Ambiguous;
    } else if (sim_verbs == "mixed") {
      sim_args.verb_mode = multikin::VerbMode::Mixed;
    } else {
      std::cerr << "error: simulate: unknown verb mode '" << sim_verbs << "'\n";
      return cli::kExitInput;
    }
    return cli::cmd_simulate(sim_args, config, std::cout, std::cerr);
  }
  if (*evaluate) return cli::cmd_evaluate(eval_args, std::cout, std::cerr);
  return cli::cmd_classify_verb(verb, config, std::cout, std::cerr);
}
