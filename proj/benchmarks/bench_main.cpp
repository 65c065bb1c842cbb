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

#include <benchmark/benchmark.h>

#include <memory>

#include "multikin/alignment.hpp"
#include "multikin/language.hpp"
#include "multikin/pipeline.hpp"
#include "multikin/simulator.hpp"

namespace multikin {
namespace {

ObservationSequence edge(ModelType type, int steps) {
  TypeMix mix{0, 0, 0};
  if (type == ModelType::Rigid) mix.rigid = 1;
  if (type == ModelType::Prismatic) mix.prismatic = 1;
  if (type == ModelType::Rotational) mix.rotational = 1;
  const auto spec = sample_spec(1, 1, mix);
  return render_edge(spec.joints[0], steps, {0.01, 0.035, 1});
}

void BM_FitRigid(benchmark::State& state) {
  const auto obs = edge(ModelType::Rigid, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit_rigid(obs));
}
BENCHMARK(BM_FitRigid)->Arg(30)->Arg(300);

void BM_FitPrismatic(benchmark::State& state) {
  const auto obs = edge(ModelType::Prismatic, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit_prismatic(obs));
}
BENCHMARK(BM_FitPrismatic)->Arg(30)->Arg(300);

void BM_FitRotational(benchmark::State& state) {
  const auto obs = edge(ModelType::Rotational, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit_rotational(obs));
}
BENCHMARK(BM_FitRotational)->Arg(30)->Arg(300);

void BM_InferGraph(benchmark::State& state) {
  const int parts = static_cast<int>(state.range(0));
  const auto spec = sample_spec(2, parts, {}, Topology::Chain);
  const auto caption = synth_caption(spec, VerbMode::Unambiguous, 2);
  const auto parsed = parse_caption(tokenize_and_tag(caption, Lexicons::defaults()), caption);
  const auto traj = render(spec, 30, {0.01, 0.035, 2});
  InferenceConfig config;
  config.grounder = std::make_shared<const VerbGrounder>(ManualDictionary::standard());
  for (auto _ : state) benchmark::DoNotOptimize(infer_graph(traj, parsed, config));
}
BENCHMARK(BM_InferGraph)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_EnumerateAssignments(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<std::string> nouns, clusters = {"background"};
  for (int k = 0; k < n; ++k) {
    nouns.push_back("noun" + std::to_string(k));
    clusters.push_back("c" + std::to_string(k));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_assignments(nouns, clusters, "background"));
  }
}
BENCHMARK(BM_EnumerateAssignments)->DenseRange(2, 6);

}  // namespace
}  // namespace multikin

BENCHMARK_MAIN();
