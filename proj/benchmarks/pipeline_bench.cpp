// Copyright 2026 The ipweave Authors. All rights reserved.
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

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "ipweave/analysis/program_analysis.h"
#include "ipweave/annotator/ranking.h"
#include "ipweave/fspec/levenshtein.h"
#include "ipweave/harness/harness.h"
#include "ipweave/minilang/parser.h"
#include "ipweave/resolve/resolver.h"
#include "ipweave/weave/pipeline.h"

namespace {

using namespace ipweave;
namespace fs = std::filesystem;
const fs::path kData = IPWEAVE_DATA_DIR;

void BM_Levenshtein(benchmark::State& state) {
  std::mt19937 rng(4);
  std::vector<std::string> words;
  for (int i = 0; i < 64; ++i) {
    std::string s(static_cast<std::size_t>(state.range(0)), ' ');
    for (char& c : s) c = static_cast<char>('a' + rng() % 26);
    words.push_back(s);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fspec::levenshtein(words[i % 64], words[(i + 7) % 64]));
    ++i;
  }
}
BENCHMARK(BM_Levenshtein)->Arg(8)->Arg(16)->Arg(64);

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(minilang::parseProgram(kData / "replica" / "t10_multi_file"));
}
BENCHMARK(BM_Parse);

void BM_Analysis(benchmark::State& state) {
  auto program = minilang::parseProgram(kData / "replica" / "t10_multi_file");
  for (auto _ : state) {
    analysis::ProgramAnalysis a(program);
    benchmark::DoNotOptimize(&a);
  }
}
BENCHMARK(BM_Analysis);

void BM_Ranking(benchmark::State& state) {
  auto spec = fspec::loadFSpec(kData / "jaas.fspec");
  analysis::ProgramAnalysis a(minilang::parseProgram(kData / "replica" / "t07_extra_methods"));
  annotator::Context ctx(a, spec);
  auto branches = fspec::prepareBranches(spec, 3);
  for (auto _ : state) benchmark::DoNotOptimize(annotator::rankMappingSets(ctx, branches, {}));
}
BENCHMARK(BM_Ranking)->Unit(benchmark::kMicrosecond);

void BM_Resolve(benchmark::State& state) {
  std::mt19937 rng(6);
  std::vector<resolve::CandidateList> lists;
  for (int h = 0; h < 4; ++h) {
    std::vector<resolve::Candidate> cs;
    for (int i = 0; i < 4; ++i) {
      resolve::Candidate c;
      c.name = "v" + std::to_string((h * 3 + i * 5 + static_cast<int>(rng() % 3)) % 9);
      c.key = "K:" + c.name;
      c.typeName = "java.lang.String";
      if (std::none_of(cs.begin(), cs.end(), [&](const auto& x) { return x.key == c.key; })) cs.push_back(c);
    }
    lists.push_back({h + 1, "java.lang.String", cs});
  }
  for (auto _ : state) benchmark::DoNotOptimize(resolve::resolve(lists));
}
BENCHMARK(BM_Resolve);

void BM_SynthesizeBaseline(benchmark::State& state) {
  auto spec = fspec::loadFSpec(kData / "jaas.fspec");
  auto program = minilang::parseProgram(kData / "replica" / "t01_baseline");
  for (auto _ : state) {
    weave::Synthesizer syn(program, spec);
    benchmark::DoNotOptimize(syn.synthesize(1));
  }
}
BENCHMARK(BM_SynthesizeBaseline)->Unit(benchmark::kMicrosecond);

void BM_EvaluateReplica(benchmark::State& state) {
  auto spec = fspec::loadFSpec(kData / "jaas.fspec");
  for (auto _ : state) benchmark::DoNotOptimize(harness::evaluate(kData / "replica", spec, {}));
}
BENCHMARK(BM_EvaluateReplica)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
