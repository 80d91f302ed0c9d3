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

#pragma once

#include <memory>
#include <vector>

#include "ipweave/analysis/program_analysis.h"
#include "ipweave/annotator/ranking.h"
#include "ipweave/weave/weaver.h"

namespace ipweave::weave {

// Return types of external calls as declared by the FSpec signatures.
analysis::TypeOracle specOracle(const fspec::FSpec& spec);

// Everything needed to weave a ranked mapping set.
struct Plan {
  const fspec::Branch* branch = nullptr;
  const annotator::MappingSet* set = nullptr;
  std::vector<sketch::Sketch> sketches;
  std::vector<annotator::ChannelPlan> channels;
  std::vector<resolve::CandidateList> candidates;
  resolve::SelectionProblem problem;
};

class Synthesizer {
 public:
  // Analyzes the program and ranks mapping sets; throws NoFeasibleMapping.
  Synthesizer(minilang::MiniProgram program, fspec::FSpec spec, annotator::Coefficients k = {});

  const analysis::ProgramAnalysis& analysis() const { return *analysis_; }
  const annotator::Context& context() const { return *ctx_; }
  const fspec::FSpec& spec() const { return *spec_; }
  const std::vector<fspec::Branch>& branches() const { return branches_; }
  const std::vector<annotator::MappingSet>& ranked() const { return ranked_; }

  // Sketches, channels and the selection problem of the 1-based `rank`.
  Plan plan(std::size_t rank) const;
  // Throws Unsatisfiable when some hole has no candidate.
  SynthesisResult synthesize(std::size_t rank = 1) const;

 private:
  std::unique_ptr<fspec::FSpec> spec_;
  std::unique_ptr<analysis::ProgramAnalysis> analysis_;
  std::unique_ptr<annotator::Context> ctx_;
  annotator::Coefficients k_;
  std::vector<fspec::Branch> branches_;
  std::vector<annotator::MappingSet> ranked_;
};

}  // namespace ipweave::weave
