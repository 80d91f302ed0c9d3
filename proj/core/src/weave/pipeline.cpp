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

#include "ipweave/weave/pipeline.h"

#include <fmt/format.h>

#include "ipweave/analysis/program_index.h"
#include "ipweave/error.h"

namespace ipweave::weave {

analysis::TypeOracle specOracle(const fspec::FSpec& spec) {
  return [spec](const std::string& owner, const std::string& member, analysis::CallKind kind,
                std::size_t argc) -> std::optional<std::string> {
    const std::string canon = spec.canonical(owner);
    for (const auto& n : spec.nodes) {
      if (spec.canonical(n.ownerType) != canon || n.paramTypes.size() != argc) continue;
      bool ctor = kind == analysis::CallKind::Constructor;
      if (ctor != (n.kind == fspec::NodeKind::Constructor)) continue;
      if (!ctor && n.memberName != member) continue;
      if (n.returnType == "void") return std::nullopt;
      return ctor ? owner : n.returnType;
    }
    return std::nullopt;
  };
}

Synthesizer::Synthesizer(minilang::MiniProgram program, fspec::FSpec spec, annotator::Coefficients k)
    : spec_(std::make_unique<fspec::FSpec>(std::move(spec))), k_(k) {
  k_.validate();
  analysis_ = std::make_unique<analysis::ProgramAnalysis>(std::move(program), specOracle(*spec_));
  ctx_ = std::make_unique<annotator::Context>(*analysis_, *spec_);
  branches_ = fspec::prepareBranches(*spec_, k_.tau);
  ranked_ = annotator::rankMappingSets(*ctx_, branches_, k_);
}

Plan Synthesizer::plan(std::size_t rank) const {
  if (rank == 0 || rank > ranked_.size())
    throw InputError(fmt::format("rank {} outside the ranked list of {}", rank, ranked_.size()));
  Plan p;
  p.set = &ranked_[rank - 1];
  p.branch = &branches_.at(static_cast<std::size_t>(p.set->branchId));
  p.sketches = sketch::generateSketches(*spec_, *p.branch);
  std::vector<analysis::Location> locs;
  for (const auto& m : p.set->mappings) locs.push_back(m.location);
  auto channels = annotator::planChannels(*ctx_, *p.branch, locs);
  if (!channels) throw ChannelFailure("ranked mapping set has no export channel");
  p.channels = std::move(*channels);
  p.candidates = resolve::buildCandidates(*ctx_, *p.branch, p.sketches, *p.set, p.channels);
  p.problem = resolve::encodeSelection(p.candidates);
  return p;
}

SynthesisResult Synthesizer::synthesize(std::size_t rank) const {
  Plan p = plan(rank);
  auto selection = resolve::solveSelection(p.problem);
  auto resolution = resolve::resolve(p.candidates, p.problem, selection);
  SynthesisResult r = weave(*ctx_, *p.branch, *p.set, p.sketches, p.channels, resolution);
  r.report.rank = rank;
  return r;
}

}  // namespace ipweave::weave
