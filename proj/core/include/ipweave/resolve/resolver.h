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

#include <map>
#include <string>
#include <vector>

#include "ipweave/annotator/channels.h"
#include "ipweave/annotator/scores.h"
#include "ipweave/sketch/sketch.h"

namespace ipweave::resolve {

enum class CandidateSource { Program, Channel };

struct Candidate {
  std::string name;      // as written at the hole
  std::string typeName;  // canonical
  // Identity of the program variable; literals with equal keys are linked.
  std::string key;
  int tier = 0;
  int distance = 0;
  CandidateSource source = CandidateSource::Program;

  bool operator==(const Candidate&) const = default;
};

struct CandidateList {
  int holeId = 0;
  std::string typeName;
  std::vector<Candidate> candidates;  // nearest first

  bool operator==(const CandidateList&) const = default;
};

// Key of the synthetic variable a channel delivers to its consumer.
Candidate channelCandidate(const annotator::ChannelPlan& plan, const std::vector<sketch::Sketch>& sketches);

// Holes fed by an inter-cluster data edge get the channel variable only;
// other holes get the visible, must-initialized variables of the hole's
// type, plus channel values that reach the hole, ordered by (tier, line
// distance, name).
std::vector<CandidateList> buildCandidates(const annotator::Context& ctx, const fspec::Branch& branch,
                                           const std::vector<sketch::Sketch>& sketches,
                                           const annotator::MappingSet& set,
                                           const std::vector<annotator::ChannelPlan>& channels);

struct BoolVar {
  int holeId = 0;
  std::size_t candidateIndex = 0;
  std::string key;
};

struct SelectionProblem {
  std::vector<BoolVar> vars;
  // One clause per hole: indices into vars.
  std::vector<std::vector<std::size_t>> atLeastOne;
  // Literals naming the same program variable must agree.
  std::vector<std::vector<std::size_t>> equivalences;
  std::vector<int> holeIds;
  std::map<std::string, std::string> names;  // key -> display name
};

SelectionProblem encodeSelection(const std::vector<CandidateList>& lists);

// Satisfying selection with the fewest distinct program variables. Ties go
// to the smallest summed rank of the best selected candidate per hole, then
// to the lexicographically smallest sorted name list. Returns indices of the
// true literals. Throws Unsatisfiable naming every hole without candidates.
std::vector<std::size_t> solveSelection(const SelectionProblem& problem);

struct Resolution {
  std::map<int, Candidate> assignment;
  std::size_t distinctCount = 0;

  bool operator==(const Resolution&) const = default;
};

Resolution resolve(const std::vector<CandidateList>& lists);
Resolution resolve(const std::vector<CandidateList>& lists, const SelectionProblem& problem,
                   const std::vector<std::size_t>& selection);

std::string formatProblem(const SelectionProblem& problem);
std::string formatResolution(const Resolution& resolution);

}  // namespace ipweave::resolve
