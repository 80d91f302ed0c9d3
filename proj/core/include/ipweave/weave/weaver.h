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
#include "ipweave/minilang/ast.h"
#include "ipweave/resolve/resolver.h"
#include "ipweave/sketch/sketch.h"

namespace ipweave::weave {

struct Placement {
  int clusterId = 0;
  std::string label;
  analysis::Location location;
  std::string file;
  int line = 0;  // line of the insertion point in the input program
  double mns = 0;
  double vas = 0;
  double cls = 0;
};

struct WeaveReport {
  std::size_t rank = 1;
  annotator::MappingSet set;
  std::vector<Placement> placements;
  std::vector<annotator::ChannelPlan> channels;
  resolve::Resolution resolution;
  std::map<std::string, std::string> tempNames;  // resolver key -> woven name
  std::vector<std::string> sketches;             // rendered
};

struct SynthesisResult {
  minilang::MiniProgram program;              // re-parsed woven program
  std::map<std::string, std::string> files;  // path -> text
  WeaveReport report;

  std::string reportText() const;
  // `branch`, `score`, `placement`, `channel` and `assign` records.
  std::string reportRec() const;
};

// Cluster insertion order: topological over inter-cluster edges, ties by id.
std::vector<int> weaveOrder(const fspec::Branch& branch);

// Inserts every snippet and realizes the channels. Throws WeaveConflict when
// an insertion point no longer exists or a hole is unassigned, and
// ChannelFailure when a data edge has no channel.
SynthesisResult weave(const annotator::Context& ctx, const fspec::Branch& branch, const annotator::MappingSet& set,
                      const std::vector<sketch::Sketch>& sketches,
                      const std::vector<annotator::ChannelPlan>& channels, const resolve::Resolution& resolution);

// Builds a dotted name as a chain of field accesses.
minilang::Expr qualifiedExpr(const std::string& dotted);

}  // namespace ipweave::weave
