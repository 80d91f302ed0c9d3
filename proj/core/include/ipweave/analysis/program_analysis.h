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
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "ipweave/analysis/facts.h"
#include "ipweave/analysis/must_init.h"
#include "ipweave/analysis/program_index.h"
#include "ipweave/analysis/scope_graph.h"
#include "ipweave/minilang/ast.h"

namespace ipweave::analysis {

// An insertion point. statementIndex counts statements of the enclosing
// syntactic block (0..length); scopeId names the scope holding that point.
struct Location {
  ScopeId scopeId;
  std::size_t statementIndex = 0;
  std::string methodQName;

  auto operator<=>(const Location&) const = default;
};

struct VarInfo {
  std::string name;
  std::string typeName;
  OriginKind originKind = OriginKind::Local;
  ScopeId declScope;  // empty for fields
  std::size_t declIndex = 0;
  bool mustInitialized = false;

  std::string key;
  std::string ownerClass;  // fields
  int declLine = 0;
  // 0: local of the queried block, 1: enclosing local or parameter, 2: field.
  int tier = 0;
};

class ProgramAnalysis {
 public:
  explicit ProgramAnalysis(minilang::MiniProgram program, TypeOracle oracle = {});

  const minilang::MiniProgram& program() const { return *program_; }
  const ProgramIndex& index() const { return *index_; }
  const ProgramFacts& facts() const { return *facts_; }
  const CallGraph& callGraph() const { return *calls_; }
  const ScopeGraph& scopes() const { return *scopes_; }
  const MustInit& mustInit() const { return *must_; }

  Location locationAt(const minilang::BlockAddress& block, std::size_t index) const;
  // Throws InvalidLocation when the location does not name a point of its scope.
  std::pair<minilang::BlockAddress, std::size_t> resolve(const Location& loc) const;
  int anchorLine(const Location& loc) const;

  std::vector<VarInfo> visibleVars(const Location& loc) const;
  bool executesBefore(const ScopeId& a, const ScopeId& b) const { return scopes_->executesBefore(a, b); }

  // True when a variable first assigned by code placed at `producer` is
  // assigned on every path reaching `consumer`.
  bool definitelyReaches(const Location& producer, const Location& consumer) const;

  // Deterministic listing of scopes, visible variables and graph edges.
  std::string listing() const;

 private:
  std::unique_ptr<minilang::MiniProgram> program_;
  std::unique_ptr<ProgramIndex> index_;
  std::unique_ptr<ProgramFacts> facts_;
  std::unique_ptr<CallGraph> calls_;
  std::unique_ptr<ScopeGraph> scopes_;
  std::unique_ptr<MustInit> must_;
  mutable std::map<Location, std::unique_ptr<MustInit>> virtual_;
  mutable std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
};

std::vector<Scope> basicBlocks(const minilang::MiniProgram& program);
std::vector<VarInfo> visibleVars(const minilang::MiniProgram& program, const Location& loc);
ScopeGraph scopeDependencyGraph(const minilang::MiniProgram& program);
bool executesBefore(const ScopeGraph& graph, const ScopeId& s1, const ScopeId& s2);

}  // namespace ipweave::analysis
