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

#include "ipweave/analysis/program_analysis.h"

#include <set>

#include <fmt/format.h>

#include "ipweave/error.h"

namespace ipweave::analysis {

using minilang::BlockAddress;

ProgramAnalysis::ProgramAnalysis(minilang::MiniProgram program, TypeOracle oracle)
    : program_(std::make_unique<minilang::MiniProgram>(std::move(program))) {
  index_ = std::make_unique<ProgramIndex>(*program_);
  facts_ = std::make_unique<ProgramFacts>(*index_, std::move(oracle));
  calls_ = std::make_unique<CallGraph>(CallGraph::build(*facts_));
  scopes_ = std::make_unique<ScopeGraph>(ScopeGraph::build(*facts_));
  must_ = std::make_unique<MustInit>(*facts_, *calls_);
}

Location ProgramAnalysis::locationAt(const BlockAddress& block, std::size_t index) const {
  std::size_t s = scopes_->scopeAt(block, index);
  const Scope& sc = scopes_->nodes()[s];
  return Location{sc.id, index, sc.method};
}

std::pair<BlockAddress, std::size_t> ProgramAnalysis::resolve(const Location& loc) const {
  auto s = scopes_->find(loc.scopeId);
  if (!s) throw InvalidLocation("unknown scope " + loc.scopeId);
  const Scope& sc = scopes_->nodes()[*s];
  if (!loc.methodQName.empty() && loc.methodQName != sc.method)
    throw InvalidLocation(fmt::format("scope {} is not in method {}", loc.scopeId, loc.methodQName));
  if (scopes_->scopeAt(sc.block, std::min(loc.statementIndex, sc.end)) != *s ||
      loc.statementIndex < sc.begin || loc.statementIndex > sc.end)
    throw InvalidLocation(fmt::format("index {} outside scope {}", loc.statementIndex, loc.scopeId));
  return {sc.block, loc.statementIndex};
}

int ProgramAnalysis::anchorLine(const Location& loc) const {
  auto [block, index] = resolve(loc);
  return minilang::anchorLine(*program_, block, index);
}

std::vector<VarInfo> ProgramAnalysis::visibleVars(const Location& loc) const {
  auto [block, index] = resolve(loc);
  const MethodInfo* method = index_->findMethod(scopes_->nodes()[scopes_->indexOf(loc.scopeId)].method);
  std::vector<VarInfo> out;
  std::set<std::string> names;
  auto push = [&](const VarDecl& v, int tier) {
    if (!names.insert(v.name).second) return;
    VarInfo vi;
    vi.name = v.name;
    vi.typeName = v.typeName;
    vi.originKind = v.origin;
    vi.key = v.key;
    vi.ownerClass = v.ownerClass;
    vi.declLine = v.line;
    vi.tier = tier;
    vi.declIndex = v.stmtIndex;
    if (v.origin == OriginKind::Local)
      vi.declScope = scopes_->nodes()[scopes_->scopeAt(v.block, v.stmtIndex)].id;
    else if (v.origin == OriginKind::Parameter)
      vi.declScope = scopes_->nodes()[scopes_->scopesOfMethod(v.method).front()].id;
    vi.mustInitialized = must_->initializedAt(block, index, v.key);
    out.push_back(std::move(vi));
  };

  // Innermost block outwards; each level sees locals declared before the
  // point where control entered the nested block.
  BlockAddress level = block;
  std::size_t cutoff = index;
  for (int tier = 0;; tier = 1) {
    const auto& locals = facts_->localsIn(level);
    for (auto it = locals.rbegin(); it != locals.rend(); ++it)
      if (it->first < cutoff) push(facts_->var(it->second), tier);
    if (level.nested.empty()) break;
    cutoff = level.nested.back().first;
    level.nested.pop_back();
  }
  for (const auto& p : facts_->paramsOf(method->qualifiedName)) push(facts_->var(p), 1);

  bool staticCtx = method->isStatic;
  for (const ClassInfo* c : index_->classChain(method->classQName)) {
    for (const auto& f : c->decl->fields) {
      if (staticCtx && !f.isStatic()) continue;
      push(facts_->var("F:" + c->qualifiedName + ":" + f.name), 2);
    }
    if (c->isStatic) staticCtx = true;
  }
  return out;
}

bool ProgramAnalysis::definitelyReaches(const Location& producer, const Location& consumer) const {
  auto [cblock, cindex] = resolve(consumer);
  std::lock_guard lock(*mu_);
  auto it = virtual_.find(producer);
  if (it == virtual_.end()) {
    auto [pblock, pindex] = resolve(producer);
    VirtualDef def{pblock, pindex, "V:" + producer.scopeId};
    it = virtual_.emplace(producer, std::make_unique<MustInit>(*facts_, *calls_, def)).first;
  }
  return it->second->initializedAt(cblock, cindex, "V:" + producer.scopeId);
}

std::string ProgramAnalysis::listing() const {
  std::string out;
  const auto& nodes = scopes_->nodes();
  for (const Scope& s : nodes) {
    out += fmt::format("node {} method={} stmts={}-{}\n", s.id, s.method, s.begin, s.end);
    // Last point of the scope: before its terminator, if any.
    bool open = scopes_->scopeAt(s.block, s.end) == scopes_->indexOf(s.id);
    Location end{s.id, open ? s.end : s.end - 1, s.method};
    for (const VarInfo& v : visibleVars(end))
      out += fmt::format("var {} {} type={} origin={} init={}\n", s.id, v.name, v.typeName, originName(v.originKind),
                         v.mustInitialized ? 1 : 0);
  }
  for (auto [a, b] : scopes_->controlEdges()) out += fmt::format("edge control {} {}\n", nodes[a].id, nodes[b].id);
  for (const DataEdge& d : scopes_->dataEdges())
    out += fmt::format("edge data {} {} type={}\n", nodes[d.src].id, nodes[d.dst].id, d.typeName);
  return out;
}

std::vector<Scope> basicBlocks(const minilang::MiniProgram& program) {
  return ProgramAnalysis(program).scopes().nodes();
}

std::vector<VarInfo> visibleVars(const minilang::MiniProgram& program, const Location& loc) {
  return ProgramAnalysis(program).visibleVars(loc);
}

ScopeGraph scopeDependencyGraph(const minilang::MiniProgram& program) {
  return ProgramAnalysis(program).scopes();
}

bool executesBefore(const ScopeGraph& graph, const ScopeId& s1, const ScopeId& s2) {
  return graph.executesBefore(s1, s2);
}

}  // namespace ipweave::analysis
