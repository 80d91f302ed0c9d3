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

#include "ipweave/annotator/context.h"

#include <set>

namespace ipweave::annotator {

using minilang::BlockAddress;
using minilang::StmtKind;

Context::Context(const analysis::ProgramAnalysis& analysis, const fspec::FSpec& spec)
    : analysis_(&analysis), spec_(&spec) {}

const std::vector<VarInfo>& Context::visibleVars(const Location& loc) const {
  std::lock_guard lock(mu_);
  auto it = visible_.find(loc);
  if (it == visible_.end()) it = visible_.emplace(loc, analysis_->visibleVars(loc)).first;
  return it->second;
}

std::vector<VarInfo> Context::available(const Location& loc, const std::string& type) const {
  std::vector<VarInfo> out;
  for (const auto& v : visibleVars(loc))
    if (v.mustInitialized && canonical(v.typeName) == type) out.push_back(v);
  return out;
}

std::vector<Location> Context::candidateLocations(const fspec::Cluster& cluster) const {
  std::set<std::string> slotTypes;
  for (const auto& s : cluster.slots) slotTypes.insert(s.typeName);

  const auto& facts = analysis_->facts();
  const auto& mi = analysis_->mustInit();
  std::set<std::pair<BlockAddress, std::size_t>> points;
  for (const auto& m : analysis_->index().methods()) {
    const auto& stmts = m.decl->body.statements;
    std::size_t end = stmts.size();
    if (end > 0 && stmts.back().kind == StmtKind::Return) --end;
    if (mi.reachable(m.body, end)) points.emplace(m.body, end);

    if (slotTypes.empty()) continue;
    std::vector<BlockAddress> work{m.body};
    while (!work.empty()) {
      BlockAddress addr = work.back();
      work.pop_back();
      const auto& block = minilang::resolveBlock(analysis_->program(), addr);
      for (std::size_t i = 0; i < block.statements.size(); ++i) {
        const auto& st = block.statements[i];
        for (std::size_t k = 0; k < st.blocks.size(); ++k) {
          BlockAddress c = addr;
          c.nested.emplace_back(i, k);
          work.push_back(c);
        }
        if (st.kind == StmtKind::Return) continue;
        bool defines = false;
        for (const auto& d : facts.at(addr, i).defs)
          if (slotTypes.contains(canonical(facts.var(d).typeName))) defines = true;
        if (defines && mi.reachable(addr, i + 1)) points.emplace(addr, i + 1);
      }
    }
  }
  std::vector<Location> out;
  for (const auto& [addr, idx] : points) out.push_back(analysis_->locationAt(addr, idx));
  std::sort(out.begin(), out.end(), [&](const Location& a, const Location& b) { return locationKey(a) < locationKey(b); });
  return out;
}

std::tuple<std::string, std::size_t, std::size_t> Context::locationKey(const Location& loc) const {
  const auto& s = analysis_->scopes().scope(loc.scopeId);
  return {s.method, s.ordinal, loc.statementIndex};
}

const std::string& Context::methodSimpleName(const Location& loc) const {
  return analysis_->index().findMethod(loc.methodQName)->simpleName;
}

}  // namespace ipweave::annotator
