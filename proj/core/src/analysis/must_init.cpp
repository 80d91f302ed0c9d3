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

#include "ipweave/analysis/must_init.h"

#include <deque>

namespace ipweave::analysis {

using minilang::Block;
using minilang::BlockAddress;
using minilang::StmtKind;

CallGraph CallGraph::build(const ProgramFacts& facts) {
  CallGraph g;
  for (const auto& m : facts.index().methods()) {
    g.callees[m.qualifiedName];
    g.callers[m.qualifiedName];
  }
  for (const auto& c : facts.callSites()) {
    if (c.external() || c.method.empty()) continue;
    g.callees[c.method].insert(c.callee);
    g.callers[c.callee].insert(c.method);
  }
  std::set<std::string> reached;
  std::deque<std::string> work;
  for (const auto& m : facts.index().methods()) {
    if (g.callers[m.qualifiedName].empty()) {
      g.roots.push_back(m.qualifiedName);
      reached.insert(m.qualifiedName);
      work.push_back(m.qualifiedName);
    }
  }
  auto flood = [&] {
    while (!work.empty()) {
      std::string m = work.front();
      work.pop_front();
      for (const auto& c : g.callees[m])
        if (reached.insert(c).second) work.push_back(c);
    }
  };
  flood();
  for (const auto& m : facts.index().methods()) {
    if (!reached.contains(m.qualifiedName)) {
      g.roots.push_back(m.qualifiedName);
      reached.insert(m.qualifiedName);
      work.push_back(m.qualifiedName);
      flood();
    }
  }
  return g;
}

bool CallGraph::isRoot(const std::string& method) const {
  return std::find(roots.begin(), roots.end(), method) != roots.end();
}

void InitState::meet(const InitState& o) {
  if (!o.reachable) return;
  if (!reachable) {
    *this = o;
    return;
  }
  vars.intersect(o.vars);
}

// One walk over every method with fixed entry states and summaries.
struct MustInit::Pass {
  const MustInit& self;
  const std::map<std::string, InitState>& entry;
  const std::map<std::string, InitState>& gen;
  std::map<std::string, InitState> exits;           // per method
  std::map<std::string, InitState> callSiteStates;  // per callee, met over sites
  std::map<BlockAddress, std::vector<InitState>>* record = nullptr;

  void method(const MethodInfo& m, InitState in) {
    if (!in.reachable) return;
    for (const auto& p : self.facts_->paramsOf(m.qualifiedName)) in.vars.set(self.id(p));
    InitState exit;
    InitState out = block(m.decl->body, m.body, in, exit);
    exit.meet(out);
    exits[m.qualifiedName] = exit;
  }

  InitState block(const Block& b, const BlockAddress& addr, InitState s, InitState& exit) {
    std::vector<InitState>* rec = nullptr;
    if (record) {
      rec = &(*record)[addr];
      rec->assign(b.statements.size() + 1, InitState{});
    }
    for (std::size_t i = 0; i <= b.statements.size(); ++i) {
      if (self.extra_ && s.reachable && self.extra_->index == i && self.extra_->block == addr)
        s.vars.set(self.extraId_);
      if (rec) (*rec)[i] = s;
      if (i == b.statements.size()) break;
      const auto& st = b.statements[i];
      const StmtFacts& f = self.facts_->at(addr, i);
      for (std::size_t cid : f.calls) {
        const CallSite& c = self.facts_->callSites()[cid];
        if (c.external()) continue;
        callSiteStates[c.callee].meet(s);
        const InitState& g = gen.at(c.callee);
        if (!g.reachable)
          s.reachable = false;
        else if (s.reachable)
          s.vars.unite(g.vars);
      }
      if (s.reachable)
        for (const auto& d : f.defs) s.vars.set(self.id(d));
      auto child = [&](std::size_t blk) {
        BlockAddress a = addr;
        a.nested.emplace_back(i, blk);
        return a;
      };
      switch (st.kind) {
        case StmtKind::Return:
          exit.meet(s);
          s.reachable = false;
          break;
        case StmtKind::If: {
          InitState t = block(st.blocks[0], child(0), s, exit);
          InitState e = st.blocks.size() > 1 ? block(st.blocks[1], child(1), s, exit) : s;
          t.meet(e);
          s = t;
          break;
        }
        case StmtKind::While:
          block(st.blocks[0], child(0), s, exit);
          break;
        default: break;
      }
    }
    return s;
  }
};

MustInit::MustInit(const ProgramFacts& facts, const CallGraph& graph, std::optional<VirtualDef> extra)
    : facts_(&facts), graph_(&graph), extra_(std::move(extra)) {
  for (const auto& [key, v] : facts.vars()) ids_.emplace(key, ids_.size());
  if (extra_) {
    auto [it, fresh] = ids_.emplace(extra_->key, ids_.size());
    extraId_ = it->second;
  }
  const std::size_t n = ids_.size();

  InitState base{true, VarSet(n)};
  for (const auto& f : facts.fields())
    if (facts.var(f).hasInitializer) base.vars.set(id(f));
  const InitState top{false, VarSet(n)};

  const auto& methods = facts.index().methods();
  std::map<std::string, InitState> entry, gen;
  for (const auto& m : methods) {
    entry[m.qualifiedName] = graph.isRoot(m.qualifiedName) ? base : top;
    gen[m.qualifiedName] = top;
  }

  // Summaries: what each method assigns on every returning path.
  InitState empty{true, VarSet(n)};
  for (int round = 0; round < 1000; ++round) {
    Pass p{*this, entry, gen, {}, {}, nullptr};
    for (const auto& m : methods) p.method(m, empty);
    bool changed = false;
    for (const auto& m : methods) {
      InitState g = p.exits.count(m.qualifiedName) ? p.exits[m.qualifiedName] : top;
      if (!(g == gen[m.qualifiedName])) {
        gen[m.qualifiedName] = g;
        changed = true;
      }
    }
    if (!changed) break;
  }

  // Entry states: descending iteration from top for called methods.
  for (int round = 0; round < 1000; ++round) {
    Pass p{*this, entry, gen, {}, {}, nullptr};
    for (const auto& m : methods) p.method(m, entry[m.qualifiedName]);
    bool changed = false;
    for (const auto& m : methods) {
      InitState e = graph.isRoot(m.qualifiedName) ? base : top;
      if (!graph.isRoot(m.qualifiedName)) {
        auto it = p.callSiteStates.find(m.qualifiedName);
        if (it != p.callSiteStates.end()) e = it->second;
      }
      if (!(e == entry[m.qualifiedName])) {
        entry[m.qualifiedName] = e;
        changed = true;
      }
    }
    if (!changed) break;
  }

  Pass p{*this, entry, gen, {}, {}, &points_};
  for (const auto& m : methods) p.method(m, entry[m.qualifiedName]);
}

bool MustInit::reachable(const BlockAddress& block, std::size_t index) const {
  auto it = points_.find(block);
  if (it == points_.end() || index >= it->second.size()) return false;
  return it->second[index].reachable;
}

bool MustInit::initializedAt(const BlockAddress& block, std::size_t index, const std::string& key) const {
  auto it = points_.find(block);
  if (it == points_.end() || index >= it->second.size()) return false;
  const InitState& s = it->second[index];
  if (!s.reachable) return true;
  auto k = ids_.find(key);
  return k != ids_.end() && s.vars.test(k->second);
}

}  // namespace ipweave::analysis
