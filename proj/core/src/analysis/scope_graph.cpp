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

#include "ipweave/analysis/scope_graph.h"

#include <algorithm>
#include <deque>
#include <set>

#include <fmt/format.h>

#include "ipweave/error.h"

namespace ipweave::analysis {

using minilang::Block;
using minilang::BlockAddress;
using minilang::StmtKind;

namespace {

constexpr std::size_t kJoin = static_cast<std::size_t>(-1);
const std::vector<std::size_t> kNone;

bool callsProgram(const ProgramFacts& facts, const StmtFacts& f) {
  return std::any_of(f.calls.begin(), f.calls.end(),
                     [&](std::size_t c) { return !facts.callSites()[c].external(); });
}

BlockAddress child(const BlockAddress& a, std::size_t stmt, std::size_t blk) {
  BlockAddress c = a;
  c.nested.emplace_back(stmt, blk);
  return c;
}

}  // namespace

class FlowBuilder {
 public:
  FlowBuilder(const ProgramFacts& facts, ScopeGraph& g) : facts_(facts), g_(g) {}

  void segment(const std::string& method, const Block& b, const BlockAddress& addr) {
    std::size_t begin = 0;
    for (std::size_t i = 0; i < b.statements.size(); ++i) {
      const auto& st = b.statements[i];
      if (st.isCompound() || callsProgram(facts_, facts_.at(addr, i))) {
        add(method, addr, begin, i + 1);
        for (std::size_t k = 0; k < st.blocks.size(); ++k) segment(method, st.blocks[k], child(addr, i, k));
        begin = i + 1;
      }
    }
    add(method, addr, begin, b.statements.size());
  }

  void build() {
    succ_.assign(g_.nodes_.size(), {});
    nodeScope_.resize(g_.nodes_.size());
    for (std::size_t i = 0; i < nodeScope_.size(); ++i) nodeScope_[i] = i;
    std::map<std::string, std::vector<std::size_t>> exits;
    for (const auto& m : facts_.index().methods()) exits[m.qualifiedName] = runMethod(m, {});
    for (const auto& [callee, joins] : joins_)
      for (std::size_t j : joins)
        for (std::size_t e : exits[callee]) edge(e, j);

    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t s = 0; s < g_.nodes_.size(); ++s) {
      std::vector<bool> seen(succ_.size());
      std::vector<std::size_t> work(succ_[s].begin(), succ_[s].end());
      while (!work.empty()) {
        std::size_t n = work.back();
        work.pop_back();
        if (seen[n]) continue;
        seen[n] = true;
        if (nodeScope_[n] != kJoin)
          edges.emplace(s, nodeScope_[n]);
        else
          work.insert(work.end(), succ_[n].begin(), succ_[n].end());
      }
    }
    g_.control_.assign(edges.begin(), edges.end());
    g_.succ_.assign(g_.nodes_.size(), {});
    for (auto [a, b] : g_.control_) g_.succ_[a].push_back(b);
  }

 private:
  void add(const std::string& method, const BlockAddress& addr, std::size_t b, std::size_t e) {
    Scope s;
    s.method = method;
    s.block = addr;
    s.begin = b;
    s.end = e;
    auto& list = g_.byMethod_[method];
    s.ordinal = list.size();
    s.id = fmt::format("{}#{}", method, s.ordinal);
    std::size_t idx = g_.nodes_.size();
    list.push_back(idx);
    g_.byBlock_[addr].push_back(idx);
    g_.byId_.emplace(s.id, idx);
    g_.nodes_.push_back(std::move(s));
  }

  std::size_t newNode(std::size_t scope) {
    succ_.emplace_back();
    nodeScope_.push_back(scope);
    return succ_.size() - 1;
  }

  void edge(std::size_t a, std::size_t b) { succ_[a].push_back(b); }

  std::size_t entryScope(const std::string& method) const { return g_.byMethod_.at(method).front(); }

  // Calls return through a join node that every exit of the callee feeds.
  std::vector<std::size_t> call(const std::vector<std::size_t>& preds, const std::string& callee) {
    std::size_t e = entryScope(callee);
    for (std::size_t p : preds) edge(p, e);
    std::size_t j = newNode(kJoin);
    joins_[callee].push_back(j);
    return {j};
  }

  std::vector<std::size_t> runMethod(const MethodInfo& m, const std::vector<std::size_t>& preds) {
    std::vector<std::size_t> returns;
    std::vector<std::size_t> out = flowBlock(m.decl->body, m.body, preds, returns);
    out.insert(out.end(), returns.begin(), returns.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<std::size_t> flowBlock(const Block& b, const BlockAddress& addr, const std::vector<std::size_t>& preds,
                                     std::vector<std::size_t>& returns) {
    const auto& segs = g_.byBlock_.at(addr);
    std::size_t k = 0;
    std::size_t cur = segs[0];
    for (std::size_t p : preds) edge(p, cur);
    bool dead = false;
    for (std::size_t i = 0; i < b.statements.size(); ++i) {
      const auto& st = b.statements[i];
      const StmtFacts& f = facts_.at(addr, i);
      bool term = st.isCompound() || callsProgram(facts_, f);
      if (dead) {
        if (term) ++k;
        continue;
      }
      std::vector<std::size_t> p{cur};
      for (std::size_t cid : f.calls) {
        const CallSite& c = facts_.callSites()[cid];
        if (!c.external()) p = call(p, c.callee);
      }
      std::vector<std::size_t> out;
      if (st.kind == StmtKind::Return) {
        returns.insert(returns.end(), p.begin(), p.end());
        dead = true;
        if (term) ++k;
        continue;
      }
      if (!term) continue;
      if (st.kind == StmtKind::If) {
        out = flowBlock(st.blocks[0], child(addr, i, 0), p, returns);
        if (st.blocks.size() > 1) {
          auto e = flowBlock(st.blocks[1], child(addr, i, 1), p, returns);
          out.insert(out.end(), e.begin(), e.end());
        } else {
          out.insert(out.end(), p.begin(), p.end());
        }
      } else if (st.kind == StmtKind::While) {
        BlockAddress body = child(addr, i, 0);
        auto back = flowBlock(st.blocks[0], body, p, returns);
        std::size_t first = g_.byBlock_.at(body).front();
        for (std::size_t n : back) edge(n, first);
        out = p;
        out.insert(out.end(), back.begin(), back.end());
      } else {
        out = p;
      }
      ++k;
      cur = segs[k];
      for (std::size_t n : out) edge(n, cur);
    }
    if (dead) return {};
    return {cur};
  }

  const ProgramFacts& facts_;
  ScopeGraph& g_;
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<std::size_t> nodeScope_;
  std::map<std::string, std::vector<std::size_t>> joins_;
};

ScopeGraph ScopeGraph::build(const ProgramFacts& facts) {
  ScopeGraph g;
  FlowBuilder fb(facts, g);
  for (const auto& m : facts.index().methods()) fb.segment(m.qualifiedName, m.decl->body, m.body);
  fb.build();

  std::vector<std::set<std::string>> defs(g.nodes_.size()), uses(g.nodes_.size());
  for (std::size_t s = 0; s < g.nodes_.size(); ++s) {
    const Scope& sc = g.nodes_[s];
    for (std::size_t i = sc.begin; i < sc.end; ++i) {
      const StmtFacts& f = facts.at(sc.block, i);
      defs[s].insert(f.defs.begin(), f.defs.end());
      uses[s].insert(f.uses.begin(), f.uses.end());
    }
  }
  std::set<DataEdge> data;
  for (std::size_t a = 0; a < g.nodes_.size(); ++a) {
    if (defs[a].empty()) continue;
    for (std::size_t b = 0; b < g.nodes_.size(); ++b) {
      if (a == b) continue;
      for (const auto& v : defs[a]) {
        if (!uses[b].contains(v)) continue;
        if (!g.executesBefore(a, b)) continue;
        data.insert(DataEdge{a, b, facts.var(v).typeName, v});
      }
    }
  }
  g.data_.assign(data.begin(), data.end());
  return g;
}

std::optional<std::size_t> ScopeGraph::find(const ScopeId& id) const {
  auto it = byId_.find(id);
  if (it == byId_.end()) return std::nullopt;
  return it->second;
}

std::size_t ScopeGraph::indexOf(const ScopeId& id) const {
  auto s = find(id);
  if (!s) throw UnknownScope(id);
  return *s;
}

const std::vector<std::size_t>& ScopeGraph::scopesOf(const BlockAddress& block) const {
  auto it = byBlock_.find(block);
  return it == byBlock_.end() ? kNone : it->second;
}

const std::vector<std::size_t>& ScopeGraph::scopesOfMethod(const std::string& method) const {
  auto it = byMethod_.find(method);
  return it == byMethod_.end() ? kNone : it->second;
}

std::size_t ScopeGraph::scopeAt(const BlockAddress& block, std::size_t index) const {
  const auto& segs = scopesOf(block);
  if (segs.empty()) throw InvalidLocation("no such block");
  for (std::size_t s : segs)
    if (nodes_[s].begin <= index && index < nodes_[s].end) return s;
  const Scope& last = nodes_[segs.back()];
  if (index == last.end) return segs.back();
  throw InvalidLocation(fmt::format("statement index {} outside block", index));
}

bool ScopeGraph::executesBefore(std::size_t a, std::size_t b) const {
  if (a == b) return true;
  std::lock_guard lock(*cacheMu_);
  auto it = reachCache_.find(a);
  if (it == reachCache_.end()) {
    std::vector<bool> reached(nodes_.size());
    std::deque<std::size_t> work(succ_[a].begin(), succ_[a].end());
    while (!work.empty()) {
      std::size_t n = work.front();
      work.pop_front();
      if (reached[n]) continue;
      reached[n] = true;
      for (std::size_t s : succ_[n])
        if (!reached[s]) work.push_back(s);
    }
    it = reachCache_.emplace(a, std::move(reached)).first;
  }
  return it->second[b];
}

bool ScopeGraph::executesBefore(const ScopeId& a, const ScopeId& b) const {
  return executesBefore(indexOf(a), indexOf(b));
}

}  // namespace ipweave::analysis
