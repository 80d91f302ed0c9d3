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

#include "ipweave/annotator/channels.h"

#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>

namespace ipweave::annotator {

using minilang::StmtKind;

const char* channelName(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::LocalTemp: return "localTemp";
    case ChannelKind::ReturnValue: return "returnValue";
    case ChannelKind::ExistingField: return "existingField";
    case ChannelKind::FreshField: return "freshField";
  }
  return "?";
}

bool tempVisible(const Context& ctx, const Location& producer, const Location& consumer) {
  if (producer.methodQName != consumer.methodQName) return false;
  auto [pa, pi] = ctx.analysis().resolve(producer);
  auto [ca, ci] = ctx.analysis().resolve(consumer);
  if (pa.nested.size() > ca.nested.size() || !std::equal(pa.nested.begin(), pa.nested.end(), ca.nested.begin()))
    return false;
  if (pa.nested.size() == ca.nested.size()) return pi <= ci;
  return pi <= ca.nested[pa.nested.size()].first;
}

namespace {

std::size_t countReturns(const minilang::Block& b) {
  std::size_t n = 0;
  for (const auto& s : b.statements) {
    if (s.kind == StmtKind::Return) ++n;
    for (const auto& sub : s.blocks) n += countReturns(sub);
  }
  return n;
}

// The single trailing `return e;` of the producer's method can hand back the
// temp when the caller already stores that method's result in a variable the
// consumer sees.
std::optional<std::string> returnChannel(const Context& ctx, const Location& lp, const Location& lc,
                                         const std::string& type) {
  if (lp.methodQName == lc.methodQName) return std::nullopt;
  const auto& an = ctx.analysis();
  const auto* m = an.index().findMethod(lp.methodQName);
  if (ctx.canonical(an.index().resolveType(m->decl->returnType, m->classQName)) != type) return std::nullopt;
  auto [block, index] = an.resolve(lp);
  const auto& body = m->decl->body.statements;
  if (!block.nested.empty() || body.empty() || body.back().kind != StmtKind::Return || !body.back().expr ||
      countReturns(m->decl->body) != 1 || index >= body.size())
    return std::nullopt;

  int line = an.anchorLine(lc);
  std::optional<VarInfo> best;
  auto key = [&](const VarInfo& v) { return std::make_tuple(v.tier, std::abs(v.declLine - line), v.name); };
  for (const auto& v : ctx.available(lc, type)) {
    if (!an.facts().pointsTo(v.key).contains(analysis::retNode(m->qualifiedName))) continue;
    if (!best || key(v) < key(*best)) best = v;
  }
  if (!best) return std::nullopt;
  return best->name;
}

std::string topLevelClass(const Context& ctx, const std::string& method) {
  const auto* m = ctx.analysis().index().findMethod(method);
  return ctx.analysis().index().classChain(m->classQName).back()->qualifiedName;
}

}  // namespace

std::optional<std::vector<ChannelPlan>> planChannels(const Context& ctx, const fspec::Branch& branch,
                                                     const std::vector<Location>& placements) {
  const auto& an = ctx.analysis();
  std::vector<ChannelPlan> out;
  std::map<int, ChannelPlan> fieldOf;           // producer node -> field channel
  std::map<std::string, int> returnPatched;     // method -> producer node
  std::set<std::string> takenFields;            // existing field keys
  std::map<std::string, std::set<std::string>> freshNames;  // class -> names

  for (const auto& e : branch.interClusterEdges) {
    if (e.kind != fspec::EdgeKind::Data) continue;
    const Location& lp = placements.at(static_cast<std::size_t>(e.srcCluster));
    const Location& lc = placements.at(static_cast<std::size_t>(e.dstCluster));
    ChannelPlan plan;
    plan.producerCluster = e.srcCluster;
    plan.consumerCluster = e.dstCluster;
    plan.producerNode = e.srcNode;
    plan.consumerNode = e.dstNode;
    plan.consumerPosition = e.dstPosition;
    plan.carriedType = e.typeName;

    if (tempVisible(ctx, lp, lc)) {
      plan.mechanism = ChannelKind::LocalTemp;
      out.push_back(plan);
      continue;
    }
    auto patched = returnPatched.find(lp.methodQName);
    if (patched == returnPatched.end() || patched->second == e.srcNode) {
      if (auto v = returnChannel(ctx, lp, lc, e.typeName)) {
        plan.mechanism = ChannelKind::ReturnValue;
        plan.variable = *v;
        plan.owner = lp.methodQName;
        returnPatched[lp.methodQName] = e.srcNode;
        out.push_back(plan);
        continue;
      }
    }
    if (!an.definitelyReaches(lp, lc)) return std::nullopt;

    if (auto it = fieldOf.find(e.srcNode); it != fieldOf.end()) {
      ChannelPlan shared = it->second;
      if (shared.mechanism == ChannelKind::ExistingField) {
        const auto& vis = ctx.visibleVars(lc);
        bool seen = std::any_of(vis.begin(), vis.end(), [&](const VarInfo& v) {
          return v.name == shared.variable && v.ownerClass == shared.owner;
        });
        if (!seen) return std::nullopt;
      }
      shared.consumerCluster = e.dstCluster;
      shared.consumerNode = e.dstNode;
      shared.consumerPosition = e.dstPosition;
      shared.qualified = shared.mechanism == ChannelKind::FreshField && topLevelClass(ctx, lc.methodQName) != shared.owner;
      out.push_back(shared);
      continue;
    }

    std::optional<VarInfo> existing;
    const auto& atConsumer = ctx.visibleVars(lc);
    for (const auto& v : ctx.visibleVars(lp)) {
      if (v.originKind != analysis::OriginKind::Field && v.originKind != analysis::OriginKind::StaticField) continue;
      if (ctx.canonical(v.typeName) != e.typeName || takenFields.contains(v.key)) continue;
      if (an.facts().assigned().contains(v.key) || an.facts().var(v.key).hasInitializer) continue;
      if (std::none_of(atConsumer.begin(), atConsumer.end(), [&](const VarInfo& c) { return c.key == v.key; }))
        continue;
      if (!existing || v.name < existing->name) existing = v;
    }
    if (existing) {
      plan.mechanism = ChannelKind::ExistingField;
      plan.variable = existing->name;
      plan.owner = existing->ownerClass;
      takenFields.insert(existing->key);
    } else {
      plan.mechanism = ChannelKind::FreshField;
      plan.owner = topLevelClass(ctx, lp.methodQName);
      const auto* cls = an.index().findClass(plan.owner);
      std::set<std::string>& names = freshNames[plan.owner];
      std::string simple = analysis::ProgramIndex::simpleTypeName(e.typeName);
      for (int k = 1;; ++k) {
        std::string name = fmt::format("ip_{}_{}", simple, k);
        bool clash = names.contains(name) ||
                     std::any_of(cls->decl->fields.begin(), cls->decl->fields.end(),
                                 [&](const minilang::FieldDecl& f) { return f.name == name; });
        if (!clash) {
          plan.variable = name;
          names.insert(name);
          break;
        }
      }
      plan.qualified = topLevelClass(ctx, lc.methodQName) != plan.owner;
    }
    fieldOf[e.srcNode] = plan;
    out.push_back(plan);
  }
  return out;
}

}  // namespace ipweave::annotator
