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

#include "ipweave/weave/weaver.h"

#include <algorithm>
#include <functional>
#include <set>

#include <fmt/format.h>

#include "ipweave/error.h"
#include "ipweave/minilang/emitter.h"
#include "ipweave/minilang/parser.h"

namespace ipweave::weave {

using annotator::ChannelKind;
using minilang::Expr;
using minilang::Statement;

minilang::Expr qualifiedExpr(const std::string& dotted) {
  std::size_t dot = dotted.find('.');
  Expr e = Expr::name(dotted.substr(0, dot));
  while (dot != std::string::npos) {
    std::size_t next = dotted.find('.', dot + 1);
    e = Expr::fieldAccess(std::move(e), dotted.substr(dot + 1, next - dot - 1));
    dot = next;
  }
  return e;
}

std::vector<int> weaveOrder(const fspec::Branch& branch) { return fspec::clusterOrder(branch); }

namespace {

void collectNames(const minilang::Block& b, std::set<std::string>& names) {
  for (const auto& s : b.statements) {
    if (s.kind == minilang::StmtKind::LocalDecl) names.insert(s.name);
    for (const auto& sub : s.blocks) collectNames(sub, names);
  }
}

void collectNames(const minilang::ClassDecl& c, std::set<std::string>& names) {
  for (const auto& f : c.fields) names.insert(f.name);
  for (const auto& m : c.methods) {
    for (const auto& p : m.params) names.insert(p.name);
    collectNames(m.body, names);
  }
  for (const auto& inner : c.innerClasses) collectNames(inner, names);
}

std::string fmtScore(double v) { return fmt::format("{:.4f}", v); }

}  // namespace

SynthesisResult weave(const annotator::Context& ctx, const fspec::Branch& branch, const annotator::MappingSet& set,
                      const std::vector<sketch::Sketch>& sketches,
                      const std::vector<annotator::ChannelPlan>& channels, const resolve::Resolution& resolution) {
  const auto& an = ctx.analysis();
  const auto& spec = ctx.spec();
  minilang::MiniProgram prog = an.program();
  SynthesisResult result;
  WeaveReport& rep = result.report;
  rep.set = set;
  rep.channels = channels;
  rep.resolution = resolution;

  for (const auto& e : branch.interClusterEdges) {
    if (e.kind != fspec::EdgeKind::Data) continue;
    bool found = std::any_of(channels.begin(), channels.end(), [&](const annotator::ChannelPlan& p) {
      return p.producerNode == e.srcNode && p.consumerNode == e.dstNode && p.consumerPosition == e.dstPosition;
    });
    if (!found) throw ChannelFailure(fmt::format("no channel carries {} from node {} to node {}", e.typeName,
                                                 e.srcNode, e.dstNode));
  }

  std::map<int, const sketch::Sketch*> sketchOf;
  for (const auto& sk : sketches) sketchOf[sk.clusterId] = &sk;
  const std::vector<int> order = weaveOrder(branch);

  // Collision-free temp names.
  std::set<std::string> taken;
  for (const auto& f : prog.files)
    for (const auto& c : f.classes) collectNames(c, taken);
  for (const auto& p : channels)
    if (p.mechanism == ChannelKind::FreshField) taken.insert(p.variable);
  int counter = 0;
  std::map<std::pair<int, int>, std::string> tempName;  // (cluster, temp)
  for (int cid : order) {
    const auto* sk = sketchOf.at(cid);
    for (const auto& st : sk->statements) {
      if (!st.resultTemp) continue;
      std::string name;
      do name = fmt::format("ip_v{}", ++counter);
      while (taken.contains(name));
      taken.insert(name);
      tempName[{cid, st.resultTemp}] = name;
      rep.tempNames[fmt::format("T:{}:{}", cid, st.resultTemp)] = name;
    }
  }

  auto holeExpr = [&](int holeId) -> Expr {
    auto it = resolution.assignment.find(holeId);
    if (it == resolution.assignment.end()) throw WeaveConflict(fmt::format("hole {} has no variable", holeId));
    const resolve::Candidate& c = it->second;
    if (auto t = rep.tempNames.find(c.key); t != rep.tempNames.end()) return Expr::name(t->second);
    return qualifiedExpr(c.name);
  };

  struct Insertion {
    minilang::BlockAddress block;
    std::size_t index;
    std::size_t seq;
    std::vector<Statement> stmts;
  };
  std::vector<Insertion> inserts;
  std::set<int> exportedNodes;

  for (std::size_t seq = 0; seq < order.size(); ++seq) {
    const int cid = order[seq];
    const auto* sk = sketchOf.at(cid);
    const auto& loc = set.mappings.at(static_cast<std::size_t>(cid)).location;
    std::pair<minilang::BlockAddress, std::size_t> point;
    try {
      point = an.resolve(loc);
    } catch (const InvalidLocation& e) {
      throw WeaveConflict(fmt::format("cluster {}: {}", cid, e.what()));
    }
    auto& [block, index] = point;
    Insertion ins{block, index, seq, {}};
    for (const auto& st : sk->statements) {
      const fspec::ApiNode& node = spec.node(st.apiNodeId);
      auto slot = [&](const sketch::SlotValue& v) -> Expr {
        if (v.kind == sketch::SlotKind::Temp) return Expr::name(tempName.at({cid, v.temp}));
        return holeExpr(v.hole);
      };
      std::vector<Expr> args;
      for (const auto& a : st.args) args.push_back(slot(a));
      Expr call;
      switch (node.kind) {
        case fspec::NodeKind::Constructor: call = Expr::newObject(st.instantiated, std::move(args)); break;
        case fspec::NodeKind::Static:
          call = Expr::call(qualifiedExpr(node.ownerType), node.memberName, std::move(args));
          break;
        case fspec::NodeKind::Instance: call = Expr::call(slot(st.target), node.memberName, std::move(args)); break;
      }
      if (!st.resultTemp) {
        ins.stmts.push_back(Statement::exprStatement(std::move(call)));
        continue;
      }
      const std::string& temp = tempName.at({cid, st.resultTemp});
      ins.stmts.push_back(Statement::localDecl(st.resultType, temp, std::move(call)));
      for (const auto& p : channels) {
        if (p.producerNode != st.apiNodeId) continue;
        if (p.mechanism == ChannelKind::ExistingField || p.mechanism == ChannelKind::FreshField) {
          if (exportedNodes.insert(p.producerNode).second)
            ins.stmts.push_back(Statement::assign(Expr::name(p.variable), Expr::name(temp)));
        } else if (p.mechanism == ChannelKind::ReturnValue && exportedNodes.insert(p.producerNode).second) {
          const auto* m = an.index().findMethod(p.owner);
          auto& body = minilang::resolveBlock(prog, m->body);
          if (body.statements.empty() || body.statements.back().kind != minilang::StmtKind::Return)
            throw WeaveConflict("return channel without a trailing return in " + p.owner);
          body.statements.back().expr = Expr::name(temp);
        }
      }
    }
    inserts.push_back(std::move(ins));

    Placement pl;
    pl.clusterId = cid;
    pl.label = branch.cluster(cid).label;
    pl.location = loc;
    pl.file = an.program().files.at(block.file).path;
    pl.line = an.anchorLine(loc);
    const auto& m = set.mappings.at(static_cast<std::size_t>(cid));
    pl.mns = m.mns;
    pl.vas = m.vas;
    pl.cls = m.cls;
    rep.placements.push_back(pl);
  }
  std::sort(rep.placements.begin(), rep.placements.end(),
            [](const Placement& a, const Placement& b) { return a.clusterId < b.clusterId; });
  for (const auto& sk : sketches) rep.sketches.push_back(sketch::renderSketch(spec, branch, sk));

  // Fresh fields, once per name, after the existing fields.
  std::set<std::pair<std::string, std::string>> declared;
  for (const auto& p : channels) {
    if (p.mechanism != ChannelKind::FreshField || !declared.insert({p.owner, p.variable}).second) continue;
    const auto* ci = an.index().findClass(p.owner);
    auto& cls = minilang::resolveClass(prog, ci->file, ci->classPath);
    minilang::FieldDecl f;
    f.name = p.variable;
    f.typeName = p.carriedType;
    bool crossClass = std::any_of(channels.begin(), channels.end(), [&](const annotator::ChannelPlan& q) {
      return q.owner == p.owner && q.variable == p.variable && q.qualified;
    });
    f.modifiers = crossClass ? std::vector<std::string>{"static"} : std::vector<std::string>{"private", "static"};
    std::size_t pos = 0;
    for (std::size_t i = 0; i < cls.order.size(); ++i)
      if (cls.order[i].first == minilang::MemberKind::Field) pos = i + 1;
    cls.order.insert(cls.order.begin() + static_cast<std::ptrdiff_t>(pos),
                     {minilang::MemberKind::Field, cls.fields.size()});
    cls.fields.push_back(std::move(f));
  }

  // Later points first so earlier indices stay valid; one point keeps weave order.
  std::map<std::pair<minilang::BlockAddress, std::size_t>, std::vector<const Insertion*>> byPoint;
  for (const auto& ins : inserts) byPoint[{ins.block, ins.index}].push_back(&ins);
  for (auto it = byPoint.rbegin(); it != byPoint.rend(); ++it) {
    std::vector<Statement> stmts;
    for (const auto* ins : it->second) stmts.insert(stmts.end(), ins->stmts.begin(), ins->stmts.end());
    try {
      prog = minilang::insertStatements(prog, it->first.first, it->first.second, std::move(stmts));
    } catch (const InvalidLocation& e) {
      throw WeaveConflict(e.what());
    }
  }

  result.files = minilang::emitProgram(prog);
  std::vector<std::pair<std::string, std::string>> sources(result.files.begin(), result.files.end());
  result.program = minilang::parseSources(sources, prog.rootDir);
  return result;
}

std::string SynthesisResult::reportText() const {
  const auto& s = report.set;
  std::string out = fmt::format("rank {} branch {}\nCAS {}  CDS {}  CQS {}  meanCLS {}\n\nplacements\n", report.rank,
                                s.branchId, fmtScore(s.cas), s.cds, fmtScore(s.cqs), fmtScore(s.meanCls));
  for (const auto& p : report.placements)
    out += fmt::format("  cluster {} {:<22} {}:{}  {}  MNS {} VAS {} CLS {}\n", p.clusterId, p.label, p.file, p.line,
                       p.location.methodQName, fmtScore(p.mns), fmtScore(p.vas), fmtScore(p.cls));
  out += "\nchannels\n";
  if (report.channels.empty()) out += "  none\n";
  for (const auto& c : report.channels)
    out += fmt::format("  cluster {} -> cluster {}  {} via {}{}\n", c.producerCluster, c.consumerCluster,
                       c.carriedType, annotator::channelName(c.mechanism),
                       c.variable.empty() ? "" : " " + c.variable);
  out += "\nsketches\n";
  for (const auto& sk : report.sketches) out += sk;
  out += "\nresolution\n";
  for (const auto& [hole, c] : report.resolution.assignment) {
    auto t = report.tempNames.find(c.key);
    out += fmt::format("  ?{} := {}\n", hole, t != report.tempNames.end() ? t->second : c.name);
  }
  out += fmt::format("  distinct variables {}\n", report.resolution.distinctCount);
  return out;
}

std::string SynthesisResult::reportRec() const {
  const auto& s = report.set;
  std::string out = fmt::format("branch {} rank={}\n", s.branchId, report.rank);
  out += fmt::format("score cas={} cds={} cqs={}\n", fmtScore(s.cas), s.cds, fmtScore(s.cqs));
  for (const auto& p : report.placements) out += fmt::format("placement {} {} {}\n", p.clusterId, p.file, p.line);
  for (const auto& c : report.channels)
    out += fmt::format("channel {} {} {}\n", c.producerCluster, c.consumerCluster, annotator::channelName(c.mechanism));
  for (const auto& [hole, c] : report.resolution.assignment) {
    auto t = report.tempNames.find(c.key);
    out += fmt::format("assign {} {}\n", hole, t != report.tempNames.end() ? t->second : c.name);
  }
  return out;
}

}  // namespace ipweave::weave
