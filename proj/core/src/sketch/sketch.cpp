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

#include "ipweave/sketch/sketch.h"

#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>

#include "ipweave/error.h"

namespace ipweave::sketch {

const SketchStatement* Sketch::statementOf(int nodeId) const {
  for (const auto& s : statements)
    if (s.apiNodeId == nodeId) return &s;
  return nullptr;
}

int Sketch::tempOf(int nodeId) const {
  const auto* s = statementOf(nodeId);
  return s ? s->resultTemp : 0;
}

namespace {

std::vector<int> topoOrder(const fspec::Cluster& c) {
  std::map<int, int> indeg;
  std::map<int, std::vector<int>> succ;
  for (int id : c.memberIds) indeg[id] = 0;
  for (const auto& e : c.internalEdges) {
    if (!indeg.count(e.src) || !indeg.count(e.dst)) continue;
    succ[e.src].push_back(e.dst);
    ++indeg[e.dst];
  }
  std::set<int> ready;
  for (auto [id, d] : indeg)
    if (d == 0) ready.insert(id);
  std::vector<int> out;
  while (!ready.empty()) {
    int id = *ready.begin();
    ready.erase(ready.begin());
    out.push_back(id);
    for (int s : succ[id])
      if (--indeg[s] == 0) ready.insert(s);
  }
  if (out.size() != indeg.size()) throw CyclicClusterError(c.id);
  return out;
}

}  // namespace

Sketch generateSketch(const fspec::FSpec& spec, const fspec::Branch& branch, int clusterId, int firstHoleId) {
  const fspec::Cluster& cluster = branch.cluster(clusterId);
  Sketch sk;
  sk.clusterId = clusterId;
  std::set<int> members(cluster.memberIds.begin(), cluster.memberIds.end());

  // (dst, position) -> src for every data edge of the branch
  std::map<std::pair<int, int>, int> feeders;
  for (const auto& [edge, pos] : branch.bindings) feeders[{edge.second, pos}] = edge.first;

  int nextTemp = 1;
  int nextHole = firstHoleId;
  for (int id : topoOrder(cluster)) {
    const fspec::ApiNode& node = spec.node(id);
    SketchStatement st;
    st.apiNodeId = id;
    if (node.kind == fspec::NodeKind::Constructor) {
      auto concrete = spec.concreteType(node.ownerType);
      if (!concrete) throw AbstractConstructorError(node.ownerType);
      st.instantiated = *concrete;
    }
    const std::size_t index = sk.statements.size();
    auto fill = [&](int position, const std::string& type, fspec::SlotRole role) {
      auto it = feeders.find({id, position});
      if (it != feeders.end() && members.count(it->second)) {
        int t = sk.tempOf(it->second);
        if (t == 0) throw CyclicClusterError(clusterId);
        return SlotValue::ofTemp(t);
      }
      Hole h;
      h.holeId = nextHole++;
      h.typeName = type;
      h.statementIndex = index;
      h.slotPosition = position;
      h.role = role;
      h.nodeId = id;
      if (it != feeders.end()) h.producerNode = it->second;
      sk.holes.push_back(h);
      return SlotValue::ofHole(h.holeId);
    };
    if (node.kind == fspec::NodeKind::Instance) st.target = fill(-1, node.ownerType, fspec::SlotRole::Target);
    for (std::size_t i = 0; i < node.paramTypes.size(); ++i)
      st.args.push_back(fill(static_cast<int>(i), node.paramTypes[i], fspec::SlotRole::Argument));
    std::string produced = node.producedType();
    if (!produced.empty()) {
      st.resultTemp = nextTemp++;
      st.resultType = produced;
    }
    sk.statements.push_back(std::move(st));
  }
  return sk;
}

std::vector<Sketch> generateSketches(const fspec::FSpec& spec, const fspec::Branch& branch) {
  std::vector<Sketch> out;
  int next = 1;
  for (const auto& c : branch.clusters) {
    out.push_back(generateSketch(spec, branch, c.id, next));
    next += static_cast<int>(out.back().holes.size());
  }
  return out;
}

std::string renderSketch(const fspec::FSpec& spec, const fspec::Branch& branch, const Sketch& sketch) {
  std::map<int, const Hole*> holes;
  for (const auto& h : sketch.holes) holes[h.holeId] = &h;
  auto slot = [&](const SlotValue& v) -> std::string {
    if (v.kind == SlotKind::Temp) return fmt::format("t{}", v.temp);
    if (v.kind == SlotKind::Hole) return fmt::format("?{}:{}", v.hole, holes.at(v.hole)->typeName);
    return "";
  };
  std::string out = fmt::format("cluster {} {}\n", sketch.clusterId, branch.cluster(sketch.clusterId).label);
  for (const auto& st : sketch.statements) {
    const fspec::ApiNode& node = spec.node(st.apiNodeId);
    std::string args;
    for (std::size_t i = 0; i < st.args.size(); ++i) args += (i ? ", " : "") + slot(st.args[i]);
    std::string call;
    switch (node.kind) {
      case fspec::NodeKind::Constructor: call = fmt::format("new {}({})", st.instantiated, args); break;
      case fspec::NodeKind::Static: call = fmt::format("{}.{}({})", node.ownerType, node.memberName, args); break;
      case fspec::NodeKind::Instance: call = fmt::format("{}.{}({})", slot(st.target), node.memberName, args); break;
    }
    if (st.resultTemp)
      out += fmt::format("  {} t{} = {};\n", st.resultType, st.resultTemp, call);
    else
      out += fmt::format("  {};\n", call);
  }
  return out;
}

}  // namespace ipweave::sketch
