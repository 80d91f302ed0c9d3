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

#include "ipweave/fspec/clustering.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "ipweave/error.h"
#include "ipweave/fspec/levenshtein.h"

namespace ipweave::fspec {

const Cluster& Branch::cluster(int id) const {
  for (const auto& c : clusters)
    if (c.id == id) return c;
  throw UnknownCluster(id);
}

int Branch::clusterOf(int nodeId) const {
  for (const auto& c : clusters)
    if (std::find(c.memberIds.begin(), c.memberIds.end(), nodeId) != c.memberIds.end()) return c.id;
  return -1;
}

std::string stripAnnotation(const std::string& annotation) {
  return !annotation.empty() && annotation.front() == '#' ? annotation.substr(1) : annotation;
}

std::size_t annotationDistance(const std::string& a, const std::string& b) {
  return levenshtein(stripAnnotation(a), stripAnnotation(b));
}

namespace {

void bindSlots(const FSpec& spec, Branch& b) {
  for (int dst : b.nodeIds) {
    std::vector<const ApiEdge*> incoming;
    for (const auto& e : b.edges)
      if (e.dst == dst && e.kind == EdgeKind::Data) incoming.push_back(&e);
    std::sort(incoming.begin(), incoming.end(), [](const ApiEdge* x, const ApiEdge* y) { return x->src < y->src; });
    auto slots = signatureSlots(spec, spec.node(dst));
    std::vector<bool> used(slots.size());
    for (const ApiEdge* e : incoming) {
      if (b.bindings.contains({e->src, e->dst})) continue;
      std::string type = spec.canonical(spec.node(e->src).producedType());
      bool bound = false;
      for (std::size_t i = 0; i < slots.size() && !bound; ++i) {
        if (used[i] || slots[i].typeName != type) continue;
        used[i] = true;
        b.bindings[{e->src, e->dst}] = slots[i].position;
        bound = true;
      }
      if (!bound)
        throw FormatError(0, fmt::format("data edge {} -> {} carries {} but node {} has no free slot of that type",
                                         e->src, e->dst, type, dst));
    }
  }
}

std::string pickLabel(const std::vector<std::string>& annotations) {
  std::string best;
  std::size_t bestSum = 0;
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    std::size_t sum = 0;
    for (std::size_t j = 0; j < annotations.size(); ++j)
      if (i != j) sum += annotationDistance(annotations[i], annotations[j]);
    if (i == 0 || sum < bestSum || (sum == bestSum && annotations[i] < best)) {
      best = annotations[i];
      bestSum = sum;
    }
  }
  return best;
}

}  // namespace

std::vector<Branch> enumerateBranches(const FSpec& spec) {
  std::map<int, std::set<int>> succ;
  std::map<std::pair<int, int>, int> stepFreq;
  for (const auto& e : spec.edges) {
    succ[e.src].insert(e.dst);
    int& f = stepFreq[{e.src, e.dst}];
    f = std::max(f, e.freq);
  }
  std::set<int> ends(spec.endIds.begin(), spec.endIds.end());
  std::set<std::vector<int>> paths;
  std::vector<int> path;
  auto dfs = [&](auto&& self, int n) -> void {
    path.push_back(n);
    if (ends.contains(n)) paths.insert(path);
    for (int s : succ[n]) self(self, s);
    path.pop_back();
  };
  for (int s : std::set<int>(spec.startIds.begin(), spec.startIds.end())) dfs(dfs, s);

  std::vector<Branch> out;
  for (const auto& p : paths) {
    Branch b;
    b.nodeIds = p;
    for (std::size_t i = 1; i < p.size(); ++i) b.weight += stepFreq[{p[i - 1], p[i]}];
    std::set<int> on(p.begin(), p.end());
    for (const auto& e : spec.edges)
      if (on.contains(e.src) && on.contains(e.dst)) b.edges.push_back(e);
    bindSlots(spec, b);
    out.push_back(std::move(b));
  }
  std::stable_sort(out.begin(), out.end(), [](const Branch& x, const Branch& y) {
    if (x.weight != y.weight) return x.weight > y.weight;
    return x.nodeIds < y.nodeIds;
  });
  return out;
}

Clustering clusterAnnotations(const std::vector<std::pair<int, std::string>>& annotated, std::size_t tau) {
  const std::size_t n = annotated.size();
  for (const auto& [id, a] : annotated)
    if (stripAnnotation(a).empty()) throw MissingAnnotation(id);

  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      pairs.emplace_back(annotationDistance(annotated[i].second, annotated[j].second), i, j);
  std::sort(pairs.begin(), pairs.end());

  std::vector<bool> used(n);
  std::vector<std::vector<int>> groups;
  for (auto [d, i, j] : pairs) {
    if (d > tau) break;
    if (used[i] || used[j]) continue;
    used[i] = used[j] = true;
    groups.push_back({static_cast<int>(i), static_cast<int>(j)});
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!used[i]) groups.push_back({static_cast<int>(i)});
  std::sort(groups.begin(), groups.end());

  auto labelOf = [&](const std::vector<int>& g) {
    std::vector<std::string> anns;
    for (int i : g) anns.push_back(annotated[i].second);
    return pickLabel(anns);
  };

  Clustering c;
  c.groups = groups;
  for (const auto& g : groups) c.labels.push_back(labelOf(g));

  std::vector<std::vector<int>> cur = groups;
  std::vector<std::string> labels = c.labels;
  while (cur.size() > 1) {
    std::size_t bestA = 0, bestB = 0, bestD = 0;
    bool found = false;
    for (std::size_t a = 0; a < cur.size(); ++a)
      for (std::size_t b = a + 1; b < cur.size(); ++b) {
        std::size_t d = annotationDistance(labels[a], labels[b]);
        if (!found || d < bestD) {
          found = true;
          bestA = a;
          bestB = b;
          bestD = d;
        }
      }
    if (bestD > tau) break;
    std::vector<int> merged = cur[bestA];
    merged.insert(merged.end(), cur[bestB].begin(), cur[bestB].end());
    std::sort(merged.begin(), merged.end());
    MergeStep step{cur[bestA], cur[bestB], labelOf(merged), bestD};
    c.hierarchy.push_back(step);
    cur[bestA] = merged;
    labels[bestA] = step.label;
    cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(bestB));
    labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(bestB));
  }
  return c;
}

void clusterBranch(const FSpec& spec, Branch& branch, std::size_t tau) {
  std::vector<std::pair<int, std::string>> annotated;
  for (int id : branch.nodeIds) annotated.emplace_back(id, spec.node(id).annotation);
  Clustering cl = clusterAnnotations(annotated, tau);

  auto toIds = [&](const std::vector<int>& g) {
    std::vector<int> ids;
    for (int i : g) ids.push_back(branch.nodeIds[static_cast<std::size_t>(i)]);
    return ids;
  };
  branch.clusters.clear();
  branch.interClusterEdges.clear();
  branch.hierarchy.clear();
  for (std::size_t k = 0; k < cl.groups.size(); ++k) {
    Cluster c;
    c.id = static_cast<int>(k);
    c.label = cl.labels[k];
    c.memberIds = toIds(cl.groups[k]);
    branch.clusters.push_back(std::move(c));
  }
  for (auto& c : branch.clusters) {
    std::set<int> members(c.memberIds.begin(), c.memberIds.end());
    std::set<std::pair<int, int>> fed;
    for (const auto& e : branch.edges) {
      if (!members.contains(e.src) || !members.contains(e.dst)) continue;
      c.internalEdges.push_back(e);
      if (e.kind == EdgeKind::Data) fed.emplace(e.dst, branch.bindings.at({e.src, e.dst}));
    }
    for (int id : c.memberIds)
      for (const auto& s : signatureSlots(spec, spec.node(id)))
        if (!fed.contains({s.nodeId, s.position})) c.slots.push_back(s);
  }
  for (const auto& e : branch.edges) {
    int a = branch.clusterOf(e.src);
    int b = branch.clusterOf(e.dst);
    if (a == b) continue;
    InterClusterEdge ie;
    ie.srcCluster = a;
    ie.dstCluster = b;
    ie.kind = e.kind;
    ie.srcNode = e.src;
    ie.dstNode = e.dst;
    if (e.kind == EdgeKind::Data) {
      ie.typeName = spec.canonical(spec.node(e.src).producedType());
      ie.dstPosition = branch.bindings.at({e.src, e.dst});
    }
    branch.interClusterEdges.push_back(std::move(ie));
  }
  for (const auto& m : cl.hierarchy) branch.hierarchy.push_back(MergeStep{toIds(m.left), toIds(m.right), m.label, m.distance});
}

std::vector<Branch> prepareBranches(const FSpec& spec, std::size_t tau) {
  auto branches = enumerateBranches(spec);
  for (auto& b : branches) clusterBranch(spec, b, tau);
  return branches;
}

std::vector<int> clusterOrder(const Branch& branch) {
  std::map<int, int> indeg;
  std::map<int, std::set<int>> succ;
  for (const auto& c : branch.clusters) indeg[c.id] = 0;
  for (const auto& e : branch.interClusterEdges)
    if (succ[e.srcCluster].insert(e.dstCluster).second) ++indeg[e.dstCluster];
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
  if (out.size() != indeg.size()) throw CyclicClusterError(indeg.begin()->first);
  return out;
}

}  // namespace ipweave::fspec
