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

#include "ipweave/resolve/resolver.h"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

#include <fmt/format.h>

#include "ipweave/error.h"

namespace ipweave::resolve {

using annotator::ChannelKind;

Candidate channelCandidate(const annotator::ChannelPlan& plan, const std::vector<sketch::Sketch>& sketches) {
  Candidate c;
  c.typeName = plan.carriedType;
  c.source = CandidateSource::Channel;
  switch (plan.mechanism) {
    case ChannelKind::LocalTemp: {
      int temp = 0;
      for (const auto& sk : sketches)
        if (sk.clusterId == plan.producerCluster) temp = sk.tempOf(plan.producerNode);
      c.name = fmt::format("t{}", temp);
      c.key = fmt::format("T:{}:{}", plan.producerCluster, temp);
      break;
    }
    case ChannelKind::ReturnValue:
      c.name = plan.variable;
      c.key = fmt::format("R:{}:{}", plan.owner, plan.variable);
      break;
    case ChannelKind::ExistingField:
    case ChannelKind::FreshField:
      c.name = plan.qualified ? plan.owner + "." + plan.variable : plan.variable;
      c.key = fmt::format("F:{}:{}", plan.owner, plan.variable);
      break;
  }
  return c;
}

std::vector<CandidateList> buildCandidates(const annotator::Context& ctx, const fspec::Branch& branch,
                                           const std::vector<sketch::Sketch>& sketches,
                                           const annotator::MappingSet& set,
                                           const std::vector<annotator::ChannelPlan>& channels) {
  std::vector<CandidateList> out;
  std::map<int, std::size_t> position;
  const auto order = fspec::clusterOrder(branch);
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
  for (const auto& sk : sketches) {
    const auto& loc = set.mappings.at(static_cast<std::size_t>(sk.clusterId)).location;
    const int line = ctx.analysis().anchorLine(loc);
    for (const auto& h : sk.holes) {
      CandidateList list;
      list.holeId = h.holeId;
      list.typeName = ctx.canonical(h.typeName);
      if (h.producerNode != 0) {
        for (const auto& p : channels)
          if (p.producerNode == h.producerNode && p.consumerNode == h.nodeId && p.consumerPosition == h.slotPosition)
            list.candidates.push_back(channelCandidate(p, sketches));
      } else {
        std::set<std::string> keys;
        for (const auto& v : ctx.available(loc, list.typeName)) {
          Candidate c;
          c.name = v.name;
          c.typeName = list.typeName;
          c.key = v.key;
          c.tier = v.tier;
          c.distance = std::abs(v.declLine - line);
          keys.insert(c.key);
          list.candidates.push_back(std::move(c));
        }
        // Values other snippets export, when they reach this hole.
        for (const auto& p : channels) {
          if (p.carriedType != list.typeName || p.mechanism == ChannelKind::ReturnValue) continue;
          const auto& from = set.mappings.at(static_cast<std::size_t>(p.producerCluster)).location;
          if (p.producerCluster == sk.clusterId) continue;
          bool reaches = p.mechanism == ChannelKind::LocalTemp
                             ? annotator::tempVisible(ctx, from, loc) &&
                                   (from != loc || position[p.producerCluster] < position[sk.clusterId])
                             : ctx.analysis().definitelyReaches(from, loc);
          if (!reaches) continue;
          Candidate c = channelCandidate(p, sketches);
          if (!keys.insert(c.key).second) continue;
          c.tier = p.mechanism == ChannelKind::LocalTemp ? 0 : 2;
          c.distance = std::abs(ctx.analysis().anchorLine(from) - line);
          list.candidates.push_back(std::move(c));
        }
        std::stable_sort(list.candidates.begin(), list.candidates.end(), [](const Candidate& a, const Candidate& b) {
          return std::tie(a.tier, a.distance, a.name) < std::tie(b.tier, b.distance, b.name);
        });
      }
      out.push_back(std::move(list));
    }
  }
  return out;
}

SelectionProblem encodeSelection(const std::vector<CandidateList>& lists) {
  SelectionProblem p;
  std::map<std::string, std::vector<std::size_t>> byKey;
  for (const auto& l : lists) {
    p.holeIds.push_back(l.holeId);
    std::vector<std::size_t> clause;
    for (std::size_t i = 0; i < l.candidates.size(); ++i) {
      clause.push_back(p.vars.size());
      byKey[l.candidates[i].key].push_back(p.vars.size());
      p.names.emplace(l.candidates[i].key, l.candidates[i].name);
      p.vars.push_back({l.holeId, i, l.candidates[i].key});
    }
    p.atLeastOne.push_back(std::move(clause));
  }
  for (auto& [key, lits] : byKey)
    if (lits.size() > 1) p.equivalences.push_back(lits);
  return p;
}

namespace {

struct Choice {
  std::vector<std::string> keys;
  std::size_t rankSum = 0;
  std::vector<std::string> names;
};

}  // namespace

std::vector<std::size_t> solveSelection(const SelectionProblem& p) {
  std::vector<int> empty;
  for (std::size_t h = 0; h < p.atLeastOne.size(); ++h)
    if (p.atLeastOne[h].empty()) empty.push_back(p.holeIds[h]);
  if (!empty.empty()) throw Unsatisfiable(empty);

  std::vector<std::string> keys;
  for (const auto& v : p.vars) keys.push_back(v.key);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::map<std::string, std::size_t> keyIndex;
  for (std::size_t i = 0; i < keys.size(); ++i) keyIndex[keys[i]] = i;

  // Per hole: candidate key indices in rank order.
  std::vector<std::vector<std::size_t>> holes;
  for (const auto& clause : p.atLeastOne) {
    std::vector<std::size_t> ks;
    for (std::size_t lit : clause) ks.push_back(keyIndex[p.vars[lit].key]);
    holes.push_back(std::move(ks));
  }

  std::optional<Choice> best;
  std::vector<bool> chosen(keys.size(), false);
  std::vector<std::size_t> picked;

  auto evaluate = [&] {
    Choice c;
    for (const auto& h : holes) {
      std::size_t r = 0;
      while (r < h.size() && !chosen[h[r]]) ++r;
      if (r == h.size()) return;
      c.rankSum += r;
    }
    for (std::size_t k : picked) {
      c.keys.push_back(keys[k]);
      c.names.push_back(p.names.at(keys[k]));
    }
    std::sort(c.names.begin(), c.names.end());
    if (!best || c.rankSum < best->rankSum || (c.rankSum == best->rankSum && c.names < best->names))
      best = std::move(c);
  };

  // Subsets by increasing cardinality; the first size with a cover is minimal.
  // Within a size, a branch is cut once some hole can no longer be covered.
  std::function<void(std::size_t, std::size_t)> search = [&](std::size_t from, std::size_t left) {
    if (left == 0) {
      evaluate();
      return;
    }
    for (std::size_t k = from; k + left <= keys.size(); ++k) {
      chosen[k] = true;
      picked.push_back(k);
      bool feasible = true;
      for (const auto& h : holes) {
        bool covered = std::any_of(h.begin(), h.end(), [&](std::size_t x) { return chosen[x] || x > k; });
        if (!covered) {
          feasible = false;
          break;
        }
      }
      if (feasible) search(k + 1, left - 1);
      picked.pop_back();
      chosen[k] = false;
    }
  };
  for (std::size_t size = 0; size <= keys.size() && !best; ++size) search(0, size);

  std::set<std::string> sel(best->keys.begin(), best->keys.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.vars.size(); ++i)
    if (sel.contains(p.vars[i].key)) out.push_back(i);
  return out;
}

Resolution resolve(const std::vector<CandidateList>& lists, const SelectionProblem& problem,
                   const std::vector<std::size_t>& selection) {
  std::set<std::string> keys;
  for (std::size_t i : selection) keys.insert(problem.vars.at(i).key);
  Resolution r;
  std::set<std::string> used;
  for (const auto& l : lists) {
    auto it = std::find_if(l.candidates.begin(), l.candidates.end(),
                           [&](const Candidate& c) { return keys.contains(c.key); });
    if (it == l.candidates.end()) throw Unsatisfiable({l.holeId});
    r.assignment[l.holeId] = *it;
    used.insert(it->key);
  }
  r.distinctCount = used.size();
  return r;
}

Resolution resolve(const std::vector<CandidateList>& lists) {
  SelectionProblem p = encodeSelection(lists);
  return resolve(lists, p, solveSelection(p));
}

std::string formatProblem(const SelectionProblem& p) {
  std::string out;
  for (std::size_t i = 0; i < p.vars.size(); ++i)
    out += fmt::format("var v{} hole={} rank={} name={}\n", i + 1, p.vars[i].holeId, p.vars[i].candidateIndex + 1,
                       p.names.at(p.vars[i].key));
  for (std::size_t h = 0; h < p.atLeastOne.size(); ++h) {
    out += fmt::format("clause hole={} :", p.holeIds[h]);
    if (p.atLeastOne[h].empty()) out += " false";
    for (std::size_t i = 0; i < p.atLeastOne[h].size(); ++i) out += fmt::format("{}v{}", i ? " | " : " ", p.atLeastOne[h][i] + 1);
    out += "\n";
  }
  for (const auto& eq : p.equivalences) {
    out += fmt::format("equiv name={} :", p.names.at(p.vars[eq.front()].key));
    for (std::size_t i = 0; i < eq.size(); ++i) out += fmt::format("{}v{}", i ? " = " : " ", eq[i] + 1);
    out += "\n";
  }
  return out;
}

std::string formatResolution(const Resolution& r) {
  std::string out;
  for (const auto& [hole, c] : r.assignment)
    out += fmt::format("assign hole={} var={} type={}\n", hole, c.name, c.typeName);
  out += fmt::format("distinct {}\n", r.distinctCount);
  return out;
}

}  // namespace ipweave::resolve
