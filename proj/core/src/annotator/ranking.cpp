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

#include "ipweave/annotator/ranking.h"

#include <algorithm>
#include <queue>
#include <set>

#include <fmt/format.h>

#include "ipweave/error.h"

namespace ipweave::annotator {

namespace {

constexpr std::size_t kHardCap = 200000;

using LocKey = std::tuple<std::string, std::size_t, std::size_t>;

std::vector<LocKey> tupleOf(const Context& ctx, const MappingSet& s) {
  std::vector<LocKey> out;
  for (const auto& m : s.mappings) out.push_back(ctx.locationKey(m.location));
  return out;
}

}  // namespace

bool rankedBefore(const Context& ctx, const MappingSet& a, const MappingSet& b) {
  if (a.cas != b.cas) return a.cas > b.cas;
  if (a.cqs != b.cqs) return a.cqs > b.cqs;
  auto ta = tupleOf(ctx, a), tb = tupleOf(ctx, b);
  if (ta != tb) return ta < tb;
  return a.branchId < b.branchId;
}

std::vector<std::vector<Mapping>> rankedLocations(const Context& ctx, const Coefficients& k,
                                                  const fspec::Branch& branch) {
  std::vector<std::vector<Mapping>> lists;
  for (const auto& c : branch.clusters) {
    std::vector<Mapping> list;
    for (const auto& loc : ctx.candidateLocations(c)) list.push_back(scoreMapping(ctx, k, c, loc));
    std::stable_sort(list.begin(), list.end(), [&](const Mapping& a, const Mapping& b) {
      if (a.cls != b.cls) return a.cls > b.cls;
      return ctx.locationKey(a.location) < ctx.locationKey(b.location);
    });
    lists.push_back(std::move(list));
  }
  return lists;
}

MappingSet evaluateSet(const Context& ctx, const Coefficients& k, const fspec::Branch& branch, int branchId,
                       std::vector<Mapping> mappings) {
  MappingSet s;
  s.branchId = branchId;
  s.mappings = std::move(mappings);
  double sum = 0;
  for (const auto& m : s.mappings) sum += m.cls;
  s.meanCls = s.mappings.empty() ? 0 : sum / static_cast<double>(s.mappings.size());
  s.cqs = cqs(s);
  s.cds = cds(ctx, s, branch);
  s.cas = cas(k, s.cds, s.cqs, s.meanCls);
  return s;
}

std::vector<MappingSet> rankBranch(const Context& ctx, const Coefficients& k, const fspec::Branch& branch, int branchId,
                                   RankingStats* stats) {
  RankingStats local;
  RankingStats& st = stats ? *stats : local;
  auto lists = rankedLocations(ctx, k, branch);
  const std::size_t n = lists.size();
  std::vector<MappingSet> kept;
  if (n == 0) return kept;
  for (const auto& l : lists)
    if (l.empty()) return kept;

  using Node = std::pair<double, std::vector<std::size_t>>;
  auto sumOf = [&](const std::vector<std::size_t>& idx) {
    double s = 0;
    for (std::size_t c = 0; c < n; ++c) s += lists[c][idx[c]].cls;
    return s;
  };
  auto worse = [](const Node& a, const Node& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> pq(worse);
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> start(n, 0);
  pq.emplace(sumOf(start), start);
  seen.insert(start);

  const std::size_t firstBound = k.listCap * n;
  bool found = false;
  while (!pq.empty()) {
    const Node& top = pq.top();
    if (kept.size() >= k.listCap) {
      double upper = cas(k, 1, 1.0, top.first / static_cast<double>(n));
      if (upper < kept.back().cas) break;
    }
    if (!found && st.popped >= firstBound) break;
    if (st.popped >= kHardCap) {
      st.hitCap = true;
      break;
    }
    Node cur = top;
    pq.pop();
    ++st.popped;

    std::vector<Mapping> ms;
    for (std::size_t c = 0; c < n; ++c) ms.push_back(lists[c][cur.second[c]]);
    MappingSet s = evaluateSet(ctx, k, branch, branchId, std::move(ms));
    if (s.cds == 1) {
      found = true;
      auto pos = std::upper_bound(kept.begin(), kept.end(), s,
                                  [&](const MappingSet& a, const MappingSet& b) { return rankedBefore(ctx, a, b); });
      kept.insert(pos, std::move(s));
      if (kept.size() > k.listCap) kept.pop_back();
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (cur.second[c] + 1 >= lists[c].size()) continue;
      std::vector<std::size_t> next = cur.second;
      ++next[c];
      if (seen.insert(next).second) pq.emplace(sumOf(next), std::move(next));
    }
  }
  return kept;
}

std::vector<MappingSet> rankMappingSets(const Context& ctx, const std::vector<fspec::Branch>& branches,
                                        const Coefficients& k) {
  k.validate();
  std::vector<MappingSet> all;
  for (std::size_t b = 0; b < branches.size(); ++b) {
    auto list = rankBranch(ctx, k, branches[b], static_cast<int>(b));
    all.insert(all.end(), std::make_move_iterator(list.begin()), std::make_move_iterator(list.end()));
  }
  if (all.empty())
    throw NoFeasibleMapping(fmt::format("no placement satisfies the dependencies of any of {} branches", branches.size()));
  std::stable_sort(all.begin(), all.end(), [&](const MappingSet& a, const MappingSet& b) { return rankedBefore(ctx, a, b); });
  if (all.size() > k.listCap) all.resize(k.listCap);
  return all;
}

}  // namespace ipweave::annotator
