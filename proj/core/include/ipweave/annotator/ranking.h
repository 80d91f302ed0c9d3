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

#pragma once

#include <vector>

#include "ipweave/annotator/scores.h"

namespace ipweave::annotator {

struct RankingStats {
  std::size_t popped = 0;
  bool hitCap = false;
};

// Per-cluster candidate mappings, CLS descending then location order.
std::vector<std::vector<Mapping>> rankedLocations(const Context& ctx, const Coefficients& k, const fspec::Branch& branch);

// Best-first walk over the product of the per-cluster lists by summed CLS.
// Sets failing CDS are dropped. Until the first feasible set the walk is
// bounded by listCap * |clusters| pops; afterwards it stops once no unseen
// set can beat the listCap-th kept one.
std::vector<MappingSet> rankBranch(const Context& ctx, const Coefficients& k, const fspec::Branch& branch, int branchId,
                                   RankingStats* stats = nullptr);

// Ranks every branch and merges the lists; throws NoFeasibleMapping when no
// branch yields a feasible set.
std::vector<MappingSet> rankMappingSets(const Context& ctx, const std::vector<fspec::Branch>& branches,
                                        const Coefficients& k);

// Strict ranking order: CAS, then CQS descending, then location tuple, then
// branch.
bool rankedBefore(const Context& ctx, const MappingSet& a, const MappingSet& b);

MappingSet evaluateSet(const Context& ctx, const Coefficients& k, const fspec::Branch& branch, int branchId,
                       std::vector<Mapping> mappings);

}  // namespace ipweave::annotator
