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

#include <filesystem>
#include <string>
#include <vector>

#include "ipweave/annotator/context.h"

namespace ipweave::annotator {

struct Coefficients {
  double cMNS = 1.0;
  double cVAS = 1.0;
  double cCLS = 1.0;
  double cCQS = 0.0001;
  std::size_t listCap = 100;
  std::size_t tau = 3;

  // Throws InputError when a weight is negative or a denominator is zero.
  void validate() const;
};

// `key = value` lines; `#` starts a comment. Unknown keys are errors.
Coefficients parseCoefficients(const std::string& text);
Coefficients loadCoefficients(const std::filesystem::path& path);

struct Mapping {
  int clusterId = 0;
  Location location;
  double mns = 0;
  double vas = 0;
  double cls = 0;

  bool operator==(const Mapping&) const = default;
};

struct MappingSet {
  int branchId = 0;
  std::vector<Mapping> mappings;  // indexed by cluster id
  int cds = 0;
  double cqs = 0;
  double meanCls = 0;
  double cas = 0;

  bool operator==(const MappingSet&) const = default;
};

double mns(const std::string& annotation, const std::string& methodName);
double vas(const Context& ctx, const fspec::Cluster& cluster, const Location& loc);
double cls(const Coefficients& k, double mns, double vas);
double cqs(const MappingSet& set);
// Report-only instability of the host methods.
double ccs(const MappingSet& set, const analysis::ProgramAnalysis& analysis);
// 1 iff every inter-cluster edge is ordered by the placements and every
// data edge has a channel. Throws UnknownCluster for a set that does not
// place every cluster of the branch.
int cds(const Context& ctx, const MappingSet& set, const fspec::Branch& branch);
double cas(const Coefficients& k, int cds, double cqs, double meanCls);

Mapping scoreMapping(const Context& ctx, const Coefficients& k, const fspec::Cluster& cluster, const Location& loc);

}  // namespace ipweave::annotator
