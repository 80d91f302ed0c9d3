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

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ipweave/fspec/fspec.h"

namespace ipweave::fspec {

struct Cluster {
  int id = 0;
  std::string label;
  std::vector<int> memberIds;  // branch order
  std::vector<ApiEdge> internalEdges;
  std::vector<SlotRef> slots;  // positions not fed by a member
};

struct InterClusterEdge {
  int srcCluster = 0;
  int dstCluster = 0;
  EdgeKind kind = EdgeKind::Data;
  int srcNode = 0;
  int dstNode = 0;
  std::string typeName;  // data edges: canonical carried type
  int dstPosition = 0;   // data edges: bound slot of dstNode
};

struct MergeStep {
  std::vector<int> left;
  std::vector<int> right;
  std::string label;
  std::size_t distance = 0;
};

struct Branch {
  std::vector<int> nodeIds;
  std::vector<ApiEdge> edges;  // FSpec edges with both ends on the path
  long weight = 0;
  // Data edge (src, dst) -> bound position of dst.
  std::map<std::pair<int, int>, int> bindings;
  std::vector<Cluster> clusters;
  std::vector<InterClusterEdge> interClusterEdges;
  std::vector<MergeStep> hierarchy;

  const Cluster& cluster(int id) const;
  int clusterOf(int nodeId) const;
};

// All start-to-end paths, heaviest first, then by node-id sequence. Data
// edges are bound to slots; clusters are left empty.
std::vector<Branch> enumerateBranches(const FSpec& spec);

std::string stripAnnotation(const std::string& annotation);
std::size_t annotationDistance(const std::string& a, const std::string& b);

struct Clustering {
  std::vector<std::vector<int>> groups;  // leaf clusters, as indices into the input
  std::vector<std::string> labels;
  std::vector<MergeStep> hierarchy;  // members given as input indices
};

// Greedy pairing of annotations within `tau`, then agglomerative merging of
// labels within `tau` (reported only). Throws MissingAnnotation.
Clustering clusterAnnotations(const std::vector<std::pair<int, std::string>>& annotated, std::size_t tau);

// Fills clusters, slots, inter-cluster edges and the merge hierarchy.
void clusterBranch(const FSpec& spec, Branch& branch, std::size_t tau);

// enumerateBranches followed by clusterBranch on each.
std::vector<Branch> prepareBranches(const FSpec& spec, std::size_t tau);

// Topological order of clusters over inter-cluster edges, ties by id.
std::vector<int> clusterOrder(const Branch& branch);

}  // namespace ipweave::fspec
