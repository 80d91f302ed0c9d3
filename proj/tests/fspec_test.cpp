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

#include <gtest/gtest.h>

#include <filesystem>
#include <map>
#include <random>
#include <set>

#include "ipweave/error.h"
#include "ipweave/fspec/clustering.h"
#include "ipweave/fspec/fspec.h"
#include "ipweave/fspec/levenshtein.h"

namespace ipweave::fspec {
namespace {

namespace fs = std::filesystem;
const fs::path kData = IPWEAVE_DATA_DIR;

// lev(a, b) = |a| if |b| = 0; |b| if |a| = 0; lev(tail a, tail b) if the
// heads match; otherwise 1 + min of the three one-step edits.
std::size_t levOracle(const std::string& a, const std::string& b, std::map<std::pair<size_t, size_t>, size_t>& memo,
                      std::size_t i = 0, std::size_t j = 0) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  if (auto it = memo.find({i, j}); it != memo.end()) return it->second;
  std::size_t r;
  if (a[i] == b[j])
    r = levOracle(a, b, memo, i + 1, j + 1);
  else
    r = 1 + std::min({levOracle(a, b, memo, i + 1, j), levOracle(a, b, memo, i, j + 1),
                      levOracle(a, b, memo, i + 1, j + 1)});
  memo[{i, j}] = r;
  return r;
}

std::size_t levOracle(const std::string& a, const std::string& b) {
  std::map<std::pair<size_t, size_t>, size_t> memo;
  return levOracle(a, b, memo);
}

TEST(Levenshtein, Examples) {
  EXPECT_EQ(levenshtein("", "abc"), 3u);
  EXPECT_EQ(levenshtein("Initialization", "initializeLC"), levOracle("Initialization", "initializeLC"));
  EXPECT_EQ(levenshtein("Initialization", "initializeLC"), 6u);
  EXPECT_EQ(levenshtein("kitten", "sitting"), levOracle("kitten", "sitting"));
  EXPECT_EQ(levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(levenshtein("A", "a"), 1u);
}

TEST(Levenshtein, MetricPropertiesAgainstRecursiveOracle) {
  std::mt19937 rng(7);
  auto randomString = [&] {
    std::string s(std::uniform_int_distribution<int>(0, 12)(rng), ' ');
    for (char& c : s) c = "abcAB_"[std::uniform_int_distribution<int>(0, 5)(rng)];
    return s;
  };
  for (int round = 0; round < 400; ++round) {
    std::string a = randomString(), b = randomString(), c = randomString();
    std::size_t ab = levenshtein(a, b);
    EXPECT_EQ(ab, levOracle(a, b)) << a << " / " << b;
    EXPECT_EQ(ab, levenshtein(b, a));
    EXPECT_EQ(ab == 0, a == b);
    EXPECT_LE(levenshtein(a, c), ab + levenshtein(b, c));
  }
}

TEST(FSpecFile, BundledJaasSpec) {
  FSpec spec = loadFSpec(kData / "jaas.fspec");
  EXPECT_GE(spec.nodes.size(), 5u);
  auto branches = enumerateBranches(spec);
  ASSERT_EQ(branches.size(), 2u);
  EXPECT_EQ(branches[0].nodeIds, (std::vector<int>{1, 2, 4, 5, 6}));
  EXPECT_EQ(branches[1].nodeIds, (std::vector<int>{3, 4, 5, 6}));
  EXPECT_GT(branches[0].weight, branches[1].weight);
  EXPECT_EQ(spec.concreteType("javax.security.auth.callback.CallbackHandler"),
            "com.sun.security.auth.callback.TextCallbackHandler");
  EXPECT_EQ(spec.canonical("com.sun.security.auth.callback.TextCallbackHandler"),
            "javax.security.auth.callback.CallbackHandler");
}

TEST(FSpecFile, SaveLoadRoundTrip) {
  FSpec spec = loadFSpec(kData / "jaas.fspec");
  fs::path tmp = fs::temp_directory_path() / "ipweave_roundtrip.fspec";
  saveFSpec(spec, tmp);
  FSpec again = loadFSpec(tmp);
  EXPECT_EQ(spec, again);
  EXPECT_EQ(formatFSpec(spec), formatFSpec(again));
  fs::remove(tmp);
}

const char* kHead =
    "fspec t\n"
    "node 1 kind=constructor class=a.A method=A params=- return=a.A annotation=Make\n"
    "node 2 kind=instance class=a.A method=run params=- return=void annotation=Run\n";

TEST(FSpecFile, DanglingEdge) {
  EXPECT_THROW(parseFSpec(std::string(kHead) + "edge 1 9 kind=data freq=1\nstart 1\nend 2\n"), DanglingEdgeError);
  EXPECT_THROW(parseFSpec(std::string(kHead) + "edge 1 2 kind=data freq=1\nstart 1\nend 7\n"), DanglingEdgeError);
}

TEST(FSpecFile, CycleRejected) {
  EXPECT_THROW(parseFSpec(std::string(kHead) + "edge 1 2 kind=data freq=1\nedge 2 1 kind=control freq=1\nstart 1\nend 2\n"),
               CycleError);
}

TEST(FSpecFile, FormatErrorsCarryLine) {
  try {
    parseFSpec(std::string(kHead) + "edge 1 2 kind=data freq=0\nstart 1\nend 2\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 4);
  }
  try {
    parseFSpec(std::string(kHead) + "bogus 1\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 4);
  }
  EXPECT_THROW(parseFSpec("fspec t\nnode 1 kind=constructor class=a.A method=A params=- return=a.B annotation=x\n"
                          "start 1\nend 1\n"),
               FormatError);
}

TEST(FSpecFile, NodeOffEveryPathRejected) {
  EXPECT_THROW(parseFSpec(std::string(kHead) + "start 1\nend 1\n"), FormatError);
}

TEST(FSpecFile, UnbindableDataEdgeRejected) {
  EXPECT_THROW(parseFSpec("fspec t\n"
                          "node 1 kind=constructor class=a.A method=A params=- return=a.A annotation=x\n"
                          "node 2 kind=static class=a.U method=f params=int return=void annotation=y\n"
                          "edge 1 2 kind=data freq=1\nstart 1\nend 2\n"),
               FormatError);
}

TEST(FSpecFile, MissingAnnotationFallsBackWithWarning) {
  std::vector<std::string> warnings;
  FSpec spec = parseFSpec(
      "fspec t\nnode 1 kind=static class=a.U method=getSubjectNow params=- return=void\nstart 1\nend 1\n", &warnings);
  EXPECT_EQ(spec.nodes[0].annotation, "get_Subject_Now");
  ASSERT_EQ(warnings.size(), 1u);
}

FSpec chain(int n) {
  std::string text = "fspec c\n";
  for (int i = 1; i <= n; ++i)
    text += "node " + std::to_string(i) + " kind=static class=a.U method=m" + std::to_string(i) +
            " params=- return=void annotation=Step\n";
  for (int i = 1; i < n; ++i) text += "edge " + std::to_string(i) + " " + std::to_string(i + 1) + " kind=control freq=1\n";
  return parseFSpec(text + "start 1\nend " + std::to_string(n) + "\n");
}

TEST(Branches, LinearChainHasOneBranch) {
  auto b = enumerateBranches(chain(4));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].weight, 3);
  EXPECT_EQ(b[0].edges.size(), 3u);
}

TEST(Branches, DiamondHasTwoOrderedBranches) {
  std::string text = "fspec d\n";
  for (int i = 1; i <= 4; ++i)
    text += "node " + std::to_string(i) + " kind=static class=a.U method=m" + std::to_string(i) +
            " params=- return=void annotation=S\n";
  auto spec = [&](int f2, int f3) {
    return parseFSpec(text + "edge 1 2 kind=control freq=" + std::to_string(f2) + "\nedge 1 3 kind=control freq=" +
                      std::to_string(f3) + "\nedge 2 4 kind=control freq=1\nedge 3 4 kind=control freq=1\nstart 1\nend 4\n");
  };
  auto tied = enumerateBranches(spec(2, 2));
  ASSERT_EQ(tied.size(), 2u);
  EXPECT_EQ(tied[0].nodeIds, (std::vector<int>{1, 2, 4}));
  auto heavy = enumerateBranches(spec(1, 5));
  EXPECT_EQ(heavy[0].nodeIds, (std::vector<int>{1, 3, 4}));
  EXPECT_EQ(heavy[0].weight, 6);
}

TEST(Clustering, PaperAnnotationsFollowDistanceOracle) {
  std::vector<std::pair<int, std::string>> nodes = {
      {1, "initializeCallback"}, {2, "initializeContext"}, {3, "login"}, {4, "inspectSubject"}};
  std::size_t minOther = 100;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (i != 0 || j != 1) minOther = std::min(minOther, levOracle(nodes[i].second, nodes[j].second));
  std::size_t pair = levOracle("initializeCallback", "initializeContext");
  ASSERT_EQ(pair, 7u);
  ASSERT_GT(minOther, pair);

  // No pair is within 3 edits, so every node stays alone.
  Clustering at3 = clusterAnnotations(nodes, 3);
  EXPECT_EQ(at3.groups, (std::vector<std::vector<int>>{{0}, {1}, {2}, {3}}));
  EXPECT_TRUE(at3.hierarchy.empty());

  // Once the threshold admits the initialize* pair, exactly it clusters.
  Clustering atPair = clusterAnnotations(nodes, pair);
  EXPECT_EQ(atPair.groups, (std::vector<std::vector<int>>{{0, 1}, {2}, {3}}));
  EXPECT_EQ(atPair.labels[0], "initializeCallback");
  EXPECT_EQ(atPair.labels[1], "login");
}

TEST(Clustering, SingleNodeBranch) {
  Clustering c = clusterAnnotations({{5, "#Logging_In"}}, 3);
  ASSERT_EQ(c.groups.size(), 1u);
  EXPECT_EQ(c.labels[0], "#Logging_In");
}

TEST(Clustering, MissingAnnotation) {
  EXPECT_THROW(clusterAnnotations({{1, "a"}, {2, ""}}, 3), MissingAnnotation);
  EXPECT_THROW(clusterAnnotations({{3, "#"}}, 3), MissingAnnotation);
}

TEST(Clustering, LabelTieBreaksLexicographically) {
  Clustering c = clusterAnnotations({{1, "ac"}, {2, "ab"}}, 3);
  ASSERT_EQ(c.groups.size(), 1u);
  EXPECT_EQ(c.labels[0], "ab");
}

TEST(Clustering, HierarchyMergesWithinThreshold) {
  Clustering c = clusterAnnotations({{1, "ab"}, {2, "ab"}, {3, "abc"}, {4, "zzzzzz"}}, 1);
  EXPECT_EQ(c.groups, (std::vector<std::vector<int>>{{0, 1}, {2}, {3}}));
  ASSERT_EQ(c.hierarchy.size(), 1u);
  EXPECT_EQ(c.hierarchy[0].label, "ab");
  EXPECT_EQ(c.hierarchy[0].distance, 1u);
}

TEST(Clustering, JaasInitializationSlotIsTheString) {
  FSpec spec = loadFSpec(kData / "jaas.fspec");
  auto branches = prepareBranches(spec, 3);
  const Branch& b = branches[0];
  ASSERT_EQ(b.clusters.size(), 3u);
  const Cluster& init = b.clusters[0];
  EXPECT_EQ(init.label, "#Initialization");
  EXPECT_EQ(init.memberIds, (std::vector<int>{1, 2}));
  ASSERT_EQ(init.slots.size(), 1u);
  EXPECT_EQ(init.slots[0].typeName, "java.lang.String");
  EXPECT_EQ(init.slots[0].role, SlotRole::Argument);
  EXPECT_EQ(b.clusters[1].label, "#Logging_In");
  EXPECT_EQ(b.clusters[2].label, "#Subject_Inspection");
  EXPECT_EQ(branches[1].clusters.size(), 3u);
}

void checkBranchInvariants(const FSpec& spec, const Branch& b) {
  std::multiset<int> covered;
  for (const auto& c : b.clusters) covered.insert(c.memberIds.begin(), c.memberIds.end());
  EXPECT_EQ(covered, std::multiset<int>(b.nodeIds.begin(), b.nodeIds.end()));

  std::size_t internal = 0;
  for (const auto& c : b.clusters) internal += c.internalEdges.size();
  EXPECT_EQ(internal + b.interClusterEdges.size(), b.edges.size());
  for (const auto& e : b.interClusterEdges) EXPECT_NE(e.srcCluster, e.dstCluster);

  for (const auto& c : b.clusters) {
    std::map<std::string, int> positions, delivered, slots;
    for (int id : c.memberIds) {
      const ApiNode& n = spec.node(id);
      if (n.kind == NodeKind::Instance) ++positions[spec.canonical(n.ownerType)];
      for (const auto& p : n.paramTypes) ++positions[spec.canonical(p)];
    }
    for (const auto& e : c.internalEdges)
      if (e.kind == EdgeKind::Data) ++delivered[spec.canonical(spec.node(e.src).producedType())];
    for (const auto& s : c.slots) ++slots[s.typeName];
    for (const auto& [t, n] : positions) EXPECT_EQ(slots[t], n - delivered[t]) << c.label << " " << t;
  }
}

TEST(Clustering, PartitionAndSlotInvariants) {
  FSpec spec = loadFSpec(kData / "jaas.fspec");
  for (std::size_t tau : {0u, 3u, 20u})
    for (const auto& b : prepareBranches(spec, tau)) checkBranchInvariants(spec, b);
  FSpec c = chain(5);
  for (const auto& b : prepareBranches(c, 3)) checkBranchInvariants(c, b);
}

TEST(Clustering, Deterministic) {
  FSpec spec = loadFSpec(kData / "jaas.fspec");
  auto a = prepareBranches(spec, 3);
  auto b = prepareBranches(spec, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].clusters.size(), b[i].clusters.size());
    for (std::size_t k = 0; k < a[i].clusters.size(); ++k) {
      EXPECT_EQ(a[i].clusters[k].label, b[i].clusters[k].label);
      EXPECT_EQ(a[i].clusters[k].memberIds, b[i].clusters[k].memberIds);
      EXPECT_EQ(a[i].clusters[k].slots, b[i].clusters[k].slots);
    }
  }
}

}  // namespace
}  // namespace ipweave::fspec
