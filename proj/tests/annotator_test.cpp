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

#include <algorithm>
#include <filesystem>
#include <random>

#include "ipweave/annotator/channels.h"
#include "ipweave/annotator/ranking.h"
#include "ipweave/annotator/scores.h"
#include "ipweave/error.h"
#include "ipweave/fspec/levenshtein.h"
#include "ipweave/minilang/parser.h"

namespace ipweave::annotator {
namespace {

namespace fs = std::filesystem;
using analysis::ProgramAnalysis;
const fs::path kData = IPWEAVE_DATA_DIR;

minilang::MiniProgram program(const std::string& text) { return minilang::parseSources({{"T.mj", text}}); }

Location bodyPoint(const ProgramAnalysis& a, const std::string& cls, const std::string& method, std::size_t idx) {
  const auto* m = a.index().findMethod(cls + "." + method);
  if (!m) throw std::runtime_error("no method " + method);
  return a.locationAt(m->body, idx);
}

fspec::Cluster slotCluster(std::vector<std::string> types) {
  fspec::Cluster c;
  c.label = "#X";
  c.memberIds = {1};
  int pos = 0;
  for (auto& t : types) c.slots.push_back({1, pos++, t, fspec::SlotRole::Argument});
  return c;
}

double mnsOracle(const std::string& annotation, const std::string& name) {
  std::string a = annotation.starts_with('#') ? annotation.substr(1) : annotation;
  return 1.0 / (static_cast<double>(fspec::levenshtein(a, name)) + 1.0);
}

TEST(Mns, Examples) {
  EXPECT_DOUBLE_EQ(mns("Initialization", "initializeLC"), 1.0 / 7.0);
  EXPECT_NEAR(mns("Initialization", "initializeLC"), 0.14, 0.005);
  EXPECT_DOUBLE_EQ(mns("login", "login"), 1.0);
  EXPECT_DOUBLE_EQ(mns("a", "b"), 0.5);
  EXPECT_DOUBLE_EQ(mns("#Initialization", "initializeLC"), 1.0 / 7.0);
}

TEST(Mns, ArgmaxOverMotivatingMethods) {
  std::vector<std::string> methods = {"initializeLC", "login", "inspectSubject", "main"};
  auto best = std::max_element(methods.begin(), methods.end(), [](const auto& x, const auto& y) {
    return mns("Initialization", x) < mns("Initialization", y);
  });
  EXPECT_EQ(*best, "initializeLC");
}

TEST(Mns, RangeAndIdentity) {
  std::mt19937 rng(3);
  auto word = [&] {
    std::string s(std::uniform_int_distribution<int>(0, 8)(rng), ' ');
    for (char& c : s) c = "abAB"[std::uniform_int_distribution<int>(0, 3)(rng)];
    return s;
  };
  for (int i = 0; i < 300; ++i) {
    std::string a = word(), b = word();
    double v = mns(a, b);
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
    EXPECT_EQ(v == 1.0, a == b);
    EXPECT_DOUBLE_EQ(v, mnsOracle(a, b));
  }
}

const char* kVas =
    "class V {\n"
    "    String g;\n"
    "    void m(int x) {\n"
    "        String a = \"a\";\n"
    "        String b;\n"
    "        if (x > 0) { b = \"b\"; }\n"
    "        String c = \"c\";\n"
    "        int k = 1;\n"
    "    }\n"
    "}\n";

TEST(Vas, Examples) {
  ProgramAnalysis a(program(kVas));
  fspec::FSpec spec;
  Context ctx(a, spec);
  Location afterA = bodyPoint(a, "V", "m", 1);
  EXPECT_DOUBLE_EQ(vas(ctx, slotCluster({}), afterA), 1.0);
  EXPECT_DOUBLE_EQ(vas(ctx, slotCluster({"java.lang.String"}), afterA), 1.0);
  EXPECT_DOUBLE_EQ(vas(ctx, slotCluster({"java.lang.String", "java.lang.String"}), afterA), 0.5);
  EXPECT_DOUBLE_EQ(vas(ctx, slotCluster({"javax.security.auth.callback.CallbackHandler"}), afterA), 0.0);
  EXPECT_DOUBLE_EQ(vas(ctx, slotCluster({"java.lang.String", "int"}), afterA), 1.0);
  // b is assigned on one branch only; g is never assigned.
  EXPECT_DOUBLE_EQ(vas(ctx, slotCluster({"java.lang.String", "java.lang.String"}), bodyPoint(a, "V", "m", 3)), 0.5);
}

TEST(Vas, InvalidLocation) {
  ProgramAnalysis a(program(kVas));
  fspec::FSpec spec;
  Context ctx(a, spec);
  Location bad = bodyPoint(a, "V", "m", 0);
  bad.statementIndex = 40;
  EXPECT_THROW(vas(ctx, slotCluster({"java.lang.String"}), bad), InvalidLocation);
}

TEST(Vas, MonotoneAlongStraightLineCode) {
  ProgramAnalysis a(program(
      "class V {\n void m() {\n String a = \"a\";\n int i = 1;\n String b = \"b\";\n"
      " String c = \"c\";\n int j = 2;\n }\n}\n"));
  fspec::FSpec spec;
  Context ctx(a, spec);
  std::vector<fspec::Cluster> clusters = {
      slotCluster({"java.lang.String"}), slotCluster({"java.lang.String", "java.lang.String", "java.lang.String"}),
      slotCluster({"java.lang.String", "int", "int"})};
  for (const auto& c : clusters) {
    double prev = 0;
    for (std::size_t i = 0; i <= 5; ++i) {
      double v = vas(ctx, c, bodyPoint(a, "V", "m", i));
      EXPECT_GE(v, prev);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      // zero exactly when some slot type has nothing available
      bool starved = false;
      for (const auto& s : c.slots) starved |= ctx.available(bodyPoint(a, "V", "m", i), s.typeName).empty();
      EXPECT_EQ(v == 0.0, starved);
      prev = v;
    }
  }
}

TEST(Vas, AliasTypesCountAsCanonical) {
  ProgramAnalysis a(program(
      "import com.sun.security.auth.callback.TextCallbackHandler;\n"
      "class V {\n void m() {\n TextCallbackHandler h = new TextCallbackHandler();\n }\n}\n"));
  fspec::FSpec spec = fspec::loadFSpec(kData / "jaas.fspec");
  Context ctx(a, spec);
  EXPECT_DOUBLE_EQ(vas(ctx, slotCluster({"javax.security.auth.callback.CallbackHandler"}), bodyPoint(a, "V", "m", 1)),
                   1.0);
}

MappingSet hosted(const std::vector<std::string>& methods) {
  MappingSet s;
  int id = 0;
  for (const auto& m : methods) {
    Mapping mp;
    mp.clusterId = id++;
    mp.location.methodQName = m;
    mp.location.scopeId = m + "#0";
    s.mappings.push_back(mp);
  }
  return s;
}

TEST(Cqs, Examples) {
  EXPECT_DOUBLE_EQ(cqs(hosted({"m1", "m1", "m2"})), 0.75);
  EXPECT_DOUBLE_EQ(cqs(hosted({"m1", "m2", "m3"})), 1.0);
  EXPECT_DOUBLE_EQ(cqs(hosted({"m1", "m1", "m1"})), 1.0 / 3.0);
}

TEST(Cqs, OneOnlyWhenEveryHostHoldsOneCluster) {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> ms;
    int n = std::uniform_int_distribution<int>(1, 5)(rng);
    for (int j = 0; j < n; ++j) ms.push_back("m" + std::to_string(std::uniform_int_distribution<int>(0, 3)(rng)));
    double v = cqs(hosted(ms));
    std::set<std::string> distinct(ms.begin(), ms.end());
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
    EXPECT_EQ(v == 1.0, distinct.size() == ms.size());
  }
}

TEST(Ccs, Examples) {
  ProgramAnalysis a(program(
      "class C {\n"
      "    void top() { hub(); }\n"
      "    void hub() { leaf(); other(); }\n"
      "    void leaf() { }\n"
      "    void other() { }\n"
      "    void lonely() { }\n"
      "}\n"));
  auto at = [&](const std::string& m) {
    MappingSet s = hosted({"C." + m});
    return ccs(s, a);
  };
  EXPECT_DOUBLE_EQ(at("hub"), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(at("leaf"), 0.0);
  EXPECT_DOUBLE_EQ(at("lonely"), 0.0);
  EXPECT_DOUBLE_EQ(at("top"), 1.0);
  EXPECT_DOUBLE_EQ(ccs(hosted({"C.hub", "C.leaf"}), a), 1.0 / 3.0);
}

TEST(Cas, Arithmetic) {
  Coefficients k;
  EXPECT_DOUBLE_EQ(cas(k, 1, 0.75, 0.5714), (0.0001 * 0.75 + 0.5714) / 1.0001);
  EXPECT_NEAR(cas(k, 1, 0.75, 0.5714), 0.5714, 1e-4);
  EXPECT_EQ(cas(k, 0, 0.75, 0.5714), 0.0);
  EXPECT_GT(cas(k, 1, 1.0, 0.5), cas(k, 1, 0.5, 0.5));
  EXPECT_LT(std::abs(cas(k, 1, 0.5, 0.5) - 0.5), 1e-3);
}

TEST(Cls, WeightedMean) {
  Coefficients k;
  EXPECT_DOUBLE_EQ(cls(k, 1.0 / 7.0, 1.0), (1.0 / 7.0 + 1.0) / 2.0);
  EXPECT_NEAR(cls(k, 1.0 / 7.0, 1.0), 0.5714, 1e-4);
  k.cMNS = 3;
  EXPECT_DOUBLE_EQ(cls(k, 0.5, 0.0), 0.375);
}

TEST(Coefficients, Parsing) {
  Coefficients k = parseCoefficients("# weights\ncMNS = 2\ncVAS=0.5\n\ncCQS = 0.001\nlistCap = 7\ntau = 4\n");
  EXPECT_DOUBLE_EQ(k.cMNS, 2);
  EXPECT_DOUBLE_EQ(k.cVAS, 0.5);
  EXPECT_DOUBLE_EQ(k.cCLS, 1);
  EXPECT_DOUBLE_EQ(k.cCQS, 0.001);
  EXPECT_EQ(k.listCap, 7u);
  EXPECT_EQ(k.tau, 4u);
  Coefficients d = parseCoefficients("");
  EXPECT_DOUBLE_EQ(d.cCQS, 0.0001);
  EXPECT_EQ(d.listCap, 100u);
  EXPECT_THROW(parseCoefficients("cFOO = 1\n"), InputError);
  EXPECT_THROW(parseCoefficients("cMNS = -1\n"), InputError);
  EXPECT_THROW(parseCoefficients("cMNS = 0\ncVAS = 0\n"), InputError);
  EXPECT_THROW(parseCoefficients("cMNS 1\n"), InputError);
  EXPECT_THROW(parseCoefficients("listCap = abc\n"), InputError);
}

// Two sub-tasks joined by a control edge.
const char* kTwoStep =
    "fspec two\n"
    "node 1 kind=static class=lib.Api method=setup params=- return=void annotation=#Initialization\n"
    "node 2 kind=static class=lib.Api method=enter params=- return=void annotation=#Logging_In\n"
    "edge 1 2 kind=control freq=1\n"
    "start 1\n"
    "end 2\n";

std::string callOrder(bool initFirst) {
  std::string calls = initFirst ? "initializeLC(); login();" : "login(); initializeLC();";
  return "class M {\n"
         "    void initializeLC() { }\n"
         "    void login() { }\n"
         "    void main() { " + calls + " }\n"
         "}\n";
}

MappingSet placed(const Context&, const std::vector<Location>& locs) {
  MappingSet s;
  int id = 0;
  for (const auto& l : locs) {
    Mapping m;
    m.clusterId = id++;
    m.location = l;
    s.mappings.push_back(m);
  }
  return s;
}

TEST(Cds, CallOrder) {
  fspec::FSpec spec = fspec::parseFSpec(kTwoStep);
  auto branches = fspec::prepareBranches(spec, 3);
  ASSERT_EQ(branches.size(), 1u);
  ASSERT_EQ(branches[0].clusters.size(), 2u);
  ProgramAnalysis good(program(callOrder(true)));
  ProgramAnalysis bad(program(callOrder(false)));
  Context cg(good, spec), cb(bad, spec);
  auto set = [](const ProgramAnalysis& a, const Context& c) {
    return placed(c, {bodyPoint(a, "M", "initializeLC", 0), bodyPoint(a, "M", "login", 0)});
  };
  EXPECT_EQ(cds(cg, set(good, cg), branches[0]), 1);
  EXPECT_EQ(cds(cb, set(bad, cb), branches[0]), 0);
}

TEST(Cds, SameBlockIndices) {
  fspec::FSpec spec = fspec::parseFSpec(kTwoStep);
  auto branch = fspec::prepareBranches(spec, 3)[0];
  ProgramAnalysis a(program("class M {\n void m() {\n int x = 1;\n int y = 2;\n }\n}\n"));
  Context ctx(a, spec);
  EXPECT_EQ(cds(ctx, placed(ctx, {bodyPoint(a, "M", "m", 0), bodyPoint(a, "M", "m", 1)}), branch), 1);
  EXPECT_EQ(cds(ctx, placed(ctx, {bodyPoint(a, "M", "m", 1), bodyPoint(a, "M", "m", 1)}), branch), 1);
  EXPECT_EQ(cds(ctx, placed(ctx, {bodyPoint(a, "M", "m", 2), bodyPoint(a, "M", "m", 1)}), branch), 0);
}

TEST(Cds, UnknownCluster) {
  fspec::FSpec spec = fspec::parseFSpec(kTwoStep);
  auto branch = fspec::prepareBranches(spec, 3)[0];
  ProgramAnalysis a(program("class M {\n void m() {\n int x = 1;\n }\n}\n"));
  Context ctx(a, spec);
  MappingSet s = placed(ctx, {bodyPoint(a, "M", "m", 0)});
  EXPECT_THROW(cds(ctx, s, branch), UnknownCluster);
}

TEST(Cds, DataEdgeNeedsChannel) {
  // lc from the producer is not visible in an unrelated root method.
  fspec::FSpec spec = fspec::loadFSpec(kData / "jaas.fspec");
  auto branches = fspec::prepareBranches(spec, 3);
  ProgramAnalysis a(program(
      "import javax.security.auth.login.LoginContext;\n"
      "class M {\n"
      "    void initializeLC(String n) { }\n"
      "    void login() { }\n"
      "    void inspect() { }\n"
      "}\n"));
  Context ctx(a, spec);
  const auto& br = branches[1];
  MappingSet sep = placed(ctx, {bodyPoint(a, "M", "initializeLC", 0), bodyPoint(a, "M", "login", 0),
                                bodyPoint(a, "M", "inspect", 0)});
  EXPECT_EQ(cds(ctx, sep, br), 0);
  MappingSet together = placed(ctx, {bodyPoint(a, "M", "initializeLC", 0), bodyPoint(a, "M", "initializeLC", 0),
                                     bodyPoint(a, "M", "initializeLC", 0)});
  EXPECT_EQ(cds(ctx, together, br), 1);
}

TEST(Ranking, MotivatingExampleTopSet) {
  fspec::FSpec spec = fspec::loadFSpec(kData / "jaas.fspec");
  ProgramAnalysis a(minilang::parseProgram(kData / "replica" / "t01_baseline"));
  Context ctx(a, spec);
  Coefficients k;
  auto sets = rankMappingSets(ctx, fspec::prepareBranches(spec, k.tau), k);
  ASSERT_FALSE(sets.empty());
  EXPECT_LE(sets.size(), k.listCap);
  const auto& top = sets.front();
  ASSERT_EQ(top.mappings.size(), 3u);
  EXPECT_EQ(top.mappings[0].location.methodQName, "example.JaasImplementor.initializeLC");
  EXPECT_EQ(top.mappings[1].location.methodQName, "example.JaasImplementor.login");
  EXPECT_EQ(top.mappings[2].location.methodQName, "example.JaasImplementor.inspectSubject");
  EXPECT_DOUBLE_EQ(top.mappings[0].cls, (1.0 / 7.0 + 1.0) / 2.0);
  EXPECT_DOUBLE_EQ(top.cqs, 1.0);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    EXPECT_EQ(sets[i].cds, 1);
    EXPECT_GT(sets[i].cas, 0.0);
    if (i) EXPECT_GE(sets[i - 1].cas, sets[i].cas);
  }
}

TEST(Ranking, CqsBreaksEqualClsTies) {
  fspec::FSpec spec = fspec::parseFSpec(kTwoStep);
  ProgramAnalysis a(program(callOrder(true)));
  Context ctx(a, spec);
  Coefficients k;
  MappingSet spread = hosted({"M.initializeLC", "M.login"});
  MappingSet packed = hosted({"M.main", "M.main"});
  for (auto* s : {&spread, &packed}) {
    s->cds = 1;
    s->meanCls = 0.5;
    s->cqs = cqs(*s);
    s->cas = cas(k, 1, s->cqs, s->meanCls);
  }
  EXPECT_DOUBLE_EQ(spread.cqs, 1.0);
  EXPECT_DOUBLE_EQ(packed.cqs, 0.5);
  EXPECT_TRUE(rankedBefore(ctx, spread, packed));
  EXPECT_FALSE(rankedBefore(ctx, packed, spread));
  EXPECT_LT(std::abs(spread.cas - spread.meanCls), 1e-3);
}

TEST(Ranking, NoFeasibleMapping) {
  fspec::FSpec spec = fspec::parseFSpec(kTwoStep);
  // Every method body end is unreachable, so no placement exists.
  ProgramAnalysis a(program("class M {\n void m() { m(); }\n}\n"));
  Context ctx(a, spec);
  Coefficients k;
  EXPECT_THROW(rankMappingSets(ctx, fspec::prepareBranches(spec, k.tau), k), NoFeasibleMapping);
}

// Random programs: a handful of methods declaring strings and calling later
// methods, sometimes under a condition.
class ProgramGen {
 public:
  explicit ProgramGen(std::mt19937& rng) : rng_(rng) {}

  std::string build(int methods) {
    std::string s = "class G {\n    String g;\n";
    for (int m = 0; m < methods; ++m) {
      std::string body;
      int n = pick(4);
      for (int i = 0; i < n; ++i) {
        switch (pick(5)) {
          case 0: body += "String s" + std::to_string(m) + "_" + std::to_string(i) + " = \"v\";\n"; break;
          case 1: body += "g = \"w\";\n"; break;
          case 2:
            if (m + 1 < methods) body += "m" + std::to_string(m + 1 + pick(methods - m - 1)) + "(x);\n";
            break;
          case 3:
            if (m + 1 < methods) body += "if (x > 0) { m" + std::to_string(m + 1 + pick(methods - m - 1)) + "(x); }\n";
            break;
          default: body += "int i" + std::to_string(i) + " = 1;\n";
        }
      }
      s += "    void m" + std::to_string(m) + "(int x) {\n" + body + "    }\n";
    }
    return s + "}\n";
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::mt19937& rng_;
};

// Random chain of 2..4 singleton clusters; edges are control or String data.
std::string randomSpec(std::mt19937& rng) {
  static const char* labels[] = {"#Alpha", "#Bravo", "#Charlie", "#Delta"};
  int n = std::uniform_int_distribution<int>(2, 4)(rng);
  std::vector<bool> dataIn(n + 1, false);
  std::string edges;
  for (int i = 1; i < n; ++i) {
    bool data = std::uniform_int_distribution<int>(0, 1)(rng);
    dataIn[i + 1] = data;
    edges += "edge " + std::to_string(i) + " " + std::to_string(i + 1) + " kind=" + (data ? "data" : "control") +
             " freq=1\n";
  }
  std::string s = "fspec rnd\n";
  for (int i = 1; i <= n; ++i) {
    bool param = dataIn[i] || std::uniform_int_distribution<int>(0, 2)(rng) == 0;
    s += "node " + std::to_string(i) + " kind=static class=lib.Api method=op" + std::to_string(i) +
         " params=" + (param ? "java.lang.String" : "-") + " return=java.lang.String annotation=" + labels[i - 1] +
         "\n";
  }
  return s + edges + "start 1\nend " + std::to_string(n) + "\n";
}

std::vector<MappingSet> bruteForce(const Context& ctx, const Coefficients& k, const fspec::Branch& branch) {
  auto lists = rankedLocations(ctx, k, branch);
  std::vector<MappingSet> out;
  std::vector<std::size_t> idx(lists.size(), 0);
  for (const auto& l : lists)
    if (l.empty()) return out;
  while (true) {
    std::vector<Mapping> ms;
    for (std::size_t c = 0; c < lists.size(); ++c) ms.push_back(lists[c][idx[c]]);
    MappingSet s = evaluateSet(ctx, k, branch, 0, ms);
    EXPECT_EQ(s.cas == 0.0, s.cds == 0);
    if (s.cds == 1) out.push_back(s);
    std::size_t c = 0;
    while (c < lists.size() && ++idx[c] == lists[c].size()) idx[c++] = 0;
    if (c == lists.size()) break;
  }
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return rankedBefore(ctx, a, b); });
  if (out.size() > k.listCap) out.resize(k.listCap);
  return out;
}

TEST(Ranking, MatchesBruteForceEnumeration) {
  std::mt19937 rng(2026);
  int compared = 0, nonEmpty = 0;
  for (int round = 0; round < 60; ++round) {
    ProgramGen gen(rng);
    std::string text = gen.build(std::uniform_int_distribution<int>(2, 5)(rng));
    fspec::FSpec spec = fspec::parseFSpec(randomSpec(rng));
    ProgramAnalysis a(program(text));
    Context ctx(a, spec);
    Coefficients k;
    k.tau = 0;
    auto branches = fspec::prepareBranches(spec, k.tau);
    ASSERT_EQ(branches.size(), 1u);
    const auto& br = branches[0];
    auto lists = rankedLocations(ctx, k, br);
    std::size_t product = 1;
    for (const auto& l : lists) product *= l.size();
    if (product == 0 || product > 6 * 6 * 6 * 6) continue;

    for (std::size_t cap : {std::size_t{1000}, std::size_t{5}}) {
      k.listCap = cap;
      RankingStats stats;
      auto ranked = rankBranch(ctx, k, br, 0, &stats);
      auto oracle = bruteForce(ctx, k, br);
      EXPECT_FALSE(stats.hitCap);
      if (cap * lists.size() >= product || !ranked.empty()) {
        ASSERT_EQ(ranked.size(), oracle.size()) << text;
        for (std::size_t i = 0; i < ranked.size(); ++i) EXPECT_EQ(ranked[i], oracle[i]) << text << " at " << i;
        ++compared;
      }
      if (!ranked.empty()) ++nonEmpty;
      EXPECT_EQ(rankBranch(ctx, k, br, 0), ranked);
    }
  }
  EXPECT_GT(compared, 60);
  EXPECT_GT(nonEmpty, 40);
}

TEST(Ranking, ChannelsExistForEveryRankedSet) {
  std::mt19937 rng(99);
  for (int round = 0; round < 20; ++round) {
    ProgramGen gen(rng);
    std::string text = gen.build(4);
    fspec::FSpec spec = fspec::parseFSpec(randomSpec(rng));
    ProgramAnalysis a(program(text));
    Context ctx(a, spec);
    Coefficients k;
    k.tau = 0;
    k.listCap = 10;
    auto br = fspec::prepareBranches(spec, k.tau)[0];
    for (const auto& s : rankBranch(ctx, k, br, 0)) {
      std::vector<Location> locs;
      for (const auto& m : s.mappings) locs.push_back(m.location);
      auto plans = planChannels(ctx, br, locs);
      ASSERT_TRUE(plans.has_value());
      std::size_t dataEdges = 0;
      for (const auto& e : br.interClusterEdges) dataEdges += e.kind == fspec::EdgeKind::Data;
      EXPECT_EQ(plans->size(), dataEdges);
    }
  }
}

}  // namespace
}  // namespace ipweave::annotator
