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
#include <functional>

#include "ipweave/error.h"
#include "ipweave/harness/harness.h"
#include "ipweave/minilang/emitter.h"
#include "ipweave/minilang/parser.h"
#include "ipweave/weave/pipeline.h"

namespace ipweave::weave {
namespace {

namespace fs = std::filesystem;
using minilang::Block;
using minilang::Statement;
const fs::path kData = IPWEAVE_DATA_DIR;

std::vector<fs::path> replicaTasks() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(kData / "replica"))
    if (e.is_directory()) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::string header(const Statement& s) {
  std::string h = std::to_string(static_cast<int>(s.kind)) + "|" + s.typeName + "|" + s.name + "|";
  if (s.target) h += minilang::exprToString(*s.target);
  h += "|";
  if (s.expr) h += minilang::exprToString(*s.expr);
  return h;
}

// Every original statement survives in order; only a trailing return may be
// rewritten when `patchable`.
bool embeds(const Block& orig, const Block& woven, bool patchable) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < orig.statements.size(); ++i) {
    const Statement& s = orig.statements[i];
    bool last = patchable && i + 1 == orig.statements.size() && s.kind == minilang::StmtKind::Return;
    bool found = false;
    for (; j < woven.statements.size(); ++j) {
      const Statement& w = woven.statements[j];
      bool same = last ? w.kind == minilang::StmtKind::Return : header(w) == header(s);
      if (same && w.blocks.size() == s.blocks.size()) {
        bool inner = true;
        for (std::size_t b = 0; b < s.blocks.size(); ++b) inner &= embeds(s.blocks[b], w.blocks[b], false);
        if (inner) {
          found = true;
          ++j;
          break;
        }
      }
    }
    if (!found) return false;
  }
  return true;
}

void expectNonDestructive(const minilang::MiniProgram& before, const minilang::MiniProgram& after) {
  std::map<std::string, const minilang::ClassDecl*> woven;
  minilang::forEachClass(after, [&](const minilang::ClassDecl& c, std::size_t, std::span<const std::size_t>) { woven[c.qualifiedName] = &c; });
  minilang::forEachClass(before, [&](const minilang::ClassDecl& c, std::size_t, std::span<const std::size_t>) {
    ASSERT_TRUE(woven.count(c.qualifiedName)) << c.qualifiedName;
    const auto& w = *woven[c.qualifiedName];
    for (const auto& f : c.fields) {
      auto it = std::find_if(w.fields.begin(), w.fields.end(), [&](const auto& g) { return g.name == f.name; });
      ASSERT_NE(it, w.fields.end());
      EXPECT_EQ(it->typeName, f.typeName);
      EXPECT_EQ(it->modifiers, f.modifiers);
    }
    ASSERT_EQ(w.methods.size(), c.methods.size());
    for (std::size_t m = 0; m < c.methods.size(); ++m)
      EXPECT_TRUE(embeds(c.methods[m].body, w.methods[m].body, true)) << c.methods[m].qualifiedName;
  });
}

TEST(Weave, MotivatingExample) {
  Synthesizer s(minilang::parseProgram(kData / "replica" / "t01_baseline"), fspec::loadFSpec(kData / "jaas.fspec"));
  auto r = s.synthesize(1);
  const std::string& text = r.files.at("example/JaasImplementor.mj");
  EXPECT_NE(text.find("    private LoginContext initializeLC(String moduleName) {\n"
                      "        javax.security.auth.callback.CallbackHandler ip_v1 = "
                      "new com.sun.security.auth.callback.TextCallbackHandler();\n"
                      "        javax.security.auth.login.LoginContext ip_v2 = "
                      "new javax.security.auth.login.LoginContext(moduleName, ip_v1);\n"
                      "        return ip_v2;\n"
                      "    }\n"),
            std::string::npos)
      << text;
  EXPECT_NE(text.find("    private void login(LoginContext lc) {\n        lc.login();\n    }\n"), std::string::npos);
  EXPECT_NE(text.find("        javax.security.auth.Subject ip_v3 = lc.getSubject();\n"
                      "        java.util.Set ip_v4 = ip_v3.getPrincipals();\n"),
            std::string::npos);
  ASSERT_EQ(r.report.channels.size(), 1u);
  EXPECT_EQ(r.report.channels[0].mechanism, annotator::ChannelKind::ReturnValue);
  EXPECT_NE(r.reportRec().find("channel 0 1 returnValue\n"), std::string::npos);
  EXPECT_NE(r.reportRec().find("placement 1 example/JaasImplementor.mj 14\n"), std::string::npos);
  EXPECT_NE(r.reportRec().find("score cas=0.5605 cds=1 cqs=1.0000\n"), std::string::npos);
}

TEST(Weave, InvariantsOverReplicaRankings) {
  auto spec = fspec::loadFSpec(kData / "jaas.fspec");
  int woven = 0;
  for (const auto& task : replicaTasks()) {
    auto program = minilang::parseProgram(task);
    Synthesizer s(program, spec);
    for (std::size_t rank = 1; rank <= std::min<std::size_t>(8, s.ranked().size()); ++rank) {
      SynthesisResult r;
      try {
        r = s.synthesize(rank);
      } catch (const Unsatisfiable&) {
        continue;
      }
      ++woven;
      // emitted text is a fixed point of parse and emit
      EXPECT_EQ(minilang::emitProgram(r.program), r.files) << task << " rank " << rank;
      expectNonDestructive(program, r.program);
      const auto& br = s.branches().at(static_cast<std::size_t>(s.ranked()[rank - 1].branchId));
      EXPECT_DOUBLE_EQ(harness::conformanceScore(r.program, spec, br), 1.0) << task << " rank " << rank;
    }
  }
  EXPECT_GE(woven, 60);
}

const char* kSingle =
    "fspec single\n"
    "node 1 kind=static class=lib.Audit method=record params=- return=void annotation=#Record\n"
    "start 1\nend 1\n";

TEST(Weave, SlotFreeSingleCluster) {
  Synthesizer s(minilang::parseSources({{"A.mj", "class A {\n    void record() {\n        int x = 1;\n    }\n}\n"}}),
                fspec::parseFSpec(kSingle));
  auto r = s.synthesize(1);
  EXPECT_TRUE(r.report.channels.empty());
  EXPECT_EQ(r.files.at("A.mj"), "class A {\n    void record() {\n        int x = 1;\n        lib.Audit.record();\n    }\n}\n");
}

const char* kPair =
    "fspec pair\n"
    "node 1 kind=constructor class=lib.Token method=Token params=- return=lib.Token annotation=#Issue\n"
    "node 2 kind=instance class=lib.Token method=check params=- return=void annotation=#Verify\n"
    "edge 1 2 kind=data freq=1\n"
    "start 1\nend 2\n";

TEST(Weave, SameBlockUsesTheTemp) {
  Synthesizer s(minilang::parseSources({{"A.mj", "class A {\n    void issueAndVerify() {\n        int x = 1;\n    }\n}\n"}}),
                fspec::parseFSpec(kPair));
  auto r = s.synthesize(1);
  ASSERT_EQ(r.report.channels.size(), 1u);
  EXPECT_EQ(r.report.channels[0].mechanism, annotator::ChannelKind::LocalTemp);
  EXPECT_EQ(r.files.at("A.mj"),
            "class A {\n    void issueAndVerify() {\n        int x = 1;\n        lib.Token ip_v1 = new lib.Token();\n"
            "        ip_v1.check();\n    }\n}\n");
}

TEST(Weave, FreshFieldWhenNothingElseCarriesTheValue) {
  Synthesizer s(minilang::parseSources({{"A.mj",
                                         "class A {\n"
                                         "    void issue() {\n    }\n"
                                         "    void verify() {\n    }\n"
                                         "    void main() {\n        issue();\n        verify();\n    }\n"
                                         "}\n"}}),
                fspec::parseFSpec(kPair));
  const auto& top = s.ranked().front();
  ASSERT_EQ(top.mappings[0].location.methodQName, "A.issue");
  ASSERT_EQ(top.mappings[1].location.methodQName, "A.verify");
  auto r = s.synthesize(1);
  ASSERT_EQ(r.report.channels.size(), 1u);
  EXPECT_EQ(r.report.channels[0].mechanism, annotator::ChannelKind::FreshField);
  const std::string& text = r.files.at("A.mj");
  EXPECT_NE(text.find("    private static lib.Token ip_Token_1;\n"), std::string::npos) << text;
  EXPECT_NE(text.find("        lib.Token ip_v1 = new lib.Token();\n        ip_Token_1 = ip_v1;\n"), std::string::npos);
  EXPECT_NE(text.find("        ip_Token_1.check();\n"), std::string::npos);
  EXPECT_DOUBLE_EQ(harness::conformanceScore(r.program, s.spec(), s.branches()[0]), 1.0);
}

TEST(Weave, FreshFieldAcrossTopLevelClassesIsQualified) {
  Synthesizer s(minilang::parseSources({{"p/A.mj",
                                         "package p;\n\npublic class A {\n"
                                         "    public static void issue() {\n    }\n"
                                         "    public static void main() {\n        issue();\n        B.verify();\n    }\n"
                                         "}\n"},
                                        {"p/B.mj",
                                         "package p;\n\npublic class B {\n"
                                         "    public static void verify() {\n    }\n"
                                         "}\n"}}),
                fspec::parseFSpec(kPair));
  auto r = s.synthesize(1);
  ASSERT_EQ(r.report.channels.size(), 1u);
  EXPECT_EQ(r.report.channels[0].mechanism, annotator::ChannelKind::FreshField);
  EXPECT_TRUE(r.report.channels[0].qualified);
  EXPECT_NE(r.files.at("p/A.mj").find("    static lib.Token ip_Token_1;\n"), std::string::npos);
  EXPECT_NE(r.files.at("p/B.mj").find("        p.A.ip_Token_1.check();\n"), std::string::npos);
  EXPECT_DOUBLE_EQ(harness::conformanceScore(r.program, s.spec(), s.branches()[0]), 1.0);
}

TEST(Weave, TempNamesAvoidExistingNames) {
  Synthesizer s(minilang::parseSources({{"A.mj", "class A {\n    int ip_v1;\n    void issueAndVerify() {\n    }\n}\n"}}),
                fspec::parseFSpec(kPair));
  auto r = s.synthesize(1);
  EXPECT_NE(r.files.at("A.mj").find("lib.Token ip_v2 = new lib.Token();"), std::string::npos);
}

TEST(Weave, Errors) {
  Synthesizer s(minilang::parseProgram(kData / "replica" / "t01_baseline"), fspec::loadFSpec(kData / "jaas.fspec"));
  auto plan = s.plan(1);
  auto res = resolve::resolve(plan.candidates);
  EXPECT_THROW(weave(s.context(), *plan.branch, *plan.set, plan.sketches, {}, res), ChannelFailure);

  annotator::MappingSet bad = *plan.set;
  bad.mappings[1].location.statementIndex = 99;
  EXPECT_THROW(weave(s.context(), *plan.branch, bad, plan.sketches, plan.channels, res), WeaveConflict);

  resolve::Resolution partial = res;
  partial.assignment.erase(partial.assignment.begin());
  EXPECT_THROW(weave(s.context(), *plan.branch, *plan.set, plan.sketches, plan.channels, partial), WeaveConflict);
  EXPECT_THROW(s.synthesize(0), InputError);
  EXPECT_THROW(s.synthesize(s.ranked().size() + 1), InputError);
}

TEST(Weave, QualifiedExpr) {
  EXPECT_EQ(minilang::exprToString(qualifiedExpr("a")), minilang::exprToString(minilang::Expr::name("a")));
  auto e = qualifiedExpr("p.A.f");
  EXPECT_EQ(e.kind, minilang::ExprKind::FieldAccess);
  EXPECT_EQ(e.text, "f");
  EXPECT_EQ(e.operands[0].text, "A");
}

TEST(Weave, Deterministic) {
  auto spec = fspec::loadFSpec(kData / "jaas.fspec");
  Synthesizer a(minilang::parseProgram(kData / "replica" / "t05_uninit_globals"), spec);
  Synthesizer b(minilang::parseProgram(kData / "replica" / "t05_uninit_globals"), spec);
  EXPECT_EQ(a.ranked(), b.ranked());
  EXPECT_EQ(a.synthesize(1).files, b.synthesize(1).files);
  EXPECT_EQ(a.synthesize(1).reportText(), b.synthesize(1).reportText());
}

}  // namespace
}  // namespace ipweave::weave
