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

#include "ipweave/minilang/emitter.h"

#include <sstream>

namespace ipweave::minilang {

namespace {

class Printer {
 public:
  std::string file(const SourceFile& f) {
    for (const auto& c : f.headerComments) line(c);
    if (!f.packageName.empty()) {
      line("package " + f.packageName + ";");
      blank();
    }
    for (const auto& i : f.imports) line("import " + i + ";");
    if (!f.imports.empty()) blank();
    for (std::size_t i = 0; i < f.classes.size(); ++i) {
      if (i) blank();
      classDecl(f.classes[i]);
    }
    return os_.str();
  }

 private:
  static std::string mods(const std::vector<std::string>& m) {
    std::string out;
    for (const auto& x : m) out += x + " ";
    return out;
  }

  void classDecl(const ClassDecl& c) {
    for (const auto& cm : c.comments) line(cm);
    std::string head = mods(c.modifiers) + "class " + c.simpleName + " {";
    if (c.order.empty()) {
      line(head + " }");
      return;
    }
    line(head);
    ++depth_;
    MemberKind prev = MemberKind::Field;
    bool first = true;
    for (auto [kind, idx] : c.order) {
      if (!first && (kind != MemberKind::Field || prev != MemberKind::Field)) blank();
      first = false;
      prev = kind;
      switch (kind) {
        case MemberKind::Field: {
          const auto& f = c.fields[idx];
          for (const auto& cm : f.comments) line(cm);
          std::string text = mods(f.modifiers) + f.typeName + " " + f.name;
          if (f.initializer) text += " = " + exprToString(*f.initializer);
          line(text + ";");
          break;
        }
        case MemberKind::Method:
          method(c.methods[idx]);
          break;
        case MemberKind::Class:
          classDecl(c.innerClasses[idx]);
          break;
      }
    }
    --depth_;
    line("}");
  }

  void method(const MethodDecl& m) {
    for (const auto& cm : m.comments) line(cm);
    std::string head = mods(m.modifiers) + m.returnType + " " + m.simpleName + "(";
    for (std::size_t i = 0; i < m.params.size(); ++i) {
      if (i) head += ", ";
      head += m.params[i].typeName + " " + m.params[i].name;
    }
    head += ") ";
    block(head, m.body, "");
  }

  // Prints `prefix{`, the body, then `}suffix`. Empty blocks print inline.
  void block(const std::string& prefix, const Block& b, const std::string& suffix) {
    if (b.statements.empty() && b.trailingComments.empty()) {
      line(prefix + "{ }" + suffix);
      return;
    }
    line(prefix + "{");
    body(b);
    line("}" + suffix);
  }

  void body(const Block& b) {
    ++depth_;
    for (const auto& s : b.statements) statement(s);
    for (const auto& c : b.trailingComments) line(c);
    --depth_;
  }

  void statement(const Statement& s) {
    for (const auto& c : s.comments) line(c);
    switch (s.kind) {
      case StmtKind::LocalDecl:
        line(s.typeName + " " + s.name + (s.expr ? " = " + exprToString(*s.expr) : std::string()) + ";");
        return;
      case StmtKind::Assign:
        line(exprToString(*s.target) + " = " + exprToString(*s.expr) + ";");
        return;
      case StmtKind::Call:
      case StmtKind::ExprStmt:
        line(exprToString(*s.expr) + ";");
        return;
      case StmtKind::Return:
        line(s.expr ? "return " + exprToString(*s.expr) + ";" : std::string("return;"));
        return;
      case StmtKind::While:
        block("while (" + exprToString(*s.expr) + ") ", s.blocks[0], "");
        return;
      case StmtKind::If:
        ifChain(s, "");
        return;
    }
  }

  void ifChain(const Statement& s, const std::string& lead) {
    std::string head = lead + "if (" + exprToString(*s.expr) + ") ";
    const Block& thenB = s.blocks[0];
    if (s.blocks.size() == 1) {
      block(head, thenB, "");
      return;
    }
    const Block& alt = s.blocks[1];
    const bool chain = s.elseIf && alt.statements.size() == 1 && alt.statements[0].kind == StmtKind::If &&
                       alt.statements[0].comments.empty() && alt.trailingComments.empty();
    if (thenB.statements.empty() && thenB.trailingComments.empty()) {
      line(head + "{");
    } else {
      line(head + "{");
      body(thenB);
    }
    if (chain) {
      ifChainTail(alt.statements[0]);
      return;
    }
    if (alt.statements.empty() && alt.trailingComments.empty()) {
      line("} else { }");
      return;
    }
    line("} else {");
    body(alt);
    line("}");
  }

  // Continues an if chain after the then-body: prints `} else if (...) {`.
  void ifChainTail(const Statement& s) {
    line("} else if (" + exprToString(*s.expr) + ") {");
    body(s.blocks[0]);
    if (s.blocks.size() == 1) {
      line("}");
      return;
    }
    const Block& alt = s.blocks[1];
    if (s.elseIf && alt.statements.size() == 1 && alt.statements[0].kind == StmtKind::If &&
        alt.statements[0].comments.empty() && alt.trailingComments.empty()) {
      ifChainTail(alt.statements[0]);
      return;
    }
    line("} else {");
    body(alt);
    line("}");
  }

  void line(const std::string& text) {
    os_ << std::string(static_cast<std::size_t>(depth_) * 4, ' ') << text << "\n";
  }
  void blank() { os_ << "\n"; }

  std::ostringstream os_;
  int depth_ = 0;
};

}  // namespace

std::string emitFile(const SourceFile& file) { return Printer().file(file); }

std::map<std::string, std::string> emitProgram(const MiniProgram& program) {
  std::map<std::string, std::string> out;
  for (const auto& f : program.files) out[f.path] = emitFile(f);
  return out;
}

}  // namespace ipweave::minilang
