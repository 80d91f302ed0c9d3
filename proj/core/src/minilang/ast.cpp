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

#include "ipweave/minilang/ast.h"

#include <algorithm>
#include <sstream>

#include "ipweave/error.h"

namespace ipweave::minilang {

Expr Expr::name(std::string id, int line) {
  Expr e;
  e.kind = ExprKind::Name;
  e.text = std::move(id);
  e.line = line;
  return e;
}

Expr Expr::fieldAccess(Expr object, std::string member, int line) {
  Expr e;
  e.kind = ExprKind::FieldAccess;
  e.text = std::move(member);
  e.operands.push_back(std::move(object));
  e.line = line;
  return e;
}

Expr Expr::call(std::optional<Expr> receiver, std::string method, std::vector<Expr> args, int line) {
  Expr e;
  e.kind = ExprKind::Call;
  e.text = std::move(method);
  e.line = line;
  if (receiver) {
    e.hasReceiver = true;
    e.operands.push_back(std::move(*receiver));
  }
  for (auto& a : args) e.operands.push_back(std::move(a));
  return e;
}

Expr Expr::newObject(std::string type, std::vector<Expr> args, int line) {
  Expr e;
  e.kind = ExprKind::New;
  e.text = std::move(type);
  e.operands = std::move(args);
  e.line = line;
  return e;
}

std::span<const Expr> Expr::callArgs() const {
  std::span<const Expr> all(operands);
  if (kind == ExprKind::Call && hasReceiver) return all.subspan(1);
  return all;
}

Statement Statement::localDecl(std::string type, std::string name, std::optional<Expr> init, int line) {
  Statement s;
  s.kind = StmtKind::LocalDecl;
  s.typeName = std::move(type);
  s.name = std::move(name);
  s.expr = std::move(init);
  s.line = line;
  return s;
}

Statement Statement::assign(Expr target, Expr value, int line) {
  Statement s;
  s.kind = StmtKind::Assign;
  s.target = std::move(target);
  s.expr = std::move(value);
  s.line = line;
  return s;
}

Statement Statement::exprStatement(Expr e, int line) {
  Statement s;
  s.kind = e.kind == ExprKind::Call ? StmtKind::Call : StmtKind::ExprStmt;
  s.expr = std::move(e);
  s.line = line;
  return s;
}

Statement Statement::returnStatement(std::optional<Expr> value, int line) {
  Statement s;
  s.kind = StmtKind::Return;
  s.expr = std::move(value);
  s.line = line;
  return s;
}

namespace {

bool hasModifier(const std::vector<std::string>& mods, std::string_view m) {
  return std::find(mods.begin(), mods.end(), m) != mods.end();
}

}  // namespace

bool FieldDecl::isStatic() const { return hasModifier(modifiers, "static"); }
bool MethodDecl::isStatic() const { return hasModifier(modifiers, "static"); }
bool ClassDecl::isStatic() const { return hasModifier(modifiers, "static"); }

int SourceFile::lineOf(std::size_t offset) const {
  auto it = std::upper_bound(lineStarts.begin(), lineStarts.end(), offset);
  return static_cast<int>(it - lineStarts.begin());
}

// ---------------------------------------------------------------------------
// Addressing

namespace {

template <typename Program, typename Class>
Class& classAt(Program& program, std::size_t file, std::span<const std::size_t> classPath) {
  if (file >= program.files.size() || classPath.empty()) throw InvalidLocation("bad file or class path");
  auto& classes = program.files[file].classes;
  if (classPath[0] >= classes.size()) throw InvalidLocation("bad class index");
  Class* cls = &classes[classPath[0]];
  for (std::size_t i = 1; i < classPath.size(); ++i) {
    if (classPath[i] >= cls->innerClasses.size()) throw InvalidLocation("bad inner class index");
    cls = &cls->innerClasses[classPath[i]];
  }
  return *cls;
}

template <typename Program, typename Class, typename Blk>
Blk& blockAt(Program& program, const BlockAddress& address) {
  Class& cls = classAt<Program, Class>(program, address.file, address.classPath);
  if (address.method >= cls.methods.size()) throw InvalidLocation("bad method index");
  Blk* block = &cls.methods[address.method].body;
  for (auto [stmt, sub] : address.nested) {
    if (stmt >= block->statements.size()) throw InvalidLocation("bad statement index in block path");
    auto& s = block->statements[stmt];
    if (sub >= s.blocks.size()) throw InvalidLocation("bad sub-block index in block path");
    block = &s.blocks[sub];
  }
  return *block;
}

}  // namespace

const ClassDecl& resolveClass(const MiniProgram& program, std::size_t file, std::span<const std::size_t> classPath) {
  return classAt<const MiniProgram, const ClassDecl>(program, file, classPath);
}

ClassDecl& resolveClass(MiniProgram& program, std::size_t file, std::span<const std::size_t> classPath) {
  return classAt<MiniProgram, ClassDecl>(program, file, classPath);
}

const MethodDecl& resolveMethod(const MiniProgram& program, const BlockAddress& address) {
  const auto& cls = resolveClass(program, address.file, address.classPath);
  if (address.method >= cls.methods.size()) throw InvalidLocation("bad method index");
  return cls.methods[address.method];
}

const Block& resolveBlock(const MiniProgram& program, const BlockAddress& address) {
  return blockAt<const MiniProgram, const ClassDecl, const Block>(program, address);
}

Block& resolveBlock(MiniProgram& program, const BlockAddress& address) {
  return blockAt<MiniProgram, ClassDecl, Block>(program, address);
}

// ---------------------------------------------------------------------------
// Layout and insertion

namespace {

bool isEmptyBlock(const Block& b) { return b.statements.empty() && b.trailingComments.empty(); }

void shiftExpr(Expr& e, int from, int delta) {
  if (e.line >= from) e.line += delta;
  for (auto& op : e.operands) shiftExpr(op, from, delta);
}

void shiftBlock(Block& b, int from, int delta);

void shiftStatement(Statement& s, int from, int delta) {
  if (s.line >= from) s.line += delta;
  if (s.target) shiftExpr(*s.target, from, delta);
  if (s.expr) shiftExpr(*s.expr, from, delta);
  for (auto& b : s.blocks) shiftBlock(b, from, delta);
}

void shiftBlock(Block& b, int from, int delta) {
  if (b.openLine >= from) b.openLine += delta;
  if (b.closeLine >= from) b.closeLine += delta;
  for (auto& s : b.statements) shiftStatement(s, from, delta);
}

void shiftClass(ClassDecl& c, int from, int delta) {
  if (c.line >= from) c.line += delta;
  if (c.endLine >= from) c.endLine += delta;
  for (auto& f : c.fields) {
    if (f.line >= from) f.line += delta;
    if (f.initializer) shiftExpr(*f.initializer, from, delta);
  }
  for (auto& m : c.methods) {
    if (m.line >= from) m.line += delta;
    if (m.endLine >= from) m.endLine += delta;
    shiftBlock(m.body, from, delta);
  }
  for (auto& inner : c.innerClasses) shiftClass(inner, from, delta);
}

void setExprLine(Expr& e, int line) {
  e.line = line;
  for (auto& op : e.operands) setExprLine(op, line);
}

int layoutBlock(Block& b, int line);

// Assigns positions the way the emitter prints; returns the next free line.
int layoutStatement(Statement& s, int line) {
  line += static_cast<int>(s.comments.size());
  s.line = line;
  if (s.target) setExprLine(*s.target, line);
  if (s.expr) setExprLine(*s.expr, line);
  if (!s.isCompound()) return line + 1;
  int next = layoutBlock(s.blocks[0], line);
  if (s.blocks.size() > 1) {
    // `} else {` / `} else if (...) {` share the close line of the then-block.
    Block& alt = s.blocks[1];
    if (s.elseIf && alt.statements.size() == 1 && alt.statements[0].comments.empty()) {
      alt.openLine = next - 1;
      next = layoutStatement(alt.statements[0], next - 1);
      alt.closeLine = next - 1;
    } else {
      next = layoutBlock(alt, next - 1);
    }
  }
  return next;
}

// `line` is the line holding the opening brace.
int layoutBlock(Block& b, int line) {
  b.openLine = line;
  if (isEmptyBlock(b)) {
    b.closeLine = line;
    return line + 1;
  }
  int cur = line + 1;
  for (auto& s : b.statements) cur = layoutStatement(s, cur);
  cur += static_cast<int>(b.trailingComments.size());
  b.closeLine = cur;
  return cur + 1;
}

}  // namespace

int emittedLineCount(const Statement& stmt) {
  Statement copy = stmt;
  return layoutStatement(copy, 1) - 1;
}

int anchorLine(const MiniProgram& program, const BlockAddress& address, std::size_t index) {
  const Block& block = resolveBlock(program, address);
  if (index > block.statements.size()) throw InvalidLocation("statement index past end of block");
  if (index < block.statements.size()) {
    const auto& s = block.statements[index];
    return s.line - static_cast<int>(s.comments.size());
  }
  return block.closeLine;
}

MiniProgram insertStatements(const MiniProgram& program, const BlockAddress& address, std::size_t index,
                             std::vector<Statement> stmts) {
  const Block& original = resolveBlock(program, address);
  if (index > original.statements.size()) throw InvalidLocation("statement index past end of block");
  if (stmts.empty()) return program;
  // A `{ }` block printed on one line opens onto separate lines once it has
  // content, which costs one extra line for the closing brace.
  const bool inlineEmpty = isEmptyBlock(original) && original.openLine == original.closeLine;
  const int start = inlineEmpty ? original.openLine + 1 : anchorLine(program, address, index);

  MiniProgram out = program;
  int cursor = start;
  for (auto& s : stmts) cursor = layoutStatement(s, cursor);
  const int delta = cursor - start + (inlineEmpty ? 1 : 0);

  if (delta > 0) {
    for (auto& cls : out.files[address.file].classes) shiftClass(cls, start, delta);
  }
  Block& block = resolveBlock(out, address);
  if (inlineEmpty && !stmts.empty()) block.closeLine = cursor;
  block.statements.insert(block.statements.begin() + static_cast<std::ptrdiff_t>(index),
                          std::make_move_iterator(stmts.begin()), std::make_move_iterator(stmts.end()));
  return out;
}

// ---------------------------------------------------------------------------
// Structural dump

std::string exprToString(const Expr& e) {
  auto join = [](std::span<const Expr> xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out += ", ";
      out += exprToString(xs[i]);
    }
    return out;
  };
  switch (e.kind) {
    case ExprKind::Name:
    case ExprKind::Literal:
      return e.text;
    case ExprKind::This:
      return "this";
    case ExprKind::FieldAccess:
      return exprToString(e.operands[0]) + "." + e.text;
    case ExprKind::Call:
      return (e.hasReceiver ? exprToString(e.operands[0]) + "." : std::string()) + e.text + "(" +
             join(e.callArgs()) + ")";
    case ExprKind::New:
      return "new " + e.text + "(" + join(e.operands) + ")";
    case ExprKind::Index:
      return exprToString(e.operands[0]) + "[" + exprToString(e.operands[1]) + "]";
    case ExprKind::Binary:
      return exprToString(e.operands[0]) + " " + e.text + " " + exprToString(e.operands[1]);
    case ExprKind::Unary:
      return e.text + exprToString(e.operands[0]);
    case ExprKind::Paren:
      return "(" + exprToString(e.operands[0]) + ")";
  }
  return {};
}

namespace {

void dumpComments(std::ostream& os, const std::vector<std::string>& comments, const std::string& indent) {
  for (const auto& c : comments) os << indent << "comment " << c << "\n";
}

void dumpBlock(std::ostream& os, const Block& b, const std::string& indent);

void dumpStatement(std::ostream& os, const Statement& s, const std::string& indent) {
  dumpComments(os, s.comments, indent);
  static const char* kNames[] = {"local", "assign", "call", "return", "if", "while", "expr"};
  os << indent << kNames[static_cast<int>(s.kind)];
  if (s.kind == StmtKind::LocalDecl) os << " " << s.typeName << " " << s.name;
  if (s.target) os << " target=" << exprToString(*s.target);
  if (s.expr) os << " expr=" << exprToString(*s.expr);
  if (s.elseIf) os << " elseif";
  os << "\n";
  for (const auto& b : s.blocks) dumpBlock(os, b, indent + "  ");
}

void dumpBlock(std::ostream& os, const Block& b, const std::string& indent) {
  os << indent << "{\n";
  for (const auto& s : b.statements) dumpStatement(os, s, indent + "  ");
  dumpComments(os, b.trailingComments, indent + "  ");
  os << indent << "}\n";
}

void joinInto(std::ostream& os, const std::vector<std::string>& xs) {
  for (const auto& x : xs) os << x << " ";
}

void dumpClass(std::ostream& os, const ClassDecl& c, const std::string& indent) {
  dumpComments(os, c.comments, indent);
  os << indent << "class ";
  joinInto(os, c.modifiers);
  os << c.qualifiedName << "\n";
  for (auto [kind, idx] : c.order) {
    switch (kind) {
      case MemberKind::Field: {
        const auto& f = c.fields[idx];
        dumpComments(os, f.comments, indent + "  ");
        os << indent << "  field ";
        joinInto(os, f.modifiers);
        os << f.typeName << " " << f.name;
        if (f.initializer) os << " = " << exprToString(*f.initializer);
        os << "\n";
        break;
      }
      case MemberKind::Method: {
        const auto& m = c.methods[idx];
        dumpComments(os, m.comments, indent + "  ");
        os << indent << "  method ";
        joinInto(os, m.modifiers);
        os << m.returnType << " " << m.qualifiedName << "(";
        for (const auto& p : m.params) os << p.typeName << " " << p.name << ",";
        os << ")\n";
        dumpBlock(os, m.body, indent + "  ");
        break;
      }
      case MemberKind::Class:
        dumpClass(os, c.innerClasses[idx], indent + "  ");
        break;
    }
  }
  os << indent << "end\n";
}

}  // namespace

std::string structuralDump(const SourceFile& file) {
  std::ostringstream os;
  dumpComments(os, file.headerComments, "");
  os << "file " << file.path << "\npackage " << file.packageName << "\n";
  for (const auto& i : file.imports) os << "import " << i << "\n";
  for (const auto& c : file.classes) dumpClass(os, c, "");
  return os.str();
}

std::string structuralDump(const MiniProgram& program) {
  std::string out;
  for (const auto& f : program.files) out += structuralDump(f);
  return out;
}

bool structurallyEqual(const MiniProgram& a, const MiniProgram& b) { return structuralDump(a) == structuralDump(b); }

}  // namespace ipweave::minilang
