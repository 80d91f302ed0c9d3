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

// AST for the `.mj` mini-language: a small Java-like subset with packages,
// imports, (nested) classes, fields, methods and structured statements.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ipweave::minilang {

enum class ExprKind { Name, This, Literal, FieldAccess, Call, New, Index, Binary, Unary, Paren };
enum class LiteralKind { String, Char, Int, Double, Bool, Null };

struct Expr {
  ExprKind kind = ExprKind::Name;
  // Identifier, member name, literal spelling, operator, or the type name of
  // a `new` expression.
  std::string text;
  LiteralKind literal = LiteralKind::Null;
  // Call only: operands[0] is the receiver expression.
  bool hasReceiver = false;
  std::vector<Expr> operands;
  int line = 0;

  static Expr name(std::string id, int line = 0);
  static Expr fieldAccess(Expr object, std::string member, int line = 0);
  static Expr call(std::optional<Expr> receiver, std::string method, std::vector<Expr> args, int line = 0);
  static Expr newObject(std::string type, std::vector<Expr> args, int line = 0);

  std::span<const Expr> callArgs() const;
  const Expr* receiver() const { return hasReceiver ? &operands.front() : nullptr; }
};

enum class StmtKind { LocalDecl, Assign, Call, Return, If, While, ExprStmt };

struct Statement;

struct Block {
  std::vector<Statement> statements;
  int openLine = 0;
  int closeLine = 0;
  // Comments between the last statement and the closing brace.
  std::vector<std::string> trailingComments;
};

struct Statement {
  StmtKind kind = StmtKind::ExprStmt;
  int line = 0;
  std::vector<std::string> comments;
  std::string typeName;  // LocalDecl
  std::string name;      // LocalDecl
  std::optional<Expr> target;  // Assign
  // LocalDecl initializer, Assign value, Call/ExprStmt expression, Return
  // value, If/While condition.
  std::optional<Expr> expr;
  // If: then [, else]. While: body.
  std::vector<Block> blocks;
  // If: the else branch is a lone `if` spelled `else if`.
  bool elseIf = false;

  bool isCompound() const { return kind == StmtKind::If || kind == StmtKind::While; }
  bool hasInitializer() const { return kind == StmtKind::LocalDecl && expr.has_value(); }

  static Statement localDecl(std::string type, std::string name, std::optional<Expr> init, int line = 0);
  static Statement assign(Expr target, Expr value, int line = 0);
  static Statement exprStatement(Expr e, int line = 0);
  static Statement returnStatement(std::optional<Expr> value, int line = 0);
};

struct Param {
  std::string name;
  std::string typeName;
};

struct FieldDecl {
  std::string name;
  std::string typeName;
  std::vector<std::string> modifiers;
  std::optional<Expr> initializer;
  int line = 0;
  std::vector<std::string> comments;

  bool isStatic() const;
  bool hasInitializer() const { return initializer.has_value(); }
};

struct MethodDecl {
  std::string simpleName;
  std::string qualifiedName;
  std::string returnType = "void";
  std::vector<std::string> modifiers;
  std::vector<Param> params;
  Block body;
  int line = 0;
  int endLine = 0;
  std::vector<std::string> comments;

  bool isStatic() const;
};

enum class MemberKind { Field, Method, Class };

struct ClassDecl {
  std::string simpleName;
  std::string qualifiedName;
  std::vector<std::string> modifiers;
  std::vector<FieldDecl> fields;
  std::vector<MethodDecl> methods;
  std::vector<ClassDecl> innerClasses;
  // Source order of members as (kind, index into the matching list).
  std::vector<std::pair<MemberKind, std::size_t>> order;
  int line = 0;
  int endLine = 0;
  std::vector<std::string> comments;

  bool isStatic() const;
};

struct SourceFile {
  std::string path;  // relative to the program root, '/' separated
  std::string packageName;
  std::vector<std::string> imports;
  std::vector<ClassDecl> classes;
  std::vector<std::string> headerComments;
  std::string rawText;
  std::vector<std::size_t> lineStarts;

  int lineOf(std::size_t offset) const;
};

struct MiniProgram {
  std::string rootDir;
  std::vector<SourceFile> files;
};

// Path from a file to a statement block: top-level class index, inner class
// indices, method index, then (statement index, block index) steps.
struct BlockAddress {
  std::size_t file = 0;
  std::vector<std::size_t> classPath;
  std::size_t method = 0;
  std::vector<std::pair<std::size_t, std::size_t>> nested;

  auto operator<=>(const BlockAddress&) const = default;
  bool operator==(const BlockAddress&) const = default;
};

const ClassDecl& resolveClass(const MiniProgram& program, std::size_t file, std::span<const std::size_t> classPath);
const MethodDecl& resolveMethod(const MiniProgram& program, const BlockAddress& address);
const Block& resolveBlock(const MiniProgram& program, const BlockAddress& address);
Block& resolveBlock(MiniProgram& program, const BlockAddress& address);
ClassDecl& resolveClass(MiniProgram& program, std::size_t file, std::span<const std::size_t> classPath);

// Number of source lines a statement occupies in emitted form.
int emittedLineCount(const Statement& stmt);

// Splices `stmts` into the addressed block before statement `index`
// (index == size appends). Lines of the inserted statements start at the
// anchor line; every later position in the same file shifts down.
MiniProgram insertStatements(const MiniProgram& program, const BlockAddress& address, std::size_t index,
                             std::vector<Statement> stmts);

// Line where code inserted at (address, index) lands in the current layout.
int anchorLine(const MiniProgram& program, const BlockAddress& address, std::size_t index);

// Position-free dump of the AST; two programs are structurally equal iff
// their dumps are equal.
std::string structuralDump(const MiniProgram& program);
std::string structuralDump(const SourceFile& file);
bool structurallyEqual(const MiniProgram& a, const MiniProgram& b);

std::string exprToString(const Expr& e);

// Calls fn(classDecl, file index, class path) for every class, outer first.
template <typename Fn>
void forEachClass(const MiniProgram& program, Fn&& fn);

}  // namespace ipweave::minilang

#include "ipweave/minilang/ast_inl.h"
