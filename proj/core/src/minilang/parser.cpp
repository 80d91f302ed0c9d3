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

#include "ipweave/minilang/parser.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "ipweave/error.h"

namespace ipweave::minilang {

namespace {

enum class Tok { Ident, Int, Double, String, Char, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 0;
  std::vector<std::string> comments;
};

class Lexer {
 public:
  Lexer(const std::string& path, const std::string& text) : path_(path), text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    std::vector<std::string> pending;
    while (true) {
      skipSpaceAndComments(pending);
      Token t;
      t.line = line_;
      t.comments = std::move(pending);
      pending.clear();
      if (pos_ >= text_.size()) {
        t.kind = Tok::End;
        out.push_back(std::move(t));
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '_' || text_[pos_] == '$'))
          ++pos_;
        t.kind = Tok::Ident;
        t.text = text_.substr(start, pos_ - start);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        t.kind = Tok::Int;
        if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
          ++pos_;
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
          t.kind = Tok::Double;
        }
        if (pos_ < text_.size() && std::string_view("lLdDfF").find(text_[pos_]) != std::string_view::npos) ++pos_;
        t.text = text_.substr(start, pos_ - start);
      } else if (c == '"' || c == '\'') {
        std::size_t start = pos_++;
        while (pos_ < text_.size() && text_[pos_] != c) {
          if (text_[pos_] == '\n') throw SyntaxError(path_, line_, "closing quote");
          if (text_[pos_] == '\\') ++pos_;
          ++pos_;
        }
        if (pos_ >= text_.size()) throw SyntaxError(path_, line_, "closing quote");
        ++pos_;
        t.kind = c == '"' ? Tok::String : Tok::Char;
        t.text = text_.substr(start, pos_ - start);
      } else {
        static const char* kTwo[] = {"==", "!=", "<=", ">=", "&&", "||"};
        t.kind = Tok::Punct;
        for (const char* two : kTwo) {
          if (text_.compare(pos_, 2, two) == 0) {
            t.text = two;
            break;
          }
        }
        if (t.text.empty()) {
          if (std::string_view("{}()[];,.=<>+-*/%!").find(c) == std::string_view::npos)
            throw SyntaxError(path_, line_, "a valid token");
          t.text = std::string(1, c);
        }
        pos_ += t.text.size();
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void skipSpaceAndComments(std::vector<std::string>& comments) {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (text_.compare(pos_, 2, "//") == 0) {
        std::size_t end = text_.find('\n', pos_);
        if (end == std::string::npos) end = text_.size();
        comments.push_back(trimRight(text_.substr(pos_, end - pos_)));
        pos_ = end;
      } else if (text_.compare(pos_, 2, "/*") == 0) {
        std::size_t end = text_.find("*/", pos_ + 2);
        if (end == std::string::npos) throw SyntaxError(path_, line_, "end of block comment");
        std::string body = text_.substr(pos_, end + 2 - pos_);
        line_ += static_cast<int>(std::count(body.begin(), body.end(), '\n'));
        // Multi-line block comments are kept one entry per line.
        std::istringstream is(body);
        std::string ln;
        while (std::getline(is, ln)) comments.push_back(trimBoth(ln));
        pos_ = end + 2;
      } else {
        return;
      }
    }
  }

  static std::string trimRight(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
  }

  static std::string trimBoth(std::string s) {
    s = trimRight(std::move(s));
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(i);
  }

  const std::string& path_;
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

const std::set<std::string, std::less<>> kModifiers = {"public", "private", "protected", "static", "final"};
const std::set<std::string, std::less<>> kReserved = {"package", "import", "class",  "return", "if",
                                                      "else",    "while",  "new",    "this",   "true",
                                                      "false",   "null",   "public", "private", "protected",
                                                      "static",  "final",  "void"};

class Parser {
 public:
  Parser(std::string path, std::vector<Token> tokens) : path_(std::move(path)), toks_(std::move(tokens)) {}

  SourceFile parseFile() {
    SourceFile file;
    file.path = path_;
    if (isWord("package")) {
      file.headerComments = peek().comments;
      next();
      file.packageName = parseQualifiedName();
      expect(";");
    }
    while (isWord("import")) {
      next();
      std::string name = parseQualifiedName();
      if (isPunct(".")) {
        next();
        expect("*");
        name += ".*";
      }
      expect(";");
      file.imports.push_back(std::move(name));
    }
    while (peek().kind != Tok::End) file.classes.push_back(parseClass(file.packageName));
    if (file.classes.empty()) fail("a class declaration");
    if (file.classes.size() > 1) throw SyntaxError(path_, file.classes[1].line, "one top-level class per file");
    return file;
  }

 private:
  // -- token helpers -------------------------------------------------------
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool isPunct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Punct && peek(ahead).text == p;
  }
  bool isWord(std::string_view w, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && peek(ahead).text == w;
  }
  bool isIdentifier(std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && !kReserved.contains(peek(ahead).text);
  }
  [[noreturn]] void fail(const std::string& expected) const { throw SyntaxError(path_, peek().line, expected); }
  const Token& expect(std::string_view p) {
    if (!isPunct(p)) fail("'" + std::string(p) + "'");
    return next();
  }
  std::string expectIdentifier() {
    if (!isIdentifier()) fail("identifier");
    return next().text;
  }

  std::string parseQualifiedName() {
    std::string name = expectIdentifier();
    while (isPunct(".") && isIdentifier(1)) {
      next();
      name += "." + next().text;
    }
    return name;
  }

  // Type := Ident ('.' Ident)* ('[' ']')*
  bool tryParseType(std::string& out) {
    if (!isIdentifier()) return false;
    out = parseQualifiedName();
    while (isPunct("[") && isPunct("]", 1)) {
      next();
      next();
      out += "[]";
    }
    return true;
  }

  std::vector<std::string> parseModifiers(std::vector<std::string>& comments) {
    std::vector<std::string> mods;
    comments = peek().comments;
    while (peek().kind == Tok::Ident && kModifiers.contains(peek().text)) mods.push_back(next().text);
    return mods;
  }

  // -- declarations --------------------------------------------------------
  ClassDecl parseClass(const std::string& outerName) {
    ClassDecl cls;
    cls.modifiers = parseModifiers(cls.comments);
    cls.line = peek().line;
    if (!isWord("class")) fail("'class'");
    next();
    cls.simpleName = expectIdentifier();
    cls.qualifiedName = outerName.empty() ? cls.simpleName : outerName + "." + cls.simpleName;
    parseClassBody(cls);
    return cls;
  }

  void parseClassBody(ClassDecl& cls) {
    expect("{");
    std::set<std::string> fieldNames, methodNames;
    while (!isPunct("}")) {
      if (peek().kind == Tok::End) fail("'}'");
      std::vector<std::string> comments;
      std::size_t save = pos_;
      std::vector<std::string> mods = parseModifiers(comments);
      if (isWord("class")) {
        pos_ = save;
        cls.innerClasses.push_back(parseClass(cls.qualifiedName));
        cls.order.emplace_back(MemberKind::Class, cls.innerClasses.size() - 1);
        continue;
      }
      int line = peek().line;
      std::string type;
      if (isWord("void")) {
        next();
        type = "void";
      } else if (!tryParseType(type)) {
        fail("member declaration");
      }
      std::string name = expectIdentifier();
      if (isPunct("(")) {
        MethodDecl m;
        m.simpleName = name;
        m.qualifiedName = cls.qualifiedName + "." + name;
        m.returnType = type;
        m.modifiers = std::move(mods);
        m.comments = std::move(comments);
        m.line = line;
        m.params = parseParams();
        m.body = parseBlock();
        m.endLine = m.body.closeLine;
        if (!methodNames.insert(name).second) throw DuplicateMemberError(cls.qualifiedName, name);
        cls.methods.push_back(std::move(m));
        cls.order.emplace_back(MemberKind::Method, cls.methods.size() - 1);
      } else {
        if (type == "void") fail("'(' after void member");
        FieldDecl f;
        f.name = name;
        f.typeName = type;
        f.modifiers = std::move(mods);
        f.comments = std::move(comments);
        f.line = line;
        if (isPunct("=")) {
          next();
          f.initializer = parseExpr();
        }
        expect(";");
        if (!fieldNames.insert(name).second) throw DuplicateMemberError(cls.qualifiedName, name);
        cls.fields.push_back(std::move(f));
        cls.order.emplace_back(MemberKind::Field, cls.fields.size() - 1);
      }
    }
    cls.endLine = next().line;
  }

  std::vector<Param> parseParams() {
    expect("(");
    std::vector<Param> params;
    std::set<std::string> names;
    if (!isPunct(")")) {
      while (true) {
        while (isWord("final")) next();
        Param p;
        if (!tryParseType(p.typeName)) fail("parameter type");
        p.name = expectIdentifier();
        if (!names.insert(p.name).second) fail("distinct parameter name");
        params.push_back(std::move(p));
        if (!isPunct(",")) break;
        next();
      }
    }
    expect(")");
    return params;
  }

  // -- statements ----------------------------------------------------------
  Block parseBlock() {
    Block b;
    b.openLine = expect("{").line;
    while (!isPunct("}")) {
      if (peek().kind == Tok::End) fail("'}'");
      b.statements.push_back(parseStatement());
    }
    const Token& close = next();
    b.trailingComments = close.comments;
    b.closeLine = close.line;
    return b;
  }

  Statement parseStatement() {
    Statement s;
    s.comments = peek().comments;
    s.line = peek().line;
    if (isWord("return")) {
      next();
      s.kind = StmtKind::Return;
      if (!isPunct(";")) s.expr = parseExpr();
      expect(";");
      return s;
    }
    if (isWord("if")) return parseIf();
    if (isWord("while")) {
      next();
      s.kind = StmtKind::While;
      expect("(");
      s.expr = parseExpr();
      expect(")");
      s.blocks.push_back(parseBlock());
      return s;
    }
    // Local declaration: Type Ident ('=' | ';')
    std::size_t save = pos_;
    std::string type;
    if (tryParseType(type) && isIdentifier() && (isPunct("=", 1) || isPunct(";", 1))) {
      s.kind = StmtKind::LocalDecl;
      s.typeName = type;
      s.name = next().text;
      if (isPunct("=")) {
        next();
        s.expr = parseExpr();
      }
      expect(";");
      return s;
    }
    pos_ = save;
    Expr e = parseExpr();
    if (isPunct("=")) {
      if (e.kind != ExprKind::Name && e.kind != ExprKind::FieldAccess && e.kind != ExprKind::Index)
        fail("assignable expression");
      next();
      s.kind = StmtKind::Assign;
      s.target = std::move(e);
      s.expr = parseExpr();
    } else {
      s.kind = e.kind == ExprKind::Call ? StmtKind::Call : StmtKind::ExprStmt;
      s.expr = std::move(e);
    }
    expect(";");
    return s;
  }

  Statement parseIf() {
    Statement s;
    s.comments = peek().comments;
    s.line = peek().line;
    next();
    s.kind = StmtKind::If;
    expect("(");
    s.expr = parseExpr();
    expect(")");
    s.blocks.push_back(parseBlock());
    if (isWord("else")) {
      next();
      if (isWord("if")) {
        Block b;
        b.openLine = peek().line;
        b.statements.push_back(parseIf());
        b.closeLine = b.statements.back().blocks.back().closeLine;
        s.blocks.push_back(std::move(b));
        s.elseIf = true;
      } else {
        s.blocks.push_back(parseBlock());
      }
    }
    return s;
  }

  // -- expressions ---------------------------------------------------------
  static int precedence(const Token& t) {
    if (t.kind != Tok::Punct) return -1;
    static const std::pair<const char*, int> kOps[] = {
        {"||", 1}, {"&&", 2}, {"==", 3}, {"!=", 3}, {"<", 4}, {">", 4}, {"<=", 4},
        {">=", 4}, {"+", 5},  {"-", 5},  {"*", 6},  {"/", 6}, {"%", 6}};
    for (auto [op, p] : kOps)
      if (t.text == op) return p;
    return -1;
  }

  Expr parseExpr(int minPrec = 1) {
    Expr lhs = parseUnary();
    while (true) {
      int p = precedence(peek());
      if (p < minPrec) return lhs;
      Token op = next();
      Expr rhs = parseExpr(p + 1);
      Expr bin;
      bin.kind = ExprKind::Binary;
      bin.text = op.text;
      bin.line = op.line;
      bin.operands.push_back(std::move(lhs));
      bin.operands.push_back(std::move(rhs));
      lhs = std::move(bin);
    }
  }

  Expr parseUnary() {
    if (isPunct("!") || isPunct("-")) {
      Expr u;
      u.kind = ExprKind::Unary;
      u.line = peek().line;
      u.text = next().text;
      u.operands.push_back(parseUnary());
      return u;
    }
    return parsePostfix(parsePrimary());
  }

  std::vector<Expr> parseArgs() {
    expect("(");
    std::vector<Expr> args;
    if (!isPunct(")")) {
      while (true) {
        args.push_back(parseExpr());
        if (!isPunct(",")) break;
        next();
      }
    }
    expect(")");
    return args;
  }

  Expr parsePrimary() {
    const Token& t = peek();
    int line = t.line;
    Expr e;
    e.line = line;
    switch (t.kind) {
      case Tok::Int:
      case Tok::Double:
      case Tok::String:
      case Tok::Char:
        e.kind = ExprKind::Literal;
        e.literal = t.kind == Tok::Int      ? LiteralKind::Int
                    : t.kind == Tok::Double ? LiteralKind::Double
                    : t.kind == Tok::String ? LiteralKind::String
                                            : LiteralKind::Char;
        e.text = next().text;
        return e;
      case Tok::Punct:
        if (t.text == "(") {
          next();
          e.kind = ExprKind::Paren;
          e.operands.push_back(parseExpr());
          expect(")");
          return e;
        }
        fail("expression");
      case Tok::End:
        fail("expression");
      case Tok::Ident:
        break;
    }
    if (t.text == "true" || t.text == "false" || t.text == "null") {
      e.kind = ExprKind::Literal;
      e.literal = t.text == "null" ? LiteralKind::Null : LiteralKind::Bool;
      e.text = next().text;
      return e;
    }
    if (t.text == "this") {
      next();
      e.kind = ExprKind::This;
      return e;
    }
    if (t.text == "new") {
      next();
      std::string type = parseQualifiedName();
      return Expr::newObject(std::move(type), parseArgs(), line);
    }
    std::string id = expectIdentifier();
    if (isPunct("(")) return Expr::call(std::nullopt, std::move(id), parseArgs(), line);
    return Expr::name(std::move(id), line);
  }

  Expr parsePostfix(Expr e) {
    while (true) {
      if (isPunct(".")) {
        int line = next().line;
        std::string member = expectIdentifier();
        if (isPunct("(")) {
          e = Expr::call(std::move(e), std::move(member), parseArgs(), line);
        } else {
          e = Expr::fieldAccess(std::move(e), std::move(member), line);
        }
      } else if (isPunct("[")) {
        Expr idx;
        idx.kind = ExprKind::Index;
        idx.line = next().line;
        idx.operands.push_back(std::move(e));
        idx.operands.push_back(parseExpr());
        expect("]");
        e = std::move(idx);
      } else {
        return e;
      }
    }
  }

  std::string path_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void checkDuplicateClasses(const MiniProgram& program) {
  std::set<std::string> seen;
  forEachClass(program, [&](const ClassDecl& c, std::size_t, std::span<const std::size_t>) {
    if (!seen.insert(c.qualifiedName).second) throw DuplicateClassError(c.qualifiedName);
  });
}

}  // namespace

SourceFile parseSource(std::string path, std::string text) {
  std::vector<Token> tokens = Lexer(path, text).run();
  SourceFile file = Parser(path, std::move(tokens)).parseFile();
  file.rawText = std::move(text);
  file.lineStarts.push_back(0);
  for (std::size_t i = 0; i < file.rawText.size(); ++i)
    if (file.rawText[i] == '\n') file.lineStarts.push_back(i + 1);
  return file;
}

MiniProgram parseSources(const std::vector<std::pair<std::string, std::string>>& sources, std::string rootDir) {
  MiniProgram program;
  program.rootDir = std::move(rootDir);
  for (const auto& [path, text] : sources) program.files.push_back(parseSource(path, text));
  if (program.files.empty()) throw NoSourcesFound(program.rootDir);
  checkDuplicateClasses(program);
  return program;
}

MiniProgram parseProgram(const std::filesystem::path& rootDir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(rootDir)) throw NoSourcesFound(rootDir.string());
  std::vector<std::string> rel;
  for (const auto& entry : fs::recursive_directory_iterator(rootDir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".mj")
      rel.push_back(fs::relative(entry.path(), rootDir).generic_string());
  }
  std::sort(rel.begin(), rel.end());
  std::vector<std::pair<std::string, std::string>> sources;
  for (const auto& r : rel) {
    std::ifstream in(rootDir / r, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    sources.emplace_back(r, ss.str());
  }
  return parseSources(sources, rootDir.string());
}

}  // namespace ipweave::minilang
