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

#include "ipweave/analysis/facts.h"

#include <cctype>
#include <deque>

#include <fmt/format.h>

namespace ipweave::analysis {

using minilang::Block;
using minilang::BlockAddress;
using minilang::Expr;
using minilang::ExprKind;
using minilang::LiteralKind;
using minilang::Statement;
using minilang::StmtKind;

const char* originName(OriginKind kind) {
  switch (kind) {
    case OriginKind::Local: return "local";
    case OriginKind::Parameter: return "parameter";
    case OriginKind::Field: return "field";
    case OriginKind::StaticField: return "staticField";
  }
  return "?";
}

std::string retNode(const std::string& method) { return "RET:" + method; }
std::string callNode(std::size_t callId) { return fmt::format("CALL:{}", callId); }

namespace {

std::string fieldKey(const std::string& cls, const std::string& name) { return "F:" + cls + ":" + name; }

bool startsUpper(const std::string& s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

// Result of evaluating an expression: a value, a class reference, or a
// package prefix.
struct Value {
  std::string type;
  std::vector<std::string> sources;
  std::string var;       // resolved variable key
  std::string classRef;  // named class (program or external)
  std::string package;
};

const std::vector<std::string> kEmpty;
const std::vector<std::pair<std::size_t, std::string>> kNoLocals;
const std::set<std::string> kNoPts;

}  // namespace

class FactBuilder {
 public:
  FactBuilder(ProgramFacts& out, TypeOracle oracle) : out_(out), idx_(*out.index_), oracle_(std::move(oracle)) {}

  void run() {
    for (const auto& cls : idx_.classes()) {
      for (const auto& f : cls.decl->fields) {
        VarDecl v;
        v.key = fieldKey(cls.qualifiedName, f.name);
        v.name = f.name;
        v.typeName = idx_.resolveType(f.typeName, cls.qualifiedName);
        v.origin = f.isStatic() ? OriginKind::StaticField : OriginKind::Field;
        v.ownerClass = cls.qualifiedName;
        v.line = f.line;
        v.hasInitializer = f.hasInitializer();
        out_.fields_.push_back(v.key);
        out_.vars_.emplace(v.key, std::move(v));
      }
    }
    for (const auto& cls : idx_.classes()) {
      for (const auto& f : cls.decl->fields) {
        if (!f.initializer) continue;
        cls_ = cls.qualifiedName;
        method_.clear();
        recordCalls_ = false;
        env_.clear();
        Value v = eval(*f.initializer);
        flowInto(v.sources, fieldKey(cls.qualifiedName, f.name));
      }
    }
    recordCalls_ = true;
    for (const auto& m : idx_.methods()) {
      cls_ = m.classQName;
      method_ = m.qualifiedName;
      counter_ = 0;
      env_.assign(1, {});
      auto& params = out_.params_[m.qualifiedName];
      for (const auto& p : m.decl->params) {
        VarDecl v;
        v.key = "P:" + m.qualifiedName + ":" + p.name;
        v.name = p.name;
        v.typeName = idx_.resolveType(p.typeName, cls_);
        v.origin = OriginKind::Parameter;
        v.method = m.qualifiedName;
        v.block = m.body;
        v.line = m.decl->line;
        env_.back()[p.name] = v.key;
        params.push_back(v.key);
        out_.vars_.emplace(v.key, std::move(v));
      }
      walkBlock(m.decl->body, m.body);
    }
    propagate();
  }

 private:
  void walkBlock(const Block& block, const BlockAddress& addr) {
    env_.emplace_back();
    auto& facts = out_.stmts_[addr];
    facts.resize(block.statements.size());
    out_.locals_[addr];
    for (std::size_t i = 0; i < block.statements.size(); ++i) {
      const Statement& s = block.statements[i];
      cur_ = StmtFacts{};
      addr_ = &addr;
      index_ = i;
      line_ = s.line;
      walkStatement(s);
      out_.assigned_.insert(cur_.defs.begin(), cur_.defs.end());
      out_.stmts_[addr][i] = std::move(cur_);
      for (std::size_t b = 0; b < s.blocks.size(); ++b) {
        BlockAddress child = addr;
        child.nested.emplace_back(i, b);
        walkBlock(s.blocks[b], child);
      }
    }
    env_.pop_back();
  }

  void walkStatement(const Statement& s) {
    switch (s.kind) {
      case StmtKind::LocalDecl: {
        Value init;
        if (s.expr) init = eval(*s.expr);
        VarDecl v;
        v.key = fmt::format("L:{}:{}@{}:{}", method_, s.name, s.line, counter_++);
        v.name = s.name;
        v.typeName = idx_.resolveType(s.typeName, cls_);
        v.origin = OriginKind::Local;
        v.method = method_;
        v.block = *addr_;
        v.stmtIndex = index_;
        v.line = s.line;
        v.hasInitializer = s.expr.has_value();
        env_.back()[s.name] = v.key;
        out_.locals_[*addr_].emplace_back(index_, v.key);
        if (s.expr) {
          cur_.defs.push_back(v.key);
          flowInto(init.sources, v.key);
        }
        out_.vars_.emplace(v.key, std::move(v));
        break;
      }
      case StmtKind::Assign: {
        Value rhs = eval(*s.expr);
        Value lhs = evalTarget(*s.target);
        if (!lhs.var.empty()) {
          cur_.defs.push_back(lhs.var);
          flowInto(rhs.sources, lhs.var);
        }
        break;
      }
      case StmtKind::Return:
        if (s.expr) flowInto(eval(*s.expr).sources, retNode(method_));
        break;
      case StmtKind::Call:
      case StmtKind::ExprStmt:
      case StmtKind::If:
      case StmtKind::While:
        if (s.expr) eval(*s.expr);
        break;
    }
  }

  std::string lookupVar(const std::string& name) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (auto f = it->find(name); f != it->end()) return f->second;
    for (const ClassInfo* c : idx_.classChain(cls_)) {
      std::string key = fieldKey(c->qualifiedName, name);
      if (out_.vars_.contains(key)) return key;
    }
    return {};
  }

  void use(const std::string& key) {
    if (recordCalls_) cur_.uses.push_back(key);
  }

  Value varValue(const std::string& key) {
    Value v;
    v.var = key;
    v.type = out_.vars_.at(key).typeName;
    v.sources = {key};
    return v;
  }

  // Resolves the assigned location without counting it as a use.
  Value evalTarget(const Expr& e) {
    if (e.kind == ExprKind::Name) {
      std::string key = lookupVar(e.text);
      return key.empty() ? Value{} : varValue(key);
    }
    if (e.kind == ExprKind::FieldAccess) return member(eval(e.operands[0]), e.text);
    eval(e);
    return {};
  }

  Value member(const Value& obj, const std::string& name) {
    Value out;
    if (!obj.package.empty()) {
      std::string q = obj.package + "." + name;
      if (idx_.findClass(q) || startsUpper(name))
        out.classRef = q;
      else
        out.package = q;
      return out;
    }
    std::string owner = !obj.classRef.empty() ? obj.classRef : obj.type;
    if (idx_.findClass(owner)) {
      std::string key = fieldKey(owner, name);
      if (out_.vars_.contains(key)) return varValue(key);
      if (idx_.findClass(owner + "." + name)) {
        out.classRef = owner + "." + name;
        return out;
      }
    }
    if (name == "length" && obj.type.ends_with("[]")) out.type = "int";
    return out;
  }

  Value eval(const Expr& e) {
    switch (e.kind) {
      case ExprKind::Name: {
        if (std::string key = lookupVar(e.text); !key.empty()) {
          use(key);
          return varValue(key);
        }
        Value v;
        if (auto cls = idx_.resolveClassName(e.text, cls_))
          v.classRef = *cls;
        else if (startsUpper(e.text))
          v.classRef = idx_.resolveType(e.text, cls_);
        else
          v.package = e.text;
        return v;
      }
      case ExprKind::This: {
        Value v;
        v.type = cls_;
        return v;
      }
      case ExprKind::Literal: {
        Value v;
        switch (e.literal) {
          case LiteralKind::String: v.type = "java.lang.String"; break;
          case LiteralKind::Char: v.type = "char"; break;
          case LiteralKind::Int: v.type = "int"; break;
          case LiteralKind::Double: v.type = "double"; break;
          case LiteralKind::Bool: v.type = "boolean"; break;
          case LiteralKind::Null: break;
        }
        return v;
      }
      case ExprKind::FieldAccess: {
        Value v = member(eval(e.operands[0]), e.text);
        if (!v.var.empty()) use(v.var);
        return v;
      }
      case ExprKind::Paren: return eval(e.operands[0]);
      case ExprKind::Index: {
        Value arr = eval(e.operands[0]);
        eval(e.operands[1]);
        Value v;
        if (arr.type.ends_with("[]")) v.type = arr.type.substr(0, arr.type.size() - 2);
        return v;
      }
      case ExprKind::Unary: {
        Value v;
        v.type = e.text == "!" ? "boolean" : eval(e.operands[0]).type;
        if (e.text == "!") eval(e.operands[0]);
        return v;
      }
      case ExprKind::Binary: {
        Value l = eval(e.operands[0]);
        Value r = eval(e.operands[1]);
        static const std::set<std::string> kBool = {"==", "!=", "<", ">", "<=", ">=", "&&", "||"};
        Value v;
        if (kBool.contains(e.text))
          v.type = "boolean";
        else if (e.text == "+" && (l.type == "java.lang.String" || r.type == "java.lang.String"))
          v.type = "java.lang.String";
        else
          v.type = l.type;
        return v;
      }
      case ExprKind::New: {
        std::vector<std::vector<std::string>> inputs;
        for (const auto& a : e.operands) inputs.push_back(eval(a).sources);
        CallSite c;
        c.kind = CallKind::Constructor;
        c.ownerType = idx_.resolveType(e.text, cls_);
        c.member = "<init>";
        c.argc = e.operands.size();
        c.inputs = std::move(inputs);
        c.resultType = c.ownerType;
        Value v;
        v.type = c.ownerType;
        v.sources = {record(std::move(c))};
        return v;
      }
      case ExprKind::Call: return evalCall(e);
    }
    return {};
  }

  Value evalCall(const Expr& e) {
    Value recv;
    if (e.hasReceiver) recv = eval(e.operands[0]);
    std::vector<Value> args;
    for (const auto& a : e.callArgs()) args.push_back(eval(a));

    const MethodInfo* target = nullptr;
    if (!e.hasReceiver)
      target = idx_.lookupMethod(cls_, e.text);
    else if (!recv.classRef.empty())
      target = idx_.methodOf(recv.classRef, e.text);
    else if (!recv.type.empty())
      target = idx_.methodOf(recv.type, e.text);

    CallSite c;
    c.member = e.text;
    c.argc = args.size();
    if (e.hasReceiver && recv.classRef.empty() && recv.package.empty()) {
      c.kind = CallKind::Instance;
      c.inputs.push_back(recv.sources);
      c.ownerType = recv.type;
    } else {
      c.kind = CallKind::Static;
      c.ownerType = recv.classRef;
    }
    for (const auto& a : args) c.inputs.push_back(a.sources);

    Value v;
    if (target) {
      c.callee = target->qualifiedName;
      c.ownerType = target->classQName;
      c.kind = target->isStatic ? CallKind::Static : CallKind::Instance;
      const auto& params = target->decl->params;
      for (std::size_t i = 0; i < params.size() && i < args.size(); ++i)
        flowInto(args[i].sources, "P:" + target->qualifiedName + ":" + params[i].name);
      c.resultType = idx_.resolveType(target->decl->returnType, target->classQName);
      v.type = c.resultType;
      v.sources = {retNode(target->qualifiedName)};
      record(std::move(c));
      return v;
    }
    if (oracle_ && !c.ownerType.empty())
      if (auto rt = oracle_(c.ownerType, c.member, c.kind, c.argc)) c.resultType = *rt;
    v.type = c.resultType;
    v.sources = {record(std::move(c))};
    return v;
  }

  std::string record(CallSite c) {
    if (!recordCalls_) return {};
    c.id = out_.calls_.size();
    c.method = method_;
    c.block = *addr_;
    c.stmtIndex = index_;
    c.line = line_;
    cur_.calls.push_back(c.id);
    out_.calls_.push_back(std::move(c));
    return callNode(out_.calls_.back().id);
  }

  void flowInto(const std::vector<std::string>& sources, const std::string& dst) {
    for (const auto& s : sources)
      if (!s.empty()) out_.flow_[s].insert(dst);
  }

  void propagate() {
    std::vector<std::string> origins;
    for (const auto& c : out_.calls_) origins.push_back(callNode(c.id));
    for (const auto& m : idx_.methods()) origins.push_back(retNode(m.qualifiedName));
    for (const auto& o : origins) {
      std::deque<std::string> work{o};
      std::set<std::string> seen{o};
      while (!work.empty()) {
        std::string n = work.front();
        work.pop_front();
        out_.pts_[n].insert(o);
        if (auto it = out_.flow_.find(n); it != out_.flow_.end())
          for (const auto& d : it->second)
            if (seen.insert(d).second) work.push_back(d);
      }
    }
  }

  ProgramFacts& out_;
  const ProgramIndex& idx_;
  TypeOracle oracle_;
  std::string cls_;
  std::string method_;
  bool recordCalls_ = true;
  int counter_ = 0;
  std::vector<std::map<std::string, std::string>> env_;
  StmtFacts cur_;
  const BlockAddress* addr_ = nullptr;
  std::size_t index_ = 0;
  int line_ = 0;
};

ProgramFacts::ProgramFacts(const ProgramIndex& index, TypeOracle oracle) : index_(&index) {
  FactBuilder(*this, std::move(oracle)).run();
}

const StmtFacts& ProgramFacts::at(const BlockAddress& block, std::size_t index) const {
  return stmts_.at(block).at(index);
}

const std::vector<std::string>& ProgramFacts::paramsOf(const std::string& method) const {
  auto it = params_.find(method);
  return it == params_.end() ? kEmpty : it->second;
}

const std::vector<std::pair<std::size_t, std::string>>& ProgramFacts::localsIn(const BlockAddress& block) const {
  auto it = locals_.find(block);
  return it == locals_.end() ? kNoLocals : it->second;
}

const std::set<std::string>& ProgramFacts::pointsTo(const std::string& node) const {
  auto it = pts_.find(node);
  return it == pts_.end() ? kNoPts : it->second;
}

}  // namespace ipweave::analysis
