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

// Per-statement facts for a program: resolved variable definitions and uses,
// call sites in evaluation order, and a flow-insensitive value-flow graph.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ipweave/analysis/program_index.h"

namespace ipweave::analysis {

enum class OriginKind { Local, Parameter, Field, StaticField };
enum class CallKind { Constructor, Instance, Static };

const char* originName(OriginKind kind);

struct VarDecl {
  std::string key;  // unique identity across the program
  std::string name;
  std::string typeName;  // fully qualified
  OriginKind origin = OriginKind::Local;
  std::string method;      // locals and parameters
  std::string ownerClass;  // fields
  minilang::BlockAddress block;  // locals: declaring block
  std::size_t stmtIndex = 0;     // locals: index inside `block`
  int line = 0;
  bool hasInitializer = false;

  bool isField() const { return origin == OriginKind::Field || origin == OriginKind::StaticField; }
};

struct CallSite {
  std::size_t id = 0;
  std::string method;  // enclosing method
  minilang::BlockAddress block;
  std::size_t stmtIndex = 0;
  int line = 0;
  std::string callee;  // program method, empty for calls leaving the program
  CallKind kind = CallKind::Instance;
  std::string ownerType;  // static type of the receiver or the named class
  std::string member;     // method name; "<init>" for constructors
  std::size_t argc = 0;
  // Value-flow nodes feeding each slot; instance calls list the receiver first.
  std::vector<std::vector<std::string>> inputs;
  std::string resultType;

  bool external() const { return callee.empty(); }
};

struct StmtFacts {
  std::vector<std::string> defs;  // assigned by the statement itself
  std::vector<std::string> uses;
  std::vector<std::size_t> calls;  // evaluation order; excludes nested blocks
};

// Return type of a call that leaves the program, if known.
using TypeOracle = std::function<std::optional<std::string>(const std::string& ownerType, const std::string& member,
                                                            CallKind kind, std::size_t argc)>;

std::string retNode(const std::string& method);
std::string callNode(std::size_t callId);

class ProgramFacts {
 public:
  explicit ProgramFacts(const ProgramIndex& index, TypeOracle oracle = {});

  const ProgramIndex& index() const { return *index_; }
  const std::map<std::string, VarDecl>& vars() const { return vars_; }
  const VarDecl& var(const std::string& key) const { return vars_.at(key); }
  const std::vector<CallSite>& callSites() const { return calls_; }
  const StmtFacts& at(const minilang::BlockAddress& block, std::size_t index) const;

  // Fields in declaration order.
  const std::vector<std::string>& fields() const { return fields_; }
  // Variables assigned by some statement (initializers excluded).
  const std::set<std::string>& assigned() const { return assigned_; }
  const std::vector<std::string>& paramsOf(const std::string& method) const;
  // Locals declared directly in `block`, as (statement index, key).
  const std::vector<std::pair<std::size_t, std::string>>& localsIn(const minilang::BlockAddress& block) const;

  // Origins (call-site and method-return tokens) that may flow into `node`.
  const std::set<std::string>& pointsTo(const std::string& node) const;

 private:
  friend class FactBuilder;

  const ProgramIndex* index_;
  std::map<std::string, VarDecl> vars_;
  std::vector<std::string> fields_;
  std::set<std::string> assigned_;
  std::map<std::string, std::vector<std::string>> params_;
  std::map<minilang::BlockAddress, std::vector<StmtFacts>> stmts_;
  std::map<minilang::BlockAddress, std::vector<std::pair<std::size_t, std::string>>> locals_;
  std::vector<CallSite> calls_;
  std::map<std::string, std::set<std::string>> flow_;  // copy edges src -> dst
  std::map<std::string, std::set<std::string>> pts_;
};

}  // namespace ipweave::analysis
