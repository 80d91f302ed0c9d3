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

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ipweave/analysis/facts.h"

namespace ipweave::analysis {

struct CallGraph {
  std::map<std::string, std::set<std::string>> callees;
  std::map<std::string, std::set<std::string>> callers;
  // Methods that start executions: never called, or only reachable from
  // each other through recursion.
  std::vector<std::string> roots;

  static CallGraph build(const ProgramFacts& facts);
  bool isRoot(const std::string& method) const;
};

// Dense bitset over interned variable ids.
class VarSet {
 public:
  VarSet() = default;
  explicit VarSet(std::size_t n) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  void unite(const VarSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  }
  void intersect(const VarSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  }
  bool operator==(const VarSet&) const = default;

 private:
  std::vector<std::uint64_t> words_;
};

// Must-analysis state; an unreachable state is the lattice top.
struct InitState {
  bool reachable = false;
  VarSet vars;

  void meet(const InitState& o);
  bool operator==(const InitState&) const = default;
};

// A definition of `key` executing at insertion point (block, index); used to
// ask whether a snippet placed there would initialize a variable elsewhere.
struct VirtualDef {
  minilang::BlockAddress block;
  std::size_t index = 0;
  std::string key;
};

// Interprocedural forward must-initialization over the structured AST.
// Field initializers and parameters count as assigned everywhere; method
// entry states intersect the states at all call sites; callee effects come
// from per-method summaries.
class MustInit {
 public:
  MustInit(const ProgramFacts& facts, const CallGraph& graph, std::optional<VirtualDef> extra = {});

  // True when `key` is assigned on every path reaching the insertion point.
  // Unreachable points report true.
  bool initializedAt(const minilang::BlockAddress& block, std::size_t index, const std::string& key) const;
  bool reachable(const minilang::BlockAddress& block, std::size_t index) const;

 private:
  struct Pass;

  std::size_t id(const std::string& key) const { return ids_.at(key); }

  const ProgramFacts* facts_;
  const CallGraph* graph_;
  std::map<std::string, std::size_t> ids_;
  std::optional<VirtualDef> extra_;
  std::size_t extraId_ = 0;
  std::map<minilang::BlockAddress, std::vector<InitState>> points_;
};

}  // namespace ipweave::analysis
