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

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ipweave/analysis/must_init.h"

namespace ipweave::analysis {

using ScopeId = std::string;

// A maximal run of statements [begin, end) of one syntactic block. A run
// ends after an if/while statement or a statement calling a program method;
// every block ends with a (possibly empty) open run.
struct Scope {
  ScopeId id;  // "<method>#<ordinal>"
  std::string method;
  minilang::BlockAddress block;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t ordinal = 0;
};

struct DataEdge {
  std::size_t src = 0;
  std::size_t dst = 0;
  std::string typeName;
  std::string var;  // variable key carrying the value

  auto operator<=>(const DataEdge&) const = default;
};

class ScopeGraph {
 public:
  static ScopeGraph build(const ProgramFacts& facts);

  const std::vector<Scope>& nodes() const { return nodes_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& controlEdges() const { return control_; }
  const std::vector<DataEdge>& dataEdges() const { return data_; }

  std::optional<std::size_t> find(const ScopeId& id) const;
  // Throws UnknownScope.
  std::size_t indexOf(const ScopeId& id) const;
  const Scope& scope(const ScopeId& id) const { return nodes_[indexOf(id)]; }

  // Scopes of one syntactic block, in statement order.
  const std::vector<std::size_t>& scopesOf(const minilang::BlockAddress& block) const;
  // Scopes of a method in ordinal order.
  const std::vector<std::size_t>& scopesOfMethod(const std::string& method) const;
  // Scope holding insertion point `index` of `block` (the last scope when
  // index equals the block length).
  std::size_t scopeAt(const minilang::BlockAddress& block, std::size_t index) const;

  // True iff `b` is reachable from `a` over control edges; reflexive.
  bool executesBefore(std::size_t a, std::size_t b) const;
  bool executesBefore(const ScopeId& a, const ScopeId& b) const;

 private:
  friend class FlowBuilder;

  std::vector<Scope> nodes_;
  std::map<ScopeId, std::size_t> byId_;
  std::map<minilang::BlockAddress, std::vector<std::size_t>> byBlock_;
  std::map<std::string, std::vector<std::size_t>> byMethod_;
  std::vector<std::pair<std::size_t, std::size_t>> control_;
  std::vector<DataEdge> data_;

  std::vector<std::vector<std::size_t>> succ_;
  mutable std::map<std::size_t, std::vector<bool>> reachCache_;
  std::shared_ptr<std::mutex> cacheMu_ = std::make_shared<std::mutex>();
};

}  // namespace ipweave::analysis
