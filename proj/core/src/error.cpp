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

#include "ipweave/error.h"

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace ipweave {

SyntaxError::SyntaxError(std::string file, int line, std::string expected)
    : InputError(fmt::format("{}:{}: syntax error: expected {}", file, line, expected)),
      file_(std::move(file)),
      line_(line),
      expected_(std::move(expected)) {}

NoSourcesFound::NoSourcesFound(const std::string& dir)
    : InputError(fmt::format("no .mj sources found under '{}'", dir)) {}

DuplicateClassError::DuplicateClassError(const std::string& qualifiedName)
    : InputError(fmt::format("duplicate class '{}'", qualifiedName)) {}

DuplicateMemberError::DuplicateMemberError(const std::string& owner, const std::string& member)
    : InputError(fmt::format("duplicate member '{}' in '{}'", member, owner)) {}

UnknownScope::UnknownScope(const std::string& scopeId)
    : InputError(fmt::format("unknown scope '{}'", scopeId)) {}

FormatError::FormatError(int line, const std::string& what)
    : InputError(fmt::format("fspec line {}: {}", line, what)), line_(line) {}

MissingAnnotation::MissingAnnotation(int nodeId)
    : InputError(fmt::format("api node {} has no annotation", nodeId)) {}

CyclicClusterError::CyclicClusterError(int clusterId)
    : InputError(fmt::format("cluster {} has cyclic internal edges", clusterId)) {}

AbstractConstructorError::AbstractConstructorError(const std::string& type)
    : InputError(fmt::format("constructor of abstract type '{}' needs an alias to a concrete type", type)) {}

UnknownCluster::UnknownCluster(int clusterId)
    : InputError(fmt::format("unknown cluster {}", clusterId)) {}

Unsatisfiable::Unsatisfiable(std::vector<int> emptyHoles)
    : InfeasibleError(fmt::format("no candidate variables for holes {}", emptyHoles)),
      emptyHoles_(std::move(emptyHoles)) {}

MissingLabel::MissingLabel(const std::string& taskId)
    : InputError(fmt::format("task '{}' has no label.rec", taskId)) {}

}  // namespace ipweave
