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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ipweave::fspec {

enum class NodeKind { Constructor, Instance, Static };
enum class EdgeKind { Data, Control };
enum class SlotRole { Target, Argument };

const char* kindName(NodeKind kind);
const char* edgeKindName(EdgeKind kind);

struct ApiNode {
  int id = 0;
  std::string ownerType;
  std::string memberName;
  NodeKind kind = NodeKind::Instance;
  std::vector<std::string> paramTypes;
  std::string returnType = "void";
  std::string annotation;
  // Owner is an interface or abstract class; constructing it needs an alias.
  bool abstractType = false;

  // Type of the value the call yields; empty for void methods.
  std::string producedType() const;
  bool operator==(const ApiNode&) const = default;
};

struct ApiEdge {
  int src = 0;
  int dst = 0;
  EdgeKind kind = EdgeKind::Data;
  int freq = 1;

  bool operator==(const ApiEdge&) const = default;
};

struct FSpec {
  std::string name;
  std::vector<ApiNode> nodes;
  std::vector<ApiEdge> edges;
  std::vector<int> startIds;
  std::vector<int> endIds;
  // alias type -> canonical type
  std::map<std::string, std::string> typeAliases;

  const ApiNode& node(int id) const;
  const ApiNode* findNode(int id) const;
  std::string canonical(const std::string& type) const;
  // Concrete type to instantiate for `type`: an alias whose canonical form
  // is `type`, or `type` itself.
  std::optional<std::string> concreteType(const std::string& type) const;

  bool operator==(const FSpec&) const = default;
};

// A signature position of an API call: the receiver (position -1) or an
// argument.
struct SlotRef {
  int nodeId = 0;
  int position = 0;
  std::string typeName;  // canonical
  SlotRole role = SlotRole::Argument;

  bool operator==(const SlotRef&) const = default;
};

std::vector<SlotRef> signatureSlots(const FSpec& spec, const ApiNode& node);

// Parses the line format; node annotations missing in the file fall back to
// the camel-case split of the member name and add a message to `warnings`.
FSpec parseFSpec(const std::string& text, std::vector<std::string>* warnings = nullptr);
FSpec loadFSpec(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);
std::string formatFSpec(const FSpec& spec);
void saveFSpec(const FSpec& spec, const std::filesystem::path& path);

// Checks every FSpec invariant; throws DanglingEdgeError, CycleError or
// FormatError (line 0 when the problem is not tied to one line).
void validateFSpec(const FSpec& spec);

std::string camelCaseAnnotation(const std::string& memberName);

}  // namespace ipweave::fspec
