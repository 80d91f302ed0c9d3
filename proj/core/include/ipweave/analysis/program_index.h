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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ipweave/minilang/ast.h"

namespace ipweave::analysis {

struct ClassInfo {
  std::string qualifiedName;
  std::string simpleName;
  std::string packageName;
  std::string outer;  // qualified name of the lexically enclosing class, or empty
  bool isStatic = false;
  std::size_t file = 0;
  std::vector<std::size_t> classPath;
  const minilang::ClassDecl* decl = nullptr;
};

struct MethodInfo {
  std::string qualifiedName;
  std::string simpleName;
  std::string classQName;
  bool isStatic = false;
  minilang::BlockAddress body;  // address of the method body block
  const minilang::MethodDecl* decl = nullptr;
};

// Name and type resolution over a parsed program. Holds pointers into the
// program, which must outlive the index.
class ProgramIndex {
 public:
  explicit ProgramIndex(const minilang::MiniProgram& program);

  const minilang::MiniProgram& program() const { return *program_; }
  const std::vector<ClassInfo>& classes() const { return classes_; }
  const std::vector<MethodInfo>& methods() const { return methods_; }

  const ClassInfo* findClass(const std::string& qualifiedName) const;
  const MethodInfo* findMethod(const std::string& qualifiedName) const;
  std::size_t methodIndex(const std::string& qualifiedName) const;

  // Method `simpleName` declared on `classQName` (no inheritance).
  const MethodInfo* methodOf(const std::string& classQName, const std::string& simpleName) const;
  // Unqualified call resolution: the class itself, then enclosing classes.
  const MethodInfo* lookupMethod(const std::string& fromClass, const std::string& simpleName) const;

  // Resolves a type as written inside `contextClass` to a fully-qualified
  // name. Unknown names come back unchanged; `[]` suffixes are preserved.
  std::string resolveType(const std::string& written, const std::string& contextClass) const;

  // Resolves a class reference written as a (possibly dotted) name.
  std::optional<std::string> resolveClassName(const std::string& written, const std::string& contextClass) const;

  // Enclosing chain starting at `classQName` (innermost first).
  std::vector<const ClassInfo*> classChain(const std::string& classQName) const;

  static bool isPrimitive(const std::string& type);
  static std::string simpleTypeName(const std::string& type);

 private:
  const minilang::MiniProgram* program_;
  std::vector<ClassInfo> classes_;
  std::vector<MethodInfo> methods_;
  std::map<std::string, std::size_t> classByName_;
  std::map<std::string, std::size_t> methodByName_;
};

}  // namespace ipweave::analysis
