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

#include "ipweave/analysis/program_index.h"

#include <set>

namespace ipweave::analysis {

using minilang::ClassDecl;

namespace {

const std::set<std::string, std::less<>> kPrimitives = {"int",  "long", "short", "byte", "char",
                                                        "float", "double", "boolean", "void"};

const std::set<std::string, std::less<>> kJavaLang = {
    "String",    "Object",  "Integer", "Long",          "Double", "Float",     "Boolean",
    "Character", "Byte",    "Short",   "Math",          "System", "StringBuilder", "Exception",
    "Thread",    "Runtime", "Number",  "RuntimeException"};

}  // namespace

ProgramIndex::ProgramIndex(const minilang::MiniProgram& program) : program_(&program) {
  std::map<const ClassDecl*, std::string> outerOf;
  minilang::forEachClass(program, [&](const ClassDecl& cls, std::size_t file, std::span<const std::size_t> path) {
    ClassInfo info;
    info.qualifiedName = cls.qualifiedName;
    info.simpleName = cls.simpleName;
    info.packageName = program.files[file].packageName;
    info.isStatic = cls.isStatic();
    info.file = file;
    info.classPath.assign(path.begin(), path.end());
    info.decl = &cls;
    if (path.size() > 1) {
      const ClassDecl& parent = minilang::resolveClass(program, file, path.first(path.size() - 1));
      info.outer = parent.qualifiedName;
    }
    classByName_.emplace(info.qualifiedName, classes_.size());
    classes_.push_back(std::move(info));
  });
  for (const auto& cls : classes_) {
    for (std::size_t m = 0; m < cls.decl->methods.size(); ++m) {
      const auto& decl = cls.decl->methods[m];
      MethodInfo mi;
      mi.qualifiedName = decl.qualifiedName;
      mi.simpleName = decl.simpleName;
      mi.classQName = cls.qualifiedName;
      mi.isStatic = decl.isStatic();
      mi.body = minilang::BlockAddress{cls.file, cls.classPath, m, {}};
      mi.decl = &decl;
      methodByName_.emplace(mi.qualifiedName, methods_.size());
      methods_.push_back(std::move(mi));
    }
  }
}

const ClassInfo* ProgramIndex::findClass(const std::string& qualifiedName) const {
  auto it = classByName_.find(qualifiedName);
  return it == classByName_.end() ? nullptr : &classes_[it->second];
}

const MethodInfo* ProgramIndex::findMethod(const std::string& qualifiedName) const {
  auto it = methodByName_.find(qualifiedName);
  return it == methodByName_.end() ? nullptr : &methods_[it->second];
}

std::size_t ProgramIndex::methodIndex(const std::string& qualifiedName) const {
  return methodByName_.at(qualifiedName);
}

const MethodInfo* ProgramIndex::methodOf(const std::string& classQName, const std::string& simpleName) const {
  return findMethod(classQName + "." + simpleName);
}

const MethodInfo* ProgramIndex::lookupMethod(const std::string& fromClass, const std::string& simpleName) const {
  for (const ClassInfo* c : classChain(fromClass))
    if (const MethodInfo* m = methodOf(c->qualifiedName, simpleName)) return m;
  return nullptr;
}

std::vector<const ClassInfo*> ProgramIndex::classChain(const std::string& classQName) const {
  std::vector<const ClassInfo*> chain;
  for (const ClassInfo* c = findClass(classQName); c; c = c->outer.empty() ? nullptr : findClass(c->outer))
    chain.push_back(c);
  return chain;
}

bool ProgramIndex::isPrimitive(const std::string& type) { return kPrimitives.contains(type); }

std::string ProgramIndex::simpleTypeName(const std::string& type) {
  std::string base = type;
  while (base.size() > 2 && base.ends_with("[]")) base.resize(base.size() - 2);
  auto dot = base.rfind('.');
  return dot == std::string::npos ? base : base.substr(dot + 1);
}

std::optional<std::string> ProgramIndex::resolveClassName(const std::string& written,
                                                          const std::string& contextClass) const {
  if (findClass(written)) return written;
  auto dot = written.find('.');
  std::string head = written.substr(0, dot);
  std::string rest = dot == std::string::npos ? "" : written.substr(dot);

  // Lexically visible classes: members of the enclosing chain, then the
  // chain itself.
  for (const ClassInfo* c : classChain(contextClass)) {
    if (findClass(c->qualifiedName + "." + head)) {
      std::string q = c->qualifiedName + "." + head + rest;
      if (findClass(q)) return q;
    }
    if (c->simpleName == head) {
      std::string q = c->qualifiedName + rest;
      if (findClass(q)) return q;
    }
  }
  const ClassInfo* ctx = findClass(contextClass);
  if (!ctx) return std::nullopt;
  const auto& file = program_->files[ctx->file];
  for (const auto& imp : file.imports) {
    if (imp.ends_with("." + head)) {
      std::string q = imp + rest;
      if (findClass(q)) return q;
    }
  }
  std::string samePackage = file.packageName.empty() ? written : file.packageName + "." + written;
  if (findClass(samePackage)) return samePackage;
  for (const auto& imp : file.imports) {
    if (imp.ends_with(".*")) {
      std::string q = imp.substr(0, imp.size() - 1) + written;
      if (findClass(q)) return q;
    }
  }
  return std::nullopt;
}

std::string ProgramIndex::resolveType(const std::string& written, const std::string& contextClass) const {
  std::string base = written;
  std::string dims;
  while (base.size() > 2 && base.ends_with("[]")) {
    base.resize(base.size() - 2);
    dims += "[]";
  }
  if (isPrimitive(base)) return written;
  if (auto cls = resolveClassName(base, contextClass)) return *cls + dims;
  if (base.find('.') != std::string::npos) return written;

  const ClassInfo* ctx = findClass(contextClass);
  if (ctx) {
    for (const auto& imp : program_->files[ctx->file].imports)
      if (imp.ends_with("." + base)) return imp + dims;
  }
  if (kJavaLang.contains(base)) return "java.lang." + base + dims;
  if (ctx) {
    std::vector<std::string> wildcards;
    for (const auto& imp : program_->files[ctx->file].imports)
      if (imp.ends_with(".*")) wildcards.push_back(imp.substr(0, imp.size() - 1));
    if (wildcards.size() == 1) return wildcards.front() + base + dims;
  }
  return written;
}

}  // namespace ipweave::analysis
