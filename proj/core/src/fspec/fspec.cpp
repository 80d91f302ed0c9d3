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

#include "ipweave/fspec/fspec.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "ipweave/error.h"
#include "ipweave/fspec/clustering.h"

namespace ipweave::fspec {

const char* kindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::Constructor: return "constructor";
    case NodeKind::Instance: return "instance";
    case NodeKind::Static: return "static";
  }
  return "?";
}

const char* edgeKindName(EdgeKind kind) { return kind == EdgeKind::Data ? "data" : "control"; }

std::string ApiNode::producedType() const {
  if (kind == NodeKind::Constructor) return ownerType;
  return returnType == "void" ? std::string() : returnType;
}

const ApiNode* FSpec::findNode(int id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

const ApiNode& FSpec::node(int id) const {
  if (const ApiNode* n = findNode(id)) return *n;
  throw DanglingEdgeError(fmt::format("unknown api node {}", id));
}

std::string FSpec::canonical(const std::string& type) const {
  auto it = typeAliases.find(type);
  return it == typeAliases.end() ? type : it->second;
}

std::optional<std::string> FSpec::concreteType(const std::string& type) const {
  for (const auto& [alias, canon] : typeAliases)
    if (canon == type && alias != type) return alias;
  const ApiNode* ctor = nullptr;
  for (const auto& n : nodes)
    if (n.kind == NodeKind::Constructor && n.ownerType == type) ctor = &n;
  if (ctor && ctor->abstractType) return std::nullopt;
  return type;
}

std::vector<SlotRef> signatureSlots(const FSpec& spec, const ApiNode& node) {
  std::vector<SlotRef> out;
  if (node.kind == NodeKind::Instance) out.push_back({node.id, -1, spec.canonical(node.ownerType), SlotRole::Target});
  for (std::size_t i = 0; i < node.paramTypes.size(); ++i)
    out.push_back({node.id, static_cast<int>(i), spec.canonical(node.paramTypes[i]), SlotRole::Argument});
  return out;
}

std::string camelCaseAnnotation(const std::string& memberName) {
  std::string out;
  for (std::size_t i = 0; i < memberName.size(); ++i) {
    char c = memberName[i];
    if (i > 0 && std::isupper(static_cast<unsigned char>(c)) &&
        !std::isupper(static_cast<unsigned char>(memberName[i - 1])))
      out += '_';
    out += c;
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int toInt(const std::string& s, int line, const char* what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw FormatError(line, fmt::format("bad {} '{}'", what, s));
  return v;
}

}  // namespace

FSpec parseFSpec(const std::string& text, std::vector<std::string>* warnings) {
  FSpec spec;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool named = false;
  std::set<int> ids;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0].front() == '#') continue;
    const std::string& d = tok[0];
    auto attrs = [&](std::size_t from) {
      std::map<std::string, std::string> kv;
      for (std::size_t i = from; i < tok.size(); ++i) {
        auto eq = tok[i].find('=');
        if (eq == std::string::npos || eq == 0) throw FormatError(line, "expected key=value, got '" + tok[i] + "'");
        if (!kv.emplace(tok[i].substr(0, eq), tok[i].substr(eq + 1)).second)
          throw FormatError(line, "repeated attribute " + tok[i].substr(0, eq));
      }
      return kv;
    };
    auto take = [&](std::map<std::string, std::string>& kv, const std::string& key) {
      auto it = kv.find(key);
      if (it == kv.end()) throw FormatError(line, "missing " + key + "=");
      std::string v = it->second;
      kv.erase(it);
      return v;
    };
    if (d == "fspec") {
      if (named || tok.size() != 2) throw FormatError(line, "expected a single 'fspec <name>' line");
      spec.name = tok[1];
      named = true;
    } else if (d == "alias") {
      if (tok.size() != 3) throw FormatError(line, "expected 'alias <type> <canonical>'");
      spec.typeAliases[tok[1]] = tok[2];
    } else if (d == "node") {
      if (tok.size() < 2) throw FormatError(line, "expected node id");
      ApiNode n;
      n.id = toInt(tok[1], line, "node id");
      if (!ids.insert(n.id).second) throw FormatError(line, fmt::format("duplicate node id {}", n.id));
      auto kv = attrs(2);
      std::string kind = take(kv, "kind");
      if (kind == "constructor")
        n.kind = NodeKind::Constructor;
      else if (kind == "instance")
        n.kind = NodeKind::Instance;
      else if (kind == "static")
        n.kind = NodeKind::Static;
      else
        throw FormatError(line, "unknown node kind '" + kind + "'");
      n.ownerType = take(kv, "class");
      n.memberName = take(kv, "method");
      std::string params = take(kv, "params");
      if (params != "-") n.paramTypes = split(params, ',');
      for (const auto& p : n.paramTypes)
        if (p.empty()) throw FormatError(line, "empty parameter type");
      n.returnType = take(kv, "return");
      if (n.kind == NodeKind::Constructor && n.returnType != n.ownerType)
        throw FormatError(line, "constructor must return its class");
      if (kv.contains("annotation")) {
        n.annotation = take(kv, "annotation");
      } else {
        n.annotation = camelCaseAnnotation(n.memberName);
        if (warnings)
          warnings->push_back(fmt::format("line {}: node {} has no annotation; using '{}'", line, n.id, n.annotation));
      }
      if (kv.contains("abstract")) {
        std::string a = take(kv, "abstract");
        if (a != "true" && a != "false") throw FormatError(line, "abstract must be true or false");
        n.abstractType = a == "true";
      }
      if (!kv.empty()) throw FormatError(line, "unknown attribute " + kv.begin()->first);
      spec.nodes.push_back(std::move(n));
    } else if (d == "edge") {
      if (tok.size() < 3) throw FormatError(line, "expected 'edge <src> <dst> ...'");
      ApiEdge e;
      e.src = toInt(tok[1], line, "edge source");
      e.dst = toInt(tok[2], line, "edge target");
      auto kv = attrs(3);
      std::string kind = take(kv, "kind");
      if (kind == "data")
        e.kind = EdgeKind::Data;
      else if (kind == "control")
        e.kind = EdgeKind::Control;
      else
        throw FormatError(line, "unknown edge kind '" + kind + "'");
      e.freq = toInt(take(kv, "freq"), line, "frequency");
      if (e.freq < 1) throw FormatError(line, "frequency must be at least 1");
      if (!kv.empty()) throw FormatError(line, "unknown attribute " + kv.begin()->first);
      spec.edges.push_back(e);
    } else if (d == "start" || d == "end") {
      if (tok.size() < 2) throw FormatError(line, "expected node ids");
      auto& list = d == "start" ? spec.startIds : spec.endIds;
      for (std::size_t i = 1; i < tok.size(); ++i) list.push_back(toInt(tok[i], line, "node id"));
    } else {
      throw FormatError(line, "unknown directive '" + d + "'");
    }
  }
  if (!named) throw FormatError(line, "missing 'fspec <name>' line");
  validateFSpec(spec);
  return spec;
}

FSpec loadFSpec(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read fspec " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parseFSpec(ss.str(), warnings);
}

std::string formatFSpec(const FSpec& spec) {
  std::string out = "fspec " + spec.name + "\n";
  for (const auto& [a, c] : spec.typeAliases) out += fmt::format("alias {} {}\n", a, c);
  for (const auto& n : spec.nodes) {
    std::string params;
    for (const auto& p : n.paramTypes) params += (params.empty() ? "" : ",") + p;
    out += fmt::format("node {} kind={} class={} method={} params={} return={} annotation={}{}\n", n.id,
                       kindName(n.kind), n.ownerType, n.memberName, params.empty() ? "-" : params, n.returnType,
                       n.annotation, n.abstractType ? " abstract=true" : "");
  }
  for (const auto& e : spec.edges)
    out += fmt::format("edge {} {} kind={} freq={}\n", e.src, e.dst, edgeKindName(e.kind), e.freq);
  auto ids = [](const std::vector<int>& v) {
    std::string s;
    for (int i : v) s += fmt::format(" {}", i);
    return s;
  };
  out += "start" + ids(spec.startIds) + "\n";
  out += "end" + ids(spec.endIds) + "\n";
  return out;
}

void saveFSpec(const FSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write fspec " + path.string());
  out << formatFSpec(spec);
}

void validateFSpec(const FSpec& spec) {
  if (spec.nodes.empty()) throw FormatError(0, "no nodes");
  if (spec.startIds.empty() || spec.endIds.empty()) throw FormatError(0, "start and end nodes are required");
  std::map<int, std::vector<int>> succ, pred;
  for (const auto& n : spec.nodes) {
    succ[n.id];
    pred[n.id];
  }
  for (const auto& e : spec.edges) {
    if (!spec.findNode(e.src) || !spec.findNode(e.dst))
      throw DanglingEdgeError(fmt::format("edge {} -> {} names an unknown node", e.src, e.dst));
    if (e.freq < 1) throw FormatError(0, "frequency must be at least 1");
    succ[e.src].push_back(e.dst);
    pred[e.dst].push_back(e.src);
    if (e.kind == EdgeKind::Data && spec.node(e.src).producedType().empty())
      throw FormatError(0, fmt::format("data edge {} -> {} leaves a void call", e.src, e.dst));
  }
  for (int id : spec.startIds)
    if (!spec.findNode(id)) throw DanglingEdgeError(fmt::format("start node {} is unknown", id));
  for (int id : spec.endIds)
    if (!spec.findNode(id)) throw DanglingEdgeError(fmt::format("end node {} is unknown", id));

  // Kahn's algorithm.
  std::map<int, int> indeg;
  for (const auto& [id, ps] : pred) indeg[id] = static_cast<int>(ps.size());
  std::vector<int> ready;
  for (const auto& [id, d] : indeg)
    if (d == 0) ready.push_back(id);
  std::size_t seen = 0;
  while (!ready.empty()) {
    int n = ready.back();
    ready.pop_back();
    ++seen;
    for (int s : succ[n])
      if (--indeg[s] == 0) ready.push_back(s);
  }
  if (seen != spec.nodes.size()) throw CycleError("fspec " + spec.name + " has a cycle");

  auto flood = [](const std::vector<int>& from, std::map<int, std::vector<int>>& adj) {
    std::set<int> r(from.begin(), from.end());
    std::vector<int> work(from.begin(), from.end());
    while (!work.empty()) {
      int n = work.back();
      work.pop_back();
      for (int s : adj[n])
        if (r.insert(s).second) work.push_back(s);
    }
    return r;
  };
  auto fwd = flood(spec.startIds, succ);
  auto bwd = flood(spec.endIds, pred);
  for (const auto& n : spec.nodes)
    if (!fwd.contains(n.id) || !bwd.contains(n.id))
      throw FormatError(0, fmt::format("node {} is not on a start-to-end path", n.id));

  enumerateBranches(spec);  // binds data edges to slots, throwing on mismatch
}

}  // namespace ipweave::fspec
