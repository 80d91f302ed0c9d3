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

#include "ipweave/annotator/scores.h"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "ipweave/annotator/channels.h"
#include "ipweave/error.h"
#include "ipweave/fspec/clustering.h"
#include "ipweave/fspec/levenshtein.h"

namespace ipweave::annotator {

void Coefficients::validate() const {
  if (cMNS < 0 || cVAS < 0 || cCLS < 0 || cCQS < 0) throw InputError("coefficients must be non-negative");
  if (cMNS + cVAS <= 0) throw InputError("cMNS + cVAS must be positive");
  if (cCLS + cCQS <= 0) throw InputError("cCLS + cCQS must be positive");
  if (listCap == 0) throw InputError("listCap must be positive");
}

Coefficients parseCoefficients(const std::string& text) {
  Coefficients k;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError(fmt::format("config line {}: expected key = value", n));
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    auto number = [&]() {
      double v = 0;
      auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc() || p != value.data() + value.size())
        throw InputError(fmt::format("config line {}: bad number '{}'", n, value));
      return v;
    };
    auto count = [&]() {
      std::size_t v = 0;
      auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc() || p != value.data() + value.size())
        throw InputError(fmt::format("config line {}: bad integer '{}'", n, value));
      return v;
    };
    if (key == "cMNS")
      k.cMNS = number();
    else if (key == "cVAS")
      k.cVAS = number();
    else if (key == "cCLS")
      k.cCLS = number();
    else if (key == "cCQS")
      k.cCQS = number();
    else if (key == "listCap")
      k.listCap = count();
    else if (key == "tau")
      k.tau = count();
    else
      throw InputError(fmt::format("config line {}: unknown key '{}'", n, key));
  }
  k.validate();
  return k;
}

Coefficients loadCoefficients(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parseCoefficients(ss.str());
}

double mns(const std::string& annotation, const std::string& methodName) {
  return 1.0 / (static_cast<double>(fspec::levenshtein(fspec::stripAnnotation(annotation), methodName)) + 1.0);
}

double vas(const Context& ctx, const fspec::Cluster& cluster, const Location& loc) {
  ctx.analysis().resolve(loc);
  if (cluster.slots.empty()) return 1.0;
  std::map<std::string, int> args;
  for (const auto& s : cluster.slots) ++args[s.typeName];
  double score = 1.0;
  for (const auto& [type, need] : args) {
    double avail = static_cast<double>(ctx.available(loc, type).size());
    score *= std::min(avail / need, 1.0);
  }
  return score;
}

double cls(const Coefficients& k, double m, double v) { return (k.cMNS * m + k.cVAS * v) / (k.cMNS + k.cVAS); }

double cqs(const MappingSet& set) {
  std::map<std::string, int> perMethod;
  for (const auto& m : set.mappings) ++perMethod[m.location.methodQName];
  if (perMethod.empty()) return 0;
  double sum = 0;
  for (const auto& [method, n] : perMethod) sum += 1.0 / n;
  return sum / static_cast<double>(perMethod.size());
}

double ccs(const MappingSet& set, const analysis::ProgramAnalysis& analysis) {
  std::set<std::string> hosts;
  for (const auto& m : set.mappings) hosts.insert(m.location.methodQName);
  if (hosts.empty()) return 0;
  const auto& cg = analysis.callGraph();
  double sum = 0;
  for (const auto& h : hosts) {
    double ce = static_cast<double>(cg.callees.at(h).size());
    double ca = static_cast<double>(cg.callers.at(h).size());
    if (ce + ca > 0) sum += ce / (ce + ca);
  }
  return sum / static_cast<double>(hosts.size());
}

int cds(const Context& ctx, const MappingSet& set, const fspec::Branch& branch) {
  std::vector<Location> placements(branch.clusters.size());
  std::vector<bool> placed(branch.clusters.size());
  for (const auto& m : set.mappings) {
    if (m.clusterId < 0 || static_cast<std::size_t>(m.clusterId) >= placements.size()) throw UnknownCluster(m.clusterId);
    placements[static_cast<std::size_t>(m.clusterId)] = m.location;
    placed[static_cast<std::size_t>(m.clusterId)] = true;
  }
  for (std::size_t c = 0; c < placed.size(); ++c)
    if (!placed[c]) throw UnknownCluster(static_cast<int>(c));

  const auto& an = ctx.analysis();
  for (const auto& e : branch.interClusterEdges) {
    const Location& a = placements[static_cast<std::size_t>(e.srcCluster)];
    const Location& b = placements[static_cast<std::size_t>(e.dstCluster)];
    if (a.scopeId == b.scopeId) {
      if (a.statementIndex > b.statementIndex) return 0;
    } else if (!an.executesBefore(a.scopeId, b.scopeId)) {
      return 0;
    }
  }
  return planChannels(ctx, branch, placements) ? 1 : 0;
}

double cas(const Coefficients& k, int cdsValue, double cqsValue, double meanCls) {
  if (cdsValue == 0) return 0;
  return (k.cCQS * cqsValue + k.cCLS * meanCls) / (k.cCQS + k.cCLS);
}

Mapping scoreMapping(const Context& ctx, const Coefficients& k, const fspec::Cluster& cluster, const Location& loc) {
  Mapping m;
  m.clusterId = cluster.id;
  m.location = loc;
  m.mns = mns(cluster.label, ctx.methodSimpleName(loc));
  m.vas = vas(ctx, cluster, loc);
  m.cls = cls(k, m.mns, m.vas);
  return m;
}

}  // namespace ipweave::annotator
