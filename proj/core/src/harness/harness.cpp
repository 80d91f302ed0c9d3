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

#include "ipweave/harness/harness.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "ipweave/analysis/program_analysis.h"
#include "ipweave/error.h"
#include "ipweave/minilang/parser.h"
#include "ipweave/weave/pipeline.h"

namespace ipweave::harness {

namespace fs = std::filesystem;

double hrAtK(const std::vector<Rank>& ranks, std::size_t k) {
  if (ranks.empty()) throw EmptyDataset();
  if (k == 0) throw InputError("hr@k needs k >= 1");
  std::size_t hits = std::count_if(ranks.begin(), ranks.end(), [&](const Rank& r) { return r && *r <= k; });
  return 100.0 * static_cast<double>(hits) / static_cast<double>(ranks.size());
}

double mrr(const std::vector<Rank>& ranks) {
  if (ranks.empty()) throw EmptyDataset();
  double sum = 0;
  for (const auto& r : ranks)
    if (r) sum += 1.0 / static_cast<double>(*r);
  return sum / static_cast<double>(ranks.size());
}

namespace {

bool matches(const fspec::FSpec& spec, const fspec::ApiNode& n, const analysis::CallSite& c) {
  if (!c.external() || c.ownerType.empty()) return false;
  if (spec.canonical(c.ownerType) != spec.canonical(n.ownerType) || c.argc != n.paramTypes.size()) return false;
  if (n.kind == fspec::NodeKind::Constructor) return c.kind == analysis::CallKind::Constructor;
  if (c.member != n.memberName) return false;
  return (n.kind == fspec::NodeKind::Instance) == (c.kind == analysis::CallKind::Instance);
}

}  // namespace

double conformanceScore(const minilang::MiniProgram& program, const fspec::FSpec& spec, const fspec::Branch& branch) {
  analysis::ProgramAnalysis an(program, weave::specOracle(spec));
  const auto& facts = an.facts();
  const auto& scopes = an.scopes();

  std::map<int, std::vector<const analysis::CallSite*>> sites;
  for (int id : branch.nodeIds)
    for (const auto& c : facts.callSites())
      if (matches(spec, spec.node(id), c)) sites[id].push_back(&c);

  std::size_t matched = 0;
  for (int id : branch.nodeIds) matched += !sites[id].empty();

  auto flowsFrom = [&](const analysis::CallSite& producer, const analysis::CallSite& consumer, int position) {
    std::size_t slot = consumer.kind == analysis::CallKind::Instance ? static_cast<std::size_t>(position + 1)
                                                                     : static_cast<std::size_t>(position);
    if (position < 0 && consumer.kind != analysis::CallKind::Instance) return false;
    if (slot >= consumer.inputs.size()) return false;
    const std::string origin = analysis::callNode(producer.id);
    for (const auto& src : consumer.inputs[slot])
      if (src == origin || facts.pointsTo(src).contains(origin)) return true;
    return false;
  };
  auto before = [&](const analysis::CallSite& a, const analysis::CallSite& b) {
    std::size_t sa = scopes.scopeAt(a.block, a.stmtIndex), sb = scopes.scopeAt(b.block, b.stmtIndex);
    if (sa == sb) return std::make_pair(a.stmtIndex, a.id) < std::make_pair(b.stmtIndex, b.id);
    return scopes.executesBefore(sa, sb);
  };

  for (const auto& e : branch.edges) {
    bool ok = false;
    for (const auto* a : sites[e.src]) {
      for (const auto* b : sites[e.dst]) {
        if (e.kind == fspec::EdgeKind::Data) {
          auto it = branch.bindings.find({e.src, e.dst});
          ok = it != branch.bindings.end() && flowsFrom(*a, *b, it->second);
        } else {
          ok = before(*a, *b);
        }
        if (ok) break;
      }
      if (ok) break;
    }
    matched += ok;
  }
  std::size_t total = branch.nodeIds.size() + branch.edges.size();
  return total == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(total);
}

bool TaskLabel::accepts(const std::string& annotation, const std::string& file, int line) const {
  auto it = pieces.find(annotation);
  if (it == pieces.end()) return false;
  for (const auto& p : it->second) {
    if (p.file != file) continue;
    for (const auto& r : p.ranges)
      if (line >= r.first && line <= r.last) return true;
  }
  return false;
}

TaskLabel parseLabel(const std::string& text) {
  TaskLabel label;
  std::istringstream in(text);
  std::string raw;
  int lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    std::istringstream ls(raw);
    std::string head;
    if (!(ls >> head) || head.starts_with('#')) continue;
    if (head == "task") {
      if (!(ls >> label.taskId)) throw FormatError(lineNo, "task needs an id");
      continue;
    }
    if (head != "piece") throw FormatError(lineNo, "unknown record '" + head + "'");
    std::string annotation, tok;
    if (!(ls >> annotation)) throw FormatError(lineNo, "piece needs an annotation");
    PieceLabel piece;
    while (ls >> tok) {
      if (tok.starts_with("file=")) {
        piece.file = tok.substr(5);
      } else if (tok.starts_with("lines=")) {
        std::string list = tok.substr(6);
        std::size_t start = 0;
        while (start <= list.size()) {
          std::size_t comma = list.find(',', start);
          std::string r = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
          LineRange lr;
          std::size_t dash = r.find('-');
          try {
            lr.first = std::stoi(r.substr(0, dash));
            lr.last = dash == std::string::npos ? lr.first : std::stoi(r.substr(dash + 1));
          } catch (const std::exception&) {
            throw FormatError(lineNo, "bad line range '" + r + "'");
          }
          if (lr.first < 1 || lr.last < lr.first) throw FormatError(lineNo, "bad line range '" + r + "'");
          piece.ranges.push_back(lr);
          if (comma == std::string::npos) break;
          start = comma + 1;
        }
      } else {
        throw FormatError(lineNo, "unknown attribute '" + tok + "'");
      }
    }
    if (piece.file.empty() || piece.ranges.empty()) throw FormatError(lineNo, "piece needs file= and lines=");
    label.pieces[annotation].push_back(std::move(piece));
  }
  return label;
}

TaskLabel loadLabel(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingLabel(path.parent_path().filename().string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parseLabel(ss.str());
}

TaskResult evaluateTask(const fs::path& taskDir, const fspec::FSpec& spec, const annotator::Coefficients& k) {
  TaskResult r;
  r.taskId = taskDir.filename().string();
  if (!fs::exists(taskDir / "label.rec")) throw MissingLabel(r.taskId);
  TaskLabel label = loadLabel(taskDir / "label.rec");

  std::optional<weave::Synthesizer> synth;
  try {
    synth.emplace(minilang::parseProgram(taskDir), spec, k);
  } catch (const InfeasibleError& e) {
    r.error = e.what();
    return r;
  }
  const auto& an = synth->analysis();
  auto correct = [&](const annotator::MappingSet& s) {
    const auto& br = synth->branches().at(static_cast<std::size_t>(s.branchId));
    for (const auto& m : s.mappings) {
      auto [block, idx] = an.resolve(m.location);
      const std::string& file = an.program().files.at(block.file).path;
      if (!label.accepts(br.cluster(m.clusterId).label, file, an.anchorLine(m.location))) return false;
    }
    return true;
  };
  const auto& ranked = synth->ranked();
  for (std::size_t i = 0; i < ranked.size(); ++i)
    if (correct(ranked[i])) {
      r.rank = i + 1;
      break;
    }

  try {
    weave::SynthesisResult woven = synth->synthesize(1);
    r.syntaxOk = true;
    const auto& br = synth->branches().at(static_cast<std::size_t>(ranked.front().branchId));
    r.conformance = conformanceScore(woven.program, spec, br);
    r.semanticOk = correct(ranked.front()) && r.conformance == 1.0;
  } catch (const SyntaxError& e) {
    r.error = e.what();
  } catch (const InfeasibleError& e) {
    r.error = e.what();
  }
  return r;
}

std::vector<Rank> EvalResult::ranks() const {
  std::vector<Rank> out;
  for (const auto& t : tasks) out.push_back(t.rank);
  return out;
}

std::string EvalResult::rec() const {
  std::string out;
  for (const auto& [k, v] : hrAtK) out += fmt::format("hr k={} value={:.1f}\n", k, v);
  out += fmt::format("mrr value={:.4f}\n", mrr);
  for (const auto& t : tasks)
    out += fmt::format("task {} rank={} syntax={} semantic={} conf={:.4f}\n", t.taskId,
                       t.rank ? std::to_string(*t.rank) : "-", t.syntaxOk ? "ok" : "fail",
                       t.semanticOk ? "ok" : "fail", t.conformance);
  return out;
}

EvalResult evaluate(const fs::path& datasetDir, const fspec::FSpec& spec, const annotator::Coefficients& k,
                    const std::optional<fs::path>& recOut) {
  if (!fs::is_directory(datasetDir)) throw InputError("dataset directory not found: " + datasetDir.string());
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(datasetDir))
    if (e.is_directory()) dirs.push_back(e.path());
  std::sort(dirs.begin(), dirs.end());
  if (dirs.empty()) throw EmptyDataset();

  EvalResult res;
  for (const auto& d : dirs) res.tasks.push_back(evaluateTask(d, spec, k));
  auto ranks = res.ranks();
  for (std::size_t cut : kHitCutoffs) res.hrAtK[cut] = hrAtK(ranks, cut);
  res.mrr = mrr(ranks);
  if (recOut) {
    std::ofstream out(*recOut);
    if (!out) throw InputError("cannot write " + recOut->string());
    out << res.rec();
  }
  return res;
}

}  // namespace ipweave::harness
