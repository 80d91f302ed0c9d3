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

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "ipweave/analysis/program_analysis.h"
#include "ipweave/error.h"
#include "ipweave/harness/harness.h"
#include "ipweave/minilang/parser.h"
#include "ipweave/weave/pipeline.h"

namespace fs = std::filesystem;
using namespace ipweave;

namespace {

annotator::Coefficients coefficients(const std::string& config) {
  return config.empty() ? annotator::Coefficients{} : annotator::loadCoefficients(config);
}

fspec::FSpec spec(const std::string& path) {
  std::vector<std::string> warnings;
  fspec::FSpec s = fspec::loadFSpec(path, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  return s;
}

weave::Synthesizer synthesizer(const std::string& program, const std::string& fspecPath, const std::string& config) {
  return weave::Synthesizer(minilang::parseProgram(program), spec(fspecPath), coefficients(config));
}

void writeFile(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

int cmdSynth(const std::string& program, const std::string& fspecPath, const std::string& config,
             const std::string& out, std::size_t rank) {
  auto s = synthesizer(program, fspecPath, config);
  auto r = s.synthesize(rank);
  for (const auto& [path, text] : r.files) writeFile(fs::path(out) / path, text);
  writeFile(fs::path(out) / "report.txt", r.reportText());
  writeFile(fs::path(out) / "report.rec", r.reportRec());
  std::cout << r.reportText();
  return 0;
}

int cmdScore(const std::string& program, const std::string& fspecPath, const std::string& config, std::size_t top) {
  auto s = synthesizer(program, fspecPath, config);
  const auto& an = s.analysis();
  const auto& ranked = s.ranked();
  for (std::size_t i = 0; i < ranked.size() && i < top; ++i) {
    const auto& m = ranked[i];
    const auto& br = s.branches().at(static_cast<std::size_t>(m.branchId));
    std::cout << fmt::format("rank {:>3}  branch {}  CAS {:.4f}  CDS {}  CQS {:.4f}\n", i + 1, m.branchId, m.cas,
                             m.cds, m.cqs);
    for (const auto& mp : m.mappings) {
      auto [block, idx] = an.resolve(mp.location);
      std::cout << fmt::format("    {:<22} {}:{:<4} {:<40} MNS {:.4f} VAS {:.4f} CLS {:.4f}\n",
                               br.cluster(mp.clusterId).label, an.program().files[block.file].path,
                               an.anchorLine(mp.location), mp.location.methodQName, mp.mns, mp.vas, mp.cls);
    }
  }
  return 0;
}

int cmdSketch(const std::string& fspecPath, const std::string& config, std::size_t branch) {
  auto s = spec(fspecPath);
  auto branches = fspec::prepareBranches(s, coefficients(config).tau);
  if (branch >= branches.size())
    throw InputError(fmt::format("branch {} outside 0..{}", branch, branches.size() - 1));
  const auto& br = branches[branch];
  std::string path;
  for (int id : br.nodeIds) path += fmt::format("{}{}", path.empty() ? "" : " ", id);
  std::cout << fmt::format("branch {} nodes {} weight {}\n", branch, path, br.weight);
  for (const auto& sk : sketch::generateSketches(s, br)) std::cout << sketch::renderSketch(s, br, sk);
  return 0;
}

int cmdResolve(const std::string& program, const std::string& fspecPath, const std::string& config, std::size_t rank) {
  auto s = synthesizer(program, fspecPath, config);
  auto p = s.plan(rank);
  std::cout << resolve::formatProblem(p.problem);
  auto sel = resolve::solveSelection(p.problem);
  std::cout << resolve::formatResolution(resolve::resolve(p.candidates, p.problem, sel));
  return 0;
}

int cmdAnalyze(const std::string& program) {
  analysis::ProgramAnalysis an(minilang::parseProgram(program));
  std::cout << an.listing();
  return 0;
}

int cmdEval(const std::string& dataset, const std::string& fspecPath, const std::string& config,
            const std::string& out) {
  auto res = harness::evaluate(dataset, spec(fspecPath), coefficients(config),
                               out.empty() ? std::nullopt : std::optional<fs::path>(out));
  std::cout << res.rec();
  return 0;
}

int cmdCheck(const std::string& program, const std::string& fspecPath, const std::string& config) {
  if (!config.empty()) coefficients(config).validate();
  if (!fspecPath.empty()) {
    auto s = spec(fspecPath);
    std::cout << fmt::format("fspec {}: {} nodes, {} edges, {} branches\n", s.name, s.nodes.size(), s.edges.size(),
                             fspec::enumerateBranches(s).size());
  }
  if (!program.empty()) {
    auto p = minilang::parseProgram(program);
    std::size_t classes = 0;
    for (const auto& f : p.files) classes += f.classes.size();
    std::cout << fmt::format("program {}: {} files, {} top-level classes\n", program, p.files.size(), classes);
  }
  std::cout << "ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ipweave: synthesize framework API usage into an existing program"};
  app.require_subcommand(1);
  std::string program, fspecPath, config, out, dataset;
  std::size_t rank = 1, top = 10, branch = 0;

  auto* synth = app.add_subcommand("synth", "weave the ranked mapping set into the program");
  synth->add_option("--program", program, "program root directory")->required();
  synth->add_option("--fspec", fspecPath, "FSpec file")->required();
  synth->add_option("--out", out, "output directory")->required();
  synth->add_option("--rank", rank, "1-based rank to weave")->check(CLI::PositiveNumber);
  synth->add_option("--config", config, "coefficient file");

  auto* score = app.add_subcommand("score", "print the ranked mapping sets");
  score->add_option("--program", program, "program root directory")->required();
  score->add_option("--fspec", fspecPath, "FSpec file")->required();
  score->add_option("--config", config, "coefficient file");
  score->add_option("--top", top, "rows to print");

  auto* sketchCmd = app.add_subcommand("sketch", "print the sketches of one branch");
  sketchCmd->add_option("--fspec", fspecPath, "FSpec file")->required();
  sketchCmd->add_option("--branch", branch, "0-based branch index");
  sketchCmd->add_option("--config", config, "coefficient file");

  auto* resolveCmd = app.add_subcommand("resolve", "print hole clauses and the chosen assignment");
  resolveCmd->add_option("--program", program, "program root directory")->required();
  resolveCmd->add_option("--fspec", fspecPath, "FSpec file")->required();
  resolveCmd->add_option("--rank", rank, "1-based rank")->check(CLI::PositiveNumber);
  resolveCmd->add_option("--config", config, "coefficient file");

  auto* analyze = app.add_subcommand("analyze", "print scopes, variables and dependency edges");
  analyze->add_option("--program", program, "program root directory")->required();

  auto* eval = app.add_subcommand("eval", "evaluate a labeled dataset");
  eval->add_option("--dataset", dataset, "directory of task directories")->required();
  eval->add_option("--fspec", fspecPath, "FSpec file")->required();
  eval->add_option("--config", config, "coefficient file");
  eval->add_option("--out", out, "eval.rec path");

  auto* check = app.add_subcommand("check", "validate inputs");
  check->add_option("--program", program, "program root directory");
  check->add_option("--fspec", fspecPath, "FSpec file");
  check->add_option("--config", config, "coefficient file");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*synth) return cmdSynth(program, fspecPath, config, out, rank);
    if (*score) return cmdScore(program, fspecPath, config, top);
    if (*sketchCmd) return cmdSketch(fspecPath, config, branch);
    if (*resolveCmd) return cmdResolve(program, fspecPath, config, rank);
    if (*analyze) return cmdAnalyze(program);
    if (*eval) return cmdEval(dataset, fspecPath, config, out);
    if (*check) return cmdCheck(program, fspecPath, config);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
