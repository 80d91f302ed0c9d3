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

#include "ipweave/annotator/scores.h"
#include "ipweave/fspec/clustering.h"
#include "ipweave/minilang/ast.h"

namespace ipweave::harness {

using Rank = std::optional<std::size_t>;

double hrAtK(const std::vector<Rank>& ranks, std::size_t k);
double mrr(const std::vector<Rank>& ranks);

// Share of branch nodes and edges realized by the program's calls to FSpec
// APIs and the data/control relations between them.
double conformanceScore(const minilang::MiniProgram& program, const fspec::FSpec& spec, const fspec::Branch& branch);

struct LineRange {
  int first = 0;
  int last = 0;
  bool operator==(const LineRange&) const = default;
};

struct PieceLabel {
  std::string file;
  std::vector<LineRange> ranges;
  bool operator==(const PieceLabel&) const = default;
};

struct TaskLabel {
  std::string taskId;
  std::map<std::string, std::vector<PieceLabel>> pieces;  // annotation -> acceptable places

  bool accepts(const std::string& annotation, const std::string& file, int line) const;
  bool operator==(const TaskLabel&) const = default;
};

TaskLabel parseLabel(const std::string& text);
TaskLabel loadLabel(const std::filesystem::path& path);

struct TaskResult {
  std::string taskId;
  Rank rank;  // first fully correct mapping set
  bool syntaxOk = false;
  bool semanticOk = false;
  double conformance = 0;
  std::string error;  // synthesis failure, if any
};

struct EvalResult {
  std::vector<TaskResult> tasks;
  std::map<std::size_t, double> hrAtK;
  double mrr = 0;

  std::vector<Rank> ranks() const;
  std::string rec() const;
};

inline const std::vector<std::size_t> kHitCutoffs = {1, 2, 3, 4, 5, 10, 50, 100};

// Runs one task directory (sources plus label.rec).
TaskResult evaluateTask(const std::filesystem::path& taskDir, const fspec::FSpec& spec,
                        const annotator::Coefficients& k);

// Every subdirectory of `datasetDir` is a task. Writes eval.rec to `recOut`
// when given. Throws MissingLabel, EmptyDataset.
EvalResult evaluate(const std::filesystem::path& datasetDir, const fspec::FSpec& spec,
                    const annotator::Coefficients& k, const std::optional<std::filesystem::path>& recOut = {});

}  // namespace ipweave::harness
