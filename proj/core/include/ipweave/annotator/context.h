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
#include <mutex>
#include <string>
#include <vector>

#include "ipweave/analysis/program_analysis.h"
#include "ipweave/fspec/clustering.h"
#include "ipweave/fspec/fspec.h"

namespace ipweave::annotator {

using analysis::Location;
using analysis::VarInfo;

// Analysis of one program against one FSpec, with memoized queries shared by
// scoring, channel planning and weaving.
class Context {
 public:
  Context(const analysis::ProgramAnalysis& analysis, const fspec::FSpec& spec);

  const analysis::ProgramAnalysis& analysis() const { return *analysis_; }
  const fspec::FSpec& spec() const { return *spec_; }

  const std::vector<VarInfo>& visibleVars(const Location& loc) const;
  // Visible, must-initialized variables whose canonical type is `type`.
  std::vector<VarInfo> available(const Location& loc, const std::string& type) const;
  std::string canonical(const std::string& type) const { return spec_->canonical(type); }

  // Insertion points considered for `cluster`: the end of every method body
  // (before a trailing return) and the point after each statement defining
  // a variable of one of the cluster's slot types.
  std::vector<Location> candidateLocations(const fspec::Cluster& cluster) const;

  // Sort key: (method, scope ordinal, statement index).
  std::tuple<std::string, std::size_t, std::size_t> locationKey(const Location& loc) const;
  const std::string& methodSimpleName(const Location& loc) const;

 private:
  const analysis::ProgramAnalysis* analysis_;
  const fspec::FSpec* spec_;
  mutable std::mutex mu_;
  mutable std::map<Location, std::vector<VarInfo>> visible_;
};

}  // namespace ipweave::annotator
