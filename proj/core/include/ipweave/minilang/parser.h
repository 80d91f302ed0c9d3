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
#include <string>
#include <utility>
#include <vector>

#include "ipweave/minilang/ast.h"

namespace ipweave::minilang {

// Parses one `.mj` source. `path` is used for diagnostics and stored on the
// result. Throws SyntaxError.
SourceFile parseSource(std::string path, std::string text);

// Parses every `.mj` file below `rootDir` (sorted by relative path).
// Throws NoSourcesFound, SyntaxError, DuplicateClassError,
// DuplicateMemberError.
MiniProgram parseProgram(const std::filesystem::path& rootDir);

// In-memory variant of parseProgram: (relative path, text) pairs.
MiniProgram parseSources(const std::vector<std::pair<std::string, std::string>>& sources, std::string rootDir = {});

}  // namespace ipweave::minilang
