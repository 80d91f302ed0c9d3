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
#include <string>

#include "ipweave/minilang/ast.h"

namespace ipweave::minilang {

// Deterministic printer: 4-space indentation, one statement per line,
// comments re-emitted on their own lines ahead of the node they precede.
std::string emitFile(const SourceFile& file);

// Relative path -> text for every file of the program.
std::map<std::string, std::string> emitProgram(const MiniProgram& program);

}  // namespace ipweave::minilang
