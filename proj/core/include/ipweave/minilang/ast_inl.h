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

namespace ipweave::minilang {

namespace detail {

template <typename Fn>
void visitClass(const ClassDecl& cls, std::size_t file, std::vector<std::size_t>& path, Fn& fn) {
  fn(cls, file, std::span<const std::size_t>(path));
  for (std::size_t i = 0; i < cls.innerClasses.size(); ++i) {
    path.push_back(i);
    visitClass(cls.innerClasses[i], file, path, fn);
    path.pop_back();
  }
}

}  // namespace detail

template <typename Fn>
void forEachClass(const MiniProgram& program, Fn&& fn) {
  for (std::size_t f = 0; f < program.files.size(); ++f) {
    const auto& classes = program.files[f].classes;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      std::vector<std::size_t> path{c};
      detail::visitClass(classes[c], f, path, fn);
    }
  }
}

}  // namespace ipweave::minilang
