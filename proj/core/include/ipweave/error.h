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

#include <stdexcept>
#include <string>
#include <vector>

namespace ipweave {

// Base class for every error the library throws. The CLI maps InputError
// subclasses to exit code 1 and InfeasibleError subclasses to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public InputError {
 public:
  SyntaxError(std::string file, int line, std::string expected);

  const std::string& file() const { return file_; }
  int line() const { return line_; }
  const std::string& expected() const { return expected_; }

 private:
  std::string file_;
  int line_;
  std::string expected_;
};

class NoSourcesFound : public InputError {
 public:
  explicit NoSourcesFound(const std::string& dir);
};

class DuplicateClassError : public InputError {
 public:
  explicit DuplicateClassError(const std::string& qualifiedName);
};

class DuplicateMemberError : public InputError {
 public:
  DuplicateMemberError(const std::string& owner, const std::string& member);
};

class InvalidLocation : public InputError {
 public:
  using InputError::InputError;
};

class UnknownScope : public InputError {
 public:
  explicit UnknownScope(const std::string& scopeId);
};

// FSpec file problems.
class FormatError : public InputError {
 public:
  FormatError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

class CycleError : public InputError {
 public:
  using InputError::InputError;
};

class DanglingEdgeError : public InputError {
 public:
  using InputError::InputError;
};

class MissingAnnotation : public InputError {
 public:
  explicit MissingAnnotation(int nodeId);
};

class CyclicClusterError : public InputError {
 public:
  explicit CyclicClusterError(int clusterId);
};

class AbstractConstructorError : public InputError {
 public:
  explicit AbstractConstructorError(const std::string& type);
};

class UnknownCluster : public InputError {
 public:
  explicit UnknownCluster(int clusterId);
};

class NoFeasibleMapping : public InfeasibleError {
 public:
  using InfeasibleError::InfeasibleError;
};

class Unsatisfiable : public InfeasibleError {
 public:
  explicit Unsatisfiable(std::vector<int> emptyHoles);
  const std::vector<int>& emptyHoles() const { return emptyHoles_; }

 private:
  std::vector<int> emptyHoles_;
};

class WeaveConflict : public InfeasibleError {
 public:
  using InfeasibleError::InfeasibleError;
};

class ChannelFailure : public InfeasibleError {
 public:
  using InfeasibleError::InfeasibleError;
};

class EmptyDataset : public InputError {
 public:
  EmptyDataset() : InputError("empty dataset") {}
};

class MissingLabel : public InputError {
 public:
  explicit MissingLabel(const std::string& taskId);
};

}  // namespace ipweave
