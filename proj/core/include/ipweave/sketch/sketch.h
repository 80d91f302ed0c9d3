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

#include <string>
#include <vector>

#include "ipweave/fspec/clustering.h"
#include "ipweave/fspec/fspec.h"

namespace ipweave::sketch {

enum class SlotKind { None, Temp, Hole };

struct SlotValue {
  SlotKind kind = SlotKind::None;
  int temp = 0;  // t<temp>
  int hole = 0;  // hole id

  static SlotValue none() { return {}; }
  static SlotValue ofTemp(int t) { return {SlotKind::Temp, t, 0}; }
  static SlotValue ofHole(int h) { return {SlotKind::Hole, 0, h}; }
  bool operator==(const SlotValue&) const = default;
};

struct SketchStatement {
  int apiNodeId = 0;
  int resultTemp = 0;        // 0: no result
  std::string resultType;    // declared type of the temp
  std::string instantiated;  // constructors: concrete class to instantiate
  SlotValue target;          // instance calls only
  std::vector<SlotValue> args;

  bool operator==(const SketchStatement&) const = default;
};

struct Hole {
  int holeId = 0;
  std::string typeName;  // signature type
  std::size_t statementIndex = 0;
  int slotPosition = 0;  // -1 for the receiver
  fspec::SlotRole role = fspec::SlotRole::Argument;
  int nodeId = 0;
  // Producer node of an inter-cluster data edge feeding this slot, or 0.
  int producerNode = 0;

  bool operator==(const Hole&) const = default;
};

struct Sketch {
  int clusterId = 0;
  std::vector<SketchStatement> statements;
  std::vector<Hole> holes;

  const SketchStatement* statementOf(int nodeId) const;
  // Temp holding the result of `nodeId`, or 0.
  int tempOf(int nodeId) const;
  bool operator==(const Sketch&) const = default;
};

// Builds the sketch of one cluster. Hole ids start at `firstHoleId`.
Sketch generateSketch(const fspec::FSpec& spec, const fspec::Branch& branch, int clusterId, int firstHoleId = 1);

// Sketches for every cluster of a branch with hole ids unique across them.
std::vector<Sketch> generateSketches(const fspec::FSpec& spec, const fspec::Branch& branch);

// One statement per line, holes as ?<id>:<type>.
std::string renderSketch(const fspec::FSpec& spec, const fspec::Branch& branch, const Sketch& sketch);

}  // namespace ipweave::sketch
