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

#include <optional>
#include <string>
#include <vector>

#include "ipweave/annotator/context.h"

namespace ipweave::annotator {

enum class ChannelKind { LocalTemp, ReturnValue, ExistingField, FreshField };

const char* channelName(ChannelKind kind);

// How the value of a producer node reaches a consumer cluster placed
// elsewhere.
struct ChannelPlan {
  int producerCluster = 0;
  int consumerCluster = 0;
  int producerNode = 0;
  int consumerNode = 0;
  int consumerPosition = 0;
  std::string carriedType;
  ChannelKind mechanism = ChannelKind::LocalTemp;
  // ReturnValue: consumer-side variable name. Fields: field name.
  std::string variable;
  // Fields: declaring class. ReturnValue: producer host method.
  std::string owner;
  // Fresh fields read from another top-level class use the qualified name.
  bool qualified = false;
};

// Picks a channel for every inter-cluster data edge of `branch` given one
// location per cluster (indexed by cluster id). Rungs, first applicable:
// producer temp lexically visible; the producer method's return value
// already flowing into a consumer-visible variable; an unassigned existing
// field; a fresh static field. Field rungs require the producer placement to
// reach the consumer on every path. Returns nullopt when an edge has no
// channel.
std::optional<std::vector<ChannelPlan>> planChannels(const Context& ctx, const fspec::Branch& branch,
                                                     const std::vector<Location>& placements);

// Producer temp declared at `producer` is in scope at `consumer`.
bool tempVisible(const Context& ctx, const Location& producer, const Location& consumer);

}  // namespace ipweave::annotator
