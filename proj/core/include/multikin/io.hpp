// Copyright 2026 The multikin Authors
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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "multikin/alignment.hpp"
#include "multikin/evaluation.hpp"
#include "multikin/geometry.hpp"
#include "multikin/selection.hpp"

namespace multikin {

/// Contents of a trajectory file.
struct TrajectorySet {
  std::vector<PoseTrajectory> clusters;
  std::optional<std::string> background;  // the cluster flagged as background

  friend bool operator==(const TrajectorySet&, const TrajectorySet&) = default;
};

/// {"clusters": [{"id", "background"?, "poses": [{"t", "p": [x,y,z],
/// "q": [w,x,y,z]}]}]}. Throws FormatError on malformed input, duplicate
/// ids or more than one background flag.
TrajectorySet parse_trajectories(std::string_view text);
std::string serialize_trajectories(const TrajectorySet& set);

struct GraphFile {
  KinematicGraph graph;
  std::optional<Assignment> assignment;

  friend bool operator==(const GraphFile&, const GraphFile&) = default;
};

/// Throws FormatError on malformed input or when the edges are not a
/// spanning tree of the vertices.
GraphFile parse_graph(std::string_view text);
std::string serialize_graph(const GraphFile& file);

/// {"estimated id": "truth id", ...}. Throws FormatError.
Correspondence parse_correspondence(std::string_view text);

/// Machine-readable report with per-demo rows and aggregates.
std::string serialize_report(const EvalReport& report);
/// Fixed-width table, one row per demo followed by the aggregates.
std::string format_report_table(const EvalReport& report);

/// Throws FormatError when the file cannot be read.
std::string read_file(const std::filesystem::path& path);
/// Throws Error when the file cannot be written.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace multikin
