// Copyright 2026 The uavtrack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "uavtrack/classes.hpp"
#include "uavtrack/error.hpp"
#include "uavtrack/eval.hpp"
#include "uavtrack/synth.hpp"
#include "uavtrack/types.hpp"

namespace uavtrack {

// Line-oriented text formats, whitespace-separated columns, '#' comment
// lines, and a mandatory self-describing header on line 1:
//
//   #uavtrack detections v1     frame class conf x y w h
//   #uavtrack annotations v1    frame instance_id class x y w h
//   #uavtrack tracks v1         frame track_id class x y w h conf
//
// Class columns accept a canonical name or a numeric id. Numbers round-trip
// exactly (shortest-representation doubles). Reports are JSON.

/// Sorted by frame, stable within a frame by input order.
std::vector<Detection> parse_detections(const std::filesystem::path& path,
                                        const ClassRegistry& registry);

/// Grouped by instance id (sorted), points sorted by frame. A duplicated
/// (frame, instance_id) pair or an id labeled with two classes is an error.
std::vector<GroundTruthInstance> parse_annotations(const std::filesystem::path& path,
                                                   const ClassRegistry& registry);

/// Same grouping rules as annotations, plus the confidence column.
std::vector<Track> parse_tracks(const std::filesystem::path& path,
                                const ClassRegistry& registry);

void write_detections(std::span<const Detection> dets, const ClassRegistry& registry,
                      const std::filesystem::path& path);

/// Rows sorted by (frame, instance_id).
void write_annotations(std::span<const GroundTruthInstance> instances,
                       const ClassRegistry& registry, const std::filesystem::path& path);

/// Rows sorted by (frame, track_id).
void write_tracks(std::span<const Track> tracks, const ClassRegistry& registry,
                  const std::filesystem::path& path);

void write_report(const EvalReport& report, const std::filesystem::path& path);
EvalReport read_report(const std::filesystem::path& path);

/// Key-value scene description ("key = value", '#' comments):
///
///   image_width = 3840        image_height = 2160
///   n_frames = 2000           fps = 24
///   seed = 7                  camera_velocity = 1.25 0.5
///   jitter_sigma = 2          dropout_rate = 0.05
///   dropout_burst_max = 30    spurious_rate = 0.02
///   conf_range = 0.5 1.0
///   count.tire = 5            size.tire = 40 120
///
/// Classes are resolved through the registry; population order follows first
/// mention in the file. num_classes is set to the registry size.
SceneConfig parse_scene_config(const std::filesystem::path& path,
                               const ClassRegistry& registry);

/// Extends the registry with one class name per line ('#' comments allowed).
/// Built-in ids are never disturbed; duplicates are ignored.
void load_class_extension(const std::filesystem::path& path, ClassRegistry& registry);

/// Shortest double representation that parses back to the same value.
std::string format_double(double v);

}  // namespace uavtrack
