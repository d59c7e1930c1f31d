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

#include "uavtrack/cli.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "uavtrack/io.hpp"
#include "uavtrack/suppression.hpp"
#include "uavtrack/tracker.hpp"
#include "uavtrack/version.hpp"

namespace uavtrack::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct TrackFlags {
  double conf_thresh = 0.5;
  double nms_iou = 0.5;
  double track_iou = 0.1;
  FrameIndex time_window = 45;
  bool no_nms = false;
};

struct EvalFlags {
  double frame_iou = 0.5;
  FrameIndex frame_tol = 45;
  double sight_iou = 0.1;
  double max_dcos = 0.01;
  bool frame_level = false;
  bool instance_level = false;
};

void add_track_flags(CLI::App& cmd, TrackFlags& flags) {
  cmd.add_option("--conf-thresh", flags.conf_thresh,
                 "Drop detections with confidence below this")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--nms-iou", flags.nms_iou, "Same-class IOU at or above which NMS suppresses")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--track-iou", flags.track_iou, "Minimum IOU to join an existing track")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--time-window", flags.time_window,
                 "Frames a track stays a live candidate without being seen")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd.add_flag("--no-nms", flags.no_nms,
               "Skip duplicate removal (the confidence filter still applies)");
}

void add_eval_flags(CLI::App& cmd, EvalFlags& flags) {
  cmd.add_option("--frame-iou", flags.frame_iou,
                 "Minimum IOU for frame-level box matching")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--frame-tol", flags.frame_tol,
                 "First/last sight frame deltas must be strictly below this")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--sight-iou", flags.sight_iou,
                 "Minimum IOU of the first-sight and last-sight boxes")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--max-dcos", flags.max_dcos,
                 "Maximum cosine distance between displacement vectors")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 2.0));
  cmd.add_flag("--frame-level", flags.frame_level, "Run only the frame-level protocol");
  cmd.add_flag("--instance-level", flags.instance_level,
               "Run only the instance-level protocol");
}

ClassRegistry make_registry(const std::string& classes_path) {
  ClassRegistry registry;
  if (!classes_path.empty()) load_class_extension(classes_path, registry);
  return registry;
}

struct TrackStats {
  std::size_t frames = 0;
  std::size_t detections = 0;
  double parse_s = 0.0;
  double track_s = 0.0;
  double write_s = 0.0;
  double total_s = 0.0;
};

void print_timing(const TrackStats& s) {
  std::cerr << "timing: frames=" << s.frames << " detections=" << s.detections
            << " parse_s=" << s.parse_s << " track_s=" << s.track_s
            << " write_s=" << s.write_s << " total_s=" << s.total_s << "\n";
}

std::vector<Track> run_track_stage(const std::vector<Detection>& dets,
                                   const TrackFlags& flags) {
  std::vector<Detection> kept;
  if (flags.no_nms) {
    kept = confidence_filter(dets, flags.conf_thresh);
  } else {
    kept = suppress_stream(dets, {flags.conf_thresh, flags.nms_iou});
  }
  return track_video(kept, {flags.time_window, flags.track_iou});
}

int run_track(const std::string& input, const std::string& output,
              const std::string& classes_path, const TrackFlags& flags) {
  const auto start = Clock::now();
  TrackStats stats;
  const ClassRegistry registry = make_registry(classes_path);

  const auto parse_start = Clock::now();
  const std::vector<Detection> dets = parse_detections(input, registry);
  stats.parse_s = seconds_since(parse_start);
  stats.detections = dets.size();
  std::set<FrameIndex> frames;
  for (const Detection& d : dets) frames.insert(d.frame);
  stats.frames = frames.size();

  const auto track_start = Clock::now();
  const std::vector<Track> tracks = run_track_stage(dets, flags);
  stats.track_s = seconds_since(track_start);

  const auto write_start = Clock::now();
  write_tracks(tracks, registry, output);
  stats.write_s = seconds_since(write_start);

  stats.total_s = seconds_since(start);
  print_timing(stats);
  std::cerr << "wrote " << tracks.size() << " tracks to " << output << "\n";
  return 0;
}

EvalReport run_eval_stage(const std::vector<GroundTruthInstance>& gts,
                          const std::vector<Track>& tracks, const ClassRegistry& registry,
                          const EvalFlags& flags) {
  const bool both = flags.frame_level == flags.instance_level;
  EvalReport report;
  report.tool_version = kVersion;
  report.class_names = registry.names();
  report.instance_params = {flags.frame_tol, flags.sight_iou, flags.max_dcos};
  report.frame_iou = flags.frame_iou;
  if (both || flags.instance_level)
    report.instance = match_instances(gts, tracks, report.instance_params, registry.size());
  if (both || flags.frame_level) {
    report.frame = frame_confusion(to_frame_boxes(std::span<const GroundTruthInstance>(gts)),
                                   to_frame_boxes(std::span<const Track>(tracks)),
                                   flags.frame_iou, registry.size());
  }
  return report;
}

void print_eval_summary(const EvalReport& report) {
  if (report.instance) {
    for (std::size_t c = 0; c < report.instance->per_class.size(); ++c) {
      const InstanceCounts& counts = report.instance->per_class[c];
      if (counts.tp == 0 && counts.fp == 0 && counts.fn == 0) continue;
      std::cerr << report.class_names[c] << ": tp=" << counts.tp << " fp=" << counts.fp
                << " fn=" << counts.fn << "\n";
    }
  }
  if (report.frame)
    std::cerr << "frame-level matches counted: " << report.frame->total() << "\n";
}

int run_eval(const std::string& tracks_path, const std::string& annotations_path,
             const std::string& output, const std::string& classes_path,
             const EvalFlags& flags) {
  const ClassRegistry registry = make_registry(classes_path);
  const std::vector<Track> tracks = parse_tracks(tracks_path, registry);
  const std::vector<GroundTruthInstance> gts = parse_annotations(annotations_path, registry);
  const EvalReport report = run_eval_stage(gts, tracks, registry, flags);
  write_report(report, output);
  print_eval_summary(report);
  std::cerr << "wrote report to " << output << "\n";
  return 0;
}

int run_synth(const std::string& config_path, const std::string& annotations_out,
              const std::string& detections_out, const std::string& classes_path) {
  const ClassRegistry registry = make_registry(classes_path);
  const SceneConfig config = parse_scene_config(config_path, registry);
  const SynthResult result = generate(config);
  write_annotations(result.ground_truth, registry, annotations_out);
  write_detections(result.detections, registry, detections_out);
  std::cerr << "generated " << result.ground_truth.size() << " instances, "
            << result.detections.size() << " detections over " << config.n_frames
            << " frames\n";
  return 0;
}

int run_pipeline(const std::string& config_path, const std::string& out_dir,
                 const std::string& classes_path, const TrackFlags& track_flags,
                 const EvalFlags& eval_flags) {
  const auto start = Clock::now();
  const ClassRegistry registry = make_registry(classes_path);
  const fs::path dir(out_dir);
  fs::create_directories(dir);

  const SceneConfig config = parse_scene_config(config_path, registry);
  const SynthResult result = generate(config);
  const fs::path gt_path = dir / "ground_truth.txt";
  const fs::path det_path = dir / "detections.txt";
  const fs::path tracks_path = dir / "tracks.txt";
  const fs::path report_path = dir / "report.json";
  write_annotations(result.ground_truth, registry, gt_path);
  write_detections(result.detections, registry, det_path);
  const double synth_s = seconds_since(start);

  // Re-read what was written: the pipeline exercises the same file path a
  // split invocation would.
  const auto track_start = Clock::now();
  const std::vector<Detection> dets = parse_detections(det_path, registry);
  const std::vector<Track> tracks = run_track_stage(dets, track_flags);
  write_tracks(tracks, registry, tracks_path);
  const double track_s = seconds_since(track_start);

  const auto eval_start = Clock::now();
  const std::vector<Track> tracks_in = parse_tracks(tracks_path, registry);
  const std::vector<GroundTruthInstance> gts = parse_annotations(gt_path, registry);
  const EvalReport report = run_eval_stage(gts, tracks_in, registry, eval_flags);
  write_report(report, report_path);
  const double eval_s = seconds_since(eval_start);

  print_eval_summary(report);
  std::cerr << "timing: synth_s=" << synth_s << " track_s=" << track_s
            << " eval_s=" << eval_s << " total_s=" << seconds_since(start) << "\n";
  std::cerr << "pipeline outputs in " << dir.string() << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Tracking-by-detection and evaluation for UAV video"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string classes_path;
  app.add_option("--classes", classes_path,
                 "File extending the class vocabulary, one name per line")
      ->check(CLI::ExistingFile);

  // track
  auto* track_cmd = app.add_subcommand(
      "track", "Associate per-frame detections into time-consistent tracks");
  std::string track_in, track_out;
  TrackFlags track_flags;
  track_cmd->add_option("input", track_in, "Detection file")
      ->required()
      ->check(CLI::ExistingFile);
  track_cmd->add_option("-o,--out", track_out, "Track file to write")->required();
  add_track_flags(*track_cmd, track_flags);

  // eval
  auto* eval_cmd = app.add_subcommand(
      "eval", "Score a track file against frame-by-frame annotations");
  std::string eval_tracks, eval_annotations, eval_out;
  EvalFlags eval_flags;
  eval_cmd->add_option("tracks", eval_tracks, "Track file")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("annotations", eval_annotations, "Annotation file")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("-o,--out", eval_out, "Report file to write (JSON)")->required();
  add_eval_flags(*eval_cmd, eval_flags);

  // synth
  auto* synth_cmd = app.add_subcommand(
      "synth", "Generate a synthetic scene: annotations plus noisy detections");
  std::string synth_config, synth_annotations, synth_detections;
  synth_cmd->add_option("config", synth_config, "Scene config file")
      ->required()
      ->check(CLI::ExistingFile);
  synth_cmd->add_option("--out-annotations", synth_annotations, "Annotation file to write")
      ->required();
  synth_cmd->add_option("--out-detections", synth_detections, "Detection file to write")
      ->required();

  // pipeline
  auto* pipeline_cmd = app.add_subcommand(
      "pipeline", "synth, track, and eval in one invocation");
  std::string pipeline_config, pipeline_dir;
  TrackFlags pipeline_track_flags;
  EvalFlags pipeline_eval_flags;
  pipeline_cmd->add_option("config", pipeline_config, "Scene config file")
      ->required()
      ->check(CLI::ExistingFile);
  pipeline_cmd->add_option("--out-dir", pipeline_dir, "Directory for all outputs")
      ->required();
  add_track_flags(*pipeline_cmd, pipeline_track_flags);
  add_eval_flags(*pipeline_cmd, pipeline_eval_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (track_cmd->parsed())
      return run_track(track_in, track_out, classes_path, track_flags);
    if (eval_cmd->parsed())
      return run_eval(eval_tracks, eval_annotations, eval_out, classes_path, eval_flags);
    if (synth_cmd->parsed())
      return run_synth(synth_config, synth_annotations, synth_detections, classes_path);
    if (pipeline_cmd->parsed())
      return run_pipeline(pipeline_config, pipeline_dir, classes_path, pipeline_track_flags,
                          pipeline_eval_flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace uavtrack::cli
