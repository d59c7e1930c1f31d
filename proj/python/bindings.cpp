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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "uavtrack/cli.hpp"
#include "uavtrack/eval.hpp"
#include "uavtrack/io.hpp"
#include "uavtrack/suppression.hpp"
#include "uavtrack/synth.hpp"
#include "uavtrack/tracker.hpp"
#include "uavtrack/version.hpp"

namespace py = pybind11;
using namespace uavtrack;

namespace {

std::string bbox_repr(const BBox& b) {
  std::ostringstream ss;
  ss << "BBox(x=" << b.x << ", y=" << b.y << ", w=" << b.w << ", h=" << b.h << ")";
  return ss.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tracking-by-detection and evaluation for UAV video";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  // geometry ------------------------------------------------------------
  py::class_<BBox>(m, "BBox")
      .def(py::init<>())
      .def(py::init<double, double, double, double>(), py::arg("x"), py::arg("y"),
           py::arg("w"), py::arg("h"))
      .def_readwrite("x", &BBox::x)
      .def_readwrite("y", &BBox::y)
      .def_readwrite("w", &BBox::w)
      .def_readwrite("h", &BBox::h)
      .def("__eq__", [](const BBox& a, const BBox& b) { return a == b; })
      .def("__repr__", &bbox_repr);

  py::class_<Vec2>(m, "Vec2")
      .def(py::init<>())
      .def(py::init<double, double>(), py::arg("dx"), py::arg("dy"))
      .def_readwrite("dx", &Vec2::dx)
      .def_readwrite("dy", &Vec2::dy)
      .def("__eq__", [](const Vec2& a, const Vec2& b) { return a == b; })
      .def("__repr__", [](const Vec2& v) {
        std::ostringstream ss;
        ss << "Vec2(dx=" << v.dx << ", dy=" << v.dy << ")";
        return ss.str();
      });

  m.def("area", &area, py::arg("bbox"));
  m.def("iou", &iou, py::arg("a"), py::arg("b"));
  m.def("cosine_distance", &cosine_distance, py::arg("u"), py::arg("v"));

  // classes ---------------------------------------------------------------
  py::class_<ClassRegistry>(m, "ClassRegistry")
      .def(py::init<>())
      .def_static("normalize", &ClassRegistry::normalize, py::arg("name"))
      .def("find", &ClassRegistry::find, py::arg("name"))
      .def("add", &ClassRegistry::add, py::arg("name"))
      .def("name", &ClassRegistry::name, py::arg("id"))
      .def("names", &ClassRegistry::names)
      .def("__len__", &ClassRegistry::size);

  // core types -----------------------------------------------------------
  py::class_<Detection>(m, "Detection")
      .def(py::init<>())
      .def(py::init<FrameIndex, ClassId, double, BBox>(), py::arg("frame"), py::arg("cls"),
           py::arg("conf"), py::arg("bbox"))
      .def_readwrite("frame", &Detection::frame)
      .def_readwrite("cls", &Detection::cls)
      .def_readwrite("conf", &Detection::conf)
      .def_readwrite("bbox", &Detection::bbox)
      .def("__eq__", [](const Detection& a, const Detection& b) { return a == b; })
      .def("__repr__", [](const Detection& d) {
        std::ostringstream ss;
        ss << "Detection(frame=" << d.frame << ", cls=" << d.cls << ", conf=" << d.conf
           << ", bbox=" << bbox_repr(d.bbox) << ")";
        return ss.str();
      });

  py::class_<TrackPoint>(m, "TrackPoint")
      .def(py::init<>())
      .def(py::init<FrameIndex, BBox, double>(), py::arg("frame"), py::arg("bbox"),
           py::arg("conf"))
      .def_readwrite("frame", &TrackPoint::frame)
      .def_readwrite("bbox", &TrackPoint::bbox)
      .def_readwrite("conf", &TrackPoint::conf);

  py::class_<Track>(m, "Track")
      .def(py::init<>())
      .def(py::init<TrackId, ClassId, std::vector<TrackPoint>>(), py::arg("id"),
           py::arg("cls"), py::arg("points"))
      .def_readwrite("id", &Track::id)
      .def_readwrite("cls", &Track::cls)
      .def_readwrite("points", &Track::points)
      .def("first_frame", &Track::first_frame)
      .def("last_frame", &Track::last_frame)
      .def("first_box", &Track::first_box)
      .def("last_box", &Track::last_box);

  py::class_<GroundTruthPoint>(m, "GroundTruthPoint")
      .def(py::init<>())
      .def(py::init<FrameIndex, BBox>(), py::arg("frame"), py::arg("bbox"))
      .def_readwrite("frame", &GroundTruthPoint::frame)
      .def_readwrite("bbox", &GroundTruthPoint::bbox);

  py::class_<GroundTruthInstance>(m, "GroundTruthInstance")
      .def(py::init<>())
      .def(py::init<TrackId, ClassId, std::vector<GroundTruthPoint>>(), py::arg("id"),
           py::arg("cls"), py::arg("points"))
      .def_readwrite("id", &GroundTruthInstance::id)
      .def_readwrite("cls", &GroundTruthInstance::cls)
      .def_readwrite("points", &GroundTruthInstance::points)
      .def("first_frame", &GroundTruthInstance::first_frame)
      .def("last_frame", &GroundTruthInstance::last_frame)
      .def("first_box", &GroundTruthInstance::first_box)
      .def("last_box", &GroundTruthInstance::last_box);

  m.def("displacement",
        [](const Track& t) { return displacement(t); }, py::arg("track"));
  m.def("displacement",
        [](const GroundTruthInstance& g) { return displacement(g); }, py::arg("instance"));

  // suppression ------------------------------------------------------------
  py::class_<SuppressionParams>(m, "SuppressionParams")
      .def(py::init<>())
      .def(py::init<double, double>(), py::arg("conf_thresh"), py::arg("nms_iou"))
      .def_readwrite("conf_thresh", &SuppressionParams::conf_thresh)
      .def_readwrite("nms_iou", &SuppressionParams::nms_iou);

  m.def(
      "confidence_filter",
      [](const std::vector<Detection>& dets, double conf_thresh) {
        return confidence_filter(dets, conf_thresh);
      },
      py::arg("detections"), py::arg("conf_thresh"));
  m.def(
      "nms",
      [](const std::vector<Detection>& dets, double nms_iou) { return nms(dets, nms_iou); },
      py::arg("frame_detections"), py::arg("nms_iou"));
  m.def(
      "suppress_stream",
      [](const std::vector<Detection>& dets, const SuppressionParams& params) {
        return suppress_stream(dets, params);
      },
      py::arg("detections"), py::arg("params") = SuppressionParams{});

  // tracker ----------------------------------------------------------------
  py::class_<TrackerParams>(m, "TrackerParams")
      .def(py::init<>())
      .def(py::init<FrameIndex, double>(), py::arg("time_window"), py::arg("match_iou"))
      .def_readwrite("time_window", &TrackerParams::time_window)
      .def_readwrite("match_iou", &TrackerParams::match_iou);

  m.def(
      "track_video",
      [](const std::vector<Detection>& dets, const TrackerParams& params) {
        return track_video(dets, params);
      },
      py::arg("detections"), py::arg("params") = TrackerParams{});

  // eval ---------------------------------------------------------------------
  py::class_<InstanceMatchParams>(m, "InstanceMatchParams")
      .def(py::init<>())
      .def(py::init<FrameIndex, double, double>(), py::arg("frame_tol"), py::arg("sight_iou"),
           py::arg("max_dcos"))
      .def_readwrite("frame_tol", &InstanceMatchParams::frame_tol)
      .def_readwrite("sight_iou", &InstanceMatchParams::sight_iou)
      .def_readwrite("max_dcos", &InstanceMatchParams::max_dcos);

  py::class_<PairDiagnostics>(m, "PairDiagnostics")
      .def_readonly("same_class", &PairDiagnostics::same_class)
      .def_readonly("first_frame_delta", &PairDiagnostics::first_frame_delta)
      .def_readonly("last_frame_delta", &PairDiagnostics::last_frame_delta)
      .def_readonly("first_iou", &PairDiagnostics::first_iou)
      .def_readonly("last_iou", &PairDiagnostics::last_iou)
      .def_readonly("dcos", &PairDiagnostics::dcos)
      .def_readonly("match", &PairDiagnostics::match);

  py::class_<InstanceCounts>(m, "InstanceCounts")
      .def_readonly("tp", &InstanceCounts::tp)
      .def_readonly("fp", &InstanceCounts::fp)
      .def_readonly("fn", &InstanceCounts::fn);

  py::class_<InstanceMatch>(m, "InstanceMatch")
      .def_readonly("gt_id", &InstanceMatch::gt_id)
      .def_readonly("pred_id", &InstanceMatch::pred_id)
      .def_readonly("first_iou", &InstanceMatch::first_iou)
      .def_readonly("last_iou", &InstanceMatch::last_iou)
      .def_readonly("dcos", &InstanceMatch::dcos);

  py::class_<InstanceReport>(m, "InstanceReport")
      .def_readonly("per_class", &InstanceReport::per_class)
      .def_readonly("matches", &InstanceReport::matches);

  m.def("match_instance_pair", &match_instance_pair, py::arg("ground_truth"),
        py::arg("prediction"), py::arg("params") = InstanceMatchParams{});
  m.def(
      "match_instances",
      [](const std::vector<GroundTruthInstance>& gts, const std::vector<Track>& preds,
         const InstanceMatchParams& params, std::size_t num_classes) {
        return match_instances(gts, preds, params, num_classes);
      },
      py::arg("ground_truth"), py::arg("predictions"),
      py::arg("params") = InstanceMatchParams{}, py::arg("num_classes") = 6);

  py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
      .def(py::init<std::size_t>(), py::arg("num_classes"))
      .def("num_classes", &ConfusionMatrix::num_classes)
      .def("dim", &ConfusionMatrix::dim)
      .def("background", &ConfusionMatrix::background)
      .def("at", [](const ConfusionMatrix& m_, std::size_t r, std::size_t c) {
        return m_.at(r, c);
      })
      .def("total", &ConfusionMatrix::total)
      .def("counts", [](const ConfusionMatrix& m_) {
        std::vector<std::vector<std::int64_t>> out(m_.dim(),
                                                   std::vector<std::int64_t>(m_.dim()));
        for (std::size_t r = 0; r < m_.dim(); ++r)
          for (std::size_t c = 0; c < m_.dim(); ++c) out[r][c] = m_.at(r, c);
        return out;
      });

  m.def("normalize_rows", &normalize_rows, py::arg("matrix"));

  py::class_<FrameBox>(m, "FrameBox")
      .def(py::init<>())
      .def(py::init<FrameIndex, ClassId, BBox>(), py::arg("frame"), py::arg("cls"),
           py::arg("bbox"))
      .def_readwrite("frame", &FrameBox::frame)
      .def_readwrite("cls", &FrameBox::cls)
      .def_readwrite("bbox", &FrameBox::bbox);

  m.def(
      "to_frame_boxes",
      [](const std::vector<GroundTruthInstance>& gts) { return to_frame_boxes(gts); },
      py::arg("instances"));
  m.def(
      "to_frame_boxes",
      [](const std::vector<Track>& tracks) { return to_frame_boxes(tracks); },
      py::arg("tracks"));
  m.def(
      "frame_confusion",
      [](const std::vector<FrameBox>& gt, const std::vector<FrameBox>& pred, double frame_iou,
         std::size_t num_classes) {
        return frame_confusion(gt, pred, frame_iou, num_classes);
      },
      py::arg("ground_truth"), py::arg("predictions"), py::arg("frame_iou") = 0.5,
      py::arg("num_classes") = 6);

  py::class_<EvalReport>(m, "EvalReport")
      .def(py::init<>())
      .def_readwrite("tool_version", &EvalReport::tool_version)
      .def_readwrite("class_names", &EvalReport::class_names)
      .def_readwrite("instance_params", &EvalReport::instance_params)
      .def_readwrite("frame_iou", &EvalReport::frame_iou)
      .def_readwrite("instance", &EvalReport::instance)
      .def_readwrite("frame", &EvalReport::frame);

  // synth -----------------------------------------------------------------
  py::class_<NoiseConfig>(m, "NoiseConfig")
      .def(py::init<>())
      .def_readwrite("jitter_sigma", &NoiseConfig::jitter_sigma)
      .def_readwrite("dropout_rate", &NoiseConfig::dropout_rate)
      .def_readwrite("dropout_burst_max", &NoiseConfig::dropout_burst_max)
      .def_readwrite("spurious_rate", &NoiseConfig::spurious_rate)
      .def_readwrite("conf_low", &NoiseConfig::conf_low)
      .def_readwrite("conf_high", &NoiseConfig::conf_high);

  py::class_<ClassPopulation>(m, "ClassPopulation")
      .def(py::init<>())
      .def(py::init<ClassId, int, double, double>(), py::arg("cls"), py::arg("count"),
           py::arg("min_size"), py::arg("max_size"))
      .def_readwrite("cls", &ClassPopulation::cls)
      .def_readwrite("count", &ClassPopulation::count)
      .def_readwrite("min_size", &ClassPopulation::min_size)
      .def_readwrite("max_size", &ClassPopulation::max_size);

  py::class_<SceneConfig>(m, "SceneConfig")
      .def(py::init<>())
      .def_readwrite("image_width", &SceneConfig::image_width)
      .def_readwrite("image_height", &SceneConfig::image_height)
      .def_readwrite("n_frames", &SceneConfig::n_frames)
      .def_readwrite("fps", &SceneConfig::fps)
      .def_readwrite("camera_velocity", &SceneConfig::camera_velocity)
      .def_readwrite("population", &SceneConfig::population)
      .def_readwrite("noise", &SceneConfig::noise)
      .def_readwrite("seed", &SceneConfig::seed)
      .def_readwrite("num_classes", &SceneConfig::num_classes);

  py::class_<SynthResult>(m, "SynthResult")
      .def_readonly("ground_truth", &SynthResult::ground_truth)
      .def_readonly("detections", &SynthResult::detections)
      .def_readonly("dropped_frames", &SynthResult::dropped_frames);

  m.def("generate", &generate, py::arg("config"));
  m.def(
      "oracle_expected_tracks",
      [](const std::vector<GroundTruthInstance>& gt,
         const std::vector<std::vector<FrameIndex>>& dropped, const TrackerParams& params) {
        return oracle_expected_tracks(gt, dropped, params);
      },
      py::arg("ground_truth"), py::arg("dropped_frames"), py::arg("params") = TrackerParams{});

  // io ----------------------------------------------------------------------
  m.def("parse_detections", &parse_detections, py::arg("path"), py::arg("registry"));
  m.def("parse_annotations", &parse_annotations, py::arg("path"), py::arg("registry"));
  m.def("parse_tracks", &parse_tracks, py::arg("path"), py::arg("registry"));
  m.def(
      "write_detections",
      [](const std::vector<Detection>& dets, const ClassRegistry& registry,
         const std::filesystem::path& path) { write_detections(dets, registry, path); },
      py::arg("detections"), py::arg("registry"), py::arg("path"));
  m.def(
      "write_annotations",
      [](const std::vector<GroundTruthInstance>& instances, const ClassRegistry& registry,
         const std::filesystem::path& path) { write_annotations(instances, registry, path); },
      py::arg("instances"), py::arg("registry"), py::arg("path"));
  m.def(
      "write_tracks",
      [](const std::vector<Track>& tracks, const ClassRegistry& registry,
         const std::filesystem::path& path) { write_tracks(tracks, registry, path); },
      py::arg("tracks"), py::arg("registry"), py::arg("path"));
  m.def("write_report", &write_report, py::arg("report"), py::arg("path"));
  m.def("read_report", &read_report, py::arg("path"));
  m.def("parse_scene_config", &parse_scene_config, py::arg("path"), py::arg("registry"));
  m.def("load_class_extension", &load_class_extension, py::arg("path"), py::arg("registry"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> storage = {"uavtrack"};
        storage.insert(storage.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        argv.reserve(storage.size());
        for (const std::string& s : storage) argv.push_back(s.c_str());
        return cli::run(static_cast<int>(argv.size()), argv.data());
      },
      py::arg("args"), "Invoke the CLI in-process; returns its exit code.");
}
