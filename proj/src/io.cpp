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

#include "uavtrack/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "uavtrack/version.hpp"

namespace uavtrack {

namespace {

constexpr const char* kDetectionsHeader = "#uavtrack detections v1";
constexpr const char* kAnnotationsHeader = "#uavtrack annotations v1";
constexpr const char* kTracksHeader = "#uavtrack tracks v1";
constexpr const char* kReportFormat = "uavtrack-report";
constexpr int kReportSchemaVersion = 1;

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

// Reads non-comment data lines, reporting 1-based line numbers. The first
// line must equal the expected header.
class LineReader {
 public:
  LineReader(const std::filesystem::path& path, const char* expected_header)
      : path_(path.string()), in_(path) {
    if (!in_) throw Error("cannot open file: " + path_);
    std::string first;
    if (!std::getline(in_, first))
      throw ParseError(path_, 1, std::string("missing header; expected '") +
                                     expected_header + "'");
    if (!first.empty() && first.back() == '\r') first.pop_back();
    if (first != expected_header)
      throw ParseError(path_, 1, std::string("bad header '") + first + "'; expected '" +
                                     expected_header + "'");
    line_no_ = 1;
  }

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      if (line[first] == '#') continue;
      return true;
    }
    return false;
  }

  std::size_t line_no() const { return line_no_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
};

struct FieldParser {
  const std::string& path;
  std::size_t line;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(path, line, msg); }

  double real(std::string_view tok, const char* what) const {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || end != tok.data() + tok.size())
      fail(std::string("bad ") + what + ": '" + std::string(tok) + "'");
    if (!std::isfinite(v)) fail(std::string(what) + " is not finite: '" + std::string(tok) + "'");
    return v;
  }

  std::int64_t integer(std::string_view tok, const char* what) const {
    std::int64_t v = 0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || end != tok.data() + tok.size())
      fail(std::string("bad ") + what + ": '" + std::string(tok) + "'");
    return v;
  }

  FrameIndex frame(std::string_view tok) const {
    const std::int64_t v = integer(tok, "frame");
    if (v < 0) fail("frame must be non-negative: '" + std::string(tok) + "'");
    return v;
  }

  TrackId id(std::string_view tok, const char* what) const {
    const std::int64_t v = integer(tok, what);
    if (v < 0) fail(std::string(what) + " must be non-negative: '" + std::string(tok) + "'");
    return v;
  }

  double conf(std::string_view tok) const {
    const double v = real(tok, "conf");
    if (!(v >= 0.0 && v <= 1.0)) fail("conf out of range [0,1]: '" + std::string(tok) + "'");
    return v;
  }

  double coord(std::string_view tok, const char* what) const {
    const double v = real(tok, what);
    if (v < 0.0) fail(std::string(what) + " must be non-negative: '" + std::string(tok) + "'");
    return v;
  }

  ClassId cls(std::string_view tok, const ClassRegistry& registry) const {
    const bool numeric =
        !tok.empty() && std::all_of(tok.begin(), tok.end(), [](unsigned char c) {
          return std::isdigit(c);
        });
    if (numeric) {
      const std::int64_t v = integer(tok, "class id");
      if (v < 0 || static_cast<std::size_t>(v) >= registry.size())
        fail("unknown class id: '" + std::string(tok) + "'");
      return static_cast<ClassId>(v);
    }
    const auto found = registry.find(tok);
    if (!found) fail("unknown class: '" + std::string(tok) + "'");
    return *found;
  }

  BBox bbox(std::string_view x, std::string_view y, std::string_view w,
            std::string_view h) const {
    return {coord(x, "x"), coord(y, "y"), coord(w, "w"), coord(h, "h")};
  }
};

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary: no platform newline surprises
  if (!out) throw Error("cannot open file for writing: " + path.string());
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::vector<Detection> parse_detections(const std::filesystem::path& path,
                                        const ClassRegistry& registry) {
  LineReader reader(path, kDetectionsHeader);
  std::vector<Detection> dets;
  std::string line;
  while (reader.next(line)) {
    const FieldParser p{reader.path(), reader.line_no()};
    const auto tok = split_ws(line);
    if (tok.size() != 7) p.fail("expected 7 fields (frame class conf x y w h)");
    Detection d;
    d.frame = p.frame(tok[0]);
    d.cls = p.cls(tok[1], registry);
    d.conf = p.conf(tok[2]);
    d.bbox = p.bbox(tok[3], tok[4], tok[5], tok[6]);
    dets.push_back(d);
  }
  std::stable_sort(dets.begin(), dets.end(),
                   [](const Detection& a, const Detection& b) { return a.frame < b.frame; });
  return dets;
}

namespace {

// Shared grouping for annotations and tracks.
template <typename Instance, typename Point>
std::vector<Instance> group_records(
    const std::string& path,
    std::vector<std::tuple<std::size_t, TrackId, ClassId, Point>>& records) {
  std::map<TrackId, Instance> by_id;
  std::map<std::pair<TrackId, FrameIndex>, std::size_t> seen;  // -> line
  for (auto& [line, id, cls, point] : records) {
    const auto key = std::make_pair(id, point.frame);
    if (const auto it = seen.find(key); it != seen.end())
      throw ParseError(path, line,
                       "duplicate (frame, id) pair: frame " + std::to_string(point.frame) +
                           ", id " + std::to_string(id) + " (first at line " +
                           std::to_string(it->second) + ")");
    seen.emplace(key, line);
    auto [it, inserted] = by_id.try_emplace(id, Instance{id, cls, {}});
    if (!inserted && it->second.cls != cls)
      throw ParseError(path, line,
                       "instance " + std::to_string(id) + " labeled with two classes");
    it->second.points.push_back(std::move(point));
  }
  std::vector<Instance> out;
  out.reserve(by_id.size());
  for (auto& [id, inst] : by_id) {
    std::sort(inst.points.begin(), inst.points.end(),
              [](const Point& a, const Point& b) { return a.frame < b.frame; });
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace

std::vector<GroundTruthInstance> parse_annotations(const std::filesystem::path& path,
                                                   const ClassRegistry& registry) {
  LineReader reader(path, kAnnotationsHeader);
  std::vector<std::tuple<std::size_t, TrackId, ClassId, GroundTruthPoint>> records;
  std::string line;
  while (reader.next(line)) {
    const FieldParser p{reader.path(), reader.line_no()};
    const auto tok = split_ws(line);
    if (tok.size() != 7) p.fail("expected 7 fields (frame instance_id class x y w h)");
    GroundTruthPoint point{p.frame(tok[0]), p.bbox(tok[3], tok[4], tok[5], tok[6])};
    records.emplace_back(reader.line_no(), p.id(tok[1], "instance_id"),
                         p.cls(tok[2], registry), point);
  }
  return group_records<GroundTruthInstance>(reader.path(), records);
}

std::vector<Track> parse_tracks(const std::filesystem::path& path,
                                const ClassRegistry& registry) {
  LineReader reader(path, kTracksHeader);
  std::vector<std::tuple<std::size_t, TrackId, ClassId, TrackPoint>> records;
  std::string line;
  while (reader.next(line)) {
    const FieldParser p{reader.path(), reader.line_no()};
    const auto tok = split_ws(line);
    if (tok.size() != 8) p.fail("expected 8 fields (frame track_id class x y w h conf)");
    TrackPoint point{p.frame(tok[0]), p.bbox(tok[3], tok[4], tok[5], tok[6]),
                     p.conf(tok[7])};
    records.emplace_back(reader.line_no(), p.id(tok[1], "track_id"),
                         p.cls(tok[2], registry), point);
  }
  return group_records<Track>(reader.path(), records);
}

void write_detections(std::span<const Detection> dets, const ClassRegistry& registry,
                      const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << kDetectionsHeader << "\n# frame class conf x y w h\n";
  for (const Detection& d : dets) {
    out << d.frame << ' ' << registry.name(d.cls) << ' ' << format_double(d.conf) << ' '
        << format_double(d.bbox.x) << ' ' << format_double(d.bbox.y) << ' '
        << format_double(d.bbox.w) << ' ' << format_double(d.bbox.h) << '\n';
  }
}

namespace {

struct AnnotationRow {
  FrameIndex frame;
  TrackId id;
  ClassId cls;
  BBox bbox;
  double conf;
};

void sort_rows(std::vector<AnnotationRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const AnnotationRow& a, const AnnotationRow& b) {
    if (a.frame != b.frame) return a.frame < b.frame;
    return a.id < b.id;
  });
}

}  // namespace

void write_annotations(std::span<const GroundTruthInstance> instances,
                       const ClassRegistry& registry, const std::filesystem::path& path) {
  std::vector<AnnotationRow> rows;
  for (const GroundTruthInstance& inst : instances)
    for (const GroundTruthPoint& p : inst.points)
      rows.push_back({p.frame, inst.id, inst.cls, p.bbox, 0.0});
  sort_rows(rows);

  std::ofstream out = open_out(path);
  out << kAnnotationsHeader << "\n# frame instance_id class x y w h\n";
  for (const AnnotationRow& r : rows) {
    out << r.frame << ' ' << r.id << ' ' << registry.name(r.cls) << ' '
        << format_double(r.bbox.x) << ' ' << format_double(r.bbox.y) << ' '
        << format_double(r.bbox.w) << ' ' << format_double(r.bbox.h) << '\n';
  }
}

void write_tracks(std::span<const Track> tracks, const ClassRegistry& registry,
                  const std::filesystem::path& path) {
  std::vector<AnnotationRow> rows;
  for (const Track& t : tracks)
    for (const TrackPoint& p : t.points) rows.push_back({p.frame, t.id, t.cls, p.bbox, p.conf});
  sort_rows(rows);

  std::ofstream out = open_out(path);
  out << kTracksHeader << "\n# frame track_id class x y w h conf\n";
  for (const AnnotationRow& r : rows) {
    out << r.frame << ' ' << r.id << ' ' << registry.name(r.cls) << ' '
        << format_double(r.bbox.x) << ' ' << format_double(r.bbox.y) << ' '
        << format_double(r.bbox.w) << ' ' << format_double(r.bbox.h) << ' '
        << format_double(r.conf) << '\n';
  }
}

void write_report(const EvalReport& report, const std::filesystem::path& path) {
  nlohmann::json j;
  j["format"] = kReportFormat;
  j["schema_version"] = kReportSchemaVersion;
  j["tool_version"] = report.tool_version.empty() ? kVersion : report.tool_version;
  j["classes"] = report.class_names;
  j["params"] = {{"frame_tol", report.instance_params.frame_tol},
                 {"sight_iou", report.instance_params.sight_iou},
                 {"max_dcos", report.instance_params.max_dcos},
                 {"frame_iou", report.frame_iou}};

  if (report.instance) {
    nlohmann::json per_class;
    for (std::size_t c = 0; c < report.instance->per_class.size(); ++c) {
      const InstanceCounts& counts = report.instance->per_class[c];
      per_class[report.class_names.at(c)] = {
          {"tp", counts.tp}, {"fp", counts.fp}, {"fn", counts.fn}};
    }
    nlohmann::json matches = nlohmann::json::array();
    for (const InstanceMatch& m : report.instance->matches) {
      matches.push_back({{"gt_id", m.gt_id},
                         {"pred_id", m.pred_id},
                         {"first_iou", m.first_iou},
                         {"last_iou", m.last_iou},
                         {"dcos", m.dcos}});
    }
    j["instance"] = {{"per_class", per_class}, {"matches", matches}};
  }

  if (report.frame) {
    const ConfusionMatrix& m = *report.frame;
    std::vector<std::string> labels = report.class_names;
    labels.push_back("background");
    std::vector<std::vector<std::int64_t>> counts(m.dim(), std::vector<std::int64_t>(m.dim()));
    for (std::size_t r = 0; r < m.dim(); ++r)
      for (std::size_t c = 0; c < m.dim(); ++c) counts[r][c] = m.at(r, c);
    j["frame"] = {{"labels", labels},
                  {"counts", counts},
                  {"row_normalized", normalize_rows(m)}};
  }

  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
}

EvalReport read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": invalid JSON: " + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kReportFormat)
      throw Error(path.string() + ": not a report file");
    EvalReport report;
    report.tool_version = j.at("tool_version").get<std::string>();
    report.class_names = j.at("classes").get<std::vector<std::string>>();
    const auto& params = j.at("params");
    report.instance_params.frame_tol = params.at("frame_tol").get<FrameIndex>();
    report.instance_params.sight_iou = params.at("sight_iou").get<double>();
    report.instance_params.max_dcos = params.at("max_dcos").get<double>();
    report.frame_iou = params.at("frame_iou").get<double>();

    if (j.contains("instance")) {
      InstanceReport inst;
      inst.per_class.resize(report.class_names.size());
      const auto& per_class = j.at("instance").at("per_class");
      for (std::size_t c = 0; c < report.class_names.size(); ++c) {
        const auto& counts = per_class.at(report.class_names[c]);
        inst.per_class[c] = {counts.at("tp").get<std::int64_t>(),
                             counts.at("fp").get<std::int64_t>(),
                             counts.at("fn").get<std::int64_t>()};
      }
      for (const auto& m : j.at("instance").at("matches")) {
        inst.matches.push_back({m.at("gt_id").get<TrackId>(), m.at("pred_id").get<TrackId>(),
                                m.at("first_iou").get<double>(),
                                m.at("last_iou").get<double>(), m.at("dcos").get<double>()});
      }
      report.instance = std::move(inst);
    }

    if (j.contains("frame")) {
      const auto counts =
          j.at("frame").at("counts").get<std::vector<std::vector<std::int64_t>>>();
      ConfusionMatrix m(report.class_names.size());
      if (counts.size() != m.dim())
        throw Error(path.string() + ": confusion matrix size does not match classes");
      for (std::size_t r = 0; r < m.dim(); ++r) {
        if (counts[r].size() != m.dim())
          throw Error(path.string() + ": confusion matrix is not square");
        for (std::size_t c = 0; c < m.dim(); ++c) m.at(r, c) = counts[r][c];
      }
      report.frame = std::move(m);
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": malformed report: " + e.what());
  }
}

SceneConfig parse_scene_config(const std::filesystem::path& path,
                               const ClassRegistry& registry) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path.string());

  SceneConfig config;
  config.num_classes = registry.size();
  std::map<ClassId, std::size_t> population_index;

  const auto population_of = [&](ClassId cls) -> ClassPopulation& {
    const auto [it, inserted] = population_index.try_emplace(cls, config.population.size());
    if (inserted) {
      ClassPopulation pop;
      pop.cls = cls;
      config.population.push_back(pop);
    }
    return config.population[it->second];
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const FieldParser p{path.string(), line_no};
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (!split_ws(line).empty()) p.fail("expected 'key = value'");
      continue;
    }
    const std::string key_part = line.substr(0, eq);
    const std::string value_part = line.substr(eq + 1);
    const auto key_tokens = split_ws(key_part);
    const auto values = split_ws(value_part);
    if (key_tokens.size() != 1) p.fail("expected a single key before '='");
    const std::string key(key_tokens[0]);

    const auto one = [&]() -> std::string_view {
      if (values.size() != 1) p.fail("key '" + key + "' takes one value");
      return values[0];
    };
    const auto two = [&]() -> std::pair<std::string_view, std::string_view> {
      if (values.size() != 2) p.fail("key '" + key + "' takes two values");
      return {values[0], values[1]};
    };

    if (key == "image_width") {
      config.image_width = p.real(one(), "image_width");
    } else if (key == "image_height") {
      config.image_height = p.real(one(), "image_height");
    } else if (key == "n_frames") {
      config.n_frames = p.integer(one(), "n_frames");
      if (config.n_frames < 0) p.fail("n_frames must be non-negative");
    } else if (key == "fps") {
      config.fps = p.real(one(), "fps");
      if (config.fps <= 0.0) p.fail("fps must be positive");
    } else if (key == "seed") {
      const auto tok = one();
      std::uint64_t v = 0;
      const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || end != tok.data() + tok.size())
        p.fail("bad seed: '" + std::string(tok) + "'");
      config.seed = v;
    } else if (key == "camera_velocity") {
      const auto [vx, vy] = two();
      config.camera_velocity = {p.real(vx, "camera_velocity.x"),
                                p.real(vy, "camera_velocity.y")};
    } else if (key == "jitter_sigma") {
      config.noise.jitter_sigma = p.real(one(), "jitter_sigma");
      if (config.noise.jitter_sigma < 0.0) p.fail("jitter_sigma must be non-negative");
    } else if (key == "dropout_rate") {
      config.noise.dropout_rate = p.real(one(), "dropout_rate");
      if (config.noise.dropout_rate < 0.0 || config.noise.dropout_rate > 1.0)
        p.fail("dropout_rate must be in [0,1]");
    } else if (key == "dropout_burst_max") {
      const std::int64_t v = p.integer(one(), "dropout_burst_max");
      if (v < 1) p.fail("dropout_burst_max must be >= 1");
      config.noise.dropout_burst_max = static_cast<int>(v);
    } else if (key == "spurious_rate") {
      config.noise.spurious_rate = p.real(one(), "spurious_rate");
      if (config.noise.spurious_rate < 0.0) p.fail("spurious_rate must be non-negative");
    } else if (key == "conf_range") {
      const auto [lo, hi] = two();
      config.noise.conf_low = p.real(lo, "conf_range low");
      config.noise.conf_high = p.real(hi, "conf_range high");
      if (config.noise.conf_low < 0.0 || config.noise.conf_high > 1.0 ||
          config.noise.conf_low > config.noise.conf_high)
        p.fail("conf_range must satisfy 0 <= low <= high <= 1");
    } else if (key.starts_with("count.")) {
      const ClassId cls = p.cls(std::string_view(key).substr(6), registry);
      const std::int64_t v = p.integer(one(), "count");
      if (v < 0) p.fail("count must be non-negative");
      population_of(cls).count = static_cast<int>(v);
    } else if (key.starts_with("size.")) {
      const ClassId cls = p.cls(std::string_view(key).substr(5), registry);
      const auto [lo, hi] = two();
      ClassPopulation& pop = population_of(cls);
      pop.min_size = p.real(lo, "size min");
      pop.max_size = p.real(hi, "size max");
      if (pop.min_size <= 0.0 || pop.max_size < pop.min_size)
        p.fail("size range must satisfy 0 < min <= max");
    } else {
      p.fail("unknown key '" + key + "'");
    }
  }
  return config;
}

void load_class_extension(const std::filesystem::path& path, ClassRegistry& registry) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    registry.add(line);
  }
}

}  // namespace uavtrack
