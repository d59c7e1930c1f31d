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

#include <doctest.h>

#include <map>
#include <set>

#include "helpers.hpp"
#include "uavtrack/synth.hpp"
#include "uavtrack/tracker.hpp"

using namespace uavtrack;

namespace {

constexpr ClassId kTire = 4;
constexpr ClassId kPool = 3;

Detection det(FrameIndex frame, ClassId cls, double conf, BBox box) {
  return {frame, cls, conf, box};
}

// Reference one-to-one matcher: repeatedly scan for the best remaining pair
// (max IOU, then older candidate, then earlier detection) instead of sorting.
std::map<std::size_t, TrackId> reference_greedy(const std::vector<Detection>& dets,
                                                const CandidateRegistry& registry,
                                                const TrackerParams& params) {
  struct Pair {
    double iou;
    TrackId id;
    std::size_t det;
  };
  std::vector<Pair> pool;
  for (std::size_t i = 0; i < dets.size(); ++i)
    for (const auto& [id, cand] : registry.active()) {
      if (cand.cls != dets[i].cls) continue;
      const double v = iou(dets[i].bbox, cand.last_seen_box);
      if (v >= params.match_iou) pool.push_back({v, id, i});
    }

  std::map<std::size_t, TrackId> committed;
  std::set<TrackId> taken;
  while (true) {
    const Pair* best = nullptr;
    for (const Pair& p : pool) {
      if (committed.count(p.det) || taken.count(p.id)) continue;
      if (!best || p.iou > best->iou ||
          (p.iou == best->iou && (p.id < best->id || (p.id == best->id && p.det < best->det))))
        best = &p;
    }
    if (!best) break;
    committed[best->det] = best->id;
    taken.insert(best->id);
  }
  return committed;
}

}  // namespace

TEST_SUITE("tracker") {

TEST_CASE("associate matches equal-class candidates by IOU") {
  CandidateRegistry registry;
  const BBox anchor{0, 0, 12, 10};
  const TrackId id = registry.insert_new(kTire, 0, anchor);
  REQUIRE(id == 0);

  const BBox moved{4, 0, 12, 10};  // iou 80/160 = 0.5 with the anchor
  REQUIRE(iou(anchor, moved) == 0.5);
  const Detection d = det(1, kTire, 0.9, moved);
  const auto out = associate(std::vector<Detection>{d}, registry, {45, 0.1});
  REQUIRE(out.size() == 1);
  CHECK(out[0].track_id == 0);
  CHECK_FALSE(out[0].is_new);
  CHECK(registry.active().at(0).last_seen_frame == 1);
  CHECK(registry.active().at(0).last_seen_box == moved);
}

TEST_CASE("associate never matches across classes") {
  CandidateRegistry registry;
  registry.insert_new(kTire, 0, {0, 0, 10, 10});

  const Detection pool_det = det(1, kPool, 0.9, {0, 0, 10, 10});
  const auto out = associate(std::vector<Detection>{pool_det}, registry, {45, 0.1});
  REQUIRE(out.size() == 1);
  CHECK(out[0].is_new);
  CHECK(out[0].track_id == 1);
}

TEST_CASE("associate evicts candidates past the window") {
  CandidateRegistry registry;
  registry.insert_new(kTire, 100, {0, 0, 10, 10});

  // 146 - 100 = 46 > 45: the candidate is stale even though the box matches.
  const Detection d = det(146, kTire, 0.9, {0, 0, 10, 10});
  const auto out = associate(std::vector<Detection>{d}, registry, {45, 0.1});
  REQUIRE(out.size() == 1);
  CHECK(out[0].is_new);
  CHECK(registry.active().size() == 1);  // only the new track remains

  // 145 - 100 = 45 is still within the window.
  CandidateRegistry fresh;
  const TrackId id = fresh.insert_new(kTire, 100, {0, 0, 10, 10});
  const auto matched = associate(std::vector<Detection>{det(145, kTire, 0.9, {0, 0, 10, 10})},
                                 fresh, {45, 0.1});
  CHECK(matched[0].track_id == id);
  CHECK_FALSE(matched[0].is_new);
}

TEST_CASE("associate rejects mixed-frame input") {
  CandidateRegistry registry;
  const std::vector<Detection> mixed = {det(0, kTire, 0.9, {0, 0, 5, 5}),
                                        det(1, kTire, 0.8, {0, 0, 5, 5})};
  CHECK_THROWS_AS((void)associate(mixed, registry, {45, 0.1}), std::invalid_argument);
}

TEST_CASE("associate agrees with a scan-based reference matcher") {
  SplitMix64 rng(0x5eed0201);
  for (int trial = 0; trial < 200; ++trial) {
    CandidateRegistry registry;
    const int n_candidates = static_cast<int>(rng.uniform_int(0, 6));
    for (int i = 0; i < n_candidates; ++i)
      registry.insert_new(static_cast<ClassId>(rng.uniform_int(0, 1)),
                          rng.uniform_int(0, 3), test::random_box(rng, 40.0, 25.0));
    CandidateRegistry reference_registry = registry;

    std::vector<Detection> dets;
    const int n_dets = static_cast<int>(rng.uniform_int(0, 6));
    for (int i = 0; i < n_dets; ++i)
      dets.push_back(det(4, static_cast<ClassId>(rng.uniform_int(0, 1)),
                         rng.uniform(0.0, 1.0), test::random_box(rng, 40.0, 25.0)));

    const TrackerParams params{45, rng.uniform(0.05, 0.5)};
    const auto expected = reference_greedy(dets, reference_registry, params);
    const auto out = associate(dets, registry, params);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto it = expected.find(i);
      if (it != expected.end()) {
        CHECK_FALSE(out[i].is_new);
        CHECK(out[i].track_id == it->second);
      } else {
        CHECK(out[i].is_new);
      }
    }
  }
}

TEST_CASE("track_video on an empty stream") {
  CHECK(track_video(std::vector<Detection>{}, {}).empty());
}

TEST_CASE("track_video keeps one moving object on one track") {
  // 2 px/frame drift on a 20 px box: consecutive IOU well above 0.1.
  std::vector<Detection> dets;
  for (FrameIndex f = 0; f < 100; ++f)
    dets.push_back(det(f, kTire, 0.9, {2.0 * static_cast<double>(f), 50, 20, 20}));

  const auto tracks = track_video(dets, {45, 0.1});
  REQUIRE(tracks.size() == 1);
  CHECK(tracks[0].points.size() == 100);
  CHECK(tracks[0].cls == kTire);
  CHECK(tracks[0].first_frame() == 0);
  CHECK(tracks[0].last_frame() == 99);
}

TEST_CASE("track_video splits on gaps beyond the window") {
  const BBox box{10, 10, 20, 20};
  std::vector<Detection> dets;
  for (FrameIndex f = 0; f <= 10; ++f) dets.push_back(det(f, kTire, 0.9, box));
  for (FrameIndex f = 57; f <= 90; ++f) dets.push_back(det(f, kTire, 0.9, box));

  // 57 - 10 = 47 > 45: two tracks.
  CHECK(track_video(dets, {45, 0.1}).size() == 2);

  std::vector<Detection> close_gap;
  for (FrameIndex f = 0; f <= 10; ++f) close_gap.push_back(det(f, kTire, 0.9, box));
  for (FrameIndex f = 50; f <= 90; ++f) close_gap.push_back(det(f, kTire, 0.9, box));

  // 50 - 10 = 40 <= 45: one track.
  CHECK(track_video(close_gap, {45, 0.1}).size() == 1);
}

TEST_CASE("track_video invariants on noisy synthetic streams") {
  SceneConfig config;
  config.image_width = 400;
  config.image_height = 300;
  config.n_frames = 120;
  config.camera_velocity = {0.4, 0.2};
  config.population = {{kTire, 2, 20, 40}, {kPool, 2, 20, 40}};
  config.noise.jitter_sigma = 1.0;
  config.noise.dropout_rate = 0.05;
  config.noise.dropout_burst_max = 10;
  config.noise.spurious_rate = 0.1;

  SplitMix64 seeds(0x5eed0202);
  for (int trial = 0; trial < 25; ++trial) {
    config.seed = seeds.next();
    const SynthResult scene = generate(config);
    const TrackerParams params{45, 0.1};
    const auto tracks = track_video(scene.detections, params);

    // Determinism across runs.
    CHECK(track_video(scene.detections, params) == tracks);

    std::map<FrameIndex, std::set<TrackId>> ids_at_frame;
    for (const Track& t : tracks) {
      REQUIRE_FALSE(t.points.empty());
      for (std::size_t i = 0; i < t.points.size(); ++i) {
        // Bijectivity: no id twice in a frame, no frame twice in a track.
        CHECK(ids_at_frame[t.points[i].frame].insert(t.id).second);
        if (i > 0) {
          CHECK(t.points[i].frame > t.points[i - 1].frame);
          CHECK(t.points[i].frame - t.points[i - 1].frame <= params.time_window);
          CHECK(iou(t.points[i - 1].bbox, t.points[i].bbox) >= params.match_iou);
        }
      }
    }

    // Every input detection landed in exactly one track point.
    std::size_t total_points = 0;
    for (const Track& t : tracks) total_points += t.points.size();
    CHECK(total_points == scene.detections.size());
  }
}

TEST_CASE("degenerate parameters") {
  const BBox box{10, 10, 20, 20};
  std::vector<Detection> dets;
  for (FrameIndex f = 0; f < 5; ++f) dets.push_back(det(f, kTire, 0.9, box));

  // Window 0: nothing survives to the next frame, every detection is novel.
  const auto split = track_video(dets, {0, 0.1});
  CHECK(split.size() == 5);
  for (const Track& t : split) CHECK(t.points.size() == 1);

  // An impossible IOU floor: one track per detection.
  CHECK(track_video(dets, {45, 1.0001}).size() == 5);
}

TEST_CASE("class purity") {
  SplitMix64 rng(0x5eed0203);
  std::vector<Detection> dets;
  for (FrameIndex f = 0; f < 40; ++f) {
    dets.push_back(det(f, kTire, 0.9, {10 + rng.uniform(-1.0, 1.0), 10, 20, 20}));
    dets.push_back(det(f, kPool, 0.9, {12 + rng.uniform(-1.0, 1.0), 10, 20, 20}));
  }
  // The two streams overlap heavily but differ in class: they must never
  // merge, so each class keeps one full-length track.
  const auto tracks = track_video(dets, {45, 0.1});
  REQUIRE(tracks.size() == 2);
  CHECK(tracks[0].cls != tracks[1].cls);
  CHECK(tracks[0].points.size() == 40);
  CHECK(tracks[1].points.size() == 40);
}

}  // TEST_SUITE
