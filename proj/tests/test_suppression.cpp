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

#include <algorithm>

#include "helpers.hpp"
#include "uavtrack/suppression.hpp"

using namespace uavtrack;

namespace {

constexpr ClassId kTire = 4;
constexpr ClassId kPool = 3;

Detection det(FrameIndex frame, ClassId cls, double conf, BBox box) {
  return {frame, cls, conf, box};
}

bool contains(const std::vector<Detection>& haystack, const Detection& needle) {
  return std::find(haystack.begin(), haystack.end(), needle) != haystack.end();
}

std::vector<Detection> random_frame(SplitMix64& rng, FrameIndex frame, int max_count) {
  std::vector<Detection> dets;
  const int n = static_cast<int>(rng.uniform_int(0, max_count));
  for (int i = 0; i < n; ++i) {
    // Small canvas so overlaps actually happen.
    dets.push_back(det(frame, static_cast<ClassId>(rng.uniform_int(0, 2)),
                       rng.uniform(0.0, 1.0), test::random_box(rng, 40.0, 30.0)));
  }
  return dets;
}

}  // namespace

TEST_SUITE("suppression") {

TEST_CASE("confidence filter") {
  CHECK(confidence_filter(std::vector<Detection>{}, 0.5).empty());

  const std::vector<Detection> dets = {det(0, kTire, 0.4, {0, 0, 5, 5}),
                                       det(0, kTire, 0.5, {10, 0, 5, 5}),
                                       det(0, kTire, 0.6, {20, 0, 5, 5})};
  const auto kept = confidence_filter(dets, 0.5);
  REQUIRE(kept.size() == 2);  // boundary is inclusive
  CHECK(kept[0].conf == 0.5);
  CHECK(kept[1].conf == 0.6);

  CHECK(confidence_filter(dets, 0.0) == dets);
}

TEST_CASE("nms keeps the higher-confidence box of an overlapping same-class pair") {
  // iou((0,0,10,10),(0,2.5,10,10)) = 75/125 = 0.6
  const Detection strong = det(3, kTire, 0.9, {0, 0, 10, 10});
  const Detection weak = det(3, kTire, 0.8, {0, 2.5, 10, 10});
  REQUIRE(iou(strong.bbox, weak.bbox) == doctest::Approx(0.6));

  const auto out = nms(std::vector<Detection>{weak, strong}, 0.5);
  REQUIRE(out.size() == 1);
  CHECK(out[0] == strong);
  CHECK(out == test::nms_subset_oracle({weak, strong}, 0.5));
}

TEST_CASE("nms is class-aware") {
  // iou = 360/400 = 0.9, but different classes never suppress each other.
  const Detection tire = det(0, kTire, 0.9, {0, 0, 20, 19});
  const Detection pool = det(0, kPool, 0.8, {0, 1, 20, 19});
  REQUIRE(iou(tire.bbox, pool.bbox) == doctest::Approx(0.9));

  const auto out = nms(std::vector<Detection>{tire, pool}, 0.5);
  CHECK(out.size() == 2);
}

TEST_CASE("nms breaks confidence ties by position") {
  // Equal confidences: the box with the smaller x wins the sort, so for an
  // overlapping pair it suppresses the other regardless of input order.
  const Detection left = det(0, kTire, 0.8, {0, 0, 10, 10});
  const Detection right = det(0, kTire, 0.8, {2, 0, 10, 10});
  REQUIRE(iou(left.bbox, right.bbox) > 0.5);

  const auto ab = nms(std::vector<Detection>{left, right}, 0.5);
  const auto ba = nms(std::vector<Detection>{right, left}, 0.5);
  REQUIRE(ab.size() == 1);
  CHECK(ab[0] == left);
  CHECK(ab == ba);

  const Detection lower = det(0, kTire, 0.8, {0, 3, 10, 10});
  const auto tie_y = nms(std::vector<Detection>{lower, left}, 0.5);
  REQUIRE(tie_y.size() == 1);
  CHECK(tie_y[0] == left);  // same x: smaller y wins
}

TEST_CASE("nms trivia") {
  const Detection only = det(7, kTire, 0.4, {0, 0, 5, 5});
  CHECK(nms(std::vector<Detection>{only}, 0.5) == std::vector<Detection>{only});
  CHECK(nms(std::vector<Detection>{}, 0.5).empty());

  const std::vector<Detection> mixed = {det(0, kTire, 0.9, {0, 0, 5, 5}),
                                        det(1, kTire, 0.8, {0, 0, 5, 5})};
  CHECK_THROWS_AS((void)nms(mixed, 0.5), std::invalid_argument);
}

TEST_CASE("nms agrees with the subset-enumeration oracle") {
  SplitMix64 rng(0x5eed0101);
  for (int i = 0; i < 150; ++i) {
    std::vector<Detection> dets;
    const int n = static_cast<int>(rng.uniform_int(0, 10));
    for (int k = 0; k < n; ++k)
      dets.push_back(det(0, static_cast<ClassId>(rng.uniform_int(0, 1)),
                         rng.uniform(0.0, 1.0), test::random_box(rng, 30.0, 25.0)));
    const double thresh = rng.uniform(0.05, 0.95);
    CHECK(nms(dets, thresh) == test::nms_subset_oracle(dets, thresh));
  }
}

TEST_CASE("suppress_stream basics") {
  const SuppressionParams params;
  CHECK(suppress_stream(std::vector<Detection>{}, params).empty());

  // Filtered before NMS.
  CHECK(suppress_stream(std::vector<Detection>{det(0, kTire, 0.3, {0, 0, 5, 5})}, params)
            .empty());
}

TEST_CASE("suppress_stream equals per-frame nms applied independently") {
  const SuppressionParams params{0.5, 0.5};
  const std::vector<Detection> frame0 = {det(0, kTire, 0.9, {0, 0, 10, 10}),
                                         det(0, kTire, 0.8, {0, 1, 10, 10})};
  const std::vector<Detection> frame1 = {det(1, kPool, 0.7, {5, 5, 10, 10}),
                                         det(1, kPool, 0.95, {5, 6, 10, 10})};
  std::vector<Detection> stream = frame0;
  stream.insert(stream.end(), frame1.begin(), frame1.end());

  std::vector<Detection> expected = nms(confidence_filter(frame0, 0.5), 0.5);
  for (const Detection& d : nms(confidence_filter(frame1, 0.5), 0.5)) expected.push_back(d);
  CHECK(suppress_stream(stream, params) == expected);
}

TEST_CASE("suppress_stream properties on random streams") {
  SplitMix64 rng(0x5eed0102);
  for (int i = 0; i < 300; ++i) {
    std::vector<Detection> dets;
    const int frames = static_cast<int>(rng.uniform_int(1, 4));
    for (int f = 0; f < frames; ++f)
      for (const Detection& d : random_frame(rng, f, 8)) dets.push_back(d);
    const SuppressionParams params{rng.uniform(0.0, 0.8), rng.uniform(0.1, 0.9)};

    const auto once = suppress_stream(dets, params);
    CHECK(suppress_stream(once, params) == once);  // idempotent

    for (const Detection& d : once) CHECK(contains(dets, d));  // output is a subset

    // Same-class same-frame survivors are below the suppression threshold.
    for (std::size_t a = 0; a < once.size(); ++a)
      for (std::size_t b = a + 1; b < once.size(); ++b)
        if (once[a].frame == once[b].frame && once[a].cls == once[b].cls)
          CHECK(iou(once[a].bbox, once[b].bbox) < params.nms_iou);

    // Raising the confidence threshold never adds detections.
    const SuppressionParams stricter{params.conf_thresh + 0.1, params.nms_iou};
    for (const Detection& d : suppress_stream(dets, stricter)) CHECK(contains(once, d));
  }
}

}  // TEST_SUITE
