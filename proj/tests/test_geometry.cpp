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

#include "helpers.hpp"
#include "uavtrack/geometry.hpp"
#include "uavtrack/types.hpp"

using namespace uavtrack;

TEST_SUITE("geometry") {

TEST_CASE("area") {
  CHECK(area({0, 0, 10, 10}) == 100.0);
  CHECK(area({3, 7, 0, 5}) == 0.0);
  CHECK(area({1.5, 2.5, 4, 2.5}) == 10.0);
}

TEST_CASE("iou basics") {
  const BBox unit{0, 0, 10, 10};
  CHECK(iou(unit, unit) == 1.0);
  CHECK(iou(unit, {100, 100, 5, 5}) == 0.0);
  // Half-offset overlap: intersection 50, union 150.
  CHECK(iou(unit, {5, 0, 10, 10}) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(test::raster_iou(unit, {5, 0, 10, 10}) ==
        doctest::Approx(iou(unit, {5, 0, 10, 10})).epsilon(1e-9));
  // Degenerate boxes: zero union.
  CHECK(iou({1, 1, 0, 0}, {1, 1, 0, 0}) == 0.0);
  CHECK(iou({0, 0, 0, 5}, {0, 0, 5, 0}) == 0.0);
}

TEST_CASE("iou matches the pixel-count oracle on integer boxes") {
  SplitMix64 rng(0x5eed0001);
  for (int i = 0; i < 2000; ++i) {
    const BBox a = test::random_int_box(rng);
    const BBox b = test::random_int_box(rng);
    CHECK(iou(a, b) == doctest::Approx(test::raster_iou(a, b)).epsilon(1e-9));
  }
}

TEST_CASE("iou properties") {
  SplitMix64 rng(0x5eed0002);
  for (int i = 0; i < 2000; ++i) {
    const BBox a = test::random_box(rng);
    const BBox b = test::random_box(rng);
    const double v = iou(a, b);
    CHECK(v == iou(b, a));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    if (area(a) > 0.0) CHECK(iou(a, a) == 1.0);

    const double ox = rng.uniform(-500.0, 500.0);
    const double oy = rng.uniform(-500.0, 500.0);
    const BBox as{a.x + ox, a.y + oy, a.w, a.h};
    const BBox bs{b.x + ox, b.y + oy, b.w, b.h};
    CHECK(iou(as, bs) == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("cosine distance") {
  CHECK(cosine_distance({3, 4}, {6, 8}) == 0.0);
  CHECK(cosine_distance({1, 0}, {0, 1}) == 1.0);
  CHECK(cosine_distance({0, 0}, {0, 0}) == 0.0);  // two stationary stay matchable
  CHECK(cosine_distance({0, 0}, {1, 1}) == 2.0);  // one stationary is unmatchable
  CHECK(cosine_distance({1, 1}, {0, 0}) == 2.0);
  CHECK(cosine_distance({2, 3}, {-2, -3}) == 2.0);
}

TEST_CASE("cosine distance properties") {
  SplitMix64 rng(0x5eed0003);
  for (int i = 0; i < 2000; ++i) {
    const Vec2 u{rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0)};
    const Vec2 v{rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0)};
    const double d = cosine_distance(u, v);
    CHECK(d >= 0.0);
    CHECK(d <= 2.0);
    CHECK(d == cosine_distance(v, u));

    const double k = rng.uniform(0.1, 10.0);
    if (std::sqrt(u.dx * u.dx + u.dy * u.dy) > 1e-3) {
      CHECK(cosine_distance(u, {k * u.dx, k * u.dy}) == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(cosine_distance(u, {-u.dx, -u.dy}) == doctest::Approx(2.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("displacement uses the first and last top-left corners") {
  Track t;
  t.points = {{0, {10, 20, 5, 5}, 1.0}};
  CHECK(displacement(t) == Vec2{0, 0});

  t.points.push_back({7, {40, 60, 5, 5}, 1.0});
  CHECK(displacement(t) == Vec2{30, 40});

  GroundTruthInstance g;
  g.points = {{0, {7, 7, 3, 3}}, {9, {7, 7, 9, 9}}};
  CHECK(displacement(g) == Vec2{0, 0});  // size change alone moves nothing
}

TEST_CASE("displacement ignores interior points") {
  SplitMix64 rng(0x5eed0004);
  for (int i = 0; i < 200; ++i) {
    Track t;
    const int n = static_cast<int>(rng.uniform_int(2, 12));
    for (int k = 0; k < n; ++k) t.points.push_back({k, test::random_box(rng), 0.9});
    const Vec2 full = displacement(t);
    Track trimmed;
    trimmed.points = {t.points.front(), t.points.back()};
    CHECK(displacement(trimmed) == full);
  }
}

}  // TEST_SUITE
