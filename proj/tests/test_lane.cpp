// Copyright (c) 2026 The Eigenlane Authors. All rights reserved.
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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "eigenlane/error.hpp"
#include "eigenlane/lane.hpp"
#include "eigenlane/rng.hpp"
#include "oracles.hpp"

using namespace eigenlane;

namespace
{

GridPtr small_grid() { return SamplingGrid::uniform(200, 120, 11, 20.0, 119.0); }

Lane random_lane(const GridPtr & g, Rng & rng, bool truncate)
{
  const double x0 = rng.uniform(-20.0, 220.0);
  const double slope = rng.uniform(-1.5, 1.5);
  const double bend = rng.uniform(-0.004, 0.004);
  std::vector<double> xs;
  for (double y : g->y_coords) {
    const double s = g->y_bottom() - y;
    xs.push_back(x0 + slope * s + bend * s * s);
  }
  const std::size_t top = truncate ? rng.index(g->n_samples() + 1) : g->n_samples();
  return Lane(g, xs, top);
}

}  // namespace

TEST_CASE("grid layout and validation")
{
  auto g = SamplingGrid::for_image(1280, 720, 50);
  CHECK(g->n_samples() == 50);
  CHECK(g->y_bottom() == 719.0);
  CHECK(g->y_top() == 252.0);
  for (std::size_t i = 1; i < g->n_samples(); ++i) {
    CHECK(g->y_coords[i] < g->y_coords[i - 1]);
  }
  CHECK_THROWS_AS(SamplingGrid::uniform(0, 720, 5, 10, 700), Error);
  CHECK_THROWS_AS(SamplingGrid::uniform(100, 100, 5, 10, 100), Error);
  CHECK(same_grid(g, SamplingGrid::for_image(1280, 720, 50)));
  CHECK_FALSE(same_grid(g, SamplingGrid::for_image(1280, 720, 49)));
  CHECK_THROWS_AS(require_same_grid(g, SamplingGrid::for_image(1280, 720, 49)), Error);
}

TEST_CASE("lane construction rejects bad input")
{
  auto g = small_grid();
  CHECK_THROWS_AS(Lane(g, std::vector<double>(10, 0.0)), Error);
  CHECK_THROWS_AS(Lane(g, std::vector<double>(11, 0.0), 12), Error);
  std::vector<double> xs(11, 1.0);
  xs[3] = std::nan("");
  CHECK_THROWS_AS(Lane(g, xs), Error);
  CHECK_THROWS_AS(Lane(nullptr, std::vector<double>(11, 0.0)), Error);
}

TEST_CASE("resampling a straight polyline is exact")
{
  auto g = small_grid();
  const Polyline pts = {{50.0, 119.0}, {110.0, 20.0}};
  const Lane lane = resample_polyline(pts, g);
  CHECK(lane.top_index() == g->n_samples());
  for (std::size_t i = 0; i < g->n_samples(); ++i) {
    const double y = g->y_coords[i];
    CHECK(lane.xs()[i] == doctest::Approx(50.0 + 60.0 * (119.0 - y) / 99.0).epsilon(1e-12));
  }
}

TEST_CASE("resampling matches the interpolation oracle inside the span")
{
  auto g = SamplingGrid::for_image(1280, 720, 50);
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Polyline pts;
    std::vector<std::pair<double, double>> yx;
    const int count = 2 + static_cast<int>(rng.index(12));
    double y = rng.uniform(300.0, 719.0);
    for (int k = 0; k < count; ++k) {
      const double x = rng.uniform(0.0, 1279.0);
      pts.push_back({x, y});
      yx.emplace_back(y, x);
      y -= rng.uniform(5.0, 60.0);
      if (y < 0.0) {
        break;
      }
    }
    if (pts.size() < 2) {
      continue;
    }
    std::sort(yx.begin(), yx.end());
    const Lane lane = resample_polyline(pts, g);
    for (std::size_t i = 0; i < g->n_samples(); ++i) {
      const double gy = g->y_coords[i];
      if (gy >= yx.front().first && gy <= yx.back().first) {
        CHECK(lane.xs()[i] == doctest::Approx(oracle::interp(yx, gy)).epsilon(1e-9));
        CHECK(i < lane.top_index());
      } else if (gy < yx.front().first) {
        CHECK(i >= lane.top_index());
      }
    }
  }
}

TEST_CASE("resampling extrapolates linearly and marks the top")
{
  auto g = SamplingGrid::uniform(100, 100, 5, 10.0, 90.0);
  const Polyline pts = {{40.0, 50.0}, {60.0, 70.0}, {45.0, 60.0}};
  const Lane lane = resample_polyline(pts, g);
  // grid ys: 90 70 50 30 10; annotated span 50..70
  CHECK(lane.top_index() == 3);
  CHECK(lane.xs()[1] == doctest::Approx(60.0));
  CHECK(lane.xs()[2] == doctest::Approx(40.0));
  CHECK(lane.xs()[0] == doctest::Approx(80.0));
  CHECK(lane.xs()[3] == doctest::Approx(20.0));
}

TEST_CASE("resampling rejects degenerate polylines")
{
  auto g = small_grid();
  CHECK_THROWS_AS(resample_polyline(Polyline{{1.0, 2.0}}, g), Error);
  CHECK_THROWS_AS(resample_polyline(Polyline{{1.0, 50.0}, {8.0, 50.0}}, g), Error);
  CHECK_THROWS_AS(resample_polyline(Polyline{{1.0, 50.0}, {std::nan(""), 60.0}}, g), Error);
}

TEST_CASE("x_at interpolates between samples and extends past the ends")
{
  auto g = SamplingGrid::uniform(100, 100, 3, 10.0, 90.0);
  const Lane lane(g, {0.0, 10.0, 30.0});
  CHECK(lane.x_at(90.0) == doctest::Approx(0.0));
  CHECK(lane.x_at(70.0) == doctest::Approx(5.0));
  CHECK(lane.x_at(30.0) == doctest::Approx(20.0));
  CHECK(lane.x_at(99.0) == doctest::Approx(-2.25));
  CHECK(lane.x_at(0.0) == doctest::Approx(35.0));
}

TEST_CASE("stripe rasterization matches the horizontal-distance oracle")
{
  auto g = small_grid();
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int w = 1 + static_cast<int>(rng.index(40));
    const Lane lane = random_lane(g, rng, true);
    const StripeMask mask = rasterize_stripe(lane, w);
    const auto expect =
      oracle::stripe_pixels(g->y_coords, lane.xs_vector(), lane.top_index(), g->image_width, g->image_height, w);
    oracle::PixelSet got;
    for (std::size_t k = 0; k < mask.spans.size(); ++k) {
      for (int c = mask.spans[k].lo; c < mask.spans[k].hi; ++c) {
        got.emplace(mask.row_begin + static_cast<int>(k), c);
      }
    }
    REQUIRE(got == expect);
    CHECK(mask.area == static_cast<std::int64_t>(expect.size()));
  }
}

TEST_CASE("stripe IoU closed form equals pixel counting and the set oracle")
{
  auto g = small_grid();
  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const Lane a = random_lane(g, rng, true);
    Lane b = random_lane(g, rng, true);
    if (trial % 3 == 0) {
      std::vector<double> xs = a.xs_vector();
      const double shift = rng.uniform(-30.0, 30.0);
      for (double & x : xs) {
        x += shift;
      }
      b = Lane(g, xs, rng.index(g->n_samples() + 1));
    }
    const int w = 30;
    const double closed = stripe_iou(a, b, w);
    CHECK(closed == doctest::Approx(stripe_iou_pixel_count(a, b, w)).epsilon(1e-15));
    const auto pa = oracle::stripe_pixels(g->y_coords, a.xs_vector(), a.top_index(), 200, 120, w);
    const auto pb = oracle::stripe_pixels(g->y_coords, b.xs_vector(), b.top_index(), 200, 120, w);
    CHECK(closed == doctest::Approx(oracle::set_iou(pa, pb)).epsilon(1e-15));
    CHECK(closed >= 0.0);
    CHECK(closed <= 1.0);
    CHECK(closed == doctest::Approx(stripe_iou(b, a, w)).epsilon(1e-15));
  }
}

TEST_CASE("stripe IoU edge cases")
{
  auto g = SamplingGrid::for_image(1280, 720, 50);
  const Lane a(g, std::vector<double>(50, 600.0));
  CHECK(stripe_iou(a, a) == 1.0);
  const Lane far(g, std::vector<double>(50, 1200.0));
  CHECK(stripe_iou(a, far) == 0.0);
  const Lane shifted(g, std::vector<double>(50, 610.0));
  CHECK(stripe_iou(a, shifted) == doctest::Approx(20.0 / 40.0));
  const Lane empty(g, std::vector<double>(50, 600.0), 0);
  CHECK(stripe_iou(empty, empty) == 0.0);
  const Lane outside(g, std::vector<double>(50, -500.0));
  CHECK(rasterize_stripe(outside).empty());
  CHECK_THROWS_AS(rasterize_stripe(a, 0), Error);
  CHECK_THROWS_AS(stripe_iou(a, Lane(SamplingGrid::for_image(1280, 720, 49), std::vector<double>(49, 1.0))), Error);
}

TEST_CASE("rasterize_all equals per-lane rasterization")
{
  auto g = small_grid();
  Rng rng(5);
  std::vector<Lane> lanes;
  for (int i = 0; i < 50; ++i) {
    lanes.push_back(random_lane(g, rng, true));
  }
  const auto masks = rasterize_all(lanes, 17);
  REQUIRE(masks.size() == lanes.size());
  for (std::size_t i = 0; i < lanes.size(); ++i) {
    const auto one = rasterize_stripe(lanes[i], 17);
    CHECK(masks[i].area == one.area);
    CHECK(masks[i].row_begin == one.row_begin);
    CHECK(stripe_iou(masks[i], one) == doctest::Approx(one.empty() ? 0.0 : 1.0));
  }
}
