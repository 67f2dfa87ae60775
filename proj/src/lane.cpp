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

#include "eigenlane/lane.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eigenlane/error.hpp"

namespace eigenlane
{

namespace
{
constexpr double kYEps = 1e-9;
}

std::shared_ptr<const SamplingGrid> SamplingGrid::uniform(
  int image_width, int image_height, std::size_t n_samples, double y_top, double y_bottom)
{
  auto grid = std::make_shared<SamplingGrid>();
  grid->image_width = image_width;
  grid->image_height = image_height;
  grid->y_coords.resize(n_samples);
  if (n_samples == 1) {
    grid->y_coords[0] = y_bottom;
  } else {
    const double step = (y_bottom - y_top) / static_cast<double>(n_samples - 1);
    for (std::size_t i = 0; i < n_samples; ++i) {
      grid->y_coords[i] = y_bottom - step * static_cast<double>(i);
    }
    grid->y_coords.back() = y_top;
  }
  grid->validate();
  return grid;
}

std::shared_ptr<const SamplingGrid> SamplingGrid::for_image(
  int image_width, int image_height, std::size_t n_samples, double top_fraction)
{
  return uniform(
    image_width, image_height, n_samples, std::round(top_fraction * image_height),
    static_cast<double>(image_height - 1));
}

void SamplingGrid::validate() const
{
  if (image_width <= 0 || image_height <= 0) {
    throw Error(ErrorCode::InvalidAnnotation, "grid image size must be positive");
  }
  if (y_coords.empty()) {
    throw Error(ErrorCode::InvalidAnnotation, "grid needs at least one sample");
  }
  for (std::size_t i = 0; i < y_coords.size(); ++i) {
    const double y = y_coords[i];
    if (!std::isfinite(y) || y < 0.0 || y >= image_height) {
      throw Error(ErrorCode::InvalidAnnotation, "grid height outside the image");
    }
    if (i > 0 && !(y < y_coords[i - 1])) {
      throw Error(ErrorCode::InvalidAnnotation, "grid heights must strictly decrease");
    }
  }
}

bool same_grid(const GridPtr & a, const GridPtr & b) noexcept
{
  if (a == b) {
    return true;
  }
  if (!a || !b) {
    return false;
  }
  return *a == *b;
}

void require_same_grid(const GridPtr & a, const GridPtr & b)
{
  if (!same_grid(a, b)) {
    throw Error(ErrorCode::GridMismatch, "lanes are sampled on different grids");
  }
}

Lane::Lane(GridPtr grid, std::vector<double> xs, std::size_t top_index)
: grid_(std::move(grid)), xs_(std::move(xs)), top_index_(top_index)
{
  if (!grid_) {
    throw Error(ErrorCode::GridMismatch, "lane without a grid");
  }
  if (xs_.size() != grid_->n_samples()) {
    throw Error(
      ErrorCode::DimensionMismatch, "lane has " + std::to_string(xs_.size()) +
                                      " samples, grid has " +
                                      std::to_string(grid_->n_samples()));
  }
  if (top_index_ > xs_.size()) {
    throw Error(ErrorCode::InvalidAnnotation, "top_index beyond the grid");
  }
  for (double x : xs_) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::InvalidAnnotation, "non-finite lane coordinate");
    }
  }
}

Lane::Lane(GridPtr grid, std::vector<double> xs)
: Lane(grid, std::move(xs), grid ? grid->n_samples() : 0)
{
}

double Lane::x_at(double y) const
{
  const auto & ys = grid_->y_coords;
  const std::size_t n = ys.size();
  if (n == 1) {
    return xs_[0];
  }
  // ys decreasing: find the first index whose height is <= y.
  std::size_t hi = 1;
  if (y <= ys[n - 1]) {
    hi = n - 1;
  } else if (y < ys[0]) {
    auto it = std::lower_bound(
      ys.begin(), ys.end(), y, [](double a, double b) { return a > b; });
    hi = static_cast<std::size_t>(it - ys.begin());
    hi = std::clamp<std::size_t>(hi, 1, n - 1);
  }
  const std::size_t lo = hi - 1;
  const double t = (ys[lo] - y) / (ys[lo] - ys[hi]);
  return xs_[lo] + t * (xs_[hi] - xs_[lo]);
}

Lane Lane::with_top_index(std::size_t top_index) const
{
  return Lane(grid_, xs_, top_index);
}

namespace
{

double interpolate_sorted(std::span<const Point2> pts, double y)
{
  // pts sorted by ascending y with distinct heights.
  auto it = std::upper_bound(
    pts.begin(), pts.end(), y, [](double v, const Point2 & p) { return v < p.y; });
  std::size_t hi = static_cast<std::size_t>(it - pts.begin());
  hi = std::clamp<std::size_t>(hi, 1, pts.size() - 1);
  const Point2 & a = pts[hi - 1];
  const Point2 & b = pts[hi];
  const double t = (y - a.y) / (b.y - a.y);
  return a.x + t * (b.x - a.x);
}

}  // namespace

Lane resample_polyline(std::span<const Point2> points, const GridPtr & grid)
{
  if (!grid) {
    throw Error(ErrorCode::GridMismatch, "resample without a grid");
  }
  if (points.size() < 2) {
    throw Error(ErrorCode::InvalidAnnotation, "polyline needs at least 2 points");
  }
  std::vector<Point2> sorted(points.begin(), points.end());
  for (const auto & p : sorted) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::InvalidAnnotation, "non-finite polyline point");
    }
  }
  std::stable_sort(
    sorted.begin(), sorted.end(), [](const Point2 & a, const Point2 & b) { return a.y < b.y; });
  sorted.erase(
    std::unique(
      sorted.begin(), sorted.end(), [](const Point2 & a, const Point2 & b) { return a.y == b.y; }),
    sorted.end());
  if (sorted.size() < 2) {
    throw Error(ErrorCode::InvalidAnnotation, "polyline has a degenerate y-span");
  }
  const double y_min = sorted.front().y;
  const double y_max = sorted.back().y;

  const auto & ys = grid->y_coords;
  const std::size_t n = ys.size();
  std::vector<double> xs(n, 0.0);
  std::vector<std::size_t> annotated;
  for (std::size_t i = 0; i < n; ++i) {
    if (ys[i] >= y_min - kYEps && ys[i] <= y_max + kYEps) {
      xs[i] = interpolate_sorted(sorted, std::clamp(ys[i], y_min, y_max));
      annotated.push_back(i);
    }
  }

  // Extrapolation from the two nearest annotated grid samples, or from the
  // polyline's end segment when fewer than two grid samples fall in the span.
  for (std::size_t i = 0; i < n; ++i) {
    if (ys[i] >= y_min - kYEps && ys[i] <= y_max + kYEps) {
      continue;
    }
    const bool below = ys[i] > y_max;  // nearer the camera than the polyline
    if (annotated.size() >= 2) {
      const std::size_t a = below ? annotated[0] : annotated[annotated.size() - 1];
      const std::size_t b = below ? annotated[1] : annotated[annotated.size() - 2];
      const double t = (ys[i] - ys[a]) / (ys[b] - ys[a]);
      xs[i] = xs[a] + t * (xs[b] - xs[a]);
    } else {
      const Point2 & a = below ? sorted[sorted.size() - 1] : sorted[0];
      const Point2 & b = below ? sorted[sorted.size() - 2] : sorted[1];
      const double t = (ys[i] - a.y) / (b.y - a.y);
      xs[i] = a.x + t * (b.x - a.x);
    }
  }

  std::size_t top_index = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (ys[i] < y_min - kYEps) {
      top_index = i;
      break;
    }
  }
  return Lane(grid, std::move(xs), top_index);
}

StripeMask rasterize_stripe(const Lane & lane, int width)
{
  StripeMask mask;
  mask.width = width;
  if (width < 1) {
    throw Error(ErrorCode::InvalidAnnotation, "stripe width must be at least 1");
  }
  const std::size_t top = lane.top_index();
  if (top == 0) {
    return mask;
  }
  const SamplingGrid & grid = lane.grid();
  const auto & ys = grid.y_coords;
  const auto xs = lane.xs();

  const int row_first = std::max(0, static_cast<int>(std::ceil(ys[top - 1] - kYEps)));
  const int row_last =
    std::min(grid.image_height - 1, static_cast<int>(std::floor(ys[0] + kYEps)));
  if (row_last < row_first) {
    return mask;
  }
  mask.row_begin = row_first;
  mask.spans.resize(static_cast<std::size_t>(row_last - row_first + 1));
  mask.col_min = grid.image_width;
  mask.col_max = 0;

  const double half = 0.5 * width;
  std::size_t seg = 0;
  for (int r = row_last; r >= row_first; --r) {
    const double y = r;
    while (seg + 1 < top && ys[seg + 1] > y) {
      ++seg;
    }
    double x = xs[seg];
    if (seg + 1 < top) {
      const double t = (ys[seg] - y) / (ys[seg] - ys[seg + 1]);
      x = xs[seg] + t * (xs[seg + 1] - xs[seg]);
    }
    const double start = std::ceil(x - half - 0.5);
    const double lo = std::clamp(start, 0.0, static_cast<double>(grid.image_width));
    const double hi = std::clamp(start + width, 0.0, static_cast<double>(grid.image_width));
    RowSpan & span = mask.spans[static_cast<std::size_t>(r - row_first)];
    span.lo = static_cast<int>(lo);
    span.hi = static_cast<int>(hi);
    if (span.size() > 0) {
      mask.area += span.size();
      mask.col_min = std::min(mask.col_min, span.lo);
      mask.col_max = std::max(mask.col_max, span.hi);
    }
  }
  if (mask.area == 0) {
    mask.col_min = mask.col_max = 0;
  }
  return mask;
}

std::vector<StripeMask> rasterize_all(std::span<const Lane> lanes, int width)
{
  std::vector<StripeMask> masks(lanes.size());
  const auto n = static_cast<std::int64_t>(lanes.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    masks[static_cast<std::size_t>(i)] = rasterize_stripe(lanes[static_cast<std::size_t>(i)], width);
  }
  return masks;
}

double stripe_iou(const StripeMask & a, const StripeMask & b) noexcept
{
  const std::int64_t total = a.area + b.area;
  if (total == 0) {
    return 0.0;
  }
  const int r0 = std::max(a.row_begin, b.row_begin);
  const int r1 = std::min(a.row_end(), b.row_end());
  std::int64_t inter = 0;
  if (r0 < r1 && a.col_min < b.col_max && b.col_min < a.col_max) {
    const RowSpan * sa = a.spans.data() + (r0 - a.row_begin);
    const RowSpan * sb = b.spans.data() + (r0 - b.row_begin);
    for (int k = 0; k < r1 - r0; ++k) {
      const int lo = std::max(sa[k].lo, sb[k].lo);
      const int hi = std::min(sa[k].hi, sb[k].hi);
      inter += hi > lo ? hi - lo : 0;
    }
  }
  return static_cast<double>(inter) / static_cast<double>(total - inter);
}

double stripe_iou(const Lane & a, const Lane & b, int width)
{
  require_same_grid(a.grid_ptr(), b.grid_ptr());
  return stripe_iou(rasterize_stripe(a, width), rasterize_stripe(b, width));
}

double stripe_iou_pixel_count(const Lane & a, const Lane & b, int width)
{
  require_same_grid(a.grid_ptr(), b.grid_ptr());
  const SamplingGrid & grid = a.grid();
  const auto w = static_cast<std::size_t>(grid.image_width);
  const auto h = static_cast<std::size_t>(grid.image_height);
  std::vector<std::uint8_t> bitmap(w * h, 0);
  auto paint = [&](const StripeMask & mask, std::uint8_t bit) {
    for (std::size_t k = 0; k < mask.spans.size(); ++k) {
      const std::size_t row = static_cast<std::size_t>(mask.row_begin) + k;
      for (int c = mask.spans[k].lo; c < mask.spans[k].hi; ++c) {
        bitmap[row * w + static_cast<std::size_t>(c)] |= bit;
      }
    }
  };
  paint(rasterize_stripe(a, width), 1);
  paint(rasterize_stripe(b, width), 2);
  std::int64_t inter = 0;
  std::int64_t uni = 0;
  for (auto v : bitmap) {
    inter += v == 3;
    uni += v != 0;
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace eigenlane
