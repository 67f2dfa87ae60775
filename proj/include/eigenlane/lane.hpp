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

#ifndef EIGENLANE__LANE_HPP_
#define EIGENLANE__LANE_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace eigenlane
{

/// Shared vertical sampling grid. y_coords run bottom of the image first, so
/// index 0 is the sample nearest the camera.
struct SamplingGrid
{
  int image_width = 0;
  int image_height = 0;
  std::vector<double> y_coords;

  std::size_t n_samples() const noexcept { return y_coords.size(); }
  double y_bottom() const { return y_coords.front(); }
  double y_top() const { return y_coords.back(); }

  /// n samples spaced uniformly from y_bottom down to y_top (inclusive).
  static std::shared_ptr<const SamplingGrid> uniform(
    int image_width, int image_height, std::size_t n_samples, double y_top, double y_bottom);

  /// Default layout: bottom row up to `top_fraction` of the image height.
  static std::shared_ptr<const SamplingGrid> for_image(
    int image_width, int image_height, std::size_t n_samples, double top_fraction = 0.35);

  /// Throws InvalidAnnotation when the grid violates its invariants.
  void validate() const;

  bool operator==(const SamplingGrid & other) const = default;
};

using GridPtr = std::shared_ptr<const SamplingGrid>;

/// Field-by-field comparison, short-circuiting on pointer identity.
bool same_grid(const GridPtr & a, const GridPtr & b) noexcept;

/// Throws GridMismatch unless the two grids are equal.
void require_same_grid(const GridPtr & a, const GridPtr & b);

struct Point2
{
  double x = 0.0;
  double y = 0.0;
};

using Polyline = std::vector<Point2>;

/// A lane sampled at every grid height. Samples at indices >= top_index were
/// extrapolated rather than annotated; top_index == N means the lane covers
/// the whole grid.
class Lane
{
public:
  Lane() = default;
  Lane(GridPtr grid, std::vector<double> xs, std::size_t top_index);
  /// Fully annotated lane.
  Lane(GridPtr grid, std::vector<double> xs);

  const SamplingGrid & grid() const { return *grid_; }
  const GridPtr & grid_ptr() const noexcept { return grid_; }
  std::span<const double> xs() const noexcept { return xs_; }
  const std::vector<double> & xs_vector() const noexcept { return xs_; }
  std::size_t top_index() const noexcept { return top_index_; }
  std::size_t size() const noexcept { return xs_.size(); }
  bool empty_extent() const noexcept { return top_index_ == 0; }

  /// x at an arbitrary height, linearly interpolated between grid samples and
  /// extended linearly past the ends.
  double x_at(double y) const;

  Lane with_top_index(std::size_t top_index) const;

private:
  GridPtr grid_;
  std::vector<double> xs_;
  std::size_t top_index_ = 0;
};

/// Samples a polyline on the grid. Heights outside the polyline's y-span are
/// filled by linear extrapolation; top_index marks the first grid sample above
/// the polyline's topmost point.
Lane resample_polyline(std::span<const Point2> points, const GridPtr & grid);

struct RowSpan
{
  int lo = 0;  ///< first column
  int hi = 0;  ///< one past the last column
  int size() const noexcept { return hi > lo ? hi - lo : 0; }
};

/// Row-wise rasterization of a lane widened to `width` pixels.
struct StripeMask
{
  int width = 0;
  int row_begin = 0;           ///< topmost covered image row
  std::vector<RowSpan> spans;  ///< one entry per row from row_begin downward
  std::int64_t area = 0;
  int col_min = 0;
  int col_max = 0;  ///< one past the rightmost column

  int row_end() const noexcept { return row_begin + static_cast<int>(spans.size()); }
  bool empty() const noexcept { return area == 0; }
};

/// For every image row inside the lane's valid extent, the `width`-pixel window
/// whose pixel centers lie in [x - width/2, x + width/2), clipped to the image.
StripeMask rasterize_stripe(const Lane & lane, int width = 30);

/// IoU of two masks from per-row interval overlap.
double stripe_iou(const StripeMask & a, const StripeMask & b) noexcept;

/// Stripe IoU of two lanes; 0 when the union is empty.
double stripe_iou(const Lane & a, const Lane & b, int width = 30);

/// Masks for many lanes (parallel over lanes).
std::vector<StripeMask> rasterize_all(std::span<const Lane> lanes, int width = 30);

/// Audit path: IoU by counting pixels on explicit bitmaps.
double stripe_iou_pixel_count(const Lane & a, const Lane & b, int width = 30);

}  // namespace eigenlane

#endif  // EIGENLANE__LANE_HPP_
