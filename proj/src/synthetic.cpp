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

#include "eigenlane/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "eigenlane/error.hpp"
#include "eigenlane/rng.hpp"

namespace eigenlane
{

void SyntheticSpec::validate() const
{
  const double weights[3] = {weight_straight, weight_arc, weight_scurve};
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::InvalidAnnotation, "family weights must be finite and nonnegative");
    }
    sum += w;
  }
  if (!(sum > 0.0)) {
    throw Error(ErrorCode::InvalidAnnotation, "family weights must not all be zero");
  }
  if (!std::isfinite(curvature_min) || !std::isfinite(curvature_max) || curvature_min <= 0.0 ||
      curvature_max < curvature_min) {
    throw Error(ErrorCode::InvalidAnnotation, "curvature range must be finite, positive and ordered");
  }
  if (image_width <= 0 || image_height <= 0 || !(row_step > 0.0) || max_lanes < 1) {
    throw Error(ErrorCode::InvalidAnnotation, "image size, row step and lane count must be positive");
  }
  if (!(top_fraction >= 0.0 && top_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidAnnotation, "top_fraction must lie in [0, 1)");
  }
  const double span = (image_height - 1) - std::round(top_fraction * image_height);
  if (weight_arc > 0.0 && 1.0 / curvature_max <= 1.1 * span) {
    throw Error(ErrorCode::InvalidAnnotation, "arc curvature too tight for the annotated vertical span");
  }
}

std::vector<double> synthetic_rows(const SyntheticSpec & spec)
{
  const double top = std::round(spec.top_fraction * spec.image_height);
  const double bottom = spec.image_height - 1;
  std::vector<double> rows;
  for (double y = top; y < bottom; y += spec.row_step) {
    rows.push_back(y);
  }
  rows.push_back(bottom);
  return rows;
}

namespace
{

// Traces x(y) from the bottom row upward, stopping when the lane leaves the
// image or passes `top_limit`; returns points in ascending y.
Polyline trace(const std::function<double(double)> & x_of_y, const std::vector<double> & rows, int width, double top_limit)
{
  Polyline pts;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    const double y = *it;
    if (y < top_limit) {
      break;
    }
    const double x = x_of_y(y);
    if (!std::isfinite(x) || x < 0.0 || x >= width) {
      break;
    }
    pts.push_back({x, y});
  }
  std::reverse(pts.begin(), pts.end());
  return pts;
}

}  // namespace

Polyline arc_polyline(const ArcParams & arc, const std::vector<double> & rows, int image_width)
{
  auto x_of_y = [arc](double y) {
    const double dy = y - arc.center_y;
    return arc.center_x - arc.side * std::sqrt(arc.radius * arc.radius - dy * dy);
  };
  return trace(x_of_y, rows, image_width, -1.0);
}

namespace
{

DatasetRecord make_record(const SyntheticSpec & spec, const std::vector<double> & rows, Rng & rng, std::size_t index)
{
  const double total = spec.weight_straight + spec.weight_arc + spec.weight_scurve;
  const double pick = rng.uniform() * total;
  const char * family = pick < spec.weight_straight
                          ? kFamilyStraight
                          : (pick < spec.weight_straight + spec.weight_arc ? kFamilyArc : kFamilyScurve);

  const int w = spec.image_width;
  const double y_bottom = rows.back();
  const double y_top = rows.front();
  const double span = y_bottom - y_top;
  const std::size_t n_lanes = 1 + rng.index(spec.max_lanes);

  DatasetRecord rec;
  rec.image_id = "synth/" + std::to_string(index);
  rec.image_width = w;
  rec.image_height = spec.image_height;
  rec.category = family;

  const std::string fam = family;
  const double curvature = rng.uniform(spec.curvature_min, spec.curvature_max);
  const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
  const double spacing = fam == kFamilyArc ? rng.uniform(230.0, 270.0) : rng.uniform(300.0, 360.0);
  const double x_center = 0.5 * w + rng.uniform(-0.2, 0.2) * spacing;
  const double y_vanish = y_top - rng.uniform(70.0, 90.0);
  const double x_vanish = 0.5 * w + rng.uniform(-60.0, 60.0);
  const double inflection = rng.uniform(0.3, 0.7) * span;
  const double radius = 1.0 / curvature;
  const double center_dy = rng.uniform(-0.2, 0.05) * radius;

  for (std::size_t i = 0; i < n_lanes; ++i) {
    const double offset = (static_cast<double>(i) - 0.5 * static_cast<double>(n_lanes - 1)) * spacing;
    const double top_limit =
      rng.uniform() < spec.truncate_probability ? y_top + rng.uniform(0.0, 0.5) * span : -1.0;

    Polyline pts;
    if (fam == kFamilyArc) {
      ArcParams arc;
      arc.side = sign;
      arc.radius = radius - sign * offset;
      arc.center_y = y_bottom + center_dy;
      arc.center_x = x_center + sign * std::sqrt(radius * radius - center_dy * center_dy);
      const double reach = std::max(std::abs(y_bottom - arc.center_y), std::abs(y_top - arc.center_y));
      if (arc.radius <= reach + 1.0) {
        continue;
      }
      pts = arc_polyline(arc, rows, w);
      if (top_limit > 0.0) {
        pts.erase(
          std::remove_if(pts.begin(), pts.end(), [&](const Point2 & p) { return p.y < top_limit; }), pts.end());
      }
    } else {
      const double x_bottom = x_center + offset;
      const bool s_curve = fam == kFamilyScurve;
      auto x_of_y = [=](double y) {
        const double s = y_bottom - y;
        double x = x_bottom + (x_vanish - x_bottom) * s / (y_bottom - y_vanish);
        if (s_curve) {
          const double k = sign * curvature;
          if (s <= inflection) {
            x += 0.5 * k * s * s;
          } else {
            const double t = s - inflection;
            x += 0.5 * k * inflection * inflection + k * inflection * t - 0.5 * k * t * t;
          }
        }
        return x;
      };
      pts = trace(x_of_y, rows, w, top_limit);
    }
    if (pts.size() >= 2) {
      rec.lanes.push_back(std::move(pts));
    }
  }
  return rec;
}

}  // namespace

std::vector<DatasetRecord> generate_synthetic(const SyntheticSpec & spec)
{
  spec.validate();
  const std::vector<double> rows = synthetic_rows(spec);
  Rng rng(spec.seed);
  std::vector<DatasetRecord> records;
  records.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    DatasetRecord rec;
    do {
      rec = make_record(spec, rows, rng, i);
    } while (rec.lanes.empty());
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace eigenlane
