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

#ifndef EIGENLANE__SYNTHETIC_HPP_
#define EIGENLANE__SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "eigenlane/dataset.hpp"

namespace eigenlane
{

/// Desk-scale lane generator. Every record is one road scene of a single
/// family: converging straight lines, concentric circular arcs, or converging
/// lines bent by an S-curve (two opposite-curvature arcs meeting at an
/// inflection point). The record's category tag names the family.
struct SyntheticSpec
{
  double weight_straight = 1.0;
  double weight_arc = 1.0;
  double weight_scurve = 1.0;
  double curvature_min = 1.0 / 5000.0;  ///< 1/pixels
  double curvature_max = 1.0 / 800.0;   ///< 1/pixels
  std::size_t count = 100;
  std::uint64_t seed = 0;
  int image_width = 1280;
  int image_height = 720;
  double top_fraction = 0.35;        ///< topmost annotated row, fraction of height
  double row_step = 10.0;            ///< vertical spacing of annotated points
  double truncate_probability = 0.3; ///< chance a lane ends below the top row
  std::size_t max_lanes = 5;

  /// Throws InvalidAnnotation on negative or all-zero weights, non-finite or
  /// inverted curvature range, or arcs too tight for the annotated span.
  void validate() const;
};

inline constexpr const char * kFamilyStraight = "straight";
inline constexpr const char * kFamilyArc = "arc";
inline constexpr const char * kFamilyScurve = "scurve";

std::vector<DatasetRecord> generate_synthetic(const SyntheticSpec & spec);

/// Annotated rows of a synthetic scene, ascending: from the top row down in
/// `row_step` increments, plus the bottom image row.
std::vector<double> synthetic_rows(const SyntheticSpec & spec);

/// Circle x(y) = center_x - side * sqrt(radius^2 - (y - center_y)^2).
struct ArcParams
{
  double center_x = 0.0;
  double center_y = 0.0;
  double radius = 1000.0;
  double side = 1.0;  ///< +1 bends right going up the image, -1 left
};

/// Points of an arc at the given rows (ascending y), stopping at the first
/// row that leaves the image.
Polyline arc_polyline(const ArcParams & arc, const std::vector<double> & rows, int image_width);

}  // namespace eigenlane

#endif  // EIGENLANE__SYNTHETIC_HPP_
