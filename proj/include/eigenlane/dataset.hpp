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

#ifndef EIGENLANE__DATASET_HPP_
#define EIGENLANE__DATASET_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "eigenlane/lane.hpp"

namespace eigenlane
{

struct DatasetRecord
{
  std::string image_id;
  int image_width = 1280;
  int image_height = 720;
  std::vector<Polyline> lanes;
  std::string category;  ///< free-form tag, empty when absent
};

/// Warnings gathered while loading; loading never fails on them.
struct LoadStats
{
  std::size_t skipped_lanes = 0;
  std::size_t clipped_points = 0;
  std::vector<std::string> warnings;
};

/// Drops out-of-image points and lanes left with fewer than two points.
void sanitize_record(DatasetRecord & record, LoadStats & stats);

/// TuSimple JSON lines: `lanes` (x per h_sample, -2 = missing), `h_samples`,
/// `raw_file`. Optional `image_size` [w, h] and `category` keys are honored;
/// otherwise the given default size applies.
std::vector<DatasetRecord> parse_tusimple_jsonl(
  std::istream & in, LoadStats & stats, int default_width = 1280, int default_height = 720);
std::vector<DatasetRecord> load_tusimple_jsonl(
  const std::filesystem::path & path, LoadStats & stats, int default_width = 1280, int default_height = 720);

/// Writes records on the union of their lanes' heights, -2 where a lane has no
/// point at that height. Lanes must be sorted by ascending y to round-trip.
void write_tusimple_jsonl(std::ostream & out, const std::vector<DatasetRecord> & records);
void save_tusimple_jsonl(const std::filesystem::path & path, const std::vector<DatasetRecord> & records);

/// Rows of `image_id,lane_id,x,y` (header optional), points in file order.
std::vector<DatasetRecord> parse_lane_csv(std::istream & in, LoadStats & stats, int width, int height);
std::vector<DatasetRecord> load_lane_csv(
  const std::filesystem::path & path, LoadStats & stats, int width = 1280, int height = 720);

/// CULane layout: every `*.lines.txt` below `dir` is one image, one lane per
/// line as `x1 y1 x2 y2 ...`.
std::vector<DatasetRecord> load_culane_dir(
  const std::filesystem::path & dir, LoadStats & stats, int width = 1640, int height = 590);

/// Resamples every polyline of a record onto the grid; invalid annotations
/// are skipped and counted.
std::vector<Lane> record_lanes(const DatasetRecord & record, const GridPtr & grid, LoadStats & stats);

/// All lanes of all records, in record order.
std::vector<Lane> dataset_lanes(const std::vector<DatasetRecord> & records, const GridPtr & grid, LoadStats & stats);

}  // namespace eigenlane

#endif  // EIGENLANE__DATASET_HPP_
