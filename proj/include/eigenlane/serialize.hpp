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

#ifndef EIGENLANE__SERIALIZE_HPP_
#define EIGENLANE__SERIALIZE_HPP_

#include <Eigen/Dense>

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "eigenlane/candidates.hpp"
#include "eigenlane/eigenspace.hpp"
#include "eigenlane/metrics.hpp"
#include "eigenlane/pipeline.hpp"

// JSON containers: every document carries `schema` and `version`, explicit
// dimensions, and row-major float arrays written as shortest round-trip
// decimals.
namespace eigenlane::io
{

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json read_json(const std::filesystem::path & path);
void write_json(const std::filesystem::path & path, const json & doc);

/// Throws SchemaError when `schema` differs, VersionError when `version` does.
void check_header(const json & doc, const std::string & schema);

json grid_to_json(const SamplingGrid & grid);
GridPtr grid_from_json(const json & j);

json matrix_to_json(const Eigen::MatrixXd & m);
Eigen::MatrixXd matrix_from_json(const json & j);

json basis_to_json(const EigenBasis & basis);
EigenBasis basis_from_json(const json & doc);

json candidates_to_json(const CandidateSet & candidates);
/// Lanes share `grid` when it equals the stored grid.
CandidateSet candidates_from_json(const json & doc, const GridPtr & grid = nullptr);

struct ImageScores
{
  std::string image_id;
  CandidateScores scores;
  Eigen::MatrixXd features;  ///< K x C relation features
};

json scores_to_json(std::span<const ImageScores> images);
std::vector<ImageScores> scores_from_json(const json & doc);

json relation_to_json(const RelationMatrix & relation);
RelationMatrix relation_from_json(const json & doc);

json feature_grid_to_json(const FeatureGrid & grid);
FeatureGrid feature_grid_from_json(const json & doc);

struct ImageDetections
{
  std::string image_id;
  Detection detection;
};

json detections_to_json(const SamplingGrid & grid, std::span<const ImageDetections> images);
/// Restores picks, clique and lanes; relation matrices are kept when present.
std::vector<ImageDetections> detections_from_json(const json & doc, const GridPtr & grid = nullptr);

json report_to_json(const MatchReport & report, bool include_images = true);
json report_to_json(const PointAccuracyReport & report, bool include_images = true);

}  // namespace eigenlane::io

#endif  // EIGENLANE__SERIALIZE_HPP_
