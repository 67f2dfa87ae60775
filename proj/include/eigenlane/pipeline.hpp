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

#ifndef EIGENLANE__PIPELINE_HPP_
#define EIGENLANE__PIPELINE_HPP_

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "eigenlane/candidates.hpp"
#include "eigenlane/eigenspace.hpp"
#include "eigenlane/lane.hpp"

namespace eigenlane
{

/// Dense H x W x C feature map, row-major with channels innermost.
struct FeatureGrid
{
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;
  std::vector<double> values;

  FeatureGrid() = default;
  FeatureGrid(std::size_t h, std::size_t w, std::size_t c, double fill = 0.0)
  : height(h), width(w), channels(c), values(h * w * c, fill)
  {
  }

  double & at(std::size_t row, std::size_t col, std::size_t ch) { return values[(row * width + col) * channels + ch]; }
  double at(std::size_t row, std::size_t col, std::size_t ch) const
  {
    return values[(row * width + col) * channels + ch];
  }

  /// Throws EmptyInput / DimensionMismatch / InvalidAnnotation.
  void validate() const;
};

struct PooledFeatures
{
  Eigen::VectorXd values;  ///< one entry per channel
  std::size_t pixel_count = 0;
  bool outside = false;  ///< lane never touched the grid; values are zero
};

/// Feature-grid pixels visited by the lane: valid samples are scaled from
/// image pixels to grid cells and joined by Bresenham segments. Pixels are
/// (row, col) pairs, deduplicated, sorted, possibly outside the grid.
std::vector<std::pair<long, long>> lane_pixel_path(const Lane & lane, std::size_t grid_height, std::size_t grid_width);

/// Per-channel mean of the grid over the lane's pixel path.
PooledFeatures line_pool(const FeatureGrid & grid, const Lane & lane);

/// Externally supplied per-candidate outputs: lane probability, a distribution
/// over R pre-defined end heights, and an eigenlane offset.
struct CandidateScores
{
  std::vector<double> probabilities;  ///< K
  Eigen::MatrixXd heights;            ///< K x R, rows sum to 1
  Eigen::MatrixXd offsets;            ///< K x M
  std::vector<double> height_grid;    ///< R image heights, bottom first

  std::size_t k() const noexcept { return probabilities.size(); }

  /// Throws SchemaError on shape or range violations.
  void validate(std::size_t k, std::size_t m) const;
};

/// R heights spaced uniformly over the grid's y-range, bottom first.
std::vector<double> default_height_grid(const SamplingGrid & grid, std::size_t r = 25);

struct RelationMatrix
{
  Eigen::MatrixXd values;       ///< T x T, entries in [-1, 1]
  std::vector<bool> zero_rows;  ///< rows whose feature vector was all zero

  std::size_t t() const noexcept { return static_cast<std::size_t>(values.rows()); }
};

/// R = phi(Y) phi(Y)^T with phi = row-wise l2 normalization. All-zero rows
/// get relation 0 to every lane and are flagged.
RelationMatrix relation_from_features(const Eigen::MatrixXd & features);

struct NmsConfig
{
  std::size_t t = 10;
  double iou_threshold = 0.5;
  int width = 30;
  /// Optional early stop once the best remaining probability falls below this.
  std::optional<double> stop_below;
};

/// Greedy NMS: pick the most probable remaining candidate (lowest index on
/// ties), drop every remaining candidate overlapping it by more than the
/// threshold, repeat until t picks or no candidates remain.
std::vector<std::size_t> nms_select(
  std::span<const StripeMask> masks, std::span<const double> probabilities, const NmsConfig & config);

std::vector<std::size_t> nms_select(
  const CandidateSet & candidates, const CandidateScores & scores, const NmsConfig & config);

inline constexpr std::size_t kMaxCliqueNodes = 25;

struct CliqueResult
{
  std::vector<std::size_t> members;  ///< ascending node indices
  double compatibility = 0.0;
  bool fallback = false;  ///< no feasible clique; best single node returned
};

/// Sum of symmetrized edge weights over all member pairs.
double clique_compatibility(const RelationMatrix & relation, std::span<const std::size_t> members);

/// Maximum-weight clique with every internal edge weight
/// (R(i,j) + R(j,i)) / 2 above kappa; falls back to the most probable single
/// node. Exact enumeration, limited to kMaxCliqueNodes nodes.
CliqueResult mwcs(const RelationMatrix & relation, std::span<const double> probabilities, double kappa);

struct RefineOptions
{
  bool use_offsets = true;
  bool use_heights = true;
};

/// Refines each chosen candidate to U_m (c + dc) and truncates it at the most
/// probable end height. `members` index into the candidate set.
std::vector<Lane> finalize(
  const EigenBasis & basis, const CandidateSet & candidates, std::span<const std::size_t> members,
  const CandidateScores & scores, const RefineOptions & options = {});

struct DetectConfig
{
  NmsConfig nms;
  double kappa = 0.3;
  bool use_mwcs = true;
  RefineOptions refine;
};

struct Detection
{
  std::vector<std::size_t> nms_picks;  ///< candidate indices, selection order
  RelationMatrix relation;             ///< over nms_picks
  CliqueResult clique;                 ///< node indices into nms_picks
  std::vector<std::size_t> selected;   ///< candidate indices, clique order
  std::vector<Lane> lanes;
};

/// NMS -> relation -> MWCS -> refinement for one image. `features` holds one
/// row per candidate; `masks` are the candidates' stripes at the NMS width.
Detection detect(
  const EigenBasis & basis, const CandidateSet & candidates, std::span<const StripeMask> masks,
  const CandidateScores & scores, const Eigen::MatrixXd & features, const DetectConfig & config);

/// Same, pooling the relation features from a feature grid along each picked
/// candidate instead of taking them from a per-candidate table.
Detection detect(
  const EigenBasis & basis, const CandidateSet & candidates, std::span<const StripeMask> masks,
  const CandidateScores & scores, const FeatureGrid & feature_grid, const DetectConfig & config);

}  // namespace eigenlane

#endif  // EIGENLANE__PIPELINE_HPP_
