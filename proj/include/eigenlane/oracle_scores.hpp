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

#ifndef EIGENLANE__ORACLE_SCORES_HPP_
#define EIGENLANE__ORACLE_SCORES_HPP_

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "eigenlane/candidates.hpp"
#include "eigenlane/eigenspace.hpp"
#include "eigenlane/pipeline.hpp"

namespace eigenlane
{

struct OracleNoise
{
  double probability_sigma = 0.0;
  double offset_sigma = 0.0;  ///< pixels, per coefficient
  std::uint64_t seed = 0;
};

struct OracleConfig
{
  int width = 30;
  /// Candidates matching a ground-truth lane at least this well receive an
  /// offset toward it.
  double iou_floor = 0.3;
  /// Scale of the coefficient/geometry part of the feature vector relative
  /// to the unit plausibility component.
  double geometry_weight = 0.2;
  std::size_t height_bins = 25;
  OracleNoise noise;
};

/// Ground-truth driven stand-in for the learned per-candidate outputs.
struct OracleOutput
{
  CandidateScores scores;
  /// One row per candidate: [plausibility, w * c/|c|, w * (x_bottom/W, x_top/W)].
  /// Rows of candidates that are not the best match of any ground-truth lane
  /// are all zero.
  Eigen::MatrixXd features;
  std::vector<bool> plausible;
  std::vector<long> target_gt;  ///< gt index each candidate is steered to, -1 if none
};

/// p_k is the best stripe IoU of candidate k against the ground truth (plus
/// optional noise); offsets move candidates above the IoU floor onto the
/// projection of their ground-truth lane; height distributions are one-hot at
/// the bin nearest that lane's topmost annotated sample.
OracleOutput oracle_scores(
  const EigenBasis & basis, const CandidateSet & candidates, std::span<const StripeMask> candidate_masks,
  std::span<const Lane> ground_truth, const OracleConfig & config = {});

}  // namespace eigenlane

#endif  // EIGENLANE__ORACLE_SCORES_HPP_
