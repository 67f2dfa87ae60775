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

#include "eigenlane/oracle_scores.hpp"

#include <algorithm>
#include <cmath>

#include "eigenlane/error.hpp"
#include "eigenlane/kernels.hpp"
#include "eigenlane/rng.hpp"

namespace eigenlane
{

OracleOutput oracle_scores(
  const EigenBasis & basis, const CandidateSet & candidates, std::span<const StripeMask> candidate_masks,
  std::span<const Lane> ground_truth, const OracleConfig & config)
{
  const std::size_t k = candidates.k();
  const std::size_t g = ground_truth.size();
  const std::size_t m = basis.m;
  if (candidate_masks.size() != k) {
    throw Error(ErrorCode::DimensionMismatch, "one stripe mask per candidate required");
  }
  for (const auto & lane : ground_truth) {
    require_same_grid(basis.grid, lane.grid_ptr());
  }
  const SamplingGrid & grid = *basis.grid;

  OracleOutput out;
  CandidateScores & s = out.scores;
  s.height_grid = default_height_grid(grid, config.height_bins);
  const std::size_t r = s.height_grid.size();
  s.probabilities.assign(k, 0.0);
  s.heights = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(r));
  s.offsets = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m));
  out.plausible.assign(k, false);
  out.target_gt.assign(k, -1);

  const auto gt_masks = rasterize_all(ground_truth, config.width);
  const std::vector<double> iou = kernels::pairwise_iou_parallel(candidate_masks, gt_masks);

  std::vector<long> best_gt(k, -1);
  for (std::size_t c = 0; c < k; ++c) {
    double best = 0.0;
    for (std::size_t j = 0; j < g; ++j) {
      if (iou[c * g + j] > best) {
        best = iou[c * g + j];
        best_gt[c] = static_cast<long>(j);
      }
    }
    s.probabilities[c] = best;
    if (best >= config.iou_floor) {
      out.target_gt[c] = best_gt[c];
    }
  }

  // Each gt lane marks its best candidate plausible; on a shared candidate the
  // stronger match keeps it.
  for (std::size_t j = 0; j < g; ++j) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (iou[c * g + j] > best) {
        best = iou[c * g + j];
        arg = c;
      }
    }
    if (k == 0 || best < config.iou_floor) {
      continue;
    }
    const long prev = out.plausible[arg] ? out.target_gt[arg] : -1;
    if (prev < 0 || iou[arg * g + static_cast<std::size_t>(prev)] < best) {
      out.plausible[arg] = true;
      out.target_gt[arg] = static_cast<long>(j);
    }
  }

  std::vector<Coefficients> gt_coeffs;
  gt_coeffs.reserve(g);
  std::vector<std::size_t> gt_bin(g, r - 1);
  for (std::size_t j = 0; j < g; ++j) {
    gt_coeffs.push_back(project(basis, ground_truth[j]));
    const std::size_t top = ground_truth[j].top_index();
    if (top == 0) {
      continue;
    }
    const double y_end = grid.y_coords[top - 1];
    std::size_t bin = 0;
    for (std::size_t b = 1; b < r; ++b) {
      if (std::abs(s.height_grid[b] - y_end) < std::abs(s.height_grid[bin] - y_end)) {
        bin = b;
      }
    }
    gt_bin[j] = bin;
  }

  const auto feature_dim = static_cast<Eigen::Index>(1 + m + 2);
  out.features = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), feature_dim);
  for (std::size_t c = 0; c < k; ++c) {
    const auto row = static_cast<Eigen::Index>(c);
    const long target = out.target_gt[c];
    if (target >= 0) {
      const auto t = static_cast<std::size_t>(target);
      s.offsets.row(row) = (gt_coeffs[t] - candidates.coefficients[c]).transpose();
      s.heights(row, static_cast<Eigen::Index>(gt_bin[t])) = 1.0;
    } else {
      s.heights(row, static_cast<Eigen::Index>(r - 1)) = 1.0;
    }
    if (out.plausible[c]) {
      const Coefficients & coef = candidates.coefficients[c];
      const double norm = coef.norm();
      out.features(row, 0) = 1.0;
      if (norm > 0.0) {
        out.features.block(row, 1, 1, static_cast<Eigen::Index>(m)) =
          config.geometry_weight * coef.transpose() / norm;
      }
      const auto xs = candidates.lanes[c].xs();
      out.features(row, feature_dim - 2) = config.geometry_weight * xs.front() / grid.image_width;
      out.features(row, feature_dim - 1) = config.geometry_weight * xs.back() / grid.image_width;
    }
  }

  const OracleNoise & noise = config.noise;
  if (noise.probability_sigma > 0.0 || noise.offset_sigma > 0.0) {
    Rng rng(noise.seed);
    for (std::size_t c = 0; c < k; ++c) {
      const double dp = noise.probability_sigma * rng.normal();
      s.probabilities[c] = std::clamp(s.probabilities[c] + dp, 0.0, 1.0);
      for (std::size_t i = 0; i < m; ++i) {
        s.offsets(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(i)) += noise.offset_sigma * rng.normal();
      }
    }
  }
  return out;
}

}  // namespace eigenlane
