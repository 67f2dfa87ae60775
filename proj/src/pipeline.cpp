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

#include "eigenlane/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>

#include "eigenlane/error.hpp"
#include "eigenlane/kernels.hpp"

namespace eigenlane
{

void FeatureGrid::validate() const
{
  if (height == 0 || width == 0 || channels == 0) {
    throw Error(ErrorCode::EmptyInput, "feature grid is empty");
  }
  if (values.size() != height * width * channels) {
    throw Error(ErrorCode::DimensionMismatch, "feature grid value count does not match H x W x C");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::InvalidAnnotation, "feature grid has non-finite values");
    }
  }
}

namespace
{

void bresenham(long c0, long r0, long c1, long r1, std::vector<std::pair<long, long>> & out)
{
  const long dc = std::labs(c1 - c0);
  const long dr = -std::labs(r1 - r0);
  const long sc = c0 < c1 ? 1 : -1;
  const long sr = r0 < r1 ? 1 : -1;
  long err = dc + dr;
  for (;;) {
    out.emplace_back(r0, c0);
    if (c0 == c1 && r0 == r1) {
      break;
    }
    const long e2 = 2 * err;
    if (e2 >= dr) {
      err += dr;
      c0 += sc;
    }
    if (e2 <= dc) {
      err += dc;
      r0 += sr;
    }
  }
}

}  // namespace

std::vector<std::pair<long, long>> lane_pixel_path(
  const Lane & lane, std::size_t grid_height, std::size_t grid_width)
{
  std::vector<std::pair<long, long>> path;
  const std::size_t top = lane.top_index();
  if (top == 0) {
    return path;
  }
  const SamplingGrid & g = lane.grid();
  const double sx = static_cast<double>(grid_width) / g.image_width;
  const double sy = static_cast<double>(grid_height) / g.image_height;
  const auto xs = lane.xs();
  auto cell = [&](std::size_t i) {
    return std::pair<long, long>{
      static_cast<long>(std::floor(xs[i] * sx)), static_cast<long>(std::floor(g.y_coords[i] * sy))};
  };
  auto [c_prev, r_prev] = cell(0);
  path.emplace_back(r_prev, c_prev);
  for (std::size_t i = 1; i < top; ++i) {
    const auto [c, r] = cell(i);
    bresenham(c_prev, r_prev, c, r, path);
    c_prev = c;
    r_prev = r;
  }
  std::sort(path.begin(), path.end());
  path.erase(std::unique(path.begin(), path.end()), path.end());
  return path;
}

PooledFeatures line_pool(const FeatureGrid & grid, const Lane & lane)
{
  grid.validate();
  PooledFeatures out;
  out.values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.channels));
  const auto h = static_cast<long>(grid.height);
  const auto w = static_cast<long>(grid.width);
  for (const auto & [r, c] : lane_pixel_path(lane, grid.height, grid.width)) {
    if (r < 0 || r >= h || c < 0 || c >= w) {
      continue;
    }
    for (std::size_t ch = 0; ch < grid.channels; ++ch) {
      out.values(static_cast<Eigen::Index>(ch)) +=
        grid.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c), ch);
    }
    ++out.pixel_count;
  }
  if (out.pixel_count == 0) {
    out.outside = true;
  } else {
    out.values /= static_cast<double>(out.pixel_count);
  }
  return out;
}

void CandidateScores::validate(std::size_t k, std::size_t m) const
{
  if (probabilities.size() != k) {
    throw Error(ErrorCode::SchemaError, "scores cover " + std::to_string(probabilities.size()) +
                                          " candidates, expected " + std::to_string(k));
  }
  if (static_cast<std::size_t>(heights.rows()) != k ||
      static_cast<std::size_t>(heights.cols()) != height_grid.size() || height_grid.empty()) {
    throw Error(ErrorCode::SchemaError, "height distribution shape mismatch");
  }
  if (static_cast<std::size_t>(offsets.rows()) != k || static_cast<std::size_t>(offsets.cols()) != m) {
    throw Error(ErrorCode::SchemaError, "offset matrix shape mismatch");
  }
  for (double p : probabilities) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::SchemaError, "lane probability outside [0, 1]");
    }
  }
  for (Eigen::Index i = 0; i < heights.rows(); ++i) {
    if (std::abs(heights.row(i).sum() - 1.0) > 1e-6 || heights.row(i).minCoeff() < 0.0) {
      throw Error(ErrorCode::SchemaError, "height distribution of candidate " + std::to_string(i) + " is not a distribution");
    }
  }
  if (!offsets.allFinite()) {
    throw Error(ErrorCode::SchemaError, "non-finite offsets");
  }
}

std::vector<double> default_height_grid(const SamplingGrid & grid, std::size_t r)
{
  std::vector<double> heights(r);
  const double lo = grid.y_top();
  const double hi = grid.y_bottom();
  for (std::size_t i = 0; i < r; ++i) {
    heights[i] = r == 1 ? lo : hi - (hi - lo) * static_cast<double>(i) / static_cast<double>(r - 1);
  }
  if (r > 1) {
    heights.back() = lo;
  }
  return heights;
}

RelationMatrix relation_from_features(const Eigen::MatrixXd & features)
{
  const Eigen::Index t = features.rows();
  RelationMatrix rel;
  rel.zero_rows.assign(static_cast<std::size_t>(t), false);
  Eigen::MatrixXd normalized = features;
  for (Eigen::Index i = 0; i < t; ++i) {
    const double norm = features.row(i).norm();
    if (norm > 0.0) {
      normalized.row(i) /= norm;
    } else {
      normalized.row(i).setZero();
      rel.zero_rows[static_cast<std::size_t>(i)] = true;
    }
  }
  rel.values = (normalized * normalized.transpose()).cwiseMax(-1.0).cwiseMin(1.0);
  return rel;
}

std::vector<std::size_t> nms_select(
  std::span<const StripeMask> masks, std::span<const double> probabilities, const NmsConfig & config)
{
  if (masks.size() != probabilities.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one probability per candidate mask required");
  }
  std::vector<std::size_t> picks;
  std::vector<bool> alive(masks.size(), true);
  std::vector<double> iou(masks.size());
  while (picks.size() < config.t) {
    std::size_t best = masks.size();
    for (std::size_t i = 0; i < masks.size(); ++i) {
      if (alive[i] && (best == masks.size() || probabilities[i] > probabilities[best])) {
        best = i;
      }
    }
    if (best == masks.size()) {
      break;
    }
    if (config.stop_below && probabilities[best] < *config.stop_below) {
      break;
    }
    picks.push_back(best);
    alive[best] = false;
    kernels::iou_row_parallel(masks[best], masks, iou);
    for (std::size_t i = 0; i < masks.size(); ++i) {
      if (alive[i] && iou[i] > config.iou_threshold) {
        alive[i] = false;
      }
    }
  }
  return picks;
}

std::vector<std::size_t> nms_select(
  const CandidateSet & candidates, const CandidateScores & scores, const NmsConfig & config)
{
  const auto masks = rasterize_all(candidates.lanes, config.width);
  return nms_select(masks, scores.probabilities, config);
}

double clique_compatibility(const RelationMatrix & relation, std::span<const std::size_t> members)
{
  double sum = 0.0;
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const auto i = static_cast<Eigen::Index>(members[a]);
      const auto j = static_cast<Eigen::Index>(members[b]);
      sum += 0.5 * (relation.values(i, j) + relation.values(j, i));
    }
  }
  return sum;
}

CliqueResult mwcs(const RelationMatrix & relation, std::span<const double> probabilities, double kappa)
{
  const std::size_t t = relation.t();
  if (t > kMaxCliqueNodes) {
    throw Error(ErrorCode::TooManyNodes, std::to_string(t) + " nodes exceed the exact enumeration bound of " +
                                           std::to_string(kMaxCliqueNodes));
  }
  if (probabilities.size() != t) {
    throw Error(ErrorCode::DimensionMismatch, "one probability per node required");
  }
  CliqueResult result;
  if (t == 0) {
    return result;
  }
  const Eigen::MatrixXd w = 0.5 * (relation.values + relation.values.transpose());
  kernels::Clique best = kernels::max_weight_clique_parallel(w, kappa);
  if (best.members.empty()) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < t; ++i) {
      if (probabilities[i] > probabilities[arg]) {
        arg = i;
      }
    }
    result.members = {arg};
    result.fallback = true;
    return result;
  }
  result.members = std::move(best.members);
  result.compatibility = clique_compatibility(relation, result.members);
  return result;
}

std::vector<Lane> finalize(
  const EigenBasis & basis, const CandidateSet & candidates, std::span<const std::size_t> members,
  const CandidateScores & scores, const RefineOptions & options)
{
  const SamplingGrid & grid = *basis.grid;
  const auto & hg = scores.height_grid;
  for (std::size_t i = 0; i < hg.size(); ++i) {
    if (hg[i] < grid.y_top() - 1e-9 || hg[i] > grid.y_bottom() + 1e-9 || (i > 0 && !(hg[i] < hg[i - 1]))) {
      throw Error(ErrorCode::SchemaError, "height grid must decrease strictly within the sampling grid");
    }
  }
  std::vector<Lane> out;
  out.reserve(members.size());
  for (std::size_t idx : members) {
    if (idx >= candidates.k() || idx >= scores.k()) {
      throw Error(ErrorCode::IndexError, "clique member " + std::to_string(idx) + " out of range");
    }
    const Coefficients & c = candidates.coefficients[idx];
    Lane lane = options.use_offsets
                  ? refine(basis, c, scores.offsets.row(static_cast<Eigen::Index>(idx)).transpose())
                  : Lane(basis.grid, candidates.lanes[idx].xs_vector());
    if (options.use_heights && !hg.empty()) {
      Eigen::Index bin = 0;
      scores.heights.row(static_cast<Eigen::Index>(idx)).maxCoeff(&bin);
      const double h = hg[static_cast<std::size_t>(bin)];
      std::size_t top = grid.n_samples();
      for (std::size_t i = 0; i < grid.n_samples(); ++i) {
        if (grid.y_coords[i] < h - 1e-9) {
          top = i;
          break;
        }
      }
      lane = lane.with_top_index(top);
    }
    out.push_back(std::move(lane));
  }
  return out;
}

namespace
{

Detection run_detection(
  const EigenBasis & basis, const CandidateSet & candidates, std::span<const StripeMask> masks,
  const CandidateScores & scores, const DetectConfig & config,
  const std::function<Eigen::MatrixXd(std::span<const std::size_t>)> & features_for)
{
  scores.validate(candidates.k(), basis.m);
  if (masks.size() != candidates.k()) {
    throw Error(ErrorCode::DimensionMismatch, "one stripe mask per candidate required");
  }
  Detection det;
  det.nms_picks = nms_select(masks, scores.probabilities, config.nms);
  if (det.nms_picks.empty()) {
    return det;
  }
  if (config.use_mwcs) {
    det.relation = relation_from_features(features_for(det.nms_picks));
    std::vector<double> p(det.nms_picks.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = scores.probabilities[det.nms_picks[i]];
    }
    det.clique = mwcs(det.relation, p, config.kappa);
    for (std::size_t node : det.clique.members) {
      det.selected.push_back(det.nms_picks[node]);
    }
  } else {
    det.selected = det.nms_picks;
  }
  det.lanes = finalize(basis, candidates, det.selected, scores, config.refine);
  return det;
}

}  // namespace

Detection detect(
  const EigenBasis & basis, const CandidateSet & candidates, std::span<const StripeMask> masks,
  const CandidateScores & scores, const Eigen::MatrixXd & features, const DetectConfig & config)
{
  if (static_cast<std::size_t>(features.rows()) != candidates.k()) {
    throw Error(ErrorCode::DimensionMismatch, "one feature row per candidate required");
  }
  return run_detection(basis, candidates, masks, scores, config, [&](std::span<const std::size_t> picks) {
    Eigen::MatrixXd y(static_cast<Eigen::Index>(picks.size()), features.cols());
    for (std::size_t i = 0; i < picks.size(); ++i) {
      y.row(static_cast<Eigen::Index>(i)) = features.row(static_cast<Eigen::Index>(picks[i]));
    }
    return y;
  });
}

Detection detect(
  const EigenBasis & basis, const CandidateSet & candidates, std::span<const StripeMask> masks,
  const CandidateScores & scores, const FeatureGrid & feature_grid, const DetectConfig & config)
{
  feature_grid.validate();
  return run_detection(basis, candidates, masks, scores, config, [&](std::span<const std::size_t> picks) {
    Eigen::MatrixXd y(static_cast<Eigen::Index>(picks.size()), static_cast<Eigen::Index>(feature_grid.channels));
    for (std::size_t i = 0; i < picks.size(); ++i) {
      y.row(static_cast<Eigen::Index>(i)) = line_pool(feature_grid, candidates.lanes[picks[i]]).values.transpose();
    }
    return y;
  });
}

}  // namespace eigenlane
