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

#include "eigenlane/candidates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "eigenlane/error.hpp"
#include "eigenlane/kernels.hpp"
#include "eigenlane/rng.hpp"

namespace eigenlane
{

std::size_t count_distinct_columns(const Eigen::MatrixXd & points)
{
  std::vector<Eigen::Index> order(static_cast<std::size_t>(points.cols()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  auto less = [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index r = 0; r < points.rows(); ++r) {
      if (points(r, a) != points(r, b)) {
        return points(r, a) < points(r, b);
      }
    }
    return false;
  };
  std::sort(order.begin(), order.end(), less);
  std::size_t distinct = order.empty() ? 0 : 1;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (less(order[i - 1], order[i])) {
      ++distinct;
    }
  }
  return distinct;
}

namespace
{

double squared_distance(const Eigen::MatrixXd & a, Eigen::Index i, const Eigen::MatrixXd & b, Eigen::Index j)
{
  double s = 0.0;
  for (Eigen::Index t = 0; t < a.rows(); ++t) {
    const double d = a(t, i) - b(t, j);
    s += d * d;
  }
  return s;
}

Eigen::MatrixXd kmeanspp_seed(const Eigen::MatrixXd & points, std::size_t k, Rng & rng)
{
  const Eigen::Index n = points.cols();
  Eigen::MatrixXd centroids(points.rows(), static_cast<Eigen::Index>(k));
  Eigen::Index first = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n)));
  centroids.col(0) = points.col(first);

  std::vector<double> d2(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    d2[static_cast<std::size_t>(i)] = squared_distance(points, i, centroids, 0);
  }
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (double v : d2) {
      total += v;
    }
    const double target = rng.uniform() * total;
    Eigen::Index chosen = -1;
    double cum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double v = d2[static_cast<std::size_t>(i)];
      if (v <= 0.0) {
        continue;
      }
      cum += v;
      chosen = i;
      if (cum > target) {
        break;
      }
    }
    centroids.col(static_cast<Eigen::Index>(c)) = points.col(chosen);
    for (Eigen::Index i = 0; i < n; ++i) {
      auto & v = d2[static_cast<std::size_t>(i)];
      v = std::min(v, squared_distance(points, i, centroids, static_cast<Eigen::Index>(c)));
    }
  }
  return centroids;
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd & points, const ClusteringConfig & config)
{
  if (points.cols() == 0) {
    throw Error(ErrorCode::EmptyInput, "no points to cluster");
  }
  if (config.k < 1 || config.max_iters < 1 || !(config.tolerance > 0.0)) {
    throw Error(ErrorCode::InvalidAnnotation, "clustering config needs k >= 1, max_iters >= 1, tolerance > 0");
  }
  const std::size_t distinct = count_distinct_columns(points);
  if (config.k > distinct) {
    throw Error(
      ErrorCode::TooManyClusters, "k = " + std::to_string(config.k) + " exceeds " +
                                    std::to_string(distinct) + " distinct points");
  }

  Rng rng(config.seed);
  KMeansResult result;
  result.centroids = kmeanspp_seed(points, config.k, rng);

  const Eigen::Index d = points.rows();
  const Eigen::Index n = points.cols();
  const auto k = static_cast<Eigen::Index>(config.k);

  for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
    kernels::Assignment assign = kernels::assign_parallel(points, result.centroids);
    result.objective.push_back(std::accumulate(assign.dist2.begin(), assign.dist2.end(), 0.0));

    // Serial mean update, in point order.
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(d, k);
    std::vector<std::size_t> counts(config.k, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto label = assign.labels[static_cast<std::size_t>(i)];
      sums.col(static_cast<Eigen::Index>(label)) += points.col(i);
      ++counts[label];
    }
    Eigen::MatrixXd next(d, k);
    for (Eigen::Index c = 0; c < k; ++c) {
      const auto count = counts[static_cast<std::size_t>(c)];
      if (count > 0) {
        next.col(c) = sums.col(c) / static_cast<double>(count);
        continue;
      }
      // Empty cluster: move it onto the point farthest from its centroid.
      Eigen::Index far = 0;
      double far_d2 = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (assign.dist2[static_cast<std::size_t>(i)] > far_d2) {
          far_d2 = assign.dist2[static_cast<std::size_t>(i)];
          far = i;
        }
      }
      next.col(c) = points.col(far);
      assign.dist2[static_cast<std::size_t>(far)] = 0.0;
      ++result.empty_repairs;
    }

    double shift = 0.0;
    for (Eigen::Index c = 0; c < k; ++c) {
      shift = std::max(shift, (next.col(c) - result.centroids.col(c)).norm());
    }
    result.centroids = std::move(next);
    result.iterations = iter + 1;
    if (shift < config.tolerance) {
      result.converged = true;
      break;
    }
  }

  kernels::Assignment final_assign = kernels::assign_parallel(points, result.centroids);
  result.objective.push_back(std::accumulate(final_assign.dist2.begin(), final_assign.dist2.end(), 0.0));
  result.labels = std::move(final_assign.labels);
  return result;
}

ClusteringOutcome cluster_lanes_with_report(
  const EigenBasis & basis, std::span<const Lane> lanes, const ClusteringConfig & config)
{
  if (lanes.empty()) {
    throw Error(ErrorCode::EmptyInput, "no lanes to cluster");
  }
  const LaneMatrix matrix = LaneMatrix::from_lanes(lanes);
  require_same_grid(matrix.grid(), basis.grid);
  const Eigen::MatrixXd coeffs = basis.u.transpose() * matrix.columns();

  ClusteringOutcome out;
  out.kmeans = kmeans(coeffs, config);
  out.candidates.basis_id = basis.id();
  out.candidates.source = CandidateSource::Clustered;
  for (Eigen::Index c = 0; c < out.kmeans.centroids.cols(); ++c) {
    Coefficients centroid = out.kmeans.centroids.col(c);
    out.candidates.lanes.push_back(reconstruct(basis, centroid));
    out.candidates.coefficients.push_back(std::move(centroid));
  }
  return out;
}

CandidateSet cluster_lanes(
  const EigenBasis & basis, std::span<const Lane> lanes, const ClusteringConfig & config)
{
  return cluster_lanes_with_report(basis, lanes, config).candidates;
}

CandidateSet straight_anchor_grid(const EigenBasis & basis, std::size_t n)
{
  if (n < 1) {
    throw Error(ErrorCode::EmptyInput, "straight anchor grid needs n >= 1");
  }
  const SamplingGrid & grid = *basis.grid;
  const auto n_tilts = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
  const std::size_t n_positions = (n + n_tilts - 1) / n_tilts;

  auto linspace = [](double lo, double hi, std::size_t count, std::size_t i) {
    if (count == 1) {
      return 0.5 * (lo + hi);
    }
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  };
  const double max_tilt = kStraightAnchorMaxTiltDeg * M_PI / 180.0;

  CandidateSet out;
  out.basis_id = basis.id();
  out.source = CandidateSource::StraightGrid;
  const double y0 = grid.y_bottom();
  for (std::size_t p = 0; p < n_positions && out.lanes.size() < n; ++p) {
    const double x0 = linspace(0.0, grid.image_width - 1.0, n_positions, p);
    for (std::size_t a = 0; a < n_tilts && out.lanes.size() < n; ++a) {
      const double slope = std::tan(linspace(-max_tilt, max_tilt, n_tilts, a));
      std::vector<double> xs(grid.n_samples());
      for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = x0 + slope * (y0 - grid.y_coords[i]);
      }
      Lane lane(basis.grid, std::move(xs));
      out.coefficients.push_back(project(basis, lane));
      out.lanes.push_back(std::move(lane));
    }
  }
  return out;
}

double mean_best_iou(std::span<const StripeMask> candidates, std::span<const StripeMask> test_lanes)
{
  if (test_lanes.empty()) {
    throw Error(ErrorCode::EmptyInput, "mean_best_iou needs at least one test lane");
  }
  const auto best = kernels::best_match_parallel(test_lanes, candidates);
  double sum = 0.0;
  for (const auto & b : best) {
    sum += b.iou;
  }
  return sum / static_cast<double>(best.size());
}

double mean_best_iou(const CandidateSet & candidates, std::span<const Lane> test_lanes, int width)
{
  if (test_lanes.empty()) {
    throw Error(ErrorCode::EmptyInput, "mean_best_iou needs at least one test lane");
  }
  if (!candidates.lanes.empty()) {
    for (const auto & lane : test_lanes) {
      require_same_grid(candidates.lanes.front().grid_ptr(), lane.grid_ptr());
    }
  }
  const auto cand_masks = rasterize_all(candidates.lanes, width);
  const auto test_masks = rasterize_all(test_lanes, width);
  return mean_best_iou(cand_masks, test_masks);
}

}  // namespace eigenlane
