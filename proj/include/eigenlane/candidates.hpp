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

#ifndef EIGENLANE__CANDIDATES_HPP_
#define EIGENLANE__CANDIDATES_HPP_

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eigenlane/eigenspace.hpp"
#include "eigenlane/lane.hpp"

namespace eigenlane
{

enum class CandidateSource {
  Clustered,     ///< centroids reconstructed from the eigenlane space
  StraightGrid,  ///< enumerated straight lines, kept exact
};

/// Detection anchors bound to an eigenlane basis. For clustered sets each lane
/// is the reconstruction of its coefficient vector; straight-grid lanes are
/// the exact lines and carry their projections as coefficients.
struct CandidateSet
{
  std::vector<Lane> lanes;
  std::vector<Coefficients> coefficients;
  std::string basis_id;
  CandidateSource source = CandidateSource::Clustered;

  std::size_t k() const noexcept { return lanes.size(); }
};

struct ClusteringConfig
{
  std::size_t k = 16;
  std::size_t max_iters = 100;
  double tolerance = 1e-4;  ///< max centroid shift, pixels
  std::uint64_t seed = 0;
};

struct KMeansResult
{
  Eigen::MatrixXd centroids;  ///< d x k
  std::vector<std::size_t> labels;
  /// Sum of squared distances to the assigned centroid, one entry per
  /// assignment step; never increases.
  std::vector<double> objective;
  std::size_t iterations = 0;
  bool converged = false;
  std::size_t empty_repairs = 0;
};

/// Lloyd's k-means with seeded k-means++ initialization over column points.
/// Empty clusters are reseeded at the point farthest from its centroid.
KMeansResult kmeans(const Eigen::MatrixXd & points, const ClusteringConfig & config);

/// Number of pairwise-distinct columns.
std::size_t count_distinct_columns(const Eigen::MatrixXd & points);

struct ClusteringOutcome
{
  CandidateSet candidates;
  KMeansResult kmeans;
};

/// Projects the lanes into the eigenlane space, clusters the coefficients and
/// reconstructs each centroid into a candidate lane. Euclidean distance in
/// coefficient space equals distance between the rank-m approximated lanes.
ClusteringOutcome cluster_lanes_with_report(
  const EigenBasis & basis, std::span<const Lane> lanes, const ClusteringConfig & config);

CandidateSet cluster_lanes(
  const EigenBasis & basis, std::span<const Lane> lanes, const ClusteringConfig & config);

/// Bottom-intercept by tilt-angle grid of straight lanes, row-major over
/// intercepts, tilts spanning +-75 degrees from vertical. A stand-in baseline
/// grid.
CandidateSet straight_anchor_grid(const EigenBasis & basis, std::size_t n);

inline constexpr double kStraightAnchorMaxTiltDeg = 75.0;

/// Mean over test lanes of the best stripe IoU against any candidate.
double mean_best_iou(const CandidateSet & candidates, std::span<const Lane> test_lanes, int width = 30);

/// Same, on precomputed masks.
double mean_best_iou(std::span<const StripeMask> candidates, std::span<const StripeMask> test_lanes);

}  // namespace eigenlane

#endif  // EIGENLANE__CANDIDATES_HPP_
