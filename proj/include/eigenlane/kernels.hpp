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

#ifndef EIGENLANE__KERNELS_HPP_
#define EIGENLANE__KERNELS_HPP_

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

#include "eigenlane/lane.hpp"

// Data-parallel inner loops, each with a serial reference and an OpenMP
// variant that returns identical results.
namespace eigenlane::kernels
{

/// Number of threads the parallel kernels will use (1 without OpenMP).
int max_threads() noexcept;

// ---------------------------------------------------------------------------
// Stripe IoU

/// out[j] = IoU(query, targets[j]).
void iou_row_serial(const StripeMask & query, std::span<const StripeMask> targets, std::span<double> out);
void iou_row_parallel(const StripeMask & query, std::span<const StripeMask> targets, std::span<double> out);

/// Row-major |a| x |b| IoU matrix.
std::vector<double> pairwise_iou_serial(std::span<const StripeMask> a, std::span<const StripeMask> b);
std::vector<double> pairwise_iou_parallel(std::span<const StripeMask> a, std::span<const StripeMask> b);

struct BestMatch
{
  double iou = 0.0;
  std::size_t index = 0;  ///< lowest index among ties; 0 when nothing overlaps
};

/// For each query, the target with the largest IoU.
std::vector<BestMatch> best_match_serial(std::span<const StripeMask> queries, std::span<const StripeMask> targets);
std::vector<BestMatch> best_match_parallel(std::span<const StripeMask> queries, std::span<const StripeMask> targets);

// ---------------------------------------------------------------------------
// Nearest-centroid assignment. Points and centroids are stored column-wise.

struct Assignment
{
  std::vector<std::size_t> labels;
  std::vector<double> dist2;
};

/// Ties go to the lowest centroid index.
Assignment assign_serial(const Eigen::MatrixXd & points, const Eigen::MatrixXd & centroids);
Assignment assign_parallel(const Eigen::MatrixXd & points, const Eigen::MatrixXd & centroids);

// ---------------------------------------------------------------------------
// Maximum-weight clique search over a symmetric weight matrix.

struct Clique
{
  std::vector<std::size_t> members;  ///< ascending
  double weight = 0.0;
};

/// Relative tolerance under which two clique weights count as tied.
inline constexpr double kCliqueTieTolerance = 1e-12;

/// True if `a` is preferred over `b`: larger weight, then more members, then
/// the lexicographically smaller index set.
bool clique_better(const Clique & a, const Clique & b) noexcept;

/// Best clique of size >= 2 whose every internal edge weight exceeds kappa.
/// Returns an empty member list when no such clique exists.
Clique max_weight_clique_serial(const Eigen::MatrixXd & weights, double kappa);
Clique max_weight_clique_parallel(const Eigen::MatrixXd & weights, double kappa);

}  // namespace eigenlane::kernels

#endif  // EIGENLANE__KERNELS_HPP_
