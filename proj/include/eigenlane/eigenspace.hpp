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

#ifndef EIGENLANE__EIGENSPACE_HPP_
#define EIGENLANE__EIGENSPACE_HPP_

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "eigenlane/lane.hpp"

namespace eigenlane
{

/// Eigenlane coordinates of a lane, in pixels.
using Coefficients = Eigen::VectorXd;

/// N x L matrix whose columns are training lanes on one grid.
class LaneMatrix
{
public:
  LaneMatrix(GridPtr grid, Eigen::MatrixXd columns);

  /// Stacks lanes column-wise. Throws EmptyInput or GridMismatch.
  static LaneMatrix from_lanes(std::span<const Lane> lanes);

  const GridPtr & grid() const noexcept { return grid_; }
  const Eigen::MatrixXd & columns() const noexcept { return columns_; }
  std::size_t rows() const noexcept { return static_cast<std::size_t>(columns_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(columns_.cols()); }

private:
  GridPtr grid_;
  Eigen::MatrixXd columns_;
};

/// The first m left singular vectors of a lane matrix together with its full
/// list of numerically nonzero singular values.
/// The lane matrix is decomposed as is, without mean-centering.
struct EigenBasis
{
  Eigen::MatrixXd u;                   ///< N x m, orthonormal columns
  std::vector<double> singular_values; ///< sigma_1 >= ... >= sigma_r > 0
  std::size_t m = 0;
  GridPtr grid;

  std::size_t n() const noexcept { return static_cast<std::size_t>(u.rows()); }
  std::size_t rank() const noexcept { return singular_values.size(); }

  /// Sum of sigma_i^2 for i > m.
  double trailing_energy() const noexcept;

  /// Same basis restricted to its first `m` eigenlanes.
  EigenBasis truncated(std::size_t m) const;

  /// Stable content hash binding candidate sets to their basis.
  std::string id() const;
};

/// Relative cutoff sigma_i / sigma_1 below which a singular value counts as zero.
inline constexpr double kRankTolerance = 1e-12;

/// Dense deterministic SVD of the lane matrix, keeping m eigenlanes. Each
/// eigenlane is signed so its largest-magnitude entry (lowest index on ties) is
/// non-negative. Throws RankDeficient if m exceeds the numerical rank.
EigenBasis build_basis(const LaneMatrix & matrix, std::size_t m);

/// c = U_m^T x.
Coefficients project(const EigenBasis & basis, const Lane & lane);

/// Full-length lane U_m c.
Lane reconstruct(const EigenBasis & basis, const Coefficients & c);

/// Sum over columns of ||x_i - U_m U_m^T x_i||^2, computed from residuals.
double approximation_error(const LaneMatrix & matrix, const EigenBasis & basis);

/// U_m (c + delta).
Lane refine(const EigenBasis & basis, const Coefficients & c, const Coefficients & delta);

}  // namespace eigenlane

#endif  // EIGENLANE__EIGENSPACE_HPP_
