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

#include "eigenlane/eigenspace.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>

#include "eigenlane/error.hpp"

namespace eigenlane
{

LaneMatrix::LaneMatrix(GridPtr grid, Eigen::MatrixXd columns)
: grid_(std::move(grid)), columns_(std::move(columns))
{
  if (!grid_) {
    throw Error(ErrorCode::GridMismatch, "lane matrix without a grid");
  }
  if (columns_.cols() == 0 || columns_.rows() == 0) {
    throw Error(ErrorCode::EmptyInput, "lane matrix is empty");
  }
  if (static_cast<std::size_t>(columns_.rows()) != grid_->n_samples()) {
    throw Error(ErrorCode::DimensionMismatch, "lane matrix rows differ from grid samples");
  }
  if (!columns_.allFinite()) {
    throw Error(ErrorCode::InvalidAnnotation, "lane matrix has non-finite entries");
  }
}

LaneMatrix LaneMatrix::from_lanes(std::span<const Lane> lanes)
{
  if (lanes.empty()) {
    throw Error(ErrorCode::EmptyInput, "no lanes to stack");
  }
  const GridPtr & grid = lanes.front().grid_ptr();
  Eigen::MatrixXd a(static_cast<Eigen::Index>(grid->n_samples()), static_cast<Eigen::Index>(lanes.size()));
  for (std::size_t j = 0; j < lanes.size(); ++j) {
    require_same_grid(grid, lanes[j].grid_ptr());
    const auto xs = lanes[j].xs();
    a.col(static_cast<Eigen::Index>(j)) =
      Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
  }
  return LaneMatrix(grid, std::move(a));
}

double EigenBasis::trailing_energy() const noexcept
{
  double sum = 0.0;
  for (std::size_t i = m; i < singular_values.size(); ++i) {
    sum += singular_values[i] * singular_values[i];
  }
  return sum;
}

EigenBasis EigenBasis::truncated(std::size_t new_m) const
{
  if (new_m < 1 || new_m > m) {
    throw Error(ErrorCode::DimensionMismatch, "cannot truncate basis to rank " + std::to_string(new_m));
  }
  EigenBasis out = *this;
  out.u = u.leftCols(static_cast<Eigen::Index>(new_m));
  out.m = new_m;
  return out;
}

std::string EigenBasis::id() const
{
  // FNV-1a over the raw bytes of the basis and grid.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void * data, std::size_t len) {
    const auto * p = static_cast<const unsigned char *>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  };
  const std::uint64_t dims[2] = {static_cast<std::uint64_t>(u.rows()), static_cast<std::uint64_t>(m)};
  mix(dims, sizeof(dims));
  mix(u.data(), sizeof(double) * static_cast<std::size_t>(u.size()));
  if (grid) {
    const int size[2] = {grid->image_width, grid->image_height};
    mix(size, sizeof(size));
    mix(grid->y_coords.data(), sizeof(double) * grid->y_coords.size());
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

EigenBasis build_basis(const LaneMatrix & matrix, std::size_t m)
{
  if (m < 1) {
    throw Error(ErrorCode::RankDeficient, "rank must be at least 1");
  }
  const Eigen::MatrixXd & a = matrix.columns();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
  const Eigen::VectorXd & sigma = svd.singularValues();

  EigenBasis basis;
  basis.grid = matrix.grid();
  const double s1 = sigma.size() > 0 ? sigma(0) : 0.0;
  if (s1 > 0.0) {
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
      if (sigma(i) / s1 < kRankTolerance) {
        break;
      }
      basis.singular_values.push_back(sigma(i));
    }
  }
  const std::size_t r = basis.singular_values.size();
  if (m > r) {
    throw Error(
      ErrorCode::RankDeficient,
      "requested rank " + std::to_string(m) + " but achievable rank is " + std::to_string(r));
  }

  basis.m = m;
  basis.u = svd.matrixU().leftCols(static_cast<Eigen::Index>(m));
  for (Eigen::Index j = 0; j < basis.u.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < basis.u.rows(); ++i) {
      const double v = std::abs(basis.u(i, j));
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    if (basis.u(arg, j) < 0.0) {
      basis.u.col(j) = -basis.u.col(j);
    }
  }
  return basis;
}

Coefficients project(const EigenBasis & basis, const Lane & lane)
{
  require_same_grid(basis.grid, lane.grid_ptr());
  const auto xs = lane.xs();
  return basis.u.transpose() *
         Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

Lane reconstruct(const EigenBasis & basis, const Coefficients & c)
{
  if (static_cast<std::size_t>(c.size()) != basis.m) {
    throw Error(
      ErrorCode::DimensionMismatch, "coefficient vector of length " + std::to_string(c.size()) +
                                      " for a rank-" + std::to_string(basis.m) + " basis");
  }
  const Eigen::VectorXd x = basis.u * c;
  return Lane(basis.grid, std::vector<double>(x.data(), x.data() + x.size()));
}

double approximation_error(const LaneMatrix & matrix, const EigenBasis & basis)
{
  require_same_grid(matrix.grid(), basis.grid);
  const Eigen::MatrixXd & a = matrix.columns();
  const Eigen::MatrixXd coeffs = basis.u.transpose() * a;
  const Eigen::MatrixXd residual = a - basis.u * coeffs;
  return residual.squaredNorm();
}

Lane refine(const EigenBasis & basis, const Coefficients & c, const Coefficients & delta)
{
  if (c.size() != delta.size()) {
    throw Error(ErrorCode::DimensionMismatch, "offset length differs from coefficient length");
  }
  return reconstruct(basis, c + delta);
}

}  // namespace eigenlane
