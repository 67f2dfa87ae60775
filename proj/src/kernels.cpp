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

#include "eigenlane/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eigenlane::kernels
{

int max_threads() noexcept
{
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void iou_row_serial(const StripeMask & query, std::span<const StripeMask> targets, std::span<double> out)
{
  for (std::size_t j = 0; j < targets.size(); ++j) {
    out[j] = stripe_iou(query, targets[j]);
  }
}

void iou_row_parallel(const StripeMask & query, std::span<const StripeMask> targets, std::span<double> out)
{
  const auto n = static_cast<std::int64_t>(targets.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < n; ++j) {
    out[static_cast<std::size_t>(j)] = stripe_iou(query, targets[static_cast<std::size_t>(j)]);
  }
}

std::vector<double> pairwise_iou_serial(std::span<const StripeMask> a, std::span<const StripeMask> b)
{
  std::vector<double> out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i * b.size() + j] = stripe_iou(a[i], b[j]);
    }
  }
  return out;
}

std::vector<double> pairwise_iou_parallel(std::span<const StripeMask> a, std::span<const StripeMask> b)
{
  std::vector<double> out(a.size() * b.size());
  const auto rows = static_cast<std::int64_t>(a.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < rows; ++i) {
    const auto r = static_cast<std::size_t>(i);
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[r * b.size() + j] = stripe_iou(a[r], b[j]);
    }
  }
  return out;
}

namespace
{

BestMatch best_for(const StripeMask & q, std::span<const StripeMask> targets)
{
  BestMatch best;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const double v = stripe_iou(q, targets[j]);
    if (v > best.iou) {
      best.iou = v;
      best.index = j;
    }
  }
  return best;
}

}  // namespace

std::vector<BestMatch> best_match_serial(std::span<const StripeMask> queries, std::span<const StripeMask> targets)
{
  std::vector<BestMatch> out(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    out[i] = best_for(queries[i], targets);
  }
  return out;
}

std::vector<BestMatch> best_match_parallel(std::span<const StripeMask> queries, std::span<const StripeMask> targets)
{
  std::vector<BestMatch> out(queries.size());
  const auto n = static_cast<std::int64_t>(queries.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = best_for(queries[static_cast<std::size_t>(i)], targets);
  }
  return out;
}

namespace
{

void assign_one(
  const Eigen::MatrixXd & points, const Eigen::MatrixXd & centroids, Eigen::Index i,
  std::size_t & label, double & dist2)
{
  const Eigen::Index d = points.rows();
  const double * p = points.data() + i * d;
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (Eigen::Index k = 0; k < centroids.cols(); ++k) {
    const double * c = centroids.data() + k * d;
    double s = 0.0;
    for (Eigen::Index t = 0; t < d; ++t) {
      const double diff = p[t] - c[t];
      s += diff * diff;
    }
    if (s < best) {
      best = s;
      arg = static_cast<std::size_t>(k);
    }
  }
  label = arg;
  dist2 = best;
}

}  // namespace

Assignment assign_serial(const Eigen::MatrixXd & points, const Eigen::MatrixXd & centroids)
{
  Assignment out;
  out.labels.resize(static_cast<std::size_t>(points.cols()));
  out.dist2.resize(out.labels.size());
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    assign_one(points, centroids, i, out.labels[k], out.dist2[k]);
  }
  return out;
}

Assignment assign_parallel(const Eigen::MatrixXd & points, const Eigen::MatrixXd & centroids)
{
  Assignment out;
  out.labels.resize(static_cast<std::size_t>(points.cols()));
  out.dist2.resize(out.labels.size());
  const auto n = static_cast<std::int64_t>(points.cols());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    assign_one(points, centroids, static_cast<Eigen::Index>(i), out.labels[k], out.dist2[k]);
  }
  return out;
}

bool clique_better(const Clique & a, const Clique & b) noexcept
{
  if (b.members.empty()) {
    return !a.members.empty();
  }
  if (a.members.empty()) {
    return false;
  }
  const double tol = kCliqueTieTolerance * std::max({1.0, std::abs(a.weight), std::abs(b.weight)});
  if (a.weight > b.weight + tol) {
    return true;
  }
  if (a.weight < b.weight - tol) {
    return false;
  }
  if (a.members.size() != b.members.size()) {
    return a.members.size() > b.members.size();
  }
  return std::lexicographical_compare(
    a.members.begin(), a.members.end(), b.members.begin(), b.members.end());
}

namespace
{

// Depth-first enumeration of every clique whose members all pairwise pass
// the edge test. Each clique is visited once, extended only by larger indices.
class CliqueSearch
{
public:
  CliqueSearch(const Eigen::MatrixXd & w, double kappa) : w_(w), n_(static_cast<std::size_t>(w.rows()))
  {
    ok_.assign(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        ok_[i * n_ + j] = i != j && w_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) > kappa;
      }
    }
  }

  Clique run_from(std::size_t first)
  {
    best_ = Clique{};
    current_.clear();
    current_.push_back(first);
    extend(first, 0.0);
    return best_;
  }

private:
  void extend(std::size_t last, double weight)
  {
    if (current_.size() >= 2) {
      Clique c{current_, weight};
      if (clique_better(c, best_)) {
        best_ = std::move(c);
      }
    }
    for (std::size_t v = last + 1; v < n_; ++v) {
      bool feasible = true;
      double gain = 0.0;
      for (std::size_t u : current_) {
        if (!ok_[u * n_ + v]) {
          feasible = false;
          break;
        }
        gain += w_(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v));
      }
      if (!feasible) {
        continue;
      }
      current_.push_back(v);
      extend(v, weight + gain);
      current_.pop_back();
    }
  }

  const Eigen::MatrixXd & w_;
  std::size_t n_;
  std::vector<std::uint8_t> ok_;
  std::vector<std::size_t> current_;
  Clique best_;
};

Clique reduce(std::vector<Clique> & per_first)
{
  Clique best;
  for (auto & c : per_first) {
    if (clique_better(c, best)) {
      best = std::move(c);
    }
  }
  return best;
}

}  // namespace

Clique max_weight_clique_serial(const Eigen::MatrixXd & weights, double kappa)
{
  const auto n = static_cast<std::size_t>(weights.rows());
  std::vector<Clique> per_first(n);
  CliqueSearch search(weights, kappa);
  for (std::size_t v = 0; v < n; ++v) {
    per_first[v] = search.run_from(v);
  }
  return reduce(per_first);
}

Clique max_weight_clique_parallel(const Eigen::MatrixXd & weights, double kappa)
{
  const auto n = static_cast<std::int64_t>(weights.rows());
  std::vector<Clique> per_first(static_cast<std::size_t>(n));
#pragma omp parallel
  {
    CliqueSearch search(weights, kappa);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t v = 0; v < n; ++v) {
      per_first[static_cast<std::size_t>(v)] = search.run_from(static_cast<std::size_t>(v));
    }
  }
  // Fixed reduction order keeps the result independent of thread timing.
  return reduce(per_first);
}

}  // namespace eigenlane::kernels
