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

#ifndef EIGENLANE_TESTS__ORACLES_HPP_
#define EIGENLANE_TESTS__ORACLES_HPP_

// Independent reference implementations used only by the tests. None of them
// call into the library code they check.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle
{

/// Singular values of A from the eigenvalues of A^T A, found one at a time by
/// power iteration with Hotelling deflation.
inline std::vector<double> power_singular_values(const Eigen::MatrixXd & a, std::size_t count)
{
  Eigen::MatrixXd b = a.transpose() * a;
  const Eigen::Index n = b.rows();
  std::vector<double> out;
  for (std::size_t k = 0; k < count; ++k) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      v(i) = 1.0 + 0.37 * static_cast<double>(i) + 0.11 * static_cast<double>(k * i % 5);
    }
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 200000; ++it) {
      Eigen::VectorXd w = b * v;
      const double norm = w.norm();
      if (norm == 0.0) {
        lambda = 0.0;
        break;
      }
      w /= norm;
      const double next = w.dot(b * w);
      const bool done = (w - v).norm() < 1e-15 || (w + v).norm() < 1e-15;
      v = w;
      if (done || (it > 100 && std::abs(next - lambda) <= 1e-16 * std::abs(next))) {
        lambda = next;
        break;
      }
      lambda = next;
    }
    out.push_back(std::sqrt(std::max(lambda, 0.0)));
    b -= lambda * v * v.transpose();
  }
  return out;
}

/// Piecewise-linear x(y) through points sorted by ascending y, extended
/// linearly past both ends.
inline double interp(const std::vector<std::pair<double, double>> & yx, double y)
{
  std::size_t i = 1;
  while (i + 1 < yx.size() && yx[i].first < y) {
    ++i;
  }
  const auto [y0, x0] = yx[i - 1];
  const auto [y1, x1] = yx[i];
  return x0 + (x1 - x0) * (y - y0) / (y1 - y0);
}

using PixelSet = std::set<std::pair<int, int>>;

/// Pixels (row, col) of a stripe: every integer row between the lane's
/// highest valid sample and the bottom sample, every column whose pixel center
/// lies in [x - w/2, x + w/2), clipped to the image.
inline PixelSet stripe_pixels(
  const std::vector<double> & ys, const std::vector<double> & xs, std::size_t top, int image_w, int image_h, int w)
{
  PixelSet px;
  if (top == 0) {
    return px;
  }
  std::vector<std::pair<double, double>> yx;
  for (std::size_t i = 0; i < top; ++i) {
    yx.emplace_back(ys[i], xs[i]);
  }
  std::sort(yx.begin(), yx.end());
  for (int r = 0; r < image_h; ++r) {
    if (r < yx.front().first - 1e-9 || r > yx.back().first + 1e-9) {
      continue;
    }
    const double x = yx.size() == 1 ? yx.front().second : interp(yx, r);
    for (int c = 0; c < image_w; ++c) {
      const double center = c + 0.5;
      if (center >= x - 0.5 * w && center < x + 0.5 * w) {
        px.emplace(r, c);
      }
    }
  }
  return px;
}

inline double set_iou(const PixelSet & a, const PixelSet & b)
{
  std::size_t inter = 0;
  for (const auto & p : a) {
    inter += b.count(p);
  }
  const std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

/// Greedy NMS phrased as a single sweep in descending-probability order: a
/// candidate is kept unless it overlaps an already kept one by more than
/// the threshold.
inline std::vector<std::size_t> greedy_nms(
  const std::vector<std::vector<double>> & iou, const std::vector<double> & p, std::size_t t, double thr)
{
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    if (kept.size() == t) {
      break;
    }
    bool ok = true;
    for (std::size_t k : kept) {
      if (iou[k][i] > thr) {
        ok = false;
        break;
      }
    }
    if (ok) {
      kept.push_back(i);
    }
  }
  return kept;
}

struct CliqueAnswer
{
  std::vector<std::size_t> members;
  double weight = 0.0;
  bool fallback = false;
};

/// Exhaustive search over all 2^T subsets.
inline CliqueAnswer brute_force_mwcs(const Eigen::MatrixXd & r, const std::vector<double> & p, double kappa)
{
  const std::size_t t = static_cast<std::size_t>(r.rows());
  const Eigen::MatrixXd w = 0.5 * (r + r.transpose());
  CliqueAnswer best;
  bool found = false;
  for (std::uint32_t mask = 0; mask < (1u << t); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < t; ++i) {
      if (mask & (1u << i)) {
        s.push_back(i);
      }
    }
    if (s.size() < 2) {
      continue;
    }
    bool feasible = true;
    double sum = 0.0;
    for (std::size_t a = 0; a < s.size() && feasible; ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        const double e = w(static_cast<Eigen::Index>(s[a]), static_cast<Eigen::Index>(s[b]));
        if (!(e > kappa)) {
          feasible = false;
          break;
        }
        sum += e;
      }
    }
    if (!feasible) {
      continue;
    }
    bool better = !found;
    if (found) {
      const double tol = 1e-12 * std::max({1.0, std::abs(sum), std::abs(best.weight)});
      if (sum > best.weight + tol) {
        better = true;
      } else if (sum >= best.weight - tol) {
        better = s.size() > best.members.size() || (s.size() == best.members.size() && s < best.members);
      }
    }
    if (better) {
      best.members = s;
      best.weight = sum;
      found = true;
    }
  }
  if (!found) {
    const auto it = std::max_element(p.begin(), p.end());
    best.members = {static_cast<std::size_t>(it - p.begin())};
    best.weight = 0.0;
    best.fallback = true;
  }
  return best;
}

/// Nearest column of `centroids` for each column of `points`, lowest index on
/// ties.
inline std::vector<std::size_t> brute_assign(const Eigen::MatrixXd & points, const Eigen::MatrixXd & centroids)
{
  std::vector<std::size_t> labels(static_cast<std::size_t>(points.cols()));
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < centroids.cols(); ++j) {
      double d = 0.0;
      for (Eigen::Index r = 0; r < points.rows(); ++r) {
        const double diff = points(r, i) - centroids(r, j);
        d += diff * diff;
      }
      if (d < best) {
        best = d;
        labels[static_cast<std::size_t>(i)] = static_cast<std::size_t>(j);
      }
    }
  }
  return labels;
}

/// Size of a maximum bipartite matching by exhaustive search (small inputs).
inline std::size_t brute_max_matching(std::size_t np, std::size_t ng, const std::vector<bool> & allowed)
{
  std::size_t best = 0;
  std::vector<bool> used(ng, false);
  auto rec = [&](auto && self, std::size_t p, std::size_t count) -> void {
    if (p == np) {
      best = std::max(best, count);
      return;
    }
    self(self, p + 1, count);
    for (std::size_t g = 0; g < ng; ++g) {
      if (!used[g] && allowed[p * ng + g]) {
        used[g] = true;
        self(self, p + 1, count + 1);
        used[g] = false;
      }
    }
  };
  rec(rec, 0, 0);
  return best;
}

}  // namespace oracle

#endif  // EIGENLANE_TESTS__ORACLES_HPP_
