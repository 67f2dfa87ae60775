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

#include "eigenlane/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <tuple>

#include "eigenlane/kernels.hpp"

namespace eigenlane
{

namespace
{

// Size of a maximum bipartite matching over the allowed (pred, gt) pairs.
std::size_t max_matching(std::size_t n_pred, std::size_t n_gt, const std::vector<bool> & allowed)
{
  std::vector<long> gt_owner(n_gt, -1);
  std::size_t size = 0;
  for (std::size_t p = 0; p < n_pred; ++p) {
    std::vector<bool> seen(n_gt, false);
    std::function<bool(std::size_t)> augment = [&](std::size_t u) {
      for (std::size_t g = 0; g < n_gt; ++g) {
        if (!allowed[u * n_gt + g] || seen[g]) {
          continue;
        }
        seen[g] = true;
        if (gt_owner[g] < 0 || augment(static_cast<std::size_t>(gt_owner[g]))) {
          gt_owner[g] = static_cast<long>(u);
          return true;
        }
      }
      return false;
    };
    size += augment(p) ? 1 : 0;
  }
  return size;
}

}  // namespace

ImageMatch match_lanes(
  std::span<const Lane> predictions, std::span<const Lane> ground_truth, double iou_threshold, int width)
{
  for (const auto & p : predictions) {
    for (const auto & g : ground_truth) {
      require_same_grid(p.grid_ptr(), g.grid_ptr());
    }
  }
  const std::size_t np = predictions.size();
  const std::size_t ng = ground_truth.size();
  const auto pm = rasterize_all(predictions, width);
  const auto gm = rasterize_all(ground_truth, width);
  const std::vector<double> iou = kernels::pairwise_iou_serial(pm, gm);

  ImageMatch out;
  out.best_iou_pred.assign(np, 0.0);
  out.best_iou_gt.assign(ng, 0.0);
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  std::vector<bool> allowed(np * ng, false);
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t g = 0; g < ng; ++g) {
      const double v = iou[p * ng + g];
      out.best_iou_pred[p] = std::max(out.best_iou_pred[p], v);
      out.best_iou_gt[g] = std::max(out.best_iou_gt[g], v);
      if (v > iou_threshold) {
        pairs.emplace_back(v, p, g);
        allowed[p * ng + g] = true;
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto & a, const auto & b) {
    if (std::get<0>(a) != std::get<0>(b)) {
      return std::get<0>(a) > std::get<0>(b);
    }
    if (std::get<1>(a) != std::get<1>(b)) {
      return std::get<1>(a) < std::get<1>(b);
    }
    return std::get<2>(a) < std::get<2>(b);
  });
  std::vector<bool> pred_used(np, false);
  std::vector<bool> gt_used(ng, false);
  for (const auto & [v, p, g] : pairs) {
    if (pred_used[p] || gt_used[g]) {
      continue;
    }
    pred_used[p] = gt_used[g] = true;
    out.matches.emplace_back(p, g);
  }
  out.tp = out.matches.size();
  out.fp = np - out.tp;
  out.fn = ng - out.tp;
  out.greedy_suboptimal = max_matching(np, ng, allowed) > out.tp;
  return out;
}

MatchReport f_measure(std::size_t tp, std::size_t fp, std::size_t fn)
{
  MatchReport r;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  r.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  r.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  r.f_measure = r.precision + r.recall > 0.0
                  ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
                  : 0.0;
  return r;
}

MatchReport f_measure(std::span<const ImageMatch> images)
{
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  for (const auto & im : images) {
    tp += im.tp;
    fp += im.fp;
    fn += im.fn;
  }
  MatchReport r = f_measure(tp, fp, fn);
  r.per_image.assign(images.begin(), images.end());
  return r;
}

std::map<std::string, MatchReport> f_measure_by_category(std::span<const ImageMatch> images)
{
  std::map<std::string, std::vector<ImageMatch>> groups;
  for (const auto & im : images) {
    ImageMatch copy = im;
    if (copy.fp_only) {
      copy.tp = 0;
      copy.fn = 0;
    }
    groups[im.category].push_back(std::move(copy));
  }
  std::map<std::string, MatchReport> out;
  for (auto & [cat, list] : groups) {
    out.emplace(cat, f_measure(list));
  }
  return out;
}

TuSimpleImage tusimple_image(
  std::span<const Lane> predictions, std::span<const Lane> ground_truth, const TuSimpleConfig & config)
{
  for (const auto & p : predictions) {
    for (const auto & g : ground_truth) {
      require_same_grid(p.grid_ptr(), g.grid_ptr());
    }
  }
  const std::size_t np = predictions.size();
  const std::size_t ng = ground_truth.size();
  TuSimpleImage out;
  out.n_pred = np;
  out.n_gt = ng;

  std::vector<std::size_t> correct(np * ng, 0);
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t p = 0; p < np; ++p) {
    const auto px = predictions[p].xs();
    for (std::size_t g = 0; g < ng; ++g) {
      const auto gx = ground_truth[g].xs();
      const std::size_t n_points = ground_truth[g].top_index();
      const std::size_t valid = std::min(n_points, predictions[p].top_index());
      std::size_t c = 0;
      for (std::size_t i = 0; i < valid; ++i) {
        c += std::abs(px[i] - gx[i]) < config.distance_threshold ? 1 : 0;
      }
      correct[p * ng + g] = c;
      const double acc = n_points > 0 ? static_cast<double>(c) / static_cast<double>(n_points) : 0.0;
      pairs.emplace_back(acc, p, g);
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto & a, const auto & b) {
    if (std::get<0>(a) != std::get<0>(b)) {
      return std::get<0>(a) > std::get<0>(b);
    }
    if (std::get<1>(a) != std::get<1>(b)) {
      return std::get<1>(a) < std::get<1>(b);
    }
    return std::get<2>(a) < std::get<2>(b);
  });

  std::vector<bool> pred_used(np, false);
  std::vector<bool> gt_used(ng, false);
  for (const auto & [acc, p, g] : pairs) {
    if (pred_used[p] || gt_used[g]) {
      continue;
    }
    pred_used[p] = gt_used[g] = true;
    out.matches.emplace_back(p, g);
    out.lane_accuracy.push_back(acc);
    out.n_correct += correct[p * ng + g];
    if (acc < config.lane_accuracy_floor) {
      ++out.false_pred;
      ++out.missed;
    }
  }
  for (std::size_t p = 0; p < np; ++p) {
    out.false_pred += pred_used[p] ? 0 : 1;
  }
  for (std::size_t g = 0; g < ng; ++g) {
    out.missed += gt_used[g] ? 0 : 1;
    out.n_gt_points += ground_truth[g].top_index();
  }
  return out;
}

PointAccuracyReport tusimple_score(std::span<const TuSimpleImage> images)
{
  PointAccuracyReport r;
  for (const auto & im : images) {
    r.n_correct += im.n_correct;
    r.n_gt_points += im.n_gt_points;
    r.n_pred += im.n_pred;
    r.n_gt += im.n_gt;
    r.false_pred += im.false_pred;
    r.missed += im.missed;
  }
  r.accuracy = r.n_gt_points > 0 ? static_cast<double>(r.n_correct) / static_cast<double>(r.n_gt_points) : 0.0;
  r.fpr = r.n_pred > 0 ? static_cast<double>(r.false_pred) / static_cast<double>(r.n_pred) : 0.0;
  r.fnr = r.n_gt > 0 ? static_cast<double>(r.missed) / static_cast<double>(r.n_gt) : 0.0;
  r.per_image.assign(images.begin(), images.end());
  return r;
}

}  // namespace eigenlane
