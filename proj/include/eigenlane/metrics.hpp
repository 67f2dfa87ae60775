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

#ifndef EIGENLANE__METRICS_HPP_
#define EIGENLANE__METRICS_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eigenlane/lane.hpp"

namespace eigenlane
{

/// Stripe-IoU matching result for one image.
struct ImageMatch
{
  std::string image_id;
  std::string category;
  bool fp_only = false;  ///< category scored on false positives alone
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::vector<std::pair<std::size_t, std::size_t>> matches;  ///< (pred, gt)
  std::vector<double> best_iou_pred;  ///< per prediction, best IoU against any gt
  std::vector<double> best_iou_gt;    ///< per gt, best IoU against any prediction
  /// A maximum one-to-one matching would have produced more true positives.
  bool greedy_suboptimal = false;
};

/// Greedy one-to-one matching in descending IoU order (ties: lower pred
/// index, then lower gt index). Pairs above the threshold are true positives.
ImageMatch match_lanes(
  std::span<const Lane> predictions, std::span<const Lane> ground_truth, double iou_threshold = 0.5,
  int width = 30);

struct MatchReport
{
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  std::vector<ImageMatch> per_image;
};

/// Precision, recall and their harmonic mean from summed counts. Each ratio is
/// 0 when its denominator is 0.
MatchReport f_measure(std::size_t tp, std::size_t fp, std::size_t fn);
MatchReport f_measure(std::span<const ImageMatch> images);

/// One report per category tag. FP-only images contribute false positives
/// alone.
std::map<std::string, MatchReport> f_measure_by_category(std::span<const ImageMatch> images);

struct TuSimpleConfig
{
  double distance_threshold = 20.0;   ///< pixels, strict
  double lane_accuracy_floor = 0.85;  ///< below this a matched lane is wrong
};

struct TuSimpleImage
{
  std::string image_id;
  std::size_t n_correct = 0;
  std::size_t n_gt_points = 0;
  std::size_t n_pred = 0;
  std::size_t n_gt = 0;
  std::size_t false_pred = 0;
  std::size_t missed = 0;
  std::vector<std::pair<std::size_t, std::size_t>> matches;  ///< (pred, gt)
  std::vector<double> lane_accuracy;                         ///< per match
};

struct PointAccuracyReport
{
  std::size_t n_correct = 0;
  std::size_t n_gt_points = 0;
  std::size_t n_pred = 0;
  std::size_t n_gt = 0;
  std::size_t false_pred = 0;
  std::size_t missed = 0;
  double accuracy = 0.0;
  double fpr = 0.0;
  double fnr = 0.0;
  std::vector<TuSimpleImage> per_image;
};

/// Point accuracy on shared grid rows. Lanes are paired greedily by per-lane
/// accuracy (descending); a gt point is correct when the paired prediction is
/// valid at that row and closer than the distance threshold.
TuSimpleImage tusimple_image(
  std::span<const Lane> predictions, std::span<const Lane> ground_truth, const TuSimpleConfig & config = {});

PointAccuracyReport tusimple_score(std::span<const TuSimpleImage> images);

}  // namespace eigenlane

#endif  // EIGENLANE__METRICS_HPP_
