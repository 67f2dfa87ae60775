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

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "eigenlane/candidates.hpp"
#include "eigenlane/dataset.hpp"
#include "eigenlane/eigenspace.hpp"
#include "eigenlane/error.hpp"
#include "eigenlane/lane.hpp"
#include "eigenlane/metrics.hpp"
#include "eigenlane/oracle_scores.hpp"
#include "eigenlane/pipeline.hpp"
#include "eigenlane/serialize.hpp"
#include "eigenlane/svg.hpp"
#include "eigenlane/synthetic.hpp"

namespace fs = std::filesystem;
using namespace eigenlane;
using io::json;

namespace
{

constexpr int kConfigVersion = 1;
constexpr const char * kOutputDirEnv = "EIGENLANE_OUTPUT_DIR";

struct Globals
{
  std::size_t samples = 50;
  std::size_t rank = 4;
  std::size_t k = 16;
  std::size_t t = 10;
  double iou_thresh = 0.5;
  double kappa = 0.3;
  int stripe_width = 30;
  std::uint64_t seed = 0;
  std::string format = "tusimple";
  int image_width = 0;
  int image_height = 0;
  int config_version = 0;
  bool quiet = false;
};

Globals g;

fs::path output_path(const fs::path & p)
{
  fs::path out = p;
  if (const char * dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0' && p.is_relative()) {
    out = fs::path(dir) / p;
  }
  if (out.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(out.parent_path(), ec);
    if (ec) {
      throw Error(ErrorCode::IoError, "cannot create " + out.parent_path().string() + ": " + ec.message());
    }
  }
  return out;
}

void note(const std::string & msg)
{
  if (!g.quiet) {
    std::cerr << msg << '\n';
  }
}

void report_stats(const LoadStats & stats)
{
  if (stats.skipped_lanes > 0 || stats.clipped_points > 0) {
    note(
      "warning: skipped " + std::to_string(stats.skipped_lanes) + " lanes, clipped " +
      std::to_string(stats.clipped_points) + " points");
  }
}

std::vector<DatasetRecord> load_records(const fs::path & path)
{
  LoadStats stats;
  std::vector<DatasetRecord> records;
  const int w = g.image_width;
  const int h = g.image_height;
  if (g.format == "tusimple") {
    records = load_tusimple_jsonl(path, stats, w > 0 ? w : 1280, h > 0 ? h : 720);
  } else if (g.format == "csv") {
    records = load_lane_csv(path, stats, w > 0 ? w : 1280, h > 0 ? h : 720);
  } else if (g.format == "culane") {
    records = load_culane_dir(path, stats, w > 0 ? w : 1640, h > 0 ? h : 590);
  } else {
    throw Error(ErrorCode::SchemaError, "unknown format '" + g.format + "'");
  }
  report_stats(stats);
  if (records.empty()) {
    throw Error(ErrorCode::EmptyInput, "no records in " + path.string());
  }
  return records;
}

GridPtr grid_for(const std::vector<DatasetRecord> & records)
{
  return SamplingGrid::for_image(records.front().image_width, records.front().image_height, g.samples);
}

std::vector<std::vector<Lane>> lanes_per_record(const std::vector<DatasetRecord> & records, const GridPtr & grid)
{
  LoadStats stats;
  std::vector<std::vector<Lane>> out;
  out.reserve(records.size());
  for (const auto & rec : records) {
    out.push_back(record_lanes(rec, grid, stats));
  }
  report_stats(stats);
  return out;
}

template <typename Fn>
void parallel_for(std::size_t n, Fn && fn)
{
  std::exception_ptr failure;
  const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(eigenlane_cli_failure)
      if (!failure) {
        failure = std::current_exception();
      }
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

EigenBasis load_basis(const fs::path & path) { return io::basis_from_json(io::read_json(path)); }

CandidateSet load_candidates(const fs::path & path, const EigenBasis & basis)
{
  auto cands = io::candidates_from_json(io::read_json(path), basis.grid);
  if (cands.basis_id != basis.id()) {
    throw Error(ErrorCode::SchemaError, "candidates were built for basis " + cands.basis_id + ", not " + basis.id());
  }
  return cands;
}

void print_json(const json & doc) { std::cout << doc.dump(2) << '\n'; }

// ---------------------------------------------------------------- commands

struct SynthArgs
{
  std::size_t count = 100;
  double w_straight = 1.0;
  double w_arc = 1.0;
  double w_scurve = 1.0;
  double curvature_min = 1.0 / 5000.0;
  double curvature_max = 1.0 / 800.0;
  double truncate = 0.3;
  std::string out;
};

void run_synth(const SynthArgs & a)
{
  SyntheticSpec spec;
  spec.count = a.count;
  spec.seed = g.seed;
  spec.weight_straight = a.w_straight;
  spec.weight_arc = a.w_arc;
  spec.weight_scurve = a.w_scurve;
  spec.curvature_min = a.curvature_min;
  spec.curvature_max = a.curvature_max;
  spec.truncate_probability = a.truncate;
  if (g.image_width > 0) {
    spec.image_width = g.image_width;
  }
  if (g.image_height > 0) {
    spec.image_height = g.image_height;
  }
  const auto records = generate_synthetic(spec);
  save_tusimple_jsonl(output_path(a.out), records);
  note("wrote " + std::to_string(records.size()) + " records");
}

struct DataArgs
{
  std::string data;
  std::string basis;
  std::string candidates;
  std::string scores;
  std::string detections;
  std::string out;
};

void run_build_basis(const DataArgs & a)
{
  const auto records = load_records(a.data);
  const auto grid = grid_for(records);
  LoadStats stats;
  const auto lanes = dataset_lanes(records, grid, stats);
  report_stats(stats);
  const auto basis = build_basis(LaneMatrix::from_lanes(lanes), g.rank);
  io::write_json(output_path(a.out), io::basis_to_json(basis));
  note("basis " + basis.id() + " from " + std::to_string(lanes.size()) + " lanes, rank " + std::to_string(basis.m));
}

void run_approx(const DataArgs & a)
{
  const auto basis = load_basis(a.basis);
  const auto records = load_records(a.data);
  LoadStats stats;
  const auto lanes = dataset_lanes(records, basis.grid, stats);
  report_stats(stats);
  const auto matrix = LaneMatrix::from_lanes(lanes);
  json rows = json::array();
  for (std::size_t m = 1; m <= basis.m; ++m) {
    const auto b = basis.truncated(m);
    const double err = approximation_error(matrix, b);
    const double rms = std::sqrt(err / static_cast<double>(matrix.rows() * matrix.cols()));
    rows.push_back({{"m", m}, {"error", err}, {"trailing_energy", b.trailing_energy()}, {"rms_px", rms}});
  }
  json doc = {
    {"schema", "eigenlane.report.approx"}, {"version", io::kSchemaVersion}, {"basis_id", basis.id()},
    {"lanes", lanes.size()},              {"ranks", rows}};
  if (!a.out.empty()) {
    io::write_json(output_path(a.out), doc);
  }
  print_json(doc);
}

void run_cluster(const DataArgs & a, std::size_t max_iters, double tolerance)
{
  const auto basis = load_basis(a.basis);
  const auto records = load_records(a.data);
  LoadStats stats;
  const auto lanes = dataset_lanes(records, basis.grid, stats);
  report_stats(stats);
  ClusteringConfig cfg;
  cfg.k = g.k;
  cfg.seed = g.seed;
  cfg.max_iters = max_iters;
  cfg.tolerance = tolerance;
  const auto outcome = cluster_lanes_with_report(basis, lanes, cfg);
  io::write_json(output_path(a.out), io::candidates_to_json(outcome.candidates));
  note(
    "k-means: " + std::to_string(outcome.kmeans.iterations) + " iterations, objective " +
    std::to_string(outcome.kmeans.objective.back()) + (outcome.kmeans.converged ? "" : " (not converged)"));
}

void run_straight(const DataArgs & a, std::size_t n)
{
  const auto basis = load_basis(a.basis);
  io::write_json(output_path(a.out), io::candidates_to_json(straight_anchor_grid(basis, n)));
}

void run_eval_candidates(const DataArgs & a)
{
  const auto basis = load_basis(a.basis);
  const auto cands = load_candidates(a.candidates, basis);
  const auto records = load_records(a.data);
  LoadStats stats;
  const auto lanes = dataset_lanes(records, basis.grid, stats);
  report_stats(stats);
  const double miou = mean_best_iou(cands, lanes, g.stripe_width);
  json doc = {
    {"schema", "eigenlane.report.candidates"},
    {"version", io::kSchemaVersion},
    {"k", cands.k()},
    {"source", cands.source == CandidateSource::Clustered ? "clustered" : "straight_grid"},
    {"test_lanes", lanes.size()},
    {"stripe_width", g.stripe_width},
    {"mean_best_iou", miou}};
  if (!a.out.empty()) {
    io::write_json(output_path(a.out), doc);
  }
  print_json(doc);
}

void run_score_oracle(const DataArgs & a, double prob_sigma, double offset_sigma, double iou_floor)
{
  const auto basis = load_basis(a.basis);
  const auto cands = load_candidates(a.candidates, basis);
  const auto records = load_records(a.data);
  const auto gts = lanes_per_record(records, basis.grid);
  const auto masks = rasterize_all(cands.lanes, g.stripe_width);
  std::vector<io::ImageScores> out(records.size());
  parallel_for(records.size(), [&](std::size_t i) {
    OracleConfig cfg;
    cfg.width = g.stripe_width;
    cfg.iou_floor = iou_floor;
    cfg.noise = {prob_sigma, offset_sigma, g.seed + i};
    auto o = oracle_scores(basis, cands, masks, gts[i], cfg);
    out[i] = {records[i].image_id, std::move(o.scores), std::move(o.features)};
  });
  io::write_json(output_path(a.out), io::scores_to_json(out));
  note("scored " + std::to_string(records.size()) + " images");
}

struct DetectArgs
{
  bool no_mwcs = false;
  bool no_offsets = false;
  bool no_heights = false;
  std::optional<double> stop_below;
};

void run_detect(const DataArgs & a, const DetectArgs & d)
{
  const auto basis = load_basis(a.basis);
  const auto cands = load_candidates(a.candidates, basis);
  const auto scores = io::scores_from_json(io::read_json(a.scores));
  const auto masks = rasterize_all(cands.lanes, g.stripe_width);
  DetectConfig cfg;
  cfg.nms.t = g.t;
  cfg.nms.iou_threshold = g.iou_thresh;
  cfg.nms.width = g.stripe_width;
  cfg.nms.stop_below = d.stop_below;
  cfg.kappa = g.kappa;
  cfg.use_mwcs = !d.no_mwcs;
  cfg.refine.use_offsets = !d.no_offsets;
  cfg.refine.use_heights = !d.no_heights;
  std::vector<io::ImageDetections> out(scores.size());
  parallel_for(scores.size(), [&](std::size_t i) {
    out[i] = {scores[i].image_id, detect(basis, cands, masks, scores[i].scores, scores[i].features, cfg)};
  });
  io::write_json(output_path(a.out), io::detections_to_json(*basis.grid, out));
  note("detected lanes in " + std::to_string(out.size()) + " images");
}

struct EvalArgs
{
  std::string metric = "culane";
  std::vector<std::string> fp_only = {"cross"};
  bool per_image = false;
};

void run_eval(const DataArgs & a, const EvalArgs & e)
{
  const auto dets = io::detections_from_json(io::read_json(a.detections));
  const auto records = load_records(a.data);
  GridPtr grid = dets.empty() || dets.front().detection.lanes.empty() ? nullptr
                                                                       : dets.front().detection.lanes.front().grid_ptr();
  if (!grid) {
    grid = io::grid_from_json(io::read_json(a.detections).at("grid"));
  }
  std::map<std::string, const std::vector<Lane> *> by_id;
  for (const auto & d : dets) {
    by_id[d.image_id] = &d.detection.lanes;
  }
  const auto gts = lanes_per_record(records, grid);
  const std::vector<Lane> none;
  auto preds_for = [&](std::size_t i) -> const std::vector<Lane> & {
    const auto it = by_id.find(records[i].image_id);
    return it == by_id.end() ? none : *it->second;
  };

  json doc;
  if (e.metric == "culane") {
    std::vector<ImageMatch> images(records.size());
    parallel_for(records.size(), [&](std::size_t i) {
      images[i] = match_lanes(preds_for(i), gts[i], g.iou_thresh, g.stripe_width);
      images[i].image_id = records[i].image_id;
      images[i].category = records[i].category;
      images[i].fp_only =
        std::find(e.fp_only.begin(), e.fp_only.end(), records[i].category) != e.fp_only.end();
    });
    doc = io::report_to_json(f_measure(images), e.per_image);
    json cats = json::object();
    for (const auto & [name, rep] : f_measure_by_category(images)) {
      cats[name.empty() ? "(none)" : name] = io::report_to_json(rep, false);
    }
    doc["categories"] = cats;
  } else if (e.metric == "tusimple") {
    std::vector<TuSimpleImage> images(records.size());
    parallel_for(records.size(), [&](std::size_t i) {
      images[i] = tusimple_image(preds_for(i), gts[i]);
      images[i].image_id = records[i].image_id;
    });
    doc = io::report_to_json(tusimple_score(images), e.per_image);
  } else {
    throw Error(ErrorCode::SchemaError, "unknown metric '" + e.metric + "'");
  }
  if (!a.out.empty()) {
    io::write_json(output_path(a.out), doc);
  }
  if (!e.per_image) {
    print_json(doc);
  }
}

struct RenderArgs
{
  std::string image_id;
  std::size_t max_candidates = 50;
};

void run_render(const DataArgs & a, const RenderArgs & r)
{
  const auto records = load_records(a.data);
  auto rec_it = records.begin();
  if (!r.image_id.empty()) {
    rec_it = std::find_if(records.begin(), records.end(), [&](const auto & rec) { return rec.image_id == r.image_id; });
    if (rec_it == records.end()) {
      throw Error(ErrorCode::IndexError, "no record with image_id '" + r.image_id + "'");
    }
  }
  const auto & rec = *rec_it;

  std::vector<SvgLayer> layers;
  GridPtr grid;
  std::vector<Lane> detected;
  if (!a.detections.empty()) {
    const auto doc = io::read_json(a.detections);
    grid = io::grid_from_json(doc.at("grid"));
    for (const auto & d : io::detections_from_json(doc, grid)) {
      if (d.image_id == rec.image_id) {
        detected = d.detection.lanes;
      }
    }
  }
  std::vector<Lane> cand_lanes;
  if (!a.candidates.empty()) {
    const auto cands = io::candidates_from_json(io::read_json(a.candidates), grid);
    grid = cands.lanes.front().grid_ptr();
    const std::size_t n = std::min(r.max_candidates, cands.k());
    cand_lanes.assign(cands.lanes.begin(), cands.lanes.begin() + static_cast<long>(n));
  }
  if (!grid) {
    grid = SamplingGrid::for_image(rec.image_width, rec.image_height, g.samples);
  }
  LoadStats stats;
  if (!cand_lanes.empty()) {
    layers.push_back({"candidates", "#9a9a9a", 1.0, std::move(cand_lanes)});
  }
  layers.push_back({"ground truth", "#1f77b4", 6.0, record_lanes(rec, grid, stats)});
  if (!a.detections.empty()) {
    layers.push_back({"detections", "#d62728", 2.5, std::move(detected)});
  }
  render_svg(output_path(a.out), rec.image_id, rec.image_width, rec.image_height, layers);
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Eigenlane: lane candidates and detection-time selection in a low-rank lane space"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML file overriding any flag; must set config-version = 1");

  app.add_option("--samples", g.samples, "Grid sample count N")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--rank", g.rank, "Eigenlane rank M")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--k", g.k, "Candidate count K")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--t", g.t, "NMS output size T")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--iou-thresh", g.iou_thresh, "IoU threshold for NMS and matching")
    ->capture_default_str()
    ->check(CLI::Range(0.0, 1.0));
  app.add_option("--kappa", g.kappa, "Clique edge threshold")->capture_default_str()->check(CLI::Range(-1.0, 1.0));
  app.add_option("--stripe-width", g.stripe_width, "Stripe width in pixels")
    ->capture_default_str()
    ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--format", g.format, "Annotation format")
    ->capture_default_str()
    ->check(CLI::IsMember({"tusimple", "csv", "culane"}));
  app.add_option("--image-width", g.image_width, "Image width when the format does not carry it");
  app.add_option("--image-height", g.image_height, "Image height when the format does not carry it");
  app.add_option("--config-version", g.config_version, "Config file version")->group("");
  app.add_flag("-q,--quiet", g.quiet, "Suppress progress notes");

  DataArgs da;
  auto data_opt = [&](CLI::App * sub, bool required = true) {
    sub->add_option("--data", da.data, "Annotation file (directory for culane)")->required(required);
  };
  auto out_opt = [&](CLI::App * sub, bool required = true) {
    sub->add_option("-o,--out", da.out, "Output path")->required(required);
  };
  auto basis_opt = [&](CLI::App * sub) { sub->add_option("--basis", da.basis, "Basis JSON")->required(); };
  auto cand_opt = [&](CLI::App * sub, bool required = true) {
    sub->add_option("--candidates", da.candidates, "Candidate set JSON")->required(required);
  };

  SynthArgs sa;
  auto * synth = app.add_subcommand("synth", "Generate a synthetic annotation file (TuSimple JSON lines)");
  synth->add_option("--count", sa.count, "Number of images")->capture_default_str();
  synth->add_option("--straight", sa.w_straight, "Straight family weight")->capture_default_str();
  synth->add_option("--arc", sa.w_arc, "Arc family weight")->capture_default_str();
  synth->add_option("--scurve", sa.w_scurve, "S-curve family weight")->capture_default_str();
  synth->add_option("--curvature-min", sa.curvature_min, "Minimum curvature, 1/px")->capture_default_str();
  synth->add_option("--curvature-max", sa.curvature_max, "Maximum curvature, 1/px")->capture_default_str();
  synth->add_option("--truncate", sa.truncate, "Probability a lane ends early")->capture_default_str();
  synth->add_option("-o,--out", sa.out, "Output path")->required();

  auto * bb = app.add_subcommand("build-basis", "Build the rank-M eigenlane basis from training lanes");
  data_opt(bb);
  out_opt(bb);

  auto * approx = app.add_subcommand("approx", "Rank-M reconstruction error report");
  data_opt(approx);
  basis_opt(approx);
  out_opt(approx, false);

  std::size_t max_iters = 100;
  double tolerance = 1e-4;
  auto * cluster = app.add_subcommand("cluster", "K-means candidates in the eigenlane space");
  data_opt(cluster);
  basis_opt(cluster);
  out_opt(cluster);
  cluster->add_option("--max-iters", max_iters, "Lloyd iteration cap")->capture_default_str();
  cluster->add_option("--tolerance", tolerance, "Centroid shift tolerance, px")->capture_default_str();

  std::size_t n_anchors = 1000;
  auto * straight = app.add_subcommand("straight-anchors", "Straight-line anchor grid baseline");
  basis_opt(straight);
  out_opt(straight);
  straight->add_option("-n,--count", n_anchors, "Number of anchors")->capture_default_str();

  auto * evc = app.add_subcommand("eval-candidates", "Mean best-match IoU of a candidate set");
  data_opt(evc);
  basis_opt(evc);
  cand_opt(evc);
  out_opt(evc, false);

  double prob_sigma = 0.0;
  double offset_sigma = 0.0;
  double iou_floor = 0.3;
  auto * so = app.add_subcommand("score-oracle", "Per-candidate scores derived from ground truth");
  data_opt(so);
  basis_opt(so);
  cand_opt(so);
  out_opt(so);
  so->add_option("--prob-noise", prob_sigma, "Std-dev of probability noise")->capture_default_str();
  so->add_option("--offset-noise", offset_sigma, "Std-dev of offset noise, px")->capture_default_str();
  so->add_option("--iou-floor", iou_floor, "Minimum IoU for an offset target")->capture_default_str();

  DetectArgs dargs;
  double stop_below = -1.0;
  auto * det = app.add_subcommand("detect", "NMS, relation, clique selection and refinement");
  basis_opt(det);
  cand_opt(det);
  det->add_option("--scores", da.scores, "Scores JSON")->required();
  out_opt(det);
  det->add_flag("--no-mwcs", dargs.no_mwcs, "Keep every NMS pick");
  det->add_flag("--no-offsets", dargs.no_offsets, "Skip offset refinement");
  det->add_flag("--no-heights", dargs.no_heights, "Keep full-length lanes");
  auto * stop_opt = det->add_option("--stop-below", stop_below, "Stop NMS below this probability");

  EvalArgs eargs;
  auto * ev = app.add_subcommand("eval", "Score detections against ground truth");
  data_opt(ev);
  ev->add_option("--detections", da.detections, "Detections JSON")->required();
  out_opt(ev, false);
  ev->add_option("--metric", eargs.metric, "culane (F-measure) or tusimple")
    ->capture_default_str()
    ->check(CLI::IsMember({"culane", "tusimple"}));
  ev->add_option("--fp-only", eargs.fp_only, "Categories scored on false positives only")->capture_default_str();
  ev->add_flag("--per-image", eargs.per_image, "Include per-image rows in the written report");

  RenderArgs rargs;
  auto * render = app.add_subcommand("render", "Draw one image's lanes as SVG");
  data_opt(render);
  render->add_option("--image-id", rargs.image_id, "Record to draw (default: first)");
  cand_opt(render, false);
  render->add_option("--detections", da.detections, "Detections JSON");
  render->add_option("--max-candidates", rargs.max_candidates, "Candidate lanes drawn")->capture_default_str();
  out_opt(render);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.get_config_ptr()->count() > 0 && g.config_version != kConfigVersion) {
      throw Error(
        ErrorCode::VersionError, "config file must set config-version = " + std::to_string(kConfigVersion) +
                                   " (got " + std::to_string(g.config_version) + ")");
    }
    if (stop_opt->count() > 0) {
      dargs.stop_below = stop_below;
    }
    if (synth->parsed()) {
      run_synth(sa);
    } else if (bb->parsed()) {
      run_build_basis(da);
    } else if (approx->parsed()) {
      run_approx(da);
    } else if (cluster->parsed()) {
      run_cluster(da, max_iters, tolerance);
    } else if (straight->parsed()) {
      run_straight(da, n_anchors);
    } else if (evc->parsed()) {
      run_eval_candidates(da);
    } else if (so->parsed()) {
      run_score_oracle(da, prob_sigma, offset_sigma, iou_floor);
    } else if (det->parsed()) {
      run_detect(da, dargs);
    } else if (ev->parsed()) {
      run_eval(da, eargs);
    } else if (render->parsed()) {
      run_render(da, rargs);
    }
  } catch (const Error & e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.is_validation() ? 2 : 1;
  } catch (const json::exception & e) {
    std::cerr << "error: malformed document: " << e.what() << '\n';
    return 2;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
