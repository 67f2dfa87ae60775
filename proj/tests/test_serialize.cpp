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

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <vector>

#include "eigenlane/candidates.hpp"
#include "eigenlane/dataset.hpp"
#include "eigenlane/error.hpp"
#include "eigenlane/oracle_scores.hpp"
#include "eigenlane/serialize.hpp"
#include "eigenlane/synthetic.hpp"

using namespace eigenlane;
namespace fs = std::filesystem;

namespace
{

ErrorCode code_of(auto && fn)
{
  try {
    fn();
  } catch (const Error & e) {
    return e.code();
  }
  FAIL("expected an eigenlane::Error");
  return ErrorCode::IoError;
}

bool same_lane(const Lane & a, const Lane & b)
{
  return a.top_index() == b.top_index() && std::ranges::equal(a.xs(), b.xs());
}

fs::path scratch_dir(const std::string & name)
{
  const fs::path dir = fs::temp_directory_path() / ("eigenlane_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct Fixture
{
  GridPtr grid = SamplingGrid::for_image(1280, 720, 50);
  std::vector<Lane> lanes;
  EigenBasis basis;
  CandidateSet candidates;

  Fixture()
  {
    SyntheticSpec spec;
    spec.count = 150;
    spec.seed = 61;
    LoadStats stats;
    lanes = dataset_lanes(generate_synthetic(spec), grid, stats);
    basis = build_basis(LaneMatrix::from_lanes(lanes), 5);
    ClusteringConfig cfg;
    cfg.k = 20;
    candidates = cluster_lanes(basis, lanes, cfg);
  }
};

}  // namespace

TEST_CASE("basis survives a file round trip exactly")
{
  Fixture fx;
  const fs::path path = scratch_dir("basis") / "basis.json";
  io::write_json(path, io::basis_to_json(fx.basis));
  const EigenBasis back = io::basis_from_json(io::read_json(path));
  CHECK(back.m == fx.basis.m);
  CHECK(back.u == fx.basis.u);
  CHECK(back.singular_values == fx.basis.singular_values);
  CHECK(*back.grid == *fx.basis.grid);
  CHECK(back.id() == fx.basis.id());
  const auto matrix = LaneMatrix::from_lanes(fx.lanes);
  const double before = approximation_error(matrix, fx.basis);
  const double after = approximation_error(matrix, back);
  CHECK(after == doctest::Approx(before).epsilon(1e-12));
}

TEST_CASE("candidates round trip")
{
  Fixture fx;
  const auto back = io::candidates_from_json(io::candidates_to_json(fx.candidates), fx.grid);
  REQUIRE(back.k() == fx.candidates.k());
  CHECK(back.basis_id == fx.candidates.basis_id);
  CHECK(back.source == fx.candidates.source);
  for (std::size_t i = 0; i < back.k(); ++i) {
    CHECK(back.coefficients[i] == fx.candidates.coefficients[i]);
    CHECK(same_lane(back.lanes[i], fx.candidates.lanes[i]));
    CHECK(&back.lanes[i].grid() == fx.grid.get());
  }
  const auto straight = straight_anchor_grid(fx.basis, 12);
  const auto s_back = io::candidates_from_json(io::candidates_to_json(straight));
  CHECK(s_back.source == CandidateSource::StraightGrid);
  CHECK(s_back.k() == straight.k());

  CandidateSet empty;
  CHECK(io::candidates_from_json(io::candidates_to_json(empty)).k() == 0);
}

TEST_CASE("scores, relation and feature grid round trip")
{
  Fixture fx;
  const auto masks = rasterize_all(fx.candidates.lanes, 30);
  const std::vector<Lane> gt(fx.lanes.begin(), fx.lanes.begin() + 3);
  OracleConfig cfg;
  cfg.noise = {0.05, 1.0, 3};
  const auto oracle = oracle_scores(fx.basis, fx.candidates, masks, gt, cfg);
  const std::vector<io::ImageScores> images = {{"img/0", oracle.scores, oracle.features}};
  const auto back = io::scores_from_json(io::scores_to_json(images));
  REQUIRE(back.size() == 1);
  CHECK(back[0].image_id == "img/0");
  CHECK(back[0].scores.probabilities == oracle.scores.probabilities);
  CHECK(back[0].scores.heights == oracle.scores.heights);
  CHECK(back[0].scores.offsets == oracle.scores.offsets);
  CHECK(back[0].scores.height_grid == oracle.scores.height_grid);
  CHECK(back[0].features == oracle.features);

  const auto rel = relation_from_features(oracle.features);
  const auto rel_back = io::relation_from_json(io::relation_to_json(rel));
  CHECK(rel_back.values == rel.values);
  CHECK(rel_back.zero_rows == rel.zero_rows);

  FeatureGrid fg(4, 5, 3);
  for (std::size_t i = 0; i < fg.values.size(); ++i) {
    fg.values[i] = 0.1 * static_cast<double>(i) - 1.0;
  }
  const auto fg_back = io::feature_grid_from_json(io::feature_grid_to_json(fg));
  CHECK(fg_back.height == 4);
  CHECK(fg_back.width == 5);
  CHECK(fg_back.channels == 3);
  CHECK(fg_back.values == fg.values);
}

TEST_CASE("detections round trip")
{
  Fixture fx;
  const auto masks = rasterize_all(fx.candidates.lanes, 30);
  const std::vector<Lane> gt(fx.lanes.begin(), fx.lanes.begin() + 4);
  const auto oracle = oracle_scores(fx.basis, fx.candidates, masks, gt);
  const Detection det = detect(fx.basis, fx.candidates, masks, oracle.scores, oracle.features, DetectConfig{});
  const std::vector<io::ImageDetections> images = {{"a", det}, {"b", Detection{}}};
  const auto back = io::detections_from_json(io::detections_to_json(*fx.grid, images), fx.grid);
  REQUIRE(back.size() == 2);
  const Detection & d = back[0].detection;
  CHECK(back[0].image_id == "a");
  CHECK(d.nms_picks == det.nms_picks);
  CHECK(d.selected == det.selected);
  CHECK(d.clique.members == det.clique.members);
  CHECK(d.clique.compatibility == det.clique.compatibility);
  CHECK(d.clique.fallback == det.clique.fallback);
  CHECK(d.relation.values == det.relation.values);
  REQUIRE(d.lanes.size() == det.lanes.size());
  for (std::size_t i = 0; i < d.lanes.size(); ++i) {
    CHECK(same_lane(d.lanes[i], det.lanes[i]));
  }
  CHECK(back[1].detection.lanes.empty());
}

TEST_CASE("reports carry their schema and counts")
{
  Fixture fx;
  const std::vector<Lane> gt(fx.lanes.begin(), fx.lanes.begin() + 2);
  auto im = match_lanes(gt, gt);
  im.image_id = "x";
  const std::vector<ImageMatch> ims = {im};
  const auto report = f_measure(ims);
  const auto doc = io::report_to_json(report);
  CHECK(doc["schema"] == "eigenlane.report.culane");
  CHECK(doc["tp"] == 2);
  CHECK(doc["images"].size() == 1);
  CHECK_FALSE(io::report_to_json(report, false).contains("images"));

  const std::vector<TuSimpleImage> tus = {tusimple_image(gt, gt)};
  const auto tdoc = io::report_to_json(tusimple_score(tus));
  CHECK(tdoc["schema"] == "eigenlane.report.tusimple");
  CHECK(tdoc["accuracy"] == 1.0);
}

TEST_CASE("corrupt documents are rejected with the right code")
{
  Fixture fx;
  auto doc = io::basis_to_json(fx.basis);

  auto bad_u = doc;
  bad_u["u"].erase(bad_u["u"].begin());
  CHECK(code_of([&] { io::basis_from_json(bad_u); }) == ErrorCode::SchemaError);

  auto str_u = doc;
  str_u["u"][0] = "zero";
  CHECK(code_of([&] { io::basis_from_json(str_u); }) == ErrorCode::SchemaError);

  auto version = doc;
  version["version"] = 2;
  CHECK(code_of([&] { io::basis_from_json(version); }) == ErrorCode::VersionError);

  auto schema = doc;
  schema["schema"] = "eigenlane.candidates";
  CHECK(code_of([&] { io::basis_from_json(schema); }) == ErrorCode::SchemaError);

  auto missing = doc;
  missing.erase("singular_values");
  CHECK(code_of([&] { io::basis_from_json(missing); }) == ErrorCode::SchemaError);

  auto rank = doc;
  rank["singular_values"] = std::vector<double>{1.0};
  CHECK(code_of([&] { io::basis_from_json(rank); }) == ErrorCode::SchemaError);

  auto cands = io::candidates_to_json(fx.candidates);
  cands["source"] = "random";
  CHECK(code_of([&] { io::candidates_from_json(cands); }) == ErrorCode::SchemaError);
  cands = io::candidates_to_json(fx.candidates);
  cands["top_index"][0] = 999;
  CHECK(code_of([&] { io::candidates_from_json(cands); }) == ErrorCode::SchemaError);

  RelationMatrix rel;
  rel.values = Eigen::MatrixXd::Constant(2, 2, 0.5);
  auto rj = io::relation_to_json(rel);
  rj["data"][1] = 1.5;
  CHECK(code_of([&] { io::relation_from_json(rj); }) == ErrorCode::SchemaError);

  const fs::path dir = scratch_dir("serialize_bad");
  std::ofstream(dir / "bad.json") << "{\"schema\": \"eigenlane.basis\", ";
  CHECK(code_of([&] { io::read_json(dir / "bad.json"); }) == ErrorCode::ParseError);
  std::ofstream(dir / "huge.json") << "[1e999]";
  CHECK(code_of([&] { io::read_json(dir / "huge.json"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { io::read_json(dir / "absent.json"); }) == ErrorCode::IoError);
  CHECK(code_of([&] { io::write_json(dir / "no" / "such" / "dir.json", doc); }) == ErrorCode::IoError);
}
