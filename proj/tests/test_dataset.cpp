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

#include <filesystem>
#include <functional>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eigenlane/dataset.hpp"
#include "eigenlane/error.hpp"
#include "eigenlane/rng.hpp"
#include "eigenlane/synthetic.hpp"

using namespace eigenlane;
namespace fs = std::filesystem;

namespace
{

ErrorCode code_of(const std::function<void()> & fn)
{
  try {
    fn();
  } catch (const Error & e) {
    return e.code();
  }
  FAIL("expected an eigenlane::Error");
  return ErrorCode::IoError;
}

void check_record_invariants(const DatasetRecord & rec)
{
  CHECK(rec.image_width > 0);
  CHECK(rec.image_height > 0);
  for (const auto & lane : rec.lanes) {
    CHECK(lane.size() >= 2);
    std::set<double> ys;
    for (const auto & p : lane) {
      CHECK(p.x >= 0.0);
      CHECK(p.x < rec.image_width);
      CHECK(p.y >= 0.0);
      CHECK(p.y < rec.image_height);
      ys.insert(p.y);
    }
    CHECK(ys.size() >= 2);
  }
}

fs::path scratch_dir(const std::string & name)
{
  const fs::path dir = fs::temp_directory_path() / ("eigenlane_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("TuSimple line maps lanes to polylines")
{
  std::istringstream in(
    R"({"raw_file":"a.jpg","h_samples":[400,410,420],"lanes":[[100,110,120],[-2,-2,-2],[-2,300,310]]})"
    "\n\n");
  LoadStats stats;
  const auto recs = parse_tusimple_jsonl(in, stats);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].image_id == "a.jpg");
  CHECK(recs[0].image_width == 1280);
  REQUIRE(recs[0].lanes.size() == 2);
  REQUIRE(recs[0].lanes[0].size() == 3);
  CHECK(recs[0].lanes[0][1].x == 110.0);
  CHECK(recs[0].lanes[0][1].y == 410.0);
  CHECK(recs[0].lanes[1].size() == 2);
  CHECK(stats.skipped_lanes == 1);
  CHECK_FALSE(stats.warnings.empty());
}

TEST_CASE("TuSimple optional keys and clipping")
{
  std::istringstream in(
    R"({"raw_file":"b","image_size":[640,360],"category":"curve","h_samples":[200,300,359,380],)"
    R"("lanes":[[10,700,20,30]]})");
  LoadStats stats;
  const auto recs = parse_tusimple_jsonl(in, stats);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].image_width == 640);
  CHECK(recs[0].category == "curve");
  REQUIRE(recs[0].lanes.size() == 1);
  CHECK(recs[0].lanes[0].size() == 2);
  CHECK(stats.clipped_points == 2);
}

TEST_CASE("TuSimple errors carry codes and line numbers")
{
  LoadStats stats;
  {
    std::istringstream in("{\"raw_file\":\"a\",\"h_samples\":[1,2],\"lanes\":[]}\n{not json\n");
    try {
      parse_tusimple_jsonl(in, stats);
      FAIL("expected ParseError");
    } catch (const Error & e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  auto parse = [&](const std::string & text) {
    std::istringstream in(text);
    return parse_tusimple_jsonl(in, stats);
  };
  CHECK(code_of([&] { parse(R"({"h_samples":[1,2],"lanes":[]})"); }) == ErrorCode::SchemaError);
  CHECK(code_of([&] { parse(R"({"raw_file":"a","lanes":[]})"); }) == ErrorCode::SchemaError);
  CHECK(code_of([&] { parse(R"({"raw_file":"a","h_samples":[1,2]})"); }) == ErrorCode::SchemaError);
  CHECK(code_of([&] { parse(R"({"raw_file":"a","h_samples":[1,2],"lanes":[[1]]})"); }) == ErrorCode::SchemaError);
  CHECK(code_of([&] { parse(R"([1,2,3])"); }) == ErrorCode::SchemaError);
  CHECK(
    code_of([&] { parse(R"({"raw_file":"a","image_size":[0,5],"h_samples":[],"lanes":[]})"); }) ==
    ErrorCode::SchemaError);
  CHECK(code_of([&] { load_tusimple_jsonl("/nonexistent/file.json", stats); }) == ErrorCode::IoError);
}

TEST_CASE("TuSimple round trip preserves polylines")
{
  SyntheticSpec spec;
  spec.count = 50;
  spec.seed = 4;
  const auto recs = generate_synthetic(spec);
  std::stringstream buf;
  write_tusimple_jsonl(buf, recs);
  LoadStats stats;
  const auto back = parse_tusimple_jsonl(buf, stats);
  REQUIRE(back.size() == recs.size());
  CHECK(stats.skipped_lanes == 0);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(back[i].image_id == recs[i].image_id);
    CHECK(back[i].category == recs[i].category);
    CHECK(back[i].image_width == recs[i].image_width);
    REQUIRE(back[i].lanes.size() == recs[i].lanes.size());
    for (std::size_t l = 0; l < recs[i].lanes.size(); ++l) {
      REQUIRE(back[i].lanes[l].size() == recs[i].lanes[l].size());
      for (std::size_t p = 0; p < recs[i].lanes[l].size(); ++p) {
        CHECK(back[i].lanes[l][p].x == recs[i].lanes[l][p].x);
        CHECK(back[i].lanes[l][p].y == recs[i].lanes[l][p].y);
      }
    }
  }
  const auto dir = scratch_dir("roundtrip");
  save_tusimple_jsonl(dir / "d.json", recs);
  CHECK(load_tusimple_jsonl(dir / "d.json", stats).size() == recs.size());
}

TEST_CASE("fuzzed TuSimple lines never yield invalid records")
{
  const std::string base =
    R"({"raw_file":"f","image_size":[320,180],"h_samples":[60,90,120,150,179],"lanes":[[10,20,30,40,50],[-2,100,110,120,130],[300,310,320,330,340]]})";
  const std::string alphabet = "{}[],:\"-0123456789.eE ablnrtu";
  Rng rng(123);
  std::size_t accepted = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    std::string line = base;
    const std::size_t edits = 1 + rng.index(4);
    for (std::size_t e = 0; e < edits; ++e) {
      const std::size_t pos = rng.index(line.size());
      switch (rng.index(3)) {
        case 0: line[pos] = alphabet[rng.index(alphabet.size())]; break;
        case 1: line.erase(pos, 1); break;
        default: line.insert(line.begin() + static_cast<long>(pos), alphabet[rng.index(alphabet.size())]);
      }
    }
    std::istringstream in(line);
    LoadStats stats;
    try {
      for (const auto & rec : parse_tusimple_jsonl(in, stats)) {
        check_record_invariants(rec);
        ++accepted;
      }
    } catch (const Error & e) {
      CHECK((e.code() == ErrorCode::ParseError || e.code() == ErrorCode::SchemaError));
    }
  }
  CHECK(accepted > 0);
}

TEST_CASE("CSV fixtures")
{
  std::istringstream in(
    "image_id,lane_id,x,y\r\n"
    "img1,0,100,700\n"
    "img1,0,120,500\n"
    "img1,1,900,700\n"
    "img2,0,5,10\n"
    "img1,1,880,450\n"
    "img2,0,6,20\n"
    "img2,1,7,20\n");
  LoadStats stats;
  const auto recs = parse_lane_csv(in, stats, 1280, 720);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].image_id == "img1");
  REQUIRE(recs[0].lanes.size() == 2);
  CHECK(recs[0].lanes[1][1].x == 880.0);
  CHECK(recs[1].lanes.size() == 1);
  CHECK(stats.skipped_lanes == 1);
  std::istringstream bad("a,0,1\n");
  CHECK(code_of([&] { parse_lane_csv(bad, stats, 10, 10); }) == ErrorCode::ParseError);
  std::istringstream bad2("a,0,x,1\n");
  CHECK(code_of([&] { parse_lane_csv(bad2, stats, 10, 10); }) == ErrorCode::ParseError);
}

TEST_CASE("CULane directory loader")
{
  const auto dir = scratch_dir("culane");
  fs::create_directories(dir / "seq");
  {
    std::ofstream f(dir / "seq" / "00001.lines.txt");
    f << "100.5 589 120 550 140 500 \n";
    f << "800 589 790 560\n";
    f << "\n";
  }
  {
    std::ofstream f(dir / "seq" / "00000.lines.txt");
    f << "10 580 11 570\n";
  }
  {
    std::ofstream f(dir / "notes.txt");
    f << "ignored\n";
  }
  LoadStats stats;
  const auto recs = load_culane_dir(dir, stats);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].image_id == "seq/00000");
  CHECK(recs[1].image_id == "seq/00001");
  CHECK(recs[1].image_width == 1640);
  CHECK(recs[1].image_height == 590);
  REQUIRE(recs[1].lanes.size() == 2);
  CHECK(recs[1].lanes[0].size() == 3);
  {
    std::ofstream f(dir / "seq" / "00002.lines.txt");
    f << "1 2 3\n";
  }
  CHECK(code_of([&] { load_culane_dir(dir, stats); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { load_culane_dir(dir / "missing", stats); }) == ErrorCode::IoError);
}

TEST_CASE("record lanes resample onto the grid")
{
  auto g = SamplingGrid::for_image(1280, 720, 50);
  DatasetRecord rec;
  rec.image_id = "r";
  rec.lanes = {{{100.0, 700.0}, {200.0, 400.0}}, {{300.0, 500.0}, {300.0, 500.0}}};
  LoadStats stats;
  const auto lanes = record_lanes(rec, g, stats);
  CHECK(lanes.size() == 1);
  CHECK(stats.skipped_lanes == 1);
  rec.image_width = 640;
  CHECK(code_of([&] { record_lanes(rec, g, stats); }) == ErrorCode::GridMismatch);
}
