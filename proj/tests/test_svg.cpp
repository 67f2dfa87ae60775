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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <vector>

#include "eigenlane/error.hpp"
#include "eigenlane/svg.hpp"

using namespace eigenlane;
namespace fs = std::filesystem;

namespace
{

std::size_t count_of(const std::string & text, const std::string & needle)
{
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

std::string slurp(const fs::path & path)
{
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<SvgLayer> golden_layers()
{
  const auto grid = SamplingGrid::for_image(640, 360, 8);
  std::vector<double> a;
  std::vector<double> b;
  for (std::size_t i = 0; i < grid->n_samples(); ++i) {
    a.push_back(100.0 + 12.5 * static_cast<double>(i));
    b.push_back(520.0 - 0.25 * static_cast<double>(i * i));
  }
  SvgLayer cand{"candidates", "#999999", 1.0, {Lane(grid, a)}};
  SvgLayer det{"detections <&>", "#d62728", 3.0, {Lane(grid, b, 3), Lane(grid, a, 6)}};
  return {cand, det};
}

}  // namespace

TEST_CASE("empty document has only the frame")
{
  const std::string doc = svg_document("empty", 320, 200, {});
  CHECK(doc.rfind("<?xml", 0) == 0);
  CHECK(count_of(doc, "<svg ") == 1);
  CHECK(count_of(doc, "</svg>") == 1);
  CHECK(count_of(doc, "class=\"frame\"") == 1);
  CHECK(count_of(doc, "<polyline") == 0);
  CHECK(doc.find("viewBox=\"0 0 320 200\"") != std::string::npos);
}

TEST_CASE("one polyline per lane with one point per valid sample")
{
  const auto grid = SamplingGrid::for_image(640, 360, 10);
  std::vector<double> xs(10, 200.0);
  const std::vector<SvgLayer> layers = {{"gt", "#00ff00", 2.0, {Lane(grid, xs, 4)}}};
  const std::string doc = svg_document("one", 640, 360, layers);
  REQUIRE(count_of(doc, "<polyline") == 1);
  const std::regex points("points=\"([^\"]*)\"");
  std::smatch m;
  REQUIRE(std::regex_search(doc, m, points));
  std::istringstream pts(m[1].str());
  std::string token;
  std::size_t n = 0;
  while (pts >> token) {
    CHECK(token.rfind("200.00,", 0) == 0);
    ++n;
  }
  CHECK(n == 4);
  CHECK(doc.find("gt (1)") != std::string::npos);
}

TEST_CASE("special characters are escaped")
{
  const std::vector<SvgLayer> layers = {{"a<b & \"c\"", "#000000", 1.0, {}}};
  const std::string doc = svg_document("x > y", 10, 10, layers);
  CHECK(doc.find("a&lt;b &amp; &quot;c&quot;") != std::string::npos);
  CHECK(doc.find("x &gt; y") != std::string::npos);
  CHECK(doc.find("a<b") == std::string::npos);
}

TEST_CASE("rendering matches the golden file byte for byte")
{
  const auto layers = golden_layers();
  const fs::path golden = fs::path(EIGENLANE_GOLDEN_DIR) / "two_layers.svg";
  const std::string doc = svg_document("golden", 640, 360, layers);
  if (std::getenv("EIGENLANE_UPDATE_GOLDEN") != nullptr) {
    render_svg(golden, "golden", 640, 360, layers);
  }
  REQUIRE(fs::exists(golden));
  CHECK(slurp(golden) == doc);

  const fs::path out = fs::temp_directory_path() / "eigenlane_test_svg.svg";
  render_svg(out, "golden", 640, 360, layers);
  CHECK(slurp(out) == slurp(golden));
}

TEST_CASE("unwritable path raises IoError")
{
  const fs::path bad = fs::temp_directory_path() / "eigenlane_no_such_dir" / "deeper" / "x.svg";
  fs::remove_all(bad.parent_path().parent_path());
  try {
    render_svg(bad, "t", 10, 10, {});
    FAIL("expected IoError");
  } catch (const Error & e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}
