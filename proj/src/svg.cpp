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

#include "eigenlane/svg.hpp"

#include <cstdio>
#include <fstream>

#include "eigenlane/error.hpp"

namespace eigenlane
{

namespace
{

std::string fixed2(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape(const std::string & s)
{
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string svg_document(const std::string & title, int image_width, int image_height, std::span<const SvgLayer> layers)
{
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(image_width) + "\" height=\"" +
       std::to_string(image_height) + "\" viewBox=\"0 0 " + std::to_string(image_width) + " " +
       std::to_string(image_height) + "\">\n";
  s += "<title>" + escape(title) + "</title>\n";
  s += "<rect class=\"frame\" x=\"0\" y=\"0\" width=\"" + std::to_string(image_width) + "\" height=\"" +
       std::to_string(image_height) + "\" fill=\"#f4f4f4\" stroke=\"#303030\" stroke-width=\"2\"/>\n";
  for (const auto & layer : layers) {
    s += "<g class=\"layer\" id=\"" + escape(layer.name) + "\" fill=\"none\" stroke=\"" + escape(layer.color) +
         "\" stroke-width=\"" + fixed2(layer.stroke_width) + "\">\n";
    for (const auto & lane : layer.lanes) {
      const auto xs = lane.xs();
      const auto & ys = lane.grid().y_coords;
      s += "<polyline points=\"";
      for (std::size_t i = 0; i < lane.top_index(); ++i) {
        if (i > 0) {
          s += ' ';
        }
        s += fixed2(xs[i]) + "," + fixed2(ys[i]);
      }
      s += "\"/>\n";
    }
    s += "</g>\n";
  }
  s += "<g class=\"legend\" font-family=\"monospace\" font-size=\"16\">\n";
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const int y = 24 + 22 * static_cast<int>(i);
    s += "<rect x=\"12\" y=\"" + std::to_string(y - 12) + "\" width=\"14\" height=\"14\" fill=\"" +
         escape(layers[i].color) + "\"/>\n";
    s += "<text x=\"32\" y=\"" + std::to_string(y) + "\">" + escape(layers[i].name) + " (" +
         std::to_string(layers[i].lanes.size()) + ")</text>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

void render_svg(
  const std::filesystem::path & path, const std::string & title, int image_width, int image_height,
  std::span<const SvgLayer> layers)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write " + path.string());
  }
  out << svg_document(title, image_width, image_height, layers);
  if (!out) {
    throw Error(ErrorCode::IoError, "write failed for " + path.string());
  }
}

}  // namespace eigenlane
