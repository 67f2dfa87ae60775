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

#ifndef EIGENLANE__SVG_HPP_
#define EIGENLANE__SVG_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "eigenlane/lane.hpp"

namespace eigenlane
{

struct SvgLayer
{
  std::string name;
  std::string color = "#000000";
  double stroke_width = 2.0;
  std::vector<Lane> lanes;
};

/// Image frame, one polyline per lane per layer over its valid extent, and a
/// legend. Output bytes depend only on the inputs.
std::string svg_document(const std::string & title, int image_width, int image_height, std::span<const SvgLayer> layers);

/// Throws IoError on write failure.
void render_svg(
  const std::filesystem::path & path, const std::string & title, int image_width, int image_height,
  std::span<const SvgLayer> layers);

}  // namespace eigenlane

#endif  // EIGENLANE__SVG_HPP_
