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

#include "eigenlane/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "eigenlane/error.hpp"

namespace eigenlane
{

using nlohmann::json;

namespace
{

std::ifstream open_in(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  }
  return in;
}

std::vector<double> number_array(const json & j, const char * key, std::size_t line_no)
{
  if (!j.contains(key)) {
    throw Error(ErrorCode::SchemaError, "line " + std::to_string(line_no) + ": missing key '" + key + "'");
  }
  const json & arr = j.at(key);
  if (!arr.is_array()) {
    throw Error(ErrorCode::SchemaError, "line " + std::to_string(line_no) + ": '" + key + "' is not an array");
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto & v : arr) {
    if (!v.is_number()) {
      throw Error(ErrorCode::SchemaError, "line " + std::to_string(line_no) + ": non-numeric entry in '" + key + "'");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

void sanitize_record(DatasetRecord & record, LoadStats & stats)
{
  if (record.image_width <= 0 || record.image_height <= 0) {
    throw Error(ErrorCode::SchemaError, record.image_id + ": image size must be positive");
  }
  std::vector<Polyline> kept;
  const std::size_t clipped_before = stats.clipped_points;
  for (auto & lane : record.lanes) {
    Polyline inside;
    for (const auto & p : lane) {
      if (std::isfinite(p.x) && std::isfinite(p.y) && p.x >= 0.0 && p.x < record.image_width && p.y >= 0.0 &&
          p.y < record.image_height) {
        inside.push_back(p);
      } else {
        ++stats.clipped_points;
      }
    }
    std::set<double> heights;
    for (const auto & p : inside) {
      heights.insert(p.y);
    }
    if (inside.size() < 2 || heights.size() < 2) {
      ++stats.skipped_lanes;
      stats.warnings.push_back(record.image_id + ": lane with fewer than 2 usable points skipped");
      continue;
    }
    kept.push_back(std::move(inside));
  }
  record.lanes = std::move(kept);
  if (stats.clipped_points > clipped_before) {
    stats.warnings.push_back(
      record.image_id + ": " + std::to_string(stats.clipped_points - clipped_before) +
      " out-of-image points clipped");
  }
}

std::vector<DatasetRecord> parse_tusimple_jsonl(std::istream & in, LoadStats & stats, int default_width, int default_height)
{
  std::vector<DatasetRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception & e) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.is_object()) {
      throw Error(ErrorCode::SchemaError, "line " + std::to_string(line_no) + ": not a JSON object");
    }
    DatasetRecord rec;
    if (!j.contains("raw_file") || !j.at("raw_file").is_string()) {
      throw Error(ErrorCode::SchemaError, "line " + std::to_string(line_no) + ": missing key 'raw_file'");
    }
    rec.image_id = j.at("raw_file").get<std::string>();
    rec.image_width = default_width;
    rec.image_height = default_height;
    if (j.contains("image_size")) {
      const auto size = number_array(j, "image_size", line_no);
      if (size.size() != 2) {
        throw Error(ErrorCode::SchemaError, "line " + std::to_string(line_no) + ": image_size needs [w, h]");
      }
      for (double v : size) {
        if (!(v >= 1.0 && v <= 1e6) || v != std::floor(v)) {
          throw Error(ErrorCode::SchemaError, "line " + std::to_string(line_no) + ": image_size must be positive integers");
        }
      }
      rec.image_width = static_cast<int>(size[0]);
      rec.image_height = static_cast<int>(size[1]);
    }
    if (j.contains("category") && j.at("category").is_string()) {
      rec.category = j.at("category").get<std::string>();
    }
    const auto h_samples = number_array(j, "h_samples", line_no);
    if (!j.contains("lanes") || !j.at("lanes").is_array()) {
      throw Error(ErrorCode::SchemaError, "line " + std::to_string(line_no) + ": missing key 'lanes'");
    }
    for (const auto & lane_json : j.at("lanes")) {
      if (!lane_json.is_array() || lane_json.size() != h_samples.size()) {
        throw Error(ErrorCode::SchemaError, "line " + std::to_string(line_no) + ": lane length differs from h_samples");
      }
      Polyline poly;
      for (std::size_t i = 0; i < h_samples.size(); ++i) {
        if (!lane_json[i].is_number()) {
          throw Error(ErrorCode::SchemaError, "line " + std::to_string(line_no) + ": non-numeric lane entry");
        }
        const double x = lane_json[i].get<double>();
        if (x == -2.0) {
          continue;
        }
        poly.push_back({x, h_samples[i]});
      }
      rec.lanes.push_back(std::move(poly));
    }
    sanitize_record(rec, stats);
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<DatasetRecord> load_tusimple_jsonl(
  const std::filesystem::path & path, LoadStats & stats, int default_width, int default_height)
{
  auto in = open_in(path);
  return parse_tusimple_jsonl(in, stats, default_width, default_height);
}

void write_tusimple_jsonl(std::ostream & out, const std::vector<DatasetRecord> & records)
{
  for (const auto & rec : records) {
    std::set<double> heights;
    for (const auto & lane : rec.lanes) {
      for (const auto & p : lane) {
        heights.insert(p.y);
      }
    }
    const std::vector<double> h_samples(heights.begin(), heights.end());
    json lanes = json::array();
    for (const auto & lane : rec.lanes) {
      std::map<double, double> by_y;
      for (const auto & p : lane) {
        by_y.emplace(p.y, p.x);
      }
      json xs = json::array();
      for (double y : h_samples) {
        auto it = by_y.find(y);
        xs.push_back(it == by_y.end() ? -2.0 : it->second);
      }
      lanes.push_back(std::move(xs));
    }
    json j;
    j["raw_file"] = rec.image_id;
    j["image_size"] = {rec.image_width, rec.image_height};
    if (!rec.category.empty()) {
      j["category"] = rec.category;
    }
    j["h_samples"] = h_samples;
    j["lanes"] = std::move(lanes);
    out << j.dump() << '\n';
  }
}

void save_tusimple_jsonl(const std::filesystem::path & path, const std::vector<DatasetRecord> & records)
{
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write " + path.string());
  }
  write_tusimple_jsonl(out, records);
  if (!out) {
    throw Error(ErrorCode::IoError, "write failed for " + path.string());
  }
}

std::vector<DatasetRecord> parse_lane_csv(std::istream & in, LoadStats & stats, int width, int height)
{
  std::vector<DatasetRecord> records;
  std::map<std::string, std::size_t> record_index;
  std::vector<std::map<std::string, std::size_t>> lane_index;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      fields.push_back(field);
    }
    if (line_no == 1 && !fields.empty() && fields[0] == "image_id") {
      continue;
    }
    if (fields.size() != 4) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected image_id,lane_id,x,y");
    }
    Point2 p;
    try {
      p.x = std::stod(fields[2]);
      p.y = std::stod(fields[3]);
    } catch (const std::exception &) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad coordinate");
    }
    auto [it, fresh] = record_index.emplace(fields[0], records.size());
    if (fresh) {
      DatasetRecord rec;
      rec.image_id = fields[0];
      rec.image_width = width;
      rec.image_height = height;
      records.push_back(std::move(rec));
      lane_index.emplace_back();
    }
    DatasetRecord & rec = records[it->second];
    auto [lit, lane_fresh] = lane_index[it->second].emplace(fields[1], rec.lanes.size());
    if (lane_fresh) {
      rec.lanes.emplace_back();
    }
    rec.lanes[lit->second].push_back(p);
  }
  for (auto & rec : records) {
    sanitize_record(rec, stats);
  }
  return records;
}

std::vector<DatasetRecord> load_lane_csv(const std::filesystem::path & path, LoadStats & stats, int width, int height)
{
  auto in = open_in(path);
  return parse_lane_csv(in, stats, width, height);
}

std::vector<DatasetRecord> load_culane_dir(const std::filesystem::path & dir, LoadStats & stats, int width, int height)
{
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::IoError, dir.string() + " is not a directory");
  }
  const std::string suffix = ".lines.txt";
  std::vector<std::filesystem::path> files;
  for (const auto & entry : std::filesystem::recursive_directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<DatasetRecord> records;
  for (const auto & file : files) {
    DatasetRecord rec;
    const std::string rel = std::filesystem::relative(file, dir).generic_string();
    rec.image_id = rel.substr(0, rel.size() - suffix.size());
    rec.image_width = width;
    rec.image_height = height;
    auto in = open_in(file);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::stringstream ss(line);
      std::vector<double> values;
      std::string tok;
      while (ss >> tok) {
        try {
          values.push_back(std::stod(tok));
        } catch (const std::exception &) {
          throw Error(ErrorCode::ParseError, file.string() + ":" + std::to_string(line_no) + ": bad number");
        }
      }
      if (values.empty()) {
        continue;
      }
      if (values.size() % 2 != 0) {
        throw Error(ErrorCode::ParseError, file.string() + ":" + std::to_string(line_no) + ": odd coordinate count");
      }
      Polyline poly;
      for (std::size_t i = 0; i < values.size(); i += 2) {
        poly.push_back({values[i], values[i + 1]});
      }
      rec.lanes.push_back(std::move(poly));
    }
    sanitize_record(rec, stats);
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<Lane> record_lanes(const DatasetRecord & record, const GridPtr & grid, LoadStats & stats)
{
  if (record.image_width != grid->image_width || record.image_height != grid->image_height) {
    throw Error(ErrorCode::GridMismatch, record.image_id + ": image size differs from the sampling grid");
  }
  std::vector<Lane> lanes;
  for (const auto & poly : record.lanes) {
    try {
      lanes.push_back(resample_polyline(poly, grid));
    } catch (const Error & e) {
      if (e.code() != ErrorCode::InvalidAnnotation) {
        throw;
      }
      ++stats.skipped_lanes;
      stats.warnings.push_back(record.image_id + ": " + e.what());
    }
  }
  return lanes;
}

std::vector<Lane> dataset_lanes(const std::vector<DatasetRecord> & records, const GridPtr & grid, LoadStats & stats)
{
  std::vector<Lane> lanes;
  for (const auto & rec : records) {
    auto more = record_lanes(rec, grid, stats);
    lanes.insert(lanes.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  }
  return lanes;
}

}  // namespace eigenlane
