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

#include "eigenlane/serialize.hpp"

#include <fstream>

#include "eigenlane/error.hpp"

namespace eigenlane::io
{

namespace
{

const json & field(const json & j, const char * key)
{
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::SchemaError, std::string("missing key '") + key + "'");
  }
  return j.at(key);
}

template <typename T>
T get_as(const json & j, const char * key)
{
  const json & v = field(j, key);
  try {
    return v.get<T>();
  } catch (const json::exception &) {
    throw Error(ErrorCode::SchemaError, std::string("key '") + key + "' has the wrong type");
  }
}

std::vector<double> doubles(const json & j, const char * key, std::size_t expected)
{
  auto v = get_as<std::vector<double>>(j, key);
  if (v.size() != expected) {
    throw Error(
      ErrorCode::SchemaError, std::string("'") + key + "' holds " + std::to_string(v.size()) +
                                " values, dims require " + std::to_string(expected));
  }
  return v;
}

json header(const char * schema)
{
  json doc;
  doc["schema"] = schema;
  doc["version"] = kSchemaVersion;
  return doc;
}

Eigen::MatrixXd row_major(const std::vector<double> & data, std::size_t rows, std::size_t cols)
{
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = data[i * cols + j];
    }
  }
  return m;
}

std::vector<double> flatten(const Eigen::MatrixXd & m)
{
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out.push_back(m(i, j));
    }
  }
  return out;
}

json lane_to_json(const Lane & lane)
{
  return json{{"xs", lane.xs_vector()}, {"top_index", lane.top_index()}};
}

Lane lane_from_json(const json & j, const GridPtr & grid)
{
  auto xs = doubles(j, "xs", grid->n_samples());
  const auto top = get_as<std::size_t>(j, "top_index");
  if (top > grid->n_samples()) {
    throw Error(ErrorCode::SchemaError, "top_index beyond the grid");
  }
  return Lane(grid, std::move(xs), top);
}

GridPtr share_or(const GridPtr & loaded, const GridPtr & preferred)
{
  return preferred && *preferred == *loaded ? preferred : loaded;
}

}  // namespace

json read_json(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  }
  try {
    return json::parse(in);
  } catch (const json::exception & e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path & path, const json & doc)
{
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write " + path.string());
  }
  out << doc.dump() << '\n';
  if (!out) {
    throw Error(ErrorCode::IoError, "write failed for " + path.string());
  }
}

void check_header(const json & doc, const std::string & schema)
{
  const auto got = get_as<std::string>(doc, "schema");
  if (got != schema) {
    throw Error(ErrorCode::SchemaError, "expected a '" + schema + "' document, found '" + got + "'");
  }
  const auto version = get_as<int>(doc, "version");
  if (version != kSchemaVersion) {
    throw Error(
      ErrorCode::VersionError, "'" + schema + "' version " + std::to_string(version) + ", supported " +
                                 std::to_string(kSchemaVersion));
  }
}

json grid_to_json(const SamplingGrid & grid)
{
  return json{
    {"image_width", grid.image_width},
    {"image_height", grid.image_height},
    {"n_samples", grid.n_samples()},
    {"y_coords", grid.y_coords}};
}

GridPtr grid_from_json(const json & j)
{
  auto grid = std::make_shared<SamplingGrid>();
  grid->image_width = get_as<int>(j, "image_width");
  grid->image_height = get_as<int>(j, "image_height");
  grid->y_coords = doubles(j, "y_coords", get_as<std::size_t>(j, "n_samples"));
  try {
    grid->validate();
  } catch (const Error & e) {
    throw Error(ErrorCode::SchemaError, e.what());
  }
  return grid;
}

json matrix_to_json(const Eigen::MatrixXd & m)
{
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", flatten(m)}};
}

Eigen::MatrixXd matrix_from_json(const json & j)
{
  const auto rows = get_as<std::size_t>(j, "rows");
  const auto cols = get_as<std::size_t>(j, "cols");
  return row_major(doubles(j, "data", rows * cols), rows, cols);
}

json basis_to_json(const EigenBasis & basis)
{
  json doc = header("eigenlane.basis");
  doc["grid"] = grid_to_json(*basis.grid);
  doc["n"] = basis.n();
  doc["m"] = basis.m;
  doc["u"] = flatten(basis.u);
  doc["singular_values"] = basis.singular_values;
  doc["id"] = basis.id();
  return doc;
}

EigenBasis basis_from_json(const json & doc)
{
  check_header(doc, "eigenlane.basis");
  EigenBasis basis;
  basis.grid = grid_from_json(field(doc, "grid"));
  const auto n = get_as<std::size_t>(doc, "n");
  basis.m = get_as<std::size_t>(doc, "m");
  if (n != basis.grid->n_samples()) {
    throw Error(ErrorCode::SchemaError, "basis n differs from the grid sample count");
  }
  basis.u = row_major(doubles(doc, "u", n * basis.m), n, basis.m);
  basis.singular_values = get_as<std::vector<double>>(doc, "singular_values");
  if (basis.m < 1 || basis.m > basis.singular_values.size()) {
    throw Error(ErrorCode::SchemaError, "basis rank inconsistent with its singular values");
  }
  return basis;
}

json candidates_to_json(const CandidateSet & candidates)
{
  json doc = header("eigenlane.candidates");
  const std::size_t k = candidates.k();
  const std::size_t m = k > 0 ? static_cast<std::size_t>(candidates.coefficients.front().size()) : 0;
  doc["basis_id"] = candidates.basis_id;
  doc["source"] = candidates.source == CandidateSource::Clustered ? "clustered" : "straight_grid";
  doc["k"] = k;
  doc["m"] = m;
  if (k > 0) {
    doc["grid"] = grid_to_json(candidates.lanes.front().grid());
  }
  std::vector<double> coeffs;
  std::vector<double> xs;
  std::vector<std::size_t> tops;
  for (std::size_t i = 0; i < k; ++i) {
    const auto & c = candidates.coefficients[i];
    coeffs.insert(coeffs.end(), c.data(), c.data() + c.size());
    const auto lx = candidates.lanes[i].xs();
    xs.insert(xs.end(), lx.begin(), lx.end());
    tops.push_back(candidates.lanes[i].top_index());
  }
  doc["coefficients"] = coeffs;
  doc["xs"] = xs;
  doc["top_index"] = tops;
  return doc;
}

CandidateSet candidates_from_json(const json & doc, const GridPtr & grid)
{
  check_header(doc, "eigenlane.candidates");
  CandidateSet out;
  out.basis_id = get_as<std::string>(doc, "basis_id");
  const auto source = get_as<std::string>(doc, "source");
  if (source == "clustered") {
    out.source = CandidateSource::Clustered;
  } else if (source == "straight_grid") {
    out.source = CandidateSource::StraightGrid;
  } else {
    throw Error(ErrorCode::SchemaError, "unknown candidate source '" + source + "'");
  }
  const auto k = get_as<std::size_t>(doc, "k");
  const auto m = get_as<std::size_t>(doc, "m");
  if (k == 0) {
    return out;
  }
  const GridPtr g = share_or(grid_from_json(field(doc, "grid")), grid);
  const std::size_t n = g->n_samples();
  const auto coeffs = doubles(doc, "coefficients", k * m);
  const auto xs = doubles(doc, "xs", k * n);
  const auto tops = get_as<std::vector<std::size_t>>(doc, "top_index");
  if (tops.size() != k) {
    throw Error(ErrorCode::SchemaError, "'top_index' length differs from k");
  }
  for (std::size_t i = 0; i < k; ++i) {
    out.coefficients.push_back(
      Eigen::Map<const Eigen::VectorXd>(coeffs.data() + i * m, static_cast<Eigen::Index>(m)));
    if (tops[i] > n) {
      throw Error(ErrorCode::SchemaError, "top_index beyond the grid");
    }
    out.lanes.emplace_back(
      g, std::vector<double>(xs.begin() + static_cast<long>(i * n), xs.begin() + static_cast<long>((i + 1) * n)),
      tops[i]);
  }
  return out;
}

json scores_to_json(std::span<const ImageScores> images)
{
  json doc = header("eigenlane.scores");
  json list = json::array();
  for (const auto & im : images) {
    const CandidateScores & s = im.scores;
    json j;
    j["image_id"] = im.image_id;
    j["k"] = s.k();
    j["r"] = s.height_grid.size();
    j["m"] = s.offsets.cols();
    j["height_grid"] = s.height_grid;
    j["probabilities"] = s.probabilities;
    j["heights"] = flatten(s.heights);
    j["offsets"] = flatten(s.offsets);
    j["features"] = matrix_to_json(im.features);
    list.push_back(std::move(j));
  }
  doc["images"] = std::move(list);
  return doc;
}

std::vector<ImageScores> scores_from_json(const json & doc)
{
  check_header(doc, "eigenlane.scores");
  std::vector<ImageScores> out;
  for (const auto & j : field(doc, "images")) {
    ImageScores im;
    im.image_id = get_as<std::string>(j, "image_id");
    const auto k = get_as<std::size_t>(j, "k");
    const auto r = get_as<std::size_t>(j, "r");
    const auto m = get_as<std::size_t>(j, "m");
    CandidateScores & s = im.scores;
    s.height_grid = doubles(j, "height_grid", r);
    s.probabilities = doubles(j, "probabilities", k);
    s.heights = row_major(doubles(j, "heights", k * r), k, r);
    s.offsets = row_major(doubles(j, "offsets", k * m), k, m);
    im.features = matrix_from_json(field(j, "features"));
    if (static_cast<std::size_t>(im.features.rows()) != k) {
      throw Error(ErrorCode::SchemaError, "feature rows differ from k");
    }
    out.push_back(std::move(im));
  }
  return out;
}

json relation_to_json(const RelationMatrix & relation)
{
  json doc = header("eigenlane.relation");
  doc["t"] = relation.t();
  doc["data"] = flatten(relation.values);
  std::vector<bool> zero = relation.zero_rows;
  zero.resize(relation.t(), false);
  doc["zero_rows"] = zero;
  return doc;
}

RelationMatrix relation_from_json(const json & doc)
{
  check_header(doc, "eigenlane.relation");
  RelationMatrix rel;
  const auto t = get_as<std::size_t>(doc, "t");
  rel.values = row_major(doubles(doc, "data", t * t), t, t);
  if (doc.contains("zero_rows")) {
    rel.zero_rows = get_as<std::vector<bool>>(doc, "zero_rows");
    if (rel.zero_rows.size() != t) {
      throw Error(ErrorCode::SchemaError, "'zero_rows' length differs from t");
    }
  } else {
    rel.zero_rows.assign(t, false);
  }
  if (rel.values.size() > 0 && (rel.values.maxCoeff() > 1.0 || rel.values.minCoeff() < -1.0)) {
    throw Error(ErrorCode::SchemaError, "relation entries must lie in [-1, 1]");
  }
  return rel;
}

json feature_grid_to_json(const FeatureGrid & grid)
{
  json doc = header("eigenlane.feature_grid");
  doc["height"] = grid.height;
  doc["width"] = grid.width;
  doc["channels"] = grid.channels;
  doc["data"] = grid.values;
  return doc;
}

FeatureGrid feature_grid_from_json(const json & doc)
{
  check_header(doc, "eigenlane.feature_grid");
  FeatureGrid g;
  g.height = get_as<std::size_t>(doc, "height");
  g.width = get_as<std::size_t>(doc, "width");
  g.channels = get_as<std::size_t>(doc, "channels");
  g.values = doubles(doc, "data", g.height * g.width * g.channels);
  return g;
}

json detections_to_json(const SamplingGrid & grid, std::span<const ImageDetections> images)
{
  json doc = header("eigenlane.detections");
  doc["grid"] = grid_to_json(grid);
  json list = json::array();
  for (const auto & im : images) {
    const Detection & d = im.detection;
    json j;
    j["image_id"] = im.image_id;
    j["nms_picks"] = d.nms_picks;
    j["selected"] = d.selected;
    j["clique"] = {
      {"members", d.clique.members},
      {"compatibility", d.clique.compatibility},
      {"fallback", d.clique.fallback}};
    if (d.relation.t() > 0) {
      j["relation"] = relation_to_json(d.relation);
    }
    json lanes = json::array();
    for (const auto & lane : d.lanes) {
      lanes.push_back(lane_to_json(lane));
    }
    j["lanes"] = std::move(lanes);
    list.push_back(std::move(j));
  }
  doc["images"] = std::move(list);
  return doc;
}

std::vector<ImageDetections> detections_from_json(const json & doc, const GridPtr & grid)
{
  check_header(doc, "eigenlane.detections");
  const GridPtr g = grid ? share_or(grid_from_json(field(doc, "grid")), grid) : grid_from_json(field(doc, "grid"));
  std::vector<ImageDetections> out;
  for (const auto & j : field(doc, "images")) {
    ImageDetections im;
    im.image_id = get_as<std::string>(j, "image_id");
    Detection & d = im.detection;
    d.nms_picks = get_as<std::vector<std::size_t>>(j, "nms_picks");
    d.selected = get_as<std::vector<std::size_t>>(j, "selected");
    const json & clique = field(j, "clique");
    d.clique.members = get_as<std::vector<std::size_t>>(clique, "members");
    d.clique.compatibility = get_as<double>(clique, "compatibility");
    d.clique.fallback = get_as<bool>(clique, "fallback");
    if (j.contains("relation")) {
      d.relation = relation_from_json(j.at("relation"));
    }
    for (const auto & lj : field(j, "lanes")) {
      d.lanes.push_back(lane_from_json(lj, g));
    }
    out.push_back(std::move(im));
  }
  return out;
}

json report_to_json(const MatchReport & report, bool include_images)
{
  json doc = header("eigenlane.report.culane");
  doc["tp"] = report.tp;
  doc["fp"] = report.fp;
  doc["fn"] = report.fn;
  doc["precision"] = report.precision;
  doc["recall"] = report.recall;
  doc["f_measure"] = report.f_measure;
  if (include_images) {
    json list = json::array();
    for (const auto & im : report.per_image) {
      list.push_back(
        {{"image_id", im.image_id},
         {"category", im.category},
         {"tp", im.tp},
         {"fp", im.fp},
         {"fn", im.fn},
         {"matches", im.matches},
         {"best_iou_pred", im.best_iou_pred},
         {"best_iou_gt", im.best_iou_gt},
         {"greedy_suboptimal", im.greedy_suboptimal}});
    }
    doc["images"] = std::move(list);
  }
  return doc;
}

json report_to_json(const PointAccuracyReport & report, bool include_images)
{
  json doc = header("eigenlane.report.tusimple");
  doc["accuracy"] = report.accuracy;
  doc["fpr"] = report.fpr;
  doc["fnr"] = report.fnr;
  doc["n_correct"] = report.n_correct;
  doc["n_gt_points"] = report.n_gt_points;
  doc["n_pred"] = report.n_pred;
  doc["n_gt"] = report.n_gt;
  doc["false_pred"] = report.false_pred;
  doc["missed"] = report.missed;
  if (include_images) {
    json list = json::array();
    for (const auto & im : report.per_image) {
      list.push_back(
        {{"image_id", im.image_id},
         {"n_correct", im.n_correct},
         {"n_gt_points", im.n_gt_points},
         {"false_pred", im.false_pred},
         {"missed", im.missed},
         {"matches", im.matches},
         {"lane_accuracy", im.lane_accuracy}});
    }
    doc["images"] = std::move(list);
  }
  return doc;
}

}  // namespace eigenlane::io
