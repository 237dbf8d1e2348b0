// Copyright 2026 The hullaw Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "hullaw/polytope_io.hpp"

#include <fstream>
#include <sstream>

#include "hullaw/error.hpp"

namespace hullaw {

namespace {

using nlohmann::json;

std::vector<Point> read_points(const json& arr) {
  if (!arr.is_array() || arr.empty()) fail(ErrorCode::parse, "'vertices' must be a non-empty array");
  std::vector<Point> pts;
  for (const auto& row : arr) {
    if (!row.is_array()) fail(ErrorCode::parse, "each vertex must be an array of numbers");
    Point p;
    for (const auto& x : row) {
      if (!x.is_number()) fail(ErrorCode::parse, "vertex coordinate is not a number");
      p.push_back(x.get<double>());
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace

json polytope_to_json(const SimplePolytope& polytope) {
  json doc;
  doc["name"] = polytope.name();
  doc["dimension"] = polytope.dim();
  doc["vertices"] = polytope.vertices();
  json facets = json::array();
  for (const auto& f : polytope.facets())
    facets.push_back({{"vertex_ids", f.vertex_ids},
                      {"normal", f.support.normal},
                      {"offset", f.support.offset}});
  doc["facets"] = std::move(facets);
  return doc;
}

SimplePolytope polytope_from_json(const json& doc, std::string name) {
  try {
    if (doc.is_array()) return from_vertices(read_points(doc), std::move(name));
    if (!doc.is_object()) fail(ErrorCode::parse, "polytope document must be an object or an array");
    if (doc.contains("name") && doc["name"].is_string()) name = doc["name"].get<std::string>();
    if (!doc.contains("vertices")) fail(ErrorCode::parse, "polytope document lacks 'vertices'");
    auto vertices = read_points(doc["vertices"]);
    if (doc.contains("dimension")) {
      const int n = doc["dimension"].get<int>();
      for (const auto& v : vertices)
        if (static_cast<int>(v.size()) != n)
          fail(ErrorCode::parse, "vertex length differs from 'dimension'");
    }
    if (!doc.contains("facets")) return from_vertices(vertices, std::move(name));
    PolytopeDescription d;
    d.name = std::move(name);
    d.vertices = std::move(vertices);
    for (const auto& f : doc["facets"]) {
      Hyperplane h;
      h.normal = f.at("normal").get<Point>();
      h.offset = f.at("offset").get<double>();
      d.facets.emplace_back(f.at("vertex_ids").get<std::vector<int>>(), std::move(h));
    }
    return SimplePolytope::build(std::move(d));
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, std::string("malformed polytope JSON: ") + e.what());
  }
}

SimplePolytope load_polytope_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open polytope file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, path.string() + ": " + e.what());
  }
  try {
    return polytope_from_json(doc, path.stem().string());
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.what());
  }
}

SimplePolytope resolve_polytope(const std::string& name_or_path) {
  for (const char* prefix : {"cube-", "simplex-", "prism-"})
    if (name_or_path.rfind(prefix, 0) == 0 && !std::filesystem::exists(name_or_path))
      return make_builtin(name_or_path);
  return load_polytope_file(name_or_path);
}

void save_polytope_file(const SimplePolytope& polytope, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io, "cannot write " + path.string());
  out << polytope_to_json(polytope).dump(2) << '\n';
  if (!out) fail(ErrorCode::io, "write failed for " + path.string());
}

}  // namespace hullaw
