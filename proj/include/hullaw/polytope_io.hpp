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
#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "hullaw/polytope.hpp"

namespace hullaw {

// {dimension, vertices: [[...]], facets: [{vertex_ids, normal, offset}]}
nlohmann::json polytope_to_json(const SimplePolytope& polytope);

// Accepts the full format (revalidated through SimplePolytope::build) or a
// vertex-only document {dimension?, vertices} / bare array of points, whose
// facets are recovered by the convex hull.
SimplePolytope polytope_from_json(const nlohmann::json& doc, std::string name = "custom");

SimplePolytope load_polytope_file(const std::filesystem::path& path);

// Builtin name (cube-n, simplex-n, prism-n) or a path to a JSON file.
SimplePolytope resolve_polytope(const std::string& name_or_path);

void save_polytope_file(const SimplePolytope& polytope, const std::filesystem::path& path);

}  // namespace hullaw
