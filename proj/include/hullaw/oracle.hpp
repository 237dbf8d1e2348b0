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

#include <cstdint>
#include <vector>

#include "hullaw/linalg.hpp"
#include "hullaw/polytope.hpp"

namespace hullaw {

// Hull by testing every n-subset of points as a supporting hyperplane.
// Exponential; meant for n = 2, 3 and a handful of points.
struct OracleHull {
  std::vector<std::uint64_t> f_vector;  // f_0 .. f_{n-1}
  double volume = 0.0;
};

OracleHull brute_force_hull(const PointSet& points, double tol = 1e-9);

// Faces from intersecting every subset of facets; flags by walking chains.
struct OracleLattice {
  std::vector<std::uint64_t> f_vector;
  std::uint64_t flags = 0;
};

OracleLattice brute_force_lattice(const SimplePolytope& polytope);

}  // namespace hullaw
