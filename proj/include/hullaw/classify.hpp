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

#include <cstddef>
#include <vector>

#include "hullaw/hull.hpp"
#include "hullaw/polytope.hpp"
#include "hullaw/sampler.hpp"

namespace hullaw {

enum class FacetKind { boundary_coincident, proper };

struct FacetClassification {
  std::vector<FacetKind> kind;          // per merged facet
  std::vector<int> touched;             // distinct facet ids among its vertices
  std::vector<int> assigned_vertex;     // vertex of P whose normal cone holds u_F; -1 if none
  std::vector<std::size_t> histogram;   // histogram[k]: proper facets touching k facets of P
  std::size_t tie_events = 0;
  std::size_t proper = 0;
  std::size_t boundary_coincident = 0;
};

FacetClassification classify_facets(const HullMesh& mesh, const SampleBatch& batch,
                                    const SimplePolytope& polytope);

struct VolumeDecomposition {
  double v_cn = 0.0;
  double v_dn = 0.0;
};

// Tolerance below zero accepted for V_DN before it is reported as an error.
inline constexpr double kVolumeDecompositionTol = 1e-9;

VolumeDecomposition volume_decomposition(const HullMesh& mesh,
                                         const FacetClassification& classification,
                                         const SimplePolytope& polytope);

}  // namespace hullaw
