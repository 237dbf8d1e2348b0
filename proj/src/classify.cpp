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
#include "hullaw/classify.hpp"

#include <algorithm>
#include <cmath>

#include "hullaw/error.hpp"

namespace hullaw {

namespace {

bool matches_facet(const MergedFacet& m, const FacetSpec& g, const HullMesh& mesh) {
  const int n = mesh.dim;
  const double tol = kOnPlaneTol * (1.0 + std::abs(g.support.offset));
  for (int id : m.vertex_ids) {
    const double d = dot(g.support.normal.data(), mesh.point(id), n) - g.support.offset;
    if (std::abs(d) > tol) return false;
  }
  double diff = 0.0;
  for (int j = 0; j < n; ++j) diff = std::max(diff, std::abs(m.support.normal[j] - g.support.normal[j]));
  return diff <= kOnPlaneTol;
}

}  // namespace

FacetClassification classify_facets(const HullMesh& mesh, const SampleBatch& batch,
                                    const SimplePolytope& polytope) {
  const int n = mesh.dim;
  if (n != polytope.dim() || batch.points.dim() != n)
    fail(ErrorCode::invalid_argument, "mesh, batch and polytope dimensions differ");
  if (batch.size() != mesh.points.size())
    fail(ErrorCode::invalid_argument, "mesh was not computed from this batch");
  const std::size_t count = mesh.merged_facets.size();
  FacetClassification c;
  c.kind.resize(count);
  c.touched.resize(count);
  c.assigned_vertex.assign(count, -1);
  c.histogram.assign(static_cast<std::size_t>(n) + 1, 0);
  const int nv = static_cast<int>(polytope.vertices().size());
  std::vector<int> labels;
  double coeffs[kMaxDim];
  for (std::size_t f = 0; f < count; ++f) {
    const MergedFacet& m = mesh.merged_facets[f];
    labels.clear();
    for (int id : m.vertex_ids) labels.push_back(batch.facet_ids[id]);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    c.touched[f] = static_cast<int>(labels.size());
    if (labels.size() == 1) {
      if (!matches_facet(m, polytope.facets()[labels.front()], mesh))
        fail(ErrorCode::internal, "hull facet with a single provenance label is off that facet's plane");
      c.kind[f] = FacetKind::boundary_coincident;
      ++c.boundary_coincident;
      continue;
    }
    c.kind[f] = FacetKind::proper;
    ++c.proper;
    const std::size_t bin = std::min<std::size_t>(labels.size(), c.histogram.size() - 1);
    ++c.histogram[bin];

    int strict = -1, slack = -1, best = -1;
    double best_min = -INFINITY;
    for (int v = 0; v < nv && strict < 0; ++v) {
      polytope.cone_coordinates(v, m.support.normal.data(), coeffs);
      const double lo = *std::min_element(coeffs, coeffs + n);
      if (lo >= -1e-12) strict = v;
      else if (slack < 0 && lo >= -1e-9) slack = v;
      if (lo > best_min) {
        best_min = lo;
        best = v;
      }
    }
    if (strict >= 0) {
      c.assigned_vertex[f] = strict;
    } else {
      ++c.tie_events;
      c.assigned_vertex[f] = slack >= 0 ? slack : best;
    }
  }
  return c;
}

VolumeDecomposition volume_decomposition(const HullMesh& mesh,
                                         const FacetClassification& classification,
                                         const SimplePolytope& polytope) {
  const int n = mesh.dim;
  if (classification.kind.size() != mesh.merged_facets.size())
    fail(ErrorCode::invalid_argument, "classification does not belong to this mesh");
  double fact = 1.0;
  for (int k = 2; k <= n; ++k) fact *= k;
  double a[kMaxDim * kMaxDim];
  VolumeDecomposition d;
  for (std::size_t f = 0; f < mesh.merged_facets.size(); ++f) {
    if (classification.kind[f] != FacetKind::proper) continue;
    const MergedFacet& m = mesh.merged_facets[f];
    const Point& apex = polytope.vertices().at(classification.assigned_vertex[f]);
    double sum = 0.0;
    for (std::size_t cell = 0; cell < m.cell_count(n); ++cell) {
      for (int r = 0; r < n; ++r) {
        const double* x = mesh.point(m.cells[cell * n + r]);
        for (int j = 0; j < n; ++j) a[r * n + j] = x[j] - apex[j];
      }
      sum += std::abs(determinant_inplace(a, n));
    }
    d.v_cn += sum / fact;
  }
  d.v_dn = polytope.volume() - mesh.volume - d.v_cn;
  if (d.v_dn < -kVolumeDecompositionTol)
    fail(ErrorCode::internal, "negative D_N volume: the C_N pyramids overlap");
  return d;
}

}  // namespace hullaw
