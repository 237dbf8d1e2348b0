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
#include <doctest.h>

#include <cmath>

#include "hullaw/classify.hpp"
#include "hullaw/hull.hpp"
#include "hullaw/sampler.hpp"

using namespace hullaw;

namespace {

struct Case {
  SampleBatch batch;
  HullMesh mesh;
  FacetClassification cls;
  VolumeDecomposition dec;
};

Case run(const SimplePolytope& P, std::size_t N, std::uint64_t seed) {
  Case c;
  c.batch = sample_boundary(P, N, seed);
  HullOptions opt;
  opt.labels = c.batch.facet_ids;
  c.mesh = convex_hull(c.batch.points, opt);
  c.cls = classify_facets(c.mesh, c.batch, P);
  c.dec = volume_decomposition(c.mesh, c.cls, P);
  return c;
}

}  // namespace

TEST_SUITE("classify") {

TEST_CASE("decomposition identity and bounds per record") {
  for (const char* name : {"cube-3", "simplex-3", "prism-3", "cube-4", "simplex-4"}) {
    const SimplePolytope P = make_builtin(name);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const Case c = run(P, 64u << seed, seed);
      const double vol_diff = P.volume() - c.mesh.volume;
      CHECK(vol_diff >= 0.0);
      CHECK(vol_diff <= P.volume());
      CHECK(c.dec.v_cn + c.dec.v_dn == doctest::Approx(vol_diff).epsilon(1e-12).scale(1.0));
      CHECK(c.dec.v_cn >= 0.0);
      CHECK(c.dec.v_dn >= -kVolumeDecompositionTol);
      CHECK(c.cls.boundary_coincident <= P.facets().size());
      CHECK(c.cls.proper + c.cls.boundary_coincident == c.mesh.merged_facets.size());
      std::size_t hist = 0;
      for (std::size_t k = 0; k < c.cls.histogram.size(); ++k) hist += c.cls.histogram[k];
      CHECK(hist == c.cls.proper);
      // proper facets touch at least two facets of P
      CHECK(c.cls.histogram[0] == 0);
      CHECK(c.cls.histogram[1] == 0);
    }
  }
}

TEST_CASE("assigned vertex owns the facet normal") {
  const SimplePolytope P = make_cube(3);
  const Case c = run(P, 2000, 17);
  for (std::size_t f = 0; f < c.mesh.merged_facets.size(); ++f) {
    if (c.cls.kind[f] != FacetKind::proper) continue;
    const int v = c.cls.assigned_vertex[f];
    REQUIRE(v >= 0);
    CHECK(P.normal_cone_contains(v, c.mesh.merged_facets[f].support.normal, 1e-9));
  }
  CHECK(c.cls.tie_events == 0);
}

TEST_CASE("at large N every facet of P shows up as a boundary-coincident facet") {
  const SimplePolytope P = make_cube(3);
  const Case c = run(P, 20000, 5);
  CHECK(c.cls.boundary_coincident == 6);
}

TEST_CASE("cube-3 proper facet count equals f0 + 8") {
  // Euler: proper facets are triangles and every hull vertex sits on one
  // boundary polygon, which forces F_proper = V + 8 once all six polygons
  // are present.
  const SimplePolytope P = make_cube(3);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Case c = run(P, 4000, 100 + seed);
    REQUIRE(c.cls.boundary_coincident == 6);
    CHECK(static_cast<int>(c.cls.proper) == c.mesh.f0 + 8);
  }
}

TEST_CASE("V_DN shrinks faster than V_CN") {
  const SimplePolytope P = make_cube(3);
  double cn_small = 0, dn_small = 0, cn_big = 0, dn_big = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Case a = run(P, 500, 300 + s), b = run(P, 8000, 400 + s);
    cn_small += a.dec.v_cn;
    dn_small += a.dec.v_dn;
    cn_big += b.dec.v_cn;
    dn_big += b.dec.v_dn;
  }
  CHECK(dn_big / dn_small < cn_big / cn_small);
}

}
