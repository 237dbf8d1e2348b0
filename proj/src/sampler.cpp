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
#include "hullaw/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "hullaw/error.hpp"

namespace hullaw {

namespace {

int pick(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u * cdf.back());
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1));
}

}  // namespace

BoundarySampler::BoundarySampler(const SimplePolytope& polytope) : polytope_(&polytope) {
  const int n = polytope.dim();
  double acc = 0.0;
  for (const auto& f : polytope.facets()) {
    acc += f.area;
    facet_cdf_.push_back(acc);
    std::vector<double> cells;
    double c = 0.0;
    for (double v : f.cell_volumes) cells.push_back(c += v);
    cell_cdf_.push_back(std::move(cells));
    std::vector<double> fixed(n, std::numeric_limits<double>::quiet_NaN());
    for (int j = 0; j < n; ++j) {
      const double x = polytope.vertices()[f.vertex_ids.front()][j];
      bool same = true;
      for (int id : f.vertex_ids) same = same && polytope.vertices()[id][j] == x;
      if (same) fixed[j] = x;
    }
    fixed_coord_.push_back(std::move(fixed));
  }
}

int BoundarySampler::pick_facet(Philox& rng) const { return pick(facet_cdf_, rng.uniform()); }

void BoundarySampler::draw_on_facet(Philox& rng, int facet, double* out, int* simplex_id) const {
  const int n = polytope_->dim();
  const auto& spec = polytope_->facets()[facet];
  const int cell = pick(cell_cdf_[facet], rng.uniform());
  if (simplex_id) *simplex_id = cell;
  // Spacings of n-1 sorted uniforms are uniform on the (n-1)-simplex.
  double u[kMaxDim + 1];
  u[0] = 0.0;
  for (int k = 1; k < n; ++k) u[k] = rng.uniform();
  std::sort(u + 1, u + n);
  u[n] = 1.0;
  std::fill(out, out + n, 0.0);
  const auto& ids = spec.triangulation[cell];
  for (int k = 0; k < n; ++k) {
    const double w = u[k + 1] - u[k];
    const auto& v = polytope_->vertices()[ids[k]];
    for (int j = 0; j < n; ++j) out[j] += w * v[j];
  }
  const auto& fixed = fixed_coord_[facet];
  for (int j = 0; j < n; ++j)
    if (!std::isnan(fixed[j])) out[j] = fixed[j];
}

void BoundarySampler::draw(Philox& rng, std::size_t count, SampleBatch& batch) const {
  const int n = polytope_->dim();
  if (batch.points.dim() != n) batch.points = PointSet(n);
  batch.points.reserve(batch.size() + count);
  double x[kMaxDim];
  for (std::size_t i = 0; i < count; ++i) {
    const int f = pick_facet(rng);
    int cell = 0;
    draw_on_facet(rng, f, x, &cell);
    batch.points.push_back({x, static_cast<std::size_t>(n)});
    batch.facet_ids.push_back(f);
    batch.simplex_ids.push_back(cell);
  }
}

SampleBatch sample_boundary(const SimplePolytope& polytope, std::size_t count,
                            std::uint64_t seed) {
  if (count < 1) fail(ErrorCode::invalid_argument, "sample size N must be at least 1");
  SampleBatch batch;
  batch.seed = seed;
  batch.polytope_id = polytope.name();
  batch.points = PointSet(polytope.dim());
  Philox rng(seed);
  BoundarySampler(polytope).draw(rng, count, batch);
  return batch;
}

OccupancyResult facet_occupancy_check(const SampleBatch& batch,
                                      const SimplePolytope& polytope) {
  const std::size_t count = batch.size();
  if (count < 3) fail(ErrorCode::invalid_argument, "occupancy check needs N >= 3");
  OccupancyResult r;
  r.counts.assign(polytope.facets().size(), 0);
  for (int f : batch.facet_ids) {
    if (f < 0 || f >= static_cast<int>(r.counts.size()))
      fail(ErrorCode::invalid_argument, "facet id out of range in batch");
    ++r.counts[f];
  }
  const double ln = std::log(static_cast<double>(count));
  r.all_above = true;
  for (std::size_t f = 0; f < r.counts.size(); ++f) {
    const double share = polytope.facets()[f].area / polytope.surface_area();
    r.thresholds.push_back(static_cast<double>(count) * share / (4.0 * ln));
    if (!(static_cast<double>(r.counts[f]) > r.thresholds.back())) r.all_above = false;
  }
  return r;
}

void write_batch_csv(const SampleBatch& batch, std::ostream& out) {
  const int n = batch.points.dim();
  out << "seed,index,facet_id";
  for (int j = 1; j <= n; ++j) out << ",x_" << j;
  out << '\n';
  out.precision(17);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    out << batch.seed << ',' << i << ',' << batch.facet_ids[i];
    for (double x : batch.points[i]) out << ',' << x;
    out << '\n';
  }
}

}  // namespace hullaw
