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
#include <iosfwd>
#include <string>
#include <vector>

#include "hullaw/linalg.hpp"
#include "hullaw/polytope.hpp"
#include "hullaw/rng.hpp"

namespace hullaw {

// Points on the boundary of a polytope with their provenance, stored as
// parallel arrays so the coordinates can go straight into the hull.
struct SampleBatch {
  PointSet points;
  std::vector<int> facet_ids;
  std::vector<int> simplex_ids;
  std::uint64_t seed = 0;
  std::string polytope_id;

  std::size_t size() const noexcept { return facet_ids.size(); }
};

class BoundarySampler {
 public:
  explicit BoundarySampler(const SimplePolytope& polytope);

  // Appends count points to batch, drawing from rng.
  void draw(Philox& rng, std::size_t count, SampleBatch& batch) const;
  // One point on the given facet, written to out (n coordinates).
  void draw_on_facet(Philox& rng, int facet, double* out, int* simplex_id = nullptr) const;
  int pick_facet(Philox& rng) const;

  const SimplePolytope& polytope() const noexcept { return *polytope_; }

 private:
  const SimplePolytope* polytope_;
  std::vector<double> facet_cdf_;
  std::vector<std::vector<double>> cell_cdf_;
  // Coordinates shared by every vertex of a facet; NaN where they differ.
  std::vector<std::vector<double>> fixed_coord_;
};

SampleBatch sample_boundary(const SimplePolytope& polytope, std::size_t count,
                            std::uint64_t seed);

struct OccupancyResult {
  std::vector<std::size_t> counts;
  std::vector<double> thresholds;  // N |F_i| / (|dP| 4 ln N)
  bool all_above = false;
};

OccupancyResult facet_occupancy_check(const SampleBatch& batch,
                                      const SimplePolytope& polytope);

// Columns seed, index, facet_id, x_1..x_n.
void write_batch_csv(const SampleBatch& batch, std::ostream& out);

}  // namespace hullaw
