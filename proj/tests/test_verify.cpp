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

#include "hullaw/error.hpp"
#include "hullaw/oracle.hpp"
#include "hullaw/verify.hpp"

using namespace hullaw;

TEST_SUITE("verify") {

TEST_CASE("hull oracle equivalence on 200 small batches") {
  const HullOracleSummary s = hull_oracle_equivalence(200, 14, 2026);
  CHECK(s.batches == 200);
  CHECK_MESSAGE(s.mismatches == 0, s.first_mismatch);
}

TEST_CASE("oracle on a known body") {
  PointSet cube(3);
  for (int m = 0; m < 8; ++m) cube.push_back(std::vector<double>{double(m & 1), double(m >> 1 & 1), double(m >> 2 & 1)});
  cube.push_back(std::vector<double>{0.5, 0.5, 1.0});
  const OracleHull o = brute_force_hull(cube);
  CHECK(o.f_vector == std::vector<std::uint64_t>{8, 12, 6});
  CHECK(o.volume == doctest::Approx(1.0));
}

TEST_CASE("every suite passes") {
  for (const auto& suite : verify_suites()) {
    const VerifyReport r = run_verify(suite, 17);
    CHECK(!r.checks.empty());
    for (const auto& c : r.checks) CHECK_MESSAGE(c.passed, c.suite << ": " << c.name << " " << c.detail);
  }
  CHECK_THROWS_AS(run_verify("nonsense", 1), Error);
}

}
