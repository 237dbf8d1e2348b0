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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hullaw/error.hpp"
#include "hullaw/experiment.hpp"
#include "hullaw/report.hpp"

using namespace hullaw;

namespace {

ExperimentPlan make_plan(const char* body, std::vector<std::int64_t> grid, int reps, std::uint64_t seed,
                         std::vector<Metric> metrics = all_metrics()) {
  ExperimentPlan p;
  p.polytope_ref = body;
  p.polytope = std::make_shared<const SimplePolytope>(make_builtin(body));
  p.N_grid = std::move(grid);
  p.replications = reps;
  p.master_seed = seed;
  p.metrics = std::move(metrics);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("plan validation") {
  CHECK_NOTHROW(make_plan("cube-3", {256}, 2, 1).validate());
  CHECK_THROWS_AS(make_plan("cube-3", {256}, 1, 1).validate(), Error);
  CHECK_THROWS_AS(make_plan("cube-3", {256, 256}, 2, 1).validate(), Error);
  CHECK_THROWS_AS(make_plan("cube-3", {512, 256}, 2, 1).validate(), Error);
  CHECK_THROWS_AS(make_plan("cube-3", {}, 2, 1).validate(), Error);
  CHECK(metric_from_string("V_DN") == Metric::v_dn);
  CHECK_FALSE(metric_from_string("bogus").has_value());
}

TEST_CASE("minimal plan gives two records with vol_diff in (0,1)") {
  const RunResult r = run_plan(make_plan("cube-3", {256}, 2, 7));
  REQUIRE(r.records.size() == 2);
  for (const auto& rec : r.records) {
    CHECK(rec.ok);
    CHECK(rec.vol_diff > 0.0);
    CHECK(rec.vol_diff < 1.0);
    CHECK(rec.v_cn + rec.v_dn == doctest::Approx(rec.vol_diff).epsilon(1e-9).scale(1.0));
    CHECK(rec.f0 <= 256);
  }
  CHECK(r.failures == 0);
  CHECK(r.invariant_violations.empty());
}

TEST_CASE("records do not depend on the thread count") {
  const ExperimentPlan p = make_plan("simplex-3", {64, 128, 256}, 6, 99);
  const RunResult a = run_plan(p, {1, {}}), b = run_plan(p, {4, {}});
  CHECK(records_csv(a) == records_csv(b));
  CHECK(records_csv(a) == records_csv(run_plan(p, {2, {}})));
  CHECK(records_csv(a) != records_csv(run_plan(make_plan("simplex-3", {64, 128, 256}, 6, 100))));
}

TEST_CASE("frozen replication") {
  const ReplicationRecord r = run_replication(make_cube(3), 1000, 0, 12345);
  CHECK(r.ok);
  CHECK(r.f0 == 77);
  CHECK(r.f_top_proper == 85);
  CHECK(r.vol_diff == doctest::Approx(0.0017219694312220479).epsilon(1e-12));
}

TEST_CASE("mean proper facet count grows with N") {
  const RunResult r = run_plan(make_plan("cube-3", {64, 256, 1024, 4096}, 10, 3, {Metric::f_top_proper}));
  const auto s = summarize(r);
  REQUIRE(s.size() == 4);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i].mean > s[i - 1].mean);
  for (const auto& m : s) CHECK(m.median > 0.0);
}

TEST_CASE("summaries and fits") {
  const RunResult r = run_plan(make_plan("cube-3", {128, 256, 512, 1024, 2048}, 8, 5));
  const auto s = summarize(r);
  // 6 scalar metrics + 3 histogram bins, 5 grid points each
  CHECK(s.size() == 9 * 5);
  const auto fits = default_fits(r, s);
  bool saw_vol = false;
  for (const auto& f : fits) {
    if (f.metric == "vol_diff") {
      saw_vol = true;
      CHECK(f.fit.exponent_or_power < -1.0);
      CHECK(f.fit.exponent_or_power > -2.0);
    }
    if (f.metric == "f_top_proper") CHECK(f.diagnostic.has_value());
  }
  CHECK(saw_vol);
}

TEST_CASE("report files") {
  const auto dir = std::filesystem::temp_directory_path() / "hullaw_report_test";
  std::filesystem::remove_all(dir);
  const RunResult r = run_plan(make_plan("cube-3", {256}, 2, 7));
  const auto s = summarize(r);
  const RunFiles a = write_run(r, s, {}, dir / "a");
  const RunFiles b = write_run(r, s, {}, dir / "b");
  CHECK(a.run_hash == b.run_hash);
  CHECK(slurp(a.records) == slurp(b.records));
  // 2 records x (6 scalar metrics + 3 histogram bins)
  const std::string csv = slurp(a.records);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 9);
  CHECK(csv.rfind("N,replication,metric,value\n", 0) == 0);

  const nlohmann::json sum = load_json_file(a.summary);
  const ExperimentPlan back = plan_from_json(sum.at("plan"));
  CHECK(back.N_grid == r.plan.N_grid);
  CHECK(back.master_seed == 7);
  CHECK(back.metrics == r.plan.metrics);
  CHECK(sum.at("seeds").size() == 2);
  CHECK(sum.at("per_N").size() == s.size());

  const RunResult empty = run_plan(make_plan("cube-3", {256}, 2, 7, {}));
  CHECK(records_csv(empty) == "N,replication,metric,value\n");

  CHECK_THROWS_AS(write_run(r, s, {}, "/proc/hullaw_cannot_write_here"), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("plan JSON parsing") {
  const auto doc = nlohmann::json::parse(R"({"polytope": "simplex-4", "N_grid": ["1e2", 200, 4e2],
                                             "replications": 3, "master_seed": "0x10"})");
  const ExperimentPlan p = plan_from_json(doc);
  CHECK(p.N_grid == std::vector<std::int64_t>{100, 200, 400});
  CHECK(p.master_seed == 16);
  CHECK(p.metrics.size() == all_metrics().size());
  CHECK(p.polytope->dim() == 4);
  CHECK_THROWS_AS(plan_from_json(nlohmann::json::parse(R"({"polytope": "cube-3", "N_grid": [1.5],
                  "replications": 2, "master_seed": 1})")), Error);
  CHECK_THROWS_AS(plan_from_json(nlohmann::json::parse(R"({"polytope": "cube-3", "N_grid": [10],
                  "replications": 2, "master_seed": 1, "metrics": ["area"]})")), Error);
  CHECK_FALSE(plan_from_json(nlohmann::json::parse(R"({"polytope": "cube-3", "N_grid": [10],
                  "replications": 2})")).has_seed);
  try {
    load_plan_file("/no/such/plan.json");
    FAIL("missing file accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
    CHECK(std::string(e.what()).find("/no/such/plan.json") != std::string::npos);
  }
}

TEST_CASE("corner miss") {
  CHECK(corner_miss(3, 1, 10, 1).measured == 0.0);
  CHECK_THROWS_AS(corner_miss(3, 2, 10, 1), Error);
  const CornerMissResult r = corner_miss(3, 1000, 20000, 4);
  CHECK(r.exact == doctest::Approx(std::pow(1.0 - 1e-3, 1000)));
  CHECK(std::abs(r.measured - r.exact) <= 4.0 * r.stderr_);
  CHECK(r.scale == doctest::Approx(std::sqrt(4.0 / 1000)));
  const CornerMissResult four = corner_miss(4, 5000, 20000, 5);
  CHECK(std::abs(four.measured - four.exact) <= 4.0 * four.stderr_);
}

TEST_CASE("occupancy demo") {
  const OccupancyDemoResult r = occupancy_demo(make_cube(3), 10000, 100, 6);
  CHECK(r.fraction >= 0.99);
  CHECK_THROWS_AS(occupancy_demo(make_cube(3), 2, 1, 6), Error);
}

}
