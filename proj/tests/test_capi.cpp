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
#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "hullaw/hullaw.h"

namespace {

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  hullaw_string_free(s);
  return out;
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("status names and version") {
  CHECK(std::string(hullaw_status_name(HULLAW_OK)) == "ok");
  CHECK(std::string(hullaw_status_name(HULLAW_E_REGIME)) == "regime");
  CHECK(std::strlen(hullaw_version()) > 0);
}

TEST_CASE("builtin polytope") {
  hullaw_polytope* p = nullptr;
  REQUIRE(hullaw_polytope_create("cube-3", &p) == HULLAW_OK);
  CHECK(hullaw_polytope_dim(p) == 3);
  CHECK(hullaw_polytope_volume(p) == doctest::Approx(1.0));
  CHECK(hullaw_polytope_surface_area(p) == doctest::Approx(6.0));
  CHECK(hullaw_polytope_flags(p) == 48);
  uint64_t f[3];
  REQUIRE(hullaw_polytope_f_vector(p, f, 3) == HULLAW_OK);
  CHECK(f[0] == 8);
  CHECK(f[1] == 12);
  CHECK(f[2] == 6);
  CHECK(hullaw_polytope_f_vector(p, f, 2) == HULLAW_E_INVALID_ARGUMENT);

  char* json = nullptr;
  REQUIRE(hullaw_polytope_to_json(p, &json) == HULLAW_OK);
  hullaw_polytope* q = nullptr;
  REQUIRE(hullaw_polytope_from_json(json, "copy", &q) == HULLAW_OK);
  hullaw_string_free(json);
  CHECK(hullaw_polytope_flags(q) == 48);
  hullaw_polytope_free(q);

  char* csv = nullptr;
  REQUIRE(hullaw_sample_csv(p, 10, 3, &csv) == HULLAW_OK);
  const std::string text = take(csv);
  CHECK(std::count(text.begin(), text.end(), '\n') >= 10);
  char* again = nullptr;
  REQUIRE(hullaw_sample_csv(p, 10, 3, &again) == HULLAW_OK);
  CHECK(take(again) == text);

  char* off = nullptr;
  REQUIRE(hullaw_hull_off(p, 100, 3, &off) == HULLAW_OK);
  CHECK(take(off).rfind("OFF", 0) == 0);
  hullaw_polytope_free(p);
}

TEST_CASE("errors map to status codes") {
  hullaw_polytope* p = nullptr;
  CHECK(hullaw_polytope_create("dodecahedron-3", &p) != HULLAW_OK);
  CHECK(p == nullptr);
  CHECK(std::strlen(hullaw_last_error()) > 0);
  CHECK(hullaw_polytope_create(nullptr, &p) == HULLAW_E_INVALID_ARGUMENT);

  const char* octa = R"({"vertices": [[1,0,0],[-1,0,0],[0,1,0],[0,-1,0],[0,0,1],[0,0,-1]]})";
  CHECK(hullaw_polytope_from_json(octa, "octahedron", &p) == HULLAW_E_NON_SIMPLE);
  CHECK(std::string(hullaw_last_error()).find("non-simple") != std::string::npos);

  CHECK(hullaw_polytope_from_json("{not json", "x", &p) == HULLAW_E_PARSE);

  hullaw_plan* plan = nullptr;
  CHECK(hullaw_plan_load("/no/such/plan.json", &plan) == HULLAW_E_IO);

  char* out = nullptr;
  CHECK(hullaw_jeval_json(R"({"l": [1, 1, 0], "alpha": 0.1, "N": [1000], "method": "asymptotic"})", &out) ==
        HULLAW_E_REGIME);
  CHECK(out == nullptr);
  CHECK(std::string(hullaw_last_error()).find("l_3 = L/(n-1) - 1") != std::string::npos);
  CHECK(hullaw_jeval_json(R"({"l": [3, 0, 0], "alpha": 0.1, "N": [1000]})", &out) == HULLAW_E_REGIME);
  CHECK(hullaw_verify_json(R"({"suite": "bogus", "seed": 1})", &out) == HULLAW_E_INVALID_ARGUMENT);
  CHECK(hullaw_demo_json(R"({"name": "corner-miss", "n": 3, "N": 2, "reps": 10, "seed": 1})", &out) ==
        HULLAW_E_OUT_OF_RANGE);
}

TEST_CASE("plan and run") {
  const char* doc = R"({"polytope": "cube-3", "N_grid": [128, 256], "replications": 2, "master_seed": 4,
                        "metrics": ["f0", "vol_diff"]})";
  hullaw_plan* plan = nullptr;
  REQUIRE(hullaw_plan_from_json(doc, &plan) == HULLAW_OK);
  CHECK(hullaw_plan_has_seed(plan) == 1);
  CHECK(hullaw_plan_seed(plan) == 4);
  const uint64_t s = hullaw_plan_replication_seed(plan, 128, 1);
  hullaw_plan_set_seed(plan, 5);
  CHECK(hullaw_plan_replication_seed(plan, 128, 1) != s);
  hullaw_plan_set_seed(plan, 4);

  hullaw_polytope* body = nullptr;
  REQUIRE(hullaw_plan_polytope(plan, &body) == HULLAW_OK);
  CHECK(hullaw_polytope_dim(body) == 3);
  hullaw_polytope_free(body);

  struct Progress {
    size_t calls = 0;
    size_t total = 0;
  } progress;
  auto cb = [](size_t, size_t total, void* user) {
    auto* p = static_cast<Progress*>(user);
    ++p->calls;
    p->total = total;
  };
  hullaw_run* a = nullptr;
  hullaw_run* b = nullptr;
  REQUIRE(hullaw_run_plan(plan, 1, cb, &progress, &a) == HULLAW_OK);
  REQUIRE(hullaw_run_plan(plan, 3, nullptr, nullptr, &b) == HULLAW_OK);
  CHECK(progress.calls == 4);
  CHECK(progress.total == 4);
  CHECK(hullaw_run_record_count(a) == 4);
  CHECK(hullaw_run_failures(a) == 0);
  CHECK(hullaw_run_violations(a) == 0);

  char* ca = nullptr;
  char* cb2 = nullptr;
  REQUIRE(hullaw_run_records_csv(a, &ca) == HULLAW_OK);
  REQUIRE(hullaw_run_records_csv(b, &cb2) == HULLAW_OK);
  const std::string csv = take(ca);
  CHECK(csv == take(cb2));
  CHECK(csv.rfind("N,replication,metric,value\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 4 * 2);

  char* summary = nullptr;
  REQUIRE(hullaw_run_summary_json(a, &summary) == HULLAW_OK);
  const auto sj = nlohmann::json::parse(take(summary));
  CHECK(sj.at("plan").at("master_seed") == 4);

  const std::string dir = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/hullaw_capi_run";
  char* manifest = nullptr;
  REQUIRE(hullaw_run_write(a, dir.c_str(), &manifest) == HULLAW_OK);
  const auto mj = nlohmann::json::parse(take(manifest));
  CHECK(mj.contains("run_hash"));

  hullaw_run_free(a);
  hullaw_run_free(b);
  char* pj = nullptr;
  REQUIRE(hullaw_plan_to_json(plan, &pj) == HULLAW_OK);
  CHECK(nlohmann::json::parse(take(pj)).at("N_grid").size() == 2);
  hullaw_plan_free(plan);
}

TEST_CASE("request endpoints") {
  char* out = nullptr;
  REQUIRE(hullaw_jeval_json(R"({"l": [1, 1, 1], "alpha": 0.1, "N": [1000, 10000], "method": "all",
                               "samples": 20000, "seed": 3})", &out) == HULLAW_OK);
  const auto rows = nlohmann::json::parse(take(out));
  CHECK(rows.size() == 6);
  for (const auto& r : rows) {
    CHECK(r.at("regime") == "interior");
    CHECK(r.at("value").get<double>() > 0.0);
  }

  REQUIRE(hullaw_seval_json(R"({"q": [1, 0, -1], "alpha": 0.1, "N": [1000], "samples": 20000, "seed": 3})",
                            &out) == HULLAW_OK);
  CHECK(nlohmann::json::parse(take(out)).size() == 1);

  REQUIRE(hullaw_verify_json(R"({"suite": "substitution", "seed": 8})", &out) == HULLAW_OK);
  CHECK(nlohmann::json::parse(take(out)).at("passed") == true);

  REQUIRE(hullaw_demo_json(R"({"name": "corner-miss", "n": 3, "N": 1, "reps": 10, "seed": 1})", &out) ==
          HULLAW_OK);
  CHECK(nlohmann::json::parse(take(out)).at("measured") == 0.0);

  const char* fit = R"({"points": [{"N": 100, "mean": 1e-3, "stderr": 1e-5},
                                    {"N": 200, "mean": 3.5355339059327376e-4, "stderr": 3.5e-6},
                                    {"N": 400, "mean": 1.25e-4, "stderr": 1.25e-6},
                                    {"N": 800, "mean": 4.419417382415922e-5, "stderr": 4.4e-7}],
                        "model": "power_law"})";
  REQUIRE(hullaw_fit_json(fit, &out) == HULLAW_OK);
  const auto fj = nlohmann::json::parse(take(out));
  CHECK(fj.at("exponent_or_power").get<double>() == doctest::Approx(-1.5).epsilon(1e-9));
}

}
