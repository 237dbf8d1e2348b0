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
#include "hullaw/hullaw.h"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hullaw/asymptotics.hpp"
#include "hullaw/error.hpp"
#include "hullaw/experiment.hpp"
#include "hullaw/hull.hpp"
#include "hullaw/polytope_io.hpp"
#include "hullaw/report.hpp"
#include "hullaw/rng.hpp"
#include "hullaw/sampler.hpp"
#include "hullaw/verify.hpp"

using nlohmann::json;
using namespace hullaw;

struct hullaw_polytope {
  std::shared_ptr<const SimplePolytope> p;
};
struct hullaw_plan {
  ExperimentPlan plan;
};
struct hullaw_run {
  RunResult run;
  std::vector<MetricSummary> summary;
  std::vector<NamedFit> fits;
};

namespace {

thread_local std::string last_error;

hullaw_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return HULLAW_E_INVALID_ARGUMENT;
    case ErrorCode::out_of_range: return HULLAW_E_OUT_OF_RANGE;
    case ErrorCode::non_simple: return HULLAW_E_NON_SIMPLE;
    case ErrorCode::degenerate: return HULLAW_E_DEGENERATE;
    case ErrorCode::regime: return HULLAW_E_REGIME;
    case ErrorCode::divergent: return HULLAW_E_DIVERGENT;
    case ErrorCode::io: return HULLAW_E_IO;
    case ErrorCode::parse: return HULLAW_E_PARSE;
    case ErrorCode::check_failed: return HULLAW_E_CHECK_FAILED;
    case ErrorCode::internal: return HULLAW_E_INTERNAL;
  }
  return HULLAW_E_INTERNAL;
}

template <class F>
hullaw_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const json::exception& e) {
    last_error = std::string("JSON: ") + e.what();
    return HULLAW_E_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return HULLAW_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HULLAW_E_INTERNAL;
  }
}

hullaw_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return HULLAW_E_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parse_request(const char* text) {
  if (!text) fail(ErrorCode::invalid_argument, "null request");
  json doc = json::parse(text);
  if (!doc.is_object()) fail(ErrorCode::parse, "request must be a JSON object");
  return doc;
}

double number_field(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) fail(ErrorCode::parse, "'" + s + "' is not a number");
    return x;
  }
  fail(ErrorCode::parse, "expected a number");
}

std::vector<double> number_list(const json& v) {
  std::vector<double> out;
  if (v.is_array())
    for (const auto& x : v) out.push_back(number_field(x));
  else
    out.push_back(number_field(v));
  return out;
}

std::uint64_t seed_field(const json& req) {
  if (!req.contains("seed")) return 0;
  const json& s = req.at("seed");
  if (s.is_string()) return std::stoull(s.get<std::string>(), nullptr, 0);
  return s.get<std::uint64_t>();
}

std::size_t samples_field(const json& req, std::size_t fallback) {
  if (!req.contains("samples")) return fallback;
  const double x = number_field(req.at("samples"));
  if (!(x >= 2.0) || x > 1e12) fail(ErrorCode::invalid_argument, "samples must lie in [2, 1e12]");
  return static_cast<std::size_t>(x);
}

json jrow(const ExponentVector& ev, const JEvalResult& r) {
  const int n = ev.n();
  int log_power = 0;
  if (ev.regime == Regime::two_extremal) log_power = n - 2;
  if (ev.regime == Regime::multi_strict) log_power = n - 3;
  const double scaled = r.value * std::pow(r.N, -ev.exponent()) / std::pow(std::log(r.N), log_power);
  return {{"n", n},
          {"l", ev.l},
          {"alpha", ev.alpha},
          {"N", r.N},
          {"method", to_string(r.method)},
          {"value", r.value},
          {"error_estimate", r.error_estimate},
          {"regime", to_string(ev.regime)},
          {"exponent", ev.exponent()},
          {"log_power", log_power},
          {"scaled", scaled}};
}

}  // namespace

extern "C" {

const char* hullaw_version(void) { return "0.1.0"; }

const char* hullaw_status_name(hullaw_status status) {
  switch (status) {
    case HULLAW_OK: return "ok";
    case HULLAW_E_INVALID_ARGUMENT: return "invalid_argument";
    case HULLAW_E_OUT_OF_RANGE: return "out_of_range";
    case HULLAW_E_NON_SIMPLE: return "non_simple";
    case HULLAW_E_DEGENERATE: return "degenerate";
    case HULLAW_E_REGIME: return "regime";
    case HULLAW_E_DIVERGENT: return "divergent";
    case HULLAW_E_IO: return "io";
    case HULLAW_E_PARSE: return "parse";
    case HULLAW_E_CHECK_FAILED: return "check_failed";
    case HULLAW_E_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* hullaw_last_error(void) { return last_error.c_str(); }

void hullaw_string_free(char* s) { std::free(s); }

uint64_t hullaw_entropy_seed(void) {
  std::random_device rd;
  const std::uint64_t hi = rd(), lo = rd();
  return mix64(hi << 32 ^ lo ^ static_cast<std::uint64_t>(std::chrono::steady_clock::now().time_since_epoch().count()));
}

hullaw_status hullaw_polytope_create(const char* name_or_path, hullaw_polytope** out) {
  if (!name_or_path) return null_argument("name_or_path");
  if (!out) return null_argument("out");
  return guarded([&] {
    auto p = std::make_shared<const SimplePolytope>(resolve_polytope(name_or_path));
    *out = new hullaw_polytope{std::move(p)};
    return HULLAW_OK;
  });
}

hullaw_status hullaw_polytope_from_json(const char* text, const char* name, hullaw_polytope** out) {
  if (!text) return null_argument("json");
  if (!out) return null_argument("out");
  return guarded([&] {
    auto p = std::make_shared<const SimplePolytope>(polytope_from_json(json::parse(text), name ? name : "custom"));
    *out = new hullaw_polytope{std::move(p)};
    return HULLAW_OK;
  });
}

void hullaw_polytope_free(hullaw_polytope* p) { delete p; }

int hullaw_polytope_dim(const hullaw_polytope* p) { return p ? p->p->dim() : 0; }
double hullaw_polytope_volume(const hullaw_polytope* p) { return p ? p->p->volume() : 0.0; }
double hullaw_polytope_surface_area(const hullaw_polytope* p) { return p ? p->p->surface_area() : 0.0; }
uint64_t hullaw_polytope_flags(const hullaw_polytope* p) { return p ? p->p->flag_count() : 0; }

hullaw_status hullaw_polytope_f_vector(const hullaw_polytope* p, uint64_t* out, size_t capacity) {
  if (!p) return null_argument("polytope");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto f = p->p->f_vector();
    if (capacity < f.size()) fail(ErrorCode::invalid_argument, "f-vector buffer too small");
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
    return HULLAW_OK;
  });
}

hullaw_status hullaw_polytope_to_json(const hullaw_polytope* p, char** out_json) {
  if (!p) return null_argument("polytope");
  if (!out_json) return null_argument("out_json");
  return guarded([&] {
    json doc = polytope_to_json(*p->p);
    doc["f_vector"] = p->p->f_vector();
    doc["flags"] = p->p->flag_count();
    doc["volume"] = p->p->volume();
    doc["surface_area"] = p->p->surface_area();
    *out_json = dup_string(doc.dump(2) + "\n");
    return HULLAW_OK;
  });
}

hullaw_status hullaw_polytope_save(const hullaw_polytope* p, const char* path) {
  if (!p) return null_argument("polytope");
  if (!path) return null_argument("path");
  return guarded([&] {
    save_polytope_file(*p->p, path);
    return HULLAW_OK;
  });
}

hullaw_status hullaw_sample_csv(const hullaw_polytope* p, uint64_t N, uint64_t seed, char** out_csv) {
  if (!p) return null_argument("polytope");
  if (!out_csv) return null_argument("out_csv");
  return guarded([&] {
    const SampleBatch b = sample_boundary(*p->p, N, seed);
    std::ostringstream os;
    write_batch_csv(b, os);
    *out_csv = dup_string(os.str());
    return HULLAW_OK;
  });
}

hullaw_status hullaw_hull_off(const hullaw_polytope* p, uint64_t N, uint64_t seed, char** out_off) {
  if (!p) return null_argument("polytope");
  if (!out_off) return null_argument("out_off");
  return guarded([&] {
    const SampleBatch b = sample_boundary(*p->p, N, seed);
    HullOptions opt;
    opt.labels = b.facet_ids;
    const HullMesh m = convex_hull(b.points, opt);
    std::ostringstream os;
    write_off(m, os);
    *out_off = dup_string(os.str());
    return HULLAW_OK;
  });
}

hullaw_status hullaw_plan_load(const char* path, hullaw_plan** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new hullaw_plan{load_plan_file(path)};
    return HULLAW_OK;
  });
}

hullaw_status hullaw_plan_from_json(const char* text, hullaw_plan** out) {
  if (!text) return null_argument("json");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new hullaw_plan{plan_from_json(json::parse(text))};
    return HULLAW_OK;
  });
}

void hullaw_plan_free(hullaw_plan* plan) { delete plan; }
int hullaw_plan_has_seed(const hullaw_plan* plan) { return plan && plan->plan.has_seed ? 1 : 0; }
uint64_t hullaw_plan_seed(const hullaw_plan* plan) { return plan ? plan->plan.master_seed : 0; }

void hullaw_plan_set_seed(hullaw_plan* plan, uint64_t seed) {
  if (!plan) return;
  plan->plan.master_seed = seed;
  plan->plan.has_seed = true;
}

hullaw_status hullaw_plan_to_json(const hullaw_plan* plan, char** out_json) {
  if (!plan) return null_argument("plan");
  if (!out_json) return null_argument("out_json");
  return guarded([&] {
    *out_json = dup_string(plan_to_json(plan->plan).dump(2) + "\n");
    return HULLAW_OK;
  });
}

hullaw_status hullaw_plan_polytope(const hullaw_plan* plan, hullaw_polytope** out) {
  if (!plan) return null_argument("plan");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new hullaw_polytope{plan->plan.polytope};
    return HULLAW_OK;
  });
}

uint64_t hullaw_plan_replication_seed(const hullaw_plan* plan, int64_t N, int replication) {
  return plan ? replication_seed(plan->plan.master_seed, N, replication) : 0;
}

hullaw_status hullaw_run_plan(const hullaw_plan* plan, int threads, hullaw_progress_fn progress, void* user,
                              hullaw_run** out) {
  if (!plan) return null_argument("plan");
  if (!out) return null_argument("out");
  return guarded([&] {
    RunOptions opt;
    opt.threads = threads;
    if (progress) opt.progress = [progress, user](std::size_t d, std::size_t t) { progress(d, t, user); };
    auto run = std::make_unique<hullaw_run>();
    run->run = run_plan(plan->plan, opt);
    run->summary = summarize(run->run);
    run->fits = default_fits(run->run, run->summary);
    *out = run.release();
    return HULLAW_OK;
  });
}

void hullaw_run_free(hullaw_run* run) { delete run; }
size_t hullaw_run_record_count(const hullaw_run* run) { return run ? run->run.records.size() : 0; }
size_t hullaw_run_failures(const hullaw_run* run) { return run ? run->run.failures : 0; }
size_t hullaw_run_violations(const hullaw_run* run) { return run ? run->run.invariant_violations.size() : 0; }

hullaw_status hullaw_run_records_csv(const hullaw_run* run, char** out_csv) {
  if (!run) return null_argument("run");
  if (!out_csv) return null_argument("out_csv");
  return guarded([&] {
    *out_csv = dup_string(records_csv(run->run));
    return HULLAW_OK;
  });
}

hullaw_status hullaw_run_summary_json(const hullaw_run* run, char** out_json) {
  if (!run) return null_argument("run");
  if (!out_json) return null_argument("out_json");
  return guarded([&] {
    *out_json = dup_string(summary_json(run->run, run->summary, run->fits).dump(2) + "\n");
    return HULLAW_OK;
  });
}

hullaw_status hullaw_run_write(const hullaw_run* run, const char* dir, char** out_manifest) {
  if (!run) return null_argument("run");
  if (!dir) return null_argument("dir");
  return guarded([&] {
    const RunFiles files = write_run(run->run, run->summary, run->fits, dir);
    if (out_manifest) *out_manifest = dup_string(load_json_file(files.manifest).dump(2) + "\n");
    return HULLAW_OK;
  });
}

hullaw_status hullaw_fit_json(const char* request, char** out_json) {
  if (!out_json) return null_argument("out_json");
  return guarded([&] {
    const json req = parse_request(request);
    std::vector<double> Ns, means, se;
    int dim = 3;
    const std::string metric = req.value("metric", std::string("vol_diff"));
    if (req.contains("summary")) {
      const json sum = load_json_file(req.at("summary").get<std::string>());
      dim = sum.at("polytope").at("dimension").get<int>();
      for (const auto& row : sum.at("per_N")) {
        if (row.at("metric").get<std::string>() != metric) continue;
        Ns.push_back(row.at("N").get<double>());
        means.push_back(row.at("mean").get<double>());
        se.push_back(row.at("stderr").get<double>());
      }
      if (Ns.empty()) fail(ErrorCode::invalid_argument, "summary has no rows for metric '" + metric + "'");
    } else if (req.contains("points")) {
      for (const auto& row : req.at("points")) {
        Ns.push_back(number_field(row.at("N")));
        means.push_back(number_field(row.at("mean")));
        se.push_back(row.contains("stderr") ? number_field(row.at("stderr")) : 0.0);
      }
      if (req.contains("dimension")) dim = req.at("dimension").get<int>();
    } else {
      fail(ErrorCode::invalid_argument, "fit request needs 'summary' or 'points'");
    }
    const bool counts = metric == "f0" || metric == "f_top_proper" || metric == "f_top_total";
    const std::string model = req.value("model", std::string(counts ? "log_power" : "power_law"));
    NamedFit nf;
    nf.metric = metric;
    if (model == "power_law") {
      nf.fit = fit_power_law(Ns, means, se);
    } else if (model == "log_power") {
      const double p = req.contains("p") ? number_field(req.at("p")) : std::max(dim - 2, 0);
      nf.fit = fit_log_power(Ns, means, se, p);
      nf.diagnostic = free_power_diagnostic(Ns, means, se);
    } else {
      fail(ErrorCode::invalid_argument, "unknown model '" + model + "' (power_law or log_power)");
    }
    *out_json = dup_string(fit_to_json(nf).dump(2) + "\n");
    return HULLAW_OK;
  });
}

hullaw_status hullaw_jeval_json(const char* request, char** out_json) {
  if (!out_json) return null_argument("out_json");
  return guarded([&] {
    const json req = parse_request(request);
    std::vector<std::string> text;
    for (const auto& v : req.at("l")) {
      if (v.is_string()) text.push_back(v.get<std::string>());
      else text.push_back(format_double(v.get<double>()));
    }
    const double alpha = number_field(req.at("alpha"));
    if (req.contains("n") && req.at("n").get<std::size_t>() != text.size())
      fail(ErrorCode::invalid_argument, "n does not match the number of exponents");
    const ExponentVector ev = ExponentVector::parse(text, alpha);
    const std::vector<double> grid = number_list(req.at("N"));
    const std::string method = req.value("method", std::string("transformed"));
    const std::size_t samples = samples_field(req, 1000000);
    const std::uint64_t seed = seed_field(req);
    json rows = json::array();
    if (method == "log_regime") {
      const LogRegimeFit f = j_log_regime(ev, grid, samples, seed);
      for (const auto& p : f.points) rows.push_back(jrow(ev, p));
      rows.push_back({{"n", ev.n()},
                      {"l", ev.l},
                      {"alpha", ev.alpha},
                      {"method", "log_regime"},
                      {"regime", to_string(ev.regime)},
                      {"exponent", f.exponent},
                      {"log_power", f.log_power},
                      {"constant", f.constant},
                      {"intercept", f.intercept},
                      {"residual", f.residual},
                      {"residual_minus", std::isfinite(f.residual_minus) ? json(f.residual_minus) : json(nullptr)},
                      {"residual_plus", f.residual_plus}});
    } else {
      const bool direct = method == "direct" || method == "both" || method == "all";
      const bool transformed = method == "transformed" || method == "both" || method == "all";
      const bool asymptotic = method == "asymptotic" || (method == "all" && ev.regime == Regime::interior);
      if (!direct && !transformed && !asymptotic)
        fail(ErrorCode::invalid_argument, "unknown method '" + method +
                                              "' (direct, transformed, asymptotic, both, all, log_regime)");
      for (double N : grid) {
        if (direct) rows.push_back(jrow(ev, j_direct(ev, N)));
        if (transformed) rows.push_back(jrow(ev, j_transformed(ev, N, samples, seed)));
        if (asymptotic) rows.push_back(jrow(ev, j_asymptotic(ev, N)));
      }
    }
    *out_json = dup_string(rows.dump(2) + "\n");
    return HULLAW_OK;
  });
}

hullaw_status hullaw_seval_json(const char* request, char** out_json) {
  if (!out_json) return null_argument("out_json");
  return guarded([&] {
    const json req = parse_request(request);
    const std::vector<double> q = number_list(req.at("q"));
    const double alpha = number_field(req.at("alpha"));
    const std::vector<double> grid = number_list(req.at("N"));
    const std::size_t samples = samples_field(req, 1000000);
    const std::uint64_t seed = seed_field(req);
    const int n = static_cast<int>(q.size());
    std::vector<double> swapped = q;
    if (n >= 2) std::swap(swapped[0], swapped[1]);
    json rows = json::array();
    for (double N : grid) {
      const McEstimate a = s_eval(q, alpha, N, samples, seed);
      const McEstimate b = s_eval(swapped, alpha, N, samples, derive_seed(seed, 1));
      const double sym = a.value + b.value;
      const double lp = std::pow(std::log(N), n - 2);
      rows.push_back({{"q", q},
                      {"alpha", alpha},
                      {"N", N},
                      {"value", a.value},
                      {"error_estimate", a.error},
                      {"value_over_log_power", a.value / lp},
                      {"symmetrized", sym},
                      {"symmetrized_error", std::hypot(a.error, b.error)},
                      {"symmetrized_over_log_power", sym / lp},
                      {"log_power", n - 2}});
    }
    *out_json = dup_string(rows.dump(2) + "\n");
    return HULLAW_OK;
  });
}

hullaw_status hullaw_verify_json(const char* request, char** out_json) {
  if (!out_json) return null_argument("out_json");
  return guarded([&] {
    const json req = parse_request(request);
    const VerifyReport rep = run_verify(req.value("suite", std::string("all")), seed_field(req));
    json checks = json::array();
    for (const auto& c : rep.checks)
      checks.push_back({{"suite", c.suite}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    const json doc = {{"passed", rep.passed()}, {"failures", rep.failures()}, {"checks", checks}};
    *out_json = dup_string(doc.dump(2) + "\n");
    if (!rep.passed()) {
      last_error = std::to_string(rep.failures()) + " check(s) failed";
      return HULLAW_E_CHECK_FAILED;
    }
    return HULLAW_OK;
  });
}

hullaw_status hullaw_demo_json(const char* request, char** out_json) {
  if (!out_json) return null_argument("out_json");
  return guarded([&] {
    const json req = parse_request(request);
    const std::string name = req.value("name", std::string());
    const std::uint64_t seed = seed_field(req);
    auto count = [&](const char* key, double fallback) {
      const double x = req.contains(key) ? number_field(req.at(key)) : fallback;
      if (!(x >= 0.0) || x != std::floor(x) || x > 9e15)
        fail(ErrorCode::invalid_argument, std::string(key) + " must be a non-negative integer");
      return static_cast<std::int64_t>(x);
    };
    json doc;
    if (name == "corner-miss") {
      const CornerMissResult r =
          corner_miss(static_cast<int>(count("n", 3)), count("N", 1e4), static_cast<std::size_t>(count("reps", 1e5)), seed);
      doc = {{"demo", name},       {"n", r.n},           {"N", r.N},
             {"reps", r.reps},     {"scale", r.scale},   {"measured", r.measured},
             {"stderr", r.stderr_}, {"exact", r.exact},  {"limit", r.limit},
             {"z_exact", r.stderr_ > 0 ? (r.measured - r.exact) / r.stderr_ : 0.0}};
    } else if (name == "occupancy") {
      const SimplePolytope P = resolve_polytope(req.value("polytope", std::string("cube-3")));
      const OccupancyDemoResult r = occupancy_demo(P, count("N", 1e4), static_cast<std::size_t>(count("reps", 100)), seed);
      doc = {{"demo", name},         {"polytope", P.name()},    {"N", r.N},
             {"reps", r.reps},       {"flag_true", r.flag_true}, {"fraction", r.fraction},
             {"min_facet_count", r.min_margin_facet_count}};
    } else {
      fail(ErrorCode::invalid_argument, "unknown demo '" + name + "' (corner-miss or occupancy)");
    }
    *out_json = dup_string(doc.dump(2) + "\n");
    return HULLAW_OK;
  });
}

}  // extern "C"
