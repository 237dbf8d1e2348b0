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
// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   hullaw_acceptance [--seed S] [--threads T] [--only 1,5,...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hullaw/asymptotics.hpp"
#include "hullaw/error.hpp"
#include "hullaw/experiment.hpp"
#include "hullaw/fit.hpp"
#include "hullaw/oracle.hpp"
#include "hullaw/report.hpp"
#include "hullaw/rng.hpp"
#include "hullaw/verify.hpp"

using namespace hullaw;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x, int digits = 5) {
  std::ostringstream s;
  s.precision(digits);
  s << x;
  return s.str();
}

bool within(double x, double target, double tol) { return std::abs(x - target) <= tol; }

struct Series {
  std::vector<double> N, mean, se;
};

Series series(const std::vector<MetricSummary>& summary, const std::string& metric) {
  Series s;
  for (const auto& m : summary)
    if (m.metric == metric) {
      s.N.push_back(static_cast<double>(m.N));
      s.mean.push_back(m.mean);
      s.se.push_back(m.stderr_);
    }
  return s;
}

std::vector<std::int64_t> powers_of_two(int lo, int hi) {
  std::vector<std::int64_t> g;
  for (int k = lo; k <= hi; ++k) g.push_back(std::int64_t{1} << k);
  return g;
}

struct Context {
  std::uint64_t seed = 20261016;
  int threads = 1;
  std::map<std::string, std::vector<MetricSummary>> runs;

  const std::vector<MetricSummary>& run(const std::string& key, const char* body, std::vector<std::int64_t> grid,
                                        int reps, std::vector<Metric> metrics) {
    auto it = runs.find(key);
    if (it != runs.end()) return it->second;
    ExperimentPlan p;
    p.polytope_ref = body;
    p.polytope = std::make_shared<const SimplePolytope>(make_builtin(body));
    p.N_grid = std::move(grid);
    p.replications = reps;
    p.master_seed = derive_seed(seed, fnv1a64(key));
    p.metrics = std::move(metrics);
    const auto t0 = std::chrono::steady_clock::now();
    const RunResult r = run_plan(p, {threads, {}});
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "  [%s: %zu replications in %.1f s, %zu failures]\n", key.c_str(), r.records.size(), sec,
                 r.failures);
    if (r.failures != 0 || !r.invariant_violations.empty())
      fail(ErrorCode::check_failed, key + ": " + std::to_string(r.failures) + " failed replications, " +
                                        std::to_string(r.invariant_violations.size()) + " invariant violations");
    return runs.emplace(key, summarize(r)).first->second;
  }

  // Criteria 1, 3, 4 and 5 share these runs.
  const std::vector<MetricSummary>& cube3() {
    return run("cube-3", "cube-3", powers_of_two(9, 15), 200,
               {Metric::f0, Metric::f_top_proper, Metric::vol_diff, Metric::v_dn});
  }
  const std::vector<MetricSummary>& tetra() {
    return run("simplex-3", "simplex-3", powers_of_two(9, 15), 200, {Metric::f0, Metric::f_top_proper});
  }
};

Outcome volume_gap_3(Context& c) {
  const Series s = series(c.cube3(), "vol_diff");
  const FitResult f = fit_power_law(s.N, s.mean, s.se);
  return {within(f.exponent_or_power, -1.5, 0.10),
          "slope " + fmt(f.exponent_or_power) + " +- " + fmt(f.stderr_, 2) + ", target -1.5 +- 0.10"};
}

Outcome volume_gap_4(Context& c) {
  const Series s = series(c.run("cube-4", "cube-4", powers_of_two(9, 13), 100, {Metric::vol_diff}), "vol_diff");
  const FitResult f = fit_power_law(s.N, s.mean, s.se);
  return {within(f.exponent_or_power, -4.0 / 3.0, 0.12),
          "slope " + fmt(f.exponent_or_power) + " +- " + fmt(f.stderr_, 2) + ", target -1.3333 +- 0.12"};
}

Outcome log_law(Context& c, const std::string& metric, bool need_free_p) {
  const Series cube = series(c.cube3(), metric), tet = series(c.tetra(), metric);
  const FitResult fc = fit_log_power(cube.N, cube.mean, cube.se, 1);
  const FitResult ft = fit_log_power(tet.N, tet.mean, tet.se, 1);
  const FreePowerDiagnostic dc = free_power_diagnostic(cube.N, cube.mean, cube.se);
  const FreePowerDiagnostic dt = free_power_diagnostic(tet.N, tet.mean, tet.se);
  const double ratio = fc.constant / ft.constant;
  const bool p_ok = dc.best_integer == 1.0 && dt.best_integer == 1.0;
  const std::uint64_t flags_cube = brute_force_lattice(make_cube(3)).flags;
  const std::uint64_t flags_tet = brute_force_lattice(make_simplex(3)).flags;
  std::string d = "c_cube " + fmt(fc.constant) + ", c_tet " + fmt(ft.constant) + ", ratio " + fmt(ratio) +
                  " (target 2 +- 0.3, flags " + std::to_string(flags_cube) + "/" + std::to_string(flags_tet) +
                  "), free p " + fmt(dc.best_integer, 1) + "/" + fmt(dt.best_integer, 1) + " (continuous " +
                  fmt(dc.best_continuous, 3) + "/" + fmt(dt.best_continuous, 3) + ")";
  return {within(ratio, 2.0, 0.3) && (!need_free_p || p_ok), d};
}

Outcome dn_subdominance(Context& c) {
  const Series v = series(c.cube3(), "vol_diff"), dn = series(c.cube3(), "V_DN");
  const FitResult fv = fit_power_law(v.N, v.mean, v.se);
  const FitResult fd = fit_power_law(dn.N, dn.mean, dn.se);
  return {within(fd.exponent_or_power, -2.0, 0.2) && fd.exponent_or_power < fv.exponent_or_power,
          "V_DN slope " + fmt(fd.exponent_or_power) + " +- " + fmt(fd.stderr_, 2) + " (target -2 +- 0.2), vol_diff " +
              fmt(fv.exponent_or_power)};
}

Outcome corner(Context& c) {
  const CornerMissResult r = corner_miss(3, 10000, 100000, derive_seed(c.seed, 6));
  const bool ok = within(r.measured, 0.3679, 0.010) && std::abs(r.measured - r.exact) <= 3.0 * r.stderr_;
  return {ok, "measured " + fmt(r.measured) + " +- " + fmt(r.stderr_, 2) + ", exact " + fmt(r.exact, 6)};
}

Outcome j_interior(Context& c) {
  const ExponentVector ev = ExponentVector::make({1, 1, 1}, 0.1);
  const double grid[] = {1e3, 1e4, 1e5};
  std::vector<double> dev;
  std::string d = "deviation";
  for (double N : grid) {
    const JEvalResult t = j_transformed(ev, N, 4000000, derive_seed(c.seed, 7));
    const JEvalResult a = j_asymptotic(ev, N);
    dev.push_back(std::abs(t.value / a.value - 1.0));
    d += " " + fmt(dev.back(), 3) + " (mc " + fmt(t.error_estimate / a.value, 2) + ")";
  }
  const double slope = (std::log(dev[2]) - std::log(dev[0])) / (std::log(grid[2]) - std::log(grid[0]));
  const LinearFit lf = weighted_linear_fit(std::vector<double>{std::log(grid[0]), std::log(grid[1]), std::log(grid[2])},
                                           std::vector<double>{std::log(dev[0]), std::log(dev[1]), std::log(dev[2])});
  d += ", slope " + fmt(lf.slope, 3) + " (end points " + fmt(slope, 3) + ", target -0.5 +- 0.15)";
  return {dev[2] <= 0.05 && dev[0] > dev[1] && dev[1] > dev[2] && within(lf.slope, -0.5, 0.15), d};
}

Outcome j_log(Context& c) {
  const std::vector<double> grid = {1e3, 1e4, 1e5, 1e6};
  auto statistic = [&](const ExponentVector& ev, std::size_t k) {
    const double N = grid[k];
    return j_transformed(ev, N, 2000000, derive_seed(c.seed, 8)).value * N * N / std::log(N);
  };
  const ExponentVector two = ExponentVector::make({1, 1, 0}, 0.1);
  std::vector<double> s;
  for (std::size_t k = 0; k < grid.size(); ++k) s.push_back(statistic(two, k));
  const double ratio = s[3] / s[2];
  // No n=3 exponent vector has a multi-strict pattern; the closest
  // non-extremal case has the same N^-2 scale without the logarithm.
  const ExponentVector proxy = ExponentVector::parse({"2/3", "2/3", "2/3"}, 0.1);
  std::vector<double> z;
  for (std::size_t k = 0; k < grid.size(); ++k) z.push_back(statistic(proxy, k));
  const bool to_zero = z[0] > z[1] && z[1] > z[2] && z[2] > z[3] &&
                       z[3] / z[0] <= 1.2 * std::log(grid[0]) / std::log(grid[3]);
  std::string d = "J N^2/ln N:";
  for (double x : s) d += " " + fmt(x, 4);
  d += ", last ratio " + fmt(ratio, 4) + "; non-log case (" + to_string(proxy.regime) + "):";
  for (double x : z) d += " " + fmt(x, 4);
  return {s[3] > 0.0 && within(ratio, 1.0, 0.1) && to_zero, d};
}

Outcome substitution(Context& c) {
  const VerifyReport r = run_verify("substitution", derive_seed(c.seed, 9));
  bool ok = r.checks.size() >= 3;
  std::string d;
  for (std::size_t i = 0; i < std::min<std::size_t>(3, r.checks.size()); ++i) {
    ok = ok && r.checks[i].passed;
    d += (i ? "; " : "") + r.checks[i].name + ": " + r.checks[i].detail;
  }
  return {ok, d};
}

Outcome oracle(Context& c) {
  const HullOracleSummary s = hull_oracle_equivalence(200, 14, derive_seed(c.seed, 10));
  return {s.batches == 200 && s.mismatches == 0,
          std::to_string(s.batches) + " batches, " + std::to_string(s.mismatches) + " mismatches" +
              (s.first_mismatch.empty() ? "" : " (" + s.first_mismatch + ")")};
}

Outcome homogeneity(Context& c) {
  const double s3 = 1.0 / std::sqrt(3.0);
  const double u[3] = {s3, s3, s3};
  std::vector<double> x, y, w;
  for (double h : {0.5, 1.0, 2.0}) {
    const McEstimate m = simplex_moment_mc(1, h, u, 400000, derive_seed(c.seed, 11, x.size()));
    x.push_back(std::log(h));
    y.push_back(std::log(m.value));
    const double rel = m.error / m.value;
    w.push_back(1.0 / (rel * rel));
  }
  const LinearFit f = weighted_linear_fit(x, y, w);
  double sxx = 0.0, sw = 0.0, xm = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    xm += w[i] * x[i];
  }
  xm /= sw;
  for (std::size_t i = 0; i < x.size(); ++i) sxx += w[i] * (x[i] - xm) * (x[i] - xm);
  const double sigma = 1.0 / std::sqrt(sxx);
  return {std::abs(f.slope - 5.0) <= 3.0 * sigma, "exponent " + fmt(f.slope) + " +- " + fmt(sigma, 2) + ", target 5"};
}

Outcome determinism(Context& c) {
  ExperimentPlan p;
  p.polytope_ref = "cube-3";
  p.polytope = std::make_shared<const SimplePolytope>(make_cube(3));
  p.N_grid = {256, 1024, 4096};
  p.replications = 8;
  p.master_seed = derive_seed(c.seed, 12);
  p.metrics = all_metrics();
  const std::string one = records_csv(run_plan(p, {1, {}}));
  bool same = true;
  for (int t : {2, 3, 5}) same = same && records_csv(run_plan(p, {t, {}})) == one;
  return {same, "threads 1/2/3/5, " + std::to_string(one.size()) + " bytes, hash " + hex64(fnv1a64(one))};
}

}  // namespace

int main(int argc, char** argv) {
  Context c;
  if (const char* env = std::getenv("HULLAW_THREADS")) c.threads = std::max(1, std::atoi(env));
  else c.threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--seed" && i + 1 < argc) c.seed = std::strtoull(argv[++i], nullptr, 0);
    else if (a == "--threads" && i + 1 < argc) c.threads = std::max(1, std::atoi(argv[++i]));
    else if (a == "--only" && i + 1 < argc) {
      std::stringstream s(argv[++i]);
      for (std::string tok; std::getline(s, tok, ',');) only.push_back(std::stoi(tok));
    } else {
      std::fprintf(stderr, "usage: %s [--seed S] [--threads T] [--only 1,2,...]\n", argv[0]);
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome(Context&)>>> criteria = {
      {"volume gap exponent, cube n=3", volume_gap_3},
      {"volume gap exponent, cube n=4", volume_gap_4},
      {"proper facet log law, cube/tetrahedron", [](Context& x) { return log_law(x, "f_top_proper", true); }},
      {"vertex count log law, cube/tetrahedron", [](Context& x) { return log_law(x, "f0", false); }},
      {"V_DN subdominance", dn_subdominance},
      {"corner miss probability", corner},
      {"J interior asymptotics", j_interior},
      {"J logarithmic regime", j_log},
      {"substitution suite", substitution},
      {"hull oracle equivalence", oracle},
      {"moment homogeneity", homogeneity},
      {"determinism across thread counts", determinism},
  };

  std::printf("seed %llu, threads %d\n", static_cast<unsigned long long>(c.seed), c.threads);
  std::fflush(stdout);
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second(c);
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                o.detail.c_str(), sec);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d failed\n", failed);
  return failed == 0 ? 0 : 1;
}
