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
#include "hullaw/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "hullaw/classify.hpp"
#include "hullaw/error.hpp"
#include "hullaw/hull.hpp"
#include "hullaw/oracle.hpp"
#include "hullaw/polytope.hpp"
#include "hullaw/rng.hpp"
#include "hullaw/sampler.hpp"

namespace hullaw {

bool VerifyReport::passed() const noexcept { return failures() == 0; }

std::size_t VerifyReport::failures() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

std::vector<std::string> verify_suites() { return {"geometry", "hull-oracle", "substitution", "asymptotics"}; }

std::vector<JCatalogCase> j_catalog() {
  return {
      {{0, 0, 0}, 0.1, 200},          {{1, 1, 1}, 0.1, 200},        {{1, 1, 1}, 1.0 / 6, 2000},
      {{0.5, 0.5, 0.5}, 0.1, 500},    {{1, 0.5, 0}, 0.1, 300},      {{1.5, 1, 1}, 0.2, 100},
      {{1, 1, 0}, 0.1, 200},          {{1, 1, 0}, 1.0 / 6, 3000},   {{0.5, 0.5, -0.5}, 0.1, 400},
      {{1.5, 1.5, 1}, 0.1, 150},      {{0, 0, -1}, 0.1, 200},       {{-0.5, -0.5, -0.5}, 0.05, 100},
      {{1, 1, 1, 1}, 0.125, 60},      {{0, 0, 0, 0}, 0.125, 40},    {{2, 2, 1, 1}, 0.125, 60},
      {{2, 2, 2, 1.5}, 0.125, 60},    {{1.5, 1, 1, 0.5}, 0.1, 50},  {{2, 1, 1, 2.0 / 3}, 0.125, 40},
      {{0.5, 0.5, 0.5, 0.5}, 0.2, 30}, {{2, 1.5, 1.5, 1}, 0.125, 50},
  };
}

HullOracleSummary hull_oracle_equivalence(std::size_t batches, int max_points, std::uint64_t seed) {
  HullOracleSummary out;
  const SimplePolytope bodies[] = {make_cube(3), make_simplex(3), make_prism(3)};
  for (std::size_t t = 0; t < batches; ++t) {
    const SimplePolytope& P = bodies[t % 3];
    Philox pick(derive_seed(seed, 0x0a, t));
    const int N = 4 + static_cast<int>(pick.uniform() * (max_points - 3));
    const SampleBatch b = sample_boundary(P, static_cast<std::size_t>(N), derive_seed(seed, 0x0b, t));
    ++out.batches;
    std::ostringstream why;
    try {
      HullOptions opt;
      opt.labels = b.facet_ids;
      const HullMesh m = convex_hull(b.points, opt);
      const OracleHull o = brute_force_hull(b.points);
      const std::uint64_t f1 = static_cast<std::uint64_t>(m.f0 + m.f_top - 2);
      const bool same = o.f_vector[0] == static_cast<std::uint64_t>(m.f0) && o.f_vector[1] == f1 &&
                        o.f_vector[2] == static_cast<std::uint64_t>(m.f_top) &&
                        std::abs(o.volume - m.volume) <= 1e-9 * std::max(1.0, o.volume);
      if (!same)
        why << P.name() << " N=" << N << ": oracle (" << o.f_vector[0] << "," << o.f_vector[1] << ","
            << o.f_vector[2] << ") vol " << o.volume << ", hull (" << m.f0 << "," << f1 << "," << m.f_top
            << ") vol " << m.volume;
    } catch (const Error& e) {
      // Flat batches (every point on one facet) have no full-dimensional
      // hull; both sides must agree on that.
      try {
        brute_force_hull(b.points);
        why << P.name() << " N=" << N << ": hull failed but oracle did not: " << e.what();
      } catch (const Error&) {
      }
    }
    if (!why.str().empty()) {
      if (out.mismatches == 0) out.first_mismatch = why.str();
      ++out.mismatches;
    }
  }
  return out;
}

namespace {

struct Collector {
  std::string suite;
  VerifyReport* report;

  void check(const std::string& name, const std::function<std::string()>& body) {
    CheckResult r{suite, name, false, ""};
    try {
      r.detail = body();
      r.passed = r.detail.empty() || r.detail.rfind("ok", 0) == 0;
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    report->checks.push_back(std::move(r));
  }
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

void geometry_suite(Collector& c, std::uint64_t seed) {
  for (const char* name : {"cube-2", "cube-3", "cube-4", "cube-5", "cube-6", "simplex-2", "simplex-3", "simplex-4",
                           "simplex-5", "simplex-6", "prism-3", "prism-4", "prism-5"}) {
    c.check(std::string("lattice ") + name, [&]() -> std::string {
      const SimplePolytope P = make_builtin(name);
      const OracleLattice L = brute_force_lattice(P);
      if (L.f_vector != P.f_vector()) return "f-vector differs from subset enumeration";
      if (L.flags != P.flag_count())
        return "flags " + std::to_string(P.flag_count()) + " vs " + std::to_string(L.flags);
      return "ok flags=" + std::to_string(L.flags);
    });
  }
  c.check("cube and simplex measures", []() -> std::string {
    for (int n = 2; n <= 6; ++n) {
      const SimplePolytope C = make_cube(n), S = make_simplex(n);
      const double fact = std::tgamma(n + 1.0), fact1 = std::tgamma(static_cast<double>(n));
      if (std::abs(C.volume() - 1.0) > 1e-12 || std::abs(C.surface_area() - 2.0 * n) > 1e-12)
        return "cube-" + std::to_string(n);
      if (std::abs(S.volume() - 1.0 / fact) > 1e-12 ||
          std::abs(S.surface_area() - (n + std::sqrt(static_cast<double>(n))) / fact1) > 1e-12)
        return "simplex-" + std::to_string(n);
    }
    return "ok";
  });
  c.check("octahedron rejected as non-simple", []() -> std::string {
    std::vector<Point> v;
    for (int i = 0; i < 3; ++i)
      for (double s : {1.0, -1.0}) {
        Point p(3, 0.0);
        p[i] = s;
        v.push_back(p);
      }
    try {
      from_vertices(v, "octahedron");
    } catch (const Error& e) {
      if (e.code() == ErrorCode::non_simple) return "ok";
      return std::string("wrong error: ") + e.what();
    }
    return "accepted";
  });
  c.check("facet frequencies chi-square, cube-3 N=1e5", [&]() -> std::string {
    const SimplePolytope P = make_cube(3);
    const SampleBatch b = sample_boundary(P, 100000, derive_seed(seed, 0x91));
    std::vector<double> count(6, 0.0);
    for (int f : b.facet_ids) count[f] += 1.0;
    double chi2 = 0.0;
    for (double k : count) chi2 += (k - 100000.0 / 6) * (k - 100000.0 / 6) / (100000.0 / 6);
    // 5 dof, upper 1e-3 quantile
    return chi2 < 20.515 ? "ok chi2=" + fmt(chi2) : "chi2=" + fmt(chi2);
  });
  c.check("samples lie on the boundary", [&]() -> std::string {
    for (const char* name : {"cube-3", "simplex-4", "prism-3"}) {
      const SimplePolytope P = make_builtin(name);
      const SampleBatch b = sample_boundary(P, 2000, derive_seed(seed, 0x92));
      for (std::size_t i = 0; i < b.size(); ++i) {
        const auto& F = P.facets()[b.facet_ids[i]].support;
        const int n = P.dim();
        if (std::abs(dot(b.points.row(i), F.normal.data(), n) - F.offset) > 1e-12) return std::string(name) + " off facet";
        for (const auto& G : P.facets())
          if (dot(b.points.row(i), G.support.normal.data(), n) - G.support.offset > 1e-12)
            return std::string(name) + " outside";
      }
    }
    return "ok";
  });
  c.check("occupancy flag, cube-3 N=1e4, 100 seeds", [&]() -> std::string {
    const SimplePolytope P = make_cube(3);
    std::size_t good = 0;
    for (std::uint64_t s = 0; s < 100; ++s)
      if (facet_occupancy_check(sample_boundary(P, 10000, derive_seed(seed, 0x93, s)), P).all_above) ++good;
    return good >= 99 ? "ok " + std::to_string(good) + "/100" : std::to_string(good) + "/100";
  });
  c.check("volume decomposition identity", [&]() -> std::string {
    for (const char* name : {"cube-3", "simplex-3", "cube-4"}) {
      const SimplePolytope P = make_builtin(name);
      for (std::uint64_t s = 0; s < 5; ++s) {
        const SampleBatch b = sample_boundary(P, 500, derive_seed(seed, 0x94, s));
        HullOptions opt;
        opt.labels = b.facet_ids;
        const HullMesh m = convex_hull(b.points, opt);
        const auto cls = classify_facets(m, b, P);
        const auto d = volume_decomposition(m, cls, P);
        if (std::abs(d.v_cn + d.v_dn - (P.volume() - m.volume)) > 1e-9) return std::string(name) + " identity";
        if (d.v_dn < -1e-9 || d.v_cn < 0) return std::string(name) + " negative part";
        if (m.f_top - static_cast<int>(cls.proper) > static_cast<int>(P.facets().size()))
          return std::string(name) + " too many boundary facets";
      }
    }
    return "ok";
  });
}

void hull_oracle_suite(Collector& c, std::uint64_t seed) {
  c.check("200 batches n=3, N<=14 vs all-subsets oracle", [&]() -> std::string {
    const HullOracleSummary s = hull_oracle_equivalence(200, 14, derive_seed(seed, 0xa0));
    if (s.mismatches) return std::to_string(s.mismatches) + " mismatches; first: " + s.first_mismatch;
    return "ok 0 mismatches";
  });
}

void substitution_suite(Collector& c, std::uint64_t seed) {
  c.check("forward/inverse round trip, n=2..6, 1e4 points each", [&]() -> std::string {
    Philox rng(derive_seed(seed, 0xb0));
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n)
      for (int t = 0; t < 10000; ++t) {
        std::vector<double> x(n);
        for (double& v : x) v = 0.1 + 9.9 * rng.uniform();
        const auto back = inverse_map(forward_map(x));
        const auto y = forward_map(x);
        const auto fwd = forward_map(inverse_map(y));
        for (int i = 0; i < n; ++i) {
          worst = std::max(worst, std::abs(back[i] - x[i]) / x[i]);
          worst = std::max(worst, std::abs(fwd[i] - y[i]) / y[i]);
        }
      }
    return worst <= 1e-12 ? "ok max rel " + fmt(worst) : "max rel " + fmt(worst);
  });
  c.check("region characterizations agree, 1e5 points per n", [&]() -> std::string {
    Philox rng(derive_seed(seed, 0xb1));
    for (int n = 2; n <= 6; ++n) {
      std::size_t inside = 0;
      for (int t = 0; t < 100000; ++t) {
        std::vector<double> y(n);
        for (double& v : y) v = std::exp(-3.0 + 4.0 * rng.uniform());
        const bool a = region_member(y, 1.0), b = region_member_sorted(y, 1.0);
        if (a != b) return "disagree at n=" + std::to_string(n);
        inside += a;
      }
      if (inside == 0) return "no interior hits at n=" + std::to_string(n);
    }
    return "ok";
  });
  c.check("Jacobian closed form vs finite differences", [&]() -> std::string {
    Philox rng(derive_seed(seed, 0xb2));
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n)
      for (int t = 0; t < 200; ++t) {
        std::vector<double> v(n);
        for (double& x : v) x = 0.2 + 4.8 * rng.uniform();
        const double a = jacobian_det(v), b = std::abs(jacobian_det_numeric(v));
        worst = std::max(worst, std::abs(a - b) / a);
      }
    return worst < 1e-6 ? "ok max rel " + fmt(worst) : "max rel " + fmt(worst);
  });
  c.check("det(1 + diag x) expansion", [&]() -> std::string {
    Philox rng(derive_seed(seed, 0xb3));
    for (int n = 2; n <= 6; ++n)
      for (int t = 0; t < 200; ++t) {
        std::vector<double> x(n);
        for (double& v : x) v = -3.0 + 6.0 * rng.uniform();
        const double a = ones_plus_diag_det(x), b = ones_plus_diag_det_numeric(x);
        if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a))) return "mismatch at n=" + std::to_string(n);
      }
    const std::vector<double> x(4, -3.0);
    if (std::abs(ones_plus_diag_det(x) + 27.0) > 1e-12) return "x_i = 1-n case";
    return "ok";
  });
  for (const char* fn : {"poly-exp:2", "box-poly:3"}) {
    c.check(std::string("substitution identity ") + fn, [&, fn]() -> std::string {
      const SubstitutionCheck s = crucial_subst_check(fn, 3, 400000, derive_seed(seed, 0xb4));
      const double zl = std::abs(s.lhs.value - s.exact) / s.lhs.error;
      const double zr = std::abs(s.rhs.value - s.exact) / s.rhs.error;
      const std::string d = "lhs " + fmt(s.lhs.value) + " rhs " + fmt(s.rhs.value) + " exact " + fmt(s.exact);
      return zl < 4 && zr < 4 ? "ok " + d : d;
    });
  }
  c.check("divergent catalog entry rejected", [&]() -> std::string {
    try {
      crucial_subst_check("exp", 3, 100, seed);
    } catch (const Error& e) {
      return e.code() == ErrorCode::divergent ? "ok" : e.what();
    }
    return "accepted";
  });
}

void asymptotics_suite(Collector& c, std::uint64_t seed) {
  const auto cases = j_catalog();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& cs = cases[i];
    std::ostringstream name;
    name << "direct vs transformed l=(";
    for (std::size_t k = 0; k < cs.l.size(); ++k) name << (k ? "," : "") << cs.l[k];
    name << ") N=" << cs.N;
    c.check(name.str(), [&, i]() -> std::string {
      const ExponentVector ev = ExponentVector::make(cs.l, cs.alpha);
      const JEvalResult d = j_direct(ev, cs.N);
      const JEvalResult t = j_transformed(ev, cs.N, 200000, derive_seed(seed, 0xc0, i));
      const double tol = 4.0 * std::hypot(d.error_estimate, t.error_estimate) + 1e-12 * std::abs(d.value);
      const std::string det = std::string(to_string(ev.regime)) + " direct " + fmt(d.value) + " transformed " +
                              fmt(t.value) + " +- " + fmt(t.error_estimate);
      return std::abs(d.value - t.value) <= tol ? "ok " + det : det;
    });
  }
  c.check("interior deviation decreases, l=(1,1,1)", [&]() -> std::string {
    const ExponentVector ev = ExponentVector::make({1, 1, 1}, 0.1);
    double prev = INFINITY;
    for (double N : {1e2, 1e3, 1e4}) {
      const double dev = std::abs(j_direct(ev, N).value / j_asymptotic(ev, N).value - 1.0);
      if (!(dev < prev)) return "not decreasing at N=" + fmt(N);
      prev = dev;
    }
    return "ok";
  });
  c.check("regime error names the extremal index", []() -> std::string {
    try {
      j_asymptotic(ExponentVector::make({1, 1, 0}, 0.1), 1e4);
    } catch (const Error& e) {
      const std::string msg = e.what();
      return e.code() == ErrorCode::regime && msg.find("l_3 = L/(n-1) - 1") != std::string::npos ? "ok" : msg;
    }
    return "accepted";
  });
  c.check("simplex moment homogeneity, n=3 k=1", [&]() -> std::string {
    const double s3 = 1.0 / std::sqrt(3.0);
    const double u[3] = {s3, s3, s3};
    const McEstimate a = simplex_moment_mc(1, 0.5, u, 200000, derive_seed(seed, 0xc1));
    const McEstimate b = simplex_moment_mc(1, 1.0, u, 200000, derive_seed(seed, 0xc2));
    const double slope = std::log(b.value / a.value) / std::log(2.0);
    const double sigma = std::hypot(a.error / a.value, b.error / b.value) / std::log(2.0);
    const std::string d = "exponent " + fmt(slope) + " +- " + fmt(sigma);
    return std::abs(slope - 5.0) <= 3.0 * sigma ? "ok " + d : d;
  });
}

}  // namespace

VerifyReport run_verify(std::string_view suite, std::uint64_t seed) {
  const auto names = verify_suites();
  if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
    fail(ErrorCode::invalid_argument, "unknown suite '" + std::string(suite) +
                                          "' (expected geometry, hull-oracle, substitution, asymptotics or all)");
  VerifyReport report;
  auto want = [&](std::string_view s) { return suite == "all" || suite == s; };
  if (want("geometry")) {
    Collector c{"geometry", &report};
    geometry_suite(c, seed);
  }
  if (want("hull-oracle")) {
    Collector c{"hull-oracle", &report};
    hull_oracle_suite(c, seed);
  }
  if (want("substitution")) {
    Collector c{"substitution", &report};
    substitution_suite(c, seed);
  }
  if (want("asymptotics")) {
    Collector c{"asymptotics", &report};
    asymptotics_suite(c, seed);
  }
  return report;
}

}  // namespace hullaw
