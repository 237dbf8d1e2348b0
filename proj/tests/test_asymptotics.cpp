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
#include <functional>
#include <numbers>

#include "hullaw/asymptotics.hpp"
#include "hullaw/error.hpp"
#include "hullaw/quadrature.hpp"
#include "hullaw/rng.hpp"
#include "hullaw/verify.hpp"

using namespace hullaw;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::internal;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

// Polynomial integrand when every n-2-l_i is a non-negative integer: an
// (m+1)-point Gauss-Legendre product is exact.
double exact_polynomial_j(const std::vector<double>& l, double alpha, int N) {
  const int n = static_cast<int>(l.size());
  const int deg = (N - n) * (n - 1) + n;
  const QuadratureRule g = gauss_legendre(deg / 2 + 2);
  std::vector<std::size_t> idx(n, 0);
  double total = 0.0;
  for (;;) {
    std::vector<double> t(n);
    double w = 1.0;
    for (int i = 0; i < n; ++i) {
      t[i] = 0.5 * (g.nodes[idx[i]] + 1.0);
      w *= 0.5 * g.weights[idx[i]] * std::pow(t[i], n - 2 - l[i]);
    }
    double e = 0.0;
    for (int i = 0; i < n; ++i) {
      double p = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i) p *= t[j];
      e += p;
    }
    total += w * std::pow(1.0 - alpha * e, N - n);
    int k = 0;
    while (k < n && ++idx[k] == g.size()) idx[k++] = 0;
    if (k == n) break;
  }
  return total;
}

}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("substitution maps round-trip on (0.1, 10)^n") {
  Philox rng(11);
  for (int n = 2; n <= 6; ++n)
    for (int t = 0; t < 2000; ++t) {
      std::vector<double> x(n);
      for (double& v : x) v = 0.1 + 9.9 * rng.uniform();
      const auto back = inverse_map(forward_map(x));
      for (int i = 0; i < n; ++i) REQUIRE(std::abs(back[i] - x[i]) <= 1e-12 * x[i]);
    }
  CHECK_THROWS_AS(forward_map(std::vector<double>{1.0, -1.0}), Error);
}

TEST_CASE("region characterizations agree") {
  Philox rng(12);
  for (int n = 2; n <= 6; ++n)
    for (int t = 0; t < 20000; ++t) {
      std::vector<double> y(n);
      for (double& v : y) v = std::exp(-3.0 + 4.0 * rng.uniform());
      const double beta = 0.5 + rng.uniform();
      REQUIRE(region_member(y, beta) == region_member_sorted(y, beta));
    }
}

TEST_CASE("Jacobian determinant") {
  const std::vector<double> v = {0.5, 2.0, 3.0};
  // (n-1)^{-1} (prod v)^{-(n-2)/(n-1)} = 1/2 * 3^{-1/2}
  CHECK(jacobian_det(v) == doctest::Approx(0.5 / std::sqrt(3.0)).epsilon(1e-14));
  Philox rng(13);
  for (int n = 2; n <= 6; ++n)
    for (int t = 0; t < 50; ++t) {
      std::vector<double> x(n);
      for (double& a : x) a = 0.2 + 4.8 * rng.uniform();
      CHECK(std::abs(jacobian_det_numeric(x)) == doctest::Approx(jacobian_det(x)).epsilon(1e-6));
    }
}

TEST_CASE("determinant of all-ones plus diagonal") {
  CHECK(ones_plus_diag_det(std::vector<double>{-3, -3, -3, -3}) == doctest::Approx(-27.0));
  CHECK(ones_plus_diag_det_numeric(std::vector<double>{-3, -3, -3, -3}) == doctest::Approx(-27.0));
  CHECK(ones_plus_diag_det(std::vector<double>{1, 2, 3}) == doctest::Approx(17.0));
}

TEST_CASE("regime classification") {
  CHECK(ExponentVector::make({1, 1, 1}, 0.1).regime == Regime::interior);
  CHECK(ExponentVector::make({1, 1, 0}, 0.1).regime == Regime::two_extremal);
  CHECK(ExponentVector::make({2, 2, 1, 1}, 0.1).regime == Regime::two_extremal);
  CHECK(ExponentVector::make({2, 2, 2, 1.5}, 0.1).regime == Regime::multi_strict);
  CHECK(ExponentVector::make({2, 1, 1}, 0.1).regime == Regime::invalid);   // l_1 = n-1
  CHECK(ExponentVector::make({1, 1, -1}, 0.1).regime == Regime::invalid);  // below the threshold
  CHECK(ExponentVector::make({1, 1, 1}, 0.0).regime == Regime::invalid);

  const ExponentVector exact = ExponentVector::parse({"2/3", "2/3", "2/3"}, 0.1);
  CHECK(exact.exact);
  CHECK(exact.regime == Regime::interior);
  CHECK(exact.exponent() == doctest::Approx(-2.0));
  // L/(n-1) - 1 = 0.1 exactly; the double path needs the tolerance
  const ExponentVector tenth = ExponentVector::parse({"1.3", "0.8", "0.1"}, 0.1);
  CHECK(tenth.exact);
  CHECK(tenth.regime == Regime::two_extremal);
  CHECK(tenth.extremal == std::vector<bool>{false, false, true});
  CHECK(ExponentVector::make({1.3, 0.8, 0.1}, 0.1).regime == Regime::two_extremal);
  CHECK(code_of([] { ExponentVector::parse({"1", "x"}, 0.1); }) == ErrorCode::parse);
  CHECK(ExponentVector::make({1, 1, -1}, 0.1).violation == "l_3 < L/(n-1) - 1");
}

TEST_CASE("j_direct against exact polynomial quadrature") {
  for (const auto& l : std::vector<std::vector<double>>{{1, 1, 1}, {0, 0, 0}, {1, 0, 1}, {2, 2, 2, 2}, {1, 2, 2, 2}}) {
    for (int N : {12, 25}) {
      const ExponentVector ev = ExponentVector::make(l, 0.1);
      const double exact = exact_polynomial_j(l, 0.1, N);
      CHECK(j_direct(ev, N).value == doctest::Approx(exact).epsilon(1e-9));
    }
  }
}

TEST_CASE("n = 2 closed form") {
  // int int (1 - a(t1+t2))^m = [1 - 2(1-a)^{m+2} + (1-2a)^{m+2}] / (a^2 (m+1)(m+2))
  const double a = 0.2;
  for (int N : {10, 100, 1000}) {
    const double m = N - 2;
    const double exact = (1.0 - 2.0 * std::pow(1 - a, m + 2) + std::pow(1 - 2 * a, m + 2)) / (a * a * (m + 1) * (m + 2));
    const ExponentVector ev = ExponentVector::make({0, 0}, a);
    CHECK(j_direct(ev, N).value == doctest::Approx(exact).epsilon(1e-10));
    const JEvalResult t = j_transformed(ev, N, 200000, 5);
    CHECK(std::abs(t.value - exact) <= 4.0 * t.error_estimate);
  }
}

TEST_CASE("frozen reference values") {
  // direct quadrature at the stated resolution, recorded once
  CHECK(j_direct(ExponentVector::make({1, 1, 1}, 0.1), 200).value == doctest::Approx(0.024047225708117782).epsilon(1e-9));
  CHECK(j_direct(ExponentVector::make({1, 1, 0}, 0.1), 1000).value == doctest::Approx(0.00025937679819193921).epsilon(1e-9));
  CHECK(j_direct(ExponentVector::make({2, 2, 1, 1}, 0.125), 60).value == doctest::Approx(0.022666885422732978).epsilon(1e-6));
  // Gamma(1/2)^3 = pi^{3/2}
  const double lead = std::pow(0.1, -1.5) / 2.0 * std::pow(std::numbers::pi, 1.5) * std::pow(1e4, -1.5);
  CHECK(j_asymptotic(ExponentVector::make({1, 1, 1}, 0.1), 1e4).value == doctest::Approx(lead).epsilon(1e-13));
}

TEST_CASE("direct and transformed agree on a catalog") {
  std::size_t i = 0;
  for (const auto& c : j_catalog()) {
    const ExponentVector ev = ExponentVector::make(c.l, c.alpha);
    const JEvalResult d = j_direct(ev, c.N);
    const JEvalResult t = j_transformed(ev, c.N, 100000, 900 + i++);
    CHECK(std::abs(d.value - t.value) <= 4.0 * std::hypot(d.error_estimate, t.error_estimate));
  }
  CHECK(j_catalog().size() == 20);
}

TEST_CASE("transformed evaluator is deterministic per seed") {
  const ExponentVector ev = ExponentVector::make({1, 1, 0}, 0.1);
  CHECK(j_transformed(ev, 1e4, 5000, 3).value == j_transformed(ev, 1e4, 5000, 3).value);
  CHECK(j_transformed(ev, 1e4, 5000, 3).value != j_transformed(ev, 1e4, 5000, 4).value);
}

TEST_CASE("asymptotic regime errors name the constraint") {
  const std::string msg = message_of([] { j_asymptotic(ExponentVector::make({1, 1, 0}, 0.1), 1e4); });
  CHECK(msg.find("l_3 = L/(n-1) - 1") != std::string::npos);
  CHECK(code_of([] { j_asymptotic(ExponentVector::make({1, 1, 0}, 0.1), 1e4); }) == ErrorCode::regime);
  CHECK(code_of([] { j_transformed(ExponentVector::make({2, 1, 1}, 0.1), 1e4, 100, 1); }) == ErrorCode::regime);
  CHECK(code_of([] { j_direct(ExponentVector::make({1, 1, 1, 1, 1}, 0.1), 100); }) == ErrorCode::out_of_range);
}

TEST_CASE("interior deviation from the leading term shrinks like N^{-1/2}") {
  const ExponentVector ev = ExponentVector::make({1, 1, 1}, 0.1);
  std::vector<double> dev;
  for (double N : {1e3, 1e4, 1e5}) dev.push_back(std::abs(j_direct(ev, N).value / j_asymptotic(ev, N).value - 1.0));
  CHECK(dev[1] < dev[0]);
  CHECK(dev[2] < dev[1]);
  const double slope = std::log(dev[2] / dev[0]) / std::log(100.0);
  CHECK(slope == doctest::Approx(-0.5).epsilon(0.3));
}

TEST_CASE("lower bound: J N^{n - L/(n-1)} / (ln N)^{#extremal} stays away from 0") {
  const ExponentVector ev = ExponentVector::make({1, 1, 0}, 0.1);
  for (double N : {1e2, 1e3, 1e4, 1e5}) {
    const double s = j_direct(ev, N).value * std::pow(N, -ev.exponent()) / std::log(N);
    CHECK(s > 0.1);
  }
}

TEST_CASE("log regime fit picks the stated power") {
  const ExponentVector ev = ExponentVector::make({1, 1, 0}, 0.1);
  const LogRegimeFit f = j_log_regime(ev, {1e3, 1e4, 1e5, 1e6}, 200000, 8);
  CHECK(f.log_power == 1);
  CHECK(f.constant > 0.0);
  CHECK(f.points.size() == 4);
  CHECK(code_of([&] { j_log_regime(ev, {1e3, 1e4, 1e5}, 1000, 8); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { j_log_regime(ExponentVector::make({1, 1, 1}, 0.1), {1e3, 1e4, 1e5, 1e6}, 1000, 8); }) ==
        ErrorCode::regime);
}

TEST_CASE("substitution identity catalog") {
  for (const char* fn : {"poly-exp:2", "poly-exp:2,3,2.5", "box-poly:3", "box-poly:3,4,3.5"}) {
    const SubstitutionCheck s = crucial_subst_check(fn, 3, 300000, 21);
    CHECK(std::abs(s.lhs.value - s.exact) <= 4.0 * s.lhs.error);
    CHECK(std::abs(s.rhs.value - s.exact) <= 4.0 * s.rhs.error);
  }
  const SubstitutionCheck four = crucial_subst_check("poly-exp:2", 4, 300000, 22);
  CHECK(std::abs(four.lhs.value - four.exact) <= 4.0 * four.lhs.error);
  CHECK(crucial_subst_check("poly-exp:3", 3, 10, 1).exact == doctest::Approx(1.0));  // Gamma(2)^3
  CHECK(code_of([] { crucial_subst_check("exp", 3, 10, 1); }) == ErrorCode::divergent);
  CHECK(code_of([] { crucial_subst_check("poly-exp:1", 3, 10, 1); }) == ErrorCode::divergent);
  CHECK(code_of([] { crucial_subst_check("sine", 3, 10, 1); }) == ErrorCode::invalid_argument);
}

TEST_CASE("simplex moments") {
  const double s3 = 1.0 / std::sqrt(3.0);
  const std::vector<double> u = {s3, s3, s3};
  const McEstimate e0 = simplex_moment_mc(0, 1.0, u, 50000, 1);
  CHECK(e0.value > 0.0);
  CHECK(std::isfinite(e0.value));
  // homogeneity degree (n-1)k + n(n-2) = 5 for n = 3, k = 1
  const McEstimate a = simplex_moment_mc(1, 0.5, u, 200000, 2), b = simplex_moment_mc(1, 1.0, u, 200000, 3);
  const double ratio = b.value / a.value;
  const double sigma = ratio * std::hypot(a.error / a.value, b.error / b.value);
  CHECK(std::abs(ratio - 32.0) <= 3.0 * sigma);
  // permuting u leaves the estimate unchanged within noise
  const std::vector<double> v = {0.48, 0.6, 0.64}, w = {0.64, 0.48, 0.6};
  const McEstimate p = simplex_moment_mc(1, 0.3, v, 200000, 4), q = simplex_moment_mc(1, 0.3, w, 200000, 5);
  CHECK(std::abs(p.value - q.value) <= 3.0 * std::hypot(p.error, q.error));
  CHECK(code_of([] { simplex_moment_mc(1, 1.0, std::vector<double>{1.0, 0.0, 0.0}, 10, 1); }) == ErrorCode::degenerate);
}

TEST_CASE("ordered-region integral S(q)") {
  const double alpha = 1.0 / 6.0;
  const McEstimate small = s_eval(std::vector<double>{0, 0, -1}, alpha, 4, 100000, 1);
  CHECK(small.value > 0.0);
  CHECK(std::isfinite(small.value));
  // symmetrized (0,0,-1) grows like ln N; (-1,0,0) stays O(1)
  auto sym_ratio = [&](double N) {
    return s_eval(std::vector<double>{0, 0, -1}, alpha, N, 200000, 2).value * 2.0 / std::log(N);
  };
  const double r4 = sym_ratio(1e4), r6 = sym_ratio(1e6);
  CHECK(r6 == doctest::Approx(r4).epsilon(0.25));
  const double c4 = s_eval(std::vector<double>{-1, 0, 0}, alpha, 1e4, 200000, 3).value / std::log(1e4);
  const double c6 = s_eval(std::vector<double>{-1, 0, 0}, alpha, 1e6, 200000, 4).value / std::log(1e6);
  CHECK(c6 < c4);
  CHECK(code_of([] { s_eval(std::vector<double>{0, -1, -1}, 0.1, 100, 10, 1); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { s_eval(std::vector<double>{0, 0, -1}, 0.2, 100, 10, 1); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { s_eval(std::vector<double>{0, 0, -2}, 0.1, 100, 10, 1); }) == ErrorCode::invalid_argument);
}

}
