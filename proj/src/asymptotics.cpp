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
#include "hullaw/asymptotics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "hullaw/error.hpp"
#include "hullaw/fit.hpp"
#include "hullaw/linalg.hpp"
#include "hullaw/quadrature.hpp"
#include "hullaw/rng.hpp"
#include "hullaw/stats.hpp"

namespace hullaw {

namespace {

void require_positive(std::span<const double> x, const char* what) {
  if (x.size() < 2) fail(ErrorCode::invalid_argument, std::string(what) + ": need at least 2 coordinates");
  for (double v : x)
    if (!(v > 0.0) || !std::isfinite(v))
      fail(ErrorCode::invalid_argument, std::string(what) + ": coordinates must be positive");
}

double log_product(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::log(v);
  return s;
}

// Small exact rationals for regime classification.
struct Rational {
  __int128 p = 0;
  __int128 q = 1;

  static __int128 gcd(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t < 0 ? -t : t;
    }
    return a == 0 ? 1 : a;
  }
  Rational reduced() const {
    const __int128 g = gcd(p, q);
    Rational r{p / g, q / g};
    if (r.q < 0) {
      r.p = -r.p;
      r.q = -r.q;
    }
    return r;
  }
  friend Rational operator+(Rational a, Rational b) { return Rational{a.p * b.q + b.p * a.q, a.q * b.q}.reduced(); }
  friend Rational operator-(Rational a, Rational b) { return Rational{a.p * b.q - b.p * a.q, a.q * b.q}.reduced(); }
  friend int compare(Rational a, Rational b) {
    const __int128 l = a.p * b.q, r = b.p * a.q;
    return l < r ? -1 : (l > r ? 1 : 0);
  }
  double value() const { return static_cast<double>(p) / static_cast<double>(q); }
};

std::optional<Rational> parse_rational(std::string_view s) {
  auto parse_int = [](std::string_view t, long long& out) {
    if (t.empty()) return false;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    return ec == std::errc() && ptr == t.data() + t.size();
  };
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    long long a = 0, b = 0;
    if (!parse_int(s.substr(0, slash), a) || !parse_int(s.substr(slash + 1), b) || b == 0)
      return std::nullopt;
    return Rational{a, b}.reduced();
  }
  const auto dot_pos = s.find('.');
  if (dot_pos == std::string_view::npos) {
    long long a = 0;
    if (!parse_int(s, a)) return std::nullopt;
    return Rational{a, 1};
  }
  std::string digits(s.substr(0, dot_pos));
  const std::string_view frac = s.substr(dot_pos + 1);
  if (frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string_view::npos)
    return std::nullopt;
  digits += frac;
  if (digits == "-" || digits == "+") digits += "0";
  long long a = 0;
  if (!parse_int(digits[0] == '+' ? std::string_view(digits).substr(1) : digits, a)) return std::nullopt;
  __int128 den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  return Rational{a, den}.reduced();
}

std::string index_name(int i) { return "l_" + std::to_string(i + 1); }

void classify(ExponentVector& ev, const std::vector<Rational>* exact) {
  const int n = ev.n();
  ev.extremal.assign(n, false);
  ev.regime = Regime::invalid;
  ev.violation.clear();
  if (n < 2 || n > kMaxDim) {
    ev.violation = "dimension n must lie in [2, 6]";
    return;
  }
  if (!(ev.alpha > 0.0)) {
    ev.violation = "alpha must be positive";
    return;
  }
  Rational thr_q;
  if (exact) {
    Rational sum;
    for (const auto& r : *exact) sum = sum + r;
    thr_q = Rational{sum.p, sum.q * (n - 1)}.reduced() - Rational{1, 1};
  }
  const double thr = ev.threshold();
  int strict = 0;
  for (int i = 0; i < n; ++i) {
    const bool too_large = exact ? compare((*exact)[i], Rational{n - 1, 1}) >= 0 : ev.l[i] >= n - 1;
    if (too_large) {
      ev.violation = index_name(i) + " >= n-1 (non-integrable singularity)";
      return;
    }
    int cmp = 0;
    if (exact) {
      cmp = compare((*exact)[i], thr_q);
    } else {
      const double d = ev.l[i] - thr;
      cmp = std::abs(d) <= 1e-12 ? 0 : (d < 0 ? -1 : 1);
    }
    if (cmp < 0) {
      ev.violation = index_name(i) + " < L/(n-1) - 1";
      return;
    }
    if (cmp == 0) ev.extremal[i] = true;
    else ++strict;
  }
  const int eq = n - strict;
  if (eq == 0) ev.regime = Regime::interior;
  else if (strict == 2) ev.regime = Regime::two_extremal;
  else if (strict >= 3) ev.regime = Regime::multi_strict;
  else ev.violation = "fewer than two indices with l_i > L/(n-1) - 1";
}

std::string extremal_names(const ExponentVector& ev) {
  std::string s;
  for (int i = 0; i < ev.n(); ++i)
    if (ev.extremal[i]) s += (s.empty() ? "" : ", ") + index_name(i) + " = L/(n-1) - 1";
  return s;
}

void require_valid(const ExponentVector& ev) {
  if (ev.regime == Regime::invalid)
    fail(ErrorCode::regime, "invalid exponent vector: " + ev.violation);
}

void require_sample_size(double N, int n) {
  if (!(N > n) || !std::isfinite(N))
    fail(ErrorCode::invalid_argument, "N must exceed the dimension n");
}

}  // namespace

// ---- substitution algebra ------------------------------------------------

std::vector<double> forward_map(std::span<const double> x) {
  require_positive(x, "forward_map");
  const double lp = log_product(x);
  std::vector<double> y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    double p = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (i != j) p *= x[i];
    y[j] = std::isfinite(p) && p > 0.0 ? p : std::exp(lp - std::log(x[j]));
  }
  return y;
}

std::vector<double> inverse_map(std::span<const double> y) {
  require_positive(y, "inverse_map");
  const double n1 = static_cast<double>(y.size() - 1);
  const double root = std::exp(log_product(y) / n1);
  std::vector<double> x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) x[i] = root / y[i];
  return x;
}

bool region_member(std::span<const double> y, double beta) {
  require_positive(y, "region_member");
  const double lp = log_product(y);
  const double lb = std::log(beta);
  const double n1 = static_cast<double>(y.size() - 1);
  for (double v : y)
    if (!(lp < lb + n1 * std::log(v))) return false;
  return true;
}

bool region_member_sorted(std::span<const double> y, double beta) {
  require_positive(y, "region_member_sorted");
  std::vector<double> s(y.begin(), y.end());
  std::sort(s.begin(), s.end(), std::greater<>());
  if (!(s[0] < beta)) return false;
  const double lb = std::log(beta);
  double prefix = std::log(s[0]) + std::log(s[1]);
  for (std::size_t k = 2; k < s.size(); ++k) {
    // 0-based k is the (k+1)-th largest: beta s^{k-1} > s_1 ... s_k.
    const double lhs = lb + static_cast<double>(k - 1) * std::log(s[k]);
    if (!(lhs > prefix)) return false;
    prefix += std::log(s[k]);
  }
  return true;
}

double jacobian_det(std::span<const double> v) {
  require_positive(v, "jacobian_det");
  const double n = static_cast<double>(v.size());
  return std::exp(-(n - 2.0) / (n - 1.0) * log_product(v)) / (n - 1.0);
}

double jacobian_det_numeric(std::span<const double> v) {
  require_positive(v, "jacobian_det_numeric");
  const int n = static_cast<int>(v.size());
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  std::vector<double> plus(v.begin(), v.end()), minus(v.begin(), v.end());
  for (int j = 0; j < n; ++j) {
    const double h = 1e-5 * v[j];
    plus[j] = v[j] + h;
    minus[j] = v[j] - h;
    const auto tp = inverse_map(plus), tm = inverse_map(minus);
    for (int i = 0; i < n; ++i) a[i * n + j] = (tp[i] - tm[i]) / (2.0 * h);
    plus[j] = minus[j] = v[j];
  }
  return determinant_inplace(a.data(), n);
}

double ones_plus_diag_det(std::span<const double> x) {
  double prod = 1.0;
  for (double v : x) prod *= v;
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (j != i) p *= x[j];
    sum += p;
  }
  return prod + sum;
}

double ones_plus_diag_det_numeric(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> a(static_cast<std::size_t>(n) * n, 1.0);
  for (int i = 0; i < n; ++i) a[i * n + i] += x[i];
  return determinant_inplace(a.data(), n);
}

// ---- exponent vectors ----------------------------------------------------

const char* to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::interior: return "interior";
    case Regime::two_extremal: return "two_extremal";
    case Regime::multi_strict: return "multi_strict";
    case Regime::invalid: return "invalid";
  }
  return "?";
}

int ExponentVector::extremal_count() const {
  return static_cast<int>(std::count(extremal.begin(), extremal.end(), true));
}

ExponentVector ExponentVector::make(std::vector<double> l, double alpha) {
  ExponentVector ev;
  ev.l = std::move(l);
  ev.alpha = alpha;
  for (double x : ev.l)
    if (!std::isfinite(x)) fail(ErrorCode::invalid_argument, "exponents must be finite");
  ev.L = std::accumulate(ev.l.begin(), ev.l.end(), 0.0);
  classify(ev, nullptr);
  return ev;
}

ExponentVector ExponentVector::parse(const std::vector<std::string>& text, double alpha) {
  std::vector<Rational> exact;
  std::vector<double> l;
  bool all_exact = true;
  for (const auto& s : text) {
    const auto r = parse_rational(s);
    if (r) {
      exact.push_back(*r);
      l.push_back(r->value());
      continue;
    }
    all_exact = false;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      fail(ErrorCode::parse, "cannot parse exponent '" + s + "'");
    l.push_back(v);
  }
  ExponentVector ev;
  ev.l = std::move(l);
  ev.alpha = alpha;
  if (all_exact) {
    Rational sum;
    for (const auto& r : exact) sum = sum + r;
    ev.L = sum.value();
    ev.exact = true;
    classify(ev, &exact);
  } else {
    ev.L = std::accumulate(ev.l.begin(), ev.l.end(), 0.0);
    classify(ev, nullptr);
  }
  return ev;
}

const char* to_string(JMethod method) noexcept {
  switch (method) {
    case JMethod::direct: return "direct";
    case JMethod::transformed: return "transformed";
    case JMethod::asymptotic_leading: return "asymptotic";
    case JMethod::log_regime_shape: return "log_regime";
  }
  return "?";
}

// ---- J(l) ----------------------------------------------------------------

namespace {

struct TensorIntegrand {
  int n;
  double alpha;
  double power;  // N - n
  const std::vector<QuadratureRule>* rules;

  double sum(int d, const double* e, double w) const {
    const QuadratureRule& r = (*rules)[d];
    double total = 0.0;
    double next[kMaxDim + 1];
    for (std::size_t k = 0; k < r.size(); ++k) {
      const double t = r.nodes[k];
      // Elementary symmetric polynomials of the prefix, e[0..n-1].
      next[0] = 1.0;
      for (int j = std::min(d + 1, n - 1); j >= 1; --j) next[j] = e[j] + t * e[j - 1];
      for (int j = std::min(d + 1, n - 1) + 1; j < n; ++j) next[j] = 0.0;
      const double wk = w * r.weights[k];
      if (d + 1 == n) {
        const double base = -alpha * next[n - 1];
        total += wk * (base <= -1.0 ? 0.0 : std::exp(power * std::log1p(base)));
      } else {
        total += sum(d + 1, next, wk);
      }
    }
    return total;
  }
};

double tensor_j(const ExponentVector& ev, double N, int m, double ratio) {
  const int n = ev.n();
  const double span = std::max(1.0, ev.alpha * N) * 1e3;
  const int levels = std::max(4, static_cast<int>(std::ceil(std::log(span) / -std::log(ratio))));
  std::vector<QuadratureRule> rules;
  for (int i = 0; i < n; ++i) rules.push_back(graded_rule(m, ratio, levels, n - 2 - ev.l[i]));
  TensorIntegrand f{n, ev.alpha, N - n, &rules};
  double e[kMaxDim + 1] = {1.0};
  return f.sum(0, e, 1.0);
}

}  // namespace

JEvalResult j_direct(const ExponentVector& ev, double N, int resolution) {
  const int n = ev.n();
  for (int i = 0; i < n; ++i)
    if (!(ev.l[i] < n - 1)) fail(ErrorCode::regime, "non-integrable exponent: " + index_name(i) + " >= n-1");
  if (n < 2 || n > 4) fail(ErrorCode::out_of_range, "j_direct supports 2 <= n <= 4");
  if (!(ev.alpha > 0.0)) fail(ErrorCode::invalid_argument, "alpha must be positive");
  require_sample_size(N, n);
  int m1 = n <= 3 ? 8 : 4, m2 = n <= 3 ? 10 : 5;
  double r1 = n <= 3 ? 0.5 : 0.35, r2 = n <= 3 ? 0.6 : 0.45;
  m1 += resolution;
  m2 += resolution;
  const double coarse = tensor_j(ev, N, m1, r1);
  const double fine = tensor_j(ev, N, m2, r2);
  return {fine, JMethod::direct, N, std::abs(fine - coarse)};
}

JEvalResult j_transformed(const ExponentVector& ev, double N, std::size_t samples,
                          std::uint64_t seed) {
  require_valid(ev);
  const int n = ev.n();
  require_sample_size(N, n);
  if (samples < 2) fail(ErrorCode::invalid_argument, "need at least 2 samples");
  const double m = N - n;
  const double M = ev.alpha * m;
  const double log_m = std::log(M);
  const int ext = ev.extremal_count();
  std::vector<std::gamma_distribution<double>> gammas;
  double log_gamma_const = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = ev.extremal[i] ? 1.0 : ev.shape(i);
    gammas.emplace_back(a, 1.0);
    if (!ev.extremal[i]) log_gamma_const += std::lgamma(a);
  }
  Philox rng(seed, 0x4a);
  RunningStats stats;
  double s[kMaxDim], ls[kMaxDim];
  for (std::size_t k = 0; k < samples; ++k) {
    double log_w = 0.0, lg = 0.0, gamma_sum = 0.0;
    for (int i = 0; i < n; ++i) {
      if (ev.extremal[i]) continue;
      s[i] = gammas[i](rng);
      if (!(s[i] > 0.0)) s[i] = 1e-300;
      ls[i] = std::log(s[i]);
      lg += ls[i];
      gamma_sum += s[i];
    }
    bool inside = true;
    if (ext > 0) {
      // Every extremal coordinate satisfies s_i >= (prod_strict s / M)^{1/(n-1-e)}.
      const double log_lo = (lg - log_m) / (n - 1 - ext);
      if (log_lo >= log_m) {
        inside = false;
      } else {
        const double width = log_m - log_lo;
        for (int i = 0; i < n; ++i) {
          if (!ev.extremal[i]) continue;
          ls[i] = log_lo + width * rng.uniform_open();
          s[i] = std::exp(ls[i]);
          log_w += std::log(width);
        }
      }
    }
    double w = 0.0;
    if (inside) {
      double total = 0.0, lp = 0.0;
      for (int i = 0; i < n; ++i) {
        total += s[i];
        lp += ls[i];
        if (ls[i] > log_m) inside = false;
      }
      for (int i = 0; i < n && inside; ++i)
        if (lp > log_m + (n - 1) * ls[i]) inside = false;
      if (inside && total < m) w = std::exp(log_w + m * std::log1p(-total / m) + gamma_sum);
    }
    stats.add(w);
  }
  const double scale = std::exp(ev.exponent() * log_m + log_gamma_const) / (n - 1);
  return {scale * stats.mean(), JMethod::transformed, N, scale * stats.stderr_of_mean()};
}

JEvalResult j_asymptotic(const ExponentVector& ev, double N) {
  const int n = ev.n();
  if (n < 3) fail(ErrorCode::out_of_range, "the leading-term formula needs n >= 3");
  if (ev.regime != Regime::interior) {
    if (ev.regime == Regime::invalid) require_valid(ev);
    fail(ErrorCode::regime, "regime " + std::string(to_string(ev.regime)) + ": " + extremal_names(ev) +
                                ", but the leading-term formula needs l_i > L/(n-1) - 1 for every i");
  }
  require_sample_size(N, n);
  double log_value = ev.exponent() * std::log(ev.alpha) - std::log(n - 1.0) +
                     ev.exponent() * std::log(N);
  double min_shape = INFINITY;
  for (int i = 0; i < n; ++i) {
    log_value += std::lgamma(ev.shape(i));
    min_shape = std::min(min_shape, ev.shape(i));
  }
  // Relative order of the correction term, not an absolute error bar.
  const double order = std::pow(N, -min_shape / (n - 2));
  return {std::exp(log_value), JMethod::asymptotic_leading, N, order};
}

LogRegimeFit j_log_regime(const ExponentVector& ev, const std::vector<double>& n_grid,
                          std::size_t samples, std::uint64_t seed) {
  require_valid(ev);
  if (ev.regime == Regime::interior)
    fail(ErrorCode::regime, "interior regime has no logarithmic factor; use j_asymptotic");
  if (n_grid.size() < 4) fail(ErrorCode::invalid_argument, "log-regime fit needs at least 4 grid points");
  const int n = ev.n();
  LogRegimeFit out;
  out.exponent = ev.exponent();
  out.log_power = ev.regime == Regime::two_extremal ? n - 2 : n - 3;
  std::vector<double> y, se;
  for (double N : n_grid) {
    const JEvalResult r = j_transformed(ev, N, samples, seed);
    out.points.push_back(r);
    const double scale = std::pow(N, -out.exponent);
    y.push_back(r.value * scale);
    se.push_back(r.error_estimate * scale);
  }
  const FitResult f = fit_log_power(n_grid, y, se, out.log_power);
  out.constant = f.constant;
  out.intercept = f.intercept;
  out.residual = f.residual;
  out.residual_minus = out.log_power >= 1 ? fit_log_power(n_grid, y, se, out.log_power - 1).residual : INFINITY;
  out.residual_plus = fit_log_power(n_grid, y, se, out.log_power + 1).residual;
  return out;
}

// ---- other integrals ------------------------------------------------------

namespace {

std::vector<double> parse_catalog_exponents(std::string_view list, int n) {
  std::vector<double> v;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    const std::string_view item = list.substr(pos, comma - pos);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), x);
    if (ec != std::errc() || ptr != item.data() + item.size())
      fail(ErrorCode::parse, "bad catalog exponent '" + std::string(item) + "'");
    v.push_back(x);
    pos = comma + 1;
  }
  if (v.size() == 1) v.assign(n, v.front());
  if (static_cast<int>(v.size()) != n)
    fail(ErrorCode::invalid_argument, "catalog exponent count differs from n");
  return v;
}

// Uniform direction in the positive orthant of S^{n-1}.
void positive_direction(Philox& rng, std::normal_distribution<double>& normal, int n, double* u) {
  double len2 = 0.0;
  for (int i = 0; i < n; ++i) {
    u[i] = std::abs(normal(rng));
    len2 += u[i] * u[i];
  }
  const double len = std::sqrt(len2);
  for (int i = 0; i < n; ++i) u[i] = std::max(u[i] / len, 1e-300);
}

double log_positive_sphere_area(int n) {
  // |S^{n-1}| / 2^n with |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2)
  return std::log(2.0) + 0.5 * n * std::log(std::numbers::pi) - std::lgamma(0.5 * n) - n * std::log(2.0);
}

}  // namespace

SubstitutionCheck crucial_subst_check(std::string_view test_fn, int n, std::size_t samples,
                                      std::uint64_t seed) {
  if (n < 2 || n > kMaxDim) fail(ErrorCode::out_of_range, "n must lie in [2, 6]");
  if (samples < 2) fail(ErrorCode::invalid_argument, "need at least 2 samples");
  const auto colon = test_fn.find(':');
  const std::string_view kind = test_fn.substr(0, colon);
  if (kind == "exp") {
    fail(ErrorCode::divergent, "catalog entry 'exp': int t^{-2} e^{-t} dt diverges at 0");
  }
  if (kind != "poly-exp" && kind != "box-poly")
    fail(ErrorCode::invalid_argument, "unknown catalog function '" + std::string(test_fn) +
                                          "' (expected poly-exp:a..., box-poly:b... or exp)");
  if (colon == std::string_view::npos)
    fail(ErrorCode::invalid_argument, "catalog entry needs exponents, e.g. poly-exp:2");
  const auto e = parse_catalog_exponents(test_fn.substr(colon + 1), n);
  for (double x : e)
    if (!(x > 1.0))
      fail(ErrorCode::divergent, "catalog entry '" + std::string(test_fn) +
                                     "': every exponent must exceed 1 for int f(t) prod t^{-2} dt to converge");
  const double total = std::accumulate(e.begin(), e.end(), 0.0);
  const bool poly_exp = kind == "poly-exp";

  SubstitutionCheck out;
  out.exact = 1.0;
  for (double x : e) out.exact *= poly_exp ? std::tgamma(x - 1.0) : 1.0 / (x - 1.0);

  Philox rng(seed, 0x51);
  std::normal_distribution<double> normal;
  const double log_area = log_positive_sphere_area(n);
  RunningStats lhs, rhs;
  std::gamma_distribution<double> h_dist(total - n, 1.0);
  double u[kMaxDim];
  for (std::size_t k = 0; k < samples; ++k) {
    positive_direction(rng, normal, n, u);
    // Draw h from a density proportional to the h-dependence of the
    // integrand and weight by integrand / density.
    double log_pu = 0.0;
    for (int i = 0; i < n; ++i) log_pu -= e[i] * std::log(u[i]);
    const double a = total - n;
    double log_w = 0.0;
    if (poly_exp) {
      double c = 0.0;
      for (int i = 0; i < n; ++i) c += 1.0 / u[i];
      const double h = std::max(h_dist(rng) / c, 1e-300);
      const double log_f = total * std::log(h) + log_pu - h * c;
      const double log_density = a * std::log(c) + (a - 1.0) * std::log(h) - h * c - std::lgamma(a);
      log_w = log_f - (n + 1) * std::log(h) - log_density;
    } else {
      const double umin = *std::min_element(u, u + n);
      const double h = umin * std::pow(rng.uniform_open(), 1.0 / a);
      const double log_f = total * std::log(h) + log_pu;
      const double log_density = std::log(a) + (a - 1.0) * std::log(h) - a * std::log(umin);
      log_w = log_f - (n + 1) * std::log(h) - log_density;
    }
    lhs.add(std::exp(log_area + log_w));

    double w = 1.0;
    for (int i = 0; i < n; ++i) {
      if (poly_exp) {
        // Gamma(a_i - 1, scale 2) proposal.
        const double shape = e[i] - 1.0;
        std::gamma_distribution<double> g(shape, 2.0);
        const double t = std::max(g(rng), 1e-300);
        w *= std::exp(std::lgamma(shape) + shape * std::log(2.0) - 0.5 * t);
      } else {
        // Density (c+1) t^c on [0,1] with c = b - 2 + (b-1)/2 keeps the
        // variance finite for every b > 1.
        const double c = e[i] - 2.0 + 0.5 * (e[i] - 1.0);
        const double t = std::pow(rng.uniform_open(), 1.0 / (c + 1.0));
        w *= std::pow(t, e[i] - 2.0 - c) / (c + 1.0);
      }
    }
    rhs.add(w);
  }
  out.lhs = {lhs.mean(), lhs.stderr_of_mean()};
  out.rhs = {rhs.mean(), rhs.stderr_of_mean()};
  return out;
}

McEstimate simplex_moment_mc(int k, double h, std::span<const double> u, std::size_t samples,
                             std::uint64_t seed) {
  const int n = static_cast<int>(u.size());
  if (n < 2 || n > kMaxDim) fail(ErrorCode::out_of_range, "n must lie in [2, 6]");
  if (k < 0) fail(ErrorCode::invalid_argument, "moment order k must be >= 0");
  if (!(h > 0.0)) fail(ErrorCode::invalid_argument, "h must be positive");
  if (samples < 2) fail(ErrorCode::invalid_argument, "need at least 2 samples");
  double len2 = 0.0;
  for (double x : u) {
    if (!(x > 0.0)) fail(ErrorCode::degenerate, "direction u must have positive coordinates");
    len2 += x * x;
  }
  if (std::abs(std::sqrt(len2) - 1.0) > 1e-9) fail(ErrorCode::invalid_argument, "u must be a unit vector");

  // Corners (h/u_j) e_j; facet i of the simplex lies in e_i^perp.
  std::vector<Point> corner(n, Point(n, 0.0));
  for (int j = 0; j < n; ++j) corner[j][j] = h / u[j];
  std::vector<double> measure(n), weight(n), cdf(n);
  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    const double* pts[kMaxDim];
    int c = 0;
    for (int j = 0; j < n; ++j)
      if (j != i) pts[c++] = corner[j].data();
    measure[i] = simplex_volume(pts, n - 2, n);
    weight[i] = 1.0 / std::sqrt(1.0 - u[i] * u[i]);
    z += measure[i];
    cdf[i] = z;
  }
  const double log_zn = n * std::log(z);
  Philox rng(seed, 0x5e);
  RunningStats stats;
  double x[kMaxDim][kMaxDim];
  int facet[kMaxDim];
  for (std::size_t s = 0; s < samples; ++s) {
    bool same = true;
    double w = 1.0;
    for (int p = 0; p < n; ++p) {
      const double r = rng.uniform() * z;
      facet[p] = static_cast<int>(std::min<std::ptrdiff_t>(
          std::upper_bound(cdf.begin(), cdf.end(), r) - cdf.begin(), n - 1));
      if (facet[p] != facet[0]) same = false;
      w *= weight[facet[p]];
      double b[kMaxDim + 1];
      b[0] = 0.0;
      for (int q = 1; q < n - 1; ++q) b[q] = rng.uniform();
      std::sort(b + 1, b + n - 1);
      b[n - 1] = 1.0;
      int c = 0;
      std::fill(x[p], x[p] + n, 0.0);
      for (int j = 0; j < n; ++j) {
        if (j == facet[p]) continue;
        x[p][j] = (b[c + 1] - b[c]) * corner[j][j];
        ++c;
      }
    }
    if (same) {
      stats.add(0.0);
      continue;
    }
    const double* pts[kMaxDim];
    for (int p = 0; p < n; ++p) pts[p] = x[p];
    const double vol = simplex_volume(pts, n - 1, n);
    stats.add(w * std::pow(vol, k));
  }
  const double scale = std::exp(log_zn);
  return {scale * stats.mean(), scale * stats.stderr_of_mean()};
}

McEstimate s_eval(std::span<const double> q, double alpha, double N, std::size_t samples,
                  std::uint64_t seed) {
  const int n = static_cast<int>(q.size());
  if (n < 2 || n > kMaxDim) fail(ErrorCode::out_of_range, "n must lie in [2, 6]");
  int free_count = 0;
  for (int i = 0; i < n; ++i) {
    if (!(q[i] >= -1.0) || !std::isfinite(q[i]))
      fail(ErrorCode::invalid_argument, "q_" + std::to_string(i + 1) + " < -1");
    if (q[i] > -1.0) ++free_count;
  }
  if (free_count < 2) fail(ErrorCode::invalid_argument, "at least two q_i must exceed -1");
  if (!(alpha > 0.0) || alpha > 1.0 / (2.0 * n) * (1.0 + 1e-12))
    fail(ErrorCode::invalid_argument, "alpha must lie in (0, 1/(2n)]");
  require_sample_size(N, n);
  if (samples < 2) fail(ErrorCode::invalid_argument, "need at least 2 samples");

  const double m = N - n;
  const double M = alpha * m;
  const double log_m = std::log(M);
  std::vector<std::gamma_distribution<double>> gammas;
  double log_gamma_const = 0.0;
  int gamma_count = 0;
  for (int i = 0; i < n; ++i) {
    const bool g = q[i] > -1.0;
    gammas.emplace_back(g ? q[i] + 1.0 : 1.0, 1.0);
    if (g) {
      log_gamma_const += std::lgamma(q[i] + 1.0);
      ++gamma_count;
    }
  }
  Philox rng(seed, 0x53);
  RunningStats stats;
  double s[kMaxDim], ls[kMaxDim];
  for (std::size_t k = 0; k < samples; ++k) {
    double lg = 0.0, gamma_sum = 0.0, log_w = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!(q[i] > -1.0)) continue;
      s[i] = std::max(gammas[i](rng), 1e-300);
      ls[i] = std::log(s[i]);
      lg += ls[i];
      gamma_sum += s[i];
    }
    bool inside = true;
    if (gamma_count < n) {
      // Lower bound shared by the q_i = -1 coordinates: s_n itself when it
      // is drawn, otherwise the last chain inequality with every unknown
      // coordinate replaced by s_n.
      const double log_lo = q[n - 1] > -1.0 ? ls[n - 1] : (lg - log_m) / (gamma_count - 1);
      if (log_lo >= log_m) {
        inside = false;
      } else {
        const double width = log_m - log_lo;
        for (int i = 0; i < n; ++i) {
          if (q[i] > -1.0) continue;
          ls[i] = log_lo + width * rng.uniform_open();
          s[i] = std::exp(ls[i]);
          log_w += std::log(width);
        }
      }
    }
    double w = 0.0;
    if (inside) {
      inside = ls[0] <= log_m;
      double total = s[0], prefix = ls[0];
      for (int i = 1; i < n && inside; ++i) {
        if (s[i] > s[i - 1]) inside = false;
        if (i >= 2 && prefix - log_m > (i - 1) * ls[i]) inside = false;
        prefix += ls[i];
        total += s[i];
      }
      if (inside && total < m) w = std::exp(log_w + m * std::log1p(-total / m) + gamma_sum);
    }
    stats.add(w);
  }
  const double scale = std::exp(log_gamma_const);
  return {scale * stats.mean(), scale * stats.stderr_of_mean()};
}

}  // namespace hullaw
