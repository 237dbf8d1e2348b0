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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hullaw {

// ---- substitution algebra ------------------------------------------------

// f_j(x) = prod_{i != j} x_i
std::vector<double> forward_map(std::span<const double> x);
// g_i(y) = (prod_k y_k)^{1/(n-1)} / y_i
std::vector<double> inverse_map(std::span<const double> y);

// prod_k y_k < beta y_i^{n-1} for every i.
bool region_member(std::span<const double> y, double beta);
// The same set through the sorted chain y_(1) > ... > y_(n),
// beta y_(k)^{k-2} > y_(1) ... y_(k-1) for k >= 3, and y_(1) < beta.
bool region_member_sorted(std::span<const double> y, double beta);

// |det dt/dv| for t = inverse_map(v): (n-1)^{-1} (prod v)^{-(n-2)/(n-1)}.
double jacobian_det(std::span<const double> v);
// Central-difference determinant of the same Jacobian (signed).
double jacobian_det_numeric(std::span<const double> v);

// det(I-shifted all-ones matrix) = prod x_i + sum_i prod_{j != i} x_j.
double ones_plus_diag_det(std::span<const double> x);
double ones_plus_diag_det_numeric(std::span<const double> x);

// ---- exponent vectors ----------------------------------------------------

enum class Regime { interior, two_extremal, multi_strict, invalid };

const char* to_string(Regime regime) noexcept;

struct ExponentVector {
  std::vector<double> l;
  double L = 0.0;
  double alpha = 0.0;
  Regime regime = Regime::invalid;
  std::vector<bool> extremal;  // l_i = L/(n-1) - 1
  bool exact = false;          // classified with rational arithmetic
  std::string violation;       // why the vector is invalid

  int n() const noexcept { return static_cast<int>(l.size()); }
  double threshold() const noexcept { return L / (n() - 1) - 1.0; }
  // Gamma shapes l_i - L/(n-1) + 1.
  double shape(int i) const noexcept { return l[i] - L / (n() - 1) + 1.0; }
  // J(l) ~ N^{exponent()} (up to logs).
  double exponent() const noexcept { return -n() + L / (n() - 1); }
  int extremal_count() const;

  static ExponentVector make(std::vector<double> l, double alpha);
  // Entries may be integers, decimals or fractions p/q; equalities are then
  // decided exactly.
  static ExponentVector parse(const std::vector<std::string>& l, double alpha);
};

// ---- J(l) ----------------------------------------------------------------

enum class JMethod { direct, transformed, asymptotic_leading, log_regime_shape };

const char* to_string(JMethod method) noexcept;

struct JEvalResult {
  double value = 0.0;
  JMethod method = JMethod::direct;
  double N = 0.0;
  double error_estimate = 0.0;
};

// Tensor graded Gauss rule over [0,1]^n (n <= 4); the error estimate is the
// difference to a second, finer rule. resolution scales the node counts.
JEvalResult j_direct(const ExponentVector& ev, double N, int resolution = 0);

// Importance sampling of the substituted integral.
JEvalResult j_transformed(const ExponentVector& ev, double N, std::size_t samples,
                          std::uint64_t seed);

JEvalResult j_asymptotic(const ExponentVector& ev, double N);

struct LogRegimeFit {
  double exponent = 0.0;
  int log_power = 0;
  double constant = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
  double residual_minus = 0.0;  // same fit with log_power - 1
  double residual_plus = 0.0;   // and with log_power + 1
  std::vector<JEvalResult> points;
};

LogRegimeFit j_log_regime(const ExponentVector& ev, const std::vector<double>& n_grid,
                          std::size_t samples, std::uint64_t seed);

// ---- other integrals ------------------------------------------------------

struct McEstimate {
  double value = 0.0;
  double error = 0.0;  // standard error
};

struct SubstitutionCheck {
  McEstimate lhs;
  McEstimate rhs;
  double exact = 0.0;  // closed form of the right-hand side
};

// Catalog: "poly-exp:a_1,...,a_n" (prod t^a e^{-t}), "box-poly:b_1,...,b_n"
// (1[t <= 1] prod t^b), "exp" (prod e^{-t}, divergent). A single exponent is
// repeated n times.
SubstitutionCheck crucial_subst_check(std::string_view test_fn, int n, std::size_t samples,
                                      std::uint64_t seed);

McEstimate simplex_moment_mc(int k, double h, std::span<const double> u, std::size_t samples,
                             std::uint64_t seed);

McEstimate s_eval(std::span<const double> q, double alpha, double N, std::size_t samples,
                  std::uint64_t seed);

}  // namespace hullaw
