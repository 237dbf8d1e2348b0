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

#include <span>
#include <string>
#include <vector>

namespace hullaw {

enum class FitModel { power_law, log_power };

const char* to_string(FitModel model) noexcept;

struct FitResult {
  FitModel model = FitModel::power_law;
  double exponent_or_power = 0.0;  // slope s, or the log power p
  double constant = 0.0;           // c
  double intercept = 0.0;          // ln c for power laws, b for log powers
  double stderr_ = 0.0;            // of the slope (power law) or of c (log power)
  double r_squared = 0.0;
  double residual = 0.0;           // weighted sum of squared residuals
  std::size_t points = 0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double intercept_stderr = 0.0;
  double r_squared = 0.0;
  double ssr = 0.0;  // weighted
};

// Weighted least squares y = intercept + slope x. Uniform weights when w is
// empty. Standard errors use the residual variance with k-2 dof.
LinearFit weighted_linear_fit(std::span<const double> x, std::span<const double> y,
                              std::span<const double> w = {});

// mean ~ c N^s by WLS on (ln N, ln mean) with weights (mean/se)^2; unit
// weights when any se is zero.
FitResult fit_power_law(std::span<const double> n_values, std::span<const double> means,
                        std::span<const double> se);

// mean ~ c (ln N)^p + b with weights 1/se^2.
FitResult fit_log_power(std::span<const double> n_values, std::span<const double> means,
                        std::span<const double> se, double p);

struct FreePowerDiagnostic {
  std::vector<double> candidates;   // powers tried
  std::vector<double> residuals;    // weighted SSR for each
  double best_integer = 0.0;        // candidate with the lowest residual
  double best_continuous = 0.0;     // minimiser over a fine grid in [0.25, 4]
};

FreePowerDiagnostic free_power_diagnostic(std::span<const double> n_values,
                                          std::span<const double> means,
                                          std::span<const double> se,
                                          std::vector<double> candidates = {1, 2, 3});

}  // namespace hullaw
