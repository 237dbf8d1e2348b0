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
#include "hullaw/fit.hpp"

#include <algorithm>
#include <cmath>

#include "hullaw/error.hpp"

namespace hullaw {

const char* to_string(FitModel model) noexcept {
  return model == FitModel::power_law ? "power_law" : "log_power";
}

LinearFit weighted_linear_fit(std::span<const double> x, std::span<const double> y,
                              std::span<const double> w) {
  const std::size_t k = x.size();
  if (y.size() != k || (!w.empty() && w.size() != k))
    fail(ErrorCode::invalid_argument, "fit inputs have different lengths");
  if (k < 2) fail(ErrorCode::invalid_argument, "fit needs at least two points");
  auto weight = [&](std::size_t i) { return w.empty() ? 1.0 : w[i]; };
  double sw = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(weight(i) > 0.0) || !std::isfinite(weight(i)))
      fail(ErrorCode::invalid_argument, "fit weights must be positive and finite");
    sw += weight(i);
    sx += weight(i) * x[i];
    sy += weight(i) * y[i];
  }
  const double xm = sx / sw, ym = sy / sw;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double dx = x[i] - xm, dy = y[i] - ym;
    sxx += weight(i) * dx * dx;
    sxy += weight(i) * dx * dy;
    syy += weight(i) * dy * dy;
  }
  if (!(sxx > 0.0)) fail(ErrorCode::invalid_argument, "fit abscissae are all equal");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = ym - f.slope * xm;
  for (std::size_t i = 0; i < k; ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    f.ssr += weight(i) * r * r;
  }
  f.r_squared = syy > 0.0 ? std::clamp(1.0 - f.ssr / syy, 0.0, 1.0) : 1.0;
  if (k > 2) {
    const double s2 = f.ssr / static_cast<double>(k - 2);
    f.slope_stderr = std::sqrt(s2 / sxx);
    f.intercept_stderr = std::sqrt(s2 * (1.0 / sw + xm * xm / sxx));
  }
  return f;
}

namespace {

void check_grid(std::span<const double> n_values, std::span<const double> means,
                std::span<const double> se) {
  if (n_values.size() < 4) fail(ErrorCode::invalid_argument, "fit needs at least 4 grid points");
  if (means.size() != n_values.size() || se.size() != n_values.size())
    fail(ErrorCode::invalid_argument, "fit inputs have different lengths");
  for (double n : n_values)
    if (!(n > 1.0)) fail(ErrorCode::invalid_argument, "grid values must exceed 1");
}

std::vector<double> inverse_variance(std::span<const double> se, std::span<const double> scale) {
  std::vector<double> w;
  for (std::size_t i = 0; i < se.size(); ++i) {
    if (!(se[i] > 0.0)) return {};
    const double rel = se[i] / (scale.empty() ? 1.0 : scale[i]);
    w.push_back(1.0 / (rel * rel));
  }
  return w;
}

}  // namespace

FitResult fit_power_law(std::span<const double> n_values, std::span<const double> means,
                        std::span<const double> se) {
  check_grid(n_values, means, se);
  std::vector<double> x, y;
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (!(means[i] > 0.0)) fail(ErrorCode::invalid_argument, "power-law fit needs positive means");
    x.push_back(std::log(n_values[i]));
    y.push_back(std::log(means[i]));
  }
  const auto w = inverse_variance(se, means);
  const LinearFit lf = weighted_linear_fit(x, y, w);
  FitResult r;
  r.model = FitModel::power_law;
  r.exponent_or_power = lf.slope;
  r.intercept = lf.intercept;
  r.constant = std::exp(lf.intercept);
  r.stderr_ = lf.slope_stderr;
  r.r_squared = lf.r_squared;
  r.residual = lf.ssr;
  r.points = x.size();
  return r;
}

FitResult fit_log_power(std::span<const double> n_values, std::span<const double> means,
                        std::span<const double> se, double p) {
  check_grid(n_values, means, se);
  std::vector<double> x;
  for (double n : n_values) x.push_back(std::pow(std::log(n), p));
  const auto w = inverse_variance(se, {});
  FitResult r;
  r.model = FitModel::log_power;
  r.exponent_or_power = p;
  r.points = x.size();
  if (p == 0.0) {
    // Constant model: the intercept absorbs everything.
    double sw = 0, sy = 0;
    for (std::size_t i = 0; i < means.size(); ++i) {
      const double wi = w.empty() ? 1.0 : w[i];
      sw += wi;
      sy += wi * means[i];
    }
    r.intercept = sy / sw;
    for (std::size_t i = 0; i < means.size(); ++i) {
      const double d = means[i] - r.intercept;
      r.residual += (w.empty() ? 1.0 : w[i]) * d * d;
    }
    return r;
  }
  const LinearFit lf = weighted_linear_fit(x, means, w);
  r.constant = lf.slope;
  r.intercept = lf.intercept;
  r.stderr_ = lf.slope_stderr;
  r.r_squared = lf.r_squared;
  r.residual = lf.ssr;
  return r;
}

FreePowerDiagnostic free_power_diagnostic(std::span<const double> n_values,
                                          std::span<const double> means,
                                          std::span<const double> se,
                                          std::vector<double> candidates) {
  FreePowerDiagnostic d;
  d.candidates = std::move(candidates);
  double best = INFINITY;
  for (double p : d.candidates) {
    const double res = fit_log_power(n_values, means, se, p).residual;
    d.residuals.push_back(res);
    if (res < best) {
      best = res;
      d.best_integer = p;
    }
  }
  best = INFINITY;
  for (int i = 0; i <= 375; ++i) {
    const double p = 0.25 + 0.01 * i;
    const double res = fit_log_power(n_values, means, se, p).residual;
    if (res < best) {
      best = res;
      d.best_continuous = p;
    }
  }
  return d;
}

}  // namespace hullaw
