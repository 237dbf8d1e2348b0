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
#include "hullaw/quadrature.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "hullaw/error.hpp"

namespace hullaw {

QuadratureRule gauss_jacobi(int m, double a, double b) {
  if (m < 1) fail(ErrorCode::invalid_argument, "quadrature needs at least one node");
  if (!(a > -1.0) || !(b > -1.0))
    fail(ErrorCode::invalid_argument, "Jacobi weight exponents must exceed -1");
  const double ab = a + b;
  Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k < m; ++k) {
    const double s = 2.0 * k + ab;
    jm(k, k) = (k == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    if (k + 1 < m) {
      const double k1 = k + 1.0;
      const double s1 = 2.0 * k1 + ab;
      const double beta =
          (k1 == 1.0) ? 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
                      : 4.0 * k1 * (k1 + a) * (k1 + b) * (k1 + ab) /
                            (s1 * s1 * (s1 + 1.0) * (s1 - 1.0));
      jm(k, k + 1) = jm(k + 1, k) = std::sqrt(beta);
    }
  }
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jm);
  if (es.info() != Eigen::Success) fail(ErrorCode::internal, "Jacobi matrix eigensolver failed");
  QuadratureRule r;
  for (int k = 0; k < m; ++k) {
    r.nodes.push_back(es.eigenvalues()(k));
    const double v0 = es.eigenvectors()(0, k);
    r.weights.push_back(mu0 * v0 * v0);
  }
  return r;
}

QuadratureRule gauss_legendre(int m) { return gauss_jacobi(m, 0.0, 0.0); }

QuadratureRule graded_rule(int m, double ratio, int levels, double power) {
  if (!(ratio > 0.0 && ratio < 1.0)) fail(ErrorCode::invalid_argument, "grading ratio must lie in (0,1)");
  if (levels < 0) fail(ErrorCode::invalid_argument, "negative level count");
  const QuadratureRule gl = gauss_legendre(m);
  const QuadratureRule gj = gauss_jacobi(m, 0.0, power);
  QuadratureRule r;
  double hi = 1.0;
  for (int k = 0; k < levels; ++k) {
    const double lo = hi * ratio;
    const double half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < gl.size(); ++i) {
      const double t = lo + half * (gl.nodes[i] + 1.0);
      r.nodes.push_back(t);
      r.weights.push_back(half * gl.weights[i] * std::pow(t, power));
    }
    hi = lo;
  }
  // int_0^c f(t) t^p dt = (c/2)^{p+1} sum w_k f(c (1+x_k)/2)
  const double scale = std::pow(0.5 * hi, power + 1.0);
  for (std::size_t i = 0; i < gj.size(); ++i) {
    r.nodes.push_back(0.5 * hi * (gj.nodes[i] + 1.0));
    r.weights.push_back(scale * gj.weights[i]);
  }
  return r;
}

}  // namespace hullaw
