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

#include <vector>

namespace hullaw {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

// m-point Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^a (1+x)^b,
// a, b > -1, from the eigen-decomposition of the Jacobi matrix.
QuadratureRule gauss_jacobi(int m, double a, double b);
QuadratureRule gauss_legendre(int m);

// Rule for int_0^1 f(t) t^power dt, power > -1: Gauss-Legendre on the
// geometric panels [r^{k+1}, r^k], k < levels, and Gauss-Jacobi with the
// exact endpoint weight on [0, r^levels].
QuadratureRule graded_rule(int m, double ratio, int levels, double power);

}  // namespace hullaw
