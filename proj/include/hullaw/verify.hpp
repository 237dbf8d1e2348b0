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
#include <string>
#include <string_view>
#include <vector>

#include "hullaw/asymptotics.hpp"

namespace hullaw {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const noexcept;
  std::size_t failures() const noexcept;
};

std::vector<std::string> verify_suites();  // geometry, hull-oracle, substitution, asymptotics

// suite: one of verify_suites() or "all". Throws invalid_argument for an
// unknown suite name.
VerifyReport run_verify(std::string_view suite, std::uint64_t seed);

struct JCatalogCase {
  std::vector<double> l;
  double alpha = 0.0;
  double N = 0.0;
};

// Mixed n = 3, 4 cases over the interior and extremal regimes.
std::vector<JCatalogCase> j_catalog();

struct HullOracleSummary {
  std::size_t batches = 0;
  std::size_t mismatches = 0;
  std::string first_mismatch;
};

// Random small batches on cube-3, simplex-3 and prism-3 against the
// brute-force hull.
HullOracleSummary hull_oracle_equivalence(std::size_t batches, int max_points, std::uint64_t seed);

}  // namespace hullaw
