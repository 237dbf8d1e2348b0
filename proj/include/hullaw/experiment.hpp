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
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hullaw/fit.hpp"
#include "hullaw/polytope.hpp"

namespace hullaw {

enum class Metric { f0, f_top_proper, f_top_total, vol_diff, v_cn, v_dn, cross_facet_histogram };

const char* to_string(Metric metric) noexcept;
std::optional<Metric> metric_from_string(std::string_view name);
std::vector<Metric> all_metrics();

struct ExperimentPlan {
  std::string polytope_ref;  // builtin name or file path, as given
  std::shared_ptr<const SimplePolytope> polytope;
  std::vector<std::int64_t> N_grid;
  int replications = 2;
  std::uint64_t master_seed = 0;
  bool has_seed = true;  // false when the plan file omitted master_seed
  std::vector<Metric> metrics;

  // Throws invalid_argument on an unusable plan.
  void validate() const;
};

struct ReplicationRecord {
  std::int64_t N = 0;
  int replication = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string failure;
  int f0 = 0;
  int f_top_total = 0;
  int f_top_proper = 0;
  double vol_diff = 0.0;
  double v_cn = 0.0;
  double v_dn = 0.0;
  std::vector<std::size_t> histogram;  // index k: proper facets touching k facets of P
  std::size_t tie_events = 0;
};

struct RunOptions {
  int threads = 1;
  // Called after each finished replication with (done, total); may be
  // invoked from worker threads.
  std::function<void(std::size_t, std::size_t)> progress;
};

struct RunResult {
  ExperimentPlan plan;
  std::vector<ReplicationRecord> records;  // N-major, replication-minor
  std::size_t failures = 0;
  std::vector<std::string> invariant_violations;
};

std::uint64_t replication_seed(std::uint64_t master_seed, std::int64_t N, int replication);

// One replication: sample, hull, classify, decompose. Never throws; hull
// failures end up in record.failure.
ReplicationRecord run_replication(const SimplePolytope& polytope, std::int64_t N,
                                  int replication, std::uint64_t seed);

RunResult run_plan(const ExperimentPlan& plan, const RunOptions& options = {});

// Scalar values of one metric in a record; the histogram yields one value
// per bin 1..n.
std::vector<double> metric_values(const ReplicationRecord& record, Metric metric, int dim);
// Column labels matching metric_values.
std::vector<std::string> metric_labels(Metric metric, int dim);

struct MetricSummary {
  std::string metric;  // label
  std::int64_t N = 0;
  std::size_t count = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
  double median = 0.0;
};

std::vector<MetricSummary> summarize(const RunResult& run);

struct NamedFit {
  std::string metric;
  FitResult fit;
  std::optional<FreePowerDiagnostic> diagnostic;
};

// Power laws for the volume metrics, (ln N)^{n-2} laws for the counts.
// Metrics without enough positive grid points are skipped.
std::vector<NamedFit> default_fits(const RunResult& run, const std::vector<MetricSummary>& summary);

struct CornerMissResult {
  int n = 0;
  std::int64_t N = 0;
  std::size_t reps = 0;
  double scale = 0.0;        // leg length of each corner simplex
  double measured = 0.0;     // fraction of replications with no hit
  double stderr_ = 0.0;
  double exact = 0.0;        // (1 - 1/N)^N
  double limit = 0.0;        // 1/e
};

// Union of the n corner simplices at the origin of [0,1]^n with total
// boundary probability 1/N; measures how often N boundary points all miss
// it.
CornerMissResult corner_miss(int n, std::int64_t N, std::size_t reps, std::uint64_t seed);

struct OccupancyDemoResult {
  std::int64_t N = 0;
  std::size_t reps = 0;
  std::size_t flag_true = 0;
  double fraction = 0.0;
  std::size_t min_margin_facet_count = 0;  // smallest per-facet count seen
};

OccupancyDemoResult occupancy_demo(const SimplePolytope& polytope, std::int64_t N,
                                   std::size_t reps, std::uint64_t seed);

}  // namespace hullaw
