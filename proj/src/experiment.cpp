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
#include "hullaw/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <thread>

#include "hullaw/classify.hpp"
#include "hullaw/error.hpp"
#include "hullaw/hull.hpp"
#include "hullaw/rng.hpp"
#include "hullaw/sampler.hpp"
#include "hullaw/stats.hpp"

namespace hullaw {

const char* to_string(Metric metric) noexcept {
  switch (metric) {
    case Metric::f0: return "f0";
    case Metric::f_top_proper: return "f_top_proper";
    case Metric::f_top_total: return "f_top_total";
    case Metric::vol_diff: return "vol_diff";
    case Metric::v_cn: return "V_CN";
    case Metric::v_dn: return "V_DN";
    case Metric::cross_facet_histogram: return "cross_facet_histogram";
  }
  return "?";
}

std::vector<Metric> all_metrics() {
  return {Metric::f0,       Metric::f_top_proper, Metric::f_top_total,          Metric::vol_diff,
          Metric::v_cn,     Metric::v_dn,         Metric::cross_facet_histogram};
}

std::optional<Metric> metric_from_string(std::string_view name) {
  for (Metric m : all_metrics())
    if (name == to_string(m)) return m;
  if (name == "v_cn") return Metric::v_cn;
  if (name == "v_dn") return Metric::v_dn;
  return std::nullopt;
}

void ExperimentPlan::validate() const {
  if (!polytope) fail(ErrorCode::invalid_argument, "plan has no polytope");
  if (N_grid.empty()) fail(ErrorCode::invalid_argument, "plan N_grid is empty");
  for (std::size_t i = 0; i < N_grid.size(); ++i) {
    if (N_grid[i] < 1) fail(ErrorCode::invalid_argument, "plan N_grid entries must be >= 1");
    if (i > 0 && N_grid[i] <= N_grid[i - 1])
      fail(ErrorCode::invalid_argument, "plan N_grid must be strictly increasing");
  }
  if (replications < 2) fail(ErrorCode::invalid_argument, "plan replications must be >= 2");
  for (std::size_t i = 0; i < metrics.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (metrics[i] == metrics[j])
        fail(ErrorCode::invalid_argument, std::string("duplicate metric ") + to_string(metrics[i]));
}

std::uint64_t replication_seed(std::uint64_t master_seed, std::int64_t N, int replication) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(replication));
}

ReplicationRecord run_replication(const SimplePolytope& polytope, std::int64_t N, int replication,
                                  std::uint64_t seed) {
  ReplicationRecord rec;
  rec.N = N;
  rec.replication = replication;
  rec.seed = seed;
  rec.histogram.assign(static_cast<std::size_t>(polytope.dim()) + 1, 0);
  try {
    const SampleBatch batch = sample_boundary(polytope, static_cast<std::size_t>(N), seed);
    HullOptions opt;
    opt.labels = batch.facet_ids;
    const HullMesh mesh = convex_hull(batch.points, opt);
    const FacetClassification cls = classify_facets(mesh, batch, polytope);
    const VolumeDecomposition dec = volume_decomposition(mesh, cls, polytope);
    rec.f0 = mesh.f0;
    rec.f_top_total = mesh.f_top;
    rec.f_top_proper = static_cast<int>(cls.proper);
    rec.vol_diff = polytope.volume() - mesh.volume;
    rec.v_cn = dec.v_cn;
    rec.v_dn = dec.v_dn;
    rec.histogram = cls.histogram;
    rec.histogram.resize(static_cast<std::size_t>(polytope.dim()) + 1, 0);
    rec.tie_events = cls.tie_events;
    rec.ok = true;
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.failure = e.what();
  }
  return rec;
}

namespace {

void check_record(const ReplicationRecord& r, const SimplePolytope& P, std::vector<std::string>& out) {
  auto where = [&] { return "N=" + std::to_string(r.N) + " rep=" + std::to_string(r.replication) + ": "; };
  const double tol = 1e-9 * std::max(1.0, P.volume());
  if (r.vol_diff < -tol) out.push_back(where() + "vol_diff < 0");
  if (r.vol_diff > P.volume() + tol) out.push_back(where() + "vol_diff > V(P)");
  if (std::abs(r.v_cn + r.v_dn - r.vol_diff) > tol) out.push_back(where() + "V_CN + V_DN != vol_diff");
  if (r.f0 > r.N) out.push_back(where() + "f0 > N");
  if (r.f_top_total - r.f_top_proper > static_cast<int>(P.facets().size()))
    out.push_back(where() + "more boundary-coincident facets than facets of P");
}

}  // namespace

RunResult run_plan(const ExperimentPlan& plan, const RunOptions& options) {
  plan.validate();
  RunResult run;
  run.plan = plan;
  const SimplePolytope& P = *plan.polytope;
  const std::size_t reps = static_cast<std::size_t>(plan.replications);
  const std::size_t total = plan.N_grid.size() * reps;
  run.records.resize(total);

  std::atomic<std::size_t> next{0}, done{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t slot = next.fetch_add(1);
      if (slot >= total) return;
      const std::int64_t N = plan.N_grid[slot / reps];
      const int r = static_cast<int>(slot % reps);
      run.records[slot] = run_replication(P, N, r, replication_seed(plan.master_seed, N, r));
      const std::size_t d = done.fetch_add(1) + 1;
      if (options.progress) options.progress(d, total);
    }
  };
  const int threads = std::clamp<int>(options.threads, 1, static_cast<int>(std::max<std::size_t>(total, 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& r : run.records) {
    if (!r.ok) ++run.failures;
    else check_record(r, P, run.invariant_violations);
  }
  return run;
}

std::vector<double> metric_values(const ReplicationRecord& r, Metric metric, int dim) {
  switch (metric) {
    case Metric::f0: return {static_cast<double>(r.f0)};
    case Metric::f_top_proper: return {static_cast<double>(r.f_top_proper)};
    case Metric::f_top_total: return {static_cast<double>(r.f_top_total)};
    case Metric::vol_diff: return {r.vol_diff};
    case Metric::v_cn: return {r.v_cn};
    case Metric::v_dn: return {r.v_dn};
    case Metric::cross_facet_histogram: {
      std::vector<double> v;
      for (int k = 1; k <= dim; ++k)
        v.push_back(static_cast<std::size_t>(k) < r.histogram.size() ? static_cast<double>(r.histogram[k]) : 0.0);
      return v;
    }
  }
  return {};
}

std::vector<std::string> metric_labels(Metric metric, int dim) {
  if (metric != Metric::cross_facet_histogram) return {to_string(metric)};
  std::vector<std::string> v;
  for (int k = 1; k <= dim; ++k) v.push_back("cross_facet_histogram_" + std::to_string(k));
  return v;
}

std::vector<MetricSummary> summarize(const RunResult& run) {
  std::vector<MetricSummary> out;
  const int dim = run.plan.polytope->dim();
  const std::size_t reps = static_cast<std::size_t>(run.plan.replications);
  for (Metric m : run.plan.metrics) {
    const auto labels = metric_labels(m, dim);
    for (std::size_t g = 0; g < run.plan.N_grid.size(); ++g) {
      std::vector<std::vector<double>> values(labels.size());
      for (std::size_t r = 0; r < reps; ++r) {
        const auto& rec = run.records[g * reps + r];
        if (!rec.ok) continue;
        const auto v = metric_values(rec, m, dim);
        for (std::size_t j = 0; j < v.size(); ++j) values[j].push_back(v[j]);
      }
      for (std::size_t j = 0; j < labels.size(); ++j) {
        MetricSummary s;
        s.metric = labels[j];
        s.N = run.plan.N_grid[g];
        RunningStats st;
        for (double x : values[j]) st.add(x);
        s.count = st.count();
        s.mean = st.mean();
        s.stderr_ = st.stderr_of_mean();
        auto& v = values[j];
        if (!v.empty()) {
          std::sort(v.begin(), v.end());
          const std::size_t h = v.size() / 2;
          s.median = v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
        }
        out.push_back(s);
      }
    }
  }
  return out;
}

std::vector<NamedFit> default_fits(const RunResult& run, const std::vector<MetricSummary>& summary) {
  std::vector<NamedFit> fits;
  const int dim = run.plan.polytope->dim();
  for (Metric m : run.plan.metrics) {
    if (m == Metric::cross_facet_histogram || m == Metric::f_top_total) continue;
    std::vector<double> Ns, means, se;
    for (const auto& s : summary) {
      if (s.metric != to_string(m) || s.count < 2) continue;
      Ns.push_back(static_cast<double>(s.N));
      means.push_back(s.mean);
      se.push_back(s.stderr_);
    }
    if (Ns.size() < 4) continue;
    NamedFit nf;
    nf.metric = to_string(m);
    try {
      if (m == Metric::f0 || m == Metric::f_top_proper) {
        nf.fit = fit_log_power(Ns, means, se, std::max(dim - 2, 0));
        nf.diagnostic = free_power_diagnostic(Ns, means, se);
      } else {
        if (std::any_of(means.begin(), means.end(), [](double x) { return !(x > 0.0); })) continue;
        nf.fit = fit_power_law(Ns, means, se);
      }
    } catch (const Error&) {
      continue;
    }
    fits.push_back(std::move(nf));
  }
  return fits;
}

CornerMissResult corner_miss(int n, std::int64_t N, std::size_t reps, std::uint64_t seed) {
  if (n < 2 || n > kMaxDim) fail(ErrorCode::out_of_range, "corner_miss needs 2 <= n <= 6");
  if (N < 1) fail(ErrorCode::invalid_argument, "corner_miss needs N >= 1");
  if (reps < 1) fail(ErrorCode::invalid_argument, "corner_miss needs reps >= 1");
  CornerMissResult res;
  res.n = n;
  res.N = N;
  res.reps = reps;
  res.exact = std::pow(1.0 - 1.0 / static_cast<double>(N), static_cast<double>(N));
  res.limit = std::exp(-1.0);
  const double fact = std::tgamma(static_cast<double>(n));  // (n-1)!
  res.scale = std::pow(fact * 2.0 * n / (n * static_cast<double>(N)), 1.0 / (n - 1));
  if (N == 1) {
    // The union would carry all of the boundary measure; every point hits it.
    res.measured = 0.0;
    return res;
  }
  if (res.scale >= 1.0)
    fail(ErrorCode::out_of_range, "corner simplices do not fit in the facets (scale " +
                                      std::to_string(res.scale) + " >= 1); increase N");

  // Points land in the box [0,s]^{n-1} of one of the n facets through the
  // origin with probability q = n s^{n-1} / (2n); only those points are
  // generated, and each hits its corner simplex iff its coordinates sum to
  // at most s.
  const double q = std::pow(res.scale, n - 1) / 2.0;
  std::uint64_t misses = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    Philox rng(derive_seed(seed, 0xc0, r));
    std::binomial_distribution<std::int64_t> in_box(N, q);
    const std::int64_t k = in_box(rng);
    bool hit = false;
    for (std::int64_t i = 0; i < k && !hit; ++i) {
      const auto facet = static_cast<int>(rng.uniform() * n);
      double sum = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != facet) sum += res.scale * rng.uniform();
      hit = sum <= res.scale;
    }
    if (!hit) ++misses;
  }
  const double p = static_cast<double>(misses) / static_cast<double>(reps);
  res.measured = p;
  res.stderr_ = std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
  return res;
}

OccupancyDemoResult occupancy_demo(const SimplePolytope& polytope, std::int64_t N, std::size_t reps,
                                   std::uint64_t seed) {
  if (N < 3) fail(ErrorCode::invalid_argument, "occupancy needs N >= 3");
  if (reps < 1) fail(ErrorCode::invalid_argument, "occupancy needs reps >= 1");
  OccupancyDemoResult res;
  res.N = N;
  res.reps = reps;
  res.min_margin_facet_count = static_cast<std::size_t>(N);
  for (std::size_t r = 0; r < reps; ++r) {
    const SampleBatch b = sample_boundary(polytope, static_cast<std::size_t>(N), derive_seed(seed, 0x0c, r));
    const OccupancyResult o = facet_occupancy_check(b, polytope);
    if (o.all_above) ++res.flag_true;
    for (auto c : o.counts) res.min_margin_facet_count = std::min(res.min_margin_facet_count, c);
  }
  res.fraction = static_cast<double>(res.flag_true) / static_cast<double>(reps);
  return res;
}

}  // namespace hullaw
