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
#include "hullaw/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hullaw/error.hpp"
#include "hullaw/polytope_io.hpp"

namespace hullaw {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

json plan_to_json(const ExperimentPlan& plan) {
  json metrics = json::array();
  for (Metric m : plan.metrics) metrics.push_back(to_string(m));
  return {{"polytope", plan.polytope_ref},
          {"N_grid", plan.N_grid},
          {"replications", plan.replications},
          {"master_seed", plan.master_seed},
          {"metrics", metrics}};
}

namespace {

std::int64_t grid_value(const json& v) {
  double x = 0.0;
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number()) x = v.get<double>();
  else if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::size_t used = 0;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) fail(ErrorCode::parse, "N_grid entry '" + s + "' is not a number");
  } else {
    fail(ErrorCode::parse, "N_grid entries must be numbers");
  }
  if (!(x >= 1.0) || x > 9.0e15 || x != std::floor(x))
    fail(ErrorCode::invalid_argument, "N_grid entry " + format_double(x) + " is not a positive integer");
  return static_cast<std::int64_t>(x);
}

}  // namespace

ExperimentPlan plan_from_json(const json& doc) {
  if (!doc.is_object()) fail(ErrorCode::parse, "plan must be a JSON object");
  ExperimentPlan plan;
  try {
    plan.polytope_ref = doc.at("polytope").get<std::string>();
    for (const auto& v : doc.at("N_grid")) plan.N_grid.push_back(grid_value(v));
    plan.replications = doc.at("replications").get<int>();
    if (doc.contains("master_seed")) {
      const json& seed = doc.at("master_seed");
      if (seed.is_string()) plan.master_seed = std::stoull(seed.get<std::string>(), nullptr, 0);
      else plan.master_seed = seed.get<std::uint64_t>();
    } else {
      plan.has_seed = false;
    }
    if (doc.contains("metrics")) {
      for (const auto& m : doc.at("metrics")) {
        const auto metric = metric_from_string(m.get<std::string>());
        if (!metric) fail(ErrorCode::invalid_argument, "unknown metric '" + m.get<std::string>() + "'");
        plan.metrics.push_back(*metric);
      }
    } else {
      plan.metrics = all_metrics();
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, std::string("bad plan: ") + e.what());
  } catch (const std::logic_error& e) {
    fail(ErrorCode::parse, std::string("bad plan: ") + e.what());
  }
  plan.polytope = std::make_shared<const SimplePolytope>(resolve_polytope(plan.polytope_ref));
  plan.validate();
  return plan;
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, path.string() + ": " + e.what());
  }
}

ExperimentPlan load_plan_file(const std::filesystem::path& path) {
  const json doc = load_json_file(path);
  try {
    return plan_from_json(doc);
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.what());
  }
}

std::string records_csv(const RunResult& run) {
  std::string out = "N,replication,metric,value\n";
  const int dim = run.plan.polytope->dim();
  for (const auto& r : run.records) {
    if (!r.ok) continue;
    for (Metric m : run.plan.metrics) {
      const auto labels = metric_labels(m, dim);
      const auto values = metric_values(r, m, dim);
      for (std::size_t j = 0; j < labels.size(); ++j) {
        out += std::to_string(r.N);
        out += ',';
        out += std::to_string(r.replication);
        out += ',';
        out += labels[j];
        out += ',';
        out += format_double(values[j]);
        out += '\n';
      }
    }
  }
  return out;
}

json fit_to_json(const NamedFit& f) {
  json j = {{"metric", f.metric},
            {"model", to_string(f.fit.model)},
            {"exponent_or_power", f.fit.exponent_or_power},
            {"constant", f.fit.constant},
            {"intercept", f.fit.intercept},
            {"stderr", f.fit.stderr_},
            {"r_squared", f.fit.r_squared},
            {"residual", f.fit.residual},
            {"points", f.fit.points}};
  if (f.diagnostic) {
    j["free_power"] = {{"candidates", f.diagnostic->candidates},
                       {"residuals", f.diagnostic->residuals},
                       {"best_integer", f.diagnostic->best_integer},
                       {"best_continuous", f.diagnostic->best_continuous}};
  }
  return j;
}

json summary_json(const RunResult& run, const std::vector<MetricSummary>& summary,
                  const std::vector<NamedFit>& fits) {
  json per_n = json::array();
  for (const auto& s : summary)
    per_n.push_back({{"metric", s.metric},
                     {"N", s.N},
                     {"count", s.count},
                     {"mean", s.mean},
                     {"stderr", s.stderr_},
                     {"median", s.median}});
  json fit_list = json::array();
  for (const auto& f : fits) fit_list.push_back(fit_to_json(f));
  json seeds = json::array();
  json failures = json::array();
  std::size_t ties = 0;
  for (const auto& r : run.records) {
    seeds.push_back({{"N", r.N}, {"replication", r.replication}, {"seed", r.seed}});
    if (!r.ok) failures.push_back({{"N", r.N}, {"replication", r.replication}, {"error", r.failure}});
    ties += r.tie_events;
  }
  return {{"plan", plan_to_json(run.plan)},
          {"polytope", {{"name", run.plan.polytope->name()},
                        {"dimension", run.plan.polytope->dim()},
                        {"f_vector", run.plan.polytope->f_vector()},
                        {"flags", run.plan.polytope->flag_count()},
                        {"volume", run.plan.polytope->volume()},
                        {"surface_area", run.plan.polytope->surface_area()}}},
          {"per_N", per_n},
          {"fits", fit_list},
          {"seeds", seeds},
          {"failed_replications", run.failures},
          {"failures", failures},
          {"tie_events", ties},
          {"invariant_violations", run.invariant_violations}};
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) fail(ErrorCode::io, "write failed for " + path.string());
}

RunFiles write_run(const RunResult& run, const std::vector<MetricSummary>& summary,
                   const std::vector<NamedFit>& fits, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::io, "cannot create " + dir.string() + ": " + ec.message());
  RunFiles files;
  files.records = dir / "records.csv";
  files.summary = dir / "summary.json";
  files.manifest = dir / "manifest.json";
  const std::string csv = records_csv(run);
  const std::string sum = summary_json(run, summary, fits).dump(2) + "\n";
  write_text_file(files.records, csv);
  write_text_file(files.summary, sum);

  json entries = json::array();
  std::string combined;
  for (const auto& [name, text] : {std::pair<std::string, const std::string*>{"records.csv", &csv},
                                   std::pair<std::string, const std::string*>{"summary.json", &sum}}) {
    const std::string h = hex64(fnv1a64(*text));
    entries.push_back({{"file", name}, {"bytes", text->size()}, {"fnv1a64", h}});
    combined += name + ":" + h + "\n";
  }
  files.run_hash = hex64(fnv1a64(combined));
  const json manifest = {{"files", entries}, {"run_hash", files.run_hash}, {"master_seed", run.plan.master_seed}};
  write_text_file(files.manifest, manifest.dump(2) + "\n");
  return files;
}

}  // namespace hullaw
