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
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hullaw/hullaw.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheck = 1;
constexpr int kExitUsage = 2;

int exit_code(hullaw_status s) {
  switch (s) {
    case HULLAW_OK: return kExitOk;
    case HULLAW_E_CHECK_FAILED:
    case HULLAW_E_INTERNAL: return kExitCheck;
    default: return kExitUsage;
  }
}

int report(hullaw_status s) {
  if (s != HULLAW_OK) std::cerr << "error (" << hullaw_status_name(s) << "): " << hullaw_last_error() << "\n";
  return exit_code(s);
}

// Owns a string returned by the library.
struct LibString {
  char* p = nullptr;
  ~LibString() { hullaw_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Polytope {
  hullaw_polytope* p = nullptr;
  ~Polytope() { hullaw_polytope_free(p); }
};

struct Plan {
  hullaw_plan* p = nullptr;
  ~Plan() { hullaw_plan_free(p); }
};

struct Run {
  hullaw_run* p = nullptr;
  ~Run() { hullaw_run_free(p); }
};

int default_threads() {
  if (const char* env = std::getenv("HULLAW_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    std::cerr << "warning: ignoring HULLAW_THREADS='" << env << "'\n";
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& given) {
  if (given) return *given;
  const std::uint64_t s = hullaw_entropy_seed();
  std::cerr << "seed: " << s << "\n";
  return s;
}

// "1e4" or "10000"; commas already split by CLI11.
double parse_number(const std::string& s) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw CLI::ValidationError("'" + s + "' is not a number");
  return x;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "error (io): cannot write " << path << "\n";
    return false;
  }
  return true;
}

int emit(hullaw_status s, const LibString& out) {
  if (out.p) std::cout << out.str();
  return report(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random polytopes from boundary points of simple polytopes: simulation and asymptotics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hullaw_version()));

  // gen
  auto* gen = app.add_subcommand("gen", "Write a validated polytope as JSON");
  std::string gen_name, gen_out;
  gen->add_option("name", gen_name, "cube-N, simplex-N, prism-N or a vertex/polytope JSON file")->required();
  gen->add_option("-o,--out", gen_out, "Output file (default: stdout)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run an experiment plan");
  std::string plan_path, out_dir = "run", dump_off, dump_samples;
  std::optional<std::uint64_t> sim_seed;
  int threads = default_threads();
  bool quiet = false;
  sim->add_option("plan", plan_path, "Plan JSON file")->required();
  sim->add_option("-o,--out", out_dir, "Run directory")->capture_default_str();
  sim->add_option("--seed", sim_seed, "Override the plan's master seed");
  sim->add_option("-t,--threads", threads, "Worker threads (default: HULLAW_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  sim->add_option("--dump-off", dump_off, "Write the hull of replication 0 at the largest N as OFF (n = 3)");
  sim->add_option("--dump-samples", dump_samples, "Write the points of replication 0 at the largest N as CSV");
  sim->add_flag("-q,--quiet", quiet, "No progress output");

  // fit
  auto* fit = app.add_subcommand("fit", "Fit a scaling law to a run summary");
  std::string fit_source, fit_metric = "vol_diff", fit_model;
  std::optional<double> fit_p;
  fit->add_option("summary", fit_source, "Run directory or summary.json")->required();
  fit->add_option("-m,--metric", fit_metric, "Metric label")->capture_default_str();
  fit->add_option("--model", fit_model, "power_law or log_power (default by metric)")
      ->check(CLI::IsMember({"power_law", "log_power"}));
  fit->add_option("-p,--power", fit_p, "Log power p for log_power");

  // jeval
  auto* jeval = app.add_subcommand("jeval", "Evaluate the J(l) integral");
  std::optional<int> j_n;
  std::vector<std::string> j_l, j_N;
  std::string j_alpha, j_method = "transformed";
  std::optional<std::uint64_t> j_seed;
  std::string j_samples = "1e6";
  jeval->add_option("-n,--dim", j_n, "Dimension (checked against the length of l)");
  jeval->add_option("-l,--exponents", j_l, "Exponents l_1..l_n (integers, p/q or decimals)")
      ->required()
      ->delimiter(',');
  jeval->add_option("-a,--alpha", j_alpha, "alpha > 0")->required();
  jeval->add_option("-N,--N", j_N, "N or a comma-separated grid; scientific notation accepted")
      ->required()
      ->delimiter(',');
  jeval->add_option("--method", j_method, "direct, transformed, asymptotic, both, all or log_regime")
      ->check(CLI::IsMember({"direct", "transformed", "asymptotic", "both", "all", "log_regime"}))
      ->capture_default_str();
  jeval->add_option("-s,--samples", j_samples, "Monte Carlo samples")->capture_default_str();
  jeval->add_option("--seed", j_seed, "Seed (default: from entropy, printed)");

  // seval
  auto* seval = app.add_subcommand("seval", "Evaluate the ordered-region integral S(q)");
  std::vector<std::string> s_q, s_N;
  std::string s_alpha, s_samples = "1e6";
  std::optional<std::uint64_t> s_seed;
  seval->add_option("-q,--exponents", s_q, "q_1..q_n")->required()->delimiter(',');
  seval->add_option("-a,--alpha", s_alpha, "0 < alpha <= 1/(2n)")->required();
  seval->add_option("-N,--N", s_N, "N grid")->required()->delimiter(',');
  seval->add_option("-s,--samples", s_samples, "Monte Carlo samples")->capture_default_str();
  seval->add_option("--seed", s_seed, "Seed (default: from entropy, printed)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  std::string suite;
  std::optional<std::uint64_t> v_seed;
  verify->add_option("suite", suite, "geometry, hull-oracle, substitution, asymptotics or all")
      ->required()
      ->check(CLI::IsMember({"geometry", "hull-oracle", "substitution", "asymptotics", "all"}));
  verify->add_option("--seed", v_seed, "Seed (default: from entropy, printed)");

  // demo
  auto* demo = app.add_subcommand("demo", "Corner-miss or occupancy demonstration");
  std::string demo_name, d_N = "1e4", d_reps, d_polytope = "cube-3";
  int d_n = 3;
  std::optional<std::uint64_t> d_seed;
  demo->add_option("name", demo_name, "corner-miss or occupancy")
      ->required()
      ->check(CLI::IsMember({"corner-miss", "occupancy"}));
  demo->add_option("-n,--dim", d_n, "Cube dimension (corner-miss)")->capture_default_str();
  demo->add_option("-N,--N", d_N, "Points per replication")->capture_default_str();
  demo->add_option("-r,--reps", d_reps, "Replications (default 1e5 corner-miss, 100 occupancy)");
  demo->add_option("-P,--polytope", d_polytope, "Body for occupancy")->capture_default_str();
  demo->add_option("--seed", d_seed, "Seed (default: from entropy, printed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) {
      Polytope p;
      if (hullaw_status s = hullaw_polytope_create(gen_name.c_str(), &p.p)) return report(s);
      LibString js;
      if (hullaw_status s = hullaw_polytope_to_json(p.p, &js.p)) return report(s);
      if (gen_out.empty()) std::cout << js.str();
      else if (!write_file(gen_out, js.str())) return kExitUsage;
      return kExitOk;
    }

    if (*sim) {
      Plan plan;
      if (hullaw_status s = hullaw_plan_load(plan_path.c_str(), &plan.p)) return report(s);
      if (sim_seed || !hullaw_plan_has_seed(plan.p)) hullaw_plan_set_seed(plan.p, resolve_seed(sim_seed));
      Run run;
      hullaw_progress_fn progress = nullptr;
      if (!quiet)
        progress = [](size_t done, size_t total, void*) {
          if (done == total || done % 50 == 0) std::fprintf(stderr, "\r%zu/%zu replications", done, total);
          if (done == total) std::fputc('\n', stderr);
        };
      if (hullaw_status s = hullaw_run_plan(plan.p, threads, progress, nullptr, &run.p)) return report(s);
      LibString manifest;
      if (hullaw_status s = hullaw_run_write(run.p, out_dir.c_str(), &manifest.p)) return report(s);
      const json m = json::parse(manifest.str());
      std::cout << "records: " << hullaw_run_record_count(run.p) << "\n"
                << "run directory: " << out_dir << "\n"
                << "run hash: " << m.at("run_hash").get<std::string>() << "\n";

      if (!dump_off.empty() || !dump_samples.empty()) {
        LibString plan_json;
        if (hullaw_status s = hullaw_plan_to_json(plan.p, &plan_json.p)) return report(s);
        const json pj = json::parse(plan_json.str());
        const std::int64_t N = pj.at("N_grid").back().get<std::int64_t>();
        const std::uint64_t seed = hullaw_plan_replication_seed(plan.p, N, 0);
        Polytope poly;
        if (hullaw_status s = hullaw_plan_polytope(plan.p, &poly.p)) return report(s);
        if (!dump_off.empty()) {
          LibString off;
          if (hullaw_status s = hullaw_hull_off(poly.p, static_cast<std::uint64_t>(N), seed, &off.p)) return report(s);
          if (!write_file(dump_off, off.str())) return kExitUsage;
        }
        if (!dump_samples.empty()) {
          LibString csv;
          if (hullaw_status s = hullaw_sample_csv(poly.p, static_cast<std::uint64_t>(N), seed, &csv.p)) return report(s);
          if (!write_file(dump_samples, csv.str())) return kExitUsage;
        }
      }

      const std::size_t failures = hullaw_run_failures(run.p), violations = hullaw_run_violations(run.p);
      if (failures || violations) {
        std::cerr << "check failure: " << failures << " failed replication(s), " << violations
                  << " invariant violation(s); see " << out_dir << "/summary.json\n";
        return kExitCheck;
      }
      return kExitOk;
    }

    if (*fit) {
      std::string path = fit_source;
      if (std::ifstream(path + "/summary.json")) path += "/summary.json";
      json req = {{"summary", path}, {"metric", fit_metric}};
      if (!fit_model.empty()) req["model"] = fit_model;
      if (fit_p) req["p"] = *fit_p;
      LibString out;
      return emit(hullaw_fit_json(req.dump().c_str(), &out.p), out);
    }

    if (*jeval) {
      json req = {{"l", j_l}, {"alpha", parse_number(j_alpha)}, {"method", j_method},
                  {"samples", parse_number(j_samples)}};
      if (j_n) req["n"] = *j_n;
      json grid = json::array();
      for (const auto& s : j_N) grid.push_back(parse_number(s));
      req["N"] = grid;
      if (j_method != "direct" && j_method != "asymptotic") req["seed"] = resolve_seed(j_seed);
      LibString out;
      return emit(hullaw_jeval_json(req.dump().c_str(), &out.p), out);
    }

    if (*seval) {
      json q = json::array(), grid = json::array();
      for (const auto& s : s_q) q.push_back(parse_number(s));
      for (const auto& s : s_N) grid.push_back(parse_number(s));
      json req = {{"q", q}, {"alpha", parse_number(s_alpha)}, {"N", grid}, {"samples", parse_number(s_samples)},
                  {"seed", resolve_seed(s_seed)}};
      LibString out;
      return emit(hullaw_seval_json(req.dump().c_str(), &out.p), out);
    }

    if (*verify) {
      json req = {{"suite", suite}, {"seed", resolve_seed(v_seed)}};
      LibString out;
      const hullaw_status s = hullaw_verify_json(req.dump().c_str(), &out.p);
      if (out.p) {
        const json doc = json::parse(out.str());
        for (const auto& c : doc.at("checks"))
          std::cout << (c.at("passed").get<bool>() ? "PASS  " : "FAIL  ") << c.at("suite").get<std::string>() << ": "
                    << c.at("name").get<std::string>() << "  " << c.at("detail").get<std::string>() << "\n";
        std::cout << (doc.at("passed").get<bool>() ? "all checks passed" : "some checks failed") << "\n";
      }
      return report(s);
    }

    if (*demo) {
      json req = {{"name", demo_name}, {"n", d_n}, {"N", parse_number(d_N)}, {"polytope", d_polytope},
                  {"seed", resolve_seed(d_seed)}};
      if (!d_reps.empty()) req["reps"] = parse_number(d_reps);
      LibString out;
      return emit(hullaw_demo_json(req.dump().c_str(), &out.p), out);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
