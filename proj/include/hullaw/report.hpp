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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hullaw/experiment.hpp"

namespace hullaw {

// printf("%.17g")
std::string format_double(double x);

std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::string hex64(std::uint64_t value);

nlohmann::json plan_to_json(const ExperimentPlan& plan);
// {polytope, N_grid, replications, master_seed, metrics}. N_grid entries may
// be numbers or strings in scientific notation. Metrics default to all.
ExperimentPlan plan_from_json(const nlohmann::json& doc);
ExperimentPlan load_plan_file(const std::filesystem::path& path);

// Long format: N,replication,metric,value. Failed replications are omitted.
std::string records_csv(const RunResult& run);

nlohmann::json fit_to_json(const NamedFit& fit);
nlohmann::json summary_json(const RunResult& run, const std::vector<MetricSummary>& summary,
                            const std::vector<NamedFit>& fits);

struct RunFiles {
  std::filesystem::path records;
  std::filesystem::path summary;
  std::filesystem::path manifest;
  std::string run_hash;  // hex FNV-1a over the listed files
};

// Writes records.csv, summary.json and manifest.json into dir (created if
// missing).
RunFiles write_run(const RunResult& run, const std::vector<MetricSummary>& summary,
                   const std::vector<NamedFit>& fits, const std::filesystem::path& dir);

nlohmann::json load_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace hullaw
