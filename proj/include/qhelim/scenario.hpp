// Copyright 2026 The qhelim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qhelim/bounds.hpp"

namespace qhelim::cli {

// Config error carrying the path of the offending field
// (e.g. "scenarios[2].kind").
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string field_path, const std::string& message)
      : std::runtime_error(field_path + ": " + message), field_path_(std::move(field_path)) {}
  const std::string& field_path() const { return field_path_; }

 private:
  std::string field_path_;
};

enum class Format { kCsv, kJson };

Format format_from_string(const std::string& s);

struct ReportRow {
  std::string scenario_id;
  std::string quantity;
  double value = 0.0;
  std::optional<double> bound;
  std::optional<double> slack;
  bool pass = true;
  std::string mode;
};

// One declarative unit of work. Parameters are flat JSON keys, validated
// strictly per kind; unknown keys are hard errors.
struct Scenario {
  std::string id;
  std::string kind;  // bounds | count | qrac-optimize | qhe-audit | reduce | trace-lemma
  std::uint64_t seed = 0;
  bounds::BoundMode mode = bounds::BoundMode::kPaper;
  std::string out;        // optional per-scenario report path
  Format format = Format::kCsv;
  double budget_seconds = 0.0;  // 0 = unlimited
  std::string chain_out;        // reduce: optional chain-table CSV path
  nlohmann::json params = nlohmann::json::object();
};

Scenario scenario_from_json(const nlohmann::json& j, const std::string& field_path);

// A scenario file is either one scenario object, an array of them, or
// {"scenarios": [...]}.
std::vector<Scenario> load_scenarios(const std::string& path);

std::vector<ReportRow> run_scenario(const Scenario& s);

std::string render_csv(const std::vector<ReportRow>& rows);
nlohmann::json rows_to_json(const std::vector<ReportRow>& rows);
std::vector<ReportRow> rows_from_json(const nlohmann::json& j);

// Writes atomically: the report lands complete or not at all.
void emit_report(const std::vector<ReportRow>& rows, Format format, const std::string& path);

bool all_pass(const std::vector<ReportRow>& rows);

std::string format_real(double v);  // %.12g, the report convention

}  // namespace qhelim::cli
