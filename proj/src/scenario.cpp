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

#include "qhelim/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qhelim/qhe.hpp"
#include "qhelim/qrac.hpp"
#include "qhelim/reduction.hpp"

namespace qhelim::cli {

namespace {

const std::set<std::string> kCommonKeys = {"id",  "kind",   "seed",           "mode",
                                           "out", "format", "budget_seconds", "chain_out"};

const std::map<std::string, std::set<std::string>> kKindKeys = {
    {"bounds", {"n", "p", "F_size", "log2_F", "eps", "m", "S_size", "comm"}},
    {"count", {"n"}},
    {"qrac-optimize", {"n", "m", "seeds", "iterations", "F", "reweight_iterations", "instance_out"}},
    {"qhe-audit", {"scheme", "n", "delta"}},
    {"reduce", {"scheme", "n", "delta", "base"}},
    {"trace-lemma", {"code", "n", "instance"}},
};

double get_number(const Scenario& s, const std::string& key) {
  if (!s.params.contains(key)) throw ScenarioError(s.id + "." + key, "missing required key");
  if (!s.params.at(key).is_number())
    throw ScenarioError(s.id + "." + key, "expected a number");
  return s.params.at(key).get<double>();
}

std::string get_string(const Scenario& s, const std::string& key) {
  if (!s.params.contains(key)) throw ScenarioError(s.id + "." + key, "missing required key");
  if (!s.params.at(key).is_string())
    throw ScenarioError(s.id + "." + key, "expected a string");
  return s.params.at(key).get<std::string>();
}

int get_int(const Scenario& s, const std::string& key) {
  double v = get_number(s, key);
  if (v != static_cast<double>(static_cast<long>(v)))
    throw ScenarioError(s.id + "." + key, "expected an integer");
  return static_cast<int>(v);
}

bool has(const Scenario& s, const std::string& key) { return s.params.contains(key); }

ReportRow info_row(const Scenario& s, const std::string& quantity, double value) {
  return {s.id, quantity, value, std::nullopt, std::nullopt, true, bounds::to_string(s.mode)};
}

// measured value checked against a lower bound
ReportRow bound_row(const Scenario& s, const std::string& quantity, double measured, double bound) {
  double slack = measured - bound;
  return {s.id,  quantity, measured, bound, slack, slack >= -tol::kSlack,
          bounds::to_string(s.mode)};
}

// nonnegativity check (value is itself a slack or margin)
ReportRow margin_row(const Scenario& s, const std::string& quantity, double value) {
  return bound_row(s, quantity, value, 0.0);
}

std::vector<ReportRow> run_bounds(const Scenario& s) {
  std::vector<ReportRow> rows;
  int n = get_int(s, "n");
  if (has(s, "p")) {
    double b = bounds::nayak_bound(n, get_number(s, "p"));
    if (has(s, "m"))
      rows.push_back(bound_row(s, "nayak_bound_qubits", get_number(s, "m"), b));
    else
      rows.push_back(info_row(s, "nayak_bound", b));
    if (has(s, "F_size")) {
      double sb = bounds::subset_bound(static_cast<std::uint64_t>(get_number(s, "F_size")), n,
                                       get_number(s, "p"));
      if (has(s, "m"))
        rows.push_back(bound_row(s, "subset_bound_qubits", get_number(s, "m"), sb));
      else
        rows.push_back(info_row(s, "subset_bound", sb));
    }
  }
  if (has(s, "eps") && (has(s, "F_size") || has(s, "log2_F"))) {
    double log2_f = has(s, "log2_F") ? get_number(s, "log2_F")
                                     : std::log2(get_number(s, "F_size"));
    double b = bounds::qhe_comm_bound_log2(log2_f, n, get_number(s, "eps"), s.mode);
    if (has(s, "comm"))
      rows.push_back(bound_row(s, "qhe_comm_bound_qubits", get_number(s, "comm"), b));
    else
      rows.push_back(info_row(s, "qhe_comm_bound", b));
  }
  if (has(s, "S_size")) {
    double b = bounds::perfect_security_bound(static_cast<std::uint64_t>(get_number(s, "S_size")));
    if (has(s, "comm"))
      rows.push_back(bound_row(s, "perfect_security_bound_qubits", get_number(s, "comm"), b));
    else
      rows.push_back(info_row(s, "perfect_security_bound", b));
  }
  if (rows.empty()) throw ScenarioError(s.id, "bounds scenario selects no bound (give p/eps/S_size)");
  return rows;
}

std::vector<ReportRow> run_count(const Scenario& s) {
  bounds::ReversibleCount c = bounds::reversible_count_bits(get_int(s, "n"));
  return {info_row(s, "reversible_count_exact_bits", c.exact_bits),
          info_row(s, "reversible_count_asymptotic_bits", c.asymptotic_bits),
          info_row(s, "reversible_count_ratio", c.exact_bits / c.asymptotic_bits)};
}

std::vector<std::string> all_strings(int n) {
  std::vector<std::string> out;
  for (long v = 0; v < (1L << n); ++v) {
    std::string str;
    for (int i = n - 1; i >= 0; --i) str.push_back('0' + ((v >> i) & 1));
    out.push_back(str);
  }
  return out;
}

std::vector<ReportRow> run_qrac_optimize(const Scenario& s) {
  int n = get_int(s, "n");
  int m = get_int(s, "m");
  int seeds = has(s, "seeds") ? get_int(s, "seeds") : 20;
  int iterations = has(s, "iterations") ? get_int(s, "iterations") : 50;
  int reweight = has(s, "reweight_iterations") ? get_int(s, "reweight_iterations") : 0;
  std::vector<std::string> strings =
      has(s, "F") ? s.params.at("F").get<std::vector<std::string>>() : all_strings(n);
  if (seeds < 1) throw ScenarioError(s.id + ".seeds", "need at least one seed");

  auto start = std::chrono::steady_clock::now();
  double best_avg = -1.0, best_worst = -1.0;
  std::optional<qrac::QracInstance> best;
  int completed = 0;
  bool budget_hit = false;
  for (int i = 0; i < seeds; ++i) {
    if (s.budget_seconds > 0.0) {
      double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (elapsed > s.budget_seconds) {
        budget_hit = true;
        break;
      }
    }
    qrac::SeesawResult r = qrac::seesaw_optimize(n, m, strings, iterations, s.seed + i, reweight);
    qrac::SuccessMatrix succ = qrac::success_matrix(r.instance);
    if (succ.average > best_avg) {
      best_avg = succ.average;
      best_worst = succ.worst;
      best.emplace(std::move(r.instance));
    }
    ++completed;
  }
  if (best && has(s, "instance_out")) {
    std::string path = get_string(s, "instance_out");
    std::string tmp = path + ".tmp";
    std::ofstream f(tmp, std::ios::binary);
    f << qrac::to_json(*best).dump(2) << "\n";
    f.close();
    if (!f || std::rename(tmp.c_str(), path.c_str()) != 0)
      throw std::runtime_error("qrac-optimize: failed to write instance to " + path);
  }

  std::vector<ReportRow> rows;
  rows.push_back(info_row(s, "seeds_completed", completed));
  if (completed > 0) {
    rows.push_back(info_row(s, "best_average_success", best_avg));
    rows.push_back(info_row(s, "best_worst_success", best_worst));
    if (best_worst >= 0.5) {
      double nayak_slack = m - bounds::subset_bound(strings.size(), n, best_worst);
      rows.push_back(margin_row(s, "nayak_slack_qubits", nayak_slack));
    }
    double h_target = 1.0 - static_cast<double>(m) / n;
    if (h_target > 0.0 && h_target <= 1.0) {
      double cap = bounds::binary_entropy_inverse_upper(h_target);
      rows.push_back(margin_row(s, "entropy_cap_margin", cap - best_worst));
    }
  }
  if (budget_hit) {
    ReportRow flag = info_row(s, "runtime_budget_exceeded", 1.0);
    flag.pass = false;  // partial results
    rows.push_back(flag);
  }
  return rows;
}

std::vector<ReportRow> run_qhe_audit(const Scenario& s) {
  qhe::QheScheme scheme = qhe::make_scheme(get_string(s, "scheme"), get_int(s, "n"),
                                           has(s, "delta") ? get_number(s, "delta") : 0.0);
  qhe::SecurityReport sec = qhe::audit_security(scheme);
  qhe::CorrectnessReport corr = qhe::check_correctness(scheme);
  std::vector<ReportRow> rows;
  rows.push_back(info_row(s, "epsilon", sec.epsilon));
  ReportRow c = info_row(s, "perfect_correctness", corr.pass ? 1.0 : 0.0);
  c.pass = corr.pass;
  rows.push_back(c);
  rows.push_back(info_row(s, "boolean_family_size",
                          static_cast<double>(qhe::boolean_family(scheme).size())));
  return rows;
}

std::vector<ReportRow> run_reduce(const Scenario& s) {
  int n = get_int(s, "n");
  qhe::QheScheme scheme = qhe::make_scheme(get_string(s, "scheme"), n,
                                           has(s, "delta") ? get_number(s, "delta") : 0.0);
  std::string base = has(s, "base") ? s.params.at("base").get<std::string>() : std::string(n, '0');
  reduction::ReductionResult r = reduction::extract_qrac(scheme, base);
  bounds::BoundReport report = reduction::verify_reduction(r, s.mode);

  std::vector<ReportRow> rows;
  rows.push_back(bound_row(s, "worst_success", r.worst_success, 1.0 - r.epsilon));
  rows.push_back(info_row(s, "epsilon", r.epsilon));
  rows.push_back(info_row(s, "F_size", static_cast<double>(r.truth_tables.size())));
  rows.push_back(bound_row(s, "communication_qubits", report.measured, report.bound));
  rows.push_back(info_row(s, "max_chain_distance", r.max_chain_distance));
  if (!s.chain_out.empty()) {
    std::string tmp = s.chain_out + ".tmp";
    std::ofstream f(tmp, std::ios::binary);
    f << reduction::chain_csv(r);
    f.close();
    if (!f || std::rename(tmp.c_str(), s.chain_out.c_str()) != 0)
      throw std::runtime_error("reduce: failed to write chain table to " + s.chain_out);
  }
  return rows;
}

std::vector<ReportRow> run_trace_lemma(const Scenario& s) {
  std::optional<qrac::QracInstance> instance;
  if (!has(s, "instance") && !has(s, "code"))
    throw ScenarioError(s.id, "trace-lemma needs either code or instance");
  if (has(s, "instance")) {
    std::ifstream f(get_string(s, "instance"));
    if (!f) throw ScenarioError(s.id + ".instance", "cannot open instance file");
    nlohmann::json j;
    f >> j;
    instance.emplace(qrac::qrac_from_json(j));
  } else {
    std::string code = get_string(s, "code");
    if (code == "known-2to1")
      instance.emplace(qrac::known_qrac_2to1());
    else if (code == "known-3to1")
      instance.emplace(qrac::known_qrac_3to1());
    else if (code == "computational-basis")
      instance.emplace(qrac::computational_basis_code(get_int(s, "n")));
    else
      throw ScenarioError(s.id + ".code",
                          "unknown code '" + code + "' (known-2to1|known-3to1|computational-basis)");
  }
  qrac::TraceReport report = qrac::trace_lemma(*instance);
  std::vector<ReportRow> rows;
  rows.push_back(info_row(s, "p_worst", report.p_worst));
  rows.push_back(info_row(s, "in_fano_regime", report.in_regime ? 1.0 : 0.0));
  if (!report.in_regime) return rows;  // no pass/fail outside the regime
  rows.push_back(margin_row(s, "min_holevo_slack", report.min_holevo_slack));
  rows.push_back(margin_row(s, "min_fano_slack", report.min_fano_slack));
  rows.push_back(margin_row(s, "expand_slack", report.expand_slack));
  rows.push_back(bound_row(s, "entropy_vs_bound", report.s_sigma, report.entropy_bound));
  rows.push_back(bound_row(s, "final_bound_qubits", static_cast<double>(instance->m()),
                           report.entropy_bound));
  return rows;
}

}  // namespace

Format format_from_string(const std::string& s) {
  if (s == "csv") return Format::kCsv;
  if (s == "json") return Format::kJson;
  throw std::invalid_argument("unknown format '" + s + "' (expected csv|json)");
}

Scenario scenario_from_json(const nlohmann::json& j, const std::string& field_path) {
  if (!j.is_object()) throw ScenarioError(field_path, "scenario must be an object");
  Scenario s;
  if (!j.contains("kind")) throw ScenarioError(field_path + ".kind", "missing required key");
  s.kind = j.at("kind").get<std::string>();
  auto kind_it = kKindKeys.find(s.kind);
  if (kind_it == kKindKeys.end())
    throw ScenarioError(field_path + ".kind", "unknown kind '" + s.kind + "'");
  s.id = j.value("id", s.kind);
  for (const auto& [key, value] : j.items()) {
    if (kCommonKeys.count(key)) continue;
    if (!kind_it->second.count(key))
      throw ScenarioError(field_path + "." + key, "unknown key for kind '" + s.kind + "'");
    s.params[key] = value;
  }
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("mode")) s.mode = bounds::bound_mode_from_string(j.at("mode").get<std::string>());
  if (j.contains("out")) s.out = j.at("out").get<std::string>();
  if (j.contains("format")) s.format = format_from_string(j.at("format").get<std::string>());
  if (j.contains("budget_seconds")) s.budget_seconds = j.at("budget_seconds").get<double>();
  if (j.contains("chain_out")) {
    if (s.kind != "reduce") throw ScenarioError(field_path + ".chain_out", "only valid for reduce");
    s.chain_out = j.at("chain_out").get<std::string>();
  }
  return s;
}

std::vector<Scenario> load_scenarios(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open scenario file " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("scenario file " + path + ": " + e.what());
  }
  nlohmann::json list;
  if (j.is_array())
    list = j;
  else if (j.is_object() && j.contains("scenarios"))
    list = j.at("scenarios");
  else
    list = nlohmann::json::array({j});
  std::vector<Scenario> out;
  for (std::size_t i = 0; i < list.size(); ++i)
    out.push_back(scenario_from_json(list[i], "scenarios[" + std::to_string(i) + "]"));
  return out;
}

std::vector<ReportRow> run_scenario(const Scenario& s) {
  std::vector<ReportRow> rows;
  if (s.kind == "bounds")
    rows = run_bounds(s);
  else if (s.kind == "count")
    rows = run_count(s);
  else if (s.kind == "qrac-optimize")
    rows = run_qrac_optimize(s);
  else if (s.kind == "qhe-audit")
    rows = run_qhe_audit(s);
  else if (s.kind == "reduce")
    rows = run_reduce(s);
  else if (s.kind == "trace-lemma")
    rows = run_trace_lemma(s);
  else
    throw ScenarioError(s.id + ".kind", "unknown kind '" + s.kind + "'");
  if (!s.out.empty()) emit_report(rows, s.format, s.out);
  return rows;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string render_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "scenario_id,quantity,value,bound,slack,pass,mode\n";
  for (const auto& r : rows) {
    out << r.scenario_id << "," << r.quantity << "," << format_real(r.value) << ",";
    if (r.bound) out << format_real(*r.bound);
    out << ",";
    if (r.slack) out << format_real(*r.slack);
    out << "," << (r.pass ? "true" : "false") << "," << r.mode << "\n";
  }
  return out.str();
}

nlohmann::json rows_to_json(const std::vector<ReportRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row{{"scenario_id", r.scenario_id},
                       {"quantity", r.quantity},
                       {"value", r.value},
                       {"pass", r.pass},
                       {"mode", r.mode}};
    if (r.bound) row["bound"] = *r.bound;
    if (r.slack) row["slack"] = *r.slack;
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<ReportRow> rows_from_json(const nlohmann::json& j) {
  std::vector<ReportRow> rows;
  for (const auto& row : j) {
    ReportRow r;
    r.scenario_id = row.at("scenario_id").get<std::string>();
    r.quantity = row.at("quantity").get<std::string>();
    r.value = row.at("value").get<double>();
    if (row.contains("bound")) r.bound = row.at("bound").get<double>();
    if (row.contains("slack")) r.slack = row.at("slack").get<double>();
    r.pass = row.at("pass").get<bool>();
    r.mode = row.at("mode").get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit_report(const std::vector<ReportRow>& rows, Format format, const std::string& path) {
  if (rows.empty()) throw std::runtime_error("emit_report: no rows");
  std::string payload =
      format == Format::kCsv ? render_csv(rows) : rows_to_json(rows).dump(2) + "\n";
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw std::runtime_error("emit_report: cannot open " + tmp);
    f << payload;
    if (!f) throw std::runtime_error("emit_report: write to " + tmp + " failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("emit_report: cannot move report into place at " + path);
}

bool all_pass(const std::vector<ReportRow>& rows) {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

}  // namespace qhelim::cli
