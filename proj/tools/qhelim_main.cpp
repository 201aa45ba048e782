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

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qhelim/scenario.hpp"

namespace {

using qhelim::cli::Scenario;

struct GlobalFlags {
  std::string out;
  std::string format = "csv";
  std::string mode = "paper";
  std::uint64_t seed = 0;
};

void finish(std::vector<qhelim::cli::ReportRow>& rows, const GlobalFlags& g) {
  qhelim::cli::Format fmt = qhelim::cli::format_from_string(g.format);
  if (g.out.empty()) {
    if (fmt == qhelim::cli::Format::kCsv)
      std::cout << qhelim::cli::render_csv(rows);
    else
      std::cout << qhelim::cli::rows_to_json(rows).dump(2) << "\n";
  } else {
    qhelim::cli::emit_report(rows, fmt, g.out);
  }
  std::exit(qhelim::cli::all_pass(rows) ? 0 : 1);
}

Scenario base_scenario(const GlobalFlags& g, const std::string& kind) {
  Scenario s;
  s.kind = kind;
  s.id = kind;
  s.seed = g.seed;
  s.mode = qhelim::bounds::bound_mode_from_string(g.mode);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qhelim: desk-scale verification of quantum random access code and "
               "homomorphic-encryption communication bounds"};
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--out", g.out, "write the report to this path instead of stdout");
  app.add_option("--format", g.format, "report format: csv|json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--mode", g.mode, "bound mode: paper|rigorous")->check(CLI::IsMember({"paper", "rigorous"}));
  app.add_option("--seed", g.seed, "64-bit seed for randomized scenarios");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "evaluate bound formulas, optionally against measured values");
  double p = 0, eps = 0, m_measured = 0, comm = 0, log2f = 0;
  std::uint64_t f_size = 0, s_size = 0;
  int n = 0;
  bounds_cmd->add_option("--n", n, "bit count")->required();
  auto* opt_p = bounds_cmd->add_option("--p", p, "recovery probability");
  auto* opt_fsize = bounds_cmd->add_option("--F-size", f_size, "|F|");
  auto* opt_log2f = bounds_cmd->add_option("--log2-F", log2f, "log2 |F| (for large families)");
  auto* opt_eps = bounds_cmd->add_option("--eps", eps, "trace-distance security parameter");
  auto* opt_m = bounds_cmd->add_option("--m", m_measured, "measured qubit count to check");
  auto* opt_ssize = bounds_cmd->add_option("--S-size", s_size, "|S| for the perfect-security bound");
  auto* opt_comm = bounds_cmd->add_option("--comm", comm, "measured communication qubits to check");

  // count
  auto* count_cmd = app.add_subcommand("count", "bit-size of the reversible-function class");
  int count_n = 0;
  count_cmd->add_option("--n", count_n, "bit count (1..16)")->required();

  // qrac-optimize
  auto* opt_cmd = app.add_subcommand("qrac-optimize", "seesaw search for random access codes");
  int qn = 0, qm = 0, seeds = 20, iterations = 50, reweight = 0;
  std::vector<std::string> f_strings;
  double budget = 0.0;
  opt_cmd->add_option("--n", qn, "bit count")->required();
  opt_cmd->add_option("--m", qm, "qubit count")->required();
  opt_cmd->add_option("--seeds", seeds, "number of seeded restarts");
  opt_cmd->add_option("--iterations", iterations, "seesaw iterations per restart");
  opt_cmd->add_option("--reweight", reweight, "extra worst-pair reweighting iterations");
  opt_cmd->add_option("--F", f_strings, "explicit subset of strings (default: all)");
  opt_cmd->add_option("--budget-seconds", budget, "runtime budget; partial results are flagged");
  std::string instance_out;
  opt_cmd->add_option("--instance-out", instance_out, "write the best instance (JSON) here");

  // qhe-audit
  auto* audit_cmd = app.add_subcommand("qhe-audit", "correctness and trace-distance security audit");
  std::string scheme;
  int an = 0;
  double delta = 0.0;
  audit_cmd->add_option("--scheme", scheme, "xor-otp|biased-pad|qotp-pauli|plaintext")->required();
  audit_cmd->add_option("--n", an, "plaintext bits")->required();
  audit_cmd->add_option("--delta", delta, "key bias (biased-pad)");

  // reduce
  auto* reduce_cmd = app.add_subcommand("reduce", "extract the random access code and check the bound");
  std::string rscheme, rbase, chain_out;
  int rn = 0;
  double rdelta = 0.0;
  reduce_cmd->add_option("--scheme", rscheme, "xor-otp|biased-pad|qotp-pauli|plaintext")->required();
  reduce_cmd->add_option("--n", rn, "plaintext bits")->required();
  reduce_cmd->add_option("--delta", rdelta, "key bias (biased-pad)");
  reduce_cmd->add_option("--base", rbase, "base plaintext (default all zeros)");
  reduce_cmd->add_option("--chain-out", chain_out, "write the approximation-chain table (CSV) here");

  // trace-lemma
  auto* trace_cmd = app.add_subcommand("trace-lemma", "verify the prefix-recursion inequalities on a code");
  std::string code, instance_path;
  int tn = 0;
  trace_cmd->add_option("--code", code, "known-2to1|known-3to1|computational-basis");
  trace_cmd->add_option("--n", tn, "bit count (computational-basis)");
  trace_cmd->add_option("--instance", instance_path, "JSON instance file to trace instead");

  // run
  auto* run_cmd = app.add_subcommand("run", "run every scenario in a JSON file");
  std::string scenario_file;
  run_cmd->add_option("file", scenario_file, "scenario file")->required();

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();
  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<qhelim::cli::ReportRow> rows;
    if (*bounds_cmd) {
      Scenario s = base_scenario(g, "bounds");
      s.params["n"] = n;
      if (*opt_p) s.params["p"] = p;
      if (*opt_fsize) s.params["F_size"] = f_size;
      if (*opt_log2f) s.params["log2_F"] = log2f;
      if (*opt_eps) s.params["eps"] = eps;
      if (*opt_m) s.params["m"] = m_measured;
      if (*opt_ssize) s.params["S_size"] = s_size;
      if (*opt_comm) s.params["comm"] = comm;
      rows = qhelim::cli::run_scenario(s);
    } else if (*count_cmd) {
      Scenario s = base_scenario(g, "count");
      s.params["n"] = count_n;
      rows = qhelim::cli::run_scenario(s);
    } else if (*opt_cmd) {
      Scenario s = base_scenario(g, "qrac-optimize");
      s.params["n"] = qn;
      s.params["m"] = qm;
      s.params["seeds"] = seeds;
      s.params["iterations"] = iterations;
      s.params["reweight_iterations"] = reweight;
      if (!f_strings.empty()) s.params["F"] = f_strings;
      if (!instance_out.empty()) s.params["instance_out"] = instance_out;
      s.budget_seconds = budget;
      rows = qhelim::cli::run_scenario(s);
    } else if (*audit_cmd) {
      Scenario s = base_scenario(g, "qhe-audit");
      s.params["scheme"] = scheme;
      s.params["n"] = an;
      s.params["delta"] = delta;
      rows = qhelim::cli::run_scenario(s);
    } else if (*reduce_cmd) {
      Scenario s = base_scenario(g, "reduce");
      s.params["scheme"] = rscheme;
      s.params["n"] = rn;
      s.params["delta"] = rdelta;
      if (!rbase.empty()) s.params["base"] = rbase;
      s.chain_out = chain_out;
      rows = qhelim::cli::run_scenario(s);
    } else if (*trace_cmd) {
      Scenario s = base_scenario(g, "trace-lemma");
      if (!instance_path.empty())
        s.params["instance"] = instance_path;
      else if (!code.empty())
        s.params["code"] = code;
      else
        throw qhelim::cli::ScenarioError("trace-lemma", "give --code or --instance");
      if (tn > 0) s.params["n"] = tn;
      rows = qhelim::cli::run_scenario(s);
    } else if (*run_cmd) {
      for (const Scenario& s : qhelim::cli::load_scenarios(scenario_file)) {
        std::vector<qhelim::cli::ReportRow> scenario_rows = qhelim::cli::run_scenario(s);
        rows.insert(rows.end(), scenario_rows.begin(), scenario_rows.end());
      }
    }
    finish(rows, g);
  } catch (const qhelim::cli::ScenarioError& e) {
    std::cerr << "config error at " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
