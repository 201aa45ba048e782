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

// Acceptance suite. Each criterion prints one PASS/FAIL line with its
// measured values and wall time, and the binary exits nonzero if any
// selected criterion fails. Run with no arguments for all nine, or pass
// criterion numbers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "qhelim/qhe.hpp"
#include "qhelim/qrac.hpp"
#include "qhelim/reduction.hpp"
#include "qhelim/scenario.hpp"

using namespace qhelim;
using bounds::BoundMode;

namespace {

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

std::vector<std::string> all_strings(int n) {
  std::vector<std::string> out;
  for (long v = 0; v < (1L << n); ++v) {
    std::string s;
    for (int i = n - 1; i >= 0; --i) s.push_back('0' + ((v >> i) & 1));
    out.push_back(s);
  }
  return out;
}

char buf[512];

bool criterion1(std::string& detail) {
  qrac::SuccessMatrix s2 = qrac::success_matrix(qrac::known_qrac_2to1());
  qrac::SuccessMatrix s3 = qrac::success_matrix(qrac::known_qrac_3to1());
  double expect2 = 0.5 + 0.5 / std::sqrt(2.0);
  double expect3 = 0.5 + 0.5 / std::sqrt(3.0);
  double slack2 = 1.0 - bounds::nayak_bound(2, s2.worst);
  double slack3 = 1.0 - bounds::nayak_bound(3, s3.worst);
  std::snprintf(buf, sizeof(buf), "p2=%.12f p3=%.12f nayak slack2=%.4f slack3=%.4f", s2.worst,
                s3.worst, slack2, slack3);
  detail = buf;
  return std::abs(s2.worst - expect2) <= 1e-9 && std::abs(s3.worst - expect3) <= 1e-9 &&
         slack2 > 0.0 && slack3 > 0.0;
}

bool criterion2(std::string& detail) {
  std::vector<qrac::QracInstance> codes;
  codes.push_back(qrac::known_qrac_2to1());
  codes.push_back(qrac::known_qrac_3to1());
  codes.push_back(qrac::computational_basis_code(3));
  std::uint64_t seed = 0;
  while (codes.size() < 23 && seed < 200) {
    qrac::SeesawResult r = qrac::seesaw_optimize(2, 1, all_strings(2), 40, seed++);
    if (qrac::success_matrix(r.instance).worst >= 0.5) codes.push_back(std::move(r.instance));
  }
  if (codes.size() < 23) {
    detail = "could not produce 20 in-regime seesaw codes";
    return false;
  }
  double min_holevo = 1.0, min_fano = 1.0, min_final = 1.0;
  for (const auto& code : codes) {
    qrac::TraceReport report = qrac::trace_lemma(code);
    if (!report.in_regime || !report.pass) {
      detail = "tracer failed on a code with p >= 1/2";
      return false;
    }
    min_holevo = std::min(min_holevo, report.min_holevo_slack);
    min_fano = std::min(min_fano, report.min_fano_slack);
    min_final = std::min(min_final, report.final_slack);
  }
  std::snprintf(buf, sizeof(buf),
                "23 codes; min holevo slack=%.3g min fano slack=%.3g min final slack=%.3g",
                min_holevo, min_fano, min_final);
  detail = buf;
  return min_holevo >= -1e-9 && min_fano >= -1e-9 && min_final >= -1e-9;
}

bool criterion3(std::string& detail) {
  double best = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    qrac::SeesawResult r = qrac::seesaw_optimize(2, 1, all_strings(2), 60, seed);
    best = std::max(best, qrac::success_matrix(r.instance).average);
  }
  double cap = bounds::binary_entropy_inverse_upper(0.5);
  std::snprintf(buf, sizeof(buf), "best=%.12f window=[0.8535, 0.8900] H-inverse cap=%.12f", best,
                cap);
  detail = buf;
  return best >= 0.8535 && best <= 0.8900 && best <= cap;
}

bool criterion4(std::string& detail) {
  double otp_eps = qhe::audit_security(qhe::make_xor_otp(2)).epsilon;
  double plain_eps = qhe::audit_security(qhe::make_plaintext(2)).epsilon;
  bool pads_ok = true;
  for (double delta : {0.1, 0.25, 0.5}) {
    double eps = qhe::audit_security(qhe::make_biased_pad(1, delta)).epsilon;
    pads_ok = pads_ok && std::abs(eps - 2.0 * delta) <= 1e-9;
  }
  bool correct = qhe::check_correctness(qhe::make_xor_otp(1)).pass &&
                 qhe::check_correctness(qhe::make_xor_otp(2)).pass &&
                 qhe::check_correctness(qhe::make_xor_otp(3)).pass &&
                 qhe::check_correctness(qhe::make_biased_pad(1, 0.25)).pass &&
                 qhe::check_correctness(qhe::make_biased_pad(2, 0.1)).pass &&
                 qhe::check_correctness(qhe::make_biased_pad(3, 0.25)).pass &&
                 qhe::check_correctness(qhe::make_qotp_pauli(1)).pass &&
                 qhe::check_correctness(qhe::make_qotp_pauli(2)).pass &&
                 qhe::check_correctness(qhe::make_plaintext(1)).pass &&
                 qhe::check_correctness(qhe::make_plaintext(2)).pass;
  std::snprintf(buf, sizeof(buf), "xor-otp eps=%.3g plaintext eps=%.12f pads(2*delta)=%s correctness=%s",
                otp_eps, plain_eps, pads_ok ? "ok" : "FAIL", correct ? "ok" : "FAIL");
  detail = buf;
  return otp_eps <= 1e-9 && std::abs(plain_eps - 1.0) <= 1e-9 && pads_ok && correct;
}

bool criterion5(std::string& detail) {
  reduction::ReductionResult otp = reduction::extract_qrac(qhe::make_xor_otp(2), "00");
  bool otp_ok = std::abs(otp.worst_success - 1.0) <= 1e-9 && otp.max_chain_distance <= 1e-9 &&
                reduction::verify_reduction(otp, BoundMode::kPaper).pass() &&
                reduction::verify_reduction(otp, BoundMode::kRigorous).pass();
  reduction::ReductionResult biased = reduction::extract_qrac(qhe::make_biased_pad(1, 0.25), "0");
  bool biased_ok = biased.worst_success >= 0.5 - 1e-9;
  std::snprintf(buf, sizeof(buf),
                "xor-otp worst=%.12f chain=%.3g bound[paper]=%s bound[rigorous]=%s; biased worst=%.12f",
                otp.worst_success, otp.max_chain_distance, otp_ok ? "pass" : "FAIL",
                reduction::verify_reduction(otp, BoundMode::kRigorous).pass() ? "pass" : "FAIL",
                biased.worst_success);
  detail = buf;
  return otp_ok && biased_ok;
}

bool criterion6(std::string& detail) {
  Rng rng(2026);
  double worst_gap = 1.0;
  for (int trial = 0; trial < 1000; ++trial) {
    int dim = 2 + 2 * static_cast<int>(rng.integer(2));
    int members = 2 + static_cast<int>(rng.integer(3));
    std::vector<qmat::DensityMatrix> states;
    std::vector<double> probs(members, 1.0 / members);
    for (int i = 0; i < members; ++i) {
      Mat g(dim, dim);
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) g(r, c) = Cplx(rng.gaussian(), rng.gaussian());
      Mat rho = g * g.adjoint();
      rho /= rho.trace();
      states.emplace_back(std::vector<int>{dim}, std::move(rho));
    }
    bounds::Ensemble e(std::move(states), std::move(probs));
    // random POVM with 2..4 outcomes
    int outcomes = 2 + static_cast<int>(rng.integer(3));
    std::vector<Mat> raw;
    Mat total = Mat::Zero(dim, dim);
    for (int i = 0; i < outcomes; ++i) {
      Mat g(dim, dim);
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) g(r, c) = Cplx(rng.gaussian(), rng.gaussian());
      raw.push_back(g * g.adjoint());
      total += raw.back();
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(total);
    Vec inv_sqrt(dim);
    for (int i = 0; i < dim; ++i) inv_sqrt(i) = 1.0 / std::sqrt(es.eigenvalues()(i));
    Mat w = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
    std::vector<Mat> effects;
    for (const Mat& a : raw) effects.push_back(w * a * w);
    qmat::Povm povm(std::move(effects), {dim});
    double gap = bounds::holevo_chi(e) - bounds::mutual_information_cq(e, povm);
    worst_gap = std::min(worst_gap, gap);
    if (gap < -1e-9) break;
  }

  double worst_helstrom = 0.0;
  Rng rng2(2027);
  for (int trial = 0; trial < 1000; ++trial) {
    int dim = 2 + 2 * static_cast<int>(rng2.integer(2));
    auto sample = [&]() {
      Mat g(dim, dim);
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) g(r, c) = Cplx(rng2.gaussian(), rng2.gaussian());
      Mat rho = g * g.adjoint();
      rho /= rho.trace();
      return qmat::DensityMatrix({dim}, std::move(rho));
    };
    qmat::DensityMatrix a = sample(), b = sample();
    qmat::Povm m = qrac::helstrom_povm(a, b);
    double success = 0.5 * (m.effects()[0] * a.matrix()).trace().real() +
                     0.5 * (m.effects()[1] * b.matrix()).trace().real();
    double defect = std::abs(success - (0.5 + 0.5 * qmat::trace_distance(a, b)));
    worst_helstrom = std::max(worst_helstrom, defect);
  }
  std::snprintf(buf, sizeof(buf), "1000 holevo pairs min(chi - I)=%.3g; 1000 helstrom max|defect|=%.3g",
                worst_gap, worst_helstrom);
  detail = buf;
  return worst_gap >= -1e-9 && worst_helstrom <= 1e-9;
}

bool criterion7(std::string& detail) {
  bounds::ReversibleCount n2 = bounds::reversible_count_bits(2);
  bool exact_ok = std::abs(n2.exact_bits - std::log2(24.0)) <= 1e-12;
  bool monotone = true;
  double prev = 1e300;
  for (int n = 4; n <= 12; ++n) {
    bounds::ReversibleCount c = bounds::reversible_count_bits(n);
    double ratio = c.exact_bits / c.asymptotic_bits;
    if (ratio >= prev || ratio <= 1.0) monotone = false;
    prev = ratio;
  }
  std::snprintf(buf, sizeof(buf), "log2(24)=%.12f (err %.2g); ratio decreasing toward 1 over n=4..12: %s",
                n2.exact_bits, std::abs(n2.exact_bits - std::log2(24.0)), monotone ? "yes" : "NO");
  detail = buf;
  return exact_ok && monotone;
}

bool criterion8(std::string& detail) {
  // As stated: with |F| = 2^(2^n) and eps(n) = 2^(-1.01 n), the correction
  // 2^n H(eps(n)) must strictly decrease over n = 1, 2, 3.
  double corr[3], rel[3];
  for (int n = 1; n <= 3; ++n) {
    double eps = std::pow(2.0, -1.01 * n);
    corr[n - 1] = std::pow(2.0, n) * bounds::binary_entropy(eps);
    rel[n - 1] = bounds::binary_entropy(eps);
  }
  bool strict_decrease = corr[0] > corr[1] && corr[1] > corr[2];
  std::snprintf(buf, sizeof(buf),
                "2^n*H(eps(n)) = %.9f, %.9f, %.9f (H(eps(n)) alone = %.6f, %.6f, %.6f decreasing)",
                corr[0], corr[1], corr[2], rel[0], rel[1], rel[2]);
  detail = buf;
  return strict_decrease;
}

bool criterion9(std::string& detail) {
  nlohmann::json spec = {{"id", "det"},   {"kind", "qrac-optimize"}, {"n", 2}, {"m", 1},
                         {"seeds", 5},    {"iterations", 30},        {"seed", 9001}};
  cli::Scenario s = cli::scenario_from_json(spec, "scenarios[0]");
  std::string a = cli::render_csv(cli::run_scenario(s));
  std::string b = cli::render_csv(cli::run_scenario(s));
  nlohmann::json reduce_spec = {{"id", "red"}, {"kind", "reduce"}, {"scheme", "biased-pad"},
                                {"n", 1},      {"delta", 0.25},    {"seed", 7}};
  cli::Scenario sr = cli::scenario_from_json(reduce_spec, "scenarios[0]");
  std::string c = cli::render_csv(cli::run_scenario(sr));
  std::string d = cli::render_csv(cli::run_scenario(sr));
  bool identical = (a == b) && (c == d) && !a.empty() && !c.empty();
  std::snprintf(buf, sizeof(buf), "qrac-optimize rerun identical=%s reduce rerun identical=%s",
                a == b ? "yes" : "NO", c == d ? "yes" : "NO");
  detail = buf;
  return identical;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria = {
      {1, "known-code anchors", 1.0, criterion1},
      {2, "lemma tracer on known, basis and seesaw codes", 60.0, criterion2},
      {3, "optimizer ceiling over 50 seeded runs at (n=2, m=1)", 120.0, criterion3},
      {4, "scheme security audits and exhaustive correctness", 30.0, criterion4},
      {5, "end-to-end extraction on xor-otp(2) and biased-pad(1, 0.25)", 60.0, criterion5},
      {6, "holevo and helstrom property sweep (1000 samples each)", 60.0, criterion6},
      {7, "reversible-count exact value and ratio decay", 1.0, criterion7},
      {8, "corollary regime scan: 2^n H(eps(n)) strictly decreasing", 1.0, criterion8},
      {9, "byte-identical reports on re-run with the same seed", 10.0, criterion9},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  bool all_ok = true;
  for (const auto& c : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    std::string detail;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_budget = elapsed < c.budget_seconds;
    std::printf("[%s] criterion %d: %s — %s (%.2fs < %.0fs: %s)\n", ok && in_budget ? "PASS" : "FAIL",
                c.id, c.name.c_str(), detail.c_str(), elapsed, c.budget_seconds,
                in_budget ? "ok" : "over budget");
    all_ok = all_ok && ok && in_budget;
  }
  return all_ok ? 0 : 1;
}
