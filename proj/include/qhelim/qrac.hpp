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
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qhelim/bounds.hpp"
#include "qhelim/qmat.hpp"

namespace qhelim::qrac {

// Largest encoder register the seesaw optimizer accepts, in qubits.
inline constexpr int kMaxSeesawQubits = 4;

// An (F, n, m, p) random access code: a subset F of length-n bitstrings,
// an encoder table x -> rho_x on m qubits, and one binary POVM per bit
// position. Bit 1 of a string is its leftmost character.
class QracInstance {
 public:
  QracInstance(int n, int m, std::vector<std::string> strings,
               std::vector<qmat::DensityMatrix> encoder, std::vector<qmat::Povm> decoders);

  int n() const { return n_; }
  int m() const { return m_; }
  const std::vector<std::string>& strings() const { return strings_; }
  const std::vector<qmat::DensityMatrix>& encoder() const { return encoder_; }
  const std::vector<qmat::Povm>& decoders() const { return decoders_; }

 private:
  int n_;
  int m_;
  std::vector<std::string> strings_;
  std::vector<qmat::DensityMatrix> encoder_;
  std::vector<qmat::Povm> decoders_;
};

struct SuccessMatrix {
  Eigen::MatrixXd table;  // |F| x n, entry (x, i) = Tr(M_i^{x_i} rho_x)
  double worst = 0.0;
  double average = 0.0;
};

SuccessMatrix success_matrix(const QracInstance& q);

// The 2->1 code: four single-qubit pure states at Bloch angles +-45, +-135
// degrees in the X-Z plane, decoded in the X and Z bases. Worst-case
// success 1/2 + 1/(2 sqrt 2).
QracInstance known_qrac_2to1();

// The 3->1 code: Bloch vectors (+-1,+-1,+-1)/sqrt(3), decoded in the X, Y
// and Z bases. Worst-case success 1/2 + 1/(2 sqrt 3).
QracInstance known_qrac_3to1();

// m = n code storing each string as a computational basis state.
QracInstance computational_basis_code(int n);

// Optimal equal-prior two-state discrimination; the success probability is
// 1/2 + T(s0, s1)/2 (Helstrom).
qmat::Povm helstrom_povm(const qmat::DensityMatrix& s0, const qmat::DensityMatrix& s1);

// Per-position discrimination of the two bit-value mixtures, with priors
// |F_b|/|F|; positions where every string agrees get the trivial {I, 0}
// POVM. Exact maximizer of the average success for fixed encoders.
std::vector<qmat::Povm> optimal_decoders(const std::vector<qmat::DensityMatrix>& encoder,
                                         const std::vector<std::string>& strings);

struct SeesawResult {
  QracInstance instance;
  std::vector<double> average_history;  // one entry per iteration, nondecreasing
  std::vector<double> worst_history;
};

// Alternating optimization: decoders from optimal_decoders, encoder states
// from the top eigenvector of sum_i M_i^{x_i}. Deterministic for a fixed
// seed. reweight_iterations > 0 appends passes that upweight the worst
// (x, i) pairs; those optimize a weighted objective and are excluded from
// the monotonicity guarantee.
SeesawResult seesaw_optimize(int n, int m, std::vector<std::string> strings, int iterations,
                             std::uint64_t seed, int reweight_iterations = 0,
                             double reweight_beta = 8.0);

struct PrefixRecord {
  std::string prefix;
  int count = 0;        // |F_x|
  int count0 = 0;       // |F_x0|
  double weight = 0.0;  // |F_x| / |F|
  double w0 = 0.0;      // |F_x0| / |F_x|
  double entropy_mix = 0.0;   // S(sigma_x)
  double entropy0 = 0.0;      // S(sigma_x0)
  double entropy1 = 0.0;      // S(sigma_x1)
  double mutual_info = 0.0;   // I(X^x : Y^x), Y^x from the decoder at |x|+1
  double p_err = 0.0;         // measured conditional error of that decoder
  double holevo_slack = 0.0;  // S(sigma_x) - w0 S0 - w1 S1 - I
  double fano_slack = 0.0;    // I - (H(w0) - H(p_err))
};

struct TraceReport {
  bool in_regime = false;  // worst-case success >= 1/2
  double p_worst = 0.0;
  double s_sigma = 0.0;   // S of the uniform mixture over F
  double log2_f = 0.0;
  double entropy_bound = 0.0;  // log2|F| - n H(p_worst)
  std::vector<PrefixRecord> records;
  double avg_singleton_entropy = 0.0;
  double expand_slack = 0.0;   // S(sigma) - avg singletons - sum w I
  double entropy_slack = 0.0;  // S(sigma) - entropy_bound
  double final_slack = 0.0;    // m - entropy_bound
  double min_holevo_slack = 0.0;
  double min_fano_slack = 0.0;
  bool pass = false;
};

// Numerically verify every inequality in the prefix-recursion proof of the
// subset bound on a concrete instance: the Holevo step, the Fano step, and
// the aggregate m >= S(sigma) >= log2|F| - n H(p_worst). Instances with
// worst-case success below 1/2 are outside the Fano regime and come back
// with in_regime = false and no pass/fail verdict.
TraceReport trace_lemma(const QracInstance& q);

nlohmann::json to_json(const QracInstance& q);
QracInstance qrac_from_json(const nlohmann::json& j);

}  // namespace qhelim::qrac
