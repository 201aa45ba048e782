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
#include <map>
#include <string>
#include <vector>

#include "qhelim/qmat.hpp"

namespace qhelim::bounds {

// "paper" evaluates H(eps) exactly as printed in the bound formulas;
// "rigorous" substitutes 1 for H(eps) when eps > 1/2, where the Fano step
// that produced the formula is outside its validity envelope (H is not
// monotone, so bounding a failure probability by eps > 1/2 does not bound
// its entropy by H(eps)).
enum class BoundMode { kPaper, kRigorous };

std::string to_string(BoundMode mode);
BoundMode bound_mode_from_string(const std::string& s);

// Binary entropy in bits; inputs within 1e-12 outside [0,1] are clamped,
// anything further out throws. H(0) = H(1) = 0 exactly.
double binary_entropy(double p);

// Inverse of binary_entropy on the decreasing branch [1/2, 1]; bisection.
double binary_entropy_inverse_upper(double h);

// Shannon entropy in bits of a (sub)normalized nonnegative vector.
double shannon_entropy(const std::vector<double>& p);

double von_neumann_entropy(const qmat::DensityMatrix& rho);

// Finite ensemble {p_i, rho_i}; probabilities must sum to 1.
class Ensemble {
 public:
  Ensemble(std::vector<qmat::DensityMatrix> states, std::vector<double> probabilities);

  const std::vector<qmat::DensityMatrix>& states() const { return states_; }
  const std::vector<double>& probabilities() const { return probs_; }
  qmat::DensityMatrix average() const;

 private:
  std::vector<qmat::DensityMatrix> states_;
  std::vector<double> probs_;
};

// chi = S(sum p_i rho_i) - sum p_i S(rho_i)
double holevo_chi(const Ensemble& e);

// I(X:Y) of the classical joint distribution induced by measuring each
// ensemble member with the POVM.
double mutual_information_cq(const Ensemble& e, const qmat::Povm& m);

// Minimum qubit count m >= n(1 - H(p)), floored at 0.
double nayak_bound(int n, double p);

// Subset generalization m >= log2|F| - n H(p), floored at 0; equals
// nayak_bound when F_size = 2^n.
double subset_bound(std::uint64_t f_size, int n, double p);

// Communication lower bound log2|F| - 2^n H(eps) for a scheme evaluating
// |F| Boolean functions on n bits under eps trace-distance security;
// floored at 0.
double qhe_comm_bound(std::uint64_t f_size, int n, double eps, BoundMode mode);
double qhe_comm_bound_log2(double log2_f, int n, double eps, BoundMode mode);

// Evaluated-ciphertext size bound log2|S| for perfectly secure schemes
// implementing |S| unitary permissible functions.
double perfect_security_bound(std::uint64_t s_size);

struct ReversibleCount {
  double exact_bits;       // log2((2^n)!) via log-gamma
  double asymptotic_bits;  // (n - log2 e) 2^n
};
ReversibleCount reversible_count_bits(int n);

// Fano lower bound H(q) - H(p_err) on the mutual information of a binary
// source with prior q read through a channel with error probability p_err.
double fano_gap(double q, double p_err);

struct BoundReport {
  std::string name;
  std::map<std::string, double> params;
  double bound = 0.0;
  double measured = 0.0;
  BoundMode mode = BoundMode::kPaper;

  double slack() const { return measured - bound; }
  bool pass() const { return slack() >= -tol::kSlack; }
};

}  // namespace qhelim::bounds
