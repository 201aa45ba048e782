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

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qhelim/qmat.hpp"

namespace qhelim::qhe {

// A permissible function: a reversible permutation of {0,1}^n together
// with the truth table of its first output wire. Truth tables are
// length-2^n bitstrings indexed MSB-first: bit i is f(x) for x = i written
// in n bits, leftmost bit first. Wire 1 is the most significant bit.
struct FunctionDescriptor {
  enum class Kind { kIdentity, kXorShift, kReversibleCircuit };

  Kind kind = Kind::kIdentity;
  int n = 0;
  std::vector<int> permutation;  // value table on {0,...,2^n-1}
  std::string truth_table;       // wire-1 restriction, length 2^n
  std::uint64_t shift = 0;       // populated for kXorShift

  static FunctionDescriptor identity(int n);
  static FunctionDescriptor xor_shift(int n, std::uint64_t a);
  static FunctionDescriptor reversible(int n, std::vector<int> perm);

  bool operator==(const FunctionDescriptor& other) const {
    return n == other.n && permutation == other.permutation;
  }
};

std::string kind_to_string(FunctionDescriptor::Kind kind);

// Symmetric-key homomorphic scheme on n-bit plaintexts, modeled as an
// encryption isometry M -> K ⊗ C, one evaluation channel C -> E per
// permissible function, and a single decryption channel K ⊗ E -> M (the
// same channel for every function). Classical key randomness is purified:
// the key register carries the coherent copy of the pad. There is no
// separate evaluation-key register; anything of that kind is part of C.
struct QheScheme {
  std::string name;
  int n = 0;
  int qubits_m = 0, qubits_k = 0, qubits_c = 0, qubits_e = 0;
  double delta = 0.0;  // key bias, nonzero only for biased-pad
  Mat enc;             // 2^(k+c) x 2^m isometry
  std::vector<FunctionDescriptor> permissible;
  std::vector<qmat::QuantumChannel> eval;  // aligned with permissible
  qmat::QuantumChannel dec;

  QheScheme(std::string name, int n, int qubits_k, int qubits_c, int qubits_e, Mat enc,
            std::vector<FunctionDescriptor> permissible, std::vector<qmat::QuantumChannel> eval,
            qmat::QuantumChannel dec);

  long dim_m() const { return 1L << qubits_m; }
  long dim_k() const { return 1L << qubits_k; }
  long dim_c() const { return 1L << qubits_c; }
  long dim_e() const { return 1L << qubits_e; }
};

// Encrypt a classical plaintext; the result is pure because the encryption
// is an isometry. Register order (key, ciphertext).
qmat::PureState encrypt(const QheScheme& s, const std::string& x_bits);

struct CorrectnessWitness {
  std::string x;
  std::size_t f_index = 0;
  double fidelity = 0.0;
};

struct CorrectnessReport {
  bool pass = false;
  std::optional<CorrectnessWitness> witness;
};

// Exhaustive perfect-correctness check: for every basis plaintext and every
// permissible function, decrypting the evaluated ciphertext must give the
// basis state of the permuted output with fidelity >= 1 - 1e-9.
CorrectnessReport check_correctness(const QheScheme& s);

struct SecurityReport {
  double epsilon = 0.0;  // max trace distance over classical plaintext pairs
  std::pair<std::string, std::string> argmax;
  std::vector<std::tuple<std::string, std::string, double>> pairs;
};

// Trace-distance security audit over classical plaintext pairs only: the
// reduced ciphertext states of every pair of basis plaintexts.
SecurityReport audit_security(const QheScheme& s);

// Classical one-time pad in the computational basis, key purified into K;
// permissible functions are all 2^n xor-shifts. Perfectly secure.
QheScheme make_xor_otp(int n);

// Same pad with per-bit key bias delta (P[k_i = 1] = 1/2 - delta). Still
// perfectly correct (the sampled key is stored exactly); security degrades
// to epsilon = 2 delta at n = 1.
QheScheme make_biased_pad(int n, double delta);

// Full quantum Pauli pad X^a Z^b. The 2n-qubit key needs a ciphertext
// register at least as large, so an n-qubit appended register (fixed to
// |0...0>) rides along with the padded state; permissible functions are the
// Pauli-X circuits (xor-shifts). n <= 2 under the dimension cap.
QheScheme make_qotp_pauli(int n);

// Identity encryption (trivial key), permissible functions are all (2^n)!
// reversible circuits; n <= 2. Maximally insecure: epsilon = 1.
QheScheme make_plaintext(int n);

// Factory by name: xor-otp | biased-pad | qotp-pauli | plaintext.
QheScheme make_scheme(const std::string& name, int n, double delta = 0.0);

// Distinct wire-1 truth tables over the permissible catalog; the |F_n| fed
// to the communication bounds.
std::vector<std::string> boolean_family(const QheScheme& s);

nlohmann::json descriptor_to_json(const FunctionDescriptor& f);
FunctionDescriptor descriptor_from_json(const nlohmann::json& j);
nlohmann::json scheme_descriptor_to_json(const QheScheme& s);
QheScheme scheme_from_descriptor_json(const nlohmann::json& j);

}  // namespace qhelim::qhe
