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

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qhelim/bounds.hpp"
#include "qhelim/qhe.hpp"
#include "qhelim/qrac.hpp"

namespace qhelim::reduction {

// One row of the approximation-chain table: the measured trace distance of
// one step of the extraction argument at one plaintext x, with the budget it
// is expected to stay under (NaN when the step is only recorded, not
// budgeted a priori).
struct ChainStep {
  int step = 0;
  std::string x;
  std::string description;
  double measured = 0.0;
  double budget = 0.0;
  bool has_budget = false;
};

// The random access code extracted from a homomorphic scheme: encoder
// f -> rho_f over the scheme's Boolean family, decoder POVMs indexed by
// plaintexts x, plus everything needed to compare the scheme's
// communication against the lower bound.
struct ReductionResult {
  std::string scheme_name;
  int scheme_n = 0;
  std::string base;
  std::vector<std::string> truth_tables;  // F, the code's strings
  qrac::QracInstance instance;
  double worst_success = 0.0;
  double average_success = 0.0;
  double epsilon = 0.0;
  int comm_qubits = 0;  // qubits(C) + qubits(E)
  std::vector<ChainStep> chain;
  double max_chain_distance = 0.0;
  double max_alignment_residual = 0.0;
};

// rho_f: evaluate f's circuit on the ciphertext factor of the base-point
// encryption. f must be in the scheme's catalog.
qmat::DensityMatrix build_encoder(const qhe::QheScheme& s, const qhe::FunctionDescriptor& f,
                                  const std::string& base);

// For each plaintext x, the key-register unitary aligning the purified
// encryption of x with that of the base point (Uhlmann alignment of the
// two purifications). The residual trace distance after alignment is
// recorded per x; for perfectly secure schemes it must vanish.
std::vector<Mat> build_key_unitaries(const qhe::QheScheme& s, const std::string& base,
                                     std::vector<double>* residuals = nullptr);

// Decoder POVM for position x in the Heisenberg picture: undo the
// alignment (map the base point toward x), decrypt, and read the first
// output qubit in the Z basis.
std::vector<qmat::Povm> build_measurements(const qhe::QheScheme& s,
                                           const std::vector<Mat>& key_unitaries);

// Run the whole extraction at the given base point (scheme must be
// perfectly correct). Records the per-step approximation chain.
ReductionResult extract_qrac(const qhe::QheScheme& s, const std::string& base);

// Compare the scheme's communication (qubits(C) + qubits(E)) against the
// function-counting bound at the audited epsilon. For perfectly secure
// schemes the params carry the log2|F| evaluated-ciphertext form as well
// (the two coincide at epsilon = 0).
bounds::BoundReport verify_reduction(const ReductionResult& r, bounds::BoundMode mode);

// Chain table as CSV with columns: step, description, measured_distance, budget.
std::string chain_csv(const ReductionResult& r);

nlohmann::json to_json(const ReductionResult& r);

}  // namespace qhelim::reduction
