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

#include "qhelim/reduction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qhelim::reduction {

namespace {

std::string index_to_bits(long v, int n) {
  std::string s;
  for (int i = n - 1; i >= 0; --i) s.push_back('0' + ((v >> i) & 1));
  return s;
}

// Z-basis projector on the first output qubit of the message register,
// pulled back through dec: D_b = sum_j K_j† (Pi_b ⊗ I) K_j on K ⊗ E.
std::array<Mat, 2> decode_first_bit_effects(const qhe::QheScheme& s) {
  long half = s.dim_m() / 2;
  std::array<Mat, 2> out;
  for (int b = 0; b < 2; ++b) {
    Mat proj = Mat::Zero(s.dim_m(), s.dim_m());
    for (long v = 0; v < s.dim_m(); ++v)
      if (((v / half) & 1) == b) proj(v, v) = 1.0;
    Mat acc = Mat::Zero(s.dim_k() * s.dim_e(), s.dim_k() * s.dim_e());
    for (const Mat& k : s.dec.kraus()) acc += k.adjoint() * proj * k;
    out[b] = std::move(acc);
  }
  return out;
}

qmat::QuantumChannel extended_eval(const qhe::QheScheme& s, std::size_t f_index) {
  return qmat::extend_to_register(
      s.eval[f_index], {static_cast<int>(s.dim_k()), static_cast<int>(s.dim_c())}, 1);
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

qmat::DensityMatrix build_encoder(const qhe::QheScheme& s, const qhe::FunctionDescriptor& f,
                                  const std::string& base) {
  auto it = std::find(s.permissible.begin(), s.permissible.end(), f);
  if (it == s.permissible.end())
    throw std::invalid_argument("build_encoder: function is not permissible for this scheme");
  std::size_t fi = static_cast<std::size_t>(it - s.permissible.begin());
  qmat::DensityMatrix rho = qhe::encrypt(s, base).to_density();
  return qmat::apply_channel(extended_eval(s, fi), rho);
}

std::vector<Mat> build_key_unitaries(const qhe::QheScheme& s, const std::string& base,
                                     std::vector<double>* residuals) {
  qmat::PureState psi_base = qhe::encrypt(s, base);
  std::vector<Mat> out;
  if (residuals) residuals->clear();
  for (long x = 0; x < s.dim_m(); ++x) {
    qmat::PureState psi_x = qhe::encrypt(s, index_to_bits(x, s.n));
    Mat u = qmat::uhlmann_align(psi_x, psi_base);
    if (residuals) {
      Mat full = kron(u, Mat::Identity(s.dim_c(), s.dim_c()));
      qmat::DensityMatrix aligned(psi_x.dims(), full * psi_x.to_density().matrix() * full.adjoint());
      residuals->push_back(qmat::trace_distance(aligned, psi_base.to_density()));
    }
    out.push_back(std::move(u));
  }
  return out;
}

std::vector<qmat::Povm> build_measurements(const qhe::QheScheme& s,
                                           const std::vector<Mat>& key_unitaries) {
  if (static_cast<long>(key_unitaries.size()) != s.dim_m())
    throw std::invalid_argument("build_measurements: need one key unitary per plaintext");
  std::array<Mat, 2> base_effects = decode_first_bit_effects(s);
  std::vector<int> dims = {static_cast<int>(s.dim_k()), static_cast<int>(s.dim_e())};
  std::vector<qmat::Povm> out;
  out.reserve(key_unitaries.size());
  for (const Mat& u : key_unitaries) {
    // Schroedinger picture: apply U† (base point -> x), decrypt, read wire 1.
    Mat full = kron(u, Mat::Identity(s.dim_e(), s.dim_e()));
    Mat e0 = full * base_effects[0] * full.adjoint();
    Mat e1 = full * base_effects[1] * full.adjoint();
    out.emplace_back(std::vector<Mat>{std::move(e0), std::move(e1)}, dims,
                     std::vector<std::string>{"0", "1"});
  }
  return out;
}

ReductionResult extract_qrac(const qhe::QheScheme& s, const std::string& base) {
  qhe::CorrectnessReport corr = qhe::check_correctness(s);
  if (!corr.pass)
    throw std::invalid_argument("extract_qrac: scheme fails perfect correctness at x=" +
                                corr.witness->x);
  qhe::SecurityReport sec = qhe::audit_security(s);

  std::vector<std::string> tts = qhe::boolean_family(s);
  std::vector<std::size_t> representative;
  for (const auto& tt : tts)
    for (std::size_t fi = 0; fi < s.permissible.size(); ++fi)
      if (s.permissible[fi].truth_table == tt) {
        representative.push_back(fi);
        break;
      }

  std::vector<double> residuals;
  std::vector<Mat> key_unitaries = build_key_unitaries(s, base, &residuals);
  std::vector<qmat::Povm> decoders = build_measurements(s, key_unitaries);

  std::vector<qmat::DensityMatrix> encoder;
  encoder.reserve(tts.size());
  for (std::size_t fi : representative) encoder.push_back(build_encoder(s, s.permissible[fi], base));

  // Approximation chain, one block of four steps per plaintext position.
  qmat::DensityMatrix rho_base = qhe::encrypt(s, base).to_density();
  bool perfectly_secure = sec.epsilon <= tol::kSlack;
  std::vector<ChainStep> chain;
  double max_dist = 0.0, max_residual = 0.0;
  for (long x = 0; x < s.dim_m(); ++x) {
    std::string xs = index_to_bits(x, s.n);
    qmat::DensityMatrix rho_x = qhe::encrypt(s, xs).to_density();
    Mat full = kron(key_unitaries[x], Mat::Identity(s.dim_c(), s.dim_c()));
    qmat::DensityMatrix aligned(rho_base.dims(),
                                full.adjoint() * rho_base.matrix() * full);

    double commute = 0.0, contracted = 0.0, decode = 0.0;
    for (std::size_t fi : representative) {
      qmat::QuantumChannel ext = extended_eval(s, fi);
      qmat::DensityMatrix eval_aligned = qmat::apply_channel(ext, aligned);
      qmat::DensityMatrix eval_base = qmat::apply_channel(ext, rho_base);
      Mat full_e = kron(key_unitaries[x], Mat::Identity(s.dim_e(), s.dim_e()));
      qmat::DensityMatrix aligned_after(eval_base.dims(),
                                        full_e.adjoint() * eval_base.matrix() * full_e);
      commute = std::max(commute, qmat::trace_distance(eval_aligned, aligned_after));

      qmat::DensityMatrix eval_x = qmat::apply_channel(ext, rho_x);
      contracted = std::max(contracted, qmat::trace_distance(eval_aligned, eval_x));

      qmat::DensityMatrix decoded =
          qmat::apply_channel(s.dec, qmat::DensityMatrix(s.dec.in_dims(), eval_x.matrix()));
      long target = s.permissible[fi].permutation[x];
      qmat::DensityMatrix ideal(decoded.dims(),
                                projector(basis_vector(s.dim_m(), target)));
      decode = std::max(decode, qmat::trace_distance(decoded, ideal));
    }

    chain.push_back({1, xs, "key-unitary alignment residual", residuals[x], 0.0, perfectly_secure});
    chain.push_back({2, xs, "eval / key-unitary commutation", commute, 0.0, true});
    chain.push_back({3, xs, "security contraction through eval", contracted, residuals[x], true});
    chain.push_back({4, xs, "homomorphic decode vs permuted basis state", decode, 0.0, true});
    max_residual = std::max(max_residual, residuals[x]);
    max_dist = std::max({max_dist, residuals[x], commute, contracted, decode});
  }

  int n_bits = static_cast<int>(s.dim_m());
  int m_qubits = s.qubits_k + s.qubits_e;
  qrac::QracInstance instance(n_bits, m_qubits, tts, std::move(encoder), std::move(decoders));
  qrac::SuccessMatrix succ = qrac::success_matrix(instance);

  return ReductionResult{s.name,
                         s.n,
                         base,
                         std::move(tts),
                         std::move(instance),
                         succ.worst,
                         succ.average,
                         sec.epsilon,
                         s.qubits_c + s.qubits_e,
                         std::move(chain),
                         max_dist,
                         max_residual};
}

bounds::BoundReport verify_reduction(const ReductionResult& r, bounds::BoundMode mode) {
  bounds::BoundReport report;
  report.name = "qhe-comm-bound";
  report.mode = mode;
  std::uint64_t f_size = r.truth_tables.size();
  report.params = {{"n", static_cast<double>(r.scheme_n)},
                   {"F_size", static_cast<double>(f_size)},
                   {"epsilon", r.epsilon},
                   {"worst_success", r.worst_success}};
  report.bound = bounds::qhe_comm_bound(f_size, r.scheme_n, r.epsilon, mode);
  report.measured = static_cast<double>(r.comm_qubits);
  if (r.epsilon <= tol::kSlack)
    report.params["perfect_security_bound"] = bounds::perfect_security_bound(f_size);
  return report;
}

std::string chain_csv(const ReductionResult& r) {
  std::ostringstream out;
  out << "step,description,measured_distance,budget\n";
  for (const auto& c : r.chain) {
    out << c.step << ",x=" << c.x << " " << c.description << "," << format_real(c.measured) << ",";
    if (c.has_budget) out << format_real(c.budget);
    out << "\n";
  }
  return out.str();
}

nlohmann::json to_json(const ReductionResult& r) {
  nlohmann::json chain = nlohmann::json::array();
  for (const auto& c : r.chain) {
    nlohmann::json step{{"step", c.step},
                        {"x", c.x},
                        {"description", c.description},
                        {"measured_distance", c.measured}};
    if (c.has_budget) step["budget"] = c.budget;
    chain.push_back(std::move(step));
  }
  return nlohmann::json{{"scheme", r.scheme_name},
                        {"n", r.scheme_n},
                        {"base", r.base},
                        {"F", r.truth_tables},
                        {"epsilon", r.epsilon},
                        {"worst_success", r.worst_success},
                        {"average_success", r.average_success},
                        {"communication_qubits", r.comm_qubits},
                        {"max_chain_distance", r.max_chain_distance},
                        {"chain", std::move(chain)},
                        {"instance", qrac::to_json(r.instance)}};
}

}  // namespace qhelim::reduction
