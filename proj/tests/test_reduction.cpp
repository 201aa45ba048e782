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

#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "qhelim/reduction.hpp"
#include "test_helpers.hpp"

using namespace qhelim;
using namespace qhelim::testing;
using bounds::BoundMode;

namespace {

double max_residual(const qhe::QheScheme& s, const std::string& base) {
  std::vector<double> residuals;
  reduction::build_key_unitaries(s, base, &residuals);
  double worst = 0.0;
  for (double r : residuals) worst = std::max(worst, r);
  return worst;
}

}  // namespace

TEST_SUITE("reduction") {

TEST_CASE("build_encoder: identity gives the encryption, shifts keep the pad mixed") {
  qhe::QheScheme otp = qhe::make_xor_otp(2);
  qmat::DensityMatrix via_identity =
      reduction::build_encoder(otp, qhe::FunctionDescriptor::identity(2), "00");
  CHECK(qmat::trace_distance(via_identity, qhe::encrypt(otp, "00").to_density()) < 1e-12);

  for (std::uint64_t a : {1ULL, 2ULL, 3ULL}) {
    qmat::DensityMatrix rho_f =
        reduction::build_encoder(otp, qhe::FunctionDescriptor::xor_shift(2, a), "00");
    qmat::DensityMatrix cipher = qmat::partial_trace(rho_f, {1});
    CHECK((cipher.matrix() - Mat::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() < 1e-12);
  }

  qhe::QheScheme plain = qhe::make_plaintext(2);
  std::vector<int> swap_perm = {0, 2, 1, 3};
  qmat::DensityMatrix rho_pi =
      reduction::build_encoder(plain, qhe::FunctionDescriptor::reversible(2, swap_perm), "01");
  // pi(01) = 10 lands at index 2 of the ciphertext register.
  CHECK(qmat::partial_trace(rho_pi, {1}).matrix()(2, 2).real() == doctest::Approx(1.0));

  // Not permissible for the otp catalog.
  CHECK_THROWS(reduction::build_encoder(otp, qhe::FunctionDescriptor::reversible(2, swap_perm), "00"));
}

TEST_CASE("key unitaries: base point aligns trivially, pads align exactly") {
  qhe::QheScheme otp = qhe::make_xor_otp(2);
  std::vector<double> residuals;
  std::vector<Mat> us = reduction::build_key_unitaries(otp, "00", &residuals);
  REQUIRE(us.size() == 4);
  CHECK((us[0] - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(residuals[0] < 1e-12);

  // The alignment for plaintext x is the key-register shift by x ^ base.
  for (long x = 1; x < 4; ++x) {
    Mat shift = Mat::Zero(4, 4);
    for (long k = 0; k < 4; ++k) shift(k ^ x, k) = 1.0;
    CHECK((us[x] - shift).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(residuals[x] < 1e-9);
  }

  // Perfectly secure quantum pad: residuals vanish even though the
  // alignment is built from a rank-deficient overlap.
  CHECK(max_residual(qhe::make_qotp_pauli(1), "0") < 1e-9);
  CHECK(max_residual(qhe::make_qotp_pauli(2), "00") < 1e-9);

  // Biased pad: residual matches sqrt(1 - F^2) for the two Bernoulli keys.
  qhe::QheScheme biased = qhe::make_biased_pad(1, 0.25);
  std::vector<double> bres;
  reduction::build_key_unitaries(biased, "0", &bres);
  CHECK(bres[1] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("measurements: plaintext scheme reads the first ciphertext bit") {
  qhe::QheScheme plain = qhe::make_plaintext(2);
  std::vector<Mat> us = reduction::build_key_unitaries(plain, "00");
  std::vector<qmat::Povm> ms = reduction::build_measurements(plain, us);
  REQUIRE(ms.size() == 4);
  Mat expected0 = Mat::Zero(4, 4);
  expected0(0, 0) = expected0(1, 1) = 1.0;  // first bit 0 on E
  for (const auto& m : ms) {
    CHECK((m.effects()[0] - expected0).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((m.effects()[0] + m.effects()[1] - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("measurements agree with decrypt-then-read on random states") {
  qhe::QheScheme otp = qhe::make_xor_otp(2);
  std::vector<Mat> us = reduction::build_key_unitaries(otp, "00");
  std::vector<qmat::Povm> ms = reduction::build_measurements(otp, us);
  std::vector<int> dims = {4, 4};
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    qmat::DensityMatrix sigma = random_density(dims, rng);
    for (long x = 0; x < 4; ++x) {
      // Heisenberg-picture probability.
      double heis = (ms[x].effects()[1] * sigma.matrix()).trace().real();
      // Schroedinger picture: apply the inverse alignment, decrypt, read
      // wire 1 of the plaintext register.
      Mat full = kron(us[x], Mat::Identity(4, 4));
      qmat::DensityMatrix rotated(dims, full.adjoint() * sigma.matrix() * full);
      qmat::DensityMatrix decoded = qmat::apply_channel(otp.dec, rotated);
      double schro = decoded.matrix()(2, 2).real() + decoded.matrix()(3, 3).real();
      CHECK(heis == doctest::Approx(schro).epsilon(1e-10));
    }
  }
}

TEST_CASE("extract_qrac on xor-otp(2): perfect code, bound passes in both modes") {
  reduction::ReductionResult r = reduction::extract_qrac(qhe::make_xor_otp(2), "00");
  CHECK(r.truth_tables.size() == 2);
  CHECK(r.worst_success == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.epsilon < 1e-12);
  CHECK(r.comm_qubits == 4);
  CHECK(r.max_chain_distance < 1e-9);
  CHECK(r.instance.n() == 4);
  CHECK(r.instance.m() == 4);

  bounds::BoundReport paper = reduction::verify_reduction(r, BoundMode::kPaper);
  CHECK(paper.bound == doctest::Approx(1.0));  // log2 2 - 0
  CHECK(paper.pass());
  bounds::BoundReport rigorous = reduction::verify_reduction(r, BoundMode::kRigorous);
  CHECK(rigorous.pass());
  // Perfectly secure: the evaluated-ciphertext form is reported as well.
  CHECK(paper.params.at("perfect_security_bound") == doctest::Approx(1.0));
}

TEST_CASE("extract_qrac on plaintext(2): vacuous guarantee at epsilon = 1") {
  reduction::ReductionResult r = reduction::extract_qrac(qhe::make_plaintext(2), "00");
  CHECK(r.epsilon == doctest::Approx(1.0));
  CHECK(r.truth_tables.size() == 6);
  // The extracted decoders answer bit1(pi_f(base)) at every position, so
  // some (f, x) pair always fails outright; the 1 - eps = 0 guarantee is
  // vacuous and the code carries no worst-case power.
  CHECK(r.worst_success < 1e-9);
  CHECK(r.worst_success >= 1.0 - r.epsilon - 1e-9);

  bounds::BoundReport paper = reduction::verify_reduction(r, BoundMode::kPaper);
  CHECK(paper.bound == doctest::Approx(std::log2(6.0)).epsilon(1e-12));  // H(1) = 0
  CHECK(paper.pass());  // 4 >= 2.585
  bounds::BoundReport rigorous = reduction::verify_reduction(r, BoundMode::kRigorous);
  CHECK(rigorous.bound == 0.0);  // Fano envelope: H~(1) = 1 kills the bound
  CHECK(rigorous.pass());
}

TEST_CASE("extract_qrac on biased-pad(1, 0.25): success and chain budgets") {
  reduction::ReductionResult r = reduction::extract_qrac(qhe::make_biased_pad(1, 0.25), "0");
  CHECK(r.epsilon == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r.worst_success >= 0.5 - 1e-9);
  for (const auto& step : r.chain) CHECK(step.measured <= 0.5 + 1e-9);
  CHECK(reduction::verify_reduction(r, BoundMode::kRigorous).pass());
}

TEST_CASE("perfectly secure schemes extract perfect codes") {
  for (const auto& s : {qhe::make_xor_otp(1), qhe::make_xor_otp(2), qhe::make_qotp_pauli(1),
                        qhe::make_qotp_pauli(2), qhe::make_biased_pad(2, 0.0)}) {
    reduction::ReductionResult r = reduction::extract_qrac(s, std::string(s.n, '0'));
    CHECK(r.epsilon < 1e-12);
    CHECK(r.worst_success == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.max_chain_distance <= 1e-9);
    CHECK(reduction::verify_reduction(r, BoundMode::kRigorous).pass());
    qrac::TraceReport trace = qrac::trace_lemma(r.instance);
    CHECK(trace.in_regime);
    CHECK(trace.pass);
  }
}

TEST_CASE("epsilon > 0 schemes keep the 1 - eps guarantee") {
  for (double delta : {0.1, 0.25, 0.5}) {
    qhe::QheScheme s = qhe::make_biased_pad(1, delta);
    reduction::ReductionResult r = reduction::extract_qrac(s, "0");
    CHECK(r.worst_success >= 1.0 - r.epsilon - 1e-9);
  }
}

TEST_CASE("extraction commutes: eval after alignment equals alignment after eval") {
  Rng rng(62);
  qhe::QheScheme otp = qhe::make_xor_otp(2);
  std::vector<Mat> us = reduction::build_key_unitaries(otp, "00");
  std::vector<int> dims = {4, 4};
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t fi = rng.integer(otp.eval.size());
    long x = static_cast<long>(rng.integer(4));
    qmat::QuantumChannel ext = qmat::extend_to_register(otp.eval[fi], dims, 1);
    qmat::DensityMatrix rho = random_density(dims, rng);
    Mat full = kron(us[x], Mat::Identity(4, 4));
    qmat::DensityMatrix left =
        qmat::apply_channel(ext, qmat::DensityMatrix(dims, full * rho.matrix() * full.adjoint()));
    qmat::DensityMatrix right = qmat::apply_channel(ext, rho);
    Mat right_rot = full * right.matrix() * full.adjoint();
    CHECK((left.matrix() - right_rot).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("extracted instances pass the lemma tracer when in regime") {
  reduction::ReductionResult r = reduction::extract_qrac(qhe::make_xor_otp(2), "00");
  qrac::TraceReport trace = qrac::trace_lemma(r.instance);
  CHECK(trace.in_regime);
  CHECK(trace.pass);

  reduction::ReductionResult vac = reduction::extract_qrac(qhe::make_plaintext(2), "00");
  qrac::TraceReport out = qrac::trace_lemma(vac.instance);
  CHECK(!out.in_regime);  // vacuous code, tracer declines a verdict
}

TEST_CASE("verify_reduction rejects a synthetic under-communicating scheme") {
  reduction::ReductionResult fake = reduction::extract_qrac(qhe::make_xor_otp(2), "00");
  fake.truth_tables.assign(1L << 16, "");  // only the count feeds the bound
  fake.scheme_n = 4;
  fake.epsilon = 0.0;
  fake.comm_qubits = 8;
  bounds::BoundReport report = reduction::verify_reduction(fake, BoundMode::kPaper);
  CHECK(report.bound == doctest::Approx(16.0));
  CHECK(report.slack() == doctest::Approx(-8.0));
  CHECK(!report.pass());
}

TEST_CASE("corollary regime scan: measured values at desk scale") {
  // |F| = 2^(2^n), eps(n) = 2^(-1.01 n). The bound is 2^n (1 - H(eps)).
  // The relative correction H(eps(n)) decreases at these sizes; the
  // absolute correction 2^n H(eps(n)) is still growing here (its decay is
  // asymptotic, setting in only near n ~ 1/(0.01 ln 2) ~ 144).
  std::vector<double> absolute, relative;
  for (int n = 1; n <= 3; ++n) {
    double eps = std::pow(2.0, -1.01 * n);
    double h = bounds::binary_entropy(eps);
    double positions = std::pow(2.0, n);
    double bound = bounds::qhe_comm_bound_log2(positions, n, eps, BoundMode::kPaper);
    CHECK(bound == doctest::Approx(positions * (1.0 - h)).epsilon(1e-12));
    absolute.push_back(positions * h);
    relative.push_back(h);
  }
  CHECK(relative[0] > relative[1]);
  CHECK(relative[1] > relative[2]);
  // Frozen from high-precision evaluation.
  CHECK(absolute[0] == doctest::Approx(1.999931163251).epsilon(1e-9));
  CHECK(absolute[1] == doctest::Approx(3.223108991056).epsilon(1e-9));
  CHECK(absolute[2] == doctest::Approx(4.290389789740).epsilon(1e-9));
}

TEST_CASE("chain table exports as CSV and the result serializes") {
  reduction::ReductionResult r = reduction::extract_qrac(qhe::make_biased_pad(1, 0.25), "0");
  std::string csv = reduction::chain_csv(r);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "step,description,measured_distance,budget");
  int count = 0;
  for (std::string line; std::getline(lines, line);) ++count;
  CHECK(count == 8);  // 4 steps x 2 plaintexts

  nlohmann::json j = reduction::to_json(r);
  CHECK(j.at("scheme") == "biased-pad");
  CHECK(j.at("chain").size() == 8);
  CHECK(j.at("instance").at("n") == 2);
}

}  // TEST_SUITE
