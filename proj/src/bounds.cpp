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

#include "qhelim/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace qhelim::bounds {

namespace {
constexpr double kInputClamp = 1e-12;

double checked_probability(double p, const std::string& what) {
  if (p < -kInputClamp || p > 1.0 + kInputClamp)
    throw std::invalid_argument(what + ": probability " + std::to_string(p) + " outside [0,1]");
  return std::clamp(p, 0.0, 1.0);
}
}  // namespace

std::string to_string(BoundMode mode) { return mode == BoundMode::kPaper ? "paper" : "rigorous"; }

BoundMode bound_mode_from_string(const std::string& s) {
  if (s == "paper") return BoundMode::kPaper;
  if (s == "rigorous") return BoundMode::kRigorous;
  throw std::invalid_argument("unknown bound mode '" + s + "' (expected paper|rigorous)");
}

double binary_entropy(double p) {
  p = checked_probability(p, "binary_entropy");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

double binary_entropy_inverse_upper(double h) {
  if (h < 0.0 || h > 1.0 + kInputClamp)
    throw std::invalid_argument("binary_entropy_inverse_upper: value outside [0,1]");
  h = std::min(h, 1.0);
  double lo = 0.5, hi = 1.0;  // H decreasing on [1/2, 1]
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (binary_entropy(mid) > h ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double shannon_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) {
    if (v < -kInputClamp) throw std::invalid_argument("shannon_entropy: negative probability");
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

double von_neumann_entropy(const qmat::DensityMatrix& rho) {
  return shannon_entropy(clipped_eigenvalues(rho.matrix(), "von_neumann_entropy"));
}

Ensemble::Ensemble(std::vector<qmat::DensityMatrix> states, std::vector<double> probabilities)
    : states_(std::move(states)), probs_(std::move(probabilities)) {
  if (states_.empty() || states_.size() != probs_.size())
    throw std::invalid_argument("Ensemble: states/probabilities size mismatch");
  double total = 0.0;
  for (double p : probs_) {
    if (p < -kInputClamp) throw std::invalid_argument("Ensemble: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > tol::kTrace)
    throw std::invalid_argument("Ensemble: probabilities sum to " + std::to_string(total));
  for (const auto& s : states_)
    if (s.dims() != states_[0].dims()) throw std::invalid_argument("Ensemble: mixed dimensions");
}

qmat::DensityMatrix Ensemble::average() const {
  Mat avg = Mat::Zero(states_[0].dim(), states_[0].dim());
  for (std::size_t i = 0; i < states_.size(); ++i) avg += probs_[i] * states_[i].matrix();
  return qmat::DensityMatrix(states_[0].dims(), std::move(avg));
}

double holevo_chi(const Ensemble& e) {
  double chi = von_neumann_entropy(e.average());
  for (std::size_t i = 0; i < e.states().size(); ++i)
    chi -= e.probabilities()[i] * von_neumann_entropy(e.states()[i]);
  return chi;
}

double mutual_information_cq(const Ensemble& e, const qmat::Povm& m) {
  if (m.dims() != e.states()[0].dims())
    throw std::invalid_argument("mutual_information_cq: POVM dims mismatch");
  std::size_t nx = e.states().size();
  std::size_t ny = m.size();
  std::vector<double> joint(nx * ny, 0.0), px(nx, 0.0), py(ny, 0.0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      double p = e.probabilities()[x] * (m.effects()[y] * e.states()[x].matrix()).trace().real();
      p = std::max(p, 0.0);  // measurement float noise
      joint[x * ny + y] = p;
      px[x] += p;
      py[y] += p;
    }
  return shannon_entropy(px) + shannon_entropy(py) - shannon_entropy(joint);
}

double nayak_bound(int n, double p) {
  if (n < 1) throw std::invalid_argument("nayak_bound: n must be >= 1");
  return std::max(0.0, n * (1.0 - binary_entropy(p)));
}

double subset_bound(std::uint64_t f_size, int n, double p) {
  if (n < 1) throw std::invalid_argument("subset_bound: n must be >= 1");
  if (f_size < 1) throw std::invalid_argument("subset_bound: F must be nonempty");
  if (std::log2(static_cast<double>(f_size)) > n + kInputClamp)
    throw std::invalid_argument("subset_bound: |F| exceeds 2^n");
  return std::max(0.0, std::log2(static_cast<double>(f_size)) - n * binary_entropy(p));
}

double qhe_comm_bound_log2(double log2_f, int n, double eps, BoundMode mode) {
  if (n < 1) throw std::invalid_argument("qhe_comm_bound: n must be >= 1");
  double positions = std::pow(2.0, n);
  if (log2_f > positions + kInputClamp)
    throw std::invalid_argument("qhe_comm_bound: |F| exceeds 2^(2^n)");
  eps = checked_probability(eps, "qhe_comm_bound");
  double h = binary_entropy(eps);
  if (mode == BoundMode::kRigorous && eps > 0.5) h = 1.0;
  return std::max(0.0, log2_f - positions * h);
}

double qhe_comm_bound(std::uint64_t f_size, int n, double eps, BoundMode mode) {
  if (f_size < 1) throw std::invalid_argument("qhe_comm_bound: F must be nonempty");
  return qhe_comm_bound_log2(std::log2(static_cast<double>(f_size)), n, eps, mode);
}

double perfect_security_bound(std::uint64_t s_size) {
  if (s_size < 1) throw std::invalid_argument("perfect_security_bound: |S| must be >= 1");
  return std::log2(static_cast<double>(s_size));
}

ReversibleCount reversible_count_bits(int n) {
  if (n < 1 || n > 16) throw std::invalid_argument("reversible_count_bits: n outside [1,16]");
  double domain = std::pow(2.0, n);
  double exact = std::lgamma(domain + 1.0) / std::log(2.0);
  double asymptotic = (n - std::log2(std::exp(1.0))) * domain;
  return {exact, asymptotic};
}

double fano_gap(double q, double p_err) { return binary_entropy(q) - binary_entropy(p_err); }

}  // namespace qhelim::bounds
