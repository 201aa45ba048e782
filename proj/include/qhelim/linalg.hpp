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

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qhelim {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Numeric tolerances, named by the contract they guard.
namespace tol {
inline constexpr double kHermitian = 1e-10;   // max |A - A†| entrywise
inline constexpr double kTrace = 1e-10;       // |tr - 1|
inline constexpr double kPsd = 1e-10;         // eigenvalues above -kPsd count as >= 0
inline constexpr double kPureNorm = 1e-12;    // | ||psi||^2 - 1 |
inline constexpr double kChannel = 1e-10;     // |sum K†K - I| entrywise
inline constexpr double kSlack = 1e-9;        // bound/inequality slack
inline constexpr double kFidelity = 1e-9;     // fidelity round trips
}  // namespace tol

inline bool is_power_of_two(long v) { return v > 0 && (v & (v - 1)) == 0; }

inline int exact_log2(long v) {
  if (!is_power_of_two(v)) throw std::invalid_argument("exact_log2: not a power of two");
  int k = 0;
  while ((1L << k) < v) ++k;
  return k;
}

inline long dims_product(const std::vector<int>& dims) {
  long p = 1;
  for (int d : dims) p *= d;
  return p;
}

Mat kron(const Mat& a, const Mat& b);
Vec kron(const Vec& a, const Vec& b);

inline Mat dagger(const Mat& a) { return a.adjoint(); }

inline Vec basis_vector(int dim, long index) {
  Vec v = Vec::Zero(dim);
  v(index) = 1.0;
  return v;
}

inline Mat projector(const Vec& v) { return v * v.adjoint(); }

// max entrywise |A - A†|
double hermiticity_defect(const Mat& a);

// Eigenvalues of a Hermitian matrix with float-noise hygiene: values in
// [-tol::kPsd, 0] are clipped to 0, anything more negative throws.
std::vector<double> clipped_eigenvalues(const Mat& hermitian, const std::string& what);

// Deterministic RNG: mt19937_64 expanded to 53-bit uniforms, Gaussians via
// Box-Muller. Avoids std::*_distribution, whose output is
// implementation-defined; this stream is reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  std::uint64_t integer(std::uint64_t bound) { return gen_() % bound; }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Normalized complex Gaussian vector (Haar-uniform pure state amplitudes).
Vec random_state_vector(int dim, Rng& rng);

}  // namespace qhelim
