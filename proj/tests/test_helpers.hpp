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

#include <vector>

#include "qhelim/qmat.hpp"

namespace qhelim::testing {

inline Mat ginibre(int dim, Rng& rng) {
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Cplx(rng.gaussian(), rng.gaussian());
  return g;
}

inline qmat::DensityMatrix random_density(const std::vector<int>& dims, Rng& rng) {
  int dim = static_cast<int>(dims_product(dims));
  Mat g = ginibre(dim, rng);
  Mat rho = g * g.adjoint();
  rho /= rho.trace();
  return qmat::DensityMatrix(dims, std::move(rho));
}

inline qmat::PureState random_pure(const std::vector<int>& dims, Rng& rng) {
  int dim = static_cast<int>(dims_product(dims));
  return qmat::PureState(dims, random_state_vector(dim, rng));
}

inline Mat random_unitary(int dim, Rng& rng) {
  Eigen::HouseholderQR<Mat> qr(ginibre(dim, rng));
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase convention so the factorization is unique.
  for (int i = 0; i < dim; ++i) {
    Cplx d = r(i, i);
    q.col(i) *= (d == Cplx(0, 0)) ? 1.0 : d / std::abs(d);
  }
  return q;
}

// Random POVM with k outcomes: normalize random positive operators by the
// inverse square root of their sum.
inline qmat::Povm random_povm(const std::vector<int>& dims, int outcomes, Rng& rng) {
  int dim = static_cast<int>(dims_product(dims));
  std::vector<Mat> raw;
  Mat total = Mat::Zero(dim, dim);
  for (int i = 0; i < outcomes; ++i) {
    Mat g = ginibre(dim, rng);
    raw.push_back(g * g.adjoint());
    total += raw.back();
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(total);
  Vec inv_sqrt(dim);
  for (int i = 0; i < dim; ++i) inv_sqrt(i) = 1.0 / std::sqrt(es.eigenvalues()(i));
  Mat w = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
  std::vector<Mat> effects;
  for (const Mat& a : raw) effects.push_back(w * a * w);
  return qmat::Povm(std::move(effects), dims);
}

}  // namespace qhelim::testing
