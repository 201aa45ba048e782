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

#include "qhelim/linalg.hpp"

namespace qhelim {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

double hermiticity_defect(const Mat& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

std::vector<double> clipped_eigenvalues(const Mat& hermitian, const std::string& what) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (hermitian + hermitian.adjoint()));
  std::vector<double> out;
  out.reserve(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double v = es.eigenvalues()(i);
    if (v < -tol::kPsd)
      throw std::invalid_argument(what + ": eigenvalue " + std::to_string(v) +
                                  " below the positivity tolerance");
    out.push_back(v < 0.0 ? 0.0 : v);
  }
  return out;
}

Vec random_state_vector(int dim, Rng& rng) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Cplx(rng.gaussian(), rng.gaussian());
  double norm = v.norm();
  if (norm == 0.0) return basis_vector(dim, 0);
  return v / norm;
}

}  // namespace qhelim
