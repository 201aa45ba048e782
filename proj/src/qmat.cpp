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

#include "qhelim/qmat.hpp"

#include <algorithm>
#include <cmath>

namespace qhelim::qmat {

namespace {

void check_dims_list(const std::vector<int>& dims, long expected_total, const std::string& what) {
  if (dims.empty()) throw std::invalid_argument(what + ": empty dims list");
  for (int d : dims)
    if (!is_power_of_two(d)) throw std::invalid_argument(what + ": subsystem dimension must be a power of two");
  long total = dims_product(dims);
  if (total != expected_total)
    throw std::invalid_argument(what + ": dims product " + std::to_string(total) +
                                " does not match size " + std::to_string(expected_total));
  if (total > kMaxTotalDim)
    throw std::invalid_argument(what + ": total dimension " + std::to_string(total) +
                                " exceeds the cap " + std::to_string(kMaxTotalDim));
}

// Row-major strides over the dims list (factor 0 is most significant).
std::vector<long> strides_of(const std::vector<int>& dims) {
  std::vector<long> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) s[i] = s[i + 1] * dims[i + 1];
  return s;
}

Mat hermitian_sqrt(const Mat& m, const std::string& what) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
  Vec diag(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double v = es.eigenvalues()(i);
    if (v < -tol::kPsd) throw std::invalid_argument(what + ": matrix is not positive semidefinite");
    diag(i) = std::sqrt(std::max(v, 0.0));
  }
  return es.eigenvectors() * diag.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

DensityMatrix::DensityMatrix(std::vector<int> dims, Mat entries) : dims_(std::move(dims)), m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("DensityMatrix: matrix must be square");
  check_dims_list(dims_, m_.rows(), "DensityMatrix");
  if (hermiticity_defect(m_) > tol::kHermitian)
    throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
  if (std::abs(m_.trace().real() - 1.0) > tol::kTrace || std::abs(m_.trace().imag()) > tol::kTrace)
    throw std::invalid_argument("DensityMatrix: trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m_ + m_.adjoint()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol::kPsd)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) { return psi.to_density(); }

PureState::PureState(std::vector<int> dims, Vec amplitudes) : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
  check_dims_list(dims_, amps_.size(), "PureState");
  if (std::abs(amps_.squaredNorm() - 1.0) > tol::kPureNorm)
    throw std::invalid_argument("PureState: squared norm differs from 1");
}

QuantumChannel::QuantumChannel(std::vector<Mat> kraus_ops, std::vector<int> in_dims, std::vector<int> out_dims)
    : kraus_(std::move(kraus_ops)), in_dims_(std::move(in_dims)), out_dims_(std::move(out_dims)) {
  if (kraus_.empty()) throw std::invalid_argument("QuantumChannel: no Kraus operators");
  long in_total = dims_product(in_dims_);
  long out_total = dims_product(out_dims_);
  check_dims_list(in_dims_, in_total, "QuantumChannel(in)");
  check_dims_list(out_dims_, out_total, "QuantumChannel(out)");
  Mat completeness = Mat::Zero(in_total, in_total);
  for (const Mat& k : kraus_) {
    if (k.rows() != out_total || k.cols() != in_total)
      throw std::invalid_argument("QuantumChannel: Kraus operator shape mismatch");
    completeness += k.adjoint() * k;
  }
  if ((completeness - Mat::Identity(in_total, in_total)).cwiseAbs().maxCoeff() > tol::kChannel)
    throw std::invalid_argument("QuantumChannel: not trace preserving");
}

QuantumChannel QuantumChannel::with_dims(std::vector<int> in_dims, std::vector<int> out_dims) const {
  if (dims_product(in_dims) != dims_product(in_dims_) || dims_product(out_dims) != dims_product(out_dims_))
    throw std::invalid_argument("QuantumChannel::with_dims: dimension products must match");
  return QuantumChannel(kraus_, std::move(in_dims), std::move(out_dims));
}

QuantumChannel QuantumChannel::from_unitary(const Mat& u, std::vector<int> dims) {
  return QuantumChannel({u}, dims, dims);
}

QuantumChannel QuantumChannel::identity(std::vector<int> dims) {
  long d = dims_product(dims);
  return QuantumChannel({Mat::Identity(d, d)}, dims, dims);
}

QuantumChannel QuantumChannel::depolarizing(std::vector<int> dims) {
  long d = dims_product(dims);
  std::vector<Mat> kraus;
  kraus.reserve(d * d);
  double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) {
      Mat k = Mat::Zero(d, d);
      k(i, j) = scale;
      kraus.push_back(k);
    }
  return QuantumChannel(std::move(kraus), dims, dims);
}

Povm::Povm(std::vector<Mat> effects, std::vector<int> dims, std::vector<std::string> labels)
    : effects_(std::move(effects)), dims_(std::move(dims)), labels_(std::move(labels)) {
  if (effects_.empty()) throw std::invalid_argument("Povm: no effects");
  long d = dims_product(dims_);
  check_dims_list(dims_, d, "Povm");
  Mat sum = Mat::Zero(d, d);
  for (const Mat& e : effects_) {
    if (e.rows() != d || e.cols() != d) throw std::invalid_argument("Povm: effect shape mismatch");
    if (hermiticity_defect(e) > tol::kHermitian) throw std::invalid_argument("Povm: effect not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (e + e.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol::kPsd)
      throw std::invalid_argument("Povm: effect has negative eigenvalue");
    sum += e;
  }
  if ((sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > tol::kChannel)
    throw std::invalid_argument("Povm: effects do not sum to identity");
  if (labels_.empty())
    for (std::size_t i = 0; i < effects_.size(); ++i) labels_.push_back(std::to_string(i));
  if (labels_.size() != effects_.size()) throw std::invalid_argument("Povm: label count mismatch");
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix(std::move(dims), kron(a.matrix(), b.matrix()));
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return PureState(std::move(dims), kron(a.amplitudes(), b.amplitudes()));
}

Mat tensor(const Mat& a, const Mat& b) { return kron(a, b); }

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const std::vector<int>& dims = rho.dims();
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::unique(kept.begin(), kept.end()) != kept.end())
    throw std::invalid_argument("partial_trace: duplicate keep index");
  for (int i : kept)
    if (i < 0 || i >= static_cast<int>(dims.size()))
      throw std::invalid_argument("partial_trace: keep index out of range");

  std::vector<int> traced;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i)
    if (!std::binary_search(kept.begin(), kept.end(), i)) traced.push_back(i);

  std::vector<long> stride = strides_of(dims);
  long kd = 1, td = 1;
  for (int i : kept) kd *= dims[i];
  for (int i : traced) td *= dims[i];

  // Global index of a (kept multi-index, traced multi-index) pair.
  auto global = [&](long k_lin, long t_lin) {
    long g = 0;
    for (int i = static_cast<int>(kept.size()) - 1; i >= 0; --i) {
      g += (k_lin % dims[kept[i]]) * stride[kept[i]];
      k_lin /= dims[kept[i]];
    }
    for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
      g += (t_lin % dims[traced[i]]) * stride[traced[i]];
      t_lin /= dims[traced[i]];
    }
    return g;
  };

  Mat out = Mat::Zero(kd, kd);
  for (long a = 0; a < kd; ++a)
    for (long b = 0; b < kd; ++b) {
      Cplx acc = 0.0;
      for (long t = 0; t < td; ++t) acc += rho.matrix()(global(a, t), global(b, t));
      out(a, b) = acc;
    }

  std::vector<int> out_dims;
  for (int i : kept) out_dims.push_back(dims[i]);
  return DensityMatrix(std::move(out_dims), std::move(out));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dims() != sigma.dims()) throw std::invalid_argument("trace_distance: dimension mismatch");
  Mat diff = rho.matrix() - sigma.matrix();
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dims() != sigma.dims()) throw std::invalid_argument("fidelity: dimension mismatch");
  Mat prod = hermitian_sqrt(rho.matrix(), "fidelity") * hermitian_sqrt(sigma.matrix(), "fidelity");
  Eigen::JacobiSVD<Mat> svd(prod);
  return svd.singularValues().sum();
}

PureState purify(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix());
  long d = rho.dim();
  Vec amps = Vec::Zero(d * d);
  for (long i = 0; i < d; ++i) {
    double ev = es.eigenvalues()(i);
    if (ev < -tol::kPsd) throw std::invalid_argument("purify: input not positive semidefinite");
    if (ev <= 0.0) continue;
    amps += std::sqrt(ev) * kron(Vec(es.eigenvectors().col(i)), basis_vector(d, i));
  }
  amps /= amps.norm();
  std::vector<int> dims = rho.dims();
  dims.push_back(static_cast<int>(d));
  return PureState(std::move(dims), std::move(amps));
}

Mat uhlmann_align(const PureState& psi, const PureState& phi) {
  if (psi.dims() != phi.dims()) throw std::invalid_argument("uhlmann_align: dimension mismatch");
  if (psi.dims().size() < 2) throw std::invalid_argument("uhlmann_align: need at least two factors");
  long dk = psi.dims()[0];
  long dm = psi.dim() / dk;
  // Amplitudes as dk x dm matrices (factor 0 indexes rows).
  Mat a = Eigen::Map<const Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      psi.amplitudes().data(), dk, dm);
  Mat b = Eigen::Map<const Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      phi.amplitudes().data(), dk, dm);
  // <phi|(U ⊗ I)|psi> = tr(U A B†); |tr(U M)| is maximized at U = V W† for
  // M = W S V†, achieving the nuclear norm of M.
  Mat overlap = a * b.adjoint();
  Eigen::JacobiSVD<Mat> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixV() * svd.matrixU().adjoint();
}

DensityMatrix apply_channel(const QuantumChannel& ch, const DensityMatrix& rho) {
  if (ch.in_dims() != rho.dims()) throw std::invalid_argument("apply_channel: input dims mismatch");
  long out_total = dims_product(ch.out_dims());
  Mat out = Mat::Zero(out_total, out_total);
  for (const Mat& k : ch.kraus()) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix(ch.out_dims(), std::move(out));
}

QuantumChannel extend_to_register(const QuantumChannel& ch, const std::vector<int>& dims, int target) {
  if (target < 0 || target >= static_cast<int>(dims.size()))
    throw std::invalid_argument("extend_to_register: target out of range");
  if (dims[target] != dims_product(ch.in_dims()))
    throw std::invalid_argument("extend_to_register: target dimension mismatch");
  long pre = 1, post = 1;
  for (int i = 0; i < target; ++i) pre *= dims[i];
  for (int i = target + 1; i < static_cast<int>(dims.size()); ++i) post *= dims[i];
  Mat ipre = Mat::Identity(pre, pre);
  Mat ipost = Mat::Identity(post, post);
  std::vector<Mat> kraus;
  kraus.reserve(ch.kraus().size());
  for (const Mat& k : ch.kraus()) kraus.push_back(kron(kron(ipre, k), ipost));
  std::vector<int> out_dims;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
    if (i == target)
      out_dims.insert(out_dims.end(), ch.out_dims().begin(), ch.out_dims().end());
    else
      out_dims.push_back(dims[i]);
  }
  return QuantumChannel(std::move(kraus), dims, std::move(out_dims));
}

QuantumChannel unitary_then_keep(const Mat& u, const std::vector<int>& dims, const std::vector<int>& keep) {
  long total = dims_product(dims);
  if (u.rows() != total || u.cols() != total)
    throw std::invalid_argument("unitary_then_keep: unitary shape mismatch");
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  std::vector<int> traced;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i)
    if (!std::binary_search(kept.begin(), kept.end(), i)) traced.push_back(i);
  std::vector<long> stride = strides_of(dims);
  long kd = 1, td = 1;
  for (int i : kept) kd *= dims[i];
  for (int i : traced) td *= dims[i];

  // P_t maps the full space onto the kept factors with the traced factors
  // pinned to basis state t; Kraus ops are P_t U.
  std::vector<Mat> kraus;
  kraus.reserve(td);
  for (long t = 0; t < td; ++t) {
    Mat p = Mat::Zero(kd, total);
    for (long s = 0; s < kd; ++s) {
      long g = 0;
      long k_lin = s, t_lin = t;
      for (int i = static_cast<int>(kept.size()) - 1; i >= 0; --i) {
        g += (k_lin % dims[kept[i]]) * stride[kept[i]];
        k_lin /= dims[kept[i]];
      }
      for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
        g += (t_lin % dims[traced[i]]) * stride[traced[i]];
        t_lin /= dims[traced[i]];
      }
      p(s, g) = 1.0;
    }
    kraus.push_back(p * u);
  }
  std::vector<int> out_dims;
  for (int i : kept) out_dims.push_back(dims[i]);
  return QuantumChannel(std::move(kraus), dims, std::move(out_dims));
}

}  // namespace qhelim::qmat
