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

#include "qhelim/linalg.hpp"

namespace qhelim::qmat {

// Total Hilbert-space dimension cap; this library targets desk-scale
// instances, not large simulations.
inline constexpr long kMaxTotalDim = 1024;

class PureState;

// Positive semidefinite, unit-trace complex matrix on a labeled tensor
// factorization. Subsystem 0 is the leftmost (most significant) factor;
// register order is (key, message) / (key, ciphertext) throughout.
class DensityMatrix {
 public:
  DensityMatrix(std::vector<int> dims, Mat entries);

  const std::vector<int>& dims() const { return dims_; }
  const Mat& matrix() const { return m_; }
  long dim() const { return m_.rows(); }

  static DensityMatrix from_pure(const PureState& psi);

 private:
  std::vector<int> dims_;
  Mat m_;
};

class PureState {
 public:
  PureState(std::vector<int> dims, Vec amplitudes);

  const std::vector<int>& dims() const { return dims_; }
  const Vec& amplitudes() const { return amps_; }
  long dim() const { return amps_.size(); }

  DensityMatrix to_density() const { return DensityMatrix(dims_, amps_ * amps_.adjoint()); }

 private:
  std::vector<int> dims_;
  Vec amps_;
};

// Completely positive trace-preserving map as a Kraus-operator list.
class QuantumChannel {
 public:
  QuantumChannel(std::vector<Mat> kraus_ops, std::vector<int> in_dims, std::vector<int> out_dims);

  const std::vector<Mat>& kraus() const { return kraus_; }
  const std::vector<int>& in_dims() const { return in_dims_; }
  const std::vector<int>& out_dims() const { return out_dims_; }

  // Same map, relabeled register structure (products must match).
  QuantumChannel with_dims(std::vector<int> in_dims, std::vector<int> out_dims) const;

  static QuantumChannel from_unitary(const Mat& u, std::vector<int> dims);
  static QuantumChannel identity(std::vector<int> dims);
  static QuantumChannel depolarizing(std::vector<int> dims);

 private:
  std::vector<Mat> kraus_;
  std::vector<int> in_dims_;
  std::vector<int> out_dims_;
};

// Finite list of positive operators summing to identity.
class Povm {
 public:
  Povm(std::vector<Mat> effects, std::vector<int> dims, std::vector<std::string> labels = {});

  const std::vector<Mat>& effects() const { return effects_; }
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return effects_.size(); }

 private:
  std::vector<Mat> effects_;
  std::vector<int> dims_;
  std::vector<std::string> labels_;
};

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor(const PureState& a, const PureState& b);
Mat tensor(const Mat& a, const Mat& b);

// Trace out every subsystem not listed in `keep`; kept factors stay in their
// original order.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// T(rho, sigma) = 1/2 ||rho - sigma||_1, in [0, 1].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Uhlmann fidelity F(rho, sigma) = ||sqrt(rho) sqrt(sigma)||_1, in [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// Purification on a doubled space: the ancilla is appended as one extra
// factor of dimension dim(rho); tracing it out recovers rho.
PureState purify(const DensityMatrix& rho);

// Unitary U on subsystem 0 maximizing |<phi|(U ⊗ I)|psi>|. The achieved
// overlap equals the fidelity of the reduced states on the remaining
// factors (Uhlmann). Built from the SVD of the subsystem-0 overlap matrix;
// rank-deficient overlaps are completed deterministically.
Mat uhlmann_align(const PureState& psi, const PureState& phi);

DensityMatrix apply_channel(const QuantumChannel& ch, const DensityMatrix& rho);

// Embed a channel acting on register `target` of a larger system,
// identity elsewhere.
QuantumChannel extend_to_register(const QuantumChannel& ch, const std::vector<int>& dims, int target);

// Apply a unitary on the full system, then keep only the listed registers
// (tracing out the rest).
QuantumChannel unitary_then_keep(const Mat& u, const std::vector<int>& dims, const std::vector<int>& keep);

}  // namespace qhelim::qmat
