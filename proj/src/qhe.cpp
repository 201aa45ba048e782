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

#include "qhelim/qhe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

namespace qhelim::qhe {

namespace {

constexpr double kCorrectnessTol = 1e-9;

long bits_to_index(const std::string& bits) {
  long v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring '" + bits + "' is not binary");
    v = (v << 1) | (c - '0');
  }
  return v;
}

std::string index_to_bits(long v, int n) {
  std::string s;
  for (int i = n - 1; i >= 0; --i) s.push_back('0' + ((v >> i) & 1));
  return s;
}

std::string wire1_truth_table(const std::vector<int>& perm, int n) {
  std::string tt;
  tt.reserve(perm.size());
  for (int out : perm) tt.push_back('0' + ((out >> (n - 1)) & 1));
  return tt;
}

void check_permutation(const std::vector<int>& perm, int n) {
  long domain = 1L << n;
  if (static_cast<long>(perm.size()) != domain)
    throw std::invalid_argument("permutation table must have 2^n entries");
  std::vector<bool> seen(domain, false);
  for (int v : perm) {
    if (v < 0 || v >= domain || seen[v])
      throw std::invalid_argument("permutation table is not a bijection on {0,1}^n");
    seen[v] = true;
  }
}

Mat permutation_matrix(const std::vector<int>& perm) {
  long d = static_cast<long>(perm.size());
  Mat p = Mat::Zero(d, d);
  for (long x = 0; x < d; ++x) p(perm[x], x) = 1.0;
  return p;
}

// X^a Z^b on n qubits as a matrix (computational basis).
Mat pauli_pad(int n, long a, long b) {
  long d = 1L << n;
  Mat m = Mat::Zero(d, d);
  for (long y = 0; y < d; ++y) {
    double phase = (__builtin_popcountll(b & y) & 1) ? -1.0 : 1.0;
    m(y ^ a, y) = phase;
  }
  return m;
}

int popcount(long v) { return __builtin_popcountll(static_cast<unsigned long long>(v)); }

}  // namespace

FunctionDescriptor FunctionDescriptor::identity(int n) {
  FunctionDescriptor f;
  f.kind = Kind::kIdentity;
  f.n = n;
  f.permutation.resize(1L << n);
  std::iota(f.permutation.begin(), f.permutation.end(), 0);
  f.truth_table = wire1_truth_table(f.permutation, n);
  return f;
}

FunctionDescriptor FunctionDescriptor::xor_shift(int n, std::uint64_t a) {
  if (a >= (1ULL << n)) throw std::invalid_argument("xor_shift: shift out of range");
  FunctionDescriptor f;
  f.kind = a == 0 ? Kind::kIdentity : Kind::kXorShift;
  f.n = n;
  f.shift = a;
  f.permutation.resize(1L << n);
  for (long x = 0; x < (1L << n); ++x) f.permutation[x] = static_cast<int>(x ^ static_cast<long>(a));
  f.truth_table = wire1_truth_table(f.permutation, n);
  return f;
}

FunctionDescriptor FunctionDescriptor::reversible(int n, std::vector<int> perm) {
  check_permutation(perm, n);
  FunctionDescriptor f;
  f.kind = Kind::kReversibleCircuit;
  f.n = n;
  f.permutation = std::move(perm);
  f.truth_table = wire1_truth_table(f.permutation, n);
  bool is_id = true;
  for (std::size_t i = 0; i < f.permutation.size(); ++i) is_id &= f.permutation[i] == static_cast<int>(i);
  if (is_id) f.kind = Kind::kIdentity;
  return f;
}

std::string kind_to_string(FunctionDescriptor::Kind kind) {
  switch (kind) {
    case FunctionDescriptor::Kind::kIdentity: return "identity";
    case FunctionDescriptor::Kind::kXorShift: return "xor-shift";
    case FunctionDescriptor::Kind::kReversibleCircuit: return "reversible-circuit";
  }
  return "unknown";
}

QheScheme::QheScheme(std::string name_, int n_, int qubits_k_, int qubits_c_, int qubits_e_, Mat enc_,
                     std::vector<FunctionDescriptor> permissible_, std::vector<qmat::QuantumChannel> eval_,
                     qmat::QuantumChannel dec_)
    : name(std::move(name_)),
      n(n_),
      qubits_m(n_),
      qubits_k(qubits_k_),
      qubits_c(qubits_c_),
      qubits_e(qubits_e_),
      enc(std::move(enc_)),
      permissible(std::move(permissible_)),
      eval(std::move(eval_)),
      dec(std::move(dec_)) {
  if (n < 1) throw std::invalid_argument("QheScheme: n must be >= 1");
  if (qubits_k > qubits_c)
    throw std::invalid_argument("QheScheme: key register larger than ciphertext register");
  long out_dim = dim_k() * dim_c();
  if (out_dim > qmat::kMaxTotalDim)
    throw std::invalid_argument("QheScheme: key+ciphertext dimension exceeds the cap");
  if (enc.rows() != out_dim || enc.cols() != dim_m())
    throw std::invalid_argument("QheScheme: encryption matrix shape mismatch");
  if ((enc.adjoint() * enc - Mat::Identity(dim_m(), dim_m())).cwiseAbs().maxCoeff() > tol::kChannel)
    throw std::invalid_argument("QheScheme: encryption is not an isometry");
  if (permissible.empty() || permissible.size() != eval.size())
    throw std::invalid_argument("QheScheme: permissible/eval catalog mismatch");
  for (const auto& f : permissible)
    if (f.n != n) throw std::invalid_argument("QheScheme: descriptor arity mismatch");
  for (const auto& ch : eval) {
    if (dims_product(ch.in_dims()) != dim_c() || dims_product(ch.out_dims()) != dim_e())
      throw std::invalid_argument("QheScheme: eval channel register mismatch");
  }
  if (dims_product(dec.in_dims()) != dim_k() * dim_e() || dims_product(dec.out_dims()) != dim_m())
    throw std::invalid_argument("QheScheme: dec channel register mismatch");
}

qmat::PureState encrypt(const QheScheme& s, const std::string& x_bits) {
  if (static_cast<int>(x_bits.size()) != s.n)
    throw std::invalid_argument("encrypt: plaintext length mismatch");
  long x = bits_to_index(x_bits);
  return qmat::PureState({static_cast<int>(s.dim_k()), static_cast<int>(s.dim_c())}, s.enc.col(x));
}

CorrectnessReport check_correctness(const QheScheme& s) {
  if (s.n > 3) throw std::invalid_argument("check_correctness: exhaustive check limited to n <= 3");
  std::vector<int> full_dims = {static_cast<int>(s.dim_k()), static_cast<int>(s.dim_c())};
  for (long x = 0; x < s.dim_m(); ++x) {
    std::string xs = index_to_bits(x, s.n);
    qmat::DensityMatrix rho = encrypt(s, xs).to_density();
    for (std::size_t fi = 0; fi < s.permissible.size(); ++fi) {
      qmat::QuantumChannel ext = qmat::extend_to_register(s.eval[fi], full_dims, 1);
      qmat::DensityMatrix evaluated = qmat::apply_channel(ext, rho);
      qmat::DensityMatrix decoded = qmat::apply_channel(
          s.dec, qmat::DensityMatrix(s.dec.in_dims(), evaluated.matrix()));
      long target = s.permissible[fi].permutation[x];
      double fid = decoded.matrix()(target, target).real();
      if (fid < 1.0 - kCorrectnessTol)
        return {false, CorrectnessWitness{xs, fi, fid}};
    }
  }
  return {true, std::nullopt};
}

SecurityReport audit_security(const QheScheme& s) {
  if (s.n > 3) throw std::invalid_argument("audit_security: exhaustive audit limited to n <= 3");
  std::vector<qmat::DensityMatrix> reductions;
  for (long x = 0; x < s.dim_m(); ++x)
    reductions.push_back(qmat::partial_trace(encrypt(s, index_to_bits(x, s.n)).to_density(), {1}));
  SecurityReport report;
  for (long x = 0; x < s.dim_m(); ++x)
    for (long y = x + 1; y < s.dim_m(); ++y) {
      double t = qmat::trace_distance(reductions[x], reductions[y]);
      std::string xs = index_to_bits(x, s.n), ys = index_to_bits(y, s.n);
      report.pairs.emplace_back(xs, ys, t);
      if (t >= report.epsilon) {
        report.epsilon = t;
        report.argmax = {xs, ys};
      }
    }
  return report;
}

namespace {

// Shared pad-scheme builder: enc |x> = sum_k amp_k |k>_K |x ^ k>_C with the
// key register holding the coherent copy of the pad.
QheScheme make_pad_scheme(const std::string& name, int n, const std::vector<double>& key_amps) {
  long d = 1L << n;
  Mat enc = Mat::Zero(d * d, d);
  for (long x = 0; x < d; ++x)
    for (long k = 0; k < d; ++k) enc(k * d + (x ^ k), x) = key_amps[k];

  std::vector<FunctionDescriptor> permissible;
  std::vector<qmat::QuantumChannel> eval;
  for (long a = 0; a < d; ++a) {
    permissible.push_back(FunctionDescriptor::xor_shift(n, static_cast<std::uint64_t>(a)));
    eval.push_back(qmat::QuantumChannel::from_unitary(permutation_matrix(permissible.back().permutation),
                                                      {static_cast<int>(d)}));
  }

  Mat u = Mat::Zero(d * d, d * d);
  for (long k = 0; k < d; ++k)
    for (long e = 0; e < d; ++e) u(k * d + (e ^ k), k * d + e) = 1.0;
  qmat::QuantumChannel dec =
      qmat::unitary_then_keep(u, {static_cast<int>(d), static_cast<int>(d)}, {1});

  return QheScheme(name, n, n, n, n, std::move(enc), std::move(permissible), std::move(eval),
                   std::move(dec));
}

}  // namespace

QheScheme make_xor_otp(int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("make_xor_otp: n outside [1,3]");
  long d = 1L << n;
  std::vector<double> amps(d, 1.0 / std::sqrt(static_cast<double>(d)));
  return make_pad_scheme("xor-otp", n, amps);
}

QheScheme make_biased_pad(int n, double delta) {
  if (n < 1 || n > 3) throw std::invalid_argument("make_biased_pad: n outside [1,3]");
  if (delta < 0.0 || delta > 0.5) throw std::invalid_argument("make_biased_pad: delta outside [0,1/2]");
  long d = 1L << n;
  std::vector<double> amps(d);
  for (long k = 0; k < d; ++k) {
    int ones = popcount(k);
    double p = std::pow(0.5 - delta, ones) * std::pow(0.5 + delta, n - ones);
    amps[k] = std::sqrt(p);
  }
  QheScheme s = make_pad_scheme("biased-pad", n, amps);
  s.delta = delta;
  return s;
}

QheScheme make_qotp_pauli(int n) {
  if (n < 1 || n > 2) throw std::invalid_argument("make_qotp_pauli: n outside [1,2] (dimension cap)");
  long d = 1L << n;        // message / padded register
  long dk = d * d;         // key register holds (a, b)
  long dc = d * d;         // padded register + appended |0..0> register
  double scale = 1.0 / static_cast<double>(d);

  Mat enc = Mat::Zero(dk * dc, d);
  for (long a = 0; a < d; ++a)
    for (long b = 0; b < d; ++b) {
      Mat pad = pauli_pad(n, a, b);
      for (long y = 0; y < d; ++y)
        for (long c = 0; c < d; ++c) {
          Cplx amp = pad(c, y);
          if (amp != 0.0) enc(((a * d + b) * dc) + c * d + 0, y) = scale * amp;
        }
    }

  std::vector<FunctionDescriptor> permissible;
  std::vector<qmat::QuantumChannel> eval;
  for (long sft = 0; sft < d; ++sft) {
    permissible.push_back(FunctionDescriptor::xor_shift(n, static_cast<std::uint64_t>(sft)));
    Mat x_circuit = kron(permutation_matrix(permissible.back().permutation), Mat::Identity(d, d));
    eval.push_back(qmat::QuantumChannel::from_unitary(std::move(x_circuit), {static_cast<int>(dc)}));
  }

  // Dec: controlled un-pad Z^b X^a on the padded register, then keep it.
  Mat u = Mat::Zero(dk * dc, dk * dc);
  for (long a = 0; a < d; ++a)
    for (long b = 0; b < d; ++b) {
      Mat unpad = pauli_pad(n, 0, b) * pauli_pad(n, a, 0);
      for (long c = 0; c < d; ++c)
        for (long c2 = 0; c2 < d; ++c2) {
          if (unpad(c2, c) == 0.0) continue;
          for (long g = 0; g < d; ++g)
            u((a * d + b) * dc + c2 * d + g, (a * d + b) * dc + c * d + g) = unpad(c2, c);
        }
    }
  qmat::QuantumChannel dec =
      qmat::unitary_then_keep(u, {static_cast<int>(dk), static_cast<int>(d), static_cast<int>(d)}, {1})
          .with_dims({static_cast<int>(dk), static_cast<int>(dc)}, {static_cast<int>(d)});

  return QheScheme("qotp-pauli", n, 2 * n, 2 * n, 2 * n, std::move(enc), std::move(permissible),
                   std::move(eval), std::move(dec));
}

QheScheme make_plaintext(int n) {
  if (n < 1 || n > 2)
    throw std::invalid_argument("make_plaintext: n outside [1,2] (full reversible catalog)");
  long d = 1L << n;
  Mat enc = Mat::Identity(d, d);

  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<FunctionDescriptor> permissible;
  std::vector<qmat::QuantumChannel> eval;
  do {
    permissible.push_back(FunctionDescriptor::reversible(n, perm));
    eval.push_back(qmat::QuantumChannel::from_unitary(permutation_matrix(perm), {static_cast<int>(d)}));
  } while (std::next_permutation(perm.begin(), perm.end()));

  qmat::QuantumChannel dec(std::vector<Mat>{Mat::Identity(d, d)}, {1, static_cast<int>(d)},
                           {static_cast<int>(d)});
  return QheScheme("plaintext", n, 0, n, n, std::move(enc), std::move(permissible), std::move(eval),
                   std::move(dec));
}

QheScheme make_scheme(const std::string& name, int n, double delta) {
  if (name == "xor-otp") return make_xor_otp(n);
  if (name == "biased-pad") return make_biased_pad(n, delta);
  if (name == "qotp-pauli") return make_qotp_pauli(n);
  if (name == "plaintext") return make_plaintext(n);
  throw std::invalid_argument("make_scheme: unknown scheme '" + name +
                              "' (expected xor-otp|biased-pad|qotp-pauli|plaintext)");
}

std::vector<std::string> boolean_family(const QheScheme& s) {
  if (s.permissible.empty()) throw std::invalid_argument("boolean_family: empty catalog");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& f : s.permissible)
    if (seen.insert(f.truth_table).second) out.push_back(f.truth_table);
  return out;
}

nlohmann::json descriptor_to_json(const FunctionDescriptor& f) {
  return nlohmann::json{{"kind", kind_to_string(f.kind)},
                        {"n", f.n},
                        {"perm", f.permutation},
                        {"truth_table", f.truth_table}};
}

FunctionDescriptor descriptor_from_json(const nlohmann::json& j) {
  FunctionDescriptor f =
      FunctionDescriptor::reversible(j.at("n").get<int>(), j.at("perm").get<std::vector<int>>());
  if (j.contains("truth_table") && j.at("truth_table").get<std::string>() != f.truth_table)
    throw std::invalid_argument("descriptor_from_json: truth table inconsistent with permutation");
  return f;
}

nlohmann::json scheme_descriptor_to_json(const QheScheme& s) {
  nlohmann::json catalog = nlohmann::json::array();
  for (const auto& f : s.permissible) catalog.push_back(descriptor_to_json(f));
  return nlohmann::json{{"name", s.name},
                        {"n", s.n},
                        {"delta", s.delta},
                        {"qubits", {{"m", s.qubits_m}, {"k", s.qubits_k}, {"c", s.qubits_c}, {"e", s.qubits_e}}},
                        {"catalog", std::move(catalog)}};
}

QheScheme scheme_from_descriptor_json(const nlohmann::json& j) {
  std::string name = j.at("name").get<std::string>();
  int n = j.at("n").get<int>();
  double delta = j.value("delta", 0.0);
  QheScheme s = make_scheme(name, n, delta);
  if (j.contains("catalog")) {
    if (j.at("catalog").size() != s.permissible.size())
      throw std::invalid_argument("scheme_from_descriptor_json: catalog size mismatch");
    for (std::size_t i = 0; i < s.permissible.size(); ++i)
      if (!(descriptor_from_json(j.at("catalog")[i]) == s.permissible[i]))
        throw std::invalid_argument("scheme_from_descriptor_json: catalog entry mismatch");
  }
  return s;
}

}  // namespace qhelim::qhe
