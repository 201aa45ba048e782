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

#include "qhelim/qrac.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace qhelim::qrac {

namespace {

const Mat& pauli_x() {
  static const Mat x = (Mat(2, 2) << 0, 1, 1, 0).finished();
  return x;
}
const Mat& pauli_y() {
  static const Mat y = (Mat(2, 2) << 0, Cplx(0, -1), Cplx(0, 1), 0).finished();
  return y;
}
const Mat& pauli_z() {
  static const Mat z = (Mat(2, 2) << 1, 0, 0, -1).finished();
  return z;
}

qmat::DensityMatrix bloch_state(double rx, double ry, double rz) {
  Mat rho = 0.5 * (Mat::Identity(2, 2) + rx * pauli_x() + ry * pauli_y() + rz * pauli_z());
  return qmat::DensityMatrix({2}, std::move(rho));
}

qmat::Povm axis_povm(const Mat& axis) {
  Mat i2 = Mat::Identity(2, 2);
  return qmat::Povm({0.5 * (i2 + axis), 0.5 * (i2 - axis)}, {2}, {"0", "1"});
}

void check_strings(int n, const std::vector<std::string>& strings) {
  if (strings.empty()) throw std::invalid_argument("QracInstance: F must be nonempty");
  std::set<std::string> seen;
  for (const auto& s : strings) {
    if (static_cast<int>(s.size()) != n)
      throw std::invalid_argument("QracInstance: string '" + s + "' is not of length " + std::to_string(n));
    for (char c : s)
      if (c != '0' && c != '1') throw std::invalid_argument("QracInstance: string '" + s + "' is not binary");
    if (!seen.insert(s).second) throw std::invalid_argument("QracInstance: duplicate string '" + s + "'");
  }
}

double success_entry(const qmat::Povm& decoder, const qmat::DensityMatrix& rho, char bit) {
  const Mat& effect = decoder.effects()[bit == '0' ? 0 : 1];
  return (effect * rho.matrix()).trace().real();
}

// Projector onto the strictly positive eigenspace.
Mat positive_projector(const Mat& hermitian) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (hermitian + hermitian.adjoint()));
  Mat proj = Mat::Zero(hermitian.rows(), hermitian.cols());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.0) proj += projector(es.eigenvectors().col(i));
  return proj;
}

std::vector<qmat::Povm> weighted_decoders(const std::vector<qmat::DensityMatrix>& encoder,
                                          const std::vector<std::string>& strings,
                                          const Eigen::MatrixXd* weights) {
  int n = static_cast<int>(strings[0].size());
  long dim = encoder[0].dim();
  std::vector<qmat::Povm> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    bool has0 = false, has1 = false;
    Mat delta = Mat::Zero(dim, dim);
    for (std::size_t x = 0; x < strings.size(); ++x) {
      double w = weights ? (*weights)(static_cast<Eigen::Index>(x), i) : 1.0;
      w /= static_cast<double>(strings.size());
      if (strings[x][i] == '0') {
        delta += w * encoder[x].matrix();
        has0 = true;
      } else {
        delta -= w * encoder[x].matrix();
        has1 = true;
      }
    }
    if (!has0 || !has1) {
      // Constant bit: answer it unconditionally.
      Mat i_d = Mat::Identity(dim, dim);
      Mat zero = Mat::Zero(dim, dim);
      out.emplace_back(has0 ? std::vector<Mat>{i_d, zero} : std::vector<Mat>{zero, i_d},
                       encoder[0].dims(), std::vector<std::string>{"0", "1"});
      continue;
    }
    Mat m0 = positive_projector(delta);
    Mat m1 = Mat::Identity(dim, dim) - m0;
    out.emplace_back(std::vector<Mat>{std::move(m0), std::move(m1)}, encoder[0].dims(),
                     std::vector<std::string>{"0", "1"});
  }
  return out;
}

struct RawSuccess {
  Eigen::MatrixXd table;
  double worst;
  double average;
};

RawSuccess raw_success(const std::vector<qmat::DensityMatrix>& encoder,
                       const std::vector<std::string>& strings,
                       const std::vector<qmat::Povm>& decoders) {
  int n = static_cast<int>(strings[0].size());
  Eigen::MatrixXd table(strings.size(), n);
  double worst = 1.0, total = 0.0;
  for (std::size_t x = 0; x < strings.size(); ++x)
    for (int i = 0; i < n; ++i) {
      double p = success_entry(decoders[i], encoder[x], strings[x][i]);
      table(static_cast<Eigen::Index>(x), i) = p;
      worst = std::min(worst, p);
      total += p;
    }
  return {std::move(table), worst, total / (strings.size() * n)};
}

nlohmann::json complex_matrix_to_json(const Mat& m) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json re_row = nlohmann::json::array(), im_row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re_row.push_back(m(r, c).real());
      im_row.push_back(m(r, c).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return nlohmann::json{{"re", std::move(re)}, {"im", std::move(im)}};
}

Mat complex_matrix_from_json(const nlohmann::json& j) {
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  Eigen::Index rows = static_cast<Eigen::Index>(re.size());
  Eigen::Index cols = rows > 0 ? static_cast<Eigen::Index>(re[0].size()) : 0;
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = Cplx(re[r][c].get<double>(), im[r][c].get<double>());
  return m;
}

}  // namespace

QracInstance::QracInstance(int n, int m, std::vector<std::string> strings,
                           std::vector<qmat::DensityMatrix> encoder, std::vector<qmat::Povm> decoders)
    : n_(n), m_(m), strings_(std::move(strings)), encoder_(std::move(encoder)), decoders_(std::move(decoders)) {
  if (n_ < 1 || m_ < 0) throw std::invalid_argument("QracInstance: bad n/m");
  check_strings(n_, strings_);
  if (encoder_.size() != strings_.size())
    throw std::invalid_argument("QracInstance: encoder table size mismatch");
  long dim = 1L << m_;
  for (const auto& rho : encoder_)
    if (rho.dim() != dim) throw std::invalid_argument("QracInstance: encoder state is not on 2^m dimensions");
  if (static_cast<int>(decoders_.size()) != n_)
    throw std::invalid_argument("QracInstance: need exactly n decoders");
  for (const auto& d : decoders_) {
    if (d.size() != 2) throw std::invalid_argument("QracInstance: decoders must be binary");
    if (dims_product(d.dims()) != dim) throw std::invalid_argument("QracInstance: decoder dimension mismatch");
  }
  // Subset bound sanity check (holds for every valid instance in the Fano
  // regime; a violation means the data is not a valid code).
  RawSuccess s = raw_success(encoder_, strings_, decoders_);
  if (s.worst >= 0.5) {
    double bound = std::log2(static_cast<double>(strings_.size())) - n_ * bounds::binary_entropy(s.worst);
    if (m_ < bound - tol::kSlack)
      throw std::invalid_argument("QracInstance: subset bound violated (m = " + std::to_string(m_) +
                                  " < " + std::to_string(bound) + ")");
  }
}

SuccessMatrix success_matrix(const QracInstance& q) {
  RawSuccess s = raw_success(q.encoder(), q.strings(), q.decoders());
  return {std::move(s.table), s.worst, s.average};
}

QracInstance known_qrac_2to1() {
  double r = 1.0 / std::sqrt(2.0);
  std::vector<std::string> strings = {"00", "01", "10", "11"};
  std::vector<qmat::DensityMatrix> encoder;
  for (const auto& s : strings) {
    double sx = s[0] == '0' ? r : -r;
    double sz = s[1] == '0' ? r : -r;
    encoder.push_back(bloch_state(sx, 0.0, sz));
  }
  return QracInstance(2, 1, strings, encoder, {axis_povm(pauli_x()), axis_povm(pauli_z())});
}

QracInstance known_qrac_3to1() {
  double r = 1.0 / std::sqrt(3.0);
  std::vector<std::string> strings;
  std::vector<qmat::DensityMatrix> encoder;
  for (int v = 0; v < 8; ++v) {
    std::string s = {char('0' + ((v >> 2) & 1)), char('0' + ((v >> 1) & 1)), char('0' + (v & 1))};
    strings.push_back(s);
    encoder.push_back(bloch_state(s[0] == '0' ? r : -r, s[1] == '0' ? r : -r, s[2] == '0' ? r : -r));
  }
  return QracInstance(3, 1, strings, encoder,
                      {axis_povm(pauli_x()), axis_povm(pauli_y()), axis_povm(pauli_z())});
}

QracInstance computational_basis_code(int n) {
  if (n < 1 || n > exact_log2(qmat::kMaxTotalDim))
    throw std::invalid_argument("computational_basis_code: n out of range");
  long dim = 1L << n;
  std::vector<std::string> strings;
  std::vector<qmat::DensityMatrix> encoder;
  for (long v = 0; v < dim; ++v) {
    std::string s;
    for (int i = n - 1; i >= 0; --i) s.push_back('0' + ((v >> i) & 1));
    strings.push_back(s);
    encoder.emplace_back(std::vector<int>{static_cast<int>(dim)}, projector(basis_vector(dim, v)));
  }
  std::vector<qmat::Povm> decoders;
  for (int i = 0; i < n; ++i) {
    Mat m0 = Mat::Zero(dim, dim);
    for (long v = 0; v < dim; ++v)
      if (((v >> (n - 1 - i)) & 1) == 0) m0(v, v) = 1.0;
    decoders.emplace_back(std::vector<Mat>{m0, Mat::Identity(dim, dim) - m0},
                          std::vector<int>{static_cast<int>(dim)}, std::vector<std::string>{"0", "1"});
  }
  return QracInstance(n, n, std::move(strings), std::move(encoder), std::move(decoders));
}

qmat::Povm helstrom_povm(const qmat::DensityMatrix& s0, const qmat::DensityMatrix& s1) {
  if (s0.dims() != s1.dims()) throw std::invalid_argument("helstrom_povm: dimension mismatch");
  Mat m0 = positive_projector(s0.matrix() - s1.matrix());
  Mat m1 = Mat::Identity(s0.dim(), s0.dim()) - m0;
  return qmat::Povm({std::move(m0), std::move(m1)}, s0.dims(), {"0", "1"});
}

std::vector<qmat::Povm> optimal_decoders(const std::vector<qmat::DensityMatrix>& encoder,
                                         const std::vector<std::string>& strings) {
  if (strings.empty()) throw std::invalid_argument("optimal_decoders: empty F");
  if (encoder.size() != strings.size())
    throw std::invalid_argument("optimal_decoders: encoder table size mismatch");
  return weighted_decoders(encoder, strings, nullptr);
}

SeesawResult seesaw_optimize(int n, int m, std::vector<std::string> strings, int iterations,
                             std::uint64_t seed, int reweight_iterations, double reweight_beta) {
  if (m > kMaxSeesawQubits) throw std::invalid_argument("seesaw_optimize: m exceeds the dimension cap");
  if (iterations < 1) throw std::invalid_argument("seesaw_optimize: iterations must be >= 1");
  if (strings.empty()) throw std::invalid_argument("seesaw_optimize: empty F");
  check_strings(n, strings);

  long dim = 1L << m;
  Rng rng(seed);
  std::vector<qmat::DensityMatrix> encoder;
  encoder.reserve(strings.size());
  for (std::size_t x = 0; x < strings.size(); ++x)
    encoder.emplace_back(std::vector<int>{static_cast<int>(dim)},
                         projector(random_state_vector(static_cast<int>(dim), rng)));

  auto update_encoder = [&](const std::vector<qmat::Povm>& decoders, const Eigen::MatrixXd* weights) {
    for (std::size_t x = 0; x < strings.size(); ++x) {
      Mat gain = Mat::Zero(dim, dim);
      for (int i = 0; i < n; ++i) {
        double w = weights ? (*weights)(static_cast<Eigen::Index>(x), i) : 1.0;
        gain += w * decoders[i].effects()[strings[x][i] == '0' ? 0 : 1];
      }
      Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (gain + gain.adjoint()));
      encoder[x] = qmat::DensityMatrix({static_cast<int>(dim)},
                                       projector(es.eigenvectors().col(dim - 1)));
    }
  };

  std::vector<qmat::Povm> decoders = weighted_decoders(encoder, strings, nullptr);
  std::vector<double> avg_history, worst_history;
  double prev = -1.0;
  for (int t = 0; t < iterations; ++t) {
    update_encoder(decoders, nullptr);
    decoders = weighted_decoders(encoder, strings, nullptr);
    RawSuccess s = raw_success(encoder, strings, decoders);
    if (s.average < prev - 1e-10)
      throw std::logic_error("seesaw_optimize: average success decreased");
    prev = s.average;
    avg_history.push_back(s.average);
    worst_history.push_back(s.worst);
  }

  for (int t = 0; t < reweight_iterations; ++t) {
    RawSuccess s = raw_success(encoder, strings, decoders);
    Eigen::MatrixXd weights = (-reweight_beta * (s.table.array() - s.average)).exp().matrix();
    weights *= static_cast<double>(weights.size()) / weights.sum();
    update_encoder(decoders, &weights);
    decoders = weighted_decoders(encoder, strings, &weights);
    RawSuccess after = raw_success(encoder, strings, decoders);
    avg_history.push_back(after.average);
    worst_history.push_back(after.worst);
  }

  return {QracInstance(n, m, std::move(strings), std::move(encoder), std::move(decoders)),
          std::move(avg_history), std::move(worst_history)};
}

TraceReport trace_lemma(const QracInstance& q) {
  TraceReport report;
  SuccessMatrix s = success_matrix(q);
  report.p_worst = s.worst;
  report.log2_f = std::log2(static_cast<double>(q.strings().size()));
  report.in_regime = s.worst >= 0.5;

  long dim = q.encoder()[0].dim();
  double f_total = static_cast<double>(q.strings().size());

  auto mixture = [&](const std::vector<std::size_t>& members) {
    Mat avg = Mat::Zero(dim, dim);
    for (std::size_t idx : members) avg += q.encoder()[idx].matrix();
    avg /= static_cast<double>(members.size());
    return qmat::DensityMatrix(q.encoder()[0].dims(), std::move(avg));
  };

  std::vector<std::size_t> all(q.strings().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  report.s_sigma = bounds::von_neumann_entropy(mixture(all));

  double avg_singleton = 0.0;
  for (const auto& rho : q.encoder()) avg_singleton += bounds::von_neumann_entropy(rho) / f_total;
  report.avg_singleton_entropy = avg_singleton;

  double weighted_info = 0.0;
  report.min_holevo_slack = 0.0;
  report.min_fano_slack = 0.0;
  bool first = true;

  // Prefix recursion over levels k = 0..n-1.
  std::map<std::string, std::vector<std::size_t>> level = {{"", all}};
  for (int k = 0; k < q.n(); ++k) {
    std::map<std::string, std::vector<std::size_t>> next;
    for (const auto& [prefix, members] : level) {
      std::vector<std::size_t> zeros, ones;
      for (std::size_t idx : members)
        (q.strings()[idx][k] == '0' ? zeros : ones).push_back(idx);
      if (!zeros.empty()) next[prefix + "0"] = zeros;
      if (!ones.empty()) next[prefix + "1"] = ones;
      if (zeros.empty() || ones.empty()) continue;

      PrefixRecord rec;
      rec.prefix = prefix;
      rec.count = static_cast<int>(members.size());
      rec.count0 = static_cast<int>(zeros.size());
      rec.weight = members.size() / f_total;
      rec.w0 = static_cast<double>(zeros.size()) / members.size();
      qmat::DensityMatrix sigma0 = mixture(zeros);
      qmat::DensityMatrix sigma1 = mixture(ones);
      rec.entropy_mix = bounds::von_neumann_entropy(mixture(members));
      rec.entropy0 = bounds::von_neumann_entropy(sigma0);
      rec.entropy1 = bounds::von_neumann_entropy(sigma1);

      // Y^x: outcome of this instance's decoder at position k+1, measured
      // on a uniform sample of the prefix group.
      const qmat::Povm& decoder = q.decoders()[k];
      bounds::Ensemble branch({sigma0, sigma1}, {rec.w0, 1.0 - rec.w0});
      rec.mutual_info = bounds::mutual_information_cq(branch, decoder);
      rec.p_err = rec.w0 * (decoder.effects()[1] * sigma0.matrix()).trace().real() +
                  (1.0 - rec.w0) * (decoder.effects()[0] * sigma1.matrix()).trace().real();
      rec.p_err = std::clamp(rec.p_err, 0.0, 1.0);
      rec.holevo_slack = rec.entropy_mix - rec.w0 * rec.entropy0 - (1.0 - rec.w0) * rec.entropy1 -
                         rec.mutual_info;
      rec.fano_slack = rec.mutual_info - bounds::fano_gap(rec.w0, rec.p_err);

      weighted_info += rec.weight * rec.mutual_info;
      if (first) {
        report.min_holevo_slack = rec.holevo_slack;
        report.min_fano_slack = rec.fano_slack;
        first = false;
      } else {
        report.min_holevo_slack = std::min(report.min_holevo_slack, rec.holevo_slack);
        report.min_fano_slack = std::min(report.min_fano_slack, rec.fano_slack);
      }
      report.records.push_back(std::move(rec));
    }
    level = std::move(next);
  }

  report.entropy_bound = report.log2_f - q.n() * bounds::binary_entropy(std::min(s.worst, 1.0));
  report.expand_slack = report.s_sigma - avg_singleton - weighted_info;
  report.entropy_slack = report.s_sigma - report.entropy_bound;
  report.final_slack = q.m() - report.entropy_bound;
  if (report.in_regime) {
    report.pass = report.min_holevo_slack >= -tol::kSlack && report.min_fano_slack >= -tol::kSlack &&
                  report.expand_slack >= -tol::kSlack && report.entropy_slack >= -tol::kSlack &&
                  report.final_slack >= -tol::kSlack;
  }
  return report;
}

nlohmann::json to_json(const QracInstance& q) {
  nlohmann::json enc = nlohmann::json::array();
  for (const auto& rho : q.encoder()) enc.push_back(complex_matrix_to_json(rho.matrix()));
  nlohmann::json dec = nlohmann::json::array();
  for (const auto& povm : q.decoders()) {
    nlohmann::json effects = nlohmann::json::array();
    for (const auto& e : povm.effects()) effects.push_back(complex_matrix_to_json(e));
    dec.push_back(nlohmann::json{{"effects", std::move(effects)}});
  }
  return nlohmann::json{{"n", q.n()}, {"m", q.m()}, {"F", q.strings()},
                        {"encoder", std::move(enc)}, {"decoders", std::move(dec)}};
}

QracInstance qrac_from_json(const nlohmann::json& j) {
  int n = j.at("n").get<int>();
  int m = j.at("m").get<int>();
  auto strings = j.at("F").get<std::vector<std::string>>();
  std::vector<int> dims = {static_cast<int>(1L << m)};
  std::vector<qmat::DensityMatrix> encoder;
  for (const auto& e : j.at("encoder")) encoder.emplace_back(dims, complex_matrix_from_json(e));
  std::vector<qmat::Povm> decoders;
  for (const auto& d : j.at("decoders")) {
    std::vector<Mat> effects;
    for (const auto& e : d.at("effects")) effects.push_back(complex_matrix_from_json(e));
    decoders.emplace_back(std::move(effects), dims);
  }
  return QracInstance(n, m, std::move(strings), std::move(encoder), std::move(decoders));
}

}  // namespace qhelim::qrac
