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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "qhelim/qhe.hpp"
#include "qhelim/qrac.hpp"
#include "qhelim/reduction.hpp"
#include "qhelim/scenario.hpp"

namespace py = pybind11;
using namespace qhelim;

namespace {

bounds::BoundMode mode_arg(const std::string& mode) { return bounds::bound_mode_from_string(mode); }

py::dict trace_report_dict(const qrac::TraceReport& r) {
  py::dict d;
  d["in_regime"] = r.in_regime;
  d["p_worst"] = r.p_worst;
  d["s_sigma"] = r.s_sigma;
  d["log2_F"] = r.log2_f;
  d["entropy_bound"] = r.entropy_bound;
  d["min_holevo_slack"] = r.min_holevo_slack;
  d["min_fano_slack"] = r.min_fano_slack;
  d["expand_slack"] = r.expand_slack;
  d["entropy_slack"] = r.entropy_slack;
  d["final_slack"] = r.final_slack;
  d["records"] = r.records.size();
  d["pass"] = r.pass;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Desk-scale toolkit for random access code and homomorphic-encryption "
            "communication bounds";

  // ---- scalar bounds ----
  m.def("binary_entropy", &bounds::binary_entropy, py::arg("p"));
  m.def("binary_entropy_inverse_upper", &bounds::binary_entropy_inverse_upper, py::arg("h"));
  m.def("nayak_bound", &bounds::nayak_bound, py::arg("n"), py::arg("p"));
  m.def("subset_bound", &bounds::subset_bound, py::arg("f_size"), py::arg("n"), py::arg("p"));
  m.def(
      "qhe_comm_bound",
      [](std::uint64_t f_size, int n, double eps, const std::string& mode) {
        return bounds::qhe_comm_bound(f_size, n, eps, mode_arg(mode));
      },
      py::arg("f_size"), py::arg("n"), py::arg("eps"), py::arg("mode") = "paper");
  m.def("perfect_security_bound", &bounds::perfect_security_bound, py::arg("s_size"));
  m.def("fano_gap", &bounds::fano_gap, py::arg("q"), py::arg("p_err"));
  m.def(
      "reversible_count_bits",
      [](int n) {
        bounds::ReversibleCount c = bounds::reversible_count_bits(n);
        return py::make_tuple(c.exact_bits, c.asymptotic_bits);
      },
      py::arg("n"));

  // ---- densities and distances (numpy matrices + dims lists) ----
  m.def(
      "von_neumann_entropy",
      [](const Mat& rho, const std::vector<int>& dims) {
        return bounds::von_neumann_entropy(qmat::DensityMatrix(dims, rho));
      },
      py::arg("rho"), py::arg("dims"));
  m.def(
      "trace_distance",
      [](const Mat& a, const Mat& b, const std::vector<int>& dims) {
        return qmat::trace_distance(qmat::DensityMatrix(dims, a), qmat::DensityMatrix(dims, b));
      },
      py::arg("rho"), py::arg("sigma"), py::arg("dims"));
  m.def(
      "fidelity",
      [](const Mat& a, const Mat& b, const std::vector<int>& dims) {
        return qmat::fidelity(qmat::DensityMatrix(dims, a), qmat::DensityMatrix(dims, b));
      },
      py::arg("rho"), py::arg("sigma"), py::arg("dims"));
  m.def(
      "partial_trace",
      [](const Mat& rho, const std::vector<int>& dims, const std::vector<int>& keep) {
        return qmat::partial_trace(qmat::DensityMatrix(dims, rho), keep).matrix();
      },
      py::arg("rho"), py::arg("dims"), py::arg("keep"));
  m.def(
      "holevo_chi",
      [](const std::vector<Mat>& states, const std::vector<double>& probs,
         const std::vector<int>& dims) {
        std::vector<qmat::DensityMatrix> wrapped;
        for (const Mat& s : states) wrapped.emplace_back(dims, s);
        return bounds::holevo_chi(bounds::Ensemble(std::move(wrapped), probs));
      },
      py::arg("states"), py::arg("probabilities"), py::arg("dims"));

  // ---- random access codes ----
  py::class_<qrac::QracInstance>(m, "QracInstance")
      .def_property_readonly("n", &qrac::QracInstance::n)
      .def_property_readonly("m", &qrac::QracInstance::m)
      .def_property_readonly("strings", &qrac::QracInstance::strings)
      .def("encoder_state", [](const qrac::QracInstance& q, std::size_t i) {
        return q.encoder().at(i).matrix();
      })
      .def("to_json", [](const qrac::QracInstance& q) { return qrac::to_json(q).dump(); });
  m.def("qrac_from_json",
        [](const std::string& text) { return qrac::qrac_from_json(nlohmann::json::parse(text)); });
  m.def("known_qrac_2to1", &qrac::known_qrac_2to1);
  m.def("known_qrac_3to1", &qrac::known_qrac_3to1);
  m.def("computational_basis_code", &qrac::computational_basis_code, py::arg("n"));
  m.def("success_matrix", [](const qrac::QracInstance& q) {
    qrac::SuccessMatrix s = qrac::success_matrix(q);
    return py::make_tuple(s.table, s.worst, s.average);
  });
  m.def(
      "seesaw_optimize",
      [](int n, int m_qubits, const std::vector<std::string>& strings, int iterations,
         std::uint64_t seed, int reweight_iterations) {
        qrac::SeesawResult r =
            qrac::seesaw_optimize(n, m_qubits, strings, iterations, seed, reweight_iterations);
        return py::make_tuple(std::move(r.instance), r.average_history);
      },
      py::arg("n"), py::arg("m"), py::arg("strings"), py::arg("iterations") = 50,
      py::arg("seed") = 0, py::arg("reweight_iterations") = 0);
  m.def("trace_lemma",
        [](const qrac::QracInstance& q) { return trace_report_dict(qrac::trace_lemma(q)); });

  // ---- homomorphic schemes ----
  py::class_<qhe::QheScheme>(m, "QheScheme")
      .def_property_readonly("name", [](const qhe::QheScheme& s) { return s.name; })
      .def_property_readonly("n", [](const qhe::QheScheme& s) { return s.n; })
      .def_property_readonly("qubits",
                             [](const qhe::QheScheme& s) {
                               return py::make_tuple(s.qubits_m, s.qubits_k, s.qubits_c, s.qubits_e);
                             })
      .def("descriptor_json",
           [](const qhe::QheScheme& s) { return qhe::scheme_descriptor_to_json(s).dump(); });
  m.def("make_scheme", &qhe::make_scheme, py::arg("name"), py::arg("n"), py::arg("delta") = 0.0);
  m.def("audit_security", [](const qhe::QheScheme& s) {
    qhe::SecurityReport r = qhe::audit_security(s);
    py::dict d;
    d["epsilon"] = r.epsilon;
    d["argmax"] = py::make_tuple(r.argmax.first, r.argmax.second);
    return d;
  });
  m.def("check_correctness", [](const qhe::QheScheme& s) {
    qhe::CorrectnessReport r = qhe::check_correctness(s);
    py::dict d;
    d["pass"] = r.pass;
    if (r.witness) {
      d["witness_x"] = r.witness->x;
      d["witness_f_index"] = r.witness->f_index;
      d["witness_fidelity"] = r.witness->fidelity;
    }
    return d;
  });
  m.def("boolean_family", &qhe::boolean_family);
  m.def(
      "encrypt",
      [](const qhe::QheScheme& s, const std::string& x) {
        qmat::PureState psi = qhe::encrypt(s, x);
        return py::make_tuple(psi.amplitudes(), psi.dims());
      },
      py::arg("scheme"), py::arg("x_bits"));

  // ---- the extraction ----
  py::class_<reduction::ReductionResult>(m, "ReductionResult")
      .def_property_readonly("worst_success",
                             [](const reduction::ReductionResult& r) { return r.worst_success; })
      .def_property_readonly("average_success",
                             [](const reduction::ReductionResult& r) { return r.average_success; })
      .def_property_readonly("epsilon", [](const reduction::ReductionResult& r) { return r.epsilon; })
      .def_property_readonly("comm_qubits",
                             [](const reduction::ReductionResult& r) { return r.comm_qubits; })
      .def_property_readonly("truth_tables",
                             [](const reduction::ReductionResult& r) { return r.truth_tables; })
      .def_property_readonly("max_chain_distance",
                             [](const reduction::ReductionResult& r) { return r.max_chain_distance; })
      .def_property_readonly("instance",
                             [](const reduction::ReductionResult& r) { return r.instance; })
      .def("chain_csv", [](const reduction::ReductionResult& r) { return reduction::chain_csv(r); })
      .def("to_json", [](const reduction::ReductionResult& r) { return reduction::to_json(r).dump(); });
  m.def("extract_qrac", &reduction::extract_qrac, py::arg("scheme"), py::arg("base"));
  m.def(
      "verify_reduction",
      [](const reduction::ReductionResult& r, const std::string& mode) {
        bounds::BoundReport report = reduction::verify_reduction(r, mode_arg(mode));
        py::dict d;
        d["name"] = report.name;
        d["bound"] = report.bound;
        d["measured"] = report.measured;
        d["slack"] = report.slack();
        d["pass"] = report.pass();
        d["mode"] = bounds::to_string(report.mode);
        return d;
      },
      py::arg("result"), py::arg("mode") = "rigorous");

  // ---- scenarios ----
  m.def(
      "run_scenario_json",
      [](const std::string& text, const std::string& format) {
        cli::Scenario s = cli::scenario_from_json(nlohmann::json::parse(text), "scenario");
        std::vector<cli::ReportRow> rows = cli::run_scenario(s);
        if (format == "csv") return cli::render_csv(rows);
        return cli::rows_to_json(rows).dump(2) + "\n";
      },
      py::arg("scenario_json"), py::arg("format") = "csv");
}
