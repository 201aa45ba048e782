# Copyright 2026 The qhelim Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Desk-scale toolkit for random access code and homomorphic-encryption
communication bounds: information-theoretic bound formulas, a seesaw code
optimizer, toy symmetric-key homomorphic schemes with security audits, and
the purification-alignment extraction that turns a scheme into a code."""

from qhelim._core import (
    QheScheme,
    QracInstance,
    ReductionResult,
    audit_security,
    binary_entropy,
    binary_entropy_inverse_upper,
    boolean_family,
    check_correctness,
    computational_basis_code,
    encrypt,
    extract_qrac,
    fano_gap,
    fidelity,
    holevo_chi,
    known_qrac_2to1,
    known_qrac_3to1,
    make_scheme,
    nayak_bound,
    partial_trace,
    perfect_security_bound,
    qhe_comm_bound,
    qrac_from_json,
    reversible_count_bits,
    run_scenario_json,
    seesaw_optimize,
    subset_bound,
    success_matrix,
    trace_distance,
    trace_lemma,
    verify_reduction,
    von_neumann_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "QheScheme",
    "QracInstance",
    "ReductionResult",
    "audit_security",
    "binary_entropy",
    "binary_entropy_inverse_upper",
    "boolean_family",
    "check_correctness",
    "computational_basis_code",
    "encrypt",
    "extract_qrac",
    "fano_gap",
    "fidelity",
    "holevo_chi",
    "known_qrac_2to1",
    "known_qrac_3to1",
    "make_scheme",
    "nayak_bound",
    "partial_trace",
    "perfect_security_bound",
    "qhe_comm_bound",
    "qrac_from_json",
    "reversible_count_bits",
    "run_scenario_json",
    "seesaw_optimize",
    "subset_bound",
    "success_matrix",
    "trace_distance",
    "trace_lemma",
    "verify_reduction",
    "von_neumann_entropy",
]
