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

import json
import math

import numpy as np
import pytest

import qhelim


def test_entropy_and_bounds():
    assert qhelim.binary_entropy(0.5) == pytest.approx(1.0)
    assert qhelim.binary_entropy(0.0) == 0.0
    assert qhelim.nayak_bound(2, 1.0) == pytest.approx(2.0)
    assert qhelim.subset_bound(4, 2, 1.0) == pytest.approx(qhelim.nayak_bound(2, 1.0))
    assert qhelim.qhe_comm_bound(2**4, 2, 0.0) == pytest.approx(4.0)
    assert qhelim.perfect_security_bound(24) == pytest.approx(math.log2(24))
    exact, asymptotic = qhelim.reversible_count_bits(2)
    assert exact == pytest.approx(math.log2(24))
    assert exact > asymptotic


def test_density_helpers_accept_numpy():
    rho = np.diag([0.75, 0.25]).astype(complex)
    assert qhelim.von_neumann_entropy(rho, [2]) == pytest.approx(qhelim.binary_entropy(0.25))
    sigma = np.diag([0.25, 0.75]).astype(complex)
    assert qhelim.trace_distance(rho, sigma, [2]) == pytest.approx(0.5)
    joint = np.kron(rho, sigma)
    back = qhelim.partial_trace(joint, [2, 2], [1])
    assert np.allclose(back, sigma)
    chi = qhelim.holevo_chi([rho, sigma], [0.5, 0.5], [2])
    assert 0.0 <= chi <= 1.0


def test_known_codes_and_tracer():
    code = qhelim.known_qrac_2to1()
    table, worst, average = qhelim.success_matrix(code)
    assert worst == pytest.approx(0.5 + 0.5 / math.sqrt(2), abs=1e-12)
    assert table.shape == (4, 2)
    report = qhelim.trace_lemma(code)
    assert report["in_regime"] and report["pass"]

    instance, history = qhelim.seesaw_optimize(2, 1, ["00", "01", "10", "11"], iterations=40, seed=3)
    assert all(b >= a - 1e-10 for a, b in zip(history, history[1:]))  # monotone
    _, worst2, avg2 = qhelim.success_matrix(instance)
    assert avg2 <= qhelim.binary_entropy_inverse_upper(0.5)

    round_tripped = qhelim.qrac_from_json(code.to_json())
    _, worst3, _ = qhelim.success_matrix(round_tripped)
    assert worst3 == pytest.approx(worst)


def test_scheme_audits_and_extraction():
    otp = qhelim.make_scheme("xor-otp", 2)
    assert qhelim.audit_security(otp)["epsilon"] == pytest.approx(0.0, abs=1e-12)
    assert qhelim.check_correctness(otp)["pass"]
    assert sorted(qhelim.boolean_family(otp)) == ["0011", "1100"]

    amps, dims = qhelim.encrypt(otp, "01")
    assert dims == [4, 4]
    assert np.abs(amps).sum() == pytest.approx(math.sqrt(len([a for a in amps if abs(a) > 0])), rel=1e-9)

    result = qhelim.extract_qrac(otp, "00")
    assert result.worst_success == pytest.approx(1.0, abs=1e-9)
    assert result.comm_qubits == 4
    assert result.max_chain_distance <= 1e-9
    verdict = qhelim.verify_reduction(result, "rigorous")
    assert verdict["pass"]

    biased = qhelim.make_scheme("biased-pad", 1, 0.25)
    assert qhelim.audit_security(biased)["epsilon"] == pytest.approx(0.5, abs=1e-9)


def test_scenario_runner_is_deterministic():
    scenario = json.dumps(
        {"id": "s", "kind": "qrac-optimize", "n": 2, "m": 1, "seeds": 3, "iterations": 20, "seed": 11}
    )
    a = qhelim.run_scenario_json(scenario)
    b = qhelim.run_scenario_json(scenario)
    assert a == b
    assert a.startswith("scenario_id,quantity,value,bound,slack,pass,mode")

    rows = json.loads(qhelim.run_scenario_json(json.dumps({"kind": "count", "n": 2}), format="json"))
    exact = [r for r in rows if r["quantity"] == "reversible_count_exact_bits"]
    assert exact and exact[0]["value"] == pytest.approx(math.log2(24))
