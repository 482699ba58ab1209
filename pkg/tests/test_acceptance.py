"""End-to-end acceptance run: every scenario check passes at its pinned gate.

Each scenario is executed once per session; the expected table pins the
check ids, their tolerances, and the gate kind, so a silent tolerance
change in the scenario code fails here. The closure/product property
requirements are covered by the suites in test_properties.py.
"""

from __future__ import annotations

import pytest

from chernforms.scenarios import ScenarioConfig, run_scenario

# check_id -> (tolerance, gate)
EXPECTED = {
    "bott_r2": {
        "bott-beta-display": (1e-8, "rel"),
        "bott-integral-compact": (1e-6, "rel"),
        "bott-integral-gaussian": (1e-6, "rel"),
    },
    "tstar_s1": {
        "cylinder-beta-branches": (1e-8, "abs"),
        "cylinder-integral-compact": (1e-6, "rel"),
    },
    "product_c2": {
        "product-beta-display": (1e-7, "rel"),
        "product-b-forms-display": (1e-6, "rel"),
        "product-multiplicativity-witness": (1e-6, "abs"),
    },
    "rank2_thom": {
        "thom-fiber-integral-compact": (1e-6, "abs"),
        "thom-fiber-integral-gaussian": (1e-6, "abs"),
        "thom-pushforward-relative": (1e-6, "abs"),
        "rank2-closed-forms": (1e-9, "rel"),
        "rank2-gamma-closed-form": (1e-8, "rel"),
    },
    "rank2_riemann_roch": {
        "riemann-roch-character": (1e-9, "abs"),
        "riemann-roch-transgression": (1e-9, "abs"),
        "clifford-exp-closed-form": (1e-9, "abs"),
    },
    "appendix_bounds": {
        "volterra-agreement": (1e-8, "abs"),
        "norm-bound": (0.0, "abs"),
    },
    "s2_euler": {
        "sphere-euler-number": (1e-4, "rel"),
    },
}


@pytest.fixture(scope="module")
def results():
    config = ScenarioConfig(seed=0)
    return {name: run_scenario(name, config) for name in EXPECTED}


@pytest.mark.parametrize("scenario", sorted(EXPECTED))
def test_scenario_checks_pass(results, scenario):
    got = results[scenario]
    assert {r.check_id for r in got} == set(EXPECTED[scenario])
    for r in got:
        tol, gate = EXPECTED[scenario][r.check_id]
        assert r.tol == tol, r.check_id
        assert r.gate == gate, r.check_id
        err = r.abs_err if gate == "abs" else r.rel_err
        assert r.passed and err <= tol, (r.check_id, err, tol)


def test_norm_bound_has_zero_violations(results):
    (margin,) = [r for r in results["appendix_bounds"] if r.check_id == "norm-bound"]
    assert margin.abs_err <= 0.0
