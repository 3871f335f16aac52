"""Acceptance gate: one checked criterion per test, each reporting a single
pass/fail line in the terminal summary (see conftest.py)."""

import math

import numpy as np
import pytest

from polarcircuit import circuit as ci
from polarcircuit import geometry as ge
from polarcircuit import states as st
from polarcircuit import verify
from polarcircuit.cli import main

CRITERION_LINES = []

SWEEP_DT = 5e-5

TABLE = {
    "a": (0.0, 1.0, math.pi / 6, 0.5),
    "b": (math.pi / 3, 1.0, math.pi / 2, 0.5),
    "c": (math.pi / 4, 1.0, math.pi / 12, 0.5),
    "d": (11 * math.pi / 12, 1.0, 3 * math.pi / 4, 0.5),
}

# (m, tol_m, n, tol_n) of the fitted power law log10 N_g = m + n log10 eps
TARGET_FITS = {
    "a": (-1.05, 0.20, -1.09, 0.10),
    "c": (-0.17, 0.20, -1.04, 0.10),
}


def record(num, name, ok, detail):
    status = "PASS" if ok else "FAIL"
    CRITERION_LINES.append(f"criterion {num} [{name}]: {status} ({detail})")
    assert ok, f"criterion {num} [{name}]: {detail}"


def table_config(key, epsilon=0.05, dt=SWEEP_DT):
    phi_r, r_r, phi_t, r_t = TABLE[key]
    return ci.CircuitConfig(
        st.make_state(r_r, phi_r), st.make_state(r_t, phi_t), epsilon=epsilon, dt=dt
    )


@pytest.fixture(scope="module")
def sweeps():
    return {
        key: ci.sweep_accuracy(table_config(key), ci.DEFAULT_EPS_GRID) for key in TABLE
    }


def test_criterion_1_power_law(sweeps):
    ok = True
    parts = []
    for key, (m_ref, tol_m, n_ref, tol_n) in TARGET_FITS.items():
        m, n = sweeps[key].fit
        ok = ok and abs(m - m_ref) <= tol_m and abs(n - n_ref) <= tol_n
        parts.append(f"{key}: m={m:.4f} (ref {m_ref}±{tol_m}), n={n:.4f} (ref {n_ref}±{tol_n})")
    record(1, "power-law reproduction", ok, "; ".join(parts))


def test_criterion_2_pair_degeneracy(sweeps):
    same_ab = sweeps["a"].rows == sweeps["b"].rows
    same_cd = sweeps["c"].rows == sweeps["d"].rows
    record(
        2,
        "pair degeneracy",
        same_ab and same_cd,
        f"(a)==(b): {same_ab}, (c)==(d): {same_cd} over {len(sweeps['a'].rows)} rows",
    )


def test_criterion_3_analytic_oracle():
    suite = verify.check_analytic_vs_rk4(seed=0, tol=1e-6, draws=50)
    ratio, ratio_ok = verify.check_rk4_convergence_ratio(13.0, 19.0)
    record(
        3,
        "analytic-oracle agreement",
        suite.passed and ratio_ok,
        f"sup-norm residual {suite.residual:.2e} (tol 1e-06), dt-halving error ratio "
        f"{ratio:.2f} (16±3)",
    )


def test_criterion_4_interaction_consistency():
    suite = verify.check_interaction_consistency(seed=0, tol=1e-12, draws=200)
    record(
        4,
        "interaction consistency",
        suite.passed,
        f"max residual {suite.residual:.2e} over 200 draws (tol 1e-12)",
    )


def test_criterion_5_delta_squared_scaling():
    suite = verify.check_infinitesimal_scaling(tol=0.1)
    record(
        5,
        "first-order identification scaling",
        suite.passed,
        f"worst |slope - 2| = {suite.residual:.2e} over delta in [1e-6, 1e-3] (tol 0.1)",
    )


def test_criterion_6_metric_equivalence():
    suite = verify.check_metric_equivalence(seed=0, tol=1e-12, draws=500)
    worst_endpoint = 0.0
    for phi_r, r_r, phi_t, r_t in TABLE.values():
        ref, target = st.make_state(r_r, phi_r), st.make_state(r_t, phi_t)
        seg = ge.geodesic_between(ref, target)
        worst_endpoint = max(worst_endpoint, seg.residual(ref), seg.residual(target))
    ok = suite.passed and worst_endpoint <= 1e-10
    record(
        6,
        "metric equivalence",
        ok,
        f"distance residual {suite.residual:.2e} over 500 pairs (tol 1e-12), "
        f"geodesic endpoint residual {worst_endpoint:.2e} (tol 1e-10)",
    )


def test_criterion_7_monotone_depolarisation():
    worst_dr = -math.inf
    min_gain = math.inf
    for key in TABLE:
        result = ci.run_circuit(table_config(key, epsilon=0.01, dt=1e-3))
        worst_dr = max(worst_dr, float(np.diff(result.trajectory.r).max()))
        gain = st.von_neumann_entropy(result.final_state) - st.von_neumann_entropy(
            table_config(key).ref_state
        )
        min_gain = min(min_gain, gain)
    suite = verify.check_monotone_depolarisation(seed=0, tol=1e-12)
    ok = worst_dr <= 0.0 and min_gain > 0.0 and suite.passed
    record(
        7,
        "monotone depolarisation",
        ok,
        f"max per-step dr {worst_dr:.2e} (<= 0), min entropy gain {min_gain:.3f} (> 0), "
        f"random-run residual {suite.residual:.2e}",
    )


def test_criterion_8_determinism(tmp_path):
    args = ["sweep", "--example", "a", "--eps-grid", "0.005:0.05:6", "--dt", "1e-3"]
    byte_equal = True
    for cmd, names in (
        (args, ("sweep.csv", "sweep.json", "sweep.svg")),
        (["verify"], ("verify.txt",)),
    ):
        out1 = tmp_path / (cmd[0] + "1")
        out2 = tmp_path / (cmd[0] + "2")
        assert main(cmd + ["--out", str(out1)]) == 0
        assert main(cmd + ["--out", str(out2)]) == 0
        for name in names:
            byte_equal = byte_equal and (out1 / name).read_bytes() == (out2 / name).read_bytes()
    record(
        8,
        "determinism",
        byte_equal,
        "verify and sweep reruns byte-identical (csv, json, svg, txt)",
    )
