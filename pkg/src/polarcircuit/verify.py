"""Cross-module oracle suites behind the CLI `verify` subcommand.

Each suite compares an implementation route against an independent one
(closed forms vs RK4, closed forms vs 4x4 partial traces, the three trace
distance routes against each other, exact gate action vs the first-order
Lindblad identification) and reports the maximum residual observed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dynamics as dy
from . import geometry as ge
from . import polariser as po
from . import states as st

__all__ = [
    "SuiteResult",
    "check_analytic_vs_rk4",
    "check_interaction_consistency",
    "check_metric_equivalence",
    "check_infinitesimal_scaling",
    "check_monotone_depolarisation",
    "run_all",
    "format_report",
]


@dataclass(frozen=True)
class SuiteResult:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def _rand_state(rng) -> st.DensityState:
    return st.make_state(rng.uniform(0.0, 1.0), rng.uniform(0.0, math.pi))


def check_analytic_vs_rk4(seed: int = 0, tol: float = 1e-6, draws: int = 50) -> SuiteResult:
    """Both constant-E closed-form angle solutions against RK4 (dt = 1e-3)."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for k in range(draws):
        gap = rng.uniform(0.5, 3.0)
        phi0 = rng.uniform(0.0, math.pi)
        strong = k % 2 == 0
        if strong:
            alpha = rng.uniform(-2.0, 2.0)
            energy = math.copysign(abs(alpha) + gap, rng.uniform(-1, 1))
            window = min(3.0, math.pi / (2 * math.sqrt(energy**2 - alpha**2)))
        else:
            energy = math.copysign(rng.uniform(0.2, 1.5), rng.uniform(-1, 1))
            alpha = math.copysign(abs(energy) + gap, rng.uniform(-1, 1))
            window = 3.0
        beta = 2 * abs(alpha) + rng.uniform(0.5, 2.0)
        params = dy.GklsParams(alpha, beta, energy)
        traj = dy.integrate(st.make_state(1.0, phi0), params, 0.0, window, 1e-3)
        fn = dy.analytic_phi_strong_drive if strong else dy.analytic_phi_weak_drive
        for t, phi in zip(traj.t, traj.phi):
            err = abs(st.wrap_half_pi(fn(phi0, alpha, energy, t) - phi))
            worst = max(worst, err)
    return SuiteResult("analytic-vs-rk4", worst, tol)


def check_rk4_convergence_ratio(
    lo: float = 13.0, hi: float = 19.0
) -> tuple[float, bool]:
    """Sup-norm error ratio under dt halving for a fixed strong-drive case;
    4th-order convergence gives a ratio near 16."""
    alpha, energy, beta, phi0, span = 1.5, 4.0, 4.0, 0.7, 1.0
    params = dy.GklsParams(alpha, beta, energy)

    def sup_err(dt):
        traj = dy.integrate(st.make_state(1.0, phi0), params, 0.0, span, dt)
        return max(
            abs(st.wrap_half_pi(dy.analytic_phi_strong_drive(phi0, alpha, energy, t) - phi))
            for t, phi in zip(traj.t, traj.phi)
        )

    ratio = sup_err(0.05) / sup_err(0.025)
    return ratio, lo <= ratio <= hi


def check_interaction_consistency(
    seed: int = 0, tol: float = 1e-12, draws: int = 200
) -> SuiteResult:
    """Closed-form reduced states against 4x4 partial traces, operator
    orthogonality, and the Malus probabilities at r0 = 1."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        gate = po.PolariserGate(
            rng.uniform(0.0, math.pi),
            rng.uniform(-4.0, 4.0),
            rng.uniform(-4.0, 4.0),
            _rand_state(rng),
        )
        light = _rand_state(rng)
        u = po.evolution_operator(gate)
        worst = max(worst, float(np.abs(u @ u.T - np.eye(4)).max()))
        joint = po.joint_evolve(gate, light)
        worst = max(worst, abs(float(np.trace(joint)) - 1.0))
        worst = max(
            worst,
            float(
                np.abs(
                    st.to_matrix(po.light_after(gate, light))
                    - po.partial_trace_polariser(joint)
                ).max()
            ),
        )
        worst = max(
            worst,
            float(
                np.abs(
                    st.to_matrix(po.polariser_after(gate, light))
                    - po.partial_trace_light(joint)
                ).max()
            ),
        )
        pure = st.make_state(1.0, rng.uniform(0.0, math.pi))
        p_par, p_perp = po.born_probabilities(pure, gate.gamma)
        worst = max(
            worst,
            abs(p_par - math.cos(gate.gamma - pure.phi) ** 2),
            abs(p_perp - math.sin(gate.gamma - pure.phi) ** 2),
        )
    return SuiteResult("interaction-consistency", worst, tol)


def check_metric_equivalence(
    seed: int = 0, tol: float = 1e-12, draws: int = 500
) -> SuiteResult:
    """Closed-form, eigenvalue-sum and Stokes-form trace distances."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        s1, s2 = _rand_state(rng), _rand_state(rng)
        d_closed = ge.trace_distance(s1, s2)
        ev = np.linalg.eigvalsh(st.to_matrix(s1) - st.to_matrix(s2))
        d_eig = 0.5 * float(np.abs(ev).sum())
        v1, v2 = st.to_stokes(s1), st.to_stokes(s2)
        d_stokes = 0.5 * math.hypot(v1.xi1 - v2.xi1, v1.xi3 - v2.xi3)
        worst = max(worst, abs(d_closed - d_eig), abs(d_closed - d_stokes))
    return SuiteResult("metric-equivalence", worst, tol)


def check_infinitesimal_scaling(tol: float = 0.1) -> SuiteResult:
    """Log-log slope of the gate-vs-Lindblad residuals over delta in
    [1e-6, 1e-3]; second-order accuracy means slope 2."""
    deltas = np.logspace(-6.0, -3.0, 13)
    worst = 0.0
    # configurations with O(1) second-order coefficients, so the smallest
    # residuals stay above the double-precision floor
    for gamma, phi0 in [(2.6, 1.2), (0.7, 1.9), (1.9, 0.8)]:
        out = [po.infinitesimal_consistency(gamma, phi0, d) for d in deltas]
        for idx in (2, 3):
            err = np.array([o[idx] for o in out])
            slope = float(np.polyfit(np.log10(deltas), np.log10(err), 1)[0])
            worst = max(worst, abs(slope - 2.0))
    return SuiteResult("infinitesimal-scaling", worst, tol)


def check_monotone_depolarisation(seed: int = 0, tol: float = 1e-12) -> SuiteResult:
    """r never increases along sampled trajectories and the entropy of the
    final state exceeds the initial entropy."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(10):
        alpha = rng.uniform(-1.5, 1.5)
        beta = 2 * abs(alpha) + rng.uniform(0.2, 2.0)
        params = dy.GklsParams(alpha, beta, rng.uniform(-3.0, 3.0))
        s0 = st.make_state(rng.uniform(0.5, 1.0), rng.uniform(0.0, math.pi))
        traj = dy.integrate(s0, params, 0.0, 2.0, 1e-3)
        worst = max(worst, float(np.diff(traj.r).max()))
        gain = st.von_neumann_entropy(traj.final_state) - st.von_neumann_entropy(s0)
        if gain <= 0.0:
            worst = max(worst, abs(gain) + 1.0)
    return SuiteResult("monotone-depolarisation", worst, tol)


def run_all(seed: int = 0, tolerances: dict | None = None) -> list[SuiteResult]:
    tolerances = tolerances or {}

    def tol(name, default):
        return tolerances.get(name, default)

    results = [
        check_analytic_vs_rk4(seed, tol("analytic-vs-rk4", 1e-6)),
        check_interaction_consistency(seed, tol("interaction-consistency", 1e-12)),
        check_metric_equivalence(seed, tol("metric-equivalence", 1e-12)),
        check_infinitesimal_scaling(tol("infinitesimal-scaling", 0.1)),
        check_monotone_depolarisation(seed, tol("monotone-depolarisation", 1e-12)),
    ]
    ratio, _ = check_rk4_convergence_ratio()
    results.append(SuiteResult("rk4-order", abs(ratio - 16.0), tol("rk4-order", 3.0)))
    return results


def format_report(results: list[SuiteResult], seed: int) -> str:
    lines = [f"polarcircuit verify (seed={seed})"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} {r.name}: max residual {r.residual!r} (tol {r.tolerance!r})")
    overall = "PASS" if all(r.passed for r in results) else "FAIL"
    lines.append(f"overall: {overall}")
    return "\n".join(lines) + "\n"
