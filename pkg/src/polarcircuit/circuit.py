"""Geodesic-following gate placement and its gate-count scaling.

Between gates the light state drifts under the Lindblad system; whenever
its distance to the geodesic (compared at equal radial coordinate r)
exceeds the accuracy epsilon, an ideal polariser gate is fired at the
geodesic angle.  Sweeping epsilon yields the gate count N_g(epsilon),
fitted as a power law log10 N_g = m + n log10 epsilon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dynamics import DEFAULT_DT, GklsParams, Trajectory, check_depolarising, rk4_step
from .geometry import GeodesicSegment, geodesic_between, geodesic_phi_at_r, trace_distance
from .polariser import ideal_gate_apply
from .states import DensityState, canonical_angle, wrap_half_pi

__all__ = [
    "CircuitConfig",
    "GateEvent",
    "CircuitResult",
    "SweepResult",
    "DEFAULT_EPS_GRID",
    "deviation",
    "run_circuit",
    "sweep_accuracy",
    "loglog_fit",
]

MAX_STEPS = int(1e8)

DEFAULT_EPS_GRID = tuple(np.logspace(math.log10(5e-4), math.log10(5e-2), 24))


@dataclass(frozen=True)
class CircuitConfig:
    ref_state: DensityState
    target_state: DensityState
    params: GklsParams = GklsParams(0.0, 2.0, -2.0)
    epsilon: float = 0.05
    dt: float = DEFAULT_DT

    def __post_init__(self):
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be positive")
        if not self.target_state.r < self.ref_state.r:
            raise ValueError("target r must be below reference r")


@dataclass(frozen=True)
class GateEvent:
    t: float
    r_before: float
    phi_before: float
    gamma: float
    r_after: float


@dataclass(frozen=True)
class CircuitResult:
    gate_count: int
    gate_events: list[GateEvent]
    trajectory: Trajectory
    final_state: DensityState
    final_target_distance: float


@dataclass(frozen=True)
class SweepResult:
    rows: list[tuple[float, int]]  # (epsilon, N_g), epsilon descending
    fit: tuple[float, float] | None  # (m, n) of log10 N_g = m + n log10 eps


def deviation(state: DensityState, seg: GeodesicSegment) -> float:
    """Equal-r trace distance r |sin(phi - phi_geo(r))| to the geodesic."""
    phi_geo = geodesic_phi_at_r(seg, state.r)
    return state.r * abs(math.sin(state.phi - phi_geo))


def run_circuit(cfg: CircuitConfig) -> CircuitResult:
    """Evolve from the reference state, firing a gate at the geodesic angle
    whenever the deviation exceeds epsilon; stop once r reaches target r."""
    seg = geodesic_between(cfg.ref_state, cfg.target_state)
    r_stop = cfg.target_state.r
    phi = cfg.ref_state.phi
    lnr = math.log(cfg.ref_state.r)
    t = 0.0
    ts, rs, phis = [t], [cfg.ref_state.r], [phi]
    events: list[GateEvent] = []
    for _ in range(MAX_STEPS):
        check_depolarising(phi, t, cfg.params)
        phi, lnr = rk4_step(phi, lnr, t, cfg.dt, cfg.params)
        t += cfg.dt
        r = math.exp(lnr)
        state = DensityState(r, canonical_angle(phi))
        if r <= r_stop:
            ts.append(t)
            rs.append(r)
            phis.append(state.phi)
            break
        phi_geo = geodesic_phi_at_r(seg, r)
        dev = r * abs(math.sin(state.phi - phi_geo))
        if dev > cfg.epsilon:
            after = ideal_gate_apply(state, phi_geo)
            events.append(GateEvent(t, r, state.phi, phi_geo, after.r))
            state = after
            phi = after.phi
            lnr = math.log(after.r)
            r = after.r
            if r <= r_stop:
                ts.append(t)
                rs.append(r)
                phis.append(state.phi)
                break
        ts.append(t)
        rs.append(r)
        phis.append(state.phi)
    else:
        raise RuntimeError("gate-placement run exceeded the step budget")
    final = DensityState(rs[-1], phis[-1])
    traj = Trajectory(np.array(ts), np.array(rs), np.array(phis), cfg.dt, cfg.params)
    return CircuitResult(
        gate_count=len(events),
        gate_events=events,
        trajectory=traj,
        final_state=final,
        final_target_distance=trace_distance(final, cfg.target_state),
    )


def loglog_fit(rows: list[tuple[float, float]]) -> tuple[float, float]:
    """Least-squares fit of log10 N_g = m + n log10 epsilon; returns (m, n)."""
    if any(n < 1 for _, n in rows):
        raise ValueError("gate counts must be >= 1 for a log-log fit")
    if len(rows) < 2:
        raise ValueError("need at least 2 rows to fit")
    x = np.log10([e for e, _ in rows])
    y = np.log10([n for _, n in rows])
    n_slope, m_inter = np.polyfit(x, y, 1)
    return float(m_inter), float(n_slope)


def sweep_accuracy(cfg_base: CircuitConfig, epsilons) -> SweepResult:
    """Run the circuit per accuracy value; rows sorted by epsilon descending.

    The fit is attached when at least two rows have a nonzero gate count,
    otherwise it is left as None.
    """
    eps = [float(e) for e in epsilons]
    if not eps:
        raise ValueError("empty accuracy grid")
    if any(e <= 0.0 for e in eps):
        raise ValueError("accuracies must be positive")
    if len(set(eps)) != len(eps):
        raise ValueError("accuracies must be distinct")
    rows = []
    for e in sorted(eps, reverse=True):
        cfg = CircuitConfig(
            cfg_base.ref_state, cfg_base.target_state, cfg_base.params, e, cfg_base.dt
        )
        rows.append((e, run_circuit(cfg).gate_count))
    usable = [(e, n) for e, n in rows if n >= 1]
    fit = loglog_fit(usable) if len(usable) >= 2 else None
    return SweepResult(rows=rows, fit=fit)
