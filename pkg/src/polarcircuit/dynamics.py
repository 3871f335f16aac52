"""Time evolution of half-disk states under the planar Lindblad system

    dphi/dt = alpha(t) sin 4phi - E(t)
    dr/dt   = r * (-2 alpha(t) cos 4phi - beta(t))

with beta > 0 and |2 alpha| <= beta (both decay rates non-negative).
Numerical integration is fixed-step classical RK4 on (phi, ln r), which
keeps r strictly positive and makes the radial equation linear in the
integrand.  Closed-form solutions are provided for the constant-coefficient
cases (constant E with E^2 > alpha^2 or E^2 < alpha^2, E = 0, alpha = 0)
and for the driving that freezes phi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad

from .states import DensityState, canonical_angle, make_state, rotate_state, wrap_half_pi

__all__ = [
    "GklsParams",
    "Trajectory",
    "gkls_rhs",
    "integrate",
    "analytic_phi_strong_drive",
    "analytic_phi_weak_drive",
    "analytic_phi_zero_energy",
    "constant_phi_drive",
    "constant_rate_params",
    "closed_rotation_evolution",
]

DEFAULT_DT = 1e-3
R_UNDERFLOW = 1e-300
_MAX_LOG = 350.0  # ~ half of log(float max); caps exp arguments


def _as_fn(v) -> Callable[[float], float]:
    return v if callable(v) else (lambda t, _v=float(v): _v)


@dataclass(frozen=True)
class GklsParams:
    """Coefficients alpha(t) = (h1-h3)/2, beta(t) = h1+h3, energy E(t).

    Each may be a constant or a callable of time.  Constants are validated
    at construction; callables are validated at every sampled time during
    integration.
    """

    alpha: float | Callable[[float], float] = 0.0
    beta: float | Callable[[float], float] = 2.0
    energy: float | Callable[[float], float] = -2.0

    def __post_init__(self):
        if not callable(self.beta):
            if not self.beta > 0.0:
                raise ValueError("beta must be positive")
            if not callable(self.alpha) and abs(2.0 * self.alpha) > self.beta:
                raise ValueError("|2 alpha| must not exceed beta")

    def alpha_at(self, t: float) -> float:
        return _as_fn(self.alpha)(t)

    def beta_at(self, t: float) -> float:
        return _as_fn(self.beta)(t)

    def energy_at(self, t: float) -> float:
        return _as_fn(self.energy)(t)

    def validate_at(self, t: float):
        a, b = self.alpha_at(t), self.beta_at(t)
        if not b > 0.0:
            raise ValueError(f"beta({t}) = {b} is not positive")
        if abs(2.0 * a) > b + 1e-12:
            raise ValueError(f"|2 alpha({t})| = {abs(2*a)} exceeds beta = {b}")


@dataclass(frozen=True)
class Trajectory:
    """Time-ordered samples of an integrated evolution."""

    t: np.ndarray
    r: np.ndarray
    phi: np.ndarray  # canonical, in [0, pi)
    dt: float
    params: GklsParams

    def __len__(self):
        return len(self.t)

    def state(self, i: int) -> DensityState:
        return DensityState(float(self.r[i]), float(self.phi[i]))

    @property
    def final_state(self) -> DensityState:
        return self.state(len(self) - 1)


def gkls_rhs(state: DensityState, t: float, p: GklsParams) -> tuple[float, float]:
    """Right-hand side (dphi/dt, dr/dt) of the dynamical system."""
    a, b, e = p.alpha_at(t), p.beta_at(t), p.energy_at(t)
    phi_dot = a * math.sin(4 * state.phi) - e
    r_dot = state.r * (-2 * a * math.cos(4 * state.phi) - b)
    return phi_dot, r_dot


def _rhs(t: float, phi: float, p: GklsParams) -> tuple[float, float]:
    """(dphi/dt, d ln r/dt) at unwrapped angle phi."""
    a, e, b = p.alpha_at(t), p.energy_at(t), p.beta_at(t)
    return a * math.sin(4 * phi) - e, -2 * a * math.cos(4 * phi) - b


def rk4_step(phi: float, lnr: float, t: float, dt: float, p: GklsParams) -> tuple[float, float]:
    """One classical RK4 step on (phi, ln r)."""
    k1p, k1l = _rhs(t, phi, p)
    k2p, k2l = _rhs(t + dt / 2, phi + dt / 2 * k1p, p)
    k3p, k3l = _rhs(t + dt / 2, phi + dt / 2 * k2p, p)
    k4p, k4l = _rhs(t + dt, phi + dt * k3p, p)
    return (
        phi + dt / 6 * (k1p + 2 * k2p + 2 * k3p + k4p),
        lnr + dt / 6 * (k1l + 2 * k2l + 2 * k3l + k4l),
    )


def check_depolarising(phi: float, t: float, p: GklsParams):
    """Assert the radial decay rate 2 alpha cos 4phi + beta is non-negative."""
    p.validate_at(t)
    decay = 2 * p.alpha_at(t) * math.cos(4 * phi) + p.beta_at(t)
    if decay < -1e-12:
        raise RuntimeError(f"radial decay rate negative ({decay}) at t={t}")


def integrate(
    s0: DensityState, p: GklsParams, t0: float, t1: float, dt: float = DEFAULT_DT
) -> Trajectory:
    """Fixed-step RK4 integration from t0 to t1; the final sample lands
    exactly on t1 (last step shortened)."""
    if t1 < t0:
        raise ValueError("t1 must not precede t0")
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    phi = s0.phi
    lnr = math.log(s0.r) if s0.r > 0.0 else -math.inf
    ts, phis, lnrs = [t0], [phi], [lnr]
    t = t0
    while t < t1 - 1e-15 * max(1.0, abs(t1)):
        step = min(dt, t1 - t)
        check_depolarising(phi, t, p)
        phi, lnr = rk4_step(phi, lnr, t, step, p)
        t = min(t + step, t1)
        if s0.r > 0.0 and lnr < math.log(R_UNDERFLOW):
            raise FloatingPointError(f"r underflowed below {R_UNDERFLOW} at t={t}")
        ts.append(t)
        phis.append(phi)
        lnrs.append(lnr)
    r = np.exp(np.array(lnrs))
    phi_canon = np.array([canonical_angle(x) for x in phis])
    return Trajectory(np.array(ts), r, phi_canon, dt, p)


def _phase_from_components(sin2: float, cos2: float, phi0: float, s20: float, c20: float) -> float:
    """Reduce a (sin 2phi, cos 2phi)-proportional pair to a canonical angle,
    fixing the overall sign so the t=0 components align with phi0."""
    # sign chosen once from the initial data; both solution branches keep it
    if s20 * sin2 + c20 * cos2 < 0.0:
        sin2, cos2 = -sin2, -cos2
    return canonical_angle(0.5 * math.atan2(sin2, cos2))


def analytic_phi_strong_drive(phi0: float, alpha: float, energy: float, dt: float) -> float:
    """Closed-form phi(t0 + dt) for constant coefficients with E^2 > alpha^2.

    The solution is periodic with period pi / (2 omega1), omega1 =
    sqrt(E^2 - alpha^2).  The branch of the arctangent form is fixed by
    continuity, realised here exactly through a two-argument phase.
    """
    if energy * energy <= alpha * alpha:
        raise ValueError("strong-drive solution requires E^2 > alpha^2")
    omega1 = math.sqrt(energy * energy - alpha * alpha)
    s20, c20 = math.sin(2 * phi0), math.cos(2 * phi0)
    c0 = math.atan2(-energy * s20 + alpha * c20, omega1 * c20)
    theta = 2 * omega1 * dt + c0
    sin2 = alpha * math.cos(theta) - omega1 * math.sin(theta)
    cos2 = energy * math.cos(theta)
    # initial components of the same parametrisation, for the sign choice
    sin2_0 = alpha * math.cos(c0) - omega1 * math.sin(c0)
    cos2_0 = energy * math.cos(c0)
    if sin2_0 * s20 + cos2_0 * c20 < 0.0:
        sin2, cos2 = -sin2, -cos2
    return canonical_angle(0.5 * math.atan2(sin2, cos2))


def analytic_phi_weak_drive(phi0: float, alpha: float, energy: float, dt: float) -> float:
    """Closed-form phi(t0 + dt) for constant coefficients with alpha^2 > E^2.

    gamma = sqrt(alpha^2 - E^2) acts as an attenuation constant: phi tends
    to the attracting root of alpha sin 4phi = E.  Initial data on either
    side of the repelling root select the coth or tanh family of the
    underlying Riccati equation; both are covered here.
    """
    if alpha * alpha <= energy * energy:
        raise ValueError("weak-drive solution requires alpha^2 > E^2")
    if energy == 0.0:
        raise ValueError("E = 0 is separable; use analytic_phi_zero_energy")
    gamma = math.sqrt(alpha * alpha - energy * energy)
    s20, c20 = math.sin(2 * phi0), math.cos(2 * phi0)
    # tan 2phi0 = alpha/E + (gamma/E) w0  =>  w0 = n0 / d0
    n0 = energy * s20 - alpha * c20
    d0 = gamma * c20
    if abs(n0) == abs(d0):  # exactly on a fixed ray
        return canonical_angle(phi0)
    if abs(n0) > abs(d0):  # coth branch (passes through cos 2phi = 0)
        c2 = 0.5 * math.log((n0 + d0) / (n0 - d0))
        psi = 2 * gamma * dt + c2
        m = math.exp(-2 * min(abs(psi), _MAX_LOG))
        ch = 1.0 + m
        sh = (1.0 - m) if psi >= 0.0 else -(1.0 - m)
        sin2 = alpha * sh + gamma * ch
        cos2 = energy * sh
        m0 = math.exp(-2 * min(abs(c2), _MAX_LOG))
        ch0 = 1.0 + m0
        sh0 = (1.0 - m0) if c2 >= 0.0 else -(1.0 - m0)
        sin2_0 = alpha * sh0 + gamma * ch0
        cos2_0 = energy * sh0
    else:  # tanh branch (cos 2phi never vanishes)
        c2 = 0.5 * math.log((d0 + n0) / (d0 - n0))
        psi = 2 * gamma * dt + c2
        m = math.exp(-2 * min(abs(psi), _MAX_LOG))
        ch = 1.0 + m
        sh = (1.0 - m) if psi >= 0.0 else -(1.0 - m)
        sin2 = alpha * ch + gamma * sh
        cos2 = energy * ch
        m0 = math.exp(-2 * min(abs(c2), _MAX_LOG))
        ch0 = 1.0 + m0
        sh0 = (1.0 - m0) if c2 >= 0.0 else -(1.0 - m0)
        sin2_0 = alpha * ch0 + gamma * sh0
        cos2_0 = energy * ch0
    if sin2_0 * s20 + cos2_0 * c20 < 0.0:
        sin2, cos2 = -sin2, -cos2
    return canonical_angle(0.5 * math.atan2(sin2, cos2))


def analytic_phi_zero_energy(phi0: float, alpha: float, dt: float) -> float:
    """Closed-form phi(t0 + dt) for E = 0, alpha != 0.

    The separable equation dphi/dt = alpha sin 4phi gives
    tan 2phi(t) = tan 2phi0 * exp(4 alpha dt), quadrant-preserving.
    """
    if alpha == 0.0:
        return canonical_angle(phi0)
    s20, c20 = math.sin(2 * phi0), math.cos(2 * phi0)
    g = math.exp(min(4 * alpha * dt, _MAX_LOG))
    # cos 2phi never changes sign; scale to avoid overflow for large g
    if g > 1.0:
        sin2, cos2 = s20, c20 / g
    else:
        sin2, cos2 = s20 * g, c20
    return canonical_angle(0.5 * math.atan2(sin2, cos2))


def constant_phi_drive(
    phi_ref: float, p: GklsParams
) -> tuple[Callable[[float], float], Callable[..., float]]:
    """Driving E(t) = alpha(t) sin 4phi_ref that freezes phi, and the
    resulting radial profile r(t) = r_ref * exp(-int 2 alpha cos 4phi_ref + beta).

    The returned radial function has signature radial(t, r_ref=1.0) with
    time measured from the reference instant.
    """
    s4, c4 = math.sin(4 * phi_ref), math.cos(4 * phi_ref)

    def energy_fn(t: float) -> float:
        return p.alpha_at(t) * s4

    constant = not (callable(p.alpha) or callable(p.beta))
    if constant:
        rate = 2 * float(p.alpha) * c4 + float(p.beta)

        def radial_fn(t: float, r_ref: float = 1.0) -> float:
            return r_ref * math.exp(-rate * t)

    else:

        def radial_fn(t: float, r_ref: float = 1.0) -> float:
            val, _ = quad(lambda u: 2 * p.alpha_at(u) * c4 + p.beta_at(u), 0.0, t)
            return r_ref * math.exp(-val)

    return energy_fn, radial_fn


def constant_rate_params(
    ref: DensityState, target: DensityState, t_ref: float, t_target: float
) -> tuple[float, float]:
    """Constant (E, beta) steering ref to target in the alpha = 0 regime.

    The angular difference uses the minimal representative mod pi.
    """
    if t_target <= t_ref:
        raise ValueError("target time must follow reference time")
    if target.r <= 0.0:
        raise ValueError("target r must be positive")
    if target.r >= ref.r:
        raise ValueError("target r must be strictly below reference r (beta > 0)")
    span = t_target - t_ref
    energy = wrap_half_pi(ref.phi - target.phi) / span
    beta = math.log(ref.r / target.r) / span
    return energy, beta


def closed_rotation_evolution(state: DensityState, energy_integral: float) -> DensityState:
    """Closed-system limit: a plane rotation by the integrated energy."""
    return rotate_state(state, energy_integral)
