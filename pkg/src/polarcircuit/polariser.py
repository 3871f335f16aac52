"""Von Neumann interaction between a polariser ancilla and the light state.

The polariser carries an observable A = lambda_par*P_gamma +
lambda_perp*P_{gamma+pi/2} acting on the light, and the completed
interaction is the orthogonal 4x4 operator

    U = R(lambda_par) (x) P_gamma + R(lambda_perp) (x) P_{gamma+pi/2}

on the product space, with the polariser as the left tensor factor and the
light as the right.  Closed forms for the reduced states after the
interaction are provided alongside the explicit 4x4 computation; the
partial trace is the authoritative cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import (
    DensityState,
    canonical_angle,
    convex_combine,
    make_state,
    projector,
    rotate_state,
    rotation,
    to_matrix,
    wrap_half_pi,
)

__all__ = [
    "PolariserGate",
    "InteractionOutcome",
    "evolution_operator",
    "joint_evolve",
    "partial_trace_polariser",
    "partial_trace_light",
    "born_probabilities",
    "light_after",
    "ideal_gate_apply",
    "polariser_after",
    "interact",
    "diattenuation",
    "infinitesimal_consistency",
]


@dataclass(frozen=True)
class PolariserGate:
    """Filter eigenangle gamma, eigenvalues (lambda_par, lambda_perp) and
    the ancilla state of the polariser itself."""

    gamma: float
    lambda_par: float
    lambda_perp: float
    ancilla: DensityState = DensityState(0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "gamma", canonical_angle(self.gamma))


@dataclass(frozen=True)
class InteractionOutcome:
    light_after: DensityState
    polariser_after: DensityState
    p_parallel: float
    p_perp: float


def evolution_operator(g: PolariserGate) -> np.ndarray:
    """The orthogonal 4x4 operator of the completed interaction."""
    return np.kron(rotation(g.lambda_par), projector(g.gamma)) + np.kron(
        rotation(g.lambda_perp), projector(g.gamma + math.pi / 2)
    )


def joint_evolve(g: PolariserGate, light: DensityState) -> np.ndarray:
    """U (ancilla (x) light) U^T on the 4-dimensional product space."""
    u = evolution_operator(g)
    joint = np.kron(to_matrix(g.ancilla), to_matrix(light))
    return u @ joint @ u.T


def partial_trace_polariser(joint: np.ndarray) -> np.ndarray:
    """Trace out the polariser (left) factor, leaving the light state."""
    return np.einsum("ikil->kl", joint.reshape(2, 2, 2, 2))


def partial_trace_light(joint: np.ndarray) -> np.ndarray:
    """Trace out the light (right) factor, leaving the polariser state."""
    return np.einsum("ikjk->ij", joint.reshape(2, 2, 2, 2))


def born_probabilities(light: DensityState, gamma: float) -> tuple[float, float]:
    """Probabilities of orientation along gamma and gamma + pi/2."""
    c = light.r * math.cos(2 * (gamma - light.phi))
    return (1.0 + c) / 2.0, (1.0 - c) / 2.0


def _ab(gamma: float, phi0: float, cos_delta: float) -> tuple[float, float]:
    zeta = 2 * (gamma - phi0)
    cz, sz = math.cos(zeta), math.sin(zeta)
    c2g, s2g = math.cos(2 * gamma), math.sin(2 * gamma)
    a = cz * c2g + cos_delta * sz * s2g
    b = cz * s2g - cos_delta * sz * c2g
    return a, b


def light_after(g: PolariserGate, light: DensityState) -> DensityState:
    """Closed-form reduced light state after the interaction.

    Independent of the ancilla state.  r' = r0 sqrt(a^2 + b^2) <= r0; the
    angle comes from tan 2phi' = b/a via the two-argument arctangent.
    """
    cos_delta = math.cos(g.lambda_par - g.lambda_perp)
    a, b = _ab(g.gamma, light.phi, cos_delta)
    r_new = light.r * math.hypot(a, b)
    if r_new == 0.0:
        return DensityState(0.0, 0.0)
    phi_new = canonical_angle(0.5 * math.atan2(b, a))
    return DensityState(min(r_new, 1.0), phi_new)


def ideal_gate_apply(light: DensityState, gamma: float) -> DensityState:
    """Ideal (Malus-limit) gate: phi' = gamma, r' = r0 |cos 2(gamma - phi0)|."""
    r_new = light.r * abs(math.cos(2 * (gamma - light.phi)))
    return make_state(r_new, gamma)


def polariser_after(g: PolariserGate, light: DensityState) -> DensityState:
    """Reduced polariser state after the interaction: the Born-weighted
    mixture of the ancilla rotated by lambda_par and by lambda_perp."""
    p_par, p_perp = born_probabilities(light, g.gamma)
    return convex_combine(
        p_par,
        rotate_state(g.ancilla, g.lambda_par),
        p_perp,
        rotate_state(g.ancilla, g.lambda_perp),
    )


def interact(g: PolariserGate, light: DensityState) -> InteractionOutcome:
    """Full interaction summary used by the CLI `gate` command."""
    p_par, p_perp = born_probabilities(light, g.gamma)
    return InteractionOutcome(
        light_after=light_after(g, light),
        polariser_after=polariser_after(g, light),
        p_parallel=p_par,
        p_perp=p_perp,
    )


def diattenuation(light_after_r: float) -> tuple[float, float]:
    """Diattenuation D = r' and extinction ratio (1 + r')/(1 - r').

    r' = 1 is the ideal polariser; its extinction ratio is reported as inf.
    """
    if not 0.0 <= light_after_r <= 1.0:
        raise ValueError("r' must lie in [0, 1]")
    d = light_after_r
    if d == 1.0:
        return 1.0, math.inf
    return d, (1.0 + d) / (1.0 - d)


def infinitesimal_consistency(
    gamma: float, phi0: float, delta: float
) -> tuple[float, float, float, float]:
    """Compare the exact gate action at coupling cos(lp - lq) = 1 - delta
    with its first-order identification as a Lindblad step of length delta.

    Returns (beta_eff, energy_eff, r_residual, phi_residual); both residuals
    are O(delta^2).  The identified energy is implemented verbatim from the
    expansion, which divides by sin(phi0).
    """
    if not 0.0 < delta <= 1e-3:
        raise ValueError("delta must lie in (0, 1e-3]")
    if abs(math.sin(phi0)) < 1e-6:
        raise ValueError("phi0 too close to a multiple of pi")
    zeta = 2 * (gamma - phi0)
    beta_eff = math.sin(zeta) ** 2
    energy_eff = (
        -math.sin(zeta)
        / (2 * math.sin(phi0))
        * (math.sin(2 * gamma - phi0) - math.cos(phi0) * math.sin(zeta))
    )
    # exact action at r0 = 1 with the coupling factor set to 1 - delta
    a, b = _ab(gamma, phi0, 1.0 - delta)
    r_exact = math.hypot(a, b)
    phi_exact = 0.5 * math.atan2(b, a)
    r_pred = math.exp(-delta * beta_eff)
    phi_pred = phi0 - delta * energy_eff
    return (
        beta_eff,
        energy_eff,
        abs(r_exact - r_pred),
        abs(wrap_half_pi(phi_exact - phi_pred)),
    )
