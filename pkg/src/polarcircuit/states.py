"""State algebra on the upper half unit disk.

A partially polarised state is a real symmetric 2x2 density matrix

    rho = 1/2 * [[1 + r cos 2phi, r sin 2phi],
                 [r sin 2phi,     1 - r cos 2phi]]

parameterised by polar coordinates (r, phi) with r in [0, 1] and phi in
[0, pi).  r = 1 is a pure state (rank-one projector), r = 0 the maximally
mixed state.  The matrix is pi-periodic in phi, so phi is always reduced
to the canonical range at construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DensityState",
    "Observable",
    "StokesVector",
    "make_state",
    "canonical_angle",
    "wrap_half_pi",
    "rotation",
    "projector",
    "to_matrix",
    "from_matrix",
    "rotate_state",
    "von_neumann_entropy",
    "to_stokes",
    "from_stokes",
    "convex_combine",
    "observable_matrix",
]

SYMMETRY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGEN_TOL = 1e-12
WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class DensityState:
    """Point (r, phi) of the upper half unit disk, phi canonical in [0, pi)."""

    r: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.r) and math.isfinite(self.phi)):
            raise ValueError("state coordinates must be finite")
        if not 0.0 <= self.r <= 1.0:
            raise ValueError(f"degree of polarisation r={self.r} outside [0, 1]")
        if not 0.0 <= self.phi < math.pi:
            raise ValueError(f"phi={self.phi} not reduced to [0, pi)")


@dataclass(frozen=True)
class Observable:
    """Symmetric 2x2 observable lambda_par*P_gamma + lambda_perp*P_{gamma+pi/2}."""

    lambda_par: float
    lambda_perp: float
    gamma: float


@dataclass(frozen=True)
class StokesVector:
    """Linear-polarisation Stokes coordinates; `a` is the circular degree,
    carried but fixed to 0 in this package."""

    xi1: float
    xi3: float
    a: float = 0.0


def canonical_angle(phi: float) -> float:
    """Reduce an angle to the canonical range [0, pi)."""
    phi = math.fmod(phi, math.pi)
    if phi < 0.0:
        phi += math.pi
    # fmod of values just below a multiple of pi can round back up to pi
    if phi >= math.pi:
        phi -= math.pi
    return phi


def wrap_half_pi(dphi: float) -> float:
    """Representative of an angle difference on the pi-circle in (-pi/2, pi/2]."""
    d = math.fmod(dphi, math.pi)
    if d > math.pi / 2:
        d -= math.pi
    elif d <= -math.pi / 2:
        d += math.pi
    return d


def make_state(r: float, phi: float) -> DensityState:
    """Construct a state, reducing phi mod pi."""
    if not (math.isfinite(r) and math.isfinite(phi)):
        raise ValueError("state coordinates must be finite")
    return DensityState(r, canonical_angle(phi))


def rotation(theta: float) -> np.ndarray:
    """Rotation matrix of the plane by angle theta."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def projector(angle: float) -> np.ndarray:
    """Orthogonal projector onto the direction with polar angle `angle`."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c * c, c * s], [c * s, s * s]])


def to_matrix(state: DensityState) -> np.ndarray:
    """The 2x2 density matrix of a state."""
    r, phi = state.r, state.phi
    c, s = r * math.cos(2 * phi), r * math.sin(2 * phi)
    return 0.5 * np.array([[1.0 + c, s], [s, 1.0 - c]])


def from_matrix(m: np.ndarray) -> DensityState:
    """Inverse of :func:`to_matrix` via eigendecomposition.

    The degenerate case r = 0 uses the convention phi = 0.
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    if abs(m[0, 1] - m[1, 0]) > SYMMETRY_TOL:
        raise ValueError("matrix is not symmetric")
    if abs(m[0, 0] + m[1, 1] - 1.0) > TRACE_TOL:
        raise ValueError("matrix trace is not 1")
    evals, evecs = np.linalg.eigh(0.5 * (m + m.T))
    if evals[0] < -EIGEN_TOL:
        raise ValueError("matrix has a negative eigenvalue")
    r = float(evals[1] - evals[0])
    if r <= 0.0:
        return DensityState(0.0, 0.0)
    v = evecs[:, 1]  # eigenvector of the larger eigenvalue
    phi = canonical_angle(math.atan2(v[1], v[0]))
    return DensityState(min(r, 1.0), phi)


def rotate_state(state: DensityState, theta: float) -> DensityState:
    """Rotate a state: R(theta) rho R(-theta) = rho_{r, phi+theta}."""
    return make_state(state.r, state.phi + theta)


def von_neumann_entropy(state: DensityState) -> float:
    """-Tr(rho ln rho) from the eigenvalues (1 +- r)/2, with 0 ln 0 = 0."""
    s = 0.0
    for lam in ((1.0 + state.r) / 2.0, (1.0 - state.r) / 2.0):
        if lam > 0.0:
            s -= lam * math.log(lam)
    return s


def to_stokes(state: DensityState) -> StokesVector:
    r, phi = state.r, state.phi
    return StokesVector(r * math.sin(2 * phi), r * math.cos(2 * phi), 0.0)


def from_stokes(v: StokesVector) -> DensityState:
    if v.a != 0.0:
        raise ValueError("circular polarisation (a != 0) is out of scope")
    r = math.hypot(v.xi1, v.xi3)
    if r > 1.0 + 1e-12:
        raise ValueError("Stokes vector norm exceeds 1")
    if r == 0.0:
        return DensityState(0.0, 0.0)
    phi = canonical_angle(0.5 * math.atan2(v.xi1, v.xi3))
    return DensityState(min(r, 1.0), phi)


def convex_combine(
    l1: float, s1: DensityState, l2: float, s2: DensityState
) -> DensityState:
    """Mixture l1*rho1 + l2*rho2, computed on the matrix representation."""
    if l1 < 0.0 or l2 < 0.0 or abs(l1 + l2 - 1.0) > WEIGHT_TOL:
        raise ValueError("weights must be non-negative and sum to 1")
    return from_matrix(l1 * to_matrix(s1) + l2 * to_matrix(s2))


def observable_matrix(obs: Observable) -> np.ndarray:
    """Spectral form lambda_par*P_gamma + lambda_perp*P_{gamma+pi/2}."""
    return obs.lambda_par * projector(obs.gamma) + obs.lambda_perp * projector(
        obs.gamma + math.pi / 2
    )
