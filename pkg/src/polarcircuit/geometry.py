"""Trace distance on the half-disk and its straight-line geodesic segments.

The trace distance between two states has the closed form

    d(rho, rho') = 1/2 sqrt(r^2 + r'^2 - 2 r r' cos(2phi - 2phi'))

while the optimal-circuit geodesics are the straight chords
r = 1 / (C3 cos phi + C4 sin phi) joining the reference and target points
in (x, y) = (r cos phi, r sin phi) coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .states import DensityState, canonical_angle, wrap_half_pi

__all__ = [
    "GeodesicSegment",
    "trace_distance",
    "equal_r_distance",
    "geodesic_between",
    "geodesic_phi_at_r",
]

ENDPOINT_TOL = 1e-10
RANGE_SLACK = 1e-12


def trace_distance(s1: DensityState, s2: DensityState) -> float:
    """Half the Euclidean distance between the points (r, 2phi)."""
    return 0.5 * math.sqrt(
        max(
            s1.r * s1.r
            + s2.r * s2.r
            - 2 * s1.r * s2.r * math.cos(2 * (s1.phi - s2.phi)),
            0.0,
        )
    )


def equal_r_distance(r: float, phi1: float, phi2: float) -> float:
    """Trace distance between states sharing the radial coordinate."""
    return r * abs(math.sin(phi1 - phi2))


def _point(s: DensityState) -> tuple[float, float]:
    return s.r * math.cos(s.phi), s.r * math.sin(s.phi)


@dataclass(frozen=True)
class GeodesicSegment:
    """Chord between reference and target states.

    For the degenerate radial case (equal angles) `radial` is set and the
    (c3, c4) coefficients are meaningless (nan).
    """

    c3: float
    c4: float
    ref_state: DensityState
    target_state: DensityState
    radial: bool = False

    def residual(self, s: DensityState) -> float:
        """|r (C3 cos phi + C4 sin phi) - 1| at a state."""
        if self.radial:
            return abs(wrap_half_pi(s.phi - self.ref_state.phi))
        return abs(s.r * (self.c3 * math.cos(s.phi) + self.c4 * math.sin(s.phi)) - 1.0)

    @property
    def r_range(self) -> tuple[float, float]:
        lo = min(self.ref_state.r, self.target_state.r)
        hi = max(self.ref_state.r, self.target_state.r)
        return lo, hi


def geodesic_between(ref: DensityState, target: DensityState) -> GeodesicSegment:
    """Construct the chord joining two states.

    Requires positive radii and, for the non-degenerate case, strictly
    monotone r along the chord so that angle lookup by r is well defined.
    """
    if ref.r <= 0.0 or target.r <= 0.0:
        raise ValueError("geodesic endpoints must have positive r")
    dphi = wrap_half_pi(target.phi - ref.phi)
    if abs(math.sin(target.phi - ref.phi)) < 1e-14 or dphi == 0.0:
        # collinear with the origin: a radial segment at constant angle
        return GeodesicSegment(math.nan, math.nan, ref, target, radial=True)
    denom = target.r * ref.r * math.sin(target.phi - ref.phi)
    c3 = (target.r * math.sin(target.phi) - ref.r * math.sin(ref.phi)) / denom
    c4 = (-target.r * math.cos(target.phi) + ref.r * math.cos(ref.phi)) / denom
    seg = GeodesicSegment(c3, c4, ref, target)
    for s in (ref, target):
        if seg.residual(s) > ENDPOINT_TOL:
            raise ValueError("geodesic endpoints fail the chord equation")
    # monotone r: d(r^2)/ds must keep one sign along the chord
    xr, yr = _point(ref)
    xt, yt = _point(target)
    dx, dy = xt - xr, yt - yr
    d0 = xr * dx + yr * dy
    d1 = xt * dx + yt * dy
    if d0 * d1 <= 0.0:
        raise ValueError("r is not monotone along the chord; angle lookup undefined")
    return seg


def geodesic_phi_at_r(seg: GeodesicSegment, r: float) -> float:
    """Angle of the unique segment point with radial coordinate r.

    Solved as the chord-circle intersection P(s) = P_ref + s (P_tgt - P_ref),
    |P(s)| = r, keeping the root with s in [0, 1]; ties break toward the
    smaller s.
    """
    if seg.radial:
        return seg.ref_state.phi
    lo, hi = seg.r_range
    if not (lo - RANGE_SLACK <= r <= hi + RANGE_SLACK):
        raise ValueError(f"r={r} outside segment range [{lo}, {hi}]")
    xr, yr = _point(seg.ref_state)
    xt, yt = _point(seg.target_state)
    dx, dy = xt - xr, yt - yr
    aa = dx * dx + dy * dy
    bb = 2 * (xr * dx + yr * dy)
    cc = xr * xr + yr * yr - r * r
    disc = bb * bb - 4 * aa * cc
    if disc < 0.0:
        if disc < -1e-20:
            raise ValueError("no chord point at this radial coordinate")
        disc = 0.0
    sq = math.sqrt(disc)
    roots = sorted(((-bb - sq) / (2 * aa), (-bb + sq) / (2 * aa)))
    slack = 1e-9
    for s in roots:
        if -slack <= s <= 1.0 + slack:
            x = xr + s * dx
            y = yr + s * dy
            return canonical_angle(math.atan2(y, x))
    raise ValueError("no chord point at this radial coordinate")
