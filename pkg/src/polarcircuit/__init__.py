"""Open-system circuit complexity for linearly polarised light.

States are real 2x2 density matrices parameterised by a point (r, phi) of
the upper half unit disk.  Between polariser gates they evolve under a
planar Lindblad dynamical system; a geodesic-following controller counts
the gates needed to stay within a given accuracy of the optimal path.
"""

from .states import (
    DensityState,
    Observable,
    StokesVector,
    make_state,
    to_matrix,
    from_matrix,
    rotate_state,
    von_neumann_entropy,
    to_stokes,
    from_stokes,
    convex_combine,
    observable_matrix,
)
from .dynamics import (
    GklsParams,
    Trajectory,
    gkls_rhs,
    integrate,
    analytic_phi_strong_drive,
    analytic_phi_weak_drive,
    analytic_phi_zero_energy,
    constant_phi_drive,
    constant_rate_params,
    closed_rotation_evolution,
)
from .polariser import (
    PolariserGate,
    InteractionOutcome,
    evolution_operator,
    joint_evolve,
    born_probabilities,
    light_after,
    ideal_gate_apply,
    polariser_after,
    interact,
    diattenuation,
    infinitesimal_consistency,
)
from .geometry import (
    GeodesicSegment,
    trace_distance,
    equal_r_distance,
    geodesic_between,
    geodesic_phi_at_r,
)
from .circuit import (
    CircuitConfig,
    CircuitResult,
    SweepResult,
    deviation,
    run_circuit,
    sweep_accuracy,
    loglog_fit,
)

__version__ = "0.1.0"
