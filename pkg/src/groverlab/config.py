"""Centralized numerical tolerances.

Every module pulls its comparison and bisection constants from the single
record below, so a reviewer can audit all numeric slack in one place.
All angles are double-precision radians throughout the package.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Absolute tolerances used across the package."""

    shape_identity: float = 1e-12        # sin^2(theta) vs t/N
    normalization: float = 1e-12         # t*k^2 + (N-t)*l^2 vs 1
    state_norm: float = 1e-10            # statevector norm after construction
    closed_form: float = 1e-10           # simulated vs closed-form amplitudes
    matrix_path: float = 1e-9            # fast diffusion vs explicit matrix product
    unitarity: float = 1e-10             # per-entry operator checks
    measure_norm: float = 1e-6           # norm slack accepted by measure()
    root_bisection: float = 1e-9         # stopping-index root, absolute in j
    constant_bisection: float = 1e-10    # z = tan(z/2) root, absolute in z


TOLERANCES = Tolerances()
