"""Closed-form analytics for amplitude-amplification search.

For a table of size N containing t marked entries, define the angle theta by
sin^2(theta) = t/N.  Starting from the uniform superposition, j iterations of
the search operator leave every marked index with amplitude

    k_j = sin((2j+1) theta) / sqrt(t)

and every unmarked index with amplitude

    l_j = cos((2j+1) theta) / sqrt(N - t),

so the success probability of measuring after j iterations is
sin^2((2j+1) theta).  Everything in this module is a pure function of
(N, t, j); no state vectors are built here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import TOLERANCES

__all__ = [
    "ProblemShape",
    "AmplitudePair",
    "StoppingPlan",
    "shape",
    "amplitudes",
    "success_probability",
    "optimal_iterations",
    "averaged_success",
    "trig_sum",
    "optimal_stopping",
    "z_constant",
]


@dataclass(frozen=True)
class ProblemShape:
    """Search-space geometry: table size N, solution count t, angle theta."""

    table_size: int
    solution_count: int
    angle: float

    @property
    def N(self) -> int:
        return self.table_size

    @property
    def t(self) -> int:
        return self.solution_count


@dataclass(frozen=True)
class AmplitudePair:
    """Common amplitude on each solution index (k) and non-solution index (l)."""

    k: float
    l: float


@dataclass(frozen=True)
class StoppingPlan:
    """Measure-early plan: iterate j_star times, measure, restart on failure."""

    j_star: int
    success_prob: float
    expected_iterations: float


def shape(table_size: int, solution_count: int) -> ProblemShape:
    """Build the (N, t, theta) geometry with sin^2(theta) = t/N.

    t = 0 gives theta = 0 and t = N gives theta = pi/2; both degenerate
    shapes are representable (the counting and search layers need them)
    even though some closed-form operations reject them.
    """
    N, t = int(table_size), int(solution_count)
    if N < 1:
        raise ValueError(f"table size must be >= 1, got {N}")
    if not 0 <= t <= N:
        raise ValueError(f"solution count must be in [0, {N}], got {t}")
    theta = math.asin(math.sqrt(t / N))
    return ProblemShape(N, t, theta)


def amplitudes(s: ProblemShape, j: int) -> AmplitudePair:
    """Closed-form amplitudes after j iterations from the uniform state.

    Requires t >= 1 (there is no solution amplitude otherwise).  For t = N
    there are no unmarked indices and l is 0 by convention.
    """
    if s.t == 0:
        raise ValueError("amplitudes undefined for t = 0 (no solution indices)")
    if j < 0:
        raise ValueError(f"iteration count must be >= 0, got {j}")
    phase = (2 * j + 1) * s.angle
    k = math.sin(phase) / math.sqrt(s.t)
    l = 0.0 if s.t == s.N else math.cos(phase) / math.sqrt(s.N - s.t)
    return AmplitudePair(k, l)


def success_probability(s: ProblemShape, j: int) -> float:
    """Probability sin^2((2j+1) theta) of measuring a solution after j iterations."""
    if j < 0:
        raise ValueError(f"iteration count must be >= 0, got {j}")
    return math.sin((2 * j + 1) * s.angle) ** 2


def optimal_iterations(s: ProblemShape) -> int:
    """Iteration count floor(pi / 4 theta), after which failure probability <= t/N."""
    if s.t == 0:
        raise ValueError("optimal iteration count undefined for t = 0")
    return int(math.floor(math.pi / (4 * s.angle)))


def averaged_success(s: ProblemShape, m: int) -> float:
    """Success probability when j is drawn uniformly from {0, ..., m-1}.

    Equals 1/2 - sin(4 m theta) / (4 m sin(2 theta)), and is at least 1/4
    whenever m >= 1/sin(2 theta).
    """
    if not 1 <= s.t < s.N:
        raise ValueError("averaged success requires 1 <= t < N (sin(2 theta) != 0)")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return 0.5 - math.sin(4 * m * s.angle) / (4 * m * math.sin(2 * s.angle))


def trig_sum(alpha: float, m: int) -> float:
    """Evaluate sum_{j=0}^{m-1} cos((2j+1) alpha) as sin(2 m alpha) / (2 sin alpha)."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if alpha % math.pi == 0.0 or math.sin(alpha) == 0.0:
        raise ValueError("alpha must not be a multiple of pi (sin(alpha) = 0)")
    return math.sin(2 * m * alpha) / (2 * math.sin(alpha))


def _expected_cost(s: ProblemShape, j: int) -> float:
    """Expected total iterations j / sin^2((2j+1) theta) of the restart strategy."""
    p = success_probability(s, j)
    return math.inf if p == 0.0 else j / p


def _stopping_root(theta: float) -> float | None:
    """Positive root of 4 theta j = tan((2j+1) theta) with (2j+1) theta < pi/2.

    On that branch g(j) = 4 theta j - tan((2j+1) theta) peaks where
    (2j+1) theta = pi/4 and then falls to -inf at the tangent singularity, so
    when the peak value pi/2 - 2 theta - 1 is positive the cost-minimizing
    root is bracketed between the peak and the singularity and g is strictly
    decreasing there.  Returns None when no such root exists (t/N too large
    for iterating to beat measuring almost immediately).
    """

    def g(j: float) -> float:
        return 4 * theta * j - math.tan((2 * j + 1) * theta)

    lo = (math.pi / (4 * theta) - 1) / 2
    if g(lo) <= 0:
        return None
    hi = (math.pi / (2 * theta) - 1) / 2
    hi -= TOLERANCES.root_bisection * max(1.0, hi)
    if g(hi) >= 0:  # pragma: no cover - g(hi) is hugely negative for valid theta
        raise ArithmeticError("stopping-root bracket failed")
    while hi - lo > TOLERANCES.root_bisection:
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def optimal_stopping(s: ProblemShape) -> StoppingPlan:
    """Integer iteration count minimizing expected total iterations with restarts.

    Solves the stationarity condition 4 theta j = tan((2j+1) theta) on the
    first branch by bisection (absolute tolerance 1e-9 in j), then compares
    the floor and ceiling integer candidates of the expected cost
    E(j) = j / sin^2((2j+1) theta) and keeps the cheaper one, ties going to
    the smaller index.  When the branch has no root (roughly t/N > 0.079)
    the plan degenerates to scanning the few candidates up to floor(pi / 4
    theta); zero-iteration classical sampling is deliberately excluded, a
    plan always performs at least one iteration per attempt.
    """
    if not 1 <= s.t < s.N:
        raise ValueError("optimal stopping requires 1 <= t < N")
    root = _stopping_root(s.angle)
    if root is None:
        candidates = range(1, max(1, optimal_iterations(s)) + 1)
    else:
        candidates = {max(1, math.floor(root)), max(1, math.ceil(root))}
    j_star = min(sorted(candidates), key=lambda j: _expected_cost(s, j))
    p = success_probability(s, j_star)
    return StoppingPlan(j_star, p, j_star / p)


def z_constant() -> float:
    """Root of z = tan(z/2) on (2, 3), about 2.33112.

    In the sparse-solution limit the optimal stopping index approaches
    (z/4) sqrt(N/t), its success probability approaches sin^2(z/2), and the
    expected iteration count approaches (z / (4 sin^2(z/2))) sqrt(N/t).
    """
    lo, hi = 2.0, 3.0
    while hi - lo > TOLERANCES.constant_bisection:
        mid = 0.5 * (lo + hi)
        if math.tan(mid / 2) - mid < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
