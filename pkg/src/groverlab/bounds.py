"""Query-count lower bounds and the inequalities behind them.

Any bounded-error oracle machine that finds the unique marked item of an
N-entry table with probability at least 1/2 must make at least
floor(sin(pi/8) sqrt(N)) oracle queries; with t marked items the bound is
floor(sin(pi/8) sqrt(floor(N/t))).  The iterate-and-measure strategy reaches
50 percent success after about (pi/8) sqrt(N/t) iterations, i.e.
(pi/4) sqrt(N/t) lookups at two lookups per iteration, so its lookup count
sits within a factor (pi/4)/sin(pi/8) of 2.05 of the bound.

proposition_checks exercises the two scalar/vector inequalities the bound
derivation rests on, on random complex instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from . import analytics
from .rng import as_generator

__all__ = [
    "BoundReport",
    "lower_bound_unique",
    "lower_bound_multi",
    "queries_for_majority",
    "compare_grover_to_bound",
    "proposition_checks",
]

SIN_PI_8 = math.sin(math.pi / 8)
ASYMPTOTIC_RATIO = (math.pi / 4) / SIN_PI_8  # about 2.0523


@dataclass(frozen=True)
class BoundReport:
    """Lookup lower bound vs the iterate-and-measure strategy's 50% cost."""

    N: int
    t: int
    lower_bound_queries: int
    grover_queries_50pct: float
    ratio: float | None
    degenerate: bool

    def to_record(self) -> dict:
        return asdict(self)


def lower_bound_unique(N: int) -> int:
    """floor(sin(pi/8) sqrt(N)) lookups needed for a unique marked item."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    return int(math.floor(SIN_PI_8 * math.sqrt(N)))


def lower_bound_multi(N: int, t: int) -> int:
    """floor(sin(pi/8) sqrt(floor(N/t))) lookups needed with t marked items."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if not 1 <= t <= N:
        raise ValueError(f"t must be in [1, {N}], got {t}")
    return int(math.floor(SIN_PI_8 * math.sqrt(N // t)))


def queries_for_majority(s: analytics.ProblemShape) -> int:
    """Smallest iteration count whose success probability reaches 1/2."""
    if s.t < 1:
        raise ValueError("majority threshold undefined for t = 0")
    j = 0
    while analytics.success_probability(s, j) < 0.5:
        j += 1
    return j


def compare_grover_to_bound(N: int, t: int) -> BoundReport:
    """Measure the strategy's 50%-success lookup cost against the bound.

    grover_queries_50pct counts two lookups per iteration.  A zero bound
    (tiny N/t) is flagged degenerate and the ratio reported as None.
    """
    s = analytics.shape(N, t)
    queries = 2.0 * queries_for_majority(s)
    bound = lower_bound_multi(N, t)
    degenerate = bound == 0
    ratio = None if degenerate else queries / bound
    return BoundReport(N, t, bound, queries, ratio, degenerate)


def proposition_checks(
    rng: np.random.Generator | int | None,
    trials: int,
    max_dimension: int = 64,
    slack: float = 1e-12,
) -> bool:
    """Check the two inequalities on random complex instances.

    For normalized vectors a, b and scalars alpha, beta:
        ||alpha a - beta b||^2 >= |alpha|^2 + |beta|^2 - 2 |alpha| |beta|
    and for any complex x_0..x_{r-1}:
        (sum |x_i|)^2 <= r sum |x_i|^2.
    Returns True iff no violation exceeds the slack.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    gen, _ = as_generator(rng)
    for _ in range(trials):
        dim = int(gen.integers(1, max_dimension + 1))
        a = gen.standard_normal(dim) + 1j * gen.standard_normal(dim)
        b = gen.standard_normal(dim) + 1j * gen.standard_normal(dim)
        a /= np.linalg.norm(a)
        b /= np.linalg.norm(b)
        alpha, beta = gen.standard_normal(2) + 1j * gen.standard_normal(2)
        lhs = float(np.linalg.norm(alpha * a - beta * b) ** 2)
        rhs = abs(alpha) ** 2 + abs(beta) ** 2 - 2 * abs(alpha) * abs(beta)
        if lhs < rhs - slack:
            return False

        r = int(gen.integers(1, max_dimension + 1))
        x = gen.standard_normal(r) + 1j * gen.standard_normal(r)
        mags = np.abs(x)
        if mags.sum() ** 2 > r * float((mags**2).sum()) + slack:
            return False
    return True
