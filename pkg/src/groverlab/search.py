"""End-to-end search strategies over an explicit oracle.

Three strategies are provided.  With a trusted solution count t, either run
the almost-certain iteration count floor(pi / 4 theta) once, or repeatedly
run the cheaper optimal-stopping count and restart on failure.  When t is
unknown, run the randomized schedule: pick j uniformly below a growing bound
m, iterate j times from the uniform state, measure, test, and grow m
geometrically (factor 6/5, capped at sqrt(N)) on failure.  A handful of
classical probes first disposes of overwhelmingly dense tables, and a
cumulative iteration budget turns the t = 0 case into a definite
"no solution" answer in O(sqrt(N)) time.

Amplitude dynamics run on the two-dimensional invariant representation
(simulator.collapsed_simulate / success_curve), which is exactly equivalent
to the full statevector from the uniform start; a measurement is sampled as
solution/non-solution first, then as a uniform index within that branch.
Every measured index is confirmed by one classical table lookup before it is
reported, and oracle_lookups_used = 2 * grover_iterations_used +
classical_probes_used holds for every outcome.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from . import analytics
from .analytics import ProblemShape
from .rng import as_generator
from .simulator import OracleSpec, collapsed_simulate, success_curve

__all__ = [
    "SearchOutcome",
    "UnknownTConfig",
    "search_known_t",
    "search_restart_optimal",
    "search_unknown_t",
    "average_success_check",
]


@dataclass(frozen=True)
class SearchOutcome:
    """Flat record of one strategy run."""

    found_index: int | None
    success: bool
    grover_iterations_used: int
    oracle_lookups_used: int
    classical_probes_used: int
    rounds: int
    seed: int | None

    def to_record(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class UnknownTConfig:
    """Knobs of the unknown-count strategy.

    growth_factor is the per-round multiplier on the sampling bound m; any
    value strictly between 1 and 4/3 keeps the expected cost in
    O(sqrt(N/t)).  m_cap and timeout_total_iterations default to sqrt(N) and
    ceil(4.5 * sqrt(N)) when left as None.
    """

    growth_factor: float = 6 / 5
    m_cap: float | None = None
    classical_presample_count: int = 10
    timeout_total_iterations: float | None = None

    def __post_init__(self) -> None:
        if not 1.0 < self.growth_factor < 4 / 3:
            raise ValueError("growth factor must lie strictly between 1 and 4/3")
        if self.classical_presample_count < 0:
            raise ValueError("presample count must be >= 0")
        if self.m_cap is not None and self.m_cap < 1:
            raise ValueError("m cap must be >= 1")
        if self.timeout_total_iterations is not None and self.timeout_total_iterations <= 0:
            raise ValueError("timeout must be positive")

    def resolved_m_cap(self, dimension: int) -> float:
        return math.sqrt(dimension) if self.m_cap is None else self.m_cap

    def resolved_timeout(self, dimension: int) -> int:
        if self.timeout_total_iterations is None:
            return math.ceil(4.5 * math.sqrt(dimension))
        return math.ceil(self.timeout_total_iterations)


def _sample_index(oracle: OracleSpec, success_prob: float, rng: np.random.Generator) -> int:
    """Draw a measurement outcome: a uniform solution index with the given
    probability, otherwise a uniform non-solution (rejection sampled)."""
    t = oracle.solution_count
    if t and rng.random() < success_prob:
        return int(oracle.indices[rng.integers(t)])
    while True:
        i = int(rng.integers(oracle.dimension))
        if not oracle.contains(i):
            return i


def search_known_t(
    oracle: OracleSpec, solution_count: int, rng: np.random.Generator | int | None
) -> SearchOutcome:
    """Run floor(pi / 4 theta) iterations once and measure.

    The caller asserts solution_count = |A| (a mismatch is not detected).
    Failure probability is at most t/N.  With t = N the iteration count is 0
    and the first measurement succeeds.
    """
    if solution_count < 1:
        raise ValueError("known-count search requires t >= 1")
    gen, seed = as_generator(rng)
    s = analytics.shape(oracle.dimension, solution_count)
    m = analytics.optimal_iterations(s)
    pair = collapsed_simulate(s, m)
    oracle.query_count += 2 * m
    index = _sample_index(oracle, s.t * pair.k**2, gen)
    ok = oracle.lookup(index)
    return SearchOutcome(
        found_index=index if ok else None,
        success=ok,
        grover_iterations_used=m,
        oracle_lookups_used=2 * m + 1,
        classical_probes_used=1,
        rounds=1,
        seed=seed,
    )


def search_restart_optimal(
    oracle: OracleSpec,
    solution_count: int,
    rng: np.random.Generator | int | None,
    max_restarts: int = 64,
) -> SearchOutcome:
    """Measure after the optimal-stopping count and restart on failure.

    Expected total iterations approach (z / (4 sin^2(z/2))) sqrt(N/t), about
    88 percent of the almost-certain count.  Gives up (success=False) after
    max_restarts failed attempts; at the default 64 and sparse solutions the
    residual failure probability is (1 - 0.844)^64, negligible.
    """
    if solution_count < 1:
        raise ValueError("restart search requires t >= 1")
    if max_restarts < 1:
        raise ValueError("max_restarts must be >= 1")
    gen, seed = as_generator(rng)
    n = oracle.dimension
    if solution_count == n:
        j_star, p = 0, 1.0  # everything is marked; measure immediately
    else:
        s = analytics.shape(n, solution_count)
        j_star = analytics.optimal_stopping(s).j_star
        p = solution_count * collapsed_simulate(s, j_star).k ** 2

    iterations = probes = rounds = 0
    found: int | None = None
    success = False
    for _ in range(max_restarts):
        rounds += 1
        iterations += j_star
        oracle.query_count += 2 * j_star
        index = _sample_index(oracle, p, gen)
        probes += 1
        if oracle.lookup(index):
            found, success = index, True
            break
    return SearchOutcome(
        found_index=found,
        success=success,
        grover_iterations_used=iterations,
        oracle_lookups_used=2 * iterations + probes,
        classical_probes_used=probes,
        rounds=rounds,
        seed=seed,
    )


def search_unknown_t(
    oracle: OracleSpec,
    config: UnknownTConfig | None = None,
    rng: np.random.Generator | int | None = None,
) -> SearchOutcome:
    """Randomized search that needs no advance knowledge of the count.

    Order of play: classical presampling (catches t > 3N/4 in O(1) expected
    probes), then rounds of j ~ Uniform{0..ceil(m)-1} iterations with m
    growing by the configured factor up to sqrt(N).  Declares no-solution
    (success=False) once the next round would push cumulative iterations
    past the budget, so total iterations never exceed it.
    """
    config = config or UnknownTConfig()
    gen, seed = as_generator(rng)
    n = oracle.dimension
    s = analytics.shape(n, oracle.solution_count)
    m_cap = config.resolved_m_cap(n)
    timeout = config.resolved_timeout(n)

    probes = 0
    for _ in range(config.classical_presample_count):
        probes += 1
        i = int(gen.integers(n))
        if oracle.lookup(i):
            return SearchOutcome(i, True, 0, probes, probes, 0, seed)

    # Success probability for every reachable j, from one recurrence pass.
    curve = success_curve(s, int(math.ceil(m_cap)))

    m = 1.0
    iterations = rounds = 0
    while True:
        j = int(gen.integers(0, math.ceil(m)))
        if iterations + j > timeout:
            return SearchOutcome(
                None, False, iterations, 2 * iterations + probes, probes, rounds, seed
            )
        rounds += 1
        iterations += j
        oracle.query_count += 2 * j
        index = _sample_index(oracle, float(curve[j]), gen)
        probes += 1
        if oracle.lookup(index):
            return SearchOutcome(
                index, True, iterations, 2 * iterations + probes, probes, rounds, seed
            )
        m = min(config.growth_factor * m, m_cap)


def average_success_check(
    s: ProblemShape,
    m: int,
    rng: np.random.Generator | int | None,
    trials: int,
) -> float:
    """Monte Carlo estimate of the uniformly-randomized success probability.

    Draws j ~ Uniform{0..m-1} per trial and samples success against the
    recurrence-derived probability, an estimate that is independent of the
    closed-form average it gets compared with.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    gen, _ = as_generator(rng)
    curve = success_curve(s, m - 1)
    js = gen.integers(0, m, size=trials)
    return float(np.mean(gen.random(trials) < curve[js]))
