"""Estimate the number of marked entries by Fourier period estimation.

The iteration-indexed amplitude k_j = sin((2j+1) theta)/sqrt(t) oscillates
with frequency theta/pi cycles per step, and theta encodes the count through
sin^2(theta) = t/N.  Preparing a register whose amplitude over j in [0, P)
is proportional to k_j (or l_j, which has the same period), Fourier
transforming it, and measuring yields a frequency sample nu whose folded
value f_tilde = min(nu, P - nu) concentrates near f = P theta / pi.  From it

    theta_tilde = f_tilde * pi / P      t_tilde = N sin^2(theta_tilde)

and, whenever |f - f_tilde| < 1, the estimate obeys the hard error bound

    |t - t_tilde| < (2 pi / P) sqrt(t N) + (pi^2 / P^2) N.

The production path builds the length-P register from the closed form in
O(P) memory; materializing the P*N joint state and running the simulator is
kept only as a small-scale verification oracle (joint_state_crosscheck).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from .analytics import ProblemShape, shape as make_shape
from .config import TOLERANCES
from .rng import as_generator
from .simulator import DiffusionOperator, OracleSpec, grover_iterate, uniform_state

__all__ = [
    "CountingEstimate",
    "JRegister",
    "REGIMES",
    "build_j_register",
    "dft",
    "inverse_dft",
    "spectrum",
    "estimate_t",
    "count_with_regime",
    "joint_state_crosscheck",
    "next_power_of_two",
]

REGIMES = ("fixed", "relative", "absolute", "exact")

SOLUTION = "solution"
NON_SOLUTION = "non-solution"


@dataclass(frozen=True)
class CountingEstimate:
    """One count estimate with its frequency sample and error bound.

    error_bound substitutes the self-consistent t_tilde for the unknown true
    count; tests that know t check the true-count version of the bound.
    """

    P: int
    measured_frequency: int
    f_tilde: float
    theta_tilde: float
    t_tilde: float
    t_rounded: int
    error_bound: float
    regime: str
    branch: str

    def to_record(self) -> dict:
        return asdict(self)


@dataclass
class JRegister:
    """Length-P complex register over the iteration index j."""

    P: int
    amplitudes: np.ndarray
    branch: str

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def next_power_of_two(x: float) -> int:
    """Smallest power of 2 that is >= x (and at least 2)."""
    p = 2
    while p < x:
        p *= 2
    return p


def _require_power_of_two(P: int) -> None:
    if P < 2 or P & (P - 1):
        raise ValueError(f"P must be a power of 2 and >= 2, got {P}")


def _branch_probability(s: ProblemShape, P: int) -> float:
    """Probability that measuring the second register lands on a solution:
    the mean of sin^2((2j+1) theta) over j in [0, P)."""
    j = np.arange(P)
    return float(np.mean(np.sin((2 * j + 1) * s.angle) ** 2))


def build_j_register(
    s: ProblemShape,
    P: int,
    branch: str | None = None,
    rng: np.random.Generator | int | None = None,
) -> JRegister:
    """Register over j with amplitude proportional to k_j or l_j, renormalized.

    branch=None samples the branch with the true collapse probabilities
    (requires an rng); otherwise the branch is forced.  The solution branch
    needs t >= 1 and the non-solution branch needs t < N.
    """
    _require_power_of_two(P)
    if branch is None:
        gen, _ = as_generator(rng)
        branch = SOLUTION if gen.random() < _branch_probability(s, P) else NON_SOLUTION
    if branch not in (SOLUTION, NON_SOLUTION):
        raise ValueError(f"unknown branch {branch!r}")
    if branch == SOLUTION and s.t == 0:
        raise ValueError("solution branch impossible with t = 0")
    if branch == NON_SOLUTION and s.t == s.N:
        raise ValueError("non-solution branch impossible with t = N")
    j = np.arange(P)
    phase = (2 * j + 1) * s.angle
    raw = np.sin(phase) if branch == SOLUTION else np.cos(phase)
    amps = (raw / np.linalg.norm(raw)).astype(np.complex128)
    return JRegister(P, amps, branch)


def dft(register: JRegister) -> JRegister:
    """Unitary transform b_nu = (1/sqrt(P)) sum_j a_j exp(2 pi i j nu / P)."""
    _require_power_of_two(register.P)
    out = np.fft.ifft(register.amplitudes) * math.sqrt(register.P)
    return JRegister(register.P, out, register.branch)


def inverse_dft(register: JRegister) -> JRegister:
    """Inverse of dft: a_j = (1/sqrt(P)) sum_nu b_nu exp(-2 pi i j nu / P)."""
    _require_power_of_two(register.P)
    out = np.fft.fft(register.amplitudes) / math.sqrt(register.P)
    return JRegister(register.P, out, register.branch)


def spectrum(register: JRegister) -> np.ndarray:
    """Measurement distribution |b_nu|^2 of the transformed register."""
    return np.abs(dft(register).amplitudes) ** 2


def _as_shape(target: ProblemShape | OracleSpec) -> ProblemShape:
    if isinstance(target, OracleSpec):
        return make_shape(target.dimension, target.solution_count)
    return target


def error_bound(N: int, t_value: float, P: int) -> float:
    """Bound (2 pi / P) sqrt(t N) + (pi^2 / P^2) N on |t - t_tilde|."""
    return (2 * math.pi / P) * math.sqrt(max(t_value, 0.0) * N) + (math.pi**2 / P**2) * N


def estimate_t(
    target: ProblemShape | OracleSpec,
    P: int,
    rng: np.random.Generator | int | None = None,
    branch: str | None = None,
    regime: str = "fixed",
) -> CountingEstimate:
    """One estimation round: build the register, transform, sample, fold.

    The measured frequency nu is drawn from the exact spectrum |b_nu|^2 and
    folded to f_tilde = min(nu, P - nu); the register is real, so its
    spectrum is symmetric and the fold loses nothing.
    """
    s = _as_shape(target)
    gen, _ = as_generator(rng)
    register = build_j_register(s, P, branch=branch, rng=gen)
    probs = spectrum(register)
    probs = probs / probs.sum()
    nu = int(gen.choice(P, p=probs))
    f_tilde = float(min(nu, P - nu))
    theta_tilde = f_tilde * math.pi / P
    t_tilde = s.N * math.sin(theta_tilde) ** 2
    return CountingEstimate(
        P=P,
        measured_frequency=nu,
        f_tilde=f_tilde,
        theta_tilde=theta_tilde,
        t_tilde=t_tilde,
        t_rounded=round(t_tilde),
        error_bound=error_bound(s.N, t_tilde, P),
        regime=regime,
        branch=register.branch,
    )


def count_with_regime(
    target: ProblemShape | OracleSpec,
    regime: str,
    c: float,
    rng: np.random.Generator | int | None = None,
    return_stages: bool = False,
):
    """Run the estimator under one of the four accuracy/cost trade-offs.

    fixed     one run at P = next power of 2 >= c sqrt(N); error within
              (2 pi / c) sqrt(t) + pi^2 / c^2 when the frequency lands close.
    relative  double P from 2 until f_tilde >= c; total work proportional to
              the final P, about c sqrt(N/t), and the estimate is within a
              factor (1 + pi/c)^2 of t with good probability.
    absolute  a fixed run to get a rough t_tilde, then one rerun at
              P = next power of 2 >= c sqrt(t_tilde N) (t_tilde clamped up
              to 1 so P stays defined when the first stage returns 0).
    exact     the absolute schedule with c >= 14, where the final error
              drops below 1/2 and t_rounded recovers t whenever the final
              frequency sample lands within 1 of the true f.

    With return_stages=True, returns (final_estimate, [stage_estimates]).
    """
    if regime not in REGIMES:
        raise ValueError(f"regime must be one of {REGIMES}, got {regime!r}")
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    if regime == "exact" and c < 14:
        raise ValueError(f"exact regime requires c >= 14, got {c}")
    s = _as_shape(target)
    gen, _ = as_generator(rng)
    stages: list[CountingEstimate] = []

    if regime == "fixed":
        est = estimate_t(s, next_power_of_two(c * math.sqrt(s.N)), gen, regime="fixed")
        stages.append(est)
    elif regime == "relative":
        # Cap the doubling so t = 0 (frequency stuck at 0) still terminates;
        # any t >= 1 reaches f_tilde >= c well before pi c sqrt(N).
        cap = next_power_of_two(4 * c * math.sqrt(s.N))
        P = 2
        while True:
            est = estimate_t(s, P, gen, regime="relative")
            stages.append(est)
            if est.f_tilde >= c or P >= cap:
                break
            P *= 2
    else:  # absolute or exact
        first = estimate_t(s, next_power_of_two(c * math.sqrt(s.N)), gen, regime=regime)
        stages.append(first)
        P2 = next_power_of_two(c * math.sqrt(max(first.t_tilde, 1.0) * s.N))
        est = estimate_t(s, P2, gen, regime=regime)
        stages.append(est)

    final = stages[-1]
    return (final, stages) if return_stages else final


def joint_state_crosscheck(s: ProblemShape, P: int, max_dimension: int = 64) -> bool:
    """Verify the closed-form register against the full joint construction.

    Builds the P*N joint state by actually running the simulator for each
    iteration count j, collapses the second register onto each feasible
    branch, and compares the renormalized first register with
    build_j_register's output entrywise.  Small dimensions only.
    """
    _require_power_of_two(P)
    if s.N > max_dimension or P > max_dimension:
        raise ValueError(f"crosscheck limited to N, P <= {max_dimension}")
    oracle = OracleSpec(s.N, tuple(range(s.t)))
    operator = DiffusionOperator.exact_dft(s.N)
    columns = np.empty((P, s.N), dtype=np.complex128)
    state = uniform_state(s.N)
    columns[0] = state.amplitudes
    for j in range(1, P):
        grover_iterate(state, oracle, operator)
        columns[j] = state.amplitudes
    joint = columns / math.sqrt(P)  # amplitude of |j, i>

    branches = []
    if s.t >= 1:
        branches.append((SOLUTION, 0))  # representative solution index
    if s.t < s.N:
        branches.append((NON_SOLUTION, s.t))  # first unmarked index
    for branch, column_index in branches:
        collapsed = joint[:, column_index]
        collapsed = collapsed / np.linalg.norm(collapsed)
        reference = build_j_register(s, P, branch=branch).amplitudes
        if np.max(np.abs(collapsed - reference)) > TOLERANCES.matrix_path:
            return False
    return True
