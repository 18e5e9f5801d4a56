"""Exact statevector simulation of amplitude-amplification search.

One search iteration is a conditional phase flip on the marked set A followed
by the diffusion step 2*mean - a_i (inversion about the average, with the
iteration's global minus sign folded in so amplitudes stay real and match the
closed form term for term).  The diffusion step equals -T' S0 T'^-1 for any
unitary T' whose first column is the uniform vector: Walsh-Hadamard when N is
a power of two, the exact unitary DFT for arbitrary N, or any custom unitary
with a uniform first column.  The O(N) mean-inversion path is used everywhere;
explicit operator matrices exist only as a verification oracle for small N.

Each iteration is charged two table lookups on the oracle (one to apply the
phase, one to erase it), so query_count grows by exactly 2 per iteration.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from .analytics import AmplitudePair, ProblemShape
from .config import TOLERANCES

__all__ = [
    "StateVector",
    "OracleSpec",
    "DiffusionOperator",
    "uniform_state",
    "apply_phase_flip",
    "apply_diffusion",
    "grover_iterate",
    "measure",
    "collapsed_simulate",
    "success_curve",
    "save_statevector",
    "load_statevector",
]


@dataclass
class StateVector:
    """Length-N complex amplitude array; callers keep it normalized."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.ndim != 1 or self.amplitudes.size == 0:
            raise ValueError("amplitudes must be a non-empty 1-D array")

    @property
    def dimension(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def copy(self) -> "StateVector":
        return StateVector(self.amplitudes.copy())


@dataclass
class OracleSpec:
    """Explicit marked set A within [0, N) plus a table-lookup counter."""

    dimension: int
    solutions: tuple[int, ...]
    query_count: int = 0
    _members: frozenset = field(init=False, repr=False, compare=False)
    indices: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        sols = tuple(sorted(int(i) for i in self.solutions))
        if len(set(sols)) != len(sols):
            raise ValueError("solution set contains duplicate indices")
        if sols and not (0 <= sols[0] and sols[-1] < self.dimension):
            raise ValueError(f"solution indices must lie in [0, {self.dimension})")
        self.solutions = sols
        self._members = frozenset(sols)
        self.indices = np.fromiter(sols, dtype=np.int64, count=len(sols))

    @classmethod
    def from_indices(cls, dimension: int, indices: Iterable[int]) -> "OracleSpec":
        return cls(dimension, tuple(indices))

    @classmethod
    def random(cls, dimension: int, solution_count: int, rng: np.random.Generator) -> "OracleSpec":
        """Place solution_count marks uniformly at random without replacement."""
        if not 0 <= solution_count <= dimension:
            raise ValueError("solution count out of range")
        picks = rng.choice(dimension, size=solution_count, replace=False)
        return cls(dimension, tuple(int(i) for i in picks))

    @property
    def solution_count(self) -> int:
        return len(self.solutions)

    def lookup(self, index: int) -> bool:
        """One table lookup: is index marked?  Increments the query counter."""
        if not 0 <= index < self.dimension:
            raise ValueError(f"index {index} out of range [0, {self.dimension})")
        self.query_count += 1
        return index in self._members

    def contains(self, index: int) -> bool:
        """Membership test without charging a lookup (simulation bookkeeping)."""
        return index in self._members


class DiffusionOperator:
    """A unitary T' with uniform first column, defining the diffusion -T' S0 T'^-1.

    The applied effect is operator independent (always 2*mean - a), so the
    explicit matrix is materialized lazily and only needed by the
    verification path.
    """

    def __init__(self, dimension: int, kind: str, matrix: np.ndarray | None = None):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        if kind not in ("walsh_hadamard", "exact_dft", "custom"):
            raise ValueError(f"unknown diffusion kind {kind!r}")
        self.dimension = dimension
        self.kind = kind
        self._matrix = matrix
        if matrix is not None:
            self._check(matrix)

    @classmethod
    def walsh_hadamard(cls, dimension: int) -> "DiffusionOperator":
        if dimension < 1 or dimension & (dimension - 1):
            raise ValueError(f"Walsh-Hadamard needs a power-of-2 dimension, got {dimension}")
        return cls(dimension, "walsh_hadamard")

    @classmethod
    def exact_dft(cls, dimension: int) -> "DiffusionOperator":
        return cls(dimension, "exact_dft")

    @classmethod
    def custom(cls, matrix: np.ndarray) -> "DiffusionOperator":
        matrix = np.asarray(matrix, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("custom operator must be a square matrix")
        return cls(matrix.shape[0], "custom", matrix)

    def _check(self, m: np.ndarray) -> None:
        n = self.dimension
        eye = np.eye(n)
        if np.max(np.abs(m.conj().T @ m - eye)) > TOLERANCES.unitarity:
            raise ValueError("operator is not unitary")
        if np.max(np.abs(m[:, 0] - 1 / math.sqrt(n))) > TOLERANCES.unitarity:
            raise ValueError("operator does not map |0> to the uniform state")

    @property
    def matrix(self) -> np.ndarray:
        if self._matrix is None:
            n = self.dimension
            if self.kind == "walsh_hadamard":
                i = np.arange(n)
                bits = np.bitwise_count(i[:, None] & i[None, :])
                m = ((-1.0) ** bits / math.sqrt(n)).astype(np.complex128)
            else:  # exact_dft
                i = np.arange(n)
                m = np.exp(2j * math.pi * np.outer(i, i) / n) / math.sqrt(n)
            self._check(m)
            self._matrix = m
        return self._matrix

    def diffusion_matrix(self) -> np.ndarray:
        """Explicit -T' S0 T'^-1 product, the verification oracle."""
        t = self.matrix
        s0 = np.eye(self.dimension, dtype=np.complex128)
        s0[0, 0] = -1.0
        return -(t @ s0 @ t.conj().T)


def uniform_state(dimension: int) -> StateVector:
    """Equal superposition 1/sqrt(N) on every index."""
    if dimension < 1:
        raise ValueError(f"dimension must be >= 1, got {dimension}")
    return StateVector(np.full(dimension, 1 / math.sqrt(dimension), dtype=np.complex128))


def _solution_indices(target: "OracleSpec | Iterable[int]", dimension: int) -> np.ndarray:
    if isinstance(target, OracleSpec):
        if target.dimension != dimension:
            raise ValueError("oracle dimension does not match state dimension")
        return target.indices
    idx = np.asarray(sorted(int(i) for i in target), dtype=np.int64)
    if idx.size and (idx[0] < 0 or idx[-1] >= dimension):
        raise ValueError(f"phase-flip indices must lie in [0, {dimension})")
    return idx


def apply_phase_flip(state: StateVector, marked: "OracleSpec | Iterable[int]") -> StateVector:
    """Negate the amplitudes of the marked indices, in place.

    Passing an OracleSpec charges it one table lookup; passing a bare index
    collection performs the same sign flip without accounting.
    """
    idx = _solution_indices(marked, state.dimension)
    state.amplitudes[idx] = -state.amplitudes[idx]
    if isinstance(marked, OracleSpec):
        marked.query_count += 1
    return state


def apply_diffusion(
    state: StateVector,
    operator: DiffusionOperator | None = None,
    via_matrix: bool = False,
) -> StateVector:
    """Apply the diffusion step a_i -> 2*mean - a_i, in place.

    The result is the same for every valid operator; pass via_matrix=True to
    compute it through the explicit -T' S0 T'^-1 product instead (small N
    verification path, requires an operator).
    """
    if operator is not None and operator.dimension != state.dimension:
        raise ValueError("operator dimension does not match state dimension")
    if via_matrix:
        if operator is None:
            raise ValueError("matrix path requires an explicit operator")
        state.amplitudes = operator.diffusion_matrix() @ state.amplitudes
        return state
    mean = state.amplitudes.mean()
    state.amplitudes = 2 * mean - state.amplitudes
    return state


def grover_iterate(
    state: StateVector,
    oracle: OracleSpec,
    operator: DiffusionOperator | None = None,
    via_matrix: bool = False,
) -> StateVector:
    """One search iteration: phase flip then diffusion; costs two lookups.

    The phase application charges one lookup and its uncomputation charges
    the second, so oracle.query_count advances by exactly 2.
    """
    apply_phase_flip(state, oracle)
    oracle.query_count += 1  # uncomputation lookup
    return apply_diffusion(state, operator, via_matrix=via_matrix)


def measure(state: StateVector, rng: np.random.Generator) -> int:
    """Sample an index with probability |a_i|^2 (no collapse is recorded)."""
    probs = state.probabilities()
    total = probs.sum()
    if abs(total - 1.0) > TOLERANCES.measure_norm:
        raise ValueError(f"cannot measure an unnormalized state (norm^2 = {total})")
    return int(rng.choice(state.dimension, p=probs / total))


def collapsed_simulate(s: ProblemShape, iterations: int) -> AmplitudePair:
    """Iterate the two-dimensional recurrence instead of the full state.

    From the uniform start all marked amplitudes stay equal and all unmarked
    amplitudes stay equal, so the full dynamics reduce to

        k <- ((N - 2t) k + 2 (N - t) l) / N
        l <- ((N - 2t) l - 2 t k) / N

    in O(1) memory.  Matches the full simulator and the closed form.
    """
    if s.t == 0:
        raise ValueError("collapsed simulation undefined for t = 0")
    if iterations < 0:
        raise ValueError(f"iteration count must be >= 0, got {iterations}")
    N, t = s.N, s.t
    k = l = 1 / math.sqrt(N)
    for _ in range(iterations):
        k, l = ((N - 2 * t) * k + 2 * (N - t) * l) / N, ((N - 2 * t) * l - 2 * t * k) / N
    return AmplitudePair(k, l)


def success_curve(s: ProblemShape, max_iterations: int) -> np.ndarray:
    """Success probabilities t*k_j^2 for j = 0..max_iterations via one recurrence pass."""
    if max_iterations < 0:
        raise ValueError(f"max_iterations must be >= 0, got {max_iterations}")
    out = np.empty(max_iterations + 1)
    if s.t == 0:
        out.fill(0.0)
        return out
    N, t = s.N, s.t
    k = l = 1 / math.sqrt(N)
    for j in range(max_iterations + 1):
        out[j] = t * k * k
        k, l = ((N - 2 * t) * k + 2 * (N - t) * l) / N, ((N - 2 * t) * l - 2 * t * k) / N
    return out


# Snapshot export: 16-byte header (magic, version u32, N u64), then N pairs of
# little-endian float64 (re, im) ordered by index.
SNAPSHOT_MAGIC = b"GLAB"
SNAPSHOT_VERSION = 1
_HEADER = struct.Struct("<4sIQ")


def save_statevector(state: StateVector, path: str | Path) -> None:
    """Write the binary snapshot of a state to path."""
    payload = np.ascontiguousarray(state.amplitudes, dtype=np.complex128).view(np.float64)
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(SNAPSHOT_MAGIC, SNAPSHOT_VERSION, state.dimension))
        fh.write(payload.astype("<f8", copy=False).tobytes())


def load_statevector(path: str | Path) -> StateVector:
    """Read a binary snapshot written by save_statevector."""
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise ValueError("snapshot file truncated")
    magic, version, n = _HEADER.unpack_from(raw)
    if magic != SNAPSHOT_MAGIC:
        raise ValueError(f"bad snapshot magic {magic!r}")
    if version != SNAPSHOT_VERSION:
        raise ValueError(f"unsupported snapshot version {version}")
    body = np.frombuffer(raw, dtype="<f8", offset=_HEADER.size)
    if body.size != 2 * n:
        raise ValueError(f"snapshot body has {body.size} floats, expected {2 * n}")
    return StateVector(body[0::2] + 1j * body[1::2])
