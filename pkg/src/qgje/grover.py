"""Grover search and the Deutsch classifier on the state-vector simulator.

The ancilla in ``(|0> - |1>)`` that turns a bit-flip oracle into a phase
flip is not simulated for Grover: the oracle negates marked amplitudes
directly, which gives the same evolution on the search register.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import qsim
from .errors import InvalidCounts, SizeMismatch
from .qsim import StateVector


class Oracle:
    """Black-box predicate over the basis indices of an ``n_qubits`` register.

    ``query_count`` goes up by one for every classical evaluation and for
    every quantum phase-flip application.
    """

    def __init__(self, n_qubits: int, predicate: Callable[[int], bool]):
        if n_qubits < 1:
            raise SizeMismatch(f"oracle needs at least one qubit, got {n_qubits}")
        self.n_qubits = n_qubits
        self._predicate = predicate
        self.query_count = 0
        self._mask: Optional[np.ndarray] = None

    @classmethod
    def from_marked(cls, n_qubits: int, marked: Iterable[int]) -> "Oracle":
        marked = frozenset(int(i) for i in marked)
        for i in marked:
            if not 0 <= i < 1 << n_qubits:
                raise SizeMismatch(f"marked index {i} outside 0..{(1 << n_qubits) - 1}")
        return cls(n_qubits, marked.__contains__)

    @property
    def size(self) -> int:
        return 1 << self.n_qubits

    @property
    def mask(self) -> np.ndarray:
        # evaluated once without charging: this is how the simulator "wires" the oracle
        if self._mask is None:
            self._mask = np.array([bool(self._predicate(i)) for i in range(self.size)])
            self._mask.flags.writeable = False
        return self._mask

    def marked_indices(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.mask)]

    def query(self, index: int) -> bool:
        self.query_count += 1
        return bool(self._predicate(index))


def uniform_state(n: int) -> StateVector:
    if n < 1:
        raise SizeMismatch(f"need at least one qubit, got {n}")
    dim = 1 << n
    return StateVector(n, np.full(dim, 1 / math.sqrt(dim), dtype=complex))


def oracle_reflect(state: StateVector, oracle: Oracle) -> StateVector:
    if oracle.n_qubits != state.n_qubits:
        raise SizeMismatch(f"oracle acts on {oracle.n_qubits} qubits, state has {state.n_qubits}")
    oracle.query_count += 1
    out = np.where(oracle.mask, -state.amplitudes, state.amplitudes)
    return StateVector(state.n_qubits, out)


def diffusion(state: StateVector) -> StateVector:
    """Reflect about the uniform superposition: ``a_i -> 2*mean(a) - a_i``."""
    amps = state.amplitudes
    return StateVector(state.n_qubits, 2 * amps.mean() - amps)


def diffusion_from_gates(state: StateVector) -> StateVector:
    """Same reflection as :func:`diffusion`, spelled as H^n, flip-all-but-|0>, H^n."""
    n = state.n_qubits
    for w in range(n):
        state = qsim.apply_hadamard(state, w)
    flipped = -state.amplitudes
    flipped[0] = state.amplitudes[0]
    state = StateVector(n, flipped)
    for w in range(n):
        state = qsim.apply_hadamard(state, w)
    return state


def grover_iterate(state: StateVector, oracle: Oracle) -> StateVector:
    return diffusion(oracle_reflect(state, oracle))


def marked_probability(state: StateVector, oracle: Oracle) -> float:
    return float(qsim.probabilities(state)[oracle.mask].sum())


def iteration_count(K: int, t: int) -> int:
    """Iterations bringing the marked probability closest to 1.

    Solves ``(2m + 1) * phi = pi/2`` with ``sin(phi) = sqrt(t/K)`` and rounds.
    """
    if not 1 <= t <= K:
        raise InvalidCounts(f"need 1 <= t <= K, got t={t}, K={K}")
    phi = math.asin(math.sqrt(t / K))
    return max(0, round(math.pi / (4 * phi) - 0.5))


def default_retry_schedule(K: int) -> tuple[int, ...]:
    """``floor(pi/4 * sqrt(K / 2**j))`` for ``j = 0 .. log2(K)``: one guess per scale of t."""
    levels = max(0, K.bit_length() - 1)
    return tuple(math.floor(math.pi / 4 * math.sqrt(K / 2**j)) for j in range(levels + 1))


@dataclass(frozen=True)
class GroverPlan:
    n_qubits: int
    K: int
    t_hint: Optional[int]
    m: int
    retry_schedule: tuple[int, ...]
    max_retries: int

    def attempts(self) -> tuple[int, ...]:
        first = (self.m,) if self.t_hint is not None else ()
        return first + self.retry_schedule[: self.max_retries]


def make_plan(
    n_qubits: int,
    t_hint: Optional[int] = None,
    iterations: Optional[int] = None,
    retry_schedule: Optional[Sequence[int]] = None,
    max_retries: Optional[int] = None,
) -> GroverPlan:
    K = 1 << n_qubits
    if t_hint is not None and not 1 <= t_hint <= K:
        raise InvalidCounts(f"t_hint must lie in 1..{K}, got {t_hint}")
    if iterations is not None:
        m = iterations
    elif t_hint is not None:
        m = math.floor(math.pi / 4 * math.sqrt(K / t_hint))
    else:
        m = 0
    if m < 0:
        raise InvalidCounts(f"iteration count must be non-negative, got {m}")
    schedule = tuple(retry_schedule) if retry_schedule is not None else default_retry_schedule(K)
    if max_retries is None:
        max_retries = len(schedule)
    return GroverPlan(n_qubits, K, t_hint, m, schedule, max_retries)


@dataclass(frozen=True)
class SearchResult:
    found: Optional[int]
    verified: bool
    oracle_queries: int
    grover_iterations: int
    measurements: int
    fallback_queries: int = 0
    outcomes: tuple[int, ...] = field(default=(), repr=False)


def grover_search(
    oracle: Oracle,
    rng: np.random.Generator,
    plan: GroverPlan,
    classical_fallback: bool = True,
) -> SearchResult:
    """Search with measurement verification.

    Each attempt prepares the uniform state, runs the planned number of
    iterates, measures and checks the outcome with one classical query. A
    candidate is only returned once the oracle confirms it. When every
    attempt fails and ``classical_fallback`` is set, indices are queried in
    order until a marked one turns up.
    """
    if plan.n_qubits != oracle.n_qubits:
        raise SizeMismatch(f"plan is for {plan.n_qubits} qubits, oracle has {oracle.n_qubits}")
    start_queries = oracle.query_count
    iterations = measurements = 0
    outcomes = []
    start = uniform_state(oracle.n_qubits)

    def result(found, fallback=0):
        return SearchResult(
            found=found,
            verified=found is not None,
            oracle_queries=oracle.query_count - start_queries,
            grover_iterations=iterations,
            measurements=measurements,
            fallback_queries=fallback,
            outcomes=tuple(outcomes),
        )

    for m in plan.attempts():
        state = start
        for _ in range(m):
            state = grover_iterate(state, oracle)
        iterations += m
        candidate = qsim.measure(state, rng).basis_index
        measurements += 1
        outcomes.append(candidate)
        if oracle.query(candidate):
            return result(candidate)

    if classical_fallback:
        for i in range(oracle.size):
            if oracle.query(i):
                return result(i, fallback=i + 1)
        return result(None, fallback=oracle.size)
    return result(None)


class DeutschResult(str, enum.Enum):
    CONSTANT = "constant"
    BALANCED = "balanced"


def deutsch_classify(table: Sequence[int], rng: Optional[np.random.Generator] = None) -> DeutschResult:
    """Decide constant vs balanced for ``f: {0,1} -> {0,1}`` with one oracle call.

    Wire 1 holds the query bit x, wire 0 the ancilla y prepared as ``|1>``.
    After H on both, ``U_f |x, y> = |x, y xor f(x)>`` kicks ``(-1)^f(x)`` onto
    x; a final H on x leaves ``|f(0) xor f(1)>`` there.
    """
    if len(table) != 2 or any(v not in (0, 1) for v in table):
        raise ValueError(f"need a truth table of two bits, got {list(table)!r}")
    f0, f1 = int(table[0]), int(table[1])
    x, y = 1, 0
    state = qsim.basis_state(2, 1 << y)
    state = qsim.apply_hadamard(qsim.apply_hadamard(state, x), y)
    if f0:
        state = qsim.apply_gate(state, y, qsim.X)
    if f0 != f1:
        state = qsim.apply_cnot(state, x, y)
    state = qsim.apply_hadamard(state, x)
    outcome = qsim.measure(state, rng if rng is not None else np.random.default_rng(0))
    bit = (outcome.basis_index >> x) & 1
    return DeutschResult.BALANCED if bit else DeutschResult.CONSTANT
