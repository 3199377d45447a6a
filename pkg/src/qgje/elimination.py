"""Gauss-Jordan elimination with Grover pivot search."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import costs
from .grover import Oracle, grover_search, make_plan
from .ledger import CostLedger
from .linalg import AugmentedSystem, Matrix, RrefResult, rref


def pivot_register_size(length: int) -> int:
    """Qubits needed to index ``length`` candidates; never fewer than one."""
    return max(1, (length - 1).bit_length())


def grover_pivot(
    column: Sequence[Fraction],
    start: int,
    ledger: CostLedger,
    rng: np.random.Generator,
) -> Optional[int]:
    """Find some row ``i >= start`` with ``column[i] != 0`` by Grover search.

    Candidates are padded up to a power of two; padding slots are never
    marked, so a measured padding index just fails verification.
    """
    length = len(column) - start
    if length < 0:
        raise IndexError(f"start {start} beyond column of length {len(column)}")
    if length == 0:
        return None
    tail = column[start:]
    oracle = Oracle(pivot_register_size(length), lambda i: i < length and tail[i] != 0)
    found = grover_search(oracle, rng, make_plan(oracle.n_qubits), classical_fallback=True)
    ledger.charge(
        grover_iterations=found.grover_iterations,
        oracle_queries=found.oracle_queries,
        measurements=found.measurements,
    )
    return None if found.found is None else start + found.found


class GroverPivotStrategy:
    name = "grover"

    def __init__(self, rng: np.random.Generator):
        self.rng = rng

    def __call__(self, column, start, ledger):
        return grover_pivot(column, start, ledger, self.rng)


@dataclass(frozen=True)
class QgjeReport:
    rref_result: RrefResult
    ledger: CostLedger
    N: int
    paper_total: float
    closed_form_total: float
    ratio_to_2_half_N: float
    matches_classical: bool


def qgje_rref(system: AugmentedSystem, seed: int = 0, rng: Optional[np.random.Generator] = None) -> QgjeReport:
    """RREF with Grover pivot search, plus the formula totals at this size.

    ``N`` is the number of coefficient rows, i.e. the number of outer rounds
    a square system runs. The run is cross-checked against a classical
    elimination of the same system.
    """
    rng = rng if rng is not None else np.random.default_rng(seed)
    ledger = CostLedger()
    result = rref(system, GroverPivotStrategy(rng), ledger)
    reference = rref(system)
    same = (
        result.reduced == reference.reduced
        and result.rank == reference.rank
        and result.pivot_columns == reference.pivot_columns
    )
    N = system.coefficients.rows
    closed = costs.closed_form_cost(N)
    return QgjeReport(
        rref_result=result,
        ledger=ledger,
        N=N,
        paper_total=costs.paper_cost_total(N),
        closed_form_total=closed,
        ratio_to_2_half_N=costs.ratio_to_half_power(closed, N),
        matches_classical=same,
    )


def _random_rational(rng: np.random.Generator, bound: int) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, 4)))


def random_system(
    rng: np.random.Generator,
    m: int,
    n: int,
    rank: Optional[int] = None,
    consistent: bool = True,
    bound: int = 5,
) -> AugmentedSystem:
    """Random rational ``m x n`` system of the requested rank.

    The coefficient matrix is a product of random ``m x r`` and ``r x n``
    factors, retried until the rank comes out exactly ``r``. A consistent
    rhs is ``A`` times a random point; an inconsistent one is redrawn until
    it leaves the column space (impossible when ``r == m``).
    """
    r = min(m, n) if rank is None else rank
    if not 0 <= r <= min(m, n):
        raise ValueError(f"rank {r} impossible for a {m}x{n} matrix")
    if not consistent and r == m:
        raise ValueError("a full-row-rank system is always consistent")
    while True:
        left = [[_random_rational(rng, bound) for _ in range(r)] for _ in range(m)]
        right = [[_random_rational(rng, bound) for _ in range(n)] for _ in range(r)]
        rows = [[sum((left[i][k] * right[k][j] for k in range(r)), Fraction(0)) for j in range(n)] for i in range(m)]
        a = Matrix.from_rows(rows)
        if rref(AugmentedSystem(a, (0,) * m)).rank == r:
            break
    while True:
        if consistent:
            x = [_random_rational(rng, bound) for _ in range(n)]
            b = a.matvec(x)
        else:
            b = [_random_rational(rng, bound) for _ in range(m)]
        system = AugmentedSystem(a, tuple(b))
        if (rref(system).rank == r) == consistent:
            return system


@dataclass(frozen=True)
class CostRow:
    N: int
    paper_total: float
    closed_form: float
    floored_closed_form: int
    printed_theorem: int
    simulated_mean: Optional[float]
    ratio: float


SIMULATION_MAX_N = 10


def simulated_mean_cost(N: int, trials: int, rng: np.random.Generator) -> float:
    """Mean ledger total of Grover-pivot eliminations on random invertible N x N systems."""
    totals = []
    for _ in range(trials):
        report = qgje_rref(random_system(rng, N, N), rng=rng)
        totals.append(report.ledger.total())
    return float(Fraction(sum(totals), trials))


def cost_report(
    N_max: int,
    simulate: bool = True,
    trials: int = 3,
    rng: Optional[np.random.Generator] = None,
    sim_max_n: int = SIMULATION_MAX_N,
) -> list[CostRow]:
    if N_max < 1:
        raise ValueError(f"N_max must be at least 1, got {N_max}")
    rng = rng if rng is not None else np.random.default_rng(0)
    rows = []
    for N in range(1, N_max + 1):
        closed = costs.closed_form_cost(N)
        sim = simulated_mean_cost(N, trials, rng) if simulate and N <= sim_max_n else None
        rows.append(
            CostRow(
                N=N,
                paper_total=costs.paper_cost_total(N),
                closed_form=closed,
                floored_closed_form=costs.floored_closed_form(N),
                printed_theorem=costs.printed_theorem_cost(N),
                simulated_mean=sim,
                ratio=costs.ratio_to_half_power(closed, N),
            )
        )
    return rows
