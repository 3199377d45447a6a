"""Operation-count formulas for quantum Gauss-Jordan elimination.

Every count here has the form ``p + g`` where ``p`` is an integer polynomial
in N and ``g = sum_{n=1..N} sqrt(2)**n`` is a geometric sum. Both are held
exactly as ``a + b*sqrt(2)`` with integer ``a``, ``b`` and only rounded to a
float at the end, so the summation and the closed form agree bit for bit
even where the totals exceed float64 resolution.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext


@dataclass(frozen=True)
class Surd:
    """The real number ``rational + irrational * sqrt(2)`` with integer parts."""

    rational: int
    irrational: int = 0

    def __add__(self, other: "Surd | int") -> "Surd":
        if isinstance(other, int):
            return Surd(self.rational + other, self.irrational)
        return Surd(self.rational + other.rational, self.irrational + other.irrational)

    __radd__ = __add__

    def __mul__(self, other: "Surd | int") -> "Surd":
        if isinstance(other, int):
            return Surd(self.rational * other, self.irrational * other)
        a, b, c, d = self.rational, self.irrational, other.rational, other.irrational
        return Surd(a * c + 2 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def __sub__(self, other: "Surd | int") -> "Surd":
        return self + (-1) * other

    def __float__(self) -> float:
        with localcontext() as ctx:
            ctx.prec = 80
            value = Decimal(self.rational) + Decimal(self.irrational) * Decimal(2).sqrt()
            return float(value)

    def floor(self) -> int:
        b = self.irrational
        # floor(b * sqrt(2)) exactly, for either sign of b
        root = math.isqrt(2 * b * b)
        irr = root if b >= 0 else -root - 1
        return self.rational + irr


SQRT2 = Surd(0, 1)


def sqrt2_power(n: int) -> Surd:
    if n < 0:
        raise ValueError("negative powers are not needed here")
    half, odd = divmod(n, 2)
    return Surd(0, 2**half) if odd else Surd(2**half)


def pivot_search_charge(n: int) -> Surd:
    """``2**(n/2)``: what the paper-style accounting charges one Grover pivot search at size n."""
    return sqrt2_power(n)


def round_charge(n: int) -> Surd:
    """One outer-loop round at size n: search, elimination, back substitution, decrement, control."""
    return pivot_search_charge(n) + 2 * (n - 1) ** 2 + 2 * (n - 1) + 1 + 1


def paper_cost_exact(N: int) -> Surd:
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    total = Surd(0)
    for n in range(1, N + 1):
        total = total + round_charge(n)
    return total


def paper_cost_total(N: int) -> float:
    """Term-by-term sum of the per-round operation charges for rounds 1..N."""
    return float(paper_cost_exact(N))


def geometric_closed_form(N: int) -> Surd:
    # sqrt2 * (sqrt2**N - 1) / (sqrt2 - 1) == (2 + sqrt2) * (sqrt2**N - 1)
    return (2 + SQRT2) * (sqrt2_power(N) - 1)


def closed_form_exact(N: int) -> Surd:
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    poly = N * (N + 1) + (N - 1) * N * (2 * N - 1) // 3
    return geometric_closed_form(N) + poly


def closed_form_cost(N: int) -> float:
    """``N(N+1) + (N-1)N(2N-1)/3 + sqrt2 (sqrt2**N - 1)/(sqrt2 - 1)``, no floor applied."""
    return float(closed_form_exact(N))


def floored_closed_form(N: int) -> int:
    """Closed form with the integer part taken of the geometric term, for display."""
    poly = N * (N + 1) + (N - 1) * N * (2 * N - 1) // 3
    return poly + geometric_closed_form(N).floor()


def printed_theorem_cost(N: int) -> int:
    """The bound exactly as typeset in the theorem statement.

    Its polynomial ``N(N-1)(2N+1)/3`` does not match the per-round sum; kept
    so reports can show both side by side.
    """
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    return N * (N - 1) * (2 * N + 1) // 3 + geometric_closed_form(N).floor()


def sum_of_squares(N: int) -> int:
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    return N * (N + 1) * (2 * N + 1) // 6


def ratio_to_half_power(value: float, N: int) -> float:
    return value / 2 ** (N / 2)


ASYMPTOTIC_RATIO = math.sqrt(2) / (math.sqrt(2) - 1)


class CostModel(str, enum.Enum):
    PAPER_FORMULA = "paper-formula"
    SIMULATED = "simulated"

    @property
    def description(self) -> str:
        if self is CostModel.PAPER_FORMULA:
            return "pivot search charged 2^(n/2) operations per round of size n"
        return "pivot search charged the Grover iterations and oracle queries actually run"
