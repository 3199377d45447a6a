"""Exact rational matrices and Gauss-Jordan reduction.

Every scalar is a :class:`fractions.Fraction`; nothing here ever rounds.
Row operations return new matrices and the elimination keeps a log of the
operations it applied so a result can be replayed and audited.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Protocol, Sequence

from .errors import IndexOutOfRange, InvalidPivot, SameRow, ZeroFactor, DimensionMismatch
from .ledger import CostLedger

Rational = Fraction


def _as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DimensionMismatch(f"matrix must be at least 1x1, got {self.rows}x{self.cols}")
        entries = tuple(_as_rational(e) for e in self.entries)
        if len(entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(entries)}"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        if not rows:
            raise DimensionMismatch("matrix needs at least one row")
        width = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != width:
                raise DimensionMismatch(f"row {i} has {len(row)} entries, expected {width}")
        return cls(len(rows), width, tuple(e for row in rows for e in row))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        self._check_row(i)
        if not 0 <= j < self.cols:
            raise IndexOutOfRange(f"column {j} outside 0..{self.cols - 1}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        self._check_row(i)
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        if not 0 <= j < self.cols:
            raise IndexOutOfRange(f"column {j} outside 0..{self.cols - 1}")
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def matvec(self, x: Sequence) -> list[Fraction]:
        if len(x) != self.cols:
            raise DimensionMismatch(f"vector length {len(x)} does not match {self.cols} columns")
        return [sum((a * b for a, b in zip(self.row(i), x)), Fraction(0)) for i in range(self.rows)]

    def _check_row(self, i: int) -> None:
        if not 0 <= i < self.rows:
            raise IndexOutOfRange(f"row {i} outside 0..{self.rows - 1}")

    def _replace_rows(self, new_rows: dict[int, Iterable[Fraction]]) -> "Matrix":
        entries = list(self.entries)
        for i, values in new_rows.items():
            entries[i * self.cols:(i + 1) * self.cols] = values
        return Matrix(self.rows, self.cols, tuple(entries))


@dataclass(frozen=True)
class AugmentedSystem:
    """The system ``A x = b`` kept as coefficient matrix plus right-hand side."""

    coefficients: Matrix
    rhs: tuple[Fraction, ...]

    def __post_init__(self):
        rhs = tuple(_as_rational(v) for v in self.rhs)
        if len(rhs) != self.coefficients.rows:
            raise DimensionMismatch(
                f"rhs has {len(rhs)} entries but the matrix has {self.coefficients.rows} rows"
            )
        object.__setattr__(self, "rhs", rhs)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "AugmentedSystem":
        """Build from augmented rows, the last entry of each row being the rhs."""
        if not rows or len(rows[0]) < 2:
            raise DimensionMismatch("augmented rows need at least one coefficient and a rhs")
        return cls(Matrix.from_rows([list(r[:-1]) for r in rows]), tuple(r[-1] for r in rows))

    def augmented(self) -> Matrix:
        a = self.coefficients
        rows = [list(a.row(i)) + [self.rhs[i]] for i in range(a.rows)]
        return Matrix.from_rows(rows)


class RowOpKind(str, enum.Enum):
    SCALE = "scale"
    AXPY = "axpy"
    SWAP = "swap"


@dataclass(frozen=True)
class RowOperation:
    """One elementary row operation.

    ``dst`` is the row that changes. ``src`` is the second operand (the other
    row for swaps, the added row for axpy). ``col`` is the leftmost column the
    operation can change: entries left of it are zero in every touched row.
    """

    kind: RowOpKind
    dst: int
    src: Optional[int] = None
    factor: Optional[Fraction] = None
    col: int = 0

    def apply(self, matrix: Matrix) -> Matrix:
        if self.kind is RowOpKind.SCALE:
            return scale_row(matrix, self.dst, self.factor)
        if self.kind is RowOpKind.AXPY:
            return axpy_row(matrix, self.src, self.dst, self.factor)
        return swap_rows(matrix, self.dst, self.src)

    def arithmetic(self, width: int) -> dict[str, int]:
        """Multiplications and additions the operation costs on rows of ``width``."""
        touched = width - self.col - 1
        if self.kind is RowOpKind.SCALE:
            return {"multiplications": touched, "additions": 0}
        if self.kind is RowOpKind.AXPY:
            return {"multiplications": touched, "additions": touched}
        return {"multiplications": 0, "additions": 0}


def scale_row(matrix: Matrix, row: int, factor) -> Matrix:
    factor = _as_rational(factor)
    if factor == 0:
        raise ZeroFactor("cannot scale a row by zero")
    values = matrix.row(row)
    return matrix._replace_rows({row: [v * factor for v in values]})


def axpy_row(matrix: Matrix, src: int, dst: int, factor) -> Matrix:
    """Return ``matrix`` with row ``dst`` replaced by ``dst + factor * src``."""
    factor = _as_rational(factor)
    source, target = matrix.row(src), matrix.row(dst)
    if src == dst:
        raise SameRow(f"axpy needs two distinct rows, got {src} twice")
    if factor == 0:
        return matrix
    return matrix._replace_rows({dst: [t + factor * s for s, t in zip(source, target)]})


def swap_rows(matrix: Matrix, i: int, j: int) -> Matrix:
    ri, rj = matrix.row(i), matrix.row(j)
    if i == j:
        return matrix
    return matrix._replace_rows({i: rj, j: ri})


def replay(matrix: Matrix, log: Iterable[RowOperation]) -> Matrix:
    for op in log:
        matrix = op.apply(matrix)
    return matrix


def log_arithmetic(log: Iterable[RowOperation], width: int) -> dict[str, int]:
    totals = {"multiplications": 0, "additions": 0}
    for op in log:
        for key, value in op.arithmetic(width).items():
            totals[key] += value
    return totals


class PivotStrategy(Protocol):
    """Pivot search seam between classical scanning and Grover search.

    Called with a full column, the first candidate row and the run's ledger;
    returns a row index ``>= start`` holding a nonzero entry, or None.
    """

    name: str

    def __call__(self, column: Sequence[Fraction], start: int, ledger: CostLedger) -> Optional[int]:
        ...


def classical_pivot_scan(column: Sequence[Fraction], start: int, ledger: CostLedger) -> Optional[int]:
    if start > len(column):
        raise IndexOutOfRange(f"start {start} beyond column of length {len(column)}")
    for i in range(start, len(column)):
        ledger.charge(comparisons=1)
        if column[i] != 0:
            return i
    return None


class ClassicalPivot:
    name = "classical"

    def __call__(self, column, start, ledger):
        return classical_pivot_scan(column, start, ledger)


@dataclass(frozen=True)
class RrefResult:
    reduced: Matrix
    rank: int
    pivot_columns: tuple[int, ...]
    row_op_log: tuple[RowOperation, ...] = field(repr=False)


def rref(
    system: AugmentedSystem,
    pivot: Optional[PivotStrategy] = None,
    ledger: Optional[CostLedger] = None,
) -> RrefResult:
    """Reduce ``[A|b]`` to reduced row echelon form.

    The forward pass finds a pivot per column with ``pivot``, moves it into
    place, normalises it to 1 and clears the entries below. The backward pass
    then clears the entries above each pivot, last pivot first. Columns keep
    their original order.

    Ledger charges: each row operation is charged its actual arithmetic
    (see :meth:`RowOperation.arithmetic`), and each pass of either loop costs
    one subtraction (the counter decrement) and one control op (the loop test).
    Pivot search is charged by the strategy itself.
    """
    pivot = pivot if pivot is not None else ClassicalPivot()
    ledger = ledger if ledger is not None else CostLedger()
    mat = system.augmented()
    rows, width = mat.rows, mat.cols
    log: list[RowOperation] = []
    pivots: list[int] = []

    def do(op: RowOperation) -> None:
        nonlocal mat
        mat = op.apply(mat)
        log.append(op)
        ledger.charge(**op.arithmetic(width))

    r = 0
    for c in range(width):
        if r == rows:
            break
        ledger.charge(subtractions=1, control_ops=1)
        column = mat.column(c)
        i = pivot(column, r, ledger)
        if i is None:
            continue
        if not r <= i < rows or column[i] == 0:
            raise InvalidPivot(f"strategy {pivot.name!r} returned row {i} for column {c}")
        if i != r:
            do(RowOperation(RowOpKind.SWAP, r, i, col=c))
        lead = mat[r, c]
        if lead != 1:
            do(RowOperation(RowOpKind.SCALE, r, factor=1 / lead, col=c))
        for j in range(r + 1, rows):
            f = mat[j, c]
            if f != 0:
                do(RowOperation(RowOpKind.AXPY, j, r, -f, col=c))
        pivots.append(c)
        r += 1

    for k in reversed(range(len(pivots))):
        ledger.charge(subtractions=1, control_ops=1)
        c = pivots[k]
        for j in range(k):
            f = mat[j, c]
            if f != 0:
                do(RowOperation(RowOpKind.AXPY, j, k, -f, col=c))

    return RrefResult(mat, len(pivots), tuple(pivots), tuple(log))


class SolutionKind(str, enum.Enum):
    UNIQUE = "unique"
    AFFINE = "affine"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class SolutionSpace:
    kind: SolutionKind
    particular: Optional[tuple[Fraction, ...]]
    basis: tuple[tuple[Fraction, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def solve(system: AugmentedSystem, result: Optional[RrefResult] = None) -> SolutionSpace:
    """Describe the solution set of ``A x = b`` as a point plus a null-space basis.

    Pivot variables take the reduced rhs; each free variable contributes one
    basis vector with a 1 in its own slot and the negated reduced entries of
    its column in the pivot slots.
    """
    if result is None:
        result = rref(system)
    n = system.coefficients.cols
    reduced = result.reduced
    if n in result.pivot_columns:
        return SolutionSpace(SolutionKind.INCONSISTENT, None, ())

    pivot_cols = result.pivot_columns
    free_cols = [j for j in range(n) if j not in pivot_cols]
    particular = [Fraction(0)] * n
    for k, c in enumerate(pivot_cols):
        particular[c] = reduced[k, n]
    basis = []
    for f in free_cols:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for k, c in enumerate(pivot_cols):
            v[c] = -reduced[k, f]
        basis.append(tuple(v))
    kind = SolutionKind.UNIQUE if not free_cols else SolutionKind.AFFINE
    return SolutionSpace(kind, tuple(particular), tuple(basis))
