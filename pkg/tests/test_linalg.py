from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings

from qgje.errors import DimensionMismatch, IndexOutOfRange, InvalidPivot, SameRow, ZeroFactor
from qgje.ledger import CostLedger
from qgje.linalg import (
    AugmentedSystem,
    Matrix,
    RowOpKind,
    SolutionKind,
    axpy_row,
    classical_pivot_scan,
    log_arithmetic,
    replay,
    rref,
    scale_row,
    solve,
    swap_rows,
)

from conftest import systems


def sympy_rref(system):
    aug = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row]
                        for row in system.augmented().to_rows()])
    reduced, pivots = aug.rref()
    rows = [[F(int(x.p), int(x.q)) for x in reduced.row(i)] for i in range(reduced.rows)]
    return rows, tuple(pivots)


def test_matrix_validates_shape():
    with pytest.raises(DimensionMismatch):
        Matrix(2, 2, (1, 2, 3))
    with pytest.raises(DimensionMismatch):
        Matrix.from_rows([[1, 2], [3]])
    with pytest.raises(DimensionMismatch):
        AugmentedSystem(Matrix.identity(2), (1,))


def test_entries_are_fractions_in_lowest_terms():
    m = Matrix.from_rows([[F(2, 4), 0], ["-3/6", 5]])
    assert m[0, 0] == F(1, 2) and m[0, 0].denominator == 2
    assert m[1, 0] == F(-1, 2)
    assert m[0, 1].numerator == 0 and m[0, 1].denominator == 1


class TestRowOps:
    def test_scale(self):
        m = Matrix.from_rows([[2, 4], [7, 9]])
        out = scale_row(m, 0, F(1, 2))
        assert out.row(0) == (1, 2)
        assert out.row(1) == m.row(1)

    def test_scale_by_one_is_identity(self):
        m = Matrix.from_rows([[1, F(3, 7)]])
        assert scale_row(m, 0, 1) == m

    def test_scale_to_leading_one(self):
        m = Matrix.from_rows([[F(3, 2), 5, -1]])
        assert scale_row(m, 0, 1 / F(3, 2)).row(0) == (1, F(10, 3), F(-2, 3))

    def test_scale_errors(self):
        m = Matrix.identity(2)
        with pytest.raises(ZeroFactor):
            scale_row(m, 0, 0)
        with pytest.raises(IndexOutOfRange):
            scale_row(m, 2, 1)

    def test_axpy(self):
        m = Matrix.from_rows([[1, 2], [3, 4]])
        out = axpy_row(m, 0, 1, -3)
        assert out.row(1) == (0, -2)
        assert out.row(0) == (1, 2)

    def test_axpy_zero_factor(self):
        m = Matrix.from_rows([[1, 2], [3, 4]])
        assert axpy_row(m, 0, 1, 0) == m

    def test_axpy_eliminates_below_leading_one(self):
        a12, aj1, aj2 = F(2, 3), F(-5, 2), F(7)
        m = Matrix.from_rows([[1, a12], [aj1, aj2]])
        assert axpy_row(m, 0, 1, -aj1).row(1) == (0, aj2 - aj1 * a12)

    def test_axpy_errors(self):
        m = Matrix.identity(2)
        with pytest.raises(SameRow):
            axpy_row(m, 1, 1, 2)
        with pytest.raises(IndexOutOfRange):
            axpy_row(m, 0, 5, 2)

    def test_swap(self):
        m = Matrix.from_rows([[1, 2], [3, 4]])
        assert swap_rows(m, 0, 0) == m
        assert swap_rows(m, 0, 1).to_rows() == [[3, 4], [1, 2]]
        assert swap_rows(swap_rows(m, 0, 1), 0, 1) == m
        with pytest.raises(IndexOutOfRange):
            swap_rows(m, 0, 2)


class TestClassicalScan:
    def test_first_nonzero(self):
        ledger = CostLedger()
        assert classical_pivot_scan([F(0), F(0), F(5)], 0, ledger) == 2
        assert ledger.comparisons == 3

    def test_all_zero(self):
        assert classical_pivot_scan([F(0), F(0)], 0, CostLedger()) is None

    def test_start_skips_earlier_rows(self):
        assert classical_pivot_scan([F(7), F(0)], 1, CostLedger()) is None

    def test_empty_tail(self):
        ledger = CostLedger()
        assert classical_pivot_scan([F(1)], 1, ledger) is None
        assert ledger.comparisons == 0


class TestRref:
    def test_identity_unchanged(self):
        system = AugmentedSystem(Matrix.identity(3), (1, 2, 3))
        result = rref(system)
        assert result.reduced == system.augmented()
        assert result.rank == 3
        assert result.row_op_log == ()

    def test_two_by_two(self):
        result = rref(AugmentedSystem.from_rows([[1, 1, 2], [1, -1, 0]]))
        assert result.reduced.to_rows() == [[1, 0, 1], [0, 1, 1]]
        assert result.rank == 2
        assert result.pivot_columns == (0, 1)

    def test_zero_row(self):
        system = AugmentedSystem.from_rows([[0, 0, 0]])
        result = rref(system)
        assert result.reduced == system.augmented()
        assert result.rank == 0 and result.pivot_columns == ()

    def test_needs_swap(self):
        result = rref(AugmentedSystem.from_rows([[0, 2, 4], [3, 0, 6]]))
        assert result.reduced.to_rows() == [[1, 0, 2], [0, 1, 2]]
        assert result.row_op_log[0].kind is RowOpKind.SWAP

    def test_bad_strategy_is_rejected(self):
        class Liar:
            name = "liar"

            def __call__(self, column, start, ledger):
                return start

        with pytest.raises(InvalidPivot):
            rref(AugmentedSystem.from_rows([[0, 1, 1], [1, 0, 1]]), Liar())

    @settings(max_examples=150, deadline=None)
    @given(systems())
    def test_matches_independent_solver(self, system):
        result = rref(system)
        rows, pivots = sympy_rref(system)
        assert result.reduced.to_rows() == rows
        assert result.pivot_columns == pivots
        assert result.rank == len(pivots)

    @settings(max_examples=100, deadline=None)
    @given(systems())
    def test_rref_shape_invariants(self, system):
        result = rref(system)
        red = result.reduced
        for k, c in enumerate(result.pivot_columns):
            col = red.column(c)
            assert col[k] == 1
            assert all(v == 0 for i, v in enumerate(col) if i != k)
            assert all(v == 0 for v in red.row(k)[:c])
        for i in range(result.rank, red.rows):
            assert all(v == 0 for v in red.row(i))
        assert list(result.pivot_columns) == sorted(result.pivot_columns)

    @settings(max_examples=100, deadline=None)
    @given(systems())
    def test_idempotent(self, system):
        once = rref(system).reduced
        again = rref(AugmentedSystem.from_rows(once.to_rows())).reduced
        assert again == once

    @settings(max_examples=100, deadline=None)
    @given(systems())
    def test_log_replay(self, system):
        result = rref(system)
        assert replay(system.augmented(), result.row_op_log) == result.reduced

    @settings(max_examples=100, deadline=None)
    @given(systems())
    def test_rank_bounds(self, system):
        a = system.coefficients
        full = rref(system).rank
        coeff_only = rref(AugmentedSystem(a, (0,) * a.rows)).rank
        assert coeff_only <= min(a.rows, a.cols)
        assert coeff_only <= full <= coeff_only + 1

    @settings(max_examples=60, deadline=None)
    @given(systems())
    def test_ledger_matches_log(self, system):
        ledger = CostLedger()
        result = rref(system, ledger=ledger)
        counts = log_arithmetic(result.row_op_log, system.augmented().cols)
        assert ledger.multiplications == counts["multiplications"]
        assert ledger.additions == counts["additions"]


class TestSolve:
    def test_single_equation(self):
        space = solve(AugmentedSystem.from_rows([[1, 2, 3]]))
        assert space.kind is SolutionKind.AFFINE
        assert space.particular == (3, 0)
        assert space.basis == ((-2, 1),)

    def test_unique(self):
        space = solve(AugmentedSystem.from_rows([[1, 0, 1], [0, 1, 2]]))
        assert space.kind is SolutionKind.UNIQUE
        assert space.particular == (1, 2)
        assert space.basis == ()

    def test_inconsistent(self):
        space = solve(AugmentedSystem.from_rows([[0, 0, 1]]))
        assert space.kind is SolutionKind.INCONSISTENT
        assert space.particular is None and space.basis == ()

    def test_free_column_between_pivots(self):
        # x1 is free and sits between pivot columns 0 and 2
        space = solve(AugmentedSystem.from_rows([[1, 2, 0, 5], [0, 0, 1, 7]]))
        assert space.particular == (5, 0, 7)
        assert space.basis == ((-2, 1, 0),)

    @settings(max_examples=150, deadline=None)
    @given(systems())
    def test_solution_space_is_correct(self, system):
        space = solve(system)
        a, b = system.coefficients, list(system.rhs)
        rows, pivots = sympy_rref(system)
        if a.cols in pivots:
            assert space.kind is SolutionKind.INCONSISTENT
            return
        assert a.matvec(space.particular) == b
        for v in space.basis:
            assert a.matvec(v) == [0] * a.rows
        assert len(space.basis) == a.cols - len(pivots)
        free = [j for j in range(a.cols) if j not in pivots]
        for k, v in enumerate(space.basis):
            assert [v[j] for j in free] == [int(i == k) for i in range(len(free))]
        assert (space.kind is SolutionKind.UNIQUE) == (not free)
