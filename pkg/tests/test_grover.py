import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgje import qsim
from qgje.errors import InvalidCounts, SizeMismatch
from qgje.grover import (
    DeutschResult,
    Oracle,
    default_retry_schedule,
    deutsch_classify,
    diffusion,
    diffusion_from_gates,
    grover_iterate,
    grover_search,
    iteration_count,
    make_plan,
    marked_probability,
    oracle_reflect,
    uniform_state,
)


def rotation_law(n, t, m):
    return math.sin((2 * m + 1) * math.asin(math.sqrt(t / 2**n))) ** 2


class TestUniformState:
    def test_values(self):
        np.testing.assert_allclose(uniform_state(1).amplitudes, [2**-0.5] * 2)
        np.testing.assert_allclose(uniform_state(2).amplitudes, [0.5] * 4)
        np.testing.assert_allclose(qsim.probabilities(uniform_state(4)), [1 / 16] * 16)

    def test_equals_hadamard_layer(self):
        s = qsim.basis_state(3, 0)
        for w in range(3):
            s = qsim.apply_hadamard(s, w)
        np.testing.assert_allclose(s.amplitudes, uniform_state(3).amplitudes, atol=1e-15)


class TestOracle:
    def test_reflect_marked(self, rng):
        s = qsim.random_state(3, rng)
        oracle = Oracle.from_marked(3, [5])
        out = oracle_reflect(s, oracle)
        expected = s.amplitudes.copy()
        expected[5] *= -1
        np.testing.assert_array_equal(out.amplitudes, expected)
        assert oracle.query_count == 1

    def test_empty_marked_is_identity(self, rng):
        s = qsim.random_state(2, rng)
        np.testing.assert_array_equal(oracle_reflect(s, Oracle.from_marked(2, [])).amplitudes, s.amplitudes)

    def test_involution(self, rng):
        s = qsim.random_state(3, rng)
        o = Oracle.from_marked(3, [0, 6])
        np.testing.assert_array_equal(oracle_reflect(oracle_reflect(s, o), o).amplitudes, s.amplitudes)

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            oracle_reflect(qsim.basis_state(2, 0), Oracle.from_marked(3, [1]))
        with pytest.raises(SizeMismatch):
            Oracle.from_marked(2, [4])

    def test_query_counting(self):
        o = Oracle.from_marked(2, [1])
        assert o.query(1) and not o.query(2)
        assert o.query_count == 2
        o.marked_indices()
        assert o.query_count == 2


class TestDiffusion:
    def test_uniform_fixed(self):
        s = uniform_state(4)
        np.testing.assert_allclose(diffusion(s).amplitudes, s.amplitudes, atol=1e-15)

    def test_explicit_vector(self):
        np.testing.assert_allclose(diffusion(qsim.basis_state(2, 3)).amplitudes, [0.5, 0.5, 0.5, -0.5])

    def test_involution(self, rng):
        for n in range(1, 9):
            s = qsim.random_state(n, rng)
            assert np.max(np.abs(diffusion(diffusion(s)).amplitudes - s.amplitudes)) < 1e-12

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matrix_form(self, n):
        dim = 1 << n
        S = np.full((dim, 1), dim**-0.5)
        expected = 2 * S @ S.T - np.eye(dim)
        np.testing.assert_allclose(qsim.operator_matrix(n, diffusion), expected, atol=1e-10)
        np.testing.assert_allclose(qsim.operator_matrix(n, diffusion_from_gates), expected, atol=1e-10)


class TestIterate:
    def test_four_items_one_step(self):
        state = grover_iterate(uniform_state(2), Oracle.from_marked(2, [2]))
        np.testing.assert_allclose(np.abs(state.amplitudes), [0, 0, 1, 0], atol=1e-12)

    def test_rotation_law(self, rng):
        for n in (1, 3, 5, 8):
            for t in range(1, min(4, 2**n) + 1):
                marked = rng.choice(2**n, t, replace=False)
                o = Oracle.from_marked(n, marked)
                s = uniform_state(n)
                for m in range(41):
                    assert abs(marked_probability(s, o) - rotation_law(n, t, m)) < 1e-9
                    s = grover_iterate(s, o)

    def test_all_marked(self):
        o = Oracle.from_marked(2, range(4))
        s = grover_iterate(uniform_state(2), o)
        np.testing.assert_allclose(qsim.probabilities(s), [0.25] * 4)

    def test_amplitudes_stay_real(self):
        o = Oracle.from_marked(5, [3, 17])
        s = uniform_state(5)
        for _ in range(30):
            s = grover_iterate(s, o)
            assert np.max(np.abs(s.amplitudes.imag)) < 1e-12


class TestIterationCount:
    def test_values(self):
        assert iteration_count(4, 1) == 1
        assert iteration_count(16, 16) == 0
        m = iteration_count(2**20, 1)
        assert m == 804
        assert rotation_law(20, 1, m) >= 0.999

    def test_invalid(self):
        with pytest.raises(InvalidCounts):
            iteration_count(4, 0)
        with pytest.raises(InvalidCounts):
            iteration_count(4, 5)

    @pytest.mark.parametrize("n", range(2, 13))
    def test_is_the_best_integer(self, n):
        # brute force over m within the first half-turn of the rotation
        K = 2**n
        for t in (1, 2, 3):
            m = iteration_count(K, t)
            first_period = int(math.pi / (2 * math.asin(math.sqrt(t / K))))
            best = max(range(first_period + 1), key=lambda k: rotation_law(n, t, k))
            assert rotation_law(n, t, m) == pytest.approx(rotation_law(n, t, best), abs=1e-12)


class TestPlan:
    def test_known_t(self):
        plan = make_plan(2, t_hint=1)
        assert plan.m == 1 and plan.K == 4
        assert plan.attempts()[0] == 1

    def test_schedule(self):
        assert default_retry_schedule(64) == (6, 4, 3, 2, 1, 1, 0)
        assert make_plan(6).attempts() == (6, 4, 3, 2, 1, 1, 0)


class TestSearch:
    def test_certain_hit(self):
        for k in range(4):
            o = Oracle.from_marked(2, [k])
            res = grover_search(o, np.random.default_rng(0), make_plan(2, t_hint=1))
            assert res.found == k and res.verified
            assert res.grover_iterations == 1 and res.oracle_queries == 2 and res.measurements == 1

    def test_empty(self):
        o = Oracle.from_marked(3, [])
        plan = make_plan(3)
        res = grover_search(o, np.random.default_rng(0), plan)
        assert res.found is None and not res.verified
        assert res.fallback_queries == 8
        assert res.measurements == len(plan.attempts())
        assert res.oracle_queries == res.grover_iterations + res.measurements + 8

    def test_no_fallback(self):
        res = grover_search(Oracle.from_marked(3, []), np.random.default_rng(0), make_plan(3), classical_fallback=False)
        assert res.found is None and res.fallback_queries == 0

    def test_unknown_t_many_seeds(self):
        marked = {5, 40, 63}
        for seed in range(100):
            o = Oracle.from_marked(6, marked)
            res = grover_search(o, np.random.default_rng(seed), make_plan(6))
            assert res.found in marked and res.verified

    @settings(max_examples=150, deadline=None)
    @given(st.integers(1, 6).flatmap(lambda n: st.tuples(
        st.just(n), st.sets(st.integers(0, 2**n - 1), max_size=2**n), st.integers(0, 2**32 - 1),
        st.booleans())))
    def test_verified_or_none_and_accounting(self, case):
        n, marked, seed, fallback = case
        o = Oracle.from_marked(n, marked)
        res = grover_search(o, np.random.default_rng(seed), make_plan(n), classical_fallback=fallback)
        if res.found is not None:
            assert res.verified and res.found in marked
        elif fallback:
            assert not marked
        assert o.query_count == res.oracle_queries
        assert res.oracle_queries == res.grover_iterations + res.measurements + res.fallback_queries


class TestDeutsch:
    @pytest.mark.parametrize("table,expected", [
        ((0, 0), DeutschResult.CONSTANT),
        ((0, 1), DeutschResult.BALANCED),
        ((1, 0), DeutschResult.BALANCED),
        ((1, 1), DeutschResult.CONSTANT),
    ])
    def test_all_tables(self, table, expected):
        for seed in range(20):
            assert deutsch_classify(table, np.random.default_rng(seed)) is expected

    def test_bad_table(self):
        with pytest.raises(ValueError):
            deutsch_classify((0, 1, 0))
