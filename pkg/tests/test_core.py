import random

import pytest
from conftest import (
    all_vertices,
    brute_eval,
    flipped,
    function_and_vertex,
    qpb_functions,
)
from hypothesis import given, settings
from hypothesis import strategies as st

from qpbhard.core import (
    QpbFunction,
    apply_flip,
    code_vertex,
    discrete_derivative,
    eval_at,
    flip_gain,
    full_value_table,
    improving_moves,
    is_local_max,
    make_state,
    ones,
    origin,
    restrict,
    value_table,
    vertex_code,
)
from qpbhard.families import build_f

# f_6 in exact mode, re-derived by expanding the recursion symbolically
F6_LINEAR = (1, 1, -12, -1, -3, -60)
F6_QUAD = {
    (1, 3): 9, (2, 3): 9, (1, 4): -12, (2, 4): -12, (3, 4): 48, (1, 5): -4, (2, 5): -4,
    (3, 5): 2, (4, 5): 2, (1, 6): 7, (2, 6): 7, (5, 6): 72,
}


@pytest.fixture
def f6():
    return QpbFunction(6, F6_LINEAR, F6_QUAD)


class TestConstruction:
    def test_zero_pairs_dropped(self):
        f = QpbFunction(3, (0, 0, 0), {(1, 2): 0, (2, 3): 5})
        assert f.quadratic == {(2, 3): 5}

    def test_rejects_unordered_pair(self):
        with pytest.raises(ValueError):
            QpbFunction(3, (0, 0, 0), {(2, 1): 1})

    def test_rejects_out_of_range_pair(self):
        with pytest.raises(ValueError):
            QpbFunction(3, (0, 0, 0), {(1, 4): 1})

    def test_rejects_float(self):
        with pytest.raises(TypeError):
            QpbFunction(2, (1.5, 0))

    def test_rejects_wrong_linear_length(self):
        with pytest.raises(ValueError):
            QpbFunction(3, (1, 1))

    def test_from_terms_normalises(self):
        f = QpbFunction.from_terms(3, {1: 2}, {(3, 1): 4, (1, 3): 1, (2, 2): 7})
        assert f.linear == (2, 7, 0)
        assert f.quadratic == {(1, 3): 5}

    def test_symmetric_read(self, f6):
        assert f6.coef(3, 1) == f6.coef(1, 3) == 9
        assert f6.coef(4, 6) == 0
        assert f6.coef(6, 6) == -60

    def test_matches_generator(self, f6):
        assert build_f(6).function == f6

    def test_big_coefficients_exact(self):
        big = 3**200
        f = QpbFunction(2, (big, -big + 1), {(1, 2): big})
        assert eval_at(f, (1, 1)) == big + 1


class TestEval:
    def test_f2_all_ones(self, f2):
        assert eval_at(f2, (1, 1)) == 2

    @given(qpb_functions())
    def test_origin_is_zero(self, f):
        assert eval_at(f, origin(f.n)) == 0

    def test_f6_value(self, f6):
        # 1 + 1 - 12 + 9 + 9
        assert eval_at(f6, (1, 1, 1, 0, 0, 0)) == 8

    def test_all_ones_is_coefficient_sum(self, f6):
        assert eval_at(f6, ones(6)) == sum(F6_LINEAR) + sum(F6_QUAD.values()) == 50

    def test_dimension_mismatch(self, f2):
        with pytest.raises(ValueError):
            eval_at(f2, (1, 1, 1))

    @given(function_and_vertex())
    def test_matches_brute_formula(self, fx):
        f, x = fx
        assert eval_at(f, x) == brute_eval(f, x)


class TestDerivative:
    def test_f6_claim_example(self, f6):
        # coefficient of x_3 once x_1 = x_2 = 1: -12 + 9 + 9
        assert discrete_derivative(f6, (1, 1, 0, 0, 0, 0), 3) == 6
        assert discrete_derivative(f6, (1, 1, 1, 0, 0, 0), 3) == 6

    def test_f6_at_origin(self, f6):
        assert discrete_derivative(f6, origin(6), 3) == -12

    def test_f2_constant(self, f2):
        for x in all_vertices(2):
            assert discrete_derivative(f2, x, 1) == 1

    def test_index_range(self, f2):
        with pytest.raises(IndexError):
            discrete_derivative(f2, (0, 0), 0)
        with pytest.raises(IndexError):
            discrete_derivative(f2, (0, 0), 3)

    @given(function_and_vertex(), st.data())
    def test_independent_of_own_bit(self, fx, data):
        f, x = fx
        i = data.draw(st.integers(1, f.n))
        assert discrete_derivative(f, x, i) == discrete_derivative(f, flipped(x, i), i)

    @given(function_and_vertex(), st.data())
    def test_is_eval_difference(self, fx, data):
        f, x = fx
        i = data.draw(st.integers(1, f.n))
        hi = list(x)
        lo = list(x)
        hi[i - 1], lo[i - 1] = 1, 0
        assert discrete_derivative(f, x, i) == brute_eval(f, hi) - brute_eval(f, lo)


class TestFlipGain:
    def test_f2_origin(self, f2):
        assert flip_gain(f2, (0, 0), 1) == 1

    def test_f6_down_flip(self, f6):
        x = (1, 1, 1, 1, 0, 0)
        expected = brute_eval(f6, flipped(x, 1)) - brute_eval(f6, x)
        assert expected == 2
        assert flip_gain(f6, x, 1) == expected

    @given(function_and_vertex(), st.data())
    def test_antisymmetric(self, fx, data):
        f, x = fx
        i = data.draw(st.integers(1, f.n))
        assert flip_gain(f, x, i) == -flip_gain(f, flipped(x, i), i)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_exhaustive_gain_equals_eval_difference(self, n):
        rnd = random.Random(n)
        f = QpbFunction.from_terms(
            n,
            [rnd.randint(-20, 20) for _ in range(n)],
            {(i, j): rnd.randint(-20, 20) for i in range(1, n + 1) for j in range(i + 1, n + 1)
             if rnd.random() < 0.6},
        )
        table = full_value_table(f).tolist()
        for code in range(1 << n):
            x = code_vertex(code, n)
            for i in range(1, n + 1):
                assert flip_gain(f, x, i) == table[code ^ (1 << (i - 1))] - table[code]


class TestImprovingMoves:
    def test_f2(self, f2):
        assert improving_moves(f2, (0, 0)) == [(1, 1), (2, 1)]
        assert improving_moves(f2, (1, 1)) == []

    def test_f6_only_x3(self, f6):
        assert improving_moves(f6, (1, 1, 0, 0, 0, 0)) == [(3, 6)]

    def test_local_max(self, f2, f6):
        assert is_local_max(f2, (1, 1))
        assert not is_local_max(f2, (0, 0))
        assert is_local_max(f6, ones(6))

    @given(function_and_vertex())
    def test_empty_iff_no_better_neighbour(self, fx):
        f, x = fx
        v = brute_eval(f, x)
        no_better = all(brute_eval(f, flipped(x, i)) <= v for i in range(1, f.n + 1))
        assert (improving_moves(f, x) == []) == no_better


class TestSearchState:
    def test_f2_origin(self, f2):
        s = make_state(f2, (0, 0))
        assert s.value == 0 and s.derivatives == [1, 1]

    def test_f6_origin(self, f6):
        s = make_state(f6, origin(6))
        assert s.value == 0 and s.derivatives == list(F6_LINEAR)

    def test_f6_all_ones(self, f6):
        assert make_state(f6, ones(6)).value == 50

    def test_flip_f2(self, f2):
        s = apply_flip(make_state(f2, (0, 0)), f2, 1)
        assert s.point == (1, 0) and s.value == 1

    def test_flip_f6_gain(self, f6):
        s = make_state(f6, (1, 1, 0, 0, 0, 0))
        before = s.value
        apply_flip(s, f6, 3)
        assert s.value - before == 6

    @given(function_and_vertex(), st.data())
    def test_double_flip_is_identity(self, fx, data):
        f, x = fx
        i = data.draw(st.integers(1, f.n))
        s = make_state(f, x)
        orig = s.copy()
        apply_flip(apply_flip(s, f, i), f, i)
        assert s == orig

    @given(function_and_vertex(max_n=12), st.lists(st.integers(0, 1000), max_size=40))
    def test_incremental_matches_scratch(self, fx, flips):
        f, x = fx
        s = make_state(f, x)
        for r in flips:
            i = r % f.n + 1
            d_i = s.derivatives[i - 1]
            apply_flip(s, f, i)
            assert s.derivatives[i - 1] == d_i
            assert s == make_state(f, s.point)

    def test_index_range(self, f2):
        with pytest.raises(IndexError):
            apply_flip(make_state(f2, (0, 0)), f2, 3)


class TestValueTable:
    @given(qpb_functions(max_n=7))
    def test_matches_brute(self, f):
        table = full_value_table(f).tolist()
        for x in all_vertices(f.n):
            assert table[vertex_code(x)] == brute_eval(f, x)

    @settings(max_examples=30)
    @given(qpb_functions(min_n=3, max_n=7), st.integers(1, 3))
    def test_blocking_is_transparent(self, f, block_bits):
        merged = {}
        for off, blk in value_table(f, block_bits=block_bits):
            for k, v in enumerate(blk.tolist()):
                merged[off + k] = v
        assert merged == {vertex_code(x): brute_eval(f, x) for x in all_vertices(f.n)}

    def test_object_path_for_huge_coefficients(self):
        big = 2**90
        f = QpbFunction(5, (big, -big, 3, 0, 1), {(1, 2): big + 7, (2, 5): -(big * 3), (3, 4): 11})
        table = full_value_table(f).tolist()
        assert all(isinstance(v, int) for v in table)
        for x in all_vertices(5):
            assert table[vertex_code(x)] == brute_eval(f, x)

    def test_code_roundtrip(self):
        for code in range(64):
            assert vertex_code(code_vertex(code, 6)) == code


def test_restrict_drops_tail(f6):
    r = restrict(f6, 2)
    assert r == QpbFunction(2, (1, 1))
