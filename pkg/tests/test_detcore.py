import random
from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from oracles import cofactor_det, leibniz_det, power_det
from vandersum.detcore import (Matrix, det_by_elimination, det_rows, determinant, laplace_split_check,
                               laplace_split_sides, power_delta, vandermonde_delta)
from vandersum.errors import DimensionMismatch, NotSquare
from vandersum.scalars import EvalPoint, GaussianRational as G, PrimeField as P, sample_admissible
from vandersum.subsets import SubsetMask

small = st.fractions(min_value=-9, max_value=9, max_denominator=5)
gauss = st.builds(G, small, small)


def rows_of(values):
    return [[G(v) for v in r] for r in values]


def test_det_examples():
    assert det_rows(rows_of([[1, 2], [3, 4]])) == -2
    assert det_rows(rows_of([[1, 2], [1, 2]])) == 0
    assert det_rows(rows_of([[1, 2, 4], [1, 3, 9], [1, 5, 25]])) == 6
    assert det_rows([]) == 1


def test_det_needs_pivoting():
    assert det_rows(rows_of([[0, 1], [1, 0]])) == -1
    assert det_rows(rows_of([[0, 0, 1], [0, 1, 0], [1, 0, 0]])) == -1


def test_matrix_shape_errors():
    with pytest.raises(NotSquare):
        determinant(Matrix.from_rows(rows_of([[1, 2, 3], [4, 5, 6]])))
    with pytest.raises(DimensionMismatch):
        Matrix.from_rows([[G(1)], [G(1), G(2)]])
    with pytest.raises(DimensionMismatch):
        Matrix(2, 2, [G(1)])


def test_matrix_str_one_row_per_line():
    M = Matrix.from_rows(rows_of([[1, F(1, 2)], [0, -3]]))
    assert str(M) == "1  1/2\n0  -3"


@st.composite
def square(draw):
    n = draw(st.integers(1, 5))
    return [[draw(gauss) for _ in range(n)] for _ in range(n)]


@given(square())
@settings(max_examples=60, deadline=None)
def test_det_matches_cofactor_oracle(rows):
    assert det_rows(rows) == cofactor_det(rows, G(1))


@given(square())
@settings(max_examples=60, deadline=None)
def test_fraction_free_path_matches_field_elimination(rows):
    assert det_rows(rows) == det_by_elimination(rows)


@given(st.integers(1, 5).flatmap(lambda n: st.lists(
    st.lists(st.integers(0, 100), min_size=n, max_size=n), min_size=n, max_size=n)))
@settings(max_examples=60, deadline=None)
def test_prime_field_det_matches_cofactor(values):
    rows = [[P(v, 101) for v in r] for r in values]
    assert det_rows(rows) == cofactor_det(rows, P(1, 101))


def test_singular_and_zero_pivot_cases():
    rows = rows_of([[0, 1, 2], [0, 3, 4], [5, 6, 7]])
    assert det_rows(rows) == det_by_elimination(rows) == -10
    assert det_rows(rows_of([[0, 1], [0, 2]])) == 0
    assert det_rows(rows_of([[F(1, 3), F(1, 2)], [F(2, 5), F(-1, 7)]])) == F(-1, 21) - F(1, 5)


@given(square(), st.data())
@settings(max_examples=40, deadline=None)
def test_row_swap_and_scale(rows, data):
    n = len(rows)
    d = det_rows(rows)
    if n >= 2:
        i, j = data.draw(st.sampled_from(list(combinations(range(n), 2))))
        swapped = [list(r) for r in rows]
        swapped[i], swapped[j] = swapped[j], swapped[i]
        assert det_rows(swapped) == -d
    c = data.draw(gauss)
    scaled = [list(r) for r in rows]
    scaled[0] = [c * x for x in scaled[0]]
    assert det_rows(scaled) == c * d


def test_vandermonde_examples():
    a = EvalPoint.of([2, 3, 5, 7, 11])
    assert vandermonde_delta(SubsetMask.of(5, [5]), a) == 1
    assert vandermonde_delta(SubsetMask.of(5, []), a) == 1
    b = EvalPoint.of([2, 3, 5])
    assert vandermonde_delta(SubsetMask.of(3, [1, 2]), b) == 1
    assert vandermonde_delta(SubsetMask.full(3), b) == 6


def test_power_delta_examples():
    a = EvalPoint.of([2, 3])
    J = SubsetMask.full(2)
    assert power_delta((0, 2), J, a) == 5
    assert power_delta((2, 2), J, a) == 0
    assert power_delta((2, 0), J, a) == -5
    with pytest.raises(DimensionMismatch):
        power_delta((0, 1, 2), J, a)


def test_vandermonde_is_power_delta_of_staircase():
    for n in range(1, 7):
        a = sample_admissible(n, "gauss-rational", n)
        for bits in range(1 << n):
            J = SubsetMask(n, bits)
            assert vandermonde_delta(J, a) == power_delta(tuple(range(len(J))), J, a)


def test_power_delta_against_leibniz():
    rng = random.Random(4)
    a = sample_admissible(4, "gauss-rational", 9)
    for _ in range(20):
        exps = [rng.randrange(0, 7) for _ in range(4)]
        assert power_delta(exps, SubsetMask.full(4), a) == power_det(exps, list(a), G(1))


def test_laplace_split_examples():
    a = EvalPoint.of([2, 3])
    assert laplace_split_check((0, 1), 1, a)
    assert laplace_split_check((0, 1), 0, a)
    b = sample_admissible(4, "gauss-rational", 2)
    lhs, rhs = laplace_split_sides((0, 1, 2, 3), 2, b)
    assert lhs == rhs == leibniz_det([[x ** e for e in range(4)] for x in b], G(1))


def test_laplace_split_grid():
    for n in range(1, 6):
        for m in combinations(range(8), n):
            for seed in range(2):
                a = sample_admissible(n, "gauss-rational", seed)
                for k in range(n + 1):
                    assert laplace_split_check(m, k, a), (m, k)
