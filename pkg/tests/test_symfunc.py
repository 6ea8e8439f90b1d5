from collections import Counter
from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from oracles import esym, monomial_sym, pieri_brute, power_det
from vandersum import fixtures
from vandersum.detcore import det_rows
from vandersum.errors import DimensionMismatch, ParameterRangeError
from vandersum.scalars import EvalPoint, GaussianRational as G, sample_admissible
from vandersum.subsets import SubsetMask
from vandersum.symfunc import (ALL_LEMMAS, a_poly, elementary_sym, lemma_check, lemma_grid,
                               pieri_multiply, pieri_power, pieri_sides, pieri_terms,
                               product_expand_check, product_expansion_sides,
                               product_expansion_terms, reduction_lemma_check,
                               reduction_lemma_sides, vanishing_lemma_check,
                               vanishing_lemma_value, vanishing_matrix)

POINT7 = sample_admissible(7, "gauss-rational", 11)


def test_elementary_examples():
    S = SubsetMask.of(7, [4, 5, 6, 7])
    xs = [POINT7[j - 1] for j in S]
    assert elementary_sym(0, S, POINT7) == 1
    assert elementary_sym(2, S, POINT7) == sum((x * y for x, y in combinations(xs, 2)), G(0))
    assert elementary_sym(4, S, POINT7) == xs[0] * xs[1] * xs[2] * xs[3]
    assert elementary_sym(5, S, POINT7) == 0
    assert elementary_sym(-1, S, POINT7) == 0


def test_elementary_generating_function():
    for n in range(1, 8):
        a = sample_admissible(n, "gauss-rational", n)
        S = SubsetMask.full(n)
        total = sum((elementary_sym(l, S, a) for l in range(n + 1)), G(0))
        expected = G(1)
        for x in a:
            expected = expected * (1 + x)
        assert total == expected


def test_elementary_against_oracle():
    for bits in range(1 << 7):
        S = SubsetMask(7, bits)
        xs = [POINT7[j - 1] for j in S]
        for l in range(len(xs) + 1):
            assert elementary_sym(l, S, POINT7) == esym(l, xs, G(1))


def test_a_poly_examples():
    I = SubsetMask.of(7, [1, 2, 3])
    a1, a2, a3 = POINT7[0], POINT7[1], POINT7[2]
    expected = a1 ** 4 * (a2 ** 2 + a3 ** 2) + a2 ** 4 * (a1 ** 2 + a3 ** 2) + a3 ** 4 * (a1 ** 2 + a2 ** 2)
    assert a_poly((0, 2, 4), I, POINT7) == expected
    assert a_poly((0, 0, 1), I, POINT7) == a1 + a2 + a3
    assert a_poly((3, 3, 3), I, POINT7) == (a1 * a2 * a3) ** 3
    with pytest.raises(DimensionMismatch):
        a_poly((0, 1), I, POINT7)


def test_a_poly_against_oracle():
    a = sample_admissible(4, "gauss-rational", 2)
    I = SubsetMask.full(4)
    for seq in product(range(4), repeat=4):
        if list(seq) == sorted(seq):
            assert a_poly(seq, I, a) == monomial_sym(seq, list(a), G(1))


def test_a_poly_relabelling():
    a = sample_admissible(5, "gauss-rational", 6)
    b = a.permuted((4, 3, 2, 1, 0))
    assert a_poly((0, 1, 3), SubsetMask.of(5, [1, 2, 3]), a) == a_poly((0, 1, 3), SubsetMask.of(5, [3, 4, 5]), b)


def test_product_expansion_matches_golden_listing():
    assert product_expansion_terms(3, 7) == fixtures.EXPANSION_3_7
    assert len(fixtures.EXPANSION_3_7) == 35


def test_product_expansion_small():
    a = EvalPoint.of([2, 3])
    lhs, rhs = product_expansion_sides(SubsetMask.of(2, [1]), a)
    assert lhs == rhs == 5
    lhs, rhs = product_expansion_sides(SubsetMask.of(2, []), a)
    assert lhs == rhs == 1


def test_product_expansion_all_subsets():
    for n in range(1, 8):
        a = sample_admissible(n, "gauss-rational", 30 + n)
        for bits in range(1 << n):
            assert product_expand_check(SubsetMask(n, bits), a)


def test_product_expansion_brute():
    """Direct expansion of prod (a_i a_j - 1) over subsets of the pair set."""
    a = sample_admissible(5, "gauss-rational", 1)
    I = SubsetMask.of(5, [2, 4])
    pairs = [(i, j) for i in I for j in I.complement()]
    total = G(0)
    for r in range(len(pairs) + 1):
        for K in combinations(pairs, r):
            term = G(1)
            for i, j in K:
                term = term * a[i - 1] * a[j - 1]
            total = total + term if (len(pairs) - r) % 2 == 0 else total - term
    assert product_expansion_sides(I, a)[1] == total


def test_pieri_examples():
    assert pieri_multiply(1, (0, 1)) == [(0, 2)]
    assert pieri_multiply(0, (1, 4)) == [(1, 4)]
    assert pieri_multiply(3, (0, 1, 2)) == [(1, 2, 3)]
    a = EvalPoint.of([2, 3])
    lhs, rhs = pieri_sides(1, (0, 1), SubsetMask.full(2), a)
    assert lhs == rhs == 9 - 4
    b = sample_admissible(3, "gauss-rational", 0)
    lhs, rhs = pieri_sides(3, (0, 1, 2), SubsetMask.full(3), b)
    assert lhs == rhs == power_det((1, 2, 3), list(b), G(1))
    with pytest.raises(ValueError):
        pieri_multiply(1, (2, 1))


def test_pieri_grid():
    for k in range(1, 5):
        a = sample_admissible(k, "gauss-rational", k)
        J = SubsetMask.full(k)
        for m in combinations(range(7), k):
            for l in range(k + 1):
                lhs, rhs = pieri_sides(l, m, J, a)
                assert lhs == rhs == pieri_brute(l, m, list(a), G(1))


def test_pieri_holds_for_unsorted_exponents():
    a = sample_admissible(3, "gauss-rational", 5)
    S = SubsetMask.full(3)
    for m in ((3, 0, 5), (2, 2, 4), (4, 1, 1)):
        for l in range(4):
            total = sum((power_det(mp, list(a), G(1)) for mp in pieri_terms(l, m)), G(0))
            assert elementary_sym(l, S, a) * power_det(m, list(a), G(1)) == total


@given(st.integers(0, 3), st.integers(0, 3), st.lists(st.integers(0, 5), min_size=3, max_size=3, unique=True))
@settings(max_examples=50, deadline=None)
def test_pieri_operators_commute(l1, l2, m):
    m = tuple(sorted(m))
    assert pieri_power((l1, l2), m) == pieri_power((l2, l1), m)


def test_pieri_power_multiplicities():
    # (0,1) -> (1,1), (0,2) -> (2,1), (1,2), (1,2), (0,3)
    assert pieri_power((1, 1), (0, 1)) == Counter({(1, 2): 2, (2, 1): 1, (0, 3): 1})
    assert pieri_power((1, 1), (0, 1), keep_degenerate=False) == Counter({(1, 2): 1, (0, 3): 1})


def test_vanishing_examples():
    a = sample_admissible(5, "gauss-rational", 3)
    assert vanishing_lemma_check("L1", 5, 2, 1, a)
    for l in range(4):
        assert vanishing_lemma_check("L1", 5, 0, l, a)
    for l in range(1, 5):
        assert vanishing_lemma_check("L2", 5, 4, l, a)


def test_vanishing_out_of_range():
    a = sample_admissible(4, "gauss-rational", 3)
    with pytest.raises(ParameterRangeError):
        vanishing_lemma_value("L1", 4, 2, 1, a)
    with pytest.raises(ParameterRangeError):
        vanishing_lemma_value("L2", 4, 1, 1, a)
    # just outside the region the determinant really is nonzero
    assert not det_rows(vanishing_matrix(4, 1, 2, a)).is_zero()


def test_reduction_examples():
    a = EvalPoint.of([2, 3, 5])
    lhs, rhs = reduction_lemma_sides("L4", a, n=3)
    assert lhs == rhs == 174
    b = sample_admissible(3, "gauss-rational", 1)
    assert reduction_lemma_check("L3", b, n=3, k=0)
    lhs, rhs = reduction_lemma_sides("L6cor", b, n=3, k=1, m=(1, 3))
    xs = list(b)
    expected = power_det((0, 1, 4), xs, G(1)) + power_det((0, 2, 3), xs, G(1))
    assert lhs == rhs == expected


def test_reduction_out_of_range():
    a = sample_admissible(4, "gauss-rational", 0)
    with pytest.raises(ParameterRangeError):
        reduction_lemma_check("L6", a, n=4, k=1, m=(0, 2, 3))
    with pytest.raises(ParameterRangeError):
        reduction_lemma_check("L6", a, n=4, k=4, m=(1, 2, 3))
    with pytest.raises(ParameterRangeError):
        reduction_lemma_check("L5", a, n=4, k=4)
    with pytest.raises(ParameterRangeError):
        reduction_lemma_check("L3", a, n=4, k=3)


@pytest.mark.parametrize("which", ALL_LEMMAS)
def test_lemma_grids_small(which):
    for cell in lemma_grid(which, 5, max_exponent=6):
        for seed in range(2):
            a = sample_admissible(cell["n"], "gauss-rational", seed)
            assert lemma_check(which, a, cell), cell


def test_lemma_grid_rejects_unknown():
    with pytest.raises(ValueError):
        list(lemma_grid("L9", 3))
