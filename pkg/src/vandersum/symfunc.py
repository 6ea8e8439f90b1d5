"""Elementary symmetric sums, partition polynomials and the lemma checks.

All identities here are checked by exact evaluation at a point: a
polynomial identity of bounded degree that holds at enough random points of
Q(i) (or a large prime field) is a sound desk-scale proxy for the symbolic
statement.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations
from typing import Iterator, Sequence

from .detcore import det_rows, power_delta
from .errors import DimensionMismatch, ParameterRangeError, WorkloadGuardExceeded
from .scalars import EvalPoint, Scalar
from .sequences import up_sequences
from .subsets import SubsetMask

PRODUCT_EXPANSION_MAX_N = 8


def elementary_sym(l: int, S: SubsetMask, a: EvalPoint) -> Scalar:
    """Sum over ``l``-subsets of ``S`` of the product of the chosen ``a``'s.

    ``S_0 = 1``; ``l > |S|`` (or ``l < 0``) gives 0 rather than an error.
    """
    xs = [a[j - 1] for j in S]
    if l < 0 or l > len(xs):
        return a.zero()
    # e[t] after processing a prefix of xs
    e = [a.one()] + [a.zero()] * l
    for x in xs:
        for t in range(l, 0, -1):
            e[t] = e[t] + e[t - 1] * x
    return e[l]


def a_poly(nseq: Sequence[int], I: SubsetMask, a: EvalPoint) -> Scalar:
    """Sum over block partitions of ``I`` with ``|I_m| = #{r : n_r = m}``
    of ``prod_m prod_{i in I_m} a_i ** m``."""
    elems = I.elements()
    if len(nseq) != len(elems):
        raise DimensionMismatch(f"|I| = {len(elems)} but sequence has length {len(nseq)}")
    counts = sorted(Counter(nseq).items())

    def blocks(remaining: tuple[int, ...], idx: int) -> Scalar:
        if idx == len(counts):
            return a.one()
        value, size = counts[idx]
        total = a.zero()
        for block in combinations(remaining, size):
            rest = tuple(e for e in remaining if e not in block)
            mono = a.one()
            if value:
                for i in block:
                    mono = mono * a[i - 1] ** value
            total = total + mono * blocks(rest, idx + 1)
        return total

    return blocks(elems, 0)


def product_expansion_terms(k: int, n: int) -> list[tuple[int, tuple[int, ...]]]:
    """``(sign, nseq)`` for every term of the product expansion with ``|I| = k``.

    Ordered by weight from ``k(n-k)`` down to 0, then increasing in the
    last-entry-first order.
    """
    out = []
    top = k * (n - k)
    for p in range(top, -1, -1):
        sign = -1 if (top - p) & 1 else 1
        for seq in up_sequences(k, n - k, p):
            out.append((sign, seq))
    return out


def product_expansion_sides(I: SubsetMask, a: EvalPoint) -> tuple[Scalar, Scalar]:
    n = a.n
    if n > PRODUCT_EXPANSION_MAX_N:
        raise WorkloadGuardExceeded(f"n = {n} exceeds {PRODUCT_EXPANSION_MAX_N}")
    Ic = I.complement()
    lhs = a.one()
    for i in I:
        for j in Ic:
            lhs = lhs * (a[i - 1] * a[j - 1] - 1)
    S = [elementary_sym(l, Ic, a) for l in range(len(Ic) + 1)]
    rhs = a.zero()
    for sign, seq in product_expansion_terms(len(I), n):
        term = a_poly(seq, I, a)
        for r in seq:
            term = term * S[r]
        rhs = rhs + term if sign > 0 else rhs - term
    return lhs, rhs


def product_expand_check(I: SubsetMask, a: EvalPoint) -> bool:
    lhs, rhs = product_expansion_sides(I, a)
    return lhs == rhs


# -- dual Pieri rule ---------------------------------------------------------

def _strict(m: Sequence[int]) -> bool:
    return all(x < y for x, y in zip(m, m[1:]))


def pieri_terms(l: int, m: Sequence[int], keep_degenerate: bool = True) -> list[tuple[int, ...]]:
    """Every ``m + eps`` with ``eps`` in ``{0,1}**len(m)`` and ``|eps| = l``.

    Valid for any exponent sequence ``m``: ``S_l * Delta_m = sum Delta_{m'}``.
    With ``keep_degenerate=False`` sequences with a repeated entry (zero
    determinants) are dropped.
    """
    out = []
    for bumps in combinations(range(len(m)), l):
        mp = list(m)
        for i in bumps:
            mp[i] += 1
        mp = tuple(mp)
        if keep_degenerate or len(set(mp)) == len(mp):
            out.append(mp)
    return out


def pieri_multiply(l: int, m: Sequence[int]) -> list[tuple[int, ...]]:
    """Strictly increasing ``m'`` with ``S_l * Delta_m = sum_{m'} Delta_{m'}``."""
    if any(v < 0 for v in m) or not _strict(m):
        raise ValueError(f"{tuple(m)} is not strictly increasing and nonnegative")
    return [mp for mp in pieri_terms(l, m, keep_degenerate=True) if _strict(mp)]


def pieri_power(ls: Sequence[int], m: Sequence[int], keep_degenerate: bool = True) -> Counter:
    """Multiset reached by applying ``S_{ls[0]}``, then ``S_{ls[1]}``, ..."""
    current = Counter({tuple(m): 1})
    for l in ls:
        nxt: Counter = Counter()
        for seq, mult in current.items():
            for mp in pieri_terms(l, seq, keep_degenerate):
                nxt[mp] += mult
        current = nxt
    return current


def pieri_sides(l: int, m: Sequence[int], J: SubsetMask, a: EvalPoint) -> tuple[Scalar, Scalar]:
    lhs = elementary_sym(l, J, a) * power_delta(m, J, a)
    rhs = a.zero()
    for mp in pieri_multiply(l, m):
        rhs = rhs + power_delta(mp, J, a)
    return lhs, rhs


# -- lemma checks ------------------------------------------------------------

VANISHING = ("L1", "L2")
REDUCTION = ("L3", "L4", "L5", "L5cor", "L6", "L6cor")
ALL_LEMMAS = VANISHING + REDUCTION


def _complement_syms(k: int, a: EvalPoint) -> list[Scalar]:
    """``e_k`` of all variables except ``a_i``, for each ``i``."""
    n = a.n
    full = SubsetMask.full(n)
    return [elementary_sym(k, SubsetMask(n, full.bits ^ (1 << i)), a) for i in range(n)]


def _full_delta(exps: Sequence[int], a: EvalPoint) -> Scalar:
    return power_delta(exps, SubsetMask.full(a.n), a)


def vanishing_matrix(n: int, k: int, l: int, a: EvalPoint) -> list[list[Scalar]]:
    """Columns ``1, a_i, ..., a_i**(n-2)`` and ``a_i**l * e_k(a without a_i)``."""
    if a.n != n:
        raise DimensionMismatch(f"point has {a.n} entries, expected {n}")
    syms = _complement_syms(k, a)
    return [[a[i] ** c for c in range(n - 1)] + [a[i] ** l * syms[i]] for i in range(n)]


def _vanishing_hypothesis(which: str, n: int, k: int, l: int) -> bool:
    if n < 3:
        return False
    if which == "L1":
        return k >= 0 and l >= 0 and k + l <= n - 2
    if which == "L2":
        return 1 <= k <= n - 1 and 1 <= l <= n - 1 and k + l >= n
    raise ValueError(f"unknown vanishing lemma {which!r}")


def vanishing_lemma_value(which: str, n: int, k: int, l: int, a: EvalPoint) -> Scalar:
    if not _vanishing_hypothesis(which, n, k, l):
        raise ParameterRangeError(f"{which}: (n, k, l) = ({n}, {k}, {l}) outside the hypothesis")
    return det_rows(vanishing_matrix(n, k, l, a), a.one())


def vanishing_lemma_check(which: str, n: int, k: int, l: int, a: EvalPoint) -> bool:
    return vanishing_lemma_value(which, n, k, l, a).is_zero()


def _reduction_sides(which: str, a: EvalPoint, n: int, k: int | None,
                     m: Sequence[int] | None) -> tuple[Scalar, Scalar]:
    if a.n != n:
        raise DimensionMismatch(f"point has {a.n} entries, expected {n}")
    one = a.one()
    vdm = tuple(range(n))
    if which == "L3":
        if n < 3 or not 0 <= k <= n - 2:
            raise ParameterRangeError(f"L3 needs n >= 3, 0 <= k <= n-2; got n={n}, k={k}")
        lhs = det_rows(vanishing_matrix(n, k, n - 1 - k, a), one)
        rhs = _full_delta(vdm, a)
        return lhs, (-rhs if k & 1 else rhs)
    if which == "L4":
        if n < 3:
            raise ParameterRangeError(f"L4 needs n >= 3; got n={n}")
        rows = []
        for i in range(n):
            last = a[i] - 1
            for j in range(n):
                if j != i:
                    last = last * (a[i] * a[j] - 1)
            rows.append([a[i] ** c for c in range(n - 1)] + [last])
        total = one
        for x in a:
            total = total * x
        return det_rows(rows, one), (total - 1) * _full_delta(vdm, a)
    if which in ("L5", "L5cor"):
        if n < 2 or not 1 <= k <= n - 1:
            raise ParameterRangeError(f"{which} needs n >= 2, 1 <= k <= n-1; got n={n}, k={k}")
        target = tuple(range(n - k)) + tuple(range(n - k + 1, n + 1))
        if which == "L5":
            syms = _complement_syms(k, a)
            lhs = det_rows([[syms[i]] + [a[i] ** c for c in range(1, n)] for i in range(n)], one)
        else:
            lhs = elementary_sym(k, SubsetMask.full(n), a) * _full_delta(vdm, a)
        return lhs, _full_delta(target, a)
    if which in ("L6", "L6cor"):
        m = tuple(m)
        if len(m) != n - 1 or not m or m[0] < 1 or not _strict(m):
            raise ParameterRangeError(f"{which} needs 1 <= m_1 < ... < m_(n-1); got {m}")
        top = n - 1 if which == "L6" else n
        if not 1 <= k <= top:
            raise ParameterRangeError(f"{which} needs 1 <= k <= {top}; got k={k}")
        if which == "L6":
            syms = _complement_syms(k, a)
            lhs = det_rows([[syms[i]] + [a[i] ** e for e in m] for i in range(n)], one)
            rhs = a.zero()
            for mp in pieri_multiply(k, m):
                rhs = rhs + _full_delta((0,) + mp, a)
            return lhs, rhs
        lhs = elementary_sym(k, SubsetMask.full(n), a) * _full_delta((0,) + m, a)
        rhs = a.zero()
        for mp in pieri_multiply(k, (0,) + m):
            rhs = rhs + _full_delta(mp, a)
        return lhs, rhs
    raise ValueError(f"unknown reduction lemma {which!r}")


def reduction_lemma_sides(which: str, a: EvalPoint, *, n: int, k: int | None = None,
                          m: Sequence[int] | None = None) -> tuple[Scalar, Scalar]:
    return _reduction_sides(which, a, n, k, m)


def reduction_lemma_check(which: str, a: EvalPoint, *, n: int, k: int | None = None,
                          m: Sequence[int] | None = None) -> bool:
    lhs, rhs = _reduction_sides(which, a, n, k, m)
    return lhs == rhs


def lemma_grid(which: str, max_n: int, max_exponent: int = 8) -> Iterator[dict]:
    """Every parameter cell inside a lemma's hypothesis for ``n <= max_n``."""
    for n in range(2, max_n + 1):
        if which in VANISHING:
            for k in range(0, n):
                for l in range(0, n):
                    if _vanishing_hypothesis(which, n, k, l):
                        yield {"n": n, "k": k, "l": l}
        elif which == "L3":
            if n >= 3:
                for k in range(0, n - 1):
                    yield {"n": n, "k": k}
        elif which == "L4":
            if n >= 3:
                yield {"n": n}
        elif which in ("L5", "L5cor"):
            for k in range(1, n):
                yield {"n": n, "k": k}
        elif which in ("L6", "L6cor"):
            top = n - 1 if which == "L6" else n
            for m in combinations(range(1, max_exponent + 1), n - 1):
                for k in range(1, top + 1):
                    yield {"n": n, "k": k, "m": m}
        else:
            raise ValueError(f"unknown lemma {which!r}")


def lemma_check(which: str, a: EvalPoint, params: dict) -> bool:
    if which in VANISHING:
        return vanishing_lemma_check(which, params["n"], params["k"], params["l"], a)
    return reduction_lemma_check(which, a, **params)
