"""Both sides of the Vandermonde-power sum identity and its two reductions.

For ``a = (a_1, ..., a_n)`` and horizon ``N``::

    sum_{1 <= x_1 < ... < x_n <= N} det[a_i ** x_j]
        = prod_k a_k/(a_k - 1) * sum_J (-1)**nu(J^c) gamma(J) gamma(J^c) prod_{j in J} a_j**N

with ``gamma(J) = Delta(J) / prod_{{i,j} in J} (a_i a_j - 1)`` and ``nu`` the
sum of (1-based) indices.  The left side costs ``binomial(N, n)``
determinants; the right side ``2**n`` subset weights plus ``n`` powers.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from math import comb
from operator import mul
from typing import Iterable, Sequence

from .detcore import det_rows, vandermonde_delta
from .errors import PoleError, PreconditionViolated, WorkloadGuardExceeded
from .scalars import EvalPoint, PrimeField, Scalar
from .subsets import SubsetMask, all_subsets

DEFAULT_GUARD = 10**8


def nu(I: SubsetMask) -> int:
    return I.nu()


def _signed(x: Scalar, odd: bool) -> Scalar:
    return -x if odd else x


def gamma(J: SubsetMask, a: EvalPoint) -> Scalar:
    denom = a.one()
    bad = []
    for i, j in J.pairs():
        f = a[i - 1] * a[j - 1] - 1
        if f.is_zero():
            bad.append(f"a_{i}*a_{j} = 1")
        denom = denom * f
    if bad:
        raise PoleError(bad)
    return vandermonde_delta(J, a) / denom


def gamma_table(a: EvalPoint, stats: dict | None = None) -> list[Scalar]:
    """``gamma`` for every subset, indexed by bitmask."""
    table = [gamma(J, a) for J in all_subsets(a.n)]
    if stats is not None:
        stats["gamma_evals"] = stats.get("gamma_evals", 0) + len(table)
    return table


def pole_violations(a: EvalPoint) -> list[str]:
    out = [f"a_{k} = 1" for k, x in enumerate(a, 1) if x.is_one()]
    for i, j in combinations(range(a.n), 2):
        if (a[i] * a[j]).is_one():
            out.append(f"a_{i + 1}*a_{j + 1} = 1")
    return out


# -- left side ---------------------------------------------------------------

def _check_guard(count: int, guard: int) -> None:
    if count > guard:
        raise WorkloadGuardExceeded(f"{count} tuples exceeds the guard of {guard}")


def _power_table(a: EvalPoint, top: int) -> list[list[Scalar]]:
    table = []
    for x in a:
        row = [x.one()]
        for _ in range(top):
            row.append(row[-1] * x)
        table.append(row)
    return table


def _lhs_prefix_block(a: EvalPoint, N: int, firsts: Sequence[int]) -> Scalar:
    """Sum over all tuples whose first entry lies in ``firsts``.

    Each ``n x n`` determinant is expanded along its last column using the
    ``n`` minors of the first ``n-1`` columns, which are shared by every
    tuple with the same prefix.
    """
    n = a.n
    pw = _power_table(a, N)
    signs = [(k + n - 1) & 1 for k in range(n)]
    gf = isinstance(a[0], PrimeField)
    p = a[0].modulus if gf else None
    # column-major ints: int_cols[x][k] = a_k**x mod p
    int_cols = [tuple(r[x].value for r in pw) for x in range(N + 1)] if gf else None
    total = a.zero()
    for first in firsts:
        rest = combinations(range(first + 1, N), n - 2) if n >= 2 else [()]
        for tail in rest:
            prefix = ((first,) + tail) if n >= 2 else ()
            last_lo = (prefix[-1] + 1) if prefix else 1
            if last_lo > N:
                continue
            cofs = []
            for k in range(n):
                minor_rows = [[pw[i][x] for x in prefix] for i in range(n) if i != k]
                cofs.append(_signed(det_rows(minor_rows, a.one()), signs[k]))
            if gf:
                cv = [c.value for c in cofs]
                acc = 0
                for x in range(last_lo, N + 1):
                    acc += sum(map(mul, cv, int_cols[x])) % p
                total = total + acc
            else:
                for x in range(last_lo, N + 1):
                    d = cofs[0] * pw[0][x]
                    for k in range(1, n):
                        d = d + cofs[k] * pw[k][x]
                    total = total + d
    return total


def lhs_brute(a: EvalPoint, N: int, guard: int = DEFAULT_GUARD, workers: int = 1,
              method: str = "cofactor") -> Scalar:
    """Sum of ``det[a_i ** x_j]`` over all ``1 <= x_1 < ... < x_n <= N``.

    ``method="elimination"`` evaluates each determinant from scratch by
    Gaussian elimination; the default shares last-column cofactors between
    tuples with a common prefix.  ``workers > 1`` splits the tuple space by
    ``x_1`` across processes; the exact sum does not depend on the split.
    """
    n = a.n
    if N < n:
        return a.zero()
    _check_guard(comb(N, n), guard)
    if method == "elimination":
        total = a.zero()
        for xs in combinations(range(1, N + 1), n):
            total = total + det_rows([[v ** x for x in xs] for v in a], a.one())
        return total
    if method != "cofactor":
        raise ValueError(f"unknown method {method!r}")
    if n == 1:
        return _lhs_prefix_block(a, N, [0])
    firsts = list(range(1, N - n + 2))
    if workers <= 1 or len(firsts) < 2:
        return _lhs_prefix_block(a, N, firsts)
    # round-robin keeps the chunks balanced: small x_1 carry the most tuples
    chunks = [firsts[w::workers] for w in range(workers) if firsts[w::workers]]
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(_lhs_prefix_block, [a] * len(chunks), [N] * len(chunks), chunks))
    total = a.zero()
    for part in parts:
        total = total + part
    return total


# -- right side --------------------------------------------------------------

def _subset_power_products(a: EvalPoint, N: int) -> list[Scalar]:
    powers = [x ** N for x in a]
    prods = [a.one()]
    for bits in range(1, 1 << a.n):
        low = (bits & -bits).bit_length() - 1
        prods.append(prods[bits & (bits - 1)] * powers[low])
    return prods


def closed_sum(a: EvalPoint, N: int, order: Iterable[int] | None = None,
               stats: dict | None = None) -> Scalar:
    """``sum_J (-1)**nu(J^c) gamma(J) gamma(J^c) prod_{j in J} a_j**N``.

    ``order`` optionally permutes the subset bitmasks summed over.
    """
    bad = pole_violations(a)
    if bad:
        raise PoleError(bad)
    n = a.n
    full = (1 << n) - 1
    g = gamma_table(a, stats)
    prods = _subset_power_products(a, N)
    total = a.zero()
    for bits in (range(1 << n) if order is None else order):
        comp = full ^ bits
        term = g[bits] * g[comp] * prods[bits]
        total = total - term if SubsetMask(n, comp).nu() & 1 else total + term
    return total


def prefactor(a: EvalPoint) -> Scalar:
    out = a.one()
    for x in a:
        out = out * x / (x - 1)
    return out


def rhs_closed(a: EvalPoint, N: int, order: Iterable[int] | None = None,
               stats: dict | None = None) -> Scalar:
    """Closed form of the sum; raises :class:`PoleError` listing every pole hit."""
    bad = pole_violations(a)
    if bad:
        raise PoleError(bad)
    return prefactor(a) * closed_sum(a, N, order, stats)


def n2_shape(a: EvalPoint, N: int) -> Scalar:
    """The worked two-variable form of ``closed_sum``."""
    a1, a2 = a[0], a[1]
    q = a1 * a2
    return (q ** N - 1) / (q - 1) * (a2 - a1) + a1 ** N - a2 ** N


# -- reduced sum after summing out x_1 ----------------------------------------

def _reduced_rows(a: EvalPoint, xs: Sequence[int]) -> list[list[Scalar]]:
    x2, rest = xs[0], xs[1:]
    rows = []
    for v in a:
        row = [v ** x2 - 1, v ** (x2 + 1) - 1]
        row.extend(v ** x * (v - 1) for x in rest)
        rows.append(row)
    return rows


def reduced_sum_lhs(a: EvalPoint, N: int, weak: bool = False,
                    guard: int = DEFAULT_GUARD) -> Scalar:
    """Sum over ``1 <= x_2 < ... < x_n <= N-1`` (``weak``: ``0 <= x_2 <= ... <= N-1``).

    Columns are ``a_i**x_2 - 1``, ``a_i**(x_2+1) - 1`` and ``a_i**x_j (a_i - 1)``.
    """
    n = a.n
    if n < 2:
        raise PreconditionViolated("the reduced sum needs n >= 2")
    if weak:
        count = comb(N + n - 2, n - 1) if N >= 1 else 0
        tuples = combinations_with_replacement(range(0, N), n - 1)
    else:
        count = comb(N - 1, n - 1) if N >= 1 else 0
        tuples = combinations(range(1, N), n - 1)
    _check_guard(count, guard)
    total = a.zero()
    for xs in tuples:
        total = total + det_rows(_reduced_rows(a, xs), a.one())
    return total


def reduced_sum_sides(a: EvalPoint, N: int, guard: int = DEFAULT_GUARD) -> dict[str, Scalar]:
    return {
        "strict": reduced_sum_lhs(a, N, weak=False, guard=guard),
        "weak": reduced_sum_lhs(a, N, weak=True, guard=guard),
        "closed": closed_sum(a, N),
    }


def reduced_sum_check(a: EvalPoint, N: int, guard: int = DEFAULT_GUARD) -> bool:
    sides = reduced_sum_sides(a, N, guard)
    return sides["strict"] == sides["closed"] and sides["weak"] == sides["strict"]


# -- residual polynomial identity ---------------------------------------------

def zerosum_value(a: EvalPoint) -> Scalar:
    """``sum_I (-1)**nu(I) prod_{i in I, j in I^c} (a_i a_j - 1) Delta(I) Delta(I^c)``."""
    n = a.n
    deltas = [vandermonde_delta(I, a) for I in all_subsets(n)]
    total = a.zero()
    for I in all_subsets(n):
        Ic = I.complement()
        cross = a.one()
        for i in I:
            for j in Ic:
                cross = cross * (a[i - 1] * a[j - 1] - 1)
        term = cross * deltas[I.bits] * deltas[Ic.bits]
        total = total - term if I.nu() & 1 else total + term
    return total


def zerosum_check(a: EvalPoint) -> bool:
    return zerosum_value(a).is_zero()


# -- timed report ------------------------------------------------------------

@dataclass
class IdentityReport:
    n: int
    N: int
    domain: str
    seed: int | None
    lhs: str | None
    rhs: str
    equal: bool | None
    lhs_ns: int | None
    rhs_ns: int

    def to_dict(self) -> dict:
        return {"n": self.n, "N": self.N, "domain": self.domain, "seed": self.seed,
                "lhs": self.lhs, "rhs": self.rhs, "equal": self.equal,
                "lhs_ns": self.lhs_ns, "rhs_ns": self.rhs_ns}


def run_identity(a: EvalPoint, N: int, domain: str, seed: int | None = None,
                 guard: int = DEFAULT_GUARD, workers: int = 1,
                 skip_lhs: bool = False) -> IdentityReport:
    t0 = time.perf_counter_ns()
    rhs = rhs_closed(a, N)
    rhs_ns = time.perf_counter_ns() - t0
    lhs = lhs_ns = equal = None
    if not skip_lhs:
        t0 = time.perf_counter_ns()
        lhs = lhs_brute(a, N, guard=guard, workers=workers)
        lhs_ns = time.perf_counter_ns() - t0
        equal = lhs == rhs
    return IdentityReport(a.n, N, domain, seed, None if lhs is None else str(lhs),
                          str(rhs), equal, lhs_ns, rhs_ns)
