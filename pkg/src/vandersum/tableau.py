"""Bead diagrams, the transition matrix R and the cancellation argument.

Up-sequences ``m`` of length ``k`` with entries ``<= bound`` (``bound = n-k``)
index two bases: ``Delta_{psi(m)}(I^c)`` on the complement side and
``Delta_{tilde(m)}(I)`` on the ``I`` side.  ``R[n, m]`` counts the ways the
iterated multiplications ``S_{n_k}``, then ``S_{n_(k-1)}``, ..., ``S_{n_1}``
starting from the empty diagram reach ``m``.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Sequence

from .detcore import power_delta, vandermonde_delta
from .errors import DimensionMismatch, PreconditionViolated, WorkloadGuardExceeded
from .scalars import Domain, EvalPoint, Scalar, sample_admissible
from .sequences import is_upseq, lex_compare, sort_with_sign, tilde, up_sequences, weak_compositions
from .subsets import SubsetMask
from .symfunc import a_poly, elementary_sym

MAX_R_CELLS = 36
RELATIONS_MAX_N = 8

__all__ = [
    "lex_compare", "phi", "psi", "BeadDiagram", "sop_step", "RMatrix", "r_matrix",
    "r_recursion_value", "r_recursion_check", "r_shift_check", "r_relations_check",
    "remdeltas_terms", "CancellationAnalysis", "cancellation_analysis",
    "cancellation_check", "reduced_expr_analysis", "reduced_expr_check",
]


def phi(m: Sequence[int], bound: int) -> tuple[int, ...]:
    """Row counts of the bead diagram of ``m``: a sequence of length ``bound``.

    ``phi(m)_j = min{r >= 0 : m_(k-r) <= bound - j}``, i.e. the number of
    columns holding more than ``bound - j`` beads.
    """
    if not is_upseq(m, bound):
        raise ValueError(f"{tuple(m)} is not an up-sequence bounded by {bound}")
    return tuple(sum(1 for v in m if v > bound - j) for j in range(1, bound + 1))


def psi(m: Sequence[int], bound: int) -> tuple[int, ...]:
    return tilde(phi(m, bound))


@dataclass(frozen=True)
class BeadDiagram:
    """``k`` columns by ``bound`` rows; column ``i`` holds ``m_i`` beads at the top.

    Rows are numbered from the bottom, so row counts are ``phi(m)`` and grow
    upward; the transpose of the diagram is the diagram of ``phi(m)``.
    """

    columns: tuple[int, ...]
    height: int

    @property
    def rows(self) -> tuple[int, ...]:
        return phi(self.columns, self.height)

    def has_bead(self, col: int, row: int) -> bool:
        return self.columns[col] >= self.height - row + 1

    def render(self) -> str:
        lines = []
        for row in range(self.height, 0, -1):
            cells = "".join("*" if self.has_bead(c, row) else "." for c in range(len(self.columns)))
            lines.append(f"{cells}  {self.rows[row - 1]}")
        lines.append("".join(str(v % 10) for v in self.columns))
        return "\n".join(lines)


def sop_step(l: int, m: Sequence[int], bound: int) -> list[tuple[int, ...]]:
    """Column form of one multiplication by ``S_l``.

    ``m'`` with ``m_i <= m'_i <= m_(i+1)`` (``m_(k+1) = bound``) and
    ``|m'| = |m| + l``: add ``l`` beads to the top of columns with no two new
    beads side by side.
    """
    k = len(m)
    caps = [(m[i + 1] if i + 1 < k else bound) - m[i] for i in range(k)]
    return [tuple(v + d for v, d in zip(m, q)) for q in weak_compositions(l, caps)]


def _reach(path: Sequence[int], k: int, bound: int) -> Counter:
    states = Counter({(0,) * k: 1})
    for l in path:
        nxt: Counter = Counter()
        for seq, mult in states.items():
            for mp in sop_step(l, seq, bound):
                nxt[mp] += mult
        states = nxt
    return states


@dataclass
class RMatrix:
    k: int
    bound: int
    p: int
    order: list[tuple[int, ...]]
    entries: dict = field(default_factory=dict)

    def __getitem__(self, nm) -> int:
        return self.entries.get(nm, 0)

    def dense(self) -> list[list[int]]:
        return [[self[(r, c)] for c in self.order] for r in self.order]

    def inverse(self) -> dict:
        """Integer inverse of the unit upper-triangular matrix, as a sparse dict."""
        idx = self.order
        inv: dict = {}
        # back substitution column by column: R @ X = I
        for c in range(len(idx)):
            for r in range(c, -1, -1):
                val = 1 if r == c else 0
                for t in range(r + 1, c + 1):
                    val -= self[(idx[r], idx[t])] * inv.get((idx[t], idx[c]), 0)
                if val:
                    inv[(idx[r], idx[c])] = val
        return inv

    def to_dict(self) -> dict:
        label = lambda s: "".join(map(str, s)) if self.bound < 10 else ",".join(map(str, s))
        return {
            "k": self.k, "bound": self.bound, "p": self.p,
            "order": [label(s) for s in self.order],
            "matrix": self.dense(),
        }

    def to_text(self) -> str:
        labels = ["(" + "".join(map(str, s)) + ")" if self.bound < 10 else str(s) for s in self.order]
        width = max([len(x) for x in labels] + [3])
        head = " " * width + " " + " ".join(x.rjust(width) for x in labels)
        lines = [head]
        for lab, row in zip(labels, self.dense()):
            lines.append(lab.rjust(width) + " " + " ".join(str(v).rjust(width) for v in row))
        return "\n".join(lines)


@lru_cache(maxsize=None)
def _r_matrix_cached(k: int, bound: int, p: int, ascending: bool) -> RMatrix:
    order = up_sequences(k, bound, p)
    entries = {}
    for nseq in order:
        path = nseq if ascending else tuple(reversed(nseq))
        for mseq, count in _reach(path, k, bound).items():
            entries[(nseq, mseq)] = count
    return RMatrix(k, bound, p, order, entries)


def r_matrix(k: int, bound: int, p: int, ascending: bool = False) -> RMatrix:
    """Transition matrix for weight ``p``.

    The default applies ``S_{n_k}`` first; ``ascending=True`` applies
    ``S_{n_1}`` first (the result must coincide).
    """
    if not 0 <= p <= k * bound:
        raise ValueError(f"weight {p} outside 0..{k * bound}")
    if k * bound > MAX_R_CELLS:
        raise WorkloadGuardExceeded(f"k*bound = {k * bound} exceeds {MAX_R_CELLS}")
    return _r_matrix_cached(k, bound, p, ascending)


def r_entry(nseq: Sequence[int], mseq: Sequence[int], bound: int) -> int:
    nseq, mseq = tuple(nseq), tuple(mseq)
    if len(nseq) != len(mseq):
        raise DimensionMismatch(f"lengths {len(nseq)} and {len(mseq)}")
    if sum(nseq) != sum(mseq):
        return 0
    if not (is_upseq(nseq, bound) and is_upseq(mseq, bound)):
        return 0
    return r_matrix(len(nseq), bound, sum(nseq))[(nseq, mseq)]


def _omit(seq: Sequence[int], s: int) -> tuple[int, ...]:
    i = list(seq).index(s)
    return tuple(seq[:i]) + tuple(seq[i + 1:])


def r_recursion_value(nseq: Sequence[int], mseq: Sequence[int], s: int, bound: int) -> int:
    """``sum_q R[n without s, m' - q]`` over ``|q| = s``, ``0 <= q_i <= m_(i+1) - m_i``,
    where ``m' = (m_2, ..., m_k)``.  Requires ``m_1 = 0``."""
    if s not in nseq:
        raise KeyError(f"{s} is not an entry of {tuple(nseq)}")
    if mseq[0] != 0:
        raise PreconditionViolated("the recursion removes a zero first entry of m")
    reduced = _omit(nseq, s)
    mtail = tuple(mseq[1:])
    caps = [mseq[i + 1] - mseq[i] for i in range(len(mseq) - 1)]
    total = 0
    for q in weak_compositions(s, caps):
        target = tuple(v - d for v, d in zip(mtail, q))
        total += r_entry(reduced, target, bound) if reduced else int(target == ())
    return total


def r_recursion_check(nseq: Sequence[int], mseq: Sequence[int], s: int, bound: int) -> bool:
    return r_recursion_value(nseq, mseq, s, bound) == r_entry(nseq, mseq, bound)


def r_shift_check(nseq: Sequence[int], mseq: Sequence[int], bound: int) -> bool:
    """Prefix-sum vanishing and, when ``m_1 >= 1``, the shift by ``m_1``."""
    value = r_entry(nseq, mseq, bound)
    prefix_n = prefix_m = 0
    for a, b in zip(nseq, mseq):
        prefix_n += a
        prefix_m += b
        if prefix_n < prefix_m and value:
            return False
    if mseq and mseq[0] >= 1:
        c = mseq[0]
        if nseq[0] < c:
            return value == 0
        return value == r_entry([v - c for v in nseq], [v - c for v in mseq], bound)
    return True


def r_relations_sides(I: SubsetMask, a: EvalPoint, p: int) -> list[tuple[str, tuple, Scalar, Scalar]]:
    """Both sides of the three R-matrix relations for weight ``p``.

    Entries are ``(relation, sequence, lhs, rhs)`` with relation one of
    ``"sproduct"`` (products of ``S`` on ``I^c``), ``"radel"`` (R-weighted
    ``A`` sums on ``I``) and ``"adelta"`` (the inverse-matrix form).
    """
    n = a.n
    if n > RELATIONS_MAX_N:
        raise WorkloadGuardExceeded(f"n = {n} exceeds {RELATIONS_MAX_N}")
    k = len(I)
    bound = n - k
    Ic = I.complement()
    R = r_matrix(k, bound, p)
    S = [elementary_sym(l, Ic, a) for l in range(bound + 1)]
    delta_c = vandermonde_delta(Ic, a)
    delta_i = vandermonde_delta(I, a)
    psi_delta = {m: power_delta(psi(m, bound), Ic, a) for m in R.order}
    tilde_delta = {m: power_delta(tilde(m), I, a) for m in R.order}
    A = {nseq: a_poly(nseq, I, a) for nseq in R.order}
    out = []
    for nseq in R.order:
        lhs = delta_c
        for r in nseq:
            lhs = lhs * S[r]
        rhs = a.zero()
        for m in R.order:
            if R[(nseq, m)]:
                rhs = rhs + R[(nseq, m)] * psi_delta[m]
        out.append(("sproduct", nseq, lhs, rhs))
    for m in R.order:
        lhs = a.zero()
        for nseq in R.order:
            if R[(nseq, m)]:
                lhs = lhs + R[(nseq, m)] * A[nseq] * delta_i
        out.append(("radel", m, lhs, tilde_delta[m]))
    inv = R.inverse()
    for nseq in R.order:
        rhs = a.zero()
        for m in R.order:
            if inv.get((m, nseq)):
                rhs = rhs + inv[(m, nseq)] * tilde_delta[m]
        out.append(("adelta", nseq, A[nseq] * delta_i, rhs))
    return out


def r_relations_check(I: SubsetMask, a: EvalPoint, p: int) -> bool:
    return all(lhs == rhs for _, _, lhs, rhs in r_relations_sides(I, a, p))


# -- cancellation of the remainder terms -------------------------------------

def remdeltas_terms(m: Sequence[int]) -> list[dict]:
    """Every term ``Delta_{tilde(s, m' - q)}`` of the remainder sum.

    ``s`` runs over ``1..m_k`` and ``q`` over ``|q| = s``,
    ``0 <= q_i <= m_(i+1) - m_i``.  Each term records its raw exponents and
    ``(sign, sorted)`` with sign 0 for a repeated exponent.
    """
    m = tuple(m)
    if not m or m[0] != 0:
        raise PreconditionViolated(f"remainder terms need m_1 = 0; got {m}")
    caps = [m[i + 1] - m[i] for i in range(len(m) - 1)]
    terms = []
    for s in range(1, m[-1] + 1):
        for q in weak_compositions(s, caps):
            seq = (s,) + tuple(v - d for v, d in zip(m[1:], q))
            exps = tilde(seq)
            sign, srt = sort_with_sign(exps)
            terms.append({"s": s, "q": q, "seq": seq, "exps": exps, "sign": sign, "sorted": srt})
    return terms


@dataclass
class CancellationAnalysis:
    m: tuple[int, ...]
    terms: list[dict]
    pairs: list[tuple[int, int]]
    unmatched: list[int]
    ambiguous: list[int]

    @property
    def nonzero(self) -> list[dict]:
        return [t for t in self.terms if t["sign"]]

    @property
    def perfect(self) -> bool:
        if self.unmatched or self.ambiguous:
            return False
        matched = sorted(i for pr in self.pairs for i in pr)
        nonzero = [i for i, t in enumerate(self.terms) if t["sign"]]
        if matched != nonzero:
            return False
        return all(self.terms[i]["sign"] == -self.terms[j]["sign"] for i, j in self.pairs)

    def signed_terms(self) -> list[tuple[int, tuple[int, ...]]]:
        return [(t["sign"], t["sorted"]) for t in self.nonzero]


def cancellation_analysis(m: Sequence[int]) -> CancellationAnalysis:
    """Pair each nonzero term with the term whose ``s`` is the neighbouring
    exponent in the same sorted exponent set.

    A term with ``s`` in slot ``r`` of the sorted set can only meet the
    terms with ``s`` in slot ``r-1`` or ``r+1``; the pairing requires
    exactly one of them to be present.
    """
    terms = remdeltas_terms(m)
    groups: dict = defaultdict(dict)
    for idx, t in enumerate(terms):
        if t["sign"]:
            slot = t["sorted"].index(t["s"])
            groups[t["sorted"]][slot] = idx
    nbrs: dict[int, list[int]] = {}
    for slots in groups.values():
        for slot, idx in slots.items():
            nbrs[idx] = [slots[s] for s in (slot - 1, slot + 1) if s in slots]
    pairs, unmatched, ambiguous = [], [], []
    for idx, near in nbrs.items():
        if not near:
            unmatched.append(idx)
        elif len(near) > 1 or nbrs[near[0]] != [idx]:
            ambiguous.append(idx)
        elif idx < near[0]:
            pairs.append((idx, near[0]))
    return CancellationAnalysis(tuple(m), terms, sorted(pairs), sorted(unmatched), sorted(ambiguous))


def cancellation_value(m: Sequence[int], I: SubsetMask, a: EvalPoint) -> Scalar:
    if len(I) != len(m):
        raise DimensionMismatch(f"|I| = {len(I)} but m has length {len(m)}")
    total = a.zero()
    for t in remdeltas_terms(m):
        total = total + power_delta(t["exps"], I, a)
    return total


def cancellation_check(m: Sequence[int], I: SubsetMask, a: EvalPoint) -> bool:
    analysis = cancellation_analysis(m)
    return analysis.perfect and cancellation_value(m, I, a).is_zero()


# -- the final counting identity ---------------------------------------------

@dataclass
class ReducedExprAnalysis:
    n: int
    by_k: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    signed_total: int = 0
    value_total: Scalar | None = None

    @property
    def ok(self) -> bool:
        return not self.failures


def expected_count(n: int, k: int) -> int:
    if k * (n - k) % 2:
        return 0
    if n % 2 == 0:
        return comb(n // 2, k // 2)
    return comb((n - 1) // 2, k // 2)


def reduced_expr_analysis(n: int, a: EvalPoint | None = None, seed: int = 0) -> ReducedExprAnalysis:
    """Enumerate the nonzero ``Delta_{tilde(m), psi(m)}`` for every ``k``.

    Exponent sequences are ``tilde(m)`` followed by ``psi(m)``; a term is
    nonzero exactly when these form a permutation of ``0..n-1``.
    """
    if not 2 <= n <= 12:
        raise ValueError("n must lie in 2..12")
    if a is None:
        a = sample_admissible(n, Domain("gf"), seed)
    full = SubsetMask.full(n)
    base = vandermonde_delta(full, a)
    out = ReducedExprAnalysis(n)
    value_total = a.zero()
    for k in range(n + 1):
        bound = n - k
        hits = []
        for m in up_sequences(k, bound):
            exps = tilde(m) + psi(m, bound)
            sign, srt = sort_with_sign(exps)
            if not sign:
                continue
            p = sum(m)
            hits.append(m)
            if 2 * p != k * bound:
                out.failures.append(("weight", k, m))
            if any(m[i] + m[k - 1 - i] != bound for i in range(k)):
                out.failures.append(("complementarity", k, m))
            expected_sign = -1 if (k * bound // 2) & 1 else 1
            if sign != expected_sign:
                out.failures.append(("sign", k, m))
            value = power_delta(exps, full, a)
            if value != (base if expected_sign > 0 else -base):
                out.failures.append(("value", k, m))
            outer = (k * bound - p + k * (k + 1) // 2) & 1
            out.signed_total += -sign if outer else sign
            value_total = value_total - value if outer else value_total + value
        out.by_k[k] = hits
        if len(hits) != expected_count(n, k):
            out.failures.append(("count", k, len(hits)))
    out.value_total = value_total
    if out.signed_total != 0 or not value_total.is_zero():
        out.failures.append(("total", out.signed_total))
    return out


def reduced_expr_check(n: int, a: EvalPoint | None = None, seed: int = 0) -> bool:
    return reduced_expr_analysis(n, a, seed).ok
