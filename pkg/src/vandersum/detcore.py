"""Dense exact matrices and the Vandermonde-type determinants.

Every determinant indexed by a subset ``J`` takes its rows in increasing
element order ``j_1 < ... < j_k``; all sign conventions depend on this.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Sequence

from .errors import DimensionMismatch, NotSquare
from .scalars import EvalPoint, GaussianRational, Scalar
from .subsets import SubsetMask, subsets_of_size


class Matrix:
    """Row-major matrix of scalars from a single field."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Scalar]):
        if len(entries) != rows * cols:
            raise DimensionMismatch(f"{len(entries)} entries for a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Scalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __str__(self):
        return "\n".join("  ".join(str(x) for x in self.row(i)) for i in range(self.rows))


def _det_gauss_integer(rows: Sequence[Sequence[GaussianRational]]) -> GaussianRational:
    """Clear denominators row by row, then fraction-free elimination over Z[i].

    Every Bareiss quotient is exact, so the integers stay small and no
    Fraction is built until the final division by the row scales.
    """
    n = len(rows)
    work = []
    scale = 1
    for r in rows:
        d = lcm(*(x.re.denominator for x in r), *(x.im.denominator for x in r))
        scale *= d
        work.append([(x.re.numerator * (d // x.re.denominator), x.im.numerator * (d // x.im.denominator))
                     for x in r])
    sign = 1
    prev = (1, 0)
    for c in range(n - 1):
        if work[c][c] == (0, 0):
            pivot = next((r for r in range(c + 1, n) if work[r][c] != (0, 0)), None)
            if pivot is None:
                return GaussianRational(0)
            work[c], work[pivot] = work[pivot], work[c]
            sign = -sign
        pr, pi = work[c][c]
        qr, qi = prev
        norm = qr * qr + qi * qi
        row_c = work[c]
        for r in range(c + 1, n):
            row_r = work[r]
            fr, fi = row_r[c]
            for j in range(c + 1, n):
                ar, ai = row_r[j]
                br, bi = row_c[j]
                # (a * p - f * b) / prev, exact in Z[i]
                tr = ar * pr - ai * pi - (fr * br - fi * bi)
                ti = ar * pi + ai * pr - (fr * bi + fi * br)
                row_r[j] = ((tr * qr + ti * qi) // norm, (ti * qr - tr * qi) // norm)
            row_r[c] = (0, 0)
        prev = (pr, pi)
    dr, di = work[n - 1][n - 1]
    return GaussianRational(Fraction(sign * dr, scale), Fraction(sign * di, scale))


def det_rows(rows: Sequence[Sequence[Scalar]], one: Scalar | None = None) -> Scalar:
    """Determinant of a square list of rows.

    Gaussian-rational matrices go through fraction-free elimination over the
    Gaussian integers; prime-field matrices use plain elimination pivoting
    on the first nonzero entry.  The empty matrix has determinant ``one``
    (a Gaussian-rational 1 when not given).
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSquare(f"{n} rows of lengths {[len(r) for r in rows]}")
    if n == 0:
        return one if one is not None else GaussianRational(1)
    if all(type(x) is GaussianRational for r in rows for x in r):
        return _det_gauss_integer(rows)
    return det_by_elimination(rows)


def det_by_elimination(rows: Sequence[Sequence[Scalar]]) -> Scalar:
    """Gaussian elimination over the field, pivoting on the first nonzero entry."""
    n = len(rows)
    if n == 0:
        raise NotSquare("empty matrix has no entries to take the field from")
    work = [list(r) for r in rows]
    det = work[0][0].one()
    for c in range(n):
        pivot = next((r for r in range(c, n) if not work[r][c].is_zero()), None)
        if pivot is None:
            return det.zero()
        if pivot != c:
            work[c], work[pivot] = work[pivot], work[c]
            det = -det
        p = work[c][c]
        det = det * p
        inv = p.inverse()
        for r in range(c + 1, n):
            if work[r][c].is_zero():
                continue
            f = work[r][c] * inv
            row_r, row_c = work[r], work[c]
            for j in range(c + 1, n):
                row_r[j] = row_r[j] - f * row_c[j]
    return det


def determinant(M: Matrix, one: Scalar | None = None) -> Scalar:
    if M.rows != M.cols:
        raise NotSquare(f"{M.rows}x{M.cols} matrix")
    return det_rows(M.to_rows(), one)


def _check_subset(J: SubsetMask, a: EvalPoint) -> None:
    if J.n != a.n:
        raise IndexError(f"subset of 1..{J.n} used with a point of size {a.n}")


def vandermonde_delta(J: SubsetMask, a: EvalPoint) -> Scalar:
    """``prod_{r<s} (a_{j_s} - a_{j_r})`` over ``J``; 1 for ``|J| <= 1``."""
    _check_subset(J, a)
    xs = [a[j - 1] for j in J]
    result = a.one()
    for r, s in combinations(range(len(xs)), 2):
        result = result * (xs[s] - xs[r])
    return result


def power_matrix(m: Sequence[int], J: SubsetMask, a: EvalPoint) -> Matrix:
    _check_subset(J, a)
    if len(J) != len(m):
        raise DimensionMismatch(f"|J| = {len(J)} but {len(m)} exponents")
    return Matrix.from_rows([[a[j - 1] ** e for e in m] for j in J])


def power_delta(m: Sequence[int], J: SubsetMask, a: EvalPoint) -> Scalar:
    """``det [a_{j_r} ** m_c]`` with rows in increasing ``J`` order."""
    if any(e < 0 for e in m):
        raise ValueError("exponents must be nonnegative")
    return determinant(power_matrix(m, J, a), a.one())


def laplace_split_sides(m: Sequence[int], k: int, a: EvalPoint) -> tuple[Scalar, Scalar]:
    """Both sides of the complementary-minor expansion along the first ``k`` columns."""
    n = a.n
    if len(m) != n:
        raise DimensionMismatch(f"{len(m)} exponents for {n} variables")
    if not 0 <= k <= n:
        raise DimensionMismatch(f"split {k} outside 0..{n}")
    full = power_delta(m, SubsetMask.full(n), a)
    total = a.zero()
    for I in subsets_of_size(n, k):
        term = power_delta(m[:k], I, a) * power_delta(m[k:], I.complement(), a)
        total = total - term if (I.nu() & 1) else total + term
    if (k * (k + 1) // 2) & 1:
        total = -total
    return full, total


def laplace_split_check(m: Sequence[int], k: int, a: EvalPoint) -> bool:
    lhs, rhs = laplace_split_sides(m, k, a)
    return lhs == rhs
