"""Slow, independent reference implementations used only by the tests.

Nothing here imports the package's algorithms; scalars come in as plain
field elements and only their operators are used.
"""

from fractions import Fraction
from itertools import combinations, permutations, product


def perm_sign(perm):
    inv = sum(1 for i, j in combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def leibniz_det(rows, one=1):
    n = len(rows)
    total = one - one
    for perm in permutations(range(n)):
        term = one
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + term if perm_sign(perm) > 0 else total - term
    return total


def cofactor_det(rows, one=1):
    n = len(rows)
    if n == 0:
        return one
    if n == 1:
        return rows[0][0]
    total = one - one
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * cofactor_det(minor, one)
        total = total - term if j % 2 else total + term
    return total


def power_det(exps, xs, one=1):
    return leibniz_det([[x ** e for e in exps] for x in xs], one)


def vdm(xs, one=1):
    out = one
    for r, s in combinations(range(len(xs)), 2):
        out = out * (xs[s] - xs[r])
    return out


def lhs_sum(xs, N, one=1):
    total = one - one
    for cols in combinations(range(1, N + 1), len(xs)):
        total = total + leibniz_det([[x ** c for c in cols] for x in xs], one)
    return total


def esym(l, xs, one=1):
    total = one - one
    for c in combinations(xs, l):
        term = one
        for x in c:
            term = term * x
        total = total + term
    return total


def monomial_sym(exps, xs, one=1):
    """Sum of ``prod x_i ** e_i`` over the distinct rearrangements of ``exps``."""
    total = one - one
    for arrangement in set(permutations(exps)):
        term = one
        for x, e in zip(xs, arrangement):
            term = term * x ** e
        total = total + term
    return total


def pieri_brute(l, exps, xs, one=1):
    """``sum over eps in {0,1}^k with |eps| = l`` of ``det[x ** (m + eps)]``."""
    total = one - one
    for eps in product((0, 1), repeat=len(exps)):
        if sum(eps) == l:
            total = total + power_det([m + e for m, e in zip(exps, eps)], xs, one)
    return total


def transpose_counts(columns, height):
    """Row counts of the top-justified diagram with the given column counts."""
    grid = [[r < c for c in columns] for r in range(height)]
    return [sum(row) for row in grid]


def solve_fraction(A, b):
    """Solve a square system over the rationals by plain Gauss-Jordan."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[-1] for row in M]
