"""Nondecreasing integer sequences and the ordering used to index them.

An up-sequence is a plain tuple ``(n_1 <= ... <= n_k)`` with entries in
``[0, bound]``.  The order compares from the *last* entry downward:
``x < y`` iff at the largest index where they differ, ``x`` is smaller.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import comb
from typing import Iterator, Sequence

from .errors import DimensionMismatch


def lex_key(x: Sequence[int]) -> tuple[int, ...]:
    return tuple(reversed(x))


def lex_compare(x: Sequence[int], y: Sequence[int]) -> int:
    """-1, 0 or 1 as ``x`` is below, equal to, or above ``y``."""
    if len(x) != len(y):
        raise DimensionMismatch(f"length mismatch: {len(x)} vs {len(y)}")
    for xi, yi in zip(reversed(x), reversed(y)):
        if xi != yi:
            return -1 if xi < yi else 1
    return 0


def is_upseq(x: Sequence[int], bound: int | None = None) -> bool:
    if any(v < 0 for v in x):
        return False
    if any(b < a for a, b in zip(x, x[1:])):
        return False
    return bound is None or all(v <= bound for v in x)


def up_sequences(k: int, bound: int, weight: int | None = None) -> list[tuple[int, ...]]:
    """All up-sequences of length ``k`` bounded by ``bound``, in increasing order."""
    if k < 0 or bound < 0:
        return []
    out = [seq for seq in combinations_with_replacement(range(bound + 1), k)
           if weight is None or sum(seq) == weight]
    out.sort(key=lex_key)
    return out


def count_up_sequences(k: int, bound: int) -> int:
    return comb(k + bound, k)


def tilde(m: Sequence[int]) -> tuple[int, ...]:
    """Shift ``m_r -> m_r + r - 1`` turning an up-sequence into a strict one."""
    return tuple(v + i for i, v in enumerate(m))


def sort_with_sign(exps: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sort by insertion, returning ``(sign, sorted)``; sign 0 on a repeat.

    The sign is ``(-1)**transpositions``, the factor relating
    ``Delta_exps`` to ``Delta_sorted``.
    """
    work = list(exps)
    swaps = 0
    for i in range(1, len(work)):
        j = i
        while j > 0 and work[j - 1] > work[j]:
            work[j - 1], work[j] = work[j], work[j - 1]
            swaps += 1
            j -= 1
    if any(a == b for a, b in zip(work, work[1:])):
        return 0, tuple(work)
    return (-1 if swaps & 1 else 1), tuple(work)


def weak_compositions(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Tuples ``q`` with ``0 <= q_i <= caps[i]`` and ``sum(q) == total``."""
    if not caps:
        if total == 0:
            yield ()
        return
    rest_cap = sum(caps[1:])
    for first in range(max(0, total - rest_cap), min(caps[0], total) + 1):
        for tail in weak_compositions(total - first, caps[1:]):
            yield (first,) + tail
