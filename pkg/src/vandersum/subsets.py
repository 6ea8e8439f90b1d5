"""Subsets of ``{1, ..., n}`` stored as bitmasks."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

MAX_UNIVERSE = 62


@dataclass(frozen=True, order=True)
class SubsetMask:
    """Subset of ``{1..n}``; bit ``k-1`` set means ``k`` is a member."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if not 0 <= self.n <= MAX_UNIVERSE:
            raise ValueError(f"universe size must be in [0, {MAX_UNIVERSE}]")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bits {self.bits:#x} outside universe of size {self.n}")

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> "SubsetMask":
        bits = 0
        for e in elements:
            if not 1 <= e <= n:
                raise IndexError(f"element {e} not in 1..{n}")
            bits |= 1 << (e - 1)
        return cls(n, bits)

    @classmethod
    def full(cls, n: int) -> "SubsetMask":
        return cls(n, (1 << n) - 1)

    def __iter__(self) -> Iterator[int]:
        bits, k = self.bits, 1
        while bits:
            if bits & 1:
                yield k
            bits >>= 1
            k += 1

    def elements(self) -> tuple[int, ...]:
        return tuple(self)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __contains__(self, k: int) -> bool:
        return 1 <= k <= self.n and bool(self.bits >> (k - 1) & 1)

    def complement(self) -> "SubsetMask":
        return SubsetMask(self.n, ((1 << self.n) - 1) ^ self.bits)

    def nu(self) -> int:
        return sum(self)

    def pairs(self) -> Iterator[tuple[int, int]]:
        return combinations(self.elements(), 2)

    def __str__(self):
        return "{" + ",".join(map(str, self)) + "}"


def all_subsets(n: int) -> Iterator[SubsetMask]:
    """Every subset of ``{1..n}`` in increasing bitmask order."""
    for bits in range(1 << n):
        yield SubsetMask(n, bits)


def subsets_of_size(n: int, k: int) -> Iterator[SubsetMask]:
    for comb in combinations(range(1, n + 1), k):
        yield SubsetMask.of(n, comb)
