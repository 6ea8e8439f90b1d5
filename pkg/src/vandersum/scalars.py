"""Exact field elements and admissible evaluation points.

Two carriers are provided:

* :class:`GaussianRational` -- ``re + im*i`` with ``re, im`` in Q, backed by
  :class:`fractions.Fraction` (always reduced, positive denominator).
* :class:`PrimeField` -- residues modulo a prime ``p`` below ``2**62``.

Both are immutable.  Python ints (and, for Gaussian rationals, Fractions)
are coerced into the field of the other operand, so ``a - 1`` works as
expected.  Mixing carriers raises :class:`VariantMismatch`; mixing moduli
raises :class:`ModulusMismatch`.  ``0 ** 0`` is defined as ``1``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence, Union

from .errors import ExhaustedRetries, ModulusMismatch, VariantMismatch

MERSENNE61 = (1 << 61) - 1
MAX_MODULUS_BITS = 62
MAX_REJECTIONS = 10_000


class _FieldOps:
    """Mixin providing operators in terms of ``_add``/``_mul``/... hooks."""

    __slots__ = ()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._add(other)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._add(-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other._add(-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._mul(other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._mul(other.inverse())

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other._mul(self.inverse())

    def __pow__(self, e):
        return self.pow(e)

    def binary_pow(self, e: int):
        """Square-and-multiply; the reference route for :meth:`pow`."""
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        result = self.one()
        base = self
        while e:
            if e & 1:
                result = result._mul(base)
            e >>= 1
            if e:
                base = base._mul(base)
        return result


class GaussianRational(_FieldOps):
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        if isinstance(other, PrimeField):
            raise VariantMismatch("cannot mix GaussianRational and PrimeField")
        return NotImplemented

    def _add(self, other):
        return GaussianRational(self.re + other.re, self.im + other.im)

    def _mul(self, other):
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational(a * c)
        return GaussianRational(a * c - b * d, a * d + b * c)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def inverse(self):
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisionError("division by zero in GaussianRational")
        return GaussianRational(self.re / norm, -self.im / norm)

    def pow(self, e: int):
        return self.binary_pow(e)

    def one(self):
        return GaussianRational(1)

    def zero(self):
        return GaussianRational(0)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_one(self) -> bool:
        return self.re == 1 and not self.im

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}*i"


class PrimeField(_FieldOps):
    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        if modulus < 2 or modulus.bit_length() > MAX_MODULUS_BITS:
            raise ValueError(f"modulus must lie in [2, 2**{MAX_MODULUS_BITS})")
        object.__setattr__(self, "value", value % modulus)
        object.__setattr__(self, "modulus", modulus)

    def __setattr__(self, name, value):
        raise AttributeError("PrimeField is immutable")

    def __reduce__(self):
        return (PrimeField, (self.value, self.modulus))

    def _coerce(self, other):
        if isinstance(other, PrimeField):
            if other.modulus != self.modulus:
                raise ModulusMismatch(f"GF({self.modulus}) vs GF({other.modulus})")
            return other
        if isinstance(other, int):
            return PrimeField(other, self.modulus)
        if isinstance(other, Fraction):
            return PrimeField(other.numerator, self.modulus) / other.denominator
        if isinstance(other, GaussianRational):
            raise VariantMismatch("cannot mix PrimeField and GaussianRational")
        return NotImplemented

    def _add(self, other):
        return PrimeField(self.value + other.value, self.modulus)

    def _mul(self, other):
        return PrimeField(self.value * other.value, self.modulus)

    def __neg__(self):
        return PrimeField(-self.value, self.modulus)

    def inverse(self):
        if not self.value:
            raise ZeroDivisionError(f"division by zero in GF({self.modulus})")
        return PrimeField(pow(self.value, -1, self.modulus), self.modulus)

    def pow(self, e: int):
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        # builtin three-argument pow is square-and-multiply on machine ints
        return PrimeField(pow(self.value, e, self.modulus), self.modulus)

    def one(self):
        return PrimeField(1, self.modulus)

    def zero(self):
        return PrimeField(0, self.modulus)

    def is_zero(self) -> bool:
        return self.value == 0

    def is_one(self) -> bool:
        return self.value == 1

    def __eq__(self, other):
        if isinstance(other, PrimeField):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __repr__(self):
        return f"PrimeField({self.value}, {self.modulus})"

    def __str__(self):
        return f"{self.value} mod {self.modulus}"


Scalar = Union[GaussianRational, PrimeField]

_GF_RE = re.compile(r"^\s*(-?\d+)\s+mod\s+(\d+)\s*$")
_GAUSS_RE = re.compile(r"^([+-]?[\d/]+)(?:([+-])([\d/]+)\*i)?$")


def parse_scalar(text: str) -> Scalar:
    """Inverse of ``str()`` for both carriers."""
    m = _GF_RE.match(text)
    if m:
        return PrimeField(int(m.group(1)), int(m.group(2)))
    m = _GAUSS_RE.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse scalar {text!r}")
    re_part = Fraction(m.group(1))
    im_part = Fraction(0)
    if m.group(2):
        im_part = Fraction(m.group(3))
        if m.group(2) == "-":
            im_part = -im_part
    return GaussianRational(re_part, im_part)


@dataclass(frozen=True)
class Domain:
    """Which carrier to sample from: ``gauss-rational`` or ``gf``."""

    kind: str = "gauss-rational"
    modulus: int | None = None

    def __post_init__(self):
        if self.kind not in ("gauss-rational", "gf"):
            raise ValueError(f"unknown domain {self.kind!r}")
        if self.kind == "gf" and self.modulus is None:
            object.__setattr__(self, "modulus", MERSENNE61)

    @property
    def tag(self) -> str:
        if self.kind == "gf":
            return f"gf({self.modulus})"
        return self.kind

    def scalar(self, value) -> Scalar:
        if self.kind == "gf":
            if isinstance(value, Fraction):
                return PrimeField(value.numerator, self.modulus) / value.denominator
            return PrimeField(value, self.modulus)
        return GaussianRational(value)


def _uniform(values: Sequence[Scalar]) -> None:
    if not values:
        return
    first = values[0]
    for v in values[1:]:
        first._coerce(v)
        if type(v) is not type(first):
            raise VariantMismatch("mixed scalar variants in one point")


@dataclass(frozen=True)
class EvalPoint:
    """An ordered tuple ``(a_1, ..., a_n)`` of scalars from one field."""

    values: tuple = field()

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        _uniform(self.values)

    @classmethod
    def of(cls, values: Iterable, domain: Domain | None = None) -> "EvalPoint":
        domain = domain or Domain()
        return cls(tuple(v if isinstance(v, (GaussianRational, PrimeField)) else domain.scalar(v)
                         for v in values))

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def one(self) -> Scalar:
        return self.values[0].one() if self.values else GaussianRational(1)

    def zero(self) -> Scalar:
        return self.values[0].zero() if self.values else GaussianRational(0)

    def permuted(self, perm: Sequence[int]) -> "EvalPoint":
        return EvalPoint(tuple(self.values[i] for i in perm))

    def violations(self) -> list[str]:
        """Every admissibility constraint the point fails (1-based labels)."""
        out = []
        vals = self.values
        n = len(vals)
        for k, a in enumerate(vals, 1):
            if a.is_zero():
                out.append(f"a_{k} = 0")
            if a.is_one():
                out.append(f"a_{k} = 1")
        for i in range(n):
            for j in range(i, n):
                if (vals[i] * vals[j]).is_one():
                    out.append(f"a_{i + 1}*a_{j + 1} = 1")
        # subset products; singletons and pairs are reported above
        prods = [self.one()]
        for idx in range(1, 1 << n):
            low = (idx & -idx).bit_length() - 1
            prods.append(prods[idx & (idx - 1)] * vals[low])
            if bin(idx).count("1") >= 3 and prods[idx].is_one():
                members = ",".join(str(b + 1) for b in range(n) if idx >> b & 1)
                out.append(f"prod a_{{{members}}} = 1")
        return out

    @property
    def admissible(self) -> bool:
        return not self.violations()

    def distinct(self) -> bool:
        return all(x != y for x, y in combinations(self.values, 2))

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.values) + ")"


def _gauss_component(rng: random.Random) -> Fraction:
    sign = rng.choice((1, -1))
    return sign * Fraction(rng.randint(2, 17), rng.randint(2, 17))


def sample_admissible(n: int, domain: Domain | str = "gauss-rational", seed: int = 0) -> EvalPoint:
    """Draw an admissible point with pairwise distinct entries, deterministically.

    Gaussian-rational components are ``+-u/v`` with ``u, v`` in ``[2, 17]``.
    Gives up with :class:`ExhaustedRetries` after ``MAX_REJECTIONS`` rejected
    candidate entries.
    """
    if isinstance(domain, str):
        domain = Domain(domain)
    if n < 1:
        raise ValueError("n must be >= 1")
    if domain.kind == "gf" and domain.modulus <= 2 * n * n:
        raise ValueError(f"modulus must exceed 2*n^2 = {2 * n * n}")
    rng = random.Random(seed)
    rejections = 0
    while True:
        values: list[Scalar] = []
        while len(values) < n:
            if domain.kind == "gf":
                cand = PrimeField(rng.randrange(2, domain.modulus), domain.modulus)
            else:
                cand = GaussianRational(_gauss_component(rng), _gauss_component(rng))
            trial = EvalPoint(tuple(values) + (cand,))
            if cand in values or not trial.admissible:
                rejections += 1
                if rejections > MAX_REJECTIONS:
                    raise ExhaustedRetries(f"no admissible point after {MAX_REJECTIONS} rejections")
                continue
            values.append(cand)
        return EvalPoint(tuple(values))
