"""Exact-rational sequences and the elementary constructions on them."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable, Optional, Sequence

import gmpy2
from mpmath import iv

from ._interval import imax, ival


def to_fraction(value) -> Fraction:
    """Parse ``"p/q"``, a decimal string, an int or a Fraction exactly.

    Floats are accepted and converted through their shortest decimal repr,
    so ``0.1`` becomes ``1/10`` rather than the binary approximation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not sequence elements")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact number: {value!r}") from exc
    raise TypeError(f"unsupported element type {type(value).__name__}")


@dataclass(frozen=True)
class ProbSequence:
    """A finite sequence of nonnegative exact rationals.

    Normalization is not enforced; operations that need equal sums check it.
    Equality is positional; use :meth:`same_multiset` for rearrangement
    equivalence.
    """

    elements: tuple

    def __init__(self, elements: Iterable = ()):
        elems = tuple(to_fraction(e) for e in elements)
        if any(e < 0 for e in elems):
            raise ValueError("sequence elements must be nonnegative")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def parse(cls, text: str) -> "ProbSequence":
        """Parse a comma separated literal such as ``"2/9, 3/9, 4/9"``."""
        parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
        return cls(parts)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __repr__(self):
        return "ProbSequence(" + ", ".join(str(e) for e in self.elements) + ")"

    @property
    def total(self) -> Fraction:
        return sum(self.elements, Fraction(0))

    @property
    def is_positive(self) -> bool:
        return all(e > 0 for e in self.elements)

    @property
    def zero_count(self) -> int:
        return sum(1 for e in self.elements if e == 0)

    def ascending(self) -> "ProbSequence":
        return sort_ascending(self)

    def same_multiset(self, other: "ProbSequence") -> bool:
        return sorted(self.elements) == sorted(other.elements)

    def normalized(self) -> "ProbSequence":
        s = self.total
        if s == 0:
            raise ValueError("cannot normalize a zero sequence")
        return ProbSequence(e / s for e in self.elements)

    def to_json(self):
        return [str(e) for e in self.elements]


def sort_ascending(x: ProbSequence) -> ProbSequence:
    return ProbSequence(sorted(x.elements))


def tensor(x: ProbSequence, c: ProbSequence) -> ProbSequence:
    """All products ``x_i * c_l``, x-major order."""
    return ProbSequence(a * b for a, b in product(x.elements, c.elements))


def tensor_power(x: ProbSequence, k: int) -> ProbSequence:
    if k < 1:
        raise ValueError("tensor power needs k >= 1")
    out = x
    for _ in range(k - 1):
        out = tensor(out, x)
    return out


def concat(x: ProbSequence, z: ProbSequence) -> ProbSequence:
    return ProbSequence(x.elements + z.elements)


def strip_common(x: ProbSequence, y: ProbSequence):
    """Split off the maximal common sub-multiset.

    Returns ``(x', y', z)`` with ``x = x' + z`` and ``y = y' + z`` as multisets,
    each part in ascending order.
    """
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    cx, cy = Counter(x.elements), Counter(y.elements)
    common = cx & cy
    return (
        ProbSequence(sorted((cx - common).elements())),
        ProbSequence(sorted((cy - common).elements())),
        ProbSequence(sorted(common.elements())),
    )


def distance(x: Sequence, xbar: Sequence):
    """Enclosure of ``max_i |ln(x_i / xbar_i)|`` over ascending-sorted views.

    Elements may be Fractions, floats, mpf values or intervals; intervals are
    sorted by midpoint, which is exact whenever the enclosures are disjoint.
    """
    if len(x) != len(xbar):
        raise ValueError("length mismatch")
    a = sorted((ival(v) for v in x), key=lambda v: v.mid)
    b = sorted((ival(v) for v in xbar), key=lambda v: v.mid)
    best = iv.mpf(0)
    for u, v in zip(a, b):
        if not (u > 0) or not (v > 0):
            raise ValueError("distance needs strictly positive elements")
        d = abs(iv.log(u / v))
        best = imax(best, d)
    return best


@dataclass(frozen=True)
class PowerForm:
    """Elements ``scale * base**e`` with integer exponents, minimum exponent 0."""

    scale: Fraction
    base: Fraction
    exponents: tuple

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        if self.base <= 1:
            raise ValueError("base must exceed 1")
        if any(e < 0 for e in self.exponents):
            raise ValueError("exponents must be nonnegative")

    def materialize(self) -> ProbSequence:
        return ProbSequence(self.scale * self.base**e for e in self.exponents)


def _perfect_power(p: int, k: int) -> Optional[int]:
    root, exact = gmpy2.iroot(gmpy2.mpz(p), k)
    return int(root) if exact else None


def _primitive_root(q: Fraction):
    """Write ``q > 1`` as ``rho**k`` with ``rho`` rational and ``k`` maximal."""
    p, d = q.numerator, q.denominator
    best = (q, 1)
    for k in range(2, p.bit_length() + 1):
        rp = _perfect_power(p, k)
        if rp is None:
            continue
        rd = _perfect_power(d, k)
        if rd is None:
            continue
        best = (Fraction(rp, rd), k)
    return best


def detect_power_form(x: ProbSequence, y: ProbSequence, max_exponent: int = 64):
    """Find a common ``(K, omega)`` with every element of x and y equal to
    ``K * omega**k`` for integers ``0 <= k <= max_exponent``.

    All ratios to the smallest element must be powers of one primitive
    rational; omega is that primitive raised to the gcd of the exponents, so
    the exponents come out as small as possible. Returns ``None`` when no
    rational base exists or the exponents exceed the cap.
    """
    if not (x.is_positive and y.is_positive):
        return None
    values = sorted(set(x.elements) | set(y.elements))
    scale = values[0]
    if len(values) == 1:
        return (PowerForm(scale, Fraction(2), (0,) * len(x)),
                PowerForm(scale, Fraction(2), (0,) * len(y)))
    rho = None
    powers = {}
    for v in values[1:]:
        r, k = _primitive_root(v / scale)
        if rho is None:
            rho = r
        elif r != rho:
            return None
        powers[v] = k
    g = 0
    for k in powers.values():
        g = gcd(g, k)
    base = rho**g
    exps = {scale: 0}
    exps.update({v: k // g for v, k in powers.items()})
    if max(exps.values()) > max_exponent:
        return None
    return (PowerForm(scale, base, tuple(exps[v] for v in x.elements)),
            PowerForm(scale, base, tuple(exps[v] for v in y.elements)))
