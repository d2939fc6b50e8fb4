"""Thin helpers around :mod:`mpmath.iv` for certified enclosures.

Every real-valued quantity in the package (power means, entropies, R values)
is returned as an ``iv.mpf`` interval computed with outward rounding at the
working precision of the ``iv`` context.
"""

import math
from contextlib import contextmanager
from fractions import Fraction

import mpmath
from mpmath import iv
from mpmath.libmp import mpf_cmp

DEFAULT_PRECISION = 128
MAX_PRECISION = 2048


@contextmanager
def precision(bits):
    """Run the block with the interval context at ``bits`` of precision.

    The ``iv`` context is process global; callers must not interleave
    different precisions across threads.
    """
    old = iv.prec
    iv.prec = int(bits)
    try:
        yield
    finally:
        iv.prec = old


def ival(value):
    """Enclose an exact or floating value as an interval at current precision."""
    if isinstance(value, iv.mpf):
        return value
    if hasattr(value, "_mpi_"):
        # interval constants such as iv.pi evaluate at the current precision
        return value + 0
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return iv.mpf(value.numerator)
        return iv.mpf(value.numerator) / value.denominator
    if isinstance(value, int):
        return iv.mpf(value)
    if isinstance(value, float):
        # binary floats are exact dyadics
        return iv.mpf(mpmath.mpf(value))
    if isinstance(value, mpmath.mpf):
        return iv.mpf(value)
    if isinstance(value, str):
        return ival(Fraction(value))
    raise TypeError(f"cannot enclose {type(value).__name__}")


def _raw_to_fraction(raw):
    sign, man, exp, _ = raw
    if not man:
        # mpmath encodes +-inf / nan with zero mantissa and special exponents
        if exp:
            raise ValueError("interval endpoint is not finite")
        return Fraction(0)
    value = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -value if sign else value


def lo(v):
    """Exact lower endpoint of an interval as a Fraction."""
    return _raw_to_fraction(v._mpi_[0])


def hi(v):
    """Exact upper endpoint of an interval as a Fraction."""
    return _raw_to_fraction(v._mpi_[1])


def is_finite(v):
    a, b = v._mpi_
    return not (a[1] == 0 and a[2]) and not (b[1] == 0 and b[2])


def down(q: Fraction) -> float:
    """Largest float not above ``q``."""
    f = float(q)
    return math.nextafter(f, -math.inf) if Fraction(f) > q else f


def up(q: Fraction) -> float:
    """Smallest float not below ``q``."""
    f = float(q)
    return math.nextafter(f, math.inf) if Fraction(f) < q else f


def lo_float(v):
    return down(lo(v))


def hi_float(v):
    return up(hi(v))


def mid_float(v):
    return float(mpmath.mpf(v.mid))


def sign(v):
    """Certified sign of an interval: 1, -1, 0 for the point zero, None if unknown."""
    a, b = lo(v), hi(v)
    if a > 0:
        return 1
    if b < 0:
        return -1
    if a == b == 0:
        return 0
    return None


def _pick(a, b, larger):
    c = mpf_cmp(a, b)
    return a if (c >= 0) == larger else b


def imax(u, v):
    """Enclosure of max(u, v)."""
    (ua, ub), (va, vb) = u._mpi_, v._mpi_
    return iv.make_mpf((_pick(ua, va, True), _pick(ub, vb, True)))


def imin(u, v):
    """Enclosure of min(u, v)."""
    (ua, ub), (va, vb) = u._mpi_, v._mpi_
    return iv.make_mpf((_pick(ua, va, False), _pick(ub, vb, False)))


def intersect(u, v):
    """Intersection of two enclosures of the same quantity."""
    (ua, ub), (va, vb) = u._mpi_, v._mpi_
    a, b = _pick(ua, va, True), _pick(ub, vb, False)
    if mpf_cmp(a, b) > 0:
        raise ArithmeticError("disjoint enclosures of one quantity")
    return iv.make_mpf((a, b))


def hull(u, v):
    (ua, ub), (va, vb) = u._mpi_, v._mpi_
    return iv.make_mpf((_pick(ua, va, False), _pick(ub, vb, True)))


def fmt(v, digits=20):
    """Readable two-endpoint string."""
    return f"[{mpmath.nstr(mpmath.mpf(v.a), digits)}, {mpmath.nstr(mpmath.mpf(v.b), digits)}]"
