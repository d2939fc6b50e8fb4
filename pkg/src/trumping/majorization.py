"""Exact majorization tests."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .sequences import ProbSequence, to_fraction


class SumMismatchError(ValueError):
    """Raised when two sequences that must have equal sums do not."""


@dataclass(frozen=True)
class MajorizationResult:
    """Outcome of a majorization test.

    ``witness`` is the smallest ``m`` whose ascending partial sum of x falls
    below that of y (1-based), or ``None`` when x is majorized by y.
    """

    majorized: bool
    witness: Optional[int] = None
    gap: Optional[Fraction] = None

    def __bool__(self):
        return self.majorized


def _check_pair(x: ProbSequence, y: ProbSequence):
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    if x.total != y.total:
        raise SumMismatchError(f"sums differ: {x.total} != {y.total}")


def is_majorized(x: ProbSequence, y: ProbSequence) -> MajorizationResult:
    """Decide ``x ≺ y`` from ascending partial sums."""
    _check_pair(x, y)
    xs, ys = sorted(x.elements), sorted(y.elements)
    sx = sy = Fraction(0)
    for m in range(len(xs) - 1):
        sx += xs[m]
        sy += ys[m]
        if sx < sy:
            return MajorizationResult(False, m + 1, sy - sx)
    return MajorizationResult(True)


def characteristic(x: ProbSequence, t) -> Fraction:
    """``H_x(t) = sum_i max(t - x_i, 0)``."""
    t = to_fraction(t)
    if t < 0:
        raise ValueError("characteristic function needs t >= 0")
    return sum((t - e for e in x.elements if e < t), Fraction(0))


def is_majorized_via_characteristic(x: ProbSequence, y: ProbSequence) -> MajorizationResult:
    """Decide ``x ≺ y`` by ``H_x <= H_y`` at every element value.

    Both functions are piecewise linear with kinks only at element values and
    share the slope ``n`` past the largest one, so the knots suffice.
    The witness reported here is the offending knot value's rank, not an
    index ``m``; callers that need ``m`` should use :func:`is_majorized`.
    """
    _check_pair(x, y)
    knots = sorted(set(x.elements) | set(y.elements))
    for i, t in enumerate(knots):
        gap = characteristic(y, t) - characteristic(x, t)
        if gap < 0:
            return MajorizationResult(False, i + 1, -gap)
    return MajorizationResult(True)
