"""Explicit stability radii for the trumping conditions.

``theorem3_epsilon`` bounds how far a sequence may move (in log-ratio
distance, at fixed sum) while every power mean on ``[1/2, 2]`` changes by at
most a factor ``exp(+-delta |nu - 1|)``. ``theorem2_epsilon`` combines it
with sampled margins of ``G_nu = ln(A_nu(y) / A_nu(x))`` into a radius within
which both sequences may be perturbed without breaking the conditions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from mpmath import iv

from . import _interval as I
from .means import STRICT, _PairEval, check_conditions
from .sequences import ProbSequence, to_fraction

SAFETY = Fraction(1, 2)


def _t3_bound(eps: Fraction, log_spread):
    """Upper enclosure of ``eps + (exp(4 eps) - 1) / 2 * ln(x_n / x_1)``."""
    e = I.ival(eps)
    return e + (iv.exp(4 * e) - 1) / 2 * log_spread


def theorem3_epsilon(x: ProbSequence, delta, precision: int = I.DEFAULT_PRECISION,
                     steps: int = 64) -> Fraction:
    """Largest dyadic ``eps`` (to ``steps`` bisection steps) with
    ``eps + (exp(4 eps) - 1)/2 * ln(max x / min x) <= delta / 2``."""
    if not x.is_positive:
        raise ValueError("theorem3_epsilon needs a strictly positive sequence")
    delta = to_fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    half = delta / 2
    xs = sorted(x.elements)
    if xs[0] == xs[-1]:
        return half
    with I.precision(precision):
        spread = iv.log(I.ival(xs[-1]) / I.ival(xs[0]))
        lo, hi = Fraction(0), half
        for _ in range(steps):
            mid = (lo + hi) / 2
            if I.hi(_t3_bound(mid, spread)) <= half:
                lo = mid
            else:
                hi = mid
    return lo


def theorem3_lhs(x: ProbSequence, eps, precision: int = I.DEFAULT_PRECISION):
    """Enclosure of the bound evaluated at ``eps`` (for re-checking)."""
    xs = sorted(x.elements)
    with I.precision(precision):
        return _t3_bound(to_fraction(eps), iv.log(I.ival(xs[-1]) / I.ival(xs[0])))


def power_sum(x, nu, precision: int = I.DEFAULT_PRECISION):
    with I.precision(precision):
        v = I.ival(to_fraction(nu))
        return sum((iv.exp(v * iv.log(I.ival(e))) for e in x), iv.mpf(0))


def k_nu(x, xbar, nu, precision: int = I.DEFAULT_PRECISION):
    """Enclosure of ``ln(S_nu(xbar) / S_nu(x))`` with ``S_nu`` the power sum.

    ``xbar`` may hold exact values or interval enclosures.
    """
    nu = to_fraction(nu)
    if not 0 < nu <= 2:
        raise ValueError("k_nu is used for nu in (0, 2]")
    if any(I.sign(I.ival(e)) != 1 for e in list(x) + list(xbar)):
        raise ValueError("k_nu needs strictly positive elements")
    with I.precision(precision):
        return iv.log(power_sum(xbar, nu, precision) / power_sum(x, nu, precision))


class StabilityRadius(NamedTuple):
    eps0: Fraction
    B: Fraction
    M: Fraction


def _linspace(a: float, b: float, k: int):
    return [a + (b - a) * i / (k - 1) for i in range(k)]


def theorem2_epsilon(x: ProbSequence, y: ProbSequence, samples: int = 1000,
                     precision: int = I.DEFAULT_PRECISION, check: bool = True) -> StabilityRadius:
    """Radius ``eps0`` such that sum-preserving perturbations of x and y within
    log-ratio distance ``eps0`` keep the strict conditions.

    ``B`` (least ``|G_nu|`` away from ``[1/2, 2]``, including both infinite
    limits) and ``M`` (least ``G_nu / (nu - 1)`` on ``[1/2, 2]``) come from
    certified lower bounds on a dense sample, halved for safety. Both
    sequences get the power-mean bound with ``delta = M / 3``.
    """
    if not (x.is_positive and y.is_positive):
        raise ValueError("theorem2_epsilon needs strictly positive sequences")
    if x.total != y.total or len(x) != len(y):
        raise ValueError("sequences must have equal length and sum")
    xs, ys = sorted(x.elements), sorted(y.elements)
    if not (xs[0] > ys[0] and xs[-1] < ys[-1]):
        raise ValueError("need min(x) > min(y) and max(x) < max(y)")
    if check:
        report = check_conditions(x, y, STRICT, precision=precision)
        if not report.satisfied:
            raise ValueError(f"conditions not satisfied ({report.verdict}: {report.first_violation})")
    ev = _PairEval(x, y)
    with I.precision(precision):
        tails = [abs(iv.log(I.ival(ys[0]) / I.ival(xs[0]))), abs(iv.log(I.ival(ys[-1]) / I.ival(xs[-1])))]
        b_min = min(I.lo(t) for t in tails)
        half = samples // 2
        for nu in _linspace(-40.0, 0.5, half) + _linspace(2.0, 40.0, half):
            r = ev.r(Fraction(nu), precision)
            g = abs(r * (I.ival(Fraction(nu)) - 1))
            b_min = min(b_min, I.lo(g))
        m_min = None
        for nu in _linspace(0.5, 2.0, samples):
            lo = I.lo(ev.r(Fraction(nu), precision))
            m_min = lo if m_min is None else min(m_min, lo)
    if b_min <= 0 or m_min <= 0:
        raise ValueError("sampled margins are not positive")
    B = _snap_down(b_min * SAFETY)
    M = _snap_down(m_min * SAFETY)
    eps_x = theorem3_epsilon(x, M / 3, precision)
    eps_y = theorem3_epsilon(y, M / 3, precision)
    return StabilityRadius(min(eps_x, eps_y, B / 3), B, M)


def _snap_down(q: Fraction, digits: int = 12) -> Fraction:
    """A short rational not above ``q`` (positive q)."""
    scale = 10 ** max(0, digits - len(str(q.numerator // q.denominator)))
    from math import floor
    v = Fraction(floor(q * scale), scale)
    while v <= 0:
        scale *= 10
        v = Fraction(floor(q * scale), scale)
    return v
