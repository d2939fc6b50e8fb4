"""Catalyst construction for power-form pairs and exact catalyst verification.

A catalyst for power-form sequences is stored compactly as a base ``omega``
and a multiplicity ``a_k`` for each element ``omega**k``; the multiplicities
are the coefficients of the multiplier polynomial ``a``. Verification works
on weighted element lists and never expands the multiplicities.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from mpmath import iv

from . import _interval as I
from .majorization import SumMismatchError, is_majorized
from .polynomials import (DEFAULT_MAX_DEGREE, Polynomial, count_positive_roots,
                          gamma_from_exponents, positivize)
from .sequences import PowerForm, ProbSequence, to_fraction

VERIFIED = "verified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"


class ConditionsError(ValueError):
    """The pair fails the trumping conditions, so no catalyst exists."""


@dataclass(frozen=True)
class Catalyst:
    """``multiplicities[k]`` copies of ``base**k``.

    ``base`` is a Fraction, or an mpmath interval when the base is only known
    through an enclosure.
    """

    base: object
    multiplicities: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if any(k < 0 or a < 0 for k, a in self.multiplicities.items()):
            raise ValueError("exponents and multiplicities must be nonnegative")
        if not any(self.multiplicities.values()):
            raise ValueError("catalyst is empty")

    @classmethod
    def from_polynomial(cls, base, a: Polynomial) -> "Catalyst":
        return cls(base, {k: int(c) for k, c in enumerate(a.coeffs) if c})

    @property
    def exact(self) -> bool:
        return isinstance(self.base, Fraction)

    @property
    def size(self) -> int:
        return sum(self.multiplicities.values())

    def weighted(self, precision: int = I.DEFAULT_PRECISION):
        """``[(value, weight)]``, values exact or enclosures."""
        if self.exact:
            return [(self.base**k, a) for k, a in sorted(self.multiplicities.items()) if a]
        with I.precision(precision):
            return [(self.base**k, a) for k, a in sorted(self.multiplicities.items()) if a]

    def materialize(self, limit: int = 10**6) -> ProbSequence:
        if not self.exact:
            raise ValueError("only rational-base catalysts can be materialized")
        if self.size > limit:
            raise ValueError(f"catalyst has {self.size} elements (limit {limit})")
        out = []
        for k, a in sorted(self.multiplicities.items()):
            out.extend([self.base**k] * a)
        return ProbSequence(out)

    def to_json(self):
        mult = {str(k): str(a) for k, a in sorted(self.multiplicities.items())}
        if self.exact:
            return {"omega": str(self.base), "multiplicities": mult}
        return {"omega_enclosure": [str(I.lo(self.base)), str(I.hi(self.base))], "multiplicities": mult}

    @classmethod
    def from_json(cls, data) -> Union["Catalyst", ProbSequence]:
        """Read a catalyst; a plain list is taken as a raw sequence."""
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, list):
            return ProbSequence(data)
        mult = {int(k): int(v) for k, v in data["multiplicities"].items()}
        if "omega" in data:
            return cls(to_fraction(data["omega"]), mult)
        lo_, hi_ = (to_fraction(v) for v in data["omega_enclosure"])
        with I.precision(I.MAX_PRECISION):
            base = iv.mpf([I.ival(lo_).a, I.ival(hi_).b])
        return cls(base, mult)


# ------------------------------------------------------------ construction


def _strip_exponents(xs, ys):
    cx, cy = defaultdict(int), defaultdict(int)
    for e in xs:
        cx[e] += 1
    for e in ys:
        cy[e] += 1
    bx, by = [], []
    for e in sorted(set(cx) | set(cy)):
        common = min(cx[e], cy[e])
        bx += [e] * (cx[e] - common)
        by += [e] * (cy[e] - common)
    return bx, by


def pair_gamma(x: PowerForm, y: PowerForm):
    """``(Gamma, gamma, shift)`` after removing common exponents and
    shifting the smallest remaining exponent to 0."""
    if x.base != y.base or x.scale != y.scale:
        raise ValueError("power forms must share base and scale")
    bx, by = _strip_exponents(x.exponents, y.exponents)
    if not bx:
        raise ValueError("x and y coincide up to rearrangement")
    shift = min(bx + by)
    Gamma, gamma = gamma_from_exponents([e - shift for e in by], [e - shift for e in bx], x.base)
    return Gamma, gamma, shift


def construct_catalyst(x: PowerForm, y: PowerForm, max_degree: int = DEFAULT_MAX_DEGREE,
                       strategy: str = "auto") -> Tuple[Catalyst, Optional[Polynomial]]:
    """Build ``c`` with ``x ⊗ c ≺ y ⊗ c`` for a pair in common power form.

    Returns ``(catalyst, b)`` where ``b = a * gamma`` has nonnegative
    coefficients; ``b`` is ``None`` when x is already majorized by y and the
    trivial catalyst ``(1)`` is returned.
    """
    xs, ys = x.materialize(), y.materialize()
    if sorted(xs.elements) == sorted(ys.elements):
        raise ValueError("x and y coincide up to rearrangement")
    if xs.total != ys.total:
        raise SumMismatchError(f"sums differ: {xs.total} != {ys.total}")
    if is_majorized(xs, ys):
        return Catalyst(x.base, {0: 1}), None
    _, gamma, _ = pair_gamma(x, y)
    if gamma[0] <= 0 or count_positive_roots(gamma):
        raise ConditionsError("gamma is not positive on (0, inf): the conditions fail")
    a, b = positivize(gamma, max_degree, strategy)
    return Catalyst.from_polynomial(x.base, a), b


def delta_at_knots(x: PowerForm, y: PowerForm, c: Catalyst, b: Polynomial):
    """Tabulate ``Delta(omega**m) = H_{y⊗c} - H_{x⊗c}`` in the frame where the
    smallest exponent is 0 and the scale is 1, next to the closed form
    ``(omega - 1) * b_{m-1} * omega**(m-1)``.

    The left side is built from element counts directly, not from ``a * Gamma``.
    Returns ``[(m, delta, predicted)]`` for ``m = 0 .. deg(b) + 2``; raises
    ``ArithmeticError`` on any mismatch.
    """
    w = x.base
    bx, by = _strip_exponents(x.exponents, y.exponents)
    shift = min(bx + by)
    counts = defaultdict(int)
    for k, a in c.multiplicities.items():
        for e in by:
            counts[e - shift + k] += a
        for e in bx:
            counts[e - shift + k] -= a
    top = b.degree + 2
    if counts and max(counts) > top:
        raise ArithmeticError("catalyst reaches beyond the expected support")
    rows = []
    lower_count, lower_sum = 0, Fraction(0)
    for m in range(top + 1):
        t = w**m
        delta = lower_count * t - lower_sum
        predicted = (w - 1) * b[m - 1] * w ** (m - 1) if m >= 1 else Fraction(0)
        if delta != predicted:
            raise ArithmeticError(f"knot identity fails at m={m}: {delta} != {predicted}")
        rows.append((m, delta, predicted))
        d = counts.get(m, 0)
        lower_count += d
        lower_sum += d * t
    if rows[-1][1] != 0 or lower_count != 0:
        raise ArithmeticError("Delta does not return to 0 past the last knot")
    return rows


# ------------------------------------------------------------ verification


@dataclass(frozen=True)
class VerifyResult:
    status: str
    witness: Optional[object] = None
    gap: Optional[object] = None
    knots: int = 0
    precision: Optional[int] = None

    def __bool__(self):
        return self.status == VERIFIED

    def to_dict(self):
        return {"status": self.status,
                "witness": None if self.witness is None else str(self.witness),
                "gap": None if self.gap is None else str(self.gap),
                "knots": self.knots, "precision": self.precision}


def _weighted(c, precision):
    if isinstance(c, ProbSequence):
        merged = defaultdict(int)
        for v in c:
            merged[v] += 1
        return sorted(merged.items())
    return c.weighted(precision)


def _sweep_exact(xw, yw):
    """Check ``H_Y >= H_X`` at every knot; weights are multiplicities."""
    events = defaultdict(lambda: [0, 0])
    for v, w in xw:
        events[v][0] += w
    for v, w in yw:
        events[v][1] += w
    cx = cy = 0
    sx = sy = Fraction(0)
    for t in sorted(events):
        gap = (cy * t - sy) - (cx * t - sx)
        if gap < 0:
            return VerifyResult(REFUTED, t, -gap, len(events))
        wx, wy = events[t]
        cx += wx
        cy += wy
        sx += wx * t
        sy += wy * t
    return VerifyResult(VERIFIED, knots=len(events))


def _products(seq: ProbSequence, cw, exact: bool):
    out = defaultdict(int) if exact else {}
    for xv in seq:
        for k, (cv, w) in enumerate(cw):
            if exact:
                out[xv * cv] += w
            else:
                key = (xv, k)
                val, acc = out.get(key, (I.ival(xv) * cv, 0))
                out[key] = (val, acc + w)
    return list(out.items()) if exact else list(out.values())


def _sweep_enclosure(xw, yw):
    """Enclosure sweep; ``None`` when a sign is undecided.

    Values whose enclosures overlap form one cluster. For t anywhere in a
    cluster, each clustered element contributes ``(t - v)^+`` in
    ``[0, width]``, so one interval covers every true knot inside it.
    """
    items = [(v, w, 0) for v, w in xw] + [(v, w, 1) for v, w in yw]
    items.sort(key=lambda it: it[0].mid)
    clusters = []
    for it in items:
        if clusters and I.lo(it[0]) <= I.hi(clusters[-1][0]):
            hull, members = clusters[-1]
            clusters[-1] = (I.hull(hull, it[0]), members + [it])
        else:
            clusters.append((it[0], [it]))
    total = [iv.mpf(0), iv.mpf(0)]
    count = [0, 0]
    for v, w, side in items:
        total[side] += w * v
        count[side] += w
    below_c, below_s = [0, 0], [iv.mpf(0), iv.mpf(0)]
    for t, members in clusters:
        width = iv.mpf([0, t.delta.b]) if len(members) > 1 else iv.mpf(0)
        inside = [sum(w for _, w, s in members if s == j) for j in (0, 1)]
        low = [below_c[j] * t - below_s[j] + inside[j] * width for j in (0, 1)]
        after_c = [count[j] - below_c[j] - inside[j] for j in (0, 1)]
        after_s = [total[j] - below_s[j] - sum((w * v for v, w, s in members if s == j), iv.mpf(0))
                   for j in (0, 1)]
        high = [after_s[j] - after_c[j] * t + inside[j] * width for j in (0, 1)]
        gap = I.intersect(low[1] - low[0], high[1] - high[0])
        if I.hi(gap) < 0:
            return VerifyResult(REFUTED, t, -gap, len(clusters))
        if I.lo(gap) < 0:
            return None
        for v, w, side in members:
            below_c[side] += w
            below_s[side] += w * v
    return VerifyResult(VERIFIED, knots=len(clusters))


def verify_catalyst(x: ProbSequence, y: ProbSequence, c, precision: int = I.DEFAULT_PRECISION,
                    max_precision: int = I.MAX_PRECISION) -> VerifyResult:
    """Decide ``x ⊗ c ≺ y ⊗ c``.

    ``c`` is a raw sequence or a :class:`Catalyst`. Rational data is checked
    exactly; an interval base is checked by certified enclosures, doubling
    precision while any knot is undecided, and reports ``inconclusive`` if
    that never settles.
    """
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    if x.total != y.total:
        raise SumMismatchError(f"sums differ: {x.total} != {y.total}")
    exact = isinstance(c, ProbSequence) or c.exact
    if exact:
        cw = _weighted(c, precision)
        return _sweep_exact(_products(x, cw, True), _products(y, cw, True))
    prec = precision
    while prec <= max_precision:
        with I.precision(prec):
            cw = _weighted(c, prec)
            res = _sweep_enclosure(_products(x, cw, False), _products(y, cw, False))
        if res is not None:
            return VerifyResult(res.status, res.witness, res.gap, res.knots, prec)
        prec *= 2
    return VerifyResult(INCONCLUSIVE, precision=max_precision)


def construct_catalyst_enclosure(x_exponents, y_exponents, omega, max_degree: int = DEFAULT_MAX_DEGREE,
                                 precision: int = I.DEFAULT_PRECISION):
    """Case A multiplier for a base known only through an enclosure.

    ``gamma`` is rebuilt by the forward recurrence ``gamma_k = P_k +
    gamma_{k-1} / omega`` with ``P = Gamma / (1 - s)``; since the recurrence
    holds for the true base, the resulting intervals enclose the true
    coefficients. ``(1 + s)**m`` is accepted once every coefficient of
    ``(1 + s)**m * gamma`` has a nonnegative lower endpoint. Returns
    ``(catalyst, b_enclosures)``.
    """
    from .polynomials import NotDivisibleError, PositivizeError
    bx, by = _strip_exponents(list(x_exponents), list(y_exponents))
    if not bx:
        raise ValueError("x and y coincide up to rearrangement")
    shift = min(bx + by)
    big = [0] * (max(bx + by) - shift + 1)
    for e in by:
        big[e - shift] += 1
    for e in bx:
        big[e - shift] -= 1
    P, r = Polynomial(big).divmod(Polynomial([1, -1]))
    if r:
        raise NotDivisibleError("Gamma(1) != 0")
    with I.precision(precision):
        w = omega if not isinstance(omega, Fraction) else I.ival(omega)
        gamma, prev = [], iv.mpf(0)
        for k in range(P.degree):
            prev = iv.mpf(int(P[k])) + prev / w
            gamma.append(prev)
        if I.sign(iv.mpf(int(P[P.degree])) + prev / w) not in (0, None):
            raise NotDivisibleError("Gamma(omega) is certainly nonzero: unequal sums")
        if not gamma or I.sign(gamma[0]) != 1:
            raise ConditionsError("gamma(0) is not certified positive")
        cur = gamma
        for m in range(max_degree + 1):
            if all(I.sign(c) == 1 or (I.sign(c) is not None and I.lo(c) >= 0) for c in cur):
                a = Polynomial([1, 1]) ** m
                return Catalyst.from_polynomial(omega, a), cur
            cur = [u + v for u, v in zip(cur + [iv.mpf(0)], [iv.mpf(0)] + cur)]
    raise PositivizeError(f"(1+s)^m multiplier with certified signs exceeds degree cap {max_degree}")
