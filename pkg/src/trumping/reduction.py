"""Reductions from general sequences to the power-form case, and the
top-level trumping decision.

``case_b_reduce`` sandwiches a positive pair between power forms over an
irrational base ``omega = exp(lambda0 / N)``; ``case_c_reduce`` lifts the
zeros of y to a small ``eps``. ``decide_trumping`` strings the pieces
together and reports how far the construction got.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np
from mpmath import iv

from . import _interval as I
from .catalyst import (INCONCLUSIVE, REFUTED, VERIFIED, Catalyst, ConditionsError, construct_catalyst,
                       construct_catalyst_enclosure, delta_at_knots, verify_catalyst)
from .majorization import SumMismatchError, is_majorized
from .means import STRICT, ConditionReport, _PairEval, check_conditions
from .polynomials import DEFAULT_MAX_DEGREE, NotDivisibleError, PositivizeError
from .sequences import ProbSequence, detect_power_form, distance, strip_common
from .stability import StabilityRadius, theorem2_epsilon

NOT_TRUMPED = "not_trumped"
TRUMPED = "trumped"
CONDITIONS_ONLY = "trumped_conditions_only"

SEARCH_LIMIT = 2_000_000
CHUNK = 200_000


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def _require_normalized_ascending(x: ProbSequence, y: ProbSequence):
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    if x.total != 1 or y.total != 1:
        raise ValueError("sequences must be normalized")
    if set(x.elements) & set(y.elements):
        raise ValueError("sequences share elements; strip them first")
    return sorted(x.elements), sorted(y.elements)


def _nonneg(v) -> bool:
    return I.lo(v) >= 0


# ---------------------------------------------------------------- Case B


@dataclass
class CaseBArtifacts:
    """Everything the sandwich construction produced.

    ``alpha``/``beta`` are the rational stand-ins for ``ln y_i``/``ln x_i``
    with common denominator ``denominator``; ``x_exponents``/``y_exponents``
    are ``N * beta_i``/``N * alpha_i`` shifted by ``shift`` so the smallest
    is 0. ``xbar``/``ybar`` are enclosures of the normalized power forms.
    """

    x: ProbSequence
    y: ProbSequence
    eps: Fraction
    radius: StabilityRadius
    L: object
    H: object
    denominator: int
    alpha: tuple
    beta: tuple
    phi: tuple
    theta: tuple
    lambda0: object
    Z0: object
    omega: object
    shift: int
    x_exponents: tuple
    y_exponents: tuple
    xbar: tuple
    ybar: tuple
    precision: int
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def eps0(self) -> Fraction:
        return self.radius.eps0

    @property
    def degree(self) -> int:
        return max(self.x_exponents + self.y_exponents)

    def to_dict(self):
        return {
            "eps": str(self.eps), "eps0": str(self.eps0), "denominator": self.denominator,
            "L": I.fmt(self.L), "H": I.fmt(self.H),
            "lambda0": I.fmt(self.lambda0), "Z0": I.fmt(self.Z0), "omega": I.fmt(self.omega),
            "alpha": [str(a) for a in self.alpha], "beta": [str(b) for b in self.beta],
            "degree": self.degree, "checks": self.checks,
        }


def _window_bounds(logs, eps: Fraction, n: int, sign: int):
    """Exact rational inner bounds of the windows for the first n-1 entries.

    ``sign=+1``: ``[ln v + eps/2n, ln v + eps/n]``; ``sign=-1`` mirrors it.
    """
    out = []
    near, far = I.ival(eps / (2 * n)), I.ival(eps / n)
    for lv in logs[:-1]:
        if sign > 0:
            a, b = lv + near, lv + far
        else:
            a, b = lv - far, lv - near
        out.append((I.hi(a), I.lo(b)))
    return out


def _last_window(chosen, values, logs, eps: Fraction):
    """Window for the last rational so that ``|sum v_i dev_i| <= eps**2``."""
    s = sum((I.ival(v) * (I.ival(c) - lv) for c, v, lv in zip(chosen, values, logs)), iv.mpf(0))
    e2 = I.ival(eps * eps)
    vn = I.ival(values[-1])
    a = logs[-1] + (-e2 - s) / vn
    b = logs[-1] + (e2 - s) / vn
    return I.hi(a), I.lo(b)


def _try_denominator(N: int, wy, wx, ys, xs, ly, lx, eps):
    alpha, beta = [], []
    for (a, b), out in ((w, alpha) for w in wy):
        k = _ceil(a * N)
        if k > _floor(b * N):
            return None
        out.append(Fraction(k, N))
    for (a, b) in wx:
        k = _ceil(a * N)
        if k > _floor(b * N):
            return None
        beta.append(Fraction(k, N))
    for vals, logs, chosen in ((ys, ly, alpha), (xs, lx, beta)):
        a, b = _last_window(chosen, vals, logs, eps)
        k = _ceil(a * N)
        if a > b or k > _floor(b * N):
            return None
        chosen.append(Fraction(k, N))
    return alpha, beta


def _float_candidates(wy, wx, ys, xs, eps, limit):
    """Denominators below ``limit`` that hit every window in double
    precision; each is re-checked exactly by the caller."""
    lo_w = np.array([float(a) for a, _ in wy + wx])
    hi_w = np.array([float(b) for _, b in wy + wx])
    k_y = len(wy)
    yv = np.array([float(v) for v in ys])
    xv = np.array([float(v) for v in xs])
    ly = np.log(yv)
    lx = np.log(xv)
    e2 = float(eps) ** 2
    for start in range(1, limit + 1, CHUNK):
        N = np.arange(start, min(start + CHUNK, limit + 1), dtype=np.float64)
        K = np.ceil(np.outer(N, lo_w))
        ok = np.all(K <= np.floor(np.outer(N, hi_w)), axis=1)
        if not ok.any():
            continue
        N, K = N[ok], K[ok]
        chosen = K / N[:, None]
        good = np.ones(len(N), dtype=bool)
        for vals, logs, sl in ((yv, ly, slice(0, k_y)), (xv, lx, slice(k_y, None))):
            s = (vals[:-1] * (chosen[:, sl] - logs[:-1])).sum(axis=1)
            a = logs[-1] + (-e2 - s) / vals[-1]
            b = logs[-1] + (e2 - s) / vals[-1]
            good &= np.ceil(a * N) <= np.floor(b * N)
        for n in N[good]:
            yield int(n)


def _find_rationals(xs, ys, lx, ly, eps, search_limit):
    n = len(xs)
    wy = _window_bounds(ly, eps, n, +1)
    wx = _window_bounds(lx, eps, n, -1)
    for N in _float_candidates(wy, wx, ys, xs, eps, search_limit):
        got = _try_denominator(N, wy, wx, ys, xs, ly, lx, eps)
        if got is not None:
            return N, got
    # dyadic fallback: once 2**-j is below every window width a hit is certain
    widths = [b - a for a, b in wy + wx] + [2 * eps * eps / max(ys[-1], xs[-1])]
    j = max(1, math.ceil(math.log2(1 / float(min(widths)))))
    for N in (1 << k for k in range(j, j + 64)):
        got = _try_denominator(N, wy, wx, ys, xs, ly, lx, eps)
        if got is not None:
            return N, got
    raise ArithmeticError("no common denominator found for the rational windows")


def _bisect_root(alpha, beta, r: Fraction, precision: int):
    """Enclosure of the root of ``F(l) = sum e^{l alpha} - e^{l beta}`` in
    ``[1 - r, 1 + r]``."""
    A = [I.ival(a) for a in alpha]
    B = [I.ival(b) for b in beta]

    def F(lam):
        lv = I.ival(lam) if isinstance(lam, Fraction) else lam
        return sum((iv.exp(lv * a) for a in A), iv.mpf(0)) - sum((iv.exp(lv * b) for b in B), iv.mpf(0))

    lo_, hi_ = 1 - r, 1 + r
    if I.sign(F(lo_)) != -1 or I.sign(F(hi_)) != 1:
        raise ArithmeticError("F does not change sign on the bracketing interval")
    for _ in range(precision - 16):
        mid = (lo_ + hi_) / 2
        s = I.sign(F(mid))
        if s == -1:
            lo_ = mid
        elif s == 1:
            hi_ = mid
        elif s == 0:
            lo_ = hi_ = mid
            break
        else:
            break
    lam = I.hull(I.ival(lo_), I.ival(hi_))
    z = I.intersect(sum((iv.exp(lam * a) for a in A), iv.mpf(0)),
                    sum((iv.exp(lam * b) for b in B), iv.mpf(0)))
    return lam, z


def _certified_majorized(a, b) -> bool:
    """``a ≺ b`` certified from enclosures of equal-sum sequences.

    Order statistics are monotone in the inputs, so summing sorted lower
    (upper) endpoints bounds the m smallest from below (above).
    """
    lows_a = sorted(I.lo(I.ival(v)) for v in a)
    highs_b = sorted(I.hi(I.ival(v)) for v in b)
    sa = sb = Fraction(0)
    for m in range(len(lows_a) - 1):
        sa += lows_a[m]
        sb += highs_b[m]
        if sa < sb:
            return False
    return True


def case_b_reduce(x: ProbSequence, y: ProbSequence, radius: Optional[StabilityRadius] = None,
                  precision: int = 256, search_limit: int = SEARCH_LIMIT) -> CaseBArtifacts:
    """Sandwich ``x ≺ xbar`` and ``ybar ≺ y`` with xbar, ybar in a common
    power form over ``omega = exp(lambda0 / N)``.

    Inputs must be positive, normalized and free of common elements, with
    ``min x > min y`` and ``max x < max y`` and the strict conditions holding.
    Every bound of the construction is re-checked on the output with
    certified enclosures; a failure raises ``ArithmeticError``.
    """
    xs, ys = _require_normalized_ascending(x, y)
    if not (x.is_positive and y.is_positive):
        raise ValueError("case B needs strictly positive sequences")
    n = len(xs)
    if radius is None:
        radius = theorem2_epsilon(x, y, precision=min(precision, 128))
    with I.precision(precision):
        ly = [iv.log(I.ival(v)) for v in ys]
        lx = [iv.log(I.ival(v)) for v in xs]
        H = sum((I.ival(v) * l for v, l in zip(ys, ly)), iv.mpf(0)) - sum(
            (I.ival(v) * l for v, l in zip(xs, lx)), iv.mpf(0))
        L = -ly[0]
        if I.sign(H) != 1:
            raise ValueError("entropy gap is not certified positive")
        cap = min(radius.eps0 / 2, Fraction(1, 8 * n), Fraction(1, n * n),
                  I.lo(H) / (96 * n * I.hi(L)))
        eps = Fraction(int(cap * 10**12) * 9, 10**13) if cap * 10**12 >= 1 else cap * Fraction(9, 10)
        eps = eps.limit_denominator(10**15)
        if not (0 < eps < cap):
            eps = cap / 2
        N, (alpha, beta) = _find_rationals(xs, ys, lx, ly, eps, search_limit)
        r = eps / I.hi(L)
        lam, Z0 = _bisect_root(alpha, beta, r, precision)
        omega = iv.exp(lam / N)
        ya = [int(a * N) for a in alpha]
        xb = [int(b * N) for b in beta]
        shift = min(ya + xb)
        xbar = tuple(iv.exp(lam * I.ival(b)) / Z0 for b in beta)
        ybar = tuple(iv.exp(lam * I.ival(a)) / Z0 for a in alpha)
        phi = tuple(I.ival(a) - l for a, l in zip(alpha, ly))
        theta = tuple(I.ival(b) - l for b, l in zip(beta, lx))
        art = CaseBArtifacts(
            ProbSequence(xs), ProbSequence(ys), eps, radius, L, H, N, tuple(alpha), tuple(beta),
            phi, theta, lam, Z0, omega, shift,
            tuple(e - shift for e in xb), tuple(e - shift for e in ya), xbar, ybar, precision)
        art.checks = _case_b_checks(art)
    failed = [k for k, ok in art.checks.items() if not ok]
    if failed:
        raise ArithmeticError(f"case B bounds not certified: {', '.join(failed)}")
    return art


def _case_b_checks(a: CaseBArtifacts) -> Dict[str, bool]:
    n = len(a.x)
    e = I.ival(a.eps)
    e2 = I.ival(a.eps * a.eps)
    near, far = I.ival(a.eps / (2 * n)), I.ival(a.eps / n)
    xs, ys = a.x.elements, a.y.elements
    sum_phi = sum((I.ival(v) * p for v, p in zip(ys, a.phi)), iv.mpf(0))
    sum_theta = sum((I.ival(v) * t for v, t in zip(xs, a.theta)), iv.mpf(0))
    return {
        "phi_window": all(_nonneg(p - near) and _nonneg(far - p) for p in a.phi[:-1]),
        "theta_window": all(_nonneg(-t - near) and _nonneg(far + t) for t in a.theta[:-1]),
        "phi_uniform": all(_nonneg(e - abs(p)) for p in a.phi),
        "theta_uniform": all(_nonneg(e - abs(t)) for t in a.theta),
        "phi_sum": _nonneg(e2 - abs(sum_phi)),
        "theta_sum": _nonneg(e2 - abs(sum_theta)),
        "lambda0": _nonneg(6 * e2 / a.H - abs(a.lambda0 - 1)),
        "log_Z0": _nonneg((2 + 12 * a.L / a.H) * e2 - abs(iv.log(a.Z0))),
        "x_dominates_xbar": all(_nonneg(I.ival(v) - b) for v, b in zip(xs[:-1], a.xbar[:-1])),
        "ybar_dominates_y": all(_nonneg(b - I.ival(v)) for v, b in zip(ys[:-1], a.ybar[:-1])),
        "x_majorized_by_xbar": _certified_majorized(xs, a.xbar),
        "ybar_majorized_by_y": _certified_majorized(a.ybar, ys),
        "distance_x": I.hi(distance(xs, a.xbar)) < a.eps0,
        "distance_y": I.hi(distance(ys, a.ybar)) < a.eps0,
    }


# ---------------------------------------------------------------- Case C


@dataclass
class CaseCArtifacts:
    m: int
    eps: Fraction
    eps1: Fraction
    eps2: Fraction
    eps3: Fraction
    eps4: Fraction
    eps_order: Fraction
    z: ProbSequence
    J_min: Fraction
    K_ratio: Fraction
    M_min: Fraction

    def to_dict(self):
        return {k: (str(v) if isinstance(v, Fraction) else v) for k, v in
                (("m", self.m), ("eps", self.eps), ("eps1", self.eps1), ("eps2", self.eps2),
                 ("eps3", self.eps3), ("eps4", self.eps4), ("eps_order", self.eps_order),
                 ("J_min", self.J_min), ("K_ratio", self.K_ratio), ("M_min", self.M_min),
                 ("z", self.z.to_json()))}


def lift_zeros(y: ProbSequence, m: int, eps) -> ProbSequence:
    """``z^eps``: the m smallest entries (zeros) become eps, the rest are
    scaled by ``1 - m eps``."""
    eps = Fraction(eps)
    ys = sorted(y.elements)
    return ProbSequence([eps] * m + [(1 - m * eps) * v for v in ys[m:]])


def _linspace(a, b, k):
    return [Fraction(a) + (Fraction(b) - Fraction(a)) * i / (k - 1) for i in range(k)]


def _float_frac(v: float) -> Fraction:
    return Fraction(v).limit_denominator(10**12)


def case_c_reduce(x: ProbSequence, y: ProbSequence, samples: int = 1000,
                  precision: int = I.DEFAULT_PRECISION, m_grid: int = 200) -> CaseCArtifacts:
    """Replace the zeros of y by a small ``eps`` so that ``z ≺ y`` and the
    pair (x, z) still satisfies the strict conditions.

    The four bounds follow the proof; the minimum/maximum over intervals are
    taken from certified samples, and the continuity step is replaced by
    halving ``eps`` until ``R_nu(x, z) > M/2`` on a grid of ``[1/2, 2]``.
    """
    xs, ys = _require_normalized_ascending(x, y)
    if not x.is_positive:
        raise ValueError("x must be strictly positive")
    m = y.zero_count
    if m == 0:
        raise ValueError("y has no zeros")
    n = len(xs)
    rep = check_conditions(x, y, STRICT, precision=precision)
    if not rep.satisfied:
        raise ConditionsError(f"conditions not satisfied ({rep.verdict}: {rep.first_violation})")
    yn, x1 = ys[-1], xs[0]
    ratio = x1 / yn
    if n % m == 0:
        eps1 = yn * ratio ** (n // m)
    else:
        with I.precision(precision):
            eps1 = I.lo(I.ival(yn) * iv.exp(iv.log(I.ival(ratio)) * n / m))
    pos_y = ys[m:]
    with I.precision(precision):
        lxs = [iv.log(I.ival(v)) for v in xs]
        lys = [iv.log(I.ival(v)) for v in pos_y]
        j_limit = iv.exp((sum(lxs, iv.mpf(0)) - sum(lys, iv.mpf(0))) / m)
        j_min = I.lo(j_limit)
        for nu in _linspace(0, Fraction(1, 2), samples)[1:]:
            v = I.ival(nu)
            num = sum((iv.exp(v * l) for l in lxs), iv.mpf(0)) - sum((iv.exp(v * l) for l in lys), iv.mpf(0))
            if I.sign(num) != 1:
                raise ConditionsError(f"J_nu numerator not positive at nu={float(nu)}")
            j_min = min(j_min, I.lo(iv.exp(iv.log(num / m) / v)))
        k_max = Fraction(xs[-1], 1) / yn
        ev = _PairEval(x, y)
        for nu in _linspace(2, 40, samples):
            v = I.ival(nu)
            sx = sum((iv.exp(v * l) for l in lxs), iv.mpf(0))
            sy = sum((iv.exp(v * l) for l in lys), iv.mpf(0))
            k_max = max(k_max, I.hi(iv.exp(iv.log(sx / sy) / v)))
        if k_max >= 1:
            raise ConditionsError("A_nu(x) / A_nu(y) reaches 1 on [2, inf]")
        m_min = None
        for nu in _linspace(Fraction(1, 2), 2, samples):
            r = ev.r(nu, precision)
            m_min = I.lo(r) if m_min is None else min(m_min, I.lo(r))
    if m_min <= 0:
        raise ConditionsError("R_nu is not certified positive on [1/2, 2]")
    eps2 = _float_frac(float(j_min) / 2)
    eps3 = _float_frac(float((1 - k_max) / m) / 2)
    if eps2 >= j_min:
        eps2 = j_min / 2
    if eps3 >= (1 - k_max) / m:
        eps3 = (1 - k_max) / (2 * m)
    eps_order = 1 / (1 / pos_y[0] + m)
    M = m_min
    cand = min(eps1, eps2, eps3, eps_order) / 2
    grid = _linspace(Fraction(1, 2), 2, m_grid)
    for _ in range(200):
        z = lift_zeros(y, m, cand)
        ev_z = _PairEval(x, z)
        if all(I.lo(ev_z.r(nu, precision)) > M / 2 for nu in grid):
            break
        cand /= 2
    else:
        raise ArithmeticError("geometric search for eps4 did not terminate")
    eps4 = cand
    eps = eps4 / 2
    z = lift_zeros(y, m, eps)
    if not is_majorized(z, ProbSequence(ys)):
        raise ArithmeticError("z is not majorized by y")
    return CaseCArtifacts(m, eps, eps1, eps2, eps3, eps4, eps_order, z, j_min, k_max, M)


# ---------------------------------------------------------------- decision


@dataclass
class TrumpingReport:
    verdict: str
    route: str
    witness: Optional[str] = None
    catalyst: Optional[object] = None
    certificate: Optional[dict] = None
    conditions: Optional[ConditionReport] = None
    notes: List[str] = field(default_factory=list)

    def to_dict(self):
        cat = self.catalyst
        if isinstance(cat, ProbSequence):
            cat = cat.to_json()
        elif isinstance(cat, Catalyst):
            cat = cat.to_json()
        return {
            "verdict": self.verdict, "route": self.route, "witness": self.witness,
            "catalyst": cat, "certificate": self.certificate,
            "conditions": None if self.conditions is None else self.conditions.to_dict(),
            "notes": self.notes,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _certificate(x, y, cat, kind, route, b=None, knots=None, extra=None):
    cert = {"x": x.to_json(), "y": y.to_json(),
            "catalyst": cat.to_json() if isinstance(cat, (Catalyst, ProbSequence)) else cat,
            "kind": kind, "route": route}
    if b is not None:
        cert["b"] = [str(c) for c in b] if not hasattr(b, "to_json") else b.to_json()
    if knots is not None:
        cert["knots"] = [[m, str(d), str(p)] for m, d, p in knots]
    if extra:
        cert.update(extra)
    return cert


def _power_route(x, y, xs, ys, max_degree, report):
    forms = detect_power_form(xs, ys)
    if forms is None:
        return None
    px, py = forms
    try:
        cat, b = construct_catalyst(px, py, max_degree)
    except PositivizeError as exc:
        report.notes.append(f"case A: {exc}")
        return CONDITIONS_ONLY
    knots = delta_at_knots(px, py, cat, b) if b is not None else None
    res = verify_catalyst(x, y, cat)
    if res.status != VERIFIED:
        raise ArithmeticError(f"constructed catalyst failed exact verification: {res.status}")
    report.catalyst = cat
    report.certificate = _certificate(x, y, cat, "exact", "case_a", b, knots)
    return TRUMPED


def _enclosure_route(x, y, xs, ys, max_degree, precision, report):
    """Case B (after Case C when y has zeros), then Case A on the enclosed base."""
    extra = {}
    if ys.zero_count:
        cc = case_c_reduce(xs, ys, precision=precision)
        extra["case_c"] = cc.to_dict()
        z = cc.z
        xs2, zs, _ = strip_common(xs, z)
        if not xs2:
            report.notes.append("case C: z coincides with x")
            return CONDITIONS_ONLY
        tot = xs2.total
        xs, ys = xs2.normalized(), zs.normalized()
        if tot != 1:
            report.notes.append("case C: common elements of x and z stripped")
    if not (min(xs) > min(ys) and max(xs) < max(ys)):
        report.notes.append("case B: endpoint hypotheses fail")
        return CONDITIONS_ONLY
    art = case_b_reduce(xs, ys, precision=max(256, 2 * precision))
    extra["case_b"] = art.to_dict()
    if art.degree > 4 * max_degree:
        report.notes.append(f"case B: power form degree {art.degree} exceeds 4 * cap {max_degree}")
        report.certificate = {"kind": "none", **extra}
        return CONDITIONS_ONLY
    cat, b = construct_catalyst_enclosure(art.x_exponents, art.y_exponents, art.omega,
                                          max_degree, art.precision)
    res = verify_catalyst(x, y, cat)
    if res.status == REFUTED:
        raise ArithmeticError("enclosure catalyst refuted; the construction is inconsistent")
    report.catalyst = cat
    report.certificate = _certificate(x, y, cat, "enclosure", "case_b", None, None, extra)
    if res.status == VERIFIED:
        return TRUMPED
    report.notes.append("enclosure verification inconclusive")
    return CONDITIONS_ONLY


def decide_trumping(x: ProbSequence, y: ProbSequence, catalyst=None, max_degree: int = DEFAULT_MAX_DEGREE,
                    precision: int = I.DEFAULT_PRECISION, construct: bool = True, **cond_opts) -> TrumpingReport:
    """Decide ``x ≺_T y`` and, when possible, produce a verified catalyst.

    Verdicts: ``not_trumped`` (a certified violation of the conditions),
    ``trumped`` (with a catalyst verified exactly or by enclosures),
    ``trumped_conditions_only`` (conditions hold but no catalyst was
    produced within the caps) and ``inconclusive``.
    """
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    if not x.is_positive:
        raise ValueError("x must have strictly positive elements")
    if x.total != y.total:
        raise SumMismatchError(f"sums differ: {x.total} != {y.total}")
    xs, ys, common = strip_common(x, y)
    if len(xs) == 0:
        return TrumpingReport(TRUMPED, "identical", catalyst=ProbSequence([1]),
                              certificate=_certificate(x, y, ProbSequence([1]), "exact", "identical"),
                              notes=["x and y agree up to rearrangement"])
    report = TrumpingReport(INCONCLUSIVE, "conditions")
    if len(common):
        report.notes.append(f"stripped {len(common)} common element(s)")
    if catalyst is not None:
        res = verify_catalyst(x, y, catalyst, precision)
        if res.status == VERIFIED:
            report.verdict, report.route, report.catalyst = TRUMPED, "supplied", catalyst
            report.certificate = _certificate(x, y, catalyst, "exact" if res.precision is None else "enclosure",
                                              "supplied")
            return report
        report.notes.append(f"supplied catalyst {res.status}")
    xs, ys = xs.normalized(), ys.normalized()
    cond = check_conditions(xs, ys, STRICT, precision=precision, **cond_opts)
    report.conditions = cond
    if cond.violated:
        report.verdict, report.witness = NOT_TRUMPED, cond.first_violation
        if cond.detail:
            report.witness = f"{cond.first_violation}: {cond.detail}"
        return report
    if not cond.satisfied:
        report.notes.append("conditions undecided")
        return report
    if is_majorized(xs, ys):
        one = ProbSequence([1])
        report.verdict, report.route, report.catalyst = TRUMPED, "majorization", one
        report.certificate = _certificate(x, y, one, "exact", "majorization")
        return report
    if not construct:
        report.verdict = CONDITIONS_ONLY
        return report
    try:
        verdict = _power_route(x, y, xs, ys, max_degree, report)
        if verdict is not None:
            report.route = "case_a"
        else:
            report.route = "case_c" if ys.zero_count else "case_b"
            verdict = _enclosure_route(x, y, xs, ys, max_degree, precision, report)
    except (PositivizeError, NotDivisibleError, ConditionsError, ArithmeticError, ValueError) as exc:
        report.notes.append(f"construction stopped: {exc}")
        verdict = CONDITIONS_ONLY
    report.verdict = verdict
    return report
