"""Power means, entropy, the R function and the trumping condition checker.

All real results are ``mpmath.iv`` enclosures. The checker works in tiers:
exact sum and endpoint tests, an exact Sturm certificate when both
sequences are integer powers of one rational base, and otherwise a
refined grid of certified R enclosures whose "satisfied" verdict is
numeric only.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import List, Optional

from mpmath import iv

from . import _interval as I
from .majorization import SumMismatchError
from .polynomials import gamma_from_exponents, isolate_positive_roots, sign_profile_positive
from .sequences import ProbSequence, detect_power_form, to_fraction

STRICT = "strict"
CLOSURE = "closure"

SATISFIED = "satisfied"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"

NU_MIN, NU_MAX, GRID = -40.0, 40.0, 400


def _parse_nu(nu):
    """Return ``('inf', +1/-1)`` for infinite nu, else an exact Fraction."""
    if isinstance(nu, str):
        t = nu.strip().lower().replace("+", "")
        if t in ("inf", "infinity"):
            return ("inf", 1)
        if t in ("-inf", "-infinity"):
            return ("inf", -1)
        return Fraction(t)
    if isinstance(nu, float):
        if math.isinf(nu):
            return ("inf", 1 if nu > 0 else -1)
        return Fraction(nu)
    return to_fraction(nu)


def power_mean(x: ProbSequence, nu, precision: int = I.DEFAULT_PRECISION):
    """Enclosure of ``((sum x_i**nu) / n) ** (1/nu)``.

    ``nu = 0`` gives the geometric mean, ``nu = +-inf`` the max / min element.
    """
    nu = _parse_nu(nu)
    with I.precision(precision):
        if isinstance(nu, tuple):
            return I.ival(max(x.elements) if nu[1] > 0 else min(x.elements))
        if nu <= 0 and not x.is_positive:
            raise ValueError("power mean with nu <= 0 needs positive elements")
        n = len(x)
        logs = [iv.log(I.ival(e)) for e in x.elements if e > 0]
        if nu == 0:
            return iv.exp(sum(logs, iv.mpf(0)) / n)
        v = I.ival(nu)
        s = sum((iv.exp(v * lg) for lg in logs), iv.mpf(0))
        return iv.exp(iv.log(s / n) / v)


def entropy(x: ProbSequence, precision: int = I.DEFAULT_PRECISION):
    """Enclosure of ``-sum x_i ln x_i`` with ``0 ln 0 = 0``."""
    with I.precision(precision):
        acc = iv.mpf(0)
        for e in x.elements:
            if e > 0:
                v = I.ival(e)
                acc -= v * iv.log(v)
        return acc


class _PairEval:
    """Caches per-precision logarithms for repeated R evaluations."""

    def __init__(self, x: ProbSequence, y: ProbSequence):
        self.x, self.y = x, y
        self.n = len(x)
        self.total = x.total
        self.y_zeros = y.zero_count
        self._cache = {}

    def _logs(self, prec):
        if prec not in self._cache:
            with I.precision(prec):
                lx = [iv.log(I.ival(e)) for e in self.x.elements]
                ly = [iv.log(I.ival(e)) for e in self.y.elements if e > 0]
                self._cache[prec] = (lx, ly)
        return self._cache[prec]

    def r(self, nu: Fraction, prec: int):
        """R enclosure, or ``None`` standing for +inf (zeros in y, nu <= 0)."""
        lx, ly = self._logs(prec)
        with I.precision(prec):
            if nu == 1:
                return (entropy(self.x, prec) - entropy(self.y, prec)) / I.ival(self.total)
            if nu <= 0 and self.y_zeros:
                return None
            if nu == 0:
                return sum(lx, iv.mpf(0)) / self.n - sum(ly, iv.mpf(0)) / self.n
            v = I.ival(nu)
            sx = sum((iv.exp(v * g) for g in lx), iv.mpf(0))
            sy = sum((iv.exp(v * g) for g in ly), iv.mpf(0))
            la_x = iv.log(sx / self.n) / v
            la_y = iv.log(sy / self.n) / v
            return (la_y - la_x) / (v - 1)

    def exact_sign(self, nu: int) -> int:
        """Exact sign of R at an integer nu other than 1."""
        if nu <= 0 and self.y_zeros:
            return 1
        if nu == 0:
            px, py = Fraction(1), Fraction(1)
            for e in self.x.elements:
                px *= e
            for e in self.y.elements:
                py *= e
            return (px > py) - (px < py)
        sx = sum((e**nu for e in self.x.elements), Fraction(0))
        sy = sum((e**nu for e in self.y.elements if e > 0), Fraction(0))
        # nu * (nu - 1) > 0 for every integer outside {0, 1}
        return (sy > sx) - (sy < sx)


def r_function(x: ProbSequence, y: ProbSequence, nu, precision: int = I.DEFAULT_PRECISION):
    """Enclosure of ``R_nu = ln(A_nu(y) / A_nu(x)) / (nu - 1)``.

    At ``nu = 1`` this is the entropy difference divided by the common sum
    (the continuous extension; equal to ``sigma(x) - sigma(y)`` when
    normalized).
    """
    _require_pair(x, y)
    nu = _parse_nu(nu)
    if isinstance(nu, tuple):
        raise ValueError("R is defined for finite nu only")
    if nu <= 0 and not y.is_positive:
        raise ValueError("R with nu <= 0 needs positive y")
    return _PairEval(x, y).r(nu, precision)


def _require_pair(x: ProbSequence, y: ProbSequence):
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    if x.total != y.total:
        raise SumMismatchError(f"sums differ: {x.total} != {y.total}")
    if not x.is_positive:
        raise ValueError("x must have strictly positive elements")


@dataclass
class Sample:
    """One R evaluation; ``sign`` is certified (exact or from the enclosure)."""

    nu: float
    r_lo: float
    r_hi: float
    sign: Optional[int] = None
    exact: bool = False
    precision: int = I.DEFAULT_PRECISION

    @property
    def margin(self) -> float:
        return self.r_lo


@dataclass
class ConditionReport:
    verdict: str
    mode: str
    method: str
    certified: bool
    first_violation: Optional[str] = None
    detail: str = ""
    samples: List[Sample] = field(default_factory=list)
    min_margin: float = math.inf
    ambiguous: List[float] = field(default_factory=list)

    @property
    def satisfied(self) -> bool:
        return self.verdict == SATISFIED

    @property
    def violated(self) -> bool:
        return self.verdict == VIOLATED

    def to_dict(self):
        d = asdict(self)
        d["min_margin"] = _json_float(self.min_margin)
        d["samples"] = [
            {"nu": s.nu, "r_lo": _json_float(s.r_lo), "r_hi": _json_float(s.r_hi),
             "sign": s.sign, "exact": s.exact, "precision": s.precision}
            for s in self.samples
        ]
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def to_csv(self) -> str:
        return samples_to_csv(self.samples)


def _json_float(v):
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def samples_to_csv(samples) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["nu", "r_lo", "r_hi"])
    for s in samples:
        w.writerow([repr(s.nu), repr(s.r_lo), repr(s.r_hi)])
    return buf.getvalue()


def chebyshev_grid(nu_min: float, nu_max: float, count: int) -> List[float]:
    mid, half = (nu_min + nu_max) / 2, (nu_max - nu_min) / 2
    return sorted(mid + half * math.cos(math.pi * (2 * k + 1) / (2 * count)) for k in range(count))


def _point_status(sign, mode):
    """'ok', 'bad' or None (undecided) for a certified sign of R."""
    if sign is None:
        return None
    if mode == STRICT:
        return "ok" if sign > 0 else "bad"
    return "ok" if sign >= 0 else "bad"


class _Grid:
    def __init__(self, ev: _PairEval, mode, precision, max_precision):
        self.ev, self.mode = ev, mode
        self.precision, self.max_precision = precision, max_precision
        self.samples = {}

    def eval(self, nu) -> Sample:
        key = Fraction(nu)
        if key in self.samples:
            return self.samples[key]
        prec = self.precision
        exact = None
        if key.denominator == 1 and key != 1:
            exact = self.ev.exact_sign(int(key))
        while True:
            r = self.ev.r(key, prec)
            if r is None:
                s = Sample(float(nu), math.inf, math.inf, 1, exact is not None, prec)
                break
            sign = I.sign(r)
            if sign is not None or exact is not None or prec >= self.max_precision:
                s = Sample(float(nu), I.lo_float(r), I.hi_float(r),
                           exact if exact is not None else sign, exact is not None, prec)
                break
            prec *= 2
        self.samples[key] = s
        return s

    def status(self, s: Sample):
        return _point_status(s.sign, self.mode)

    def mid(self, s: Sample) -> float:
        return (s.r_lo + s.r_hi) / 2


def _golden_min(grid: _Grid, a: float, b: float, iters: int = 14):
    g = (math.sqrt(5) - 1) / 2
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = grid.mid(grid.eval(c)), grid.mid(grid.eval(d))
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = grid.mid(grid.eval(c))
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = grid.mid(grid.eval(d))


def check_conditions(
    x: ProbSequence,
    y: ProbSequence,
    mode: str = STRICT,
    nu_min: float = NU_MIN,
    nu_max: float = NU_MAX,
    grid: int = GRID,
    precision: int = I.DEFAULT_PRECISION,
    max_precision: int = I.MAX_PRECISION,
    certify: bool = True,
    refine: bool = True,
) -> ConditionReport:
    """Check the power-mean and entropy conditions for ``x`` trumped by ``y``.

    In strict mode every finite R must be positive; in closure mode only
    nonnegative. A violation is reported only when certified (exact endpoint
    comparison, exact sign at an integer nu, a Sturm root, or an interval
    enclosure of R lying on the wrong side of zero).
    """
    if mode not in (STRICT, CLOSURE):
        raise ValueError(f"unknown mode {mode!r}")
    _require_pair(x, y)
    same = x.same_multiset(y)
    if same and mode == STRICT:
        raise ValueError("strict mode needs distinct sequences")
    if same:
        return ConditionReport(SATISFIED, mode, "identical", True, detail="x and y are rearrangements")

    xs, ys = sorted(x.elements), sorted(y.elements)
    violation = None
    if xs[0] < ys[0]:
        violation = ("nu->-inf", f"min(x) = {xs[0]} < min(y) = {ys[0]}", "endpoint")
    elif xs[-1] > ys[-1]:
        violation = ("nu->+inf", f"max(x) = {xs[-1]} > max(y) = {ys[-1]}", "endpoint")

    sturm = None
    if certify and violation is None:
        sturm = _sturm_certificate(x, y, mode)
        if sturm is not None and sturm[0] == VIOLATED:
            violation = (sturm[1], sturm[2], "sturm")

    ev = _PairEval(x, y)
    g = _Grid(ev, mode, precision, max_precision)
    nus = set(chebyshev_grid(nu_min, nu_max, grid))
    nus.update(float(k) for k in range(math.ceil(nu_min), math.floor(nu_max) + 1))
    nus.add(1.0)
    for nu in sorted(nus):
        g.eval(nu)
    if refine:
        _refine(g)

    samples = [g.samples[k] for k in sorted(g.samples)]
    if violation is None:
        ent = g.samples[Fraction(1)]
        if g.status(ent) == "bad":
            violation = ("entropy", f"sigma(x) - sigma(y) enclosure [{ent.r_lo}, {ent.r_hi}]", "grid")
    if violation is None:
        for s in samples:
            if g.status(s) == "bad":
                how = "exact integer comparison" if s.exact else "interval enclosure"
                violation = (f"nu={s.nu!r}", f"R enclosure [{s.r_lo}, {s.r_hi}] ({how})", "grid")
                break
    finite = [s.r_lo for s in samples if not math.isinf(s.r_lo)]
    min_margin = min(finite) if finite else math.inf
    ambiguous = [s.nu for s in samples if g.status(s) is None]

    if violation is not None:
        first, detail, method = violation
        return ConditionReport(VIOLATED, mode, method, True, first, detail, samples, min_margin, ambiguous)
    if sturm is not None:
        return ConditionReport(SATISFIED, mode, "sturm", True, None, sturm[2], samples, min_margin, ambiguous)
    if ambiguous:
        return ConditionReport(INCONCLUSIVE, mode, "grid", False, None,
                               f"{len(ambiguous)} grid points undecided at {max_precision} bits",
                               samples, min_margin, ambiguous)
    return ConditionReport(SATISFIED, mode, "grid", False, None,
                           "all grid enclosures on the required side (numeric check)",
                           samples, min_margin, ambiguous)


def _refine(g: _Grid, minima: int = 4):
    keys = sorted(g.samples)
    vals = [g.samples[k] for k in keys]
    # probe between undecided points and their neighbours
    for i, s in enumerate(vals):
        if g.status(s) is None:
            for j in (i - 1, i + 1):
                if 0 <= j < len(vals):
                    a, b = float(keys[i]), float(keys[j])
                    for t in (0.5, 0.25, 0.75):
                        g.eval(a + t * (b - a))
    finite = [(g.mid(s), i) for i, s in enumerate(vals)
              if not math.isinf(s.r_lo) and 0 < i < len(vals) - 1
              and g.mid(vals[i - 1]) >= g.mid(s) <= g.mid(vals[i + 1])]
    finite.sort()
    for _, i in finite[:minima]:
        _golden_min(g, float(keys[i - 1]), float(keys[i + 1]))


def _sturm_certificate(x: ProbSequence, y: ProbSequence, mode: str):
    """Exact decision when x and y are integer powers of one rational base.

    Positivity of the conditions over all real nu is equivalent to
    ``gamma(s) > 0`` on ``s > 0`` (``s = omega**nu``).
    Returns ``(verdict, first_violation, detail)`` or ``None``.
    """
    forms = detect_power_form(x, y)
    if forms is None:
        return None
    px, py = forms
    _, gamma = gamma_from_exponents(py.exponents, px.exponents, px.base)
    roots, signs = sign_profile_positive(gamma)
    omega = px.base
    detail = f"gamma of degree {gamma.degree} over base {omega}"
    if mode == STRICT and roots:
        a, b = isolate_positive_roots(gamma, Fraction(1, 2**30))[0]
        nu0 = math.log(float((a + b) / 2)) / math.log(float(omega))
        return (VIOLATED, f"nu~{nu0:.6g}", detail + f": positive root in ({a}, {b}]")
    if any(s < 0 for s in signs):
        idx = signs.index(-1)
        where = "near s=0" if idx == 0 else f"after root interval {roots[idx - 1]}"
        return (VIOLATED, "sturm", detail + f": gamma negative {where}")
    return (SATISFIED, None, detail + ": no positive root, certified")


def r_curve(x: ProbSequence, y: ProbSequence, nus, precision: int = I.DEFAULT_PRECISION):
    """Certified R samples at the requested nu values (zeros in y allowed)."""
    _require_pair(x, y)
    if x.same_multiset(y):
        return [Sample(float(nu), 0.0, 0.0, 0, True, precision) for nu in nus]
    ev = _PairEval(x, y)
    out = []
    for nu in nus:
        key = Fraction(nu)
        r = ev.r(key, precision)
        if r is None:
            out.append(Sample(float(nu), math.inf, math.inf, 1, False, precision))
        else:
            out.append(Sample(float(nu), I.lo_float(r), I.hi_float(r), I.sign(r), False, precision))
    return out
