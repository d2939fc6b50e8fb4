"""Exact univariate polynomials over the rationals.

Includes Sturm-sequence root counting on the positive half-line and the
positivization construction: a polynomial ``gamma`` with ``gamma(0) > 0`` and
no positive root is written as ``b / a`` with ``a``, ``b`` having nonnegative
coefficients and ``a`` integral.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

import mpmath

from .sequences import to_fraction

DEFAULT_MAX_DEGREE = 512


class PositivizeError(ValueError):
    """Raised when no nonnegative representation is found under the degree cap."""


class NotDivisibleError(ValueError):
    pass


def _trim(coeffs: List) -> List:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _exact(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    f = to_fraction(c)
    return f.numerator if f.denominator == 1 else f


class Polynomial:
    """Dense polynomial, ``coeffs[k]`` multiplies ``s**k``.

    Coefficients are ints or Fractions; trailing zeros are trimmed so the zero
    polynomial has no coefficients at all.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = tuple(_trim([_exact(c) for c in coeffs]))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Polynomial":
        return cls([0] * k + [c])

    @classmethod
    def from_json(cls, data) -> "Polynomial":
        return cls(Fraction(str(c)) for c in data)

    def to_json(self):
        return [str(c) for c in self.coeffs]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial(other) if isinstance(other, (list, tuple)) else Polynomial([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "Polynomial(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if k == 0 else f"{c}*s^{k}" if k > 1 else f"{c}*s")
        return "Polynomial(" + " + ".join(terms) + ")"

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self), len(other))
        return Polynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        return Polynomial(convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, s):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    def divmod(self, other: "Polynomial"):
        other = _coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        lead = Fraction(other.coeffs[-1])
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(), Polynomial(rem)
        quot = [Fraction(0)] * (dq + 1)
        for k in range(dq, -1, -1):
            q = rem[k + other.degree] / lead
            quot[k] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= q * c
        return Polynomial(quot), Polynomial(rem[: other.degree])

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def is_strictly_positive(self) -> bool:
        return bool(self.coeffs) and all(c > 0 for c in self.coeffs)

    def is_integer(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def common_denominator(self) -> int:
        d = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                d = d * c.denominator // math.gcd(d, c.denominator)
        return d

    def primitive(self) -> Tuple[Fraction, "Polynomial"]:
        """Return ``(content, p)`` with ``self = content * p``, p integral with
        coprime coefficients and positive leading coefficient."""
        if not self.coeffs:
            return Fraction(0), Polynomial()
        d = self.common_denominator()
        ints = [int(c * d) for c in self.coeffs]
        g = 0
        for c in ints:
            g = math.gcd(g, c)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, d), Polynomial(c // g for c in ints)


def _coerce(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    return Polynomial([p])


def convolve(a: Sequence, b: Sequence) -> list:
    """Coefficient convolution; int inputs stay int."""
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


ONE_PLUS_S = Polynomial([1, 1])


def gamma_from_exponents(alpha: Sequence[int], beta: Sequence[int], omega) -> Tuple[Polynomial, Polynomial]:
    """Build ``Gamma(s) = sum(s**alpha_i - s**beta_i)`` and the quotient
    ``gamma = Gamma / ((1 - s)(1 - s/omega))``.

    ``alpha`` are the exponents of y and ``beta`` those of x. Division must be
    exact; a nonzero remainder means the sequences are not compatible with a
    common base (unequal sums, or a double root at 1).
    """
    omega = to_fraction(omega)
    if len(alpha) != len(beta):
        raise ValueError("exponent lists must have equal length")
    if min(min(alpha), min(beta)) < 0:
        raise ValueError("exponents must be nonnegative")
    top = max(max(alpha), max(beta))
    big = [0] * (top + 1)
    for a in alpha:
        big[a] += 1
    for b in beta:
        big[b] -= 1
    Gamma = Polynomial(big)
    if not Gamma:
        raise NotDivisibleError("Gamma vanishes identically (sequences coincide)")
    q1, r1 = Gamma.divmod(Polynomial([1, -1]))
    if r1:
        raise NotDivisibleError("Gamma(1) != 0")
    gamma, r2 = q1.divmod(Polynomial([1, -1 / omega]))
    if r2:
        raise NotDivisibleError("Gamma(omega) != 0: unequal sums")
    return Gamma, gamma


# ---------------------------------------------------------------- Sturm chains


def _primitive_ints(coeffs: Sequence) -> List[int]:
    """Scale by a positive rational to coprime integers (sign preserved)."""
    d = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            d = d * c.denominator // math.gcd(d, c.denominator)
    ints = [int(c * d) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints] if g > 1 else ints


def _prem(a: List[int], b: List[int]) -> List[int]:
    """Remainder of a by b, scaled by a positive constant (lead(b)**k, k even
    or lead(b) > 0) so signs match the true remainder."""
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    scale_sign = 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [c * lb for c in a]
        scale_sign *= 1 if lb > 0 else -1
        for j, c in enumerate(b):
            a[shift + j] -= la * c
        _trim(a)
    if scale_sign < 0:
        a = [-c for c in a]
    return a


def sturm_chain(p: Polynomial) -> List[List[int]]:
    if not p:
        raise ValueError("Sturm chain of the zero polynomial")
    chain = [_primitive_ints(p.coeffs)]
    if p.degree == 0:
        return chain
    chain.append(_primitive_ints(p.derivative().coeffs))
    while len(chain[-1]) > 1:
        r = _prem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(_primitive_ints([-c for c in r]))
    return chain


def _variations(signs: Iterable[int]) -> int:
    prev = 0
    count = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _eval_ints(coeffs: Sequence[int], s: Fraction):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * s + c
    return acc


def _var_at(chain, s: Fraction) -> int:
    return _variations(_sign(_eval_ints(c, s)) for c in chain)


def _var_at_inf(chain) -> int:
    return _variations(_sign(c[-1]) for c in chain)


def _strip_zero_roots(p: Polynomial) -> Polynomial:
    k = 0
    while k < len(p.coeffs) and p.coeffs[k] == 0:
        k += 1
    return Polynomial(p.coeffs[k:])


def count_positive_roots(p: Polynomial) -> int:
    """Number of distinct roots in ``(0, inf)``, exact."""
    p = _strip_zero_roots(p)
    if not p:
        raise ValueError("zero polynomial has infinitely many roots")
    if p.degree == 0:
        return 0
    chain = sturm_chain(p)
    return _var_at(chain, Fraction(0)) - _var_at_inf(chain)


def count_roots_in(p: Polynomial, a, b) -> int:
    """Distinct roots in ``(a, b]``; requires ``p(a) != 0``."""
    chain = sturm_chain(p)
    return _var_at(chain, Fraction(a)) - _var_at(chain, Fraction(b))


def positive_root_bound(p: Polynomial) -> Fraction:
    """Cauchy bound: every root has modulus below the returned value."""
    lead = abs(Fraction(p.coeffs[-1]))
    return 1 + max(abs(Fraction(c)) / lead for c in p.coeffs[:-1])


def isolate_positive_roots(p: Polynomial, width=None) -> List[Tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(a, b]``, each holding exactly one positive root.

    With ``width`` given, intervals are bisected until narrower than it.
    """
    p = _strip_zero_roots(p)
    if p.degree < 1:
        return []
    chain = sturm_chain(p)
    hi = positive_root_bound(p)
    out = []
    stack = [(Fraction(0), hi, _var_at(chain, Fraction(0)), _var_at(chain, hi))]
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1 and (width is None or b - a <= width):
            out.append((a, b))
            continue
        m = (a + b) / 2
        if p(m) == 0:
            # nudge so endpoints are never roots
            m = (a + 2 * b) / 3 if p((a + 2 * b) / 3) else (2 * a + b) / 3
        vm = _var_at(chain, m)
        stack.append((m, b, vm, vb))
        stack.append((a, m, va, vm))
    out.sort()
    return out


def sign_profile_positive(p: Polynomial):
    """Signs of ``p`` on the open gaps between its positive roots.

    Returns ``(roots, signs)`` where ``signs[j]`` is the sign on the j-th gap,
    ``len(signs) == len(roots) + 1``.
    """
    roots = isolate_positive_roots(p)
    points = []
    prev = Fraction(0)
    for a, b in roots:
        points.append((prev + a) / 2 if prev < a else a)
        prev = b
    points.append(prev + 1)
    signs = []
    for t in points:
        v = p(t)
        if v == 0:
            v = p(t + Fraction(1, 10**9))
        signs.append(_sign(v))
    return roots, signs


# ------------------------------------------------------------- positivization


def lemma_quadratic(xi, lam) -> Tuple[Polynomial, Polynomial, int]:
    """Nonnegative multiplier for ``1 - 2 xi s + lam s**2`` with complex roots.

    ``N`` is the least integer with ``C(2N, N) lam**N >= 4**N xi**(2N)``, the
    integer-power form of ``(1/4) ((2N)!/N!**2)**(1/N) >= xi**2 / lam``. Then
    ``a = sum_k (1 + lam s^2)^k (2 xi s)^(2N-1-k)`` and
    ``b = (1 + lam s^2)^(2N) - (2 xi s)^(2N)`` satisfy ``a * q = b``.
    """
    xi, lam = to_fraction(xi), to_fraction(lam)
    if xi <= 0:
        raise ValueError("xi must be positive")
    if not lam > xi * xi:
        raise ValueError("need lam > xi**2 for complex roots")
    ratio = xi * xi / lam
    n = 1
    while math.comb(2 * n, n) < 4**n * ratio**n:
        n += 1
    # the sum telescopes: a = (u**2N - v**2N) / (u - v), with u = 1 + lam s^2, v = 2 xi s
    u_pow = [0] * (4 * n + 1)
    for j in range(2 * n + 1):
        u_pow[2 * j] = math.comb(2 * n, j) * lam**j
    v_pow = Polynomial.monomial(2 * n, (2 * xi) ** (2 * n))
    b = Polynomial(u_pow) - v_pow
    a, rem = b.divmod(Polynomial([1, -2 * xi, lam]))
    if rem:
        raise ArithmeticError("lemma_quadratic division left a remainder")
    if not b.is_nonnegative():
        raise ArithmeticError("lemma_quadratic produced a negative coefficient")
    return a, b, n


def ensure_strict_positive(a: Polynomial, b: Polynomial, gamma: Polynomial = None):
    """Multiply ``a`` and ``b`` by ``1 + s + ... + s**(m-1)``, ``m = deg b``,
    making every coefficient of ``b`` positive."""
    if not (b.is_nonnegative() and b[0] > 0 and b.coeffs[-1] > 0):
        raise ValueError("b needs nonnegative coefficients with b(0) > 0")
    m = b.degree
    e = Polynomial([1] * max(m, 1))
    a2, b2 = a * e, b * e
    if gamma is not None and a2 * gamma != b2:
        raise ArithmeticError("a * gamma != b")
    if not b2.is_strictly_positive():
        raise ArithmeticError("b * e is not strictly positive")
    return a2, b2


def rationalize_a(a, gamma: Polynomial) -> Polynomial:
    """Integer multiplier close to ``a`` keeping ``a * gamma`` nonnegative.

    ``a`` may hold Fractions, floats or mpf values. With ``beta`` the least
    coefficient of ``a * gamma`` (which must be positive), every ``a_k`` is
    moved by at most ``beta / sum|gamma_k|``, which keeps every product
    coefficient at least ``b_k - beta >= 0``. The result is scaled to integers.
    """
    coeffs = [to_fraction(c) if not isinstance(c, mpmath.mpf) else _mpf_to_fraction(c) for c in a]
    exact_a = Polynomial(coeffs)
    b = exact_a * gamma
    if not b:
        raise ValueError("a * gamma vanishes")
    beta = min(Fraction(c) for c in b.coeffs)
    if len(b) < exact_a.degree + gamma.degree + 1 or beta <= 0:
        raise ValueError("a * gamma must have strictly positive coefficients")
    eps = beta / sum(abs(Fraction(c)) for c in gamma.coeffs)
    grid = 1 << max(0, math.ceil(math.log2(1 / eps)) + 1)
    if exact_a.common_denominator() <= grid:
        abar = exact_a
    else:
        abar = Polynomial(Fraction(round(c * grid), grid) for c in coeffs)
        if any(abs(Fraction(x) - c) > eps for x, c in zip(abar.coeffs, coeffs)):
            raise ArithmeticError("rounding exceeded the perturbation bound")
    bbar = abar * gamma
    if not bbar.is_nonnegative():
        raise ArithmeticError("perturbed product has a negative coefficient")
    d = abar.common_denominator()
    return Polynomial(int(c * d) for c in abar.coeffs)


def _mpf_to_fraction(v) -> Fraction:
    man, exp = mpmath.mpf(v).man_exp
    return Fraction(int(man)) * Fraction(2) ** int(exp) if man else Fraction(0)


def _polya(gamma: Polynomial, max_degree: int):
    content, g = gamma.primitive()
    cur = [int(c) for c in g.coeffs]
    for m in range(max_degree + 1):
        if all(c >= 0 for c in cur):
            a = ONE_PLUS_S**m
            return a, Polynomial(Fraction(c) * content for c in cur)
        cur = [x + y for x, y in zip(cur + [0], [0] + cur)]
    return None


def _lemma_route(gamma: Polynomial, max_degree: int, dps: int):
    """Factor numerically, apply the quadratic lemma per complex pair, then
    restore exactness through :func:`rationalize_a`."""
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else mpmath.mpf(c)
                  for c in reversed(gamma.coeffs)]
        roots = mpmath.polyroots(coeffs, maxsteps=400 + 20 * gamma.degree, extraprec=4 * dps)
        tol = mpmath.mpf(10) ** (-(dps // 2))
        a_parts = [Polynomial([1])]
        b_parts = [Polynomial([gamma[0]])]
        used = [False] * len(roots)
        limit = 10 ** (dps // 2)
        for i, r in enumerate(roots):
            if used[i]:
                continue
            used[i] = True
            if abs(mpmath.im(r)) <= tol * max(1, abs(r)):
                zeta = -1 / mpmath.re(r)
                if zeta <= 0:
                    raise PositivizeError("numeric factoring found a positive real root")
                b_parts.append(Polynomial([1, _mpf_to_fraction(zeta).limit_denominator(limit)]))
                continue
            # pair with the closest unused conjugate
            j = min((k for k in range(len(roots)) if not used[k]),
                    key=lambda k: abs(roots[k] - mpmath.conj(r)))
            used[j] = True
            inv = 1 / r
            xi = _mpf_to_fraction(mpmath.re(inv)).limit_denominator(limit)
            lam = _mpf_to_fraction(abs(inv) ** 2).limit_denominator(limit)
            if lam <= xi * xi:
                lam = xi * xi * (1 + Fraction(1, limit))
            quad = Polynomial([1, -2 * xi, lam])
            if xi <= 0:
                b_parts.append(quad)
            else:
                qa, qb, _ = lemma_quadratic(xi, lam)
                a_parts.append(qa)
                b_parts.append(qb)
    a_approx = Polynomial([1])
    for p in a_parts:
        a_approx = a_approx * p
    b_approx = Polynomial([1])
    for p in b_parts:
        b_approx = b_approx * p
    a_approx, b_approx = ensure_strict_positive(a_approx, b_approx)
    if a_approx.degree > max_degree:
        raise PositivizeError(f"lemma route needs degree {a_approx.degree} > cap {max_degree}")
    abar = rationalize_a(a_approx, gamma)
    return abar, abar * gamma


def positivize(gamma: Polynomial, max_degree: int = DEFAULT_MAX_DEGREE, strategy: str = "auto"):
    """Return ``(a, b)`` with ``a * gamma == b``, both coefficientwise
    nonnegative, ``a`` integral with ``a(0) > 0``.

    ``strategy`` is ``"polya"`` (multiply by ``(1+s)**m``), ``"lemma"`` (the
    factor-by-factor construction) or ``"auto"`` (polya, then lemma).
    """
    gamma = Polynomial(gamma) if not isinstance(gamma, Polynomial) else gamma
    if not gamma or gamma[0] <= 0:
        raise ValueError("positivize needs gamma(0) > 0")
    if count_positive_roots(gamma) != 0:
        raise ValueError("gamma has a positive root")
    if strategy in ("auto", "polya"):
        found = _polya(gamma, max_degree)
        if found is not None:
            return found
        if strategy == "polya":
            raise PositivizeError(f"(1+s)^m multiplier exceeds degree cap {max_degree}")
    if strategy not in ("auto", "lemma"):
        raise ValueError(f"unknown strategy {strategy!r}")
    last = None
    for dps in (30, 60, 120, 240):
        try:
            a, b = _lemma_route(gamma, max_degree, dps)
        except ValueError as exc:
            # rationalization needs tighter roots
            last = exc
            if isinstance(exc, PositivizeError) and "cap" in str(exc):
                raise
            continue
        if a * gamma != b or not b.is_nonnegative() or not a.is_nonnegative():
            raise ArithmeticError("positivize produced an invalid pair")
        return a, b
    raise PositivizeError(f"lemma route failed: {last}")
