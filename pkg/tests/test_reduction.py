import json
from fractions import Fraction as F

import mpmath
import pytest

from conftest import CLASSIC_C, CLASSIC_X, CLASSIC_Y, TOP_X, TOP_Y, perturb, random_sequence, t_transform
from trumping import _interval as I
from trumping.catalyst import ConditionsError, verify_catalyst
from trumping.majorization import SumMismatchError, is_majorized
from trumping.means import VIOLATED, check_conditions
from trumping.reduction import (CONDITIONS_ONLY, NOT_TRUMPED, TRUMPED, case_b_reduce, case_c_reduce,
                                decide_trumping, lift_zeros)
from trumping.sequences import ProbSequence, concat, sort_ascending
from trumping.stability import theorem2_epsilon

CAT_X = ProbSequence(F(2**e, 338) for e in (1, 2, 2, 3, 6, 7, 7))
CAT_Y = ProbSequence(F(2**e, 338) for e in (0, 0, 4, 4, 4, 5, 8))
QUAD_X = ProbSequence.parse("0.2,0.2,0.3,0.3")
QUAD_Y = ProbSequence.parse("0.1,0.25,0.25,0.4")


def _mp(v):
    """Midpoint of an enclosure (or an exact value) as an mp number."""
    if isinstance(v, F):
        return mpmath.mpf(v.numerator) / v.denominator
    return (_mp(I.lo(v)) + _mp(I.hi(v))) / 2


def recheck_case_b(art):
    """Independent recomputation of every sandwich bound from the artifacts."""
    with mpmath.workdps(60):
        xs, ys, n = art.x.elements, art.y.elements, len(art.x)
        eps, eps2 = _mp(art.eps), _mp(art.eps) ** 2
        ly = [mpmath.log(_mp(v)) for v in ys]
        lx = [mpmath.log(_mp(v)) for v in xs]
        H = sum(_mp(v) * l for v, l in zip(ys, ly)) - sum(_mp(v) * l for v, l in zip(xs, lx))
        L = -ly[0]
        phi = [_mp(a) - l for a, l in zip(art.alpha, ly)]
        theta = [_mp(b) - l for b, l in zip(art.beta, lx)]
        for p, t in zip(phi[:-1], theta[:-1]):
            assert eps / (2 * n) <= p <= eps / n
            assert -eps / n <= t <= -eps / (2 * n)
        assert all(abs(p) <= eps for p in phi) and all(abs(t) <= eps for t in theta)
        assert abs(sum(_mp(v) * p for v, p in zip(ys, phi))) <= eps2
        assert abs(sum(_mp(v) * t for v, t in zip(xs, theta))) <= eps2
        lam = _mp(art.lambda0)
        zy = sum(mpmath.exp(lam * _mp(a)) for a in art.alpha)
        zx = sum(mpmath.exp(lam * _mp(b)) for b in art.beta)
        assert abs(zy - zx) < mpmath.mpf(10) ** -30
        assert abs(zy - _mp(art.Z0)) < mpmath.mpf(10) ** -30
        assert abs(lam - 1) <= 6 * eps2 / H
        assert abs(mpmath.log(zy)) <= (2 + 12 * L / H) * eps2
        # power form: every element is omega**k / Z0 with integer k
        N = art.denominator
        assert all((a * N).denominator == 1 for a in art.alpha + art.beta)
        omega = mpmath.exp(lam / N)
        assert abs(omega - _mp(art.omega)) < mpmath.mpf(10) ** -30
        xbar = [mpmath.exp(lam * _mp(b)) / zy for b in art.beta]
        ybar = [mpmath.exp(lam * _mp(a)) / zy for a in art.alpha]
        for i in range(n - 1):
            assert _mp(xs[i]) >= xbar[i] and ybar[i] >= _mp(ys[i])
        assert max(abs(mpmath.log(_mp(v) / b)) for v, b in zip(xs, xbar)) < _mp(art.eps0)
        assert max(abs(mpmath.log(_mp(v) / b)) for v, b in zip(ys, ybar)) < _mp(art.eps0)
        return H, L


@pytest.mark.parametrize("x, y", [(CAT_X, CAT_Y), (QUAD_X, QUAD_Y)], ids=["power_form", "quad"])
def test_case_b_bounds_recomputed(x, y):
    art = case_b_reduce(x, y)
    assert all(art.checks.values())
    recheck_case_b(art)
    eps = art.eps
    n = len(x)
    assert eps < min(art.eps0 / 2, F(1, 8 * n), F(1, n * n))
    json.dumps(art.to_dict())


def test_case_b_on_perturbed_pair(rng):
    rad = theorem2_epsilon(CAT_X, CAT_Y)
    xb = perturb(rng, CAT_X, rad.eps0)
    yb = perturb(rng, CAT_Y, rad.eps0)
    assert not is_majorized(xb, yb)
    art = case_b_reduce(sort_ascending(xb), sort_ascending(yb))
    recheck_case_b(art)


def test_case_b_rejects_equal_pair():
    with pytest.raises(ValueError):
        case_b_reduce(QUAD_X, QUAD_X)


def test_case_b_rejects_zeros():
    with pytest.raises(ValueError):
        case_b_reduce(sort_ascending(CLASSIC_X), sort_ascending(CLASSIC_Y))


def test_lift_zeros():
    y = sort_ascending(CLASSIC_Y)
    assert lift_zeros(y, 1, 0) == y
    z = lift_zeros(y, 1, F(1, 100))
    assert z.total == 1 and min(z) == F(1, 100)


def test_case_c_classic():
    cc = case_c_reduce(sort_ascending(CLASSIC_X), sort_ascending(CLASSIC_Y))
    assert cc.m == 1
    assert cc.eps1 == F(8, 10000)
    assert 0 < cc.eps < min(cc.eps1, cc.eps2, cc.eps3, cc.eps4, cc.eps_order)
    assert is_majorized(cc.z, CLASSIC_Y)
    assert cc.z.is_positive
    rep = check_conditions(CLASSIC_X, cc.z, grid=120)
    assert rep.verdict != VIOLATED
    json.dumps(cc.to_dict())


def test_case_c_chain(rng):
    y = sort_ascending(CLASSIC_Y)
    top = 1 / (1 / F(1, 4) + 1)
    for _ in range(20):
        a, b = sorted(F(rng.randint(1, 10**6), 10**6) * top for _ in range(2))
        if a == b:
            continue
        assert is_majorized(lift_zeros(y, 1, b), lift_zeros(y, 1, a))


def test_case_c_requires_zeros():
    with pytest.raises(ValueError):
        case_c_reduce(QUAD_X, QUAD_Y)


def test_case_c_rejects_violating_pair():
    # max(x) > max(y) breaks the nu -> +inf condition
    with pytest.raises(ConditionsError):
        case_c_reduce(ProbSequence.parse("0.05,0.05,0.45,0.45"), ProbSequence.parse("0,0.3,0.3,0.4"))


def test_decide_top_endpoint_not_trumped():
    rep = decide_trumping(TOP_X, TOP_Y)
    assert rep.verdict == NOT_TRUMPED
    assert "4/9" in rep.witness and "2/5" in rep.witness


def test_decide_classic_with_catalyst():
    rep = decide_trumping(CLASSIC_X, CLASSIC_Y, catalyst=CLASSIC_C)
    assert rep.verdict == TRUMPED and rep.route == "supplied"
    assert rep.certificate["kind"] == "exact"


def test_decide_classic_without_catalyst():
    rep = decide_trumping(CLASSIC_X, CLASSIC_Y)
    assert rep.verdict in (TRUMPED, CONDITIONS_ONLY)
    assert rep.route == "case_c"
    assert "case_c" in (rep.certificate or {}) or rep.notes


def test_decide_majorized_pair():
    y = ProbSequence.parse("1/2,1/3,1/6")
    x = ProbSequence.parse("1/3,1/3,1/3")
    rep = decide_trumping(x, y)
    assert rep.verdict == TRUMPED and rep.catalyst == ProbSequence([1])


def test_decide_identical_pair():
    rep = decide_trumping(QUAD_X, sort_ascending(QUAD_X))
    assert rep.verdict == TRUMPED and rep.route == "identical"


def test_decide_power_form_builds_exact_certificate():
    rep = decide_trumping(CAT_X, CAT_Y)
    assert rep.verdict == TRUMPED and rep.route == "case_a"
    cert = json.loads(rep.to_json())["certificate"]
    assert cert["kind"] == "exact"
    assert all(d == p for _, d, p in cert["knots"])
    assert verify_catalyst(CAT_X, CAT_Y, rep.catalyst).status == "verified"


def test_decide_errors():
    with pytest.raises(SumMismatchError):
        decide_trumping(ProbSequence([1, 2]), ProbSequence([1, 1]))
    with pytest.raises(ValueError):
        decide_trumping(ProbSequence([0, 1]), ProbSequence([F(1, 2), F(1, 2)]))
    with pytest.raises(ValueError):
        decide_trumping(ProbSequence([1]), ProbSequence([F(1, 2), F(1, 2)]))


def test_decide_rejecting_supplied_catalyst_falls_through():
    rep = decide_trumping(TOP_X, TOP_Y, catalyst=ProbSequence([1]))
    assert rep.verdict == NOT_TRUMPED
    assert any("refuted" in note for note in rep.notes)


def _positive_pair(rng):
    n = rng.randint(2, 5)
    return random_sequence(rng, n, denom=20), random_sequence(rng, n, denom=20)


def test_antisymmetry(rng):
    pairs = [(CAT_X, CAT_Y), (TOP_X, TOP_Y)] + [_positive_pair(rng) for _ in range(20)]
    for x, y in pairs:
        if sorted(x) == sorted(y):
            continue
        a = decide_trumping(x, y, grid=120)
        b = decide_trumping(y, x, grid=120)
        assert not (a.verdict == TRUMPED and b.verdict == TRUMPED)


def test_stripping_invariance(rng):
    cases = [(CAT_X, CAT_Y), (TOP_X, TOP_Y)]
    for _ in range(4):
        y = random_sequence(rng, rng.randint(2, 5))
        cases.append((t_transform(rng, y), y))
    for x, y in cases:
        base = decide_trumping(x, y, grid=120).verdict
        for _ in range(2):
            z = random_sequence(rng, rng.randint(1, 3))
            padded = decide_trumping(concat(x, z), concat(y, z), grid=120).verdict
            assert padded == base
