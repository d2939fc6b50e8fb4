from fractions import Fraction as F

import pytest
from mpmath import iv

from conftest import perturb, random_sequence, t_transform
from trumping import _interval as I
from trumping.means import VIOLATED, check_conditions, entropy, power_mean
from trumping.sequences import ProbSequence, distance
from trumping.stability import k_nu, theorem2_epsilon, theorem3_epsilon, theorem3_lhs

CAT_X = ProbSequence(F(2**e, 338) for e in (1, 2, 2, 3, 6, 7, 7))
CAT_Y = ProbSequence(F(2**e, 338) for e in (0, 0, 4, 4, 4, 5, 8))
GRID = [F(1, 2) + F(3, 2) * i / 49 for i in range(50)]


def test_uniform_sequence_gives_half_delta():
    x = ProbSequence.parse("1/4,1/4,1/4,1/4")
    assert theorem3_epsilon(x, F(1, 5)) == F(1, 10)


def test_epsilon_is_monotone_in_delta():
    x = ProbSequence.parse("0.1,0.2,0.3,0.4")
    eps = [theorem3_epsilon(x, F(1, 2**k)) for k in range(1, 12)]
    assert all(a > b > 0 for a, b in zip(eps, eps[1:]))


def test_epsilon_satisfies_bound_on_recheck(rng):
    for _ in range(30):
        x = random_sequence(rng, rng.randint(2, 8))
        delta = F(rng.randint(1, 100), 100)
        eps = theorem3_epsilon(x, delta)
        assert eps > 0
        assert I.hi(theorem3_lhs(x, eps)) <= delta / 2


def test_stability_bound_rejects_zero_elements():
    with pytest.raises(ValueError):
        theorem3_epsilon(ProbSequence.parse("0,1"), F(1, 2))
    with pytest.raises(ValueError):
        theorem3_epsilon(ProbSequence.parse("1/2,1/2"), 0)


def test_k_nu_identities():
    x = ProbSequence.parse("0.1,0.2,0.3,0.4")
    xb = ProbSequence.parse("0.11,0.19,0.3,0.4")
    for nu in (F(1, 2), 1, F(3, 2), 2):
        assert I.lo(k_nu(x, x, nu)) <= 0 <= I.hi(k_nu(x, x, nu))
    assert I.lo(k_nu(x, xb, 1)) <= 0 <= I.hi(k_nu(x, xb, 1))
    with pytest.raises(ValueError):
        k_nu(x, xb, 3)
    with pytest.raises(ValueError):
        k_nu(ProbSequence.parse("0,1"), ProbSequence.parse("1/2,1/2"), 1)


def test_k_nu_bounded_within_epsilon(rng):
    for _ in range(20):
        x = random_sequence(rng, rng.randint(2, 6))
        delta = F(rng.randint(1, 100), 100)
        eps = theorem3_epsilon(x, delta)
        xb = perturb(rng, x, eps)
        for nu in GRID[::7]:
            assert I.hi(abs(k_nu(x, xb, nu))) <= delta / 2 * abs(nu - 1) + F(1, 10**30)


def _ratio_within(x, xb, delta, precision=96):
    for nu in GRID:
        with I.precision(precision):
            g = abs(iv.log(power_mean(xb, nu, precision) / power_mean(x, nu, precision)))
            bound = I.ival(delta) * abs(I.ival(nu) - 1)
            if not I.hi(g) <= I.lo(bound):
                return False
    return True


def test_stability_bound_power_mean_ratio(rng):
    for _ in range(30):
        x = random_sequence(rng, rng.randint(2, 7))
        delta = F(rng.randint(1, 100), 100)
        eps = theorem3_epsilon(x, delta)
        for k in range(4):
            xb = perturb(rng, x, eps, extreme=(k == 0))
            assert I.hi(distance(x, xb)) <= eps
            assert _ratio_within(x, xb, delta)


def test_radius_hypotheses():
    x = ProbSequence.parse("1/8,3/8,1/4,1/4")
    y = ProbSequence.parse("1/8,1/8,1/4,1/2")
    with pytest.raises(ValueError, match="min"):
        theorem2_epsilon(x, y)
    with pytest.raises(ValueError):
        theorem2_epsilon(ProbSequence.parse("1/2,1/2"), ProbSequence.parse("0,1"))


def test_radius_on_catalytic_pair():
    rad = theorem2_epsilon(CAT_X, CAT_Y, samples=400)
    assert rad.eps0 > 0 and rad.B > 0 and rad.M > 0
    assert rad.eps0 <= rad.B / 3


def _strict_majorized_pair(rng):
    while True:
        n = rng.randint(3, 6)
        y = random_sequence(rng, n)
        x = t_transform(rng, y, steps=6)
        if min(x) > min(y) and max(x) < max(y):
            return x, y


def test_radius_perturbations_keep_conditions(rng):
    pairs = [(CAT_X, CAT_Y)] + [_strict_majorized_pair(rng) for _ in range(49)]
    for x, y in pairs:
        rad = theorem2_epsilon(x, y, samples=200)
        for k in range(3):
            xb = perturb(rng, x, rad.eps0, extreme=(k == 0))
            yb = perturb(rng, y, rad.eps0)
            rep = check_conditions(xb, yb, grid=80, refine=False)
            assert rep.verdict != VIOLATED
            gap = entropy(xb) - entropy(yb)
            assert I.lo(gap) >= rad.M / 3
