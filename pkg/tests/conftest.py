import random
from fractions import Fraction

import pytest

from trumping import ProbSequence

CLASSIC_X = ProbSequence.parse("0.4,0.4,0.1,0.1")
CLASSIC_Y = ProbSequence.parse("0.5,0.25,0.25,0")
CLASSIC_C = ProbSequence.parse("0.6,0.4")
TOP_X = ProbSequence.parse("2/9,3/9,4/9")
TOP_Y = ProbSequence.parse("1/5,2/5,2/5")


def random_sequence(rng: random.Random, n: int, zeros: int = 0, denom: int = 60) -> ProbSequence:
    """Normalized rational sequence with ``zeros`` exact zeros."""
    w = [rng.randint(1, denom) for _ in range(n - zeros)] + [0] * zeros
    rng.shuffle(w)
    s = sum(w)
    return ProbSequence(Fraction(v, s) for v in w)


def t_transform(rng: random.Random, y: ProbSequence, steps: int = 3) -> ProbSequence:
    """Apply random T-transforms (two-element averaging); the result is
    majorized by the input."""
    v = list(y.elements)
    n = len(v)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        t = Fraction(rng.randint(1, 9), 10)
        a, b = v[i], v[j]
        v[i], v[j] = t * a + (1 - t) * b, (1 - t) * a + t * b
    return ProbSequence(v)


def perturb(rng: random.Random, x: ProbSequence, eps: Fraction, extreme: bool = False) -> ProbSequence:
    """Equal-sum rational perturbation with every ratio inside ``exp(+-eps)``.

    Each element is scaled by ``1 + t`` with ``|t| <= eps / 3`` and the result
    is renormalized; for eps <= 1 both steps stay within ``eps / 2`` in log.
    With ``extreme`` the largest elements move up and the rest move down.
    """
    eps = Fraction(eps)
    r = eps / 3
    if extreme:
        top = max(x.elements)
        t = [r if e == top else -r for e in x.elements]
    else:
        t = [r * Fraction(rng.randint(-1000, 1000), 1000) for _ in x.elements]
    v = [e * (1 + ti) for e, ti in zip(x.elements, t)]
    s = sum(v)
    return ProbSequence(e * x.total / s for e in v)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS, key=lambda k: (len(k), k)):
        terminalreporter.write_line(RESULTS[key])
