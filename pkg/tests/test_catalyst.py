import json
from fractions import Fraction as F

import pytest
from mpmath import iv

from conftest import CLASSIC_C, CLASSIC_X, CLASSIC_Y, random_sequence, t_transform
from trumping import _interval as I
from trumping.catalyst import (INCONCLUSIVE, REFUTED, VERIFIED, Catalyst, ConditionsError,
                               construct_catalyst, construct_catalyst_enclosure, delta_at_knots,
                               verify_catalyst)
from trumping.majorization import SumMismatchError, is_majorized
from trumping.means import VIOLATED, check_conditions
from trumping.polynomials import Polynomial
from trumping.sequences import PowerForm, ProbSequence, tensor

TWO = F(2)
# omega = 2 pair that is catalytic but not majorized
CAT_X = PowerForm(F(1), TWO, (1, 2, 2, 3, 6, 7, 7))
CAT_Y = PowerForm(F(1), TWO, (0, 0, 4, 4, 4, 5, 8))
EXPECTED_B = Polynomial([2, 16, 56, 110, 126, 72, 2, 2, 72, 126, 110, 56, 16, 2])


def test_classic_catalysis():
    assert not is_majorized(CLASSIC_X, CLASSIC_Y)
    res = verify_catalyst(CLASSIC_X, CLASSIC_Y, CLASSIC_C)
    assert res.status == VERIFIED and res


def test_trivial_catalyst():
    y = ProbSequence.parse("1/2,1/3,1/6")
    x = ProbSequence.parse("1/3,1/3,1/3")
    one = ProbSequence([1])
    assert verify_catalyst(x, y, one).status == VERIFIED
    assert verify_catalyst(y, x, one).status == REFUTED


def test_verify_rejects_unequal_sums():
    with pytest.raises(SumMismatchError):
        verify_catalyst(ProbSequence([1, 2]), ProbSequence([1, 1]), ProbSequence([1]))


def test_power_form_pair_is_catalytic():
    xs, ys = CAT_X.materialize(), CAT_Y.materialize()
    assert xs.total == ys.total
    assert not is_majorized(xs, ys)
    c, b = construct_catalyst(CAT_X, CAT_Y)
    assert c.multiplicities == {k: v for k, v in enumerate(Polynomial([1, 1]) ** 7) if v}
    assert b == EXPECTED_B
    assert verify_catalyst(xs, ys, c).status == VERIFIED
    # oracle: materialized tensors through plain partial sums
    assert is_majorized(tensor(xs, c.materialize()), tensor(ys, c.materialize()))


def test_knot_identity():
    c, b = construct_catalyst(CAT_X, CAT_Y)
    rows = delta_at_knots(CAT_X, CAT_Y, c, b)
    assert rows[0] == (0, 0, 0)
    for m, delta, predicted in rows:
        assert delta == predicted
        if m >= 1 and b[m - 1] == 0:
            assert delta == 0
    assert len(rows) == b.degree + 3


def test_knot_identity_detects_wrong_catalyst():
    _, b = construct_catalyst(CAT_X, CAT_Y)
    with pytest.raises(ArithmeticError):
        delta_at_knots(CAT_X, CAT_Y, Catalyst(TWO, {0: 1, 1: 1}), b)


def test_verified_instance_passes_conditions():
    rep = check_conditions(CAT_X.materialize(), CAT_Y.materialize())
    assert rep.verdict != VIOLATED


def test_majorized_power_form_gets_trivial_catalyst():
    x = PowerForm(F(1), TWO, (1, 1, 1))
    y = PowerForm(F(1), TWO, (0, 0, 2))
    xs, ys = x.materialize(), y.materialize()
    assert xs.total == ys.total and is_majorized(xs, ys)
    c, b = construct_catalyst(x, y)
    assert b is None and c.multiplicities == {0: 1}


def test_equal_pair_is_rejected():
    with pytest.raises(ValueError):
        construct_catalyst(CAT_X, CAT_X)


def test_violating_pair_raises_conditions_error():
    x = PowerForm(F(1), TWO, (1, 2, 2, 2, 2, 8, 8, 9, 9))
    y = PowerForm(F(1), TWO, (0, 0, 3, 3, 7, 7, 7, 7, 10))
    with pytest.raises(ConditionsError):
        construct_catalyst(x, y)


def test_catalyst_json_round_trip():
    c = Catalyst(TWO, {0: 1, 3: 5})
    data = json.loads(json.dumps(c.to_json()))
    assert data == {"omega": "2", "multiplicities": {"0": "1", "3": "5"}}
    assert Catalyst.from_json(data) == c
    assert Catalyst.from_json("[0.6, 0.4]") == CLASSIC_C


def test_catalyst_validation_and_size():
    with pytest.raises(ValueError):
        Catalyst(TWO, {0: 0})
    with pytest.raises(ValueError):
        Catalyst(TWO, {-1: 1})
    c = Catalyst(TWO, {0: 2, 1: 1})
    assert c.size == 3
    assert c.materialize() == ProbSequence([1, 1, 2])
    with pytest.raises(ValueError):
        c.materialize(limit=2)


def test_enclosure_construction_matches_exact():
    c, b = construct_catalyst(CAT_X, CAT_Y)
    with I.precision(128):
        w = iv.mpf(2)
    ce, be = construct_catalyst_enclosure(CAT_X.exponents, CAT_Y.exponents, w)
    assert ce.multiplicities == c.multiplicities
    assert all(I.lo(e) <= v <= I.hi(e) for e, v in zip(be, b))


def test_enclosure_verification_handles_ties():
    c, _ = construct_catalyst(CAT_X, CAT_Y)
    with I.precision(128):
        w = iv.mpf(2)
    res = verify_catalyst(CAT_X.materialize(), CAT_Y.materialize(), Catalyst(w, c.multiplicities))
    assert res.status == VERIFIED and res.precision is not None


def test_enclosure_verification_refutes():
    with I.precision(128):
        w = iv.mpf(2)
    res = verify_catalyst(CAT_X.materialize(), CAT_Y.materialize(), Catalyst(w, {0: 1}))
    assert res.status == REFUTED


def test_enclosure_verification_never_claims_wrongly_on_wide_base():
    # a base enclosure too wide to separate knots cannot be decided
    base = iv.mpf(["1.99", "2.01"])
    c, _ = construct_catalyst(CAT_X, CAT_Y)
    res = verify_catalyst(CAT_X.materialize(), CAT_Y.materialize(), Catalyst(base, c.multiplicities),
                          max_precision=256)
    assert res.status in (VERIFIED, INCONCLUSIVE)


def test_sweep_agrees_with_materialized_tensor(rng):
    for _ in range(150):
        n = rng.randint(2, 5)
        y = random_sequence(rng, n, zeros=rng.randint(0, 1), denom=12)
        x = t_transform(rng, y) if rng.random() < 0.5 else random_sequence(rng, n, denom=12)
        c = random_sequence(rng, rng.randint(1, 3), denom=6)
        expected = bool(is_majorized(tensor(x, c), tensor(y, c)))
        assert (verify_catalyst(x, y, c).status == VERIFIED) == expected


def test_majorized_pairs_verify_with_any_catalyst(rng):
    for _ in range(50):
        y = random_sequence(rng, rng.randint(2, 6))
        x = t_transform(rng, y)
        c = random_sequence(rng, rng.randint(1, 4))
        assert verify_catalyst(x, y, c).status == VERIFIED
