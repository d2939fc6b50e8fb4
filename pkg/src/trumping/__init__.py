"""Decide and certify the trumping (catalytic majorization) relation.

The conditions are checked with exact rationals and certified interval
enclosures; catalysts are built from polynomial multipliers and verified
exactly.
"""

from .catalyst import Catalyst, construct_catalyst, delta_at_knots, verify_catalyst
from .majorization import SumMismatchError, characteristic, is_majorized
from .means import (CLOSURE, STRICT, ConditionReport, check_conditions, entropy, power_mean,
                    r_curve, r_function)
from .polynomials import Polynomial, count_positive_roots, lemma_quadratic, positivize
from .reduction import TrumpingReport, case_b_reduce, case_c_reduce, decide_trumping
from .sequences import (PowerForm, ProbSequence, concat, detect_power_form, distance, sort_ascending,
                        strip_common, tensor, tensor_power)
from .stability import k_nu, theorem2_epsilon, theorem3_epsilon

__all__ = [
    "CLOSURE", "STRICT", "Catalyst", "ConditionReport", "Polynomial", "PowerForm", "ProbSequence",
    "SumMismatchError", "TrumpingReport", "case_b_reduce", "case_c_reduce", "characteristic",
    "check_conditions", "concat", "construct_catalyst", "count_positive_roots", "decide_trumping",
    "delta_at_knots", "detect_power_form", "distance", "entropy", "is_majorized", "k_nu",
    "lemma_quadratic", "positivize", "power_mean", "r_curve", "r_function", "sort_ascending",
    "strip_common", "tensor", "tensor_power", "theorem2_epsilon", "theorem3_epsilon", "verify_catalyst",
]
