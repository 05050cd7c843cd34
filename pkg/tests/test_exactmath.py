import itertools

import pytest
from hypothesis import example, given, settings
from hypothesis import strategies as st

from calculus.errors import NonPositiveDenominatorError
from calculus.exactmath import (
    LAMBDA,
    LAMBDA_MINUS_ONE,
    LinForm,
    Ordering,
    Rounding,
    binomial,
    ceil_mul_log32,
    cmp_pow23,
    floor_linfrac,
    floor_mul_log32,
    isqrt,
    nested_nondecreasing_count,
)


@pytest.mark.parametrize("a, b, expected", [
    (2, 1, Ordering.GREATER),
    (3, 2, Ordering.LESS),
    (0, 0, Ordering.EQUAL),
    (-1, -1, Ordering.GREATER),
    (1, 0, Ordering.GREATER),
    (11, 7, Ordering.LESS),
    (12, 7, Ordering.GREATER),
])
def test_cmp_pow23(a, b, expected):
    assert cmp_pow23(a, b) is expected


def test_linform_has_no_float_view():
    with pytest.raises(TypeError):
        float(LAMBDA)


def test_linform_sign():
    assert LAMBDA.sign() == 1
    assert LAMBDA_MINUS_ONE.sign() == 1
    assert LinForm(-2, 1).sign() == -1
    assert LinForm(0, 0).sign() == 0


def test_floor_mul_log32_matches_power_bracketing():
    for m in range(201):
        k = floor_mul_log32(m)
        assert 3 ** k <= 2 ** m < 3 ** (k + 1)


@pytest.mark.parametrize("m, floor, ceil", [(0, 0, 0), (1, 0, 1), (2, 1, 2), (13, 8, 9), (10, 6, 7)])
def test_floor_and_ceil_mul_log32(m, floor, ceil):
    assert floor_mul_log32(m) == floor
    assert ceil_mul_log32(m) == ceil


@given(a=st.integers(-60, 60), b=st.integers(-60, 60))
@example(a=-1, b=0)
@example(a=0, b=0)
def test_floor_linfrac_brackets_the_quotient(a, b):
    num = LinForm(a, b)
    k = floor_linfrac(num, LAMBDA_MINUS_ONE)
    assert (num - LAMBDA_MINUS_ONE * k).sign() >= 0
    assert (num - LAMBDA_MINUS_ONE * (k + 1)).sign() < 0


@given(a=st.integers(-60, 60), b=st.integers(-60, 60))
def test_ceil_is_negated_floor(a, b):
    num = LinForm(a, b)
    assert floor_linfrac(num, LAMBDA, Rounding.CEIL) == -floor_linfrac(-num, LAMBDA)


def test_floor_linfrac_rejects_non_positive_denominator():
    with pytest.raises(NonPositiveDenominatorError):
        floor_linfrac(LinForm(1), LinForm(1, -1))
    with pytest.raises(ArithmeticError):
        floor_linfrac(LinForm(1), LinForm(0, 0))


def test_binomial_outside_range_is_zero():
    assert binomial(5, 2) == 10
    assert binomial(5, 6) == 0
    assert binomial(5, -1) == 0
    assert binomial(-1, 0) == 0
    assert binomial(60, 30) == 118264581564861424


def test_isqrt():
    assert isqrt(0) == 0
    assert isqrt(17) == 4
    with pytest.raises(ValueError):
        isqrt(-1)


def _brute_nested(bounds):
    ranges = [range(1, b + 1) for b in bounds]
    return sum(
        1 for r in itertools.product(*ranges)
        if all(r[i] <= r[i + 1] for i in range(len(r) - 1))
    )


@pytest.mark.parametrize("bounds, expected", [([], 1), ([5], 5), ([8, 9], 44), ([1, 3], 3), ([3, 0], 0), ([0], 0)])
def test_nested_count_known_values(bounds, expected):
    assert nested_nondecreasing_count(bounds) == expected


@settings(deadline=None, max_examples=60)
@given(st.lists(st.integers(-1, 12), max_size=5))
@example([12, 12, 12, 12, 12])
def test_nested_count_matches_brute_force(bounds):
    assert nested_nondecreasing_count(bounds) == _brute_nested(bounds)


@given(st.lists(st.integers(-1, 12), min_size=1, max_size=5), st.data())
def test_raising_a_bound_never_lowers_the_count(bounds, data):
    i = data.draw(st.integers(0, len(bounds) - 1))
    raised = list(bounds)
    raised[i] += data.draw(st.integers(1, 6))
    assert nested_nondecreasing_count(raised) >= nested_nondecreasing_count(bounds)
