from fractions import Fraction

import pytest

from config.settings import REFERENCE_DELTA, REFERENCE_GAMMA
from calculus.counting import (
    coverage_ratio,
    delta,
    g_cap,
    gamma,
    h_cap,
    official_count,
    ratio_check,
    w_gamma,
    z_moves,
)
from calculus.errors import TooSmallNError
from utils.alerts import get_recent_mismatches


@pytest.mark.parametrize("n", sorted(REFERENCE_GAMMA))
def test_gamma_reproduces_published_column(n):
    assert gamma(n).total == REFERENCE_GAMMA[n]


@pytest.mark.parametrize("n", sorted(REFERENCE_DELTA))
def test_delta_reproduces_published_column(n):
    assert delta(n).total == REFERENCE_DELTA[n]


def test_gamma_breakdown_small():
    b = gamma(5)
    assert b.term_official == official_count(5) == 5
    assert b.total == 6
    assert b.to_dict()["total"] == 6


def test_gamma_rejects_small_n():
    with pytest.raises(ValueError):
        gamma(2)


def test_w_gamma_worked_value():
    assert w_gamma(11, 8, 7, 1) == 2


def test_delta_worked_example_n14():
    b = delta(14)
    assert b.g == g_cap(14) == 2
    assert h_cap(14, 1) == 2
    assert h_cap(14, 2) == 1
    assert b.summands() == [2, 10, 44, 8]
    assert b.per_K_per_q == {(1, 1): 10, (1, 2): 44, (2, 1): 8}
    assert [z_moves(14, 1, 2, s) for s in (2, 1)] == [8, 9]


def test_delta_zero_below_seven():
    for n in range(3, 7):
        assert delta(n).total == 0
    with pytest.raises(TooSmallNError):
        g_cap(6)


def test_coverage_ratio():
    assert coverage_ratio(2, 4) == Fraction(5, 8)
    assert coverage_ratio(3117, 13) == Fraction(7213, 8192)


def test_ratio_check_on_published_gamma():
    report = ratio_check(sorted(REFERENCE_GAMMA.items()))
    assert report.holds
    assert (3, 4) in report.equalities
    assert (9, 10) in report.equalities
    assert len(report.pairs) == 22
    assert report.to_dict()["holds"] is True


def test_ratio_check_flags_a_decrease():
    report = ratio_check([(5, 6), (6, 1)])
    assert not report.holds
    assert report.violations == [(5, 6)]
    assert get_recent_mismatches(source="ratio-lemma")


def test_ratio_check_needs_consecutive_n():
    with pytest.raises(ValueError):
        ratio_check([(3, 1), (5, 6)])
