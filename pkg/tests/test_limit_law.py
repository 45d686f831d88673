from fractions import Fraction as Fr

import pytest

from bifree.limit_law import (
    mu1_free_cumulants,
    mu_q_moments_cumulant_route,
    mu_q_moments_recurrence,
    semicircle_moments,
    z_free_cumulants,
)
from bifree.partitions import catalan_number


def test_mu1_cumulants():
    cs = mu1_free_cumulants(8)
    assert cs.cumulant(1) == 0
    assert cs.cumulant(2) == 1  # 2 * (1/2) * 1
    assert cs.cumulant(3) == 0
    assert cs.cumulant(4) == Fr(1, 2)  # 2 * (1/4) * 1
    assert cs.cumulant(6) == Fr(3, 4)  # 2 * (1/8) * 3
    assert all(cs.cumulant(n) == 0 for n in (1, 3, 5, 7))


def test_z_cumulants():
    for q in (Fr(0), Fr(1, 3), Fr(9, 10)):
        cs = z_free_cumulants(q, 8)
        assert cs.cumulant(2) == 1
        assert all(cs.cumulant(n) == 0 for n in (1, 3, 5, 7))
        assert cs.cumulant(4) == q**2 / 2
        assert cs.cumulant(6) == 2 * (q / 2) ** 3 * 3
    semi = z_free_cumulants(0, 8)
    assert all(semi.cumulant(n) == 0 for n in (4, 6, 8))
    with pytest.raises(ValueError):
        z_free_cumulants(1, 4)
    with pytest.raises(ValueError):
        z_free_cumulants(Fr(-1, 2), 4)


def test_moment_basics():
    for q in (Fr(0), Fr(1, 2)):
        ms = mu_q_moments_recurrence(q, 9)
        assert ms.moment(2) == 1
        assert ms.moment(1) == 0
        assert ms.moment(5) == 0
        assert ms.moment(9) == 0


def test_fourth_and_sixth_moment_closed_forms():
    # hand-expanded from the recurrence: M4 = 2 + q^2/2,
    # M6 = 5 + 3 q^2 + (3/4) q^3
    for q in (Fr(0), Fr(1, 3), Fr(2, 3), Fr(9, 10)):
        ms = mu_q_moments_recurrence(q, 6)
        assert ms.moment(4) == 2 + q**2 / 2
        assert ms.moment(6) == 5 + 3 * q**2 + Fr(3, 4) * q**3


def test_dual_routes_agree():
    for q in (Fr(0), Fr(1, 3), Fr(1, 2), Fr(9, 10)):
        assert mu_q_moments_recurrence(q, 12) == mu_q_moments_cumulant_route(q, 12)


def test_q_zero_is_semicircle():
    ms = mu_q_moments_recurrence(0, 12)
    assert ms == semicircle_moments(12)
    assert ms == mu_q_moments_cumulant_route(0, 12)
    assert ms.moment(8) == 14
    assert ms.moment(12) == catalan_number(6)


def test_semicircle_moments():
    ms = semicircle_moments(8)
    assert ms.values == (Fr(0), Fr(1), Fr(0), Fr(2), Fr(0), Fr(5), Fr(0), Fr(14))


def test_even_moments_increase_with_q():
    grid = [Fr(k, 10) for k in range(10)]
    for order in (4, 6, 8, 10):
        values = [mu_q_moments_recurrence(q, order).moment(order) for q in grid]
        assert all(a < b for a, b in zip(values, values[1:]))
