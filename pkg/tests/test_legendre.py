import math

import numpy as np
import pytest
from numpy.polynomial import legendre as npleg
from numpy.testing import assert_allclose
from scipy.special import lpmv

from app.services.legendre import LegendreIndex, legendre_p, legendre_p_neg_order, legendre_table
from app.utils.errors import DomainError, InvalidIndexError

T_GRID = np.linspace(-1.0, 1.0, 21)


def rodrigues(nu, m, t):
    coeffs = np.zeros(nu + 1)
    coeffs[nu] = 1.0
    return (1.0 - t * t) ** (m / 2.0) * npleg.legval(t, npleg.legder(coeffs, m))


def test_low_degree_values():
    assert legendre_p(1, 0, 0.37) == pytest.approx(0.37)
    assert legendre_p(1, 1, 0.6) == pytest.approx(0.8, rel=1e-15)
    assert legendre_p(-2, 0, 0.3) == pytest.approx(0.3)
    assert legendre_p(2, 3, 0.1) == 0.0
    assert legendre_p(2, 2, 0.0) == pytest.approx(3.0)


def test_negative_order_relation():
    assert legendre_p_neg_order(1, 1, 0.6) == pytest.approx(0.4)
    assert legendre_p_neg_order(2, 0, 0.25) == pytest.approx(legendre_p(2, 0, 0.25))
    assert legendre_p_neg_order(2, 2, 0.0) == pytest.approx(0.125)
    with pytest.raises(InvalidIndexError):
        legendre_p_neg_order(2, 3, 0.0)


@pytest.mark.parametrize("nu", range(0, 11))
def test_matches_rodrigues(nu):
    for m in range(0, nu + 1):
        expected = rodrigues(nu, m, T_GRID)
        scale = max(1.0, float(np.max(np.abs(expected))))
        assert_allclose(legendre_p(nu, m, T_GRID), expected, rtol=1e-12, atol=1e-12 * scale)


@pytest.mark.parametrize("nu", [1, 3, 6, 9])
def test_no_condon_shortley_phase(nu):
    for m in range(0, nu + 1):
        scale = max(1.0, float(np.max(np.abs(lpmv(m, nu, T_GRID)))))
        assert_allclose(lpmv(m, nu, T_GRID), (-1) ** m * legendre_p(nu, m, T_GRID), rtol=1e-10, atol=1e-12 * scale)


def test_negative_degree_reduction():
    for n in range(-1, -9, -1):
        for m in range(0, -n):
            assert_allclose(legendre_p(n, m, T_GRID), legendre_p(-n - 1, m, T_GRID), rtol=0, atol=0)


@pytest.mark.parametrize("m", [0, 1, 2, 5])
def test_orthogonality(m):
    t, w = npleg.leggauss(20)
    table = legendre_table(8, m, t)
    for nu in range(m, 9):
        for nu2 in range(m, 9):
            integral = float(np.sum(w * table[nu, m] * table[nu2, m]))
            if nu == nu2:
                expected = 2.0 * math.factorial(nu + m) / ((2 * nu + 1) * math.factorial(nu - m))
                assert integral == pytest.approx(expected, rel=1e-10)
            else:
                assert abs(integral) < 1e-10 * max(1.0, math.factorial(nu + m))


def test_table_rows_above_degree_vanish():
    table = legendre_table(3, 5, T_GRID)
    assert table.shape == (4, 6, 21)
    assert np.all(table[2, 3:] == 0.0)


def test_legendre_index_effective_degree():
    assert LegendreIndex(-3, 1).nu == 2
    assert LegendreIndex(4, 5).vanishes


def test_domain_and_order_errors():
    with pytest.raises(DomainError):
        legendre_p(2, 1, 1.01)
    with pytest.raises(InvalidIndexError):
        legendre_p(2, -1, 0.5)
    assert legendre_p(3, 1, 1.0 + 1e-14) == pytest.approx(0.0, abs=1e-6)
