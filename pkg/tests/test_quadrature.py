import math

import numpy as np
import pytest

from app.schemas.basis import BasisIndex, Domain, Family
from app.services.basis import basis_field, closed_norm
from app.services.harmonics import degrees_for, indices_for
from app.services.quadrature import build_rule, default_rule, gram, inner, rule_for_degree
from app.utils.errors import DomainError, InvalidIndexError


def test_ball_volume():
    rule = build_rule("interior", 8, 8, 16)
    assert rule.integrate(np.ones(rule.sizes)) == pytest.approx(4.0 * math.pi / 3.0, rel=1e-12)


def test_exterior_inverse_fourth_power(exterior_rule):
    x0, x1, x2 = exterior_rule.points()
    rho = np.sqrt(x0 ** 2 + x1 ** 2 + x2 ** 2)
    assert exterior_rule.integrate(rho ** -4) == pytest.approx(4.0 * math.pi, rel=1e-10)


def test_second_moment(interior_rule):
    _, x1, _ = interior_rule.points()
    assert interior_rule.integrate(x1 ** 2) == pytest.approx(4.0 * math.pi / 15.0, rel=1e-10)


def test_azimuthal_rule_is_exact_for_low_frequencies():
    rule = build_rule("interior", 2, 2, 12)
    phi = rule.phi.reshape(-1)
    for k in range(0, 6):
        for l in range(0, 12 - k):
            value = float(np.sum(np.cos(k * phi) * np.sin(l * phi))) * 2.0 * math.pi / 12
            assert abs(value) <= 1e-12


def test_invalid_sizes():
    with pytest.raises(InvalidIndexError):
        build_rule("interior", 0, 4, 8)
    with pytest.raises(InvalidIndexError):
        build_rule("exterior", 4, 4, 3)


def test_default_and_degree_rules():
    assert default_rule(Domain.INTERIOR).sizes == (16, 16, 64)
    assert rule_for_degree(Domain.EXTERIOR, 30).sizes == (34, 34, 128)


def _field(idx):
    return lambda x0, x1, x2: basis_field(idx, x0, x1, x2)


def test_inner_examples(interior_rule, exterior_rule):
    u = BasisIndex.make("U", 1, 0)
    assert inner(_field(u), _field(u), interior_rule) == pytest.approx(4.0 * math.pi / 15.0, rel=1e-10)
    x = BasisIndex.make("X", 1, 0)
    xbar = BasisIndex.make("X", 1, 1, "+", conjugate=True)
    assert abs(inner(_field(x), _field(xbar), interior_rule)) <= 1e-10
    z = BasisIndex.make("Z", -2, 0)
    x_ext = BasisIndex.make("X", -2, 1, "-")
    assert abs(inner(_field(z), _field(x_ext), exterior_rule)) <= 1e-10


def test_inner_accepts_vector_parts(interior_rule):
    x = BasisIndex.make("X", 1, 0)
    values = basis_field(x, *interior_rule.points())
    assert inner(values[1:], values[1:], interior_rule) == pytest.approx(8.0 * math.pi / 15.0, rel=1e-10)


def test_gram_examples(interior_rule, exterior_rule):
    us = indices_for(Family.U, "interior", degrees_for(Family.U, "interior", 3))
    assert gram(us, interior_rule).max_offdiag_ratio <= 1e-8

    ys = indices_for(Family.Y, "exterior", [-2]) + indices_for(Family.Y_TILDE, "exterior", [-2])
    matrix = gram(ys, exterior_rule)
    assert matrix.max_offdiag_ratio <= 1e-8
    expected = np.array([closed_norm(idx) for idx in ys])
    assert np.max(np.abs(np.diag(matrix.matrix) - expected) / expected) <= 1e-8
    assert matrix.labels[0] == "Y[-2,0,+]^e"


def test_gram_rejects_mixed_domains(interior_rule):
    with pytest.raises(DomainError):
        gram([BasisIndex.make("X", 1, 0), BasisIndex.make("X", -2, 0)], interior_rule)
    assert gram([], interior_rule).matrix.shape == (0, 0)


def test_doubling_the_rule_leaves_gram_unchanged(interior_rule):
    xs = indices_for(Family.X, "interior", [0, 1, 2, 3])
    base = gram(xs, interior_rule).matrix
    doubled = gram(xs, build_rule("interior", 32, 32, 128)).matrix
    scale = np.max(np.abs(base))
    assert np.max(np.abs(base - doubled)) <= 1e-10 * scale
