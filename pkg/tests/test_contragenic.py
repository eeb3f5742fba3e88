import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from app.schemas.basis import BasisIndex, Domain, Family
from app.schemas.point import Point3
from app.services.basis import basis_field
from app.services.contragenic import (
    dual_from_X,
    duality_deviation,
    duality_residual,
    eval_Z,
    eval_Z_field,
    legendre_phase_sign,
    norm_Z,
    normalized,
    normalized_field,
)
from app.services.harmonics import degrees_for, index_range, indices_for, is_scalar_contragenic, norm_U
from app.services.quadrature import basis_values, gram
from app.utils.errors import DomainError, InvalidIndexError


def _components(q):
    return [q.a0, q.a1, q.a2]


def test_low_degree_values(sample_point):
    x0, x1, x2 = sample_point.cartesian
    r3 = sample_point.rho ** 3
    assert_allclose(_components(eval_Z(BasisIndex.make("Z", 1, 0), sample_point)), [0.0, x2, -x1])
    assert_allclose(_components(eval_Z(BasisIndex.make("Z", -2, 0), sample_point)), [0.0, x2 / r3, -x1 / r3])
    assert_allclose(_components(eval_Z(BasisIndex.make("Z", -2, 3), sample_point)), [x1 / r3, 0.0, 0.0])
    assert_allclose(_components(eval_Z(BasisIndex.make("Z", -2, 1), sample_point))[1:], [0.0, 6 * x0 / r3], atol=1e-15)


def test_published_table_differs_by_legendre_phase(sample_point):
    """La tabla de Z_{-2,.} con fase de Condon-Shortley: Z_{-2,0}^+ = -x2/rho^3 e1 + x1/rho^3 e2, Z_{-2,3}^+ = -x1/rho^3"""
    x0, x1, x2 = sample_point.cartesian
    r3 = sample_point.rho ** 3
    published = {0: [0.0, -x2 / r3, x1 / r3], 3: [-x1 / r3, 0.0, 0.0]}
    for m, expected in published.items():
        ours = np.array(_components(eval_Z(BasisIndex.make("Z", -2, m), sample_point)))
        assert_allclose(legendre_phase_sign(-2, m) * ours, expected)


def test_invalid_indices(sample_point):
    with pytest.raises(InvalidIndexError):
        eval_Z(BasisIndex.make("Z", 0, 0), sample_point)
    with pytest.raises(InvalidIndexError):
        eval_Z(BasisIndex.make("Z", 1, 0, "-"), sample_point)
    with pytest.raises(InvalidIndexError):
        eval_Z(BasisIndex.make("Z", 2, 2), sample_point)
    with pytest.raises(InvalidIndexError):
        eval_Z(BasisIndex.make("Z", -2, 4), Point3(x0=2.0, x1=0.0, x2=0.0))
    with pytest.raises(DomainError):
        eval_Z(BasisIndex.make("Z", -2, 0), Point3(x0=0.0, x1=0.0, x2=0.0))


def test_norm_closed_forms():
    assert norm_Z(BasisIndex.make("Z", 1, 0)) == pytest.approx(8.0 * math.pi / 15.0)
    assert norm_Z(BasisIndex.make("Z", 2, 1)) == pytest.approx(16.0 * math.pi / 5.0)
    assert norm_Z(BasisIndex.make("Z", -2, 0)) == pytest.approx(8.0 * math.pi / 3.0)
    assert norm_Z(BasisIndex.make("Z", -2, 1)) == pytest.approx(48.0 * math.pi)
    assert norm_Z(BasisIndex.make("Z", -2, 2)) == pytest.approx(384.0 * math.pi)
    assert norm_Z(BasisIndex.make("Z", -2, 3)) == pytest.approx(4.0 * math.pi / 3.0)
    assert norm_Z(BasisIndex.make("Z", -2, 3)) == pytest.approx(norm_U(BasisIndex.make("U", -2, 1)))


@pytest.mark.parametrize("domain", ["interior", "exterior"])
def test_norms_match_quadrature(domain, rule_for):
    rule = rule_for(domain)
    zs = indices_for(Family.Z, domain, degrees_for(Family.Z, domain, 4))
    for idx, values in zip(zs, basis_values(zs, rule)):
        assert rule.integrate(np.sum(values ** 2, axis=0)) == pytest.approx(norm_Z(idx), rel=1e-10)


@pytest.mark.parametrize("domain", ["interior", "exterior"])
def test_contragenics_are_orthogonal_to_monogenics(domain, rule_for):
    rule = rule_for(domain)
    zs = indices_for(Family.Z, domain, degrees_for(Family.Z, domain, 4))
    x_degrees = degrees_for(Family.X, domain, 4)
    xs = indices_for(Family.X, domain, x_degrees) + indices_for(Family.X, domain, x_degrees, conjugate=True)
    matrix = gram(zs + xs, rule)
    k = len(zs)
    for i in range(k):
        for j in range(k, k + len(xs)):
            assert matrix.ratio(i, j) <= 1e-8, (matrix.labels[i], matrix.labels[j])
    assert max(matrix.ratio(i, j) for i in range(k) for j in range(i + 1, k)) <= 1e-8


def test_scalar_parts(random_points):
    points = random_points("interior", 20)
    for idx in indices_for(Family.Z, "interior", range(1, 6)):
        assert np.all(eval_Z_field(idx, *points)[0] == 0.0)
    exterior = random_points("exterior", 20)
    for n in range(-2, -6, -1):
        for m, parity in index_range(Family.Z, "exterior", n):
            values = eval_Z_field(BasisIndex.make("Z", n, m, parity), *exterior)
            if is_scalar_contragenic(Domain.EXTERIOR, n, m):
                assert np.all(values[1:] == 0.0)
                u = BasisIndex.make("U", n, -n - 1, parity)
                assert_allclose(values[0], basis_field(u, *exterior)[0])
            else:
                assert np.all(values[0] == 0.0)


def test_counts_per_degree():
    for n in range(1, 7):
        assert len(index_range(Family.Z, "interior", n)) == 2 * n - 1
    for n in range(-2, -9, -1):
        assert len(index_range(Family.Z, "exterior", n)) == -(2 * n - 3)


@pytest.mark.parametrize(
    "n, m, parity, point",
    [
        (-2, 0, "+", Point3(x0=0.5, x1=1.2, x2=-0.4)),
        (1, 0, "+", Point3(x0=0.2, x1=-0.3, x2=0.4)),
        (2, 1, "-", Point3(x0=-0.1, x1=0.5, x2=0.3)),
    ],
)
def test_duality_examples(n, m, parity, point):
    z = eval_Z(BasisIndex.make("Z", n, m, parity), point)
    residual = duality_residual(n, m, parity, point)
    assert residual.magnitude <= 1e-12 * max(1.0, math.hypot(z.a1, z.a2))


def test_duality_all_vectorial_indices(random_points):
    for domain in ("interior", "exterior"):
        points = random_points(domain, 20)
        for n in degrees_for(Family.Z, domain, 6):
            for m, parity in index_range(Family.Z, domain, n):
                if is_scalar_contragenic(Domain(domain), n, m):
                    continue
                residual, star_residual = duality_deviation(n, m, parity, *points)
                assert residual <= 1e-12, (n, m, parity)
                if m == 0:
                    assert star_residual > 1e-3


def test_star_form_differs_only_in_first_component(sample_point):
    turned, starred = dual_from_X(1, 0, 1, *sample_point.cartesian)
    assert_allclose(turned[1], starred[1])
    assert_allclose(turned[0], -starred[0])


def test_duality_rejects_scalar_contragenics():
    with pytest.raises(InvalidIndexError):
        duality_residual(-2, 3, "+", Point3(x0=1.0, x1=1.0, x2=1.0))


def test_normalized_bases(interior_rule, exterior_rule):
    z = BasisIndex.make("Z", 2, 1, "+")
    values = normalized_field(z, *interior_rule.points())
    assert interior_rule.integrate(np.sum(values ** 2, axis=0)) == pytest.approx(1.0, abs=1e-8)
    x = BasisIndex.make("X", -3, 1, "-")
    values = normalized_field(x, *exterior_rule.points())
    assert np.all(values[0] == 0.0)
    assert exterior_rule.integrate(np.sum(values ** 2, axis=0)) == pytest.approx(1.0, abs=1e-8)
    with pytest.raises(InvalidIndexError):
        normalized(BasisIndex.make("X", 0, 0), Point3(x0=0.1, x1=0.1, x2=0.1))
    with pytest.raises(InvalidIndexError):
        normalized(BasisIndex.make("U", 1, 0), Point3(x0=0.1, x1=0.1, x2=0.1))
