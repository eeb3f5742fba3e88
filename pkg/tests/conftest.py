import numpy as np
import pytest

from app.schemas.basis import Domain
from app.schemas.point import Point3
from app.services.harmonics import cartesian
from app.services.quadrature import build_rule


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: reproducciones largas de tablas")


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture(scope="session")
def interior_rule():
    return build_rule(Domain.INTERIOR, 16, 16, 64)


@pytest.fixture(scope="session")
def exterior_rule():
    return build_rule(Domain.EXTERIOR, 16, 16, 64)


@pytest.fixture
def rule_for(interior_rule, exterior_rule):
    def pick(domain):
        return interior_rule if Domain(domain) is Domain.INTERIOR else exterior_rule
    return pick


@pytest.fixture
def random_points(rng):
    """Puntos aleatorios (x0, x1, x2) en el dominio, lejos de la frontera"""
    def draw(domain, count):
        low, high = (0.2, 0.9) if Domain(domain) is Domain.INTERIOR else (1.2, 2.5)
        rho = rng.uniform(low, high, count)
        theta = np.arccos(rng.uniform(-0.95, 0.95, count))
        phi = rng.uniform(0.0, 2.0 * np.pi, count)
        return cartesian(rho, theta, phi)
    return draw


@pytest.fixture
def sample_point():
    return Point3(x0=0.3, x1=-0.4, x2=0.5)
