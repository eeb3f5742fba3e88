"""
Cuadratura en B^i y B^e con medida de volumen de Lebesgue

Regla tensorial: Gauss-Legendre radial (en rho para el interior, en u = 1/rho
para el exterior), Gauss-Legendre en t = cos(theta) y regla uniforme en phi.
Producto escalar <f, g> = ∫ (f0 g0 + f1 g1 + f2 g2) dV y matrices de Gram.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, List, Tuple, Union

import numpy as np

from app.config import settings
from app.schemas.basis import BasisIndex, Domain
from app.services.basis import components
from app.services.harmonics import HarmonicTable, cartesian, validate_index
from app.services.legendre import effective_degree
from app.utils.errors import DomainError, InvalidIndexError
from app.utils.parallel import ordered_map

logger = logging.getLogger(__name__)

FieldOrValues = Union[Callable[..., np.ndarray], np.ndarray]


@dataclass(eq=False)
class QuadratureRule:
    """Nodos y pesos tensoriales; los pesos radiales ya incluyen el jacobiano rho^2"""
    domain: Domain
    radial_nodes: np.ndarray
    radial_weights: np.ndarray
    polar_nodes: np.ndarray
    polar_weights: np.ndarray
    azimuthal: int
    _points: Tuple[np.ndarray, np.ndarray, np.ndarray] = field(default=None, repr=False)

    @property
    def sizes(self) -> Tuple[int, int, int]:
        return (len(self.radial_nodes), len(self.polar_nodes), self.azimuthal)

    @property
    def rho(self) -> np.ndarray:
        return self.radial_nodes.reshape(-1, 1, 1)

    @property
    def t(self) -> np.ndarray:
        return self.polar_nodes.reshape(1, -1, 1)

    @property
    def phi(self) -> np.ndarray:
        return (2.0 * np.pi * np.arange(self.azimuthal) / self.azimuthal).reshape(1, 1, -1)

    @property
    def weights(self) -> np.ndarray:
        azimuthal_weight = 2.0 * np.pi / self.azimuthal
        return (
            self.radial_weights.reshape(-1, 1, 1)
            * self.polar_weights.reshape(1, -1, 1)
            * np.full((1, 1, self.azimuthal), azimuthal_weight)
        )

    def points(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Coordenadas cartesianas de los nodos, forma (R, T, A)"""
        if self._points is None:
            theta = np.arccos(self.t)
            x0, x1, x2 = cartesian(self.rho, theta, self.phi)
            shape = self.sizes
            self._points = (
                np.broadcast_to(x0, shape).copy(),
                np.broadcast_to(x1, shape).copy(),
                np.broadcast_to(x2, shape).copy(),
            )
        return self._points

    def table(self, nu_max: int) -> HarmonicTable:
        """Tabla de armónicos separable sobre los ejes de la regla"""
        return HarmonicTable(self.rho, self.t, self.phi, nu_max)

    def integrate(self, values) -> float:
        """∫ values dV"""
        return float(np.sum(self.weights * np.asarray(values)))


def build_rule(domain, radial: int, polar: int, azimuthal: int) -> QuadratureRule:
    """Regla tensorial (R, T, A) en el dominio dado"""
    domain = Domain(domain)
    if radial < 1 or polar < 1 or azimuthal < 4:
        raise InvalidIndexError(f"Tamaños de regla no válidos: R={radial}, T={polar}, A={azimuthal}")
    xi, w = np.polynomial.legendre.leggauss(radial)
    half = (xi + 1.0) / 2.0
    if domain is Domain.INTERIOR:
        radial_nodes = half
        radial_weights = w / 2.0 * half ** 2
    else:
        radial_nodes = 1.0 / half
        radial_weights = w / 2.0 * half ** -4
    t, wt = np.polynomial.legendre.leggauss(polar)
    logger.debug("Regla %s: R=%d T=%d A=%d", domain.value, radial, polar, azimuthal)
    return QuadratureRule(domain, radial_nodes, radial_weights, t, wt, azimuthal)


def default_rule(domain) -> QuadratureRule:
    return build_rule(domain, settings.QUAD_RADIAL, settings.QUAD_POLAR, settings.QUAD_AZIMUTHAL)


def rule_for_degree(domain, max_degree: int) -> QuadratureRule:
    """Regla exacta para productos de funciones base de grado |n| <= max_degree"""
    return build_rule(domain, *settings.rule_sizes_for(max_degree))


def _values_on(rule: QuadratureRule, f: FieldOrValues) -> np.ndarray:
    values = f(*rule.points()) if callable(f) else f
    values = np.asarray(values, dtype=float)
    if values.shape[0] == 2:
        values = np.concatenate([np.zeros((1,) + values.shape[1:]), values])
    return values


def inner(f: FieldOrValues, g: FieldOrValues, rule: QuadratureRule) -> float:
    """<f, g>_sigma; f y g son campos (x0, x1, x2) -> (3|2, ...) o valores en los nodos"""
    fv = _values_on(rule, f)
    gv = _values_on(rule, g)
    return rule.integrate(np.sum(fv * gv, axis=0))


# ============================================
# MATRICES DE GRAM
# ============================================

@dataclass(eq=False)
class GramMatrix:
    indices: List[BasisIndex]
    matrix: np.ndarray

    @property
    def labels(self) -> List[str]:
        return [idx.label for idx in self.indices]

    def ratio(self, i: int, j: int) -> float:
        """|G_ij| / sqrt(G_ii G_jj)"""
        denom = np.sqrt(abs(self.matrix[i, i] * self.matrix[j, j]))
        return float(abs(self.matrix[i, j]) / denom) if denom > 0 else float("inf")

    @property
    def max_offdiag_ratio(self) -> float:
        size = len(self.indices)
        ratios = [self.ratio(i, j) for i in range(size) for j in range(i + 1, size)]
        return max(ratios, default=0.0)


def basis_values(indices: List[BasisIndex], rule: QuadratureRule) -> List[np.ndarray]:
    """Valores (3, R, T, A) de cada índice en los nodos, calculados en paralelo"""
    table = rule.table(max(effective_degree(idx.n) for idx in indices))
    return ordered_map(lambda idx: np.broadcast_to(components(idx, table), (3,) + rule.sizes), indices)


def gram(indices: List[BasisIndex], rule: QuadratureRule) -> GramMatrix:
    """Matriz de productos escalares <b_i, b_j> de índices del dominio de la regla"""
    if not indices:
        return GramMatrix([], np.zeros((0, 0)))
    foreign = [idx.label for idx in indices if idx.domain is not rule.domain]
    if foreign:
        raise DomainError(f"Índices fuera del dominio {rule.domain.value}: {', '.join(foreign)}")
    for idx in indices:
        validate_index(idx)
    values = np.stack([v.reshape(-1) for v in basis_values(indices, rule)])
    weights = np.broadcast_to(rule.weights, (3,) + rule.sizes).reshape(-1)
    matrix = (values * weights) @ values.T
    matrix = 0.5 * (matrix + matrix.T)
    logger.debug("Gram %dx%d en %s", len(indices), len(indices), rule.domain.value)
    return GramMatrix(list(indices), matrix)
