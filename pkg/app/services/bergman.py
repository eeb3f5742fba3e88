"""
Núcleos de Bergman truncados y proyectores sobre Vec M^sigma y N^sigma

Dos caminos para B[f](x):
    - coeficientes (por defecto): c_k = <f, psi_k> por cuadratura, B[f](x) = sum c_k psi_k(x)
    - núcleo: B[f]_j(x) = ∫ Sc(b_j(x, y) conj f(y)) dV(y), b_j(x, y) = sum_k [psi_k(x)]_j psi_k(y)
Cada núcleo tiene además su forma dual (Vec M a través de Z_{-n-1,m}, N a través
de Vec X_{-n-1,m}). P = B_M + B_N y Q = I - P.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.config import settings
from app.schemas.basis import BasisIndex, Domain, Family
from app.schemas.point import Point3
from app.schemas.report import BergmanTable
from app.services.algebra import VecField2, conj, quat_mul, sc, turn
from app.services.contragenic import duality_factor, eval_Z_formula, norm_Z, z_components
from app.services.exponential import variant_field
from app.services.harmonics import (
    HarmonicTable,
    cartesian,
    coords,
    index_range,
    is_scalar_contragenic,
    spherical,
)
from app.services.legendre import effective_degree
from app.services.monogenic import norm_vec_X, x_components
from app.services.quadrature import QuadratureRule, build_rule, rule_for_degree
from app.utils.errors import DomainError, InvalidIndexError
from app.utils.parallel import ordered_map

logger = logging.getLogger(__name__)

VectorField = Callable[..., np.ndarray]

RELATIVE_GUARD = 1e-300


class Operator(str, Enum):
    """Espacio imagen del proyector"""
    M = "M"
    N = "N"


@dataclass(frozen=True)
class KernelTruncation:
    """Dominio y número N de grados: {0..N} en el interior, {-2..-2-N} en el exterior"""
    domain: Domain
    N: int

    def __post_init__(self):
        object.__setattr__(self, "domain", Domain(self.domain))
        if self.N < 0:
            raise InvalidIndexError(f"Truncación negativa N={self.N}")

    @property
    def degrees(self) -> List[int]:
        if self.domain is Domain.INTERIOR:
            return list(range(0, self.N + 1))
        return list(range(-2, -3 - self.N, -1))

    @property
    def max_effective_degree(self) -> int:
        return max(effective_degree(n) for n in self.degrees)


def check_points(domain: Domain, x0, x1, x2) -> None:
    """Los puntos deben estar en el dominio abierto"""
    rho = np.sqrt(np.asarray(x0) ** 2 + np.asarray(x1) ** 2 + np.asarray(x2) ** 2)
    if domain is Domain.INTERIOR and np.any(rho >= 1.0):
        raise DomainError(f"Punto fuera de B^i: max |x| = {float(np.max(rho)):.6g}")
    if domain is Domain.EXTERIOR and np.any(rho <= 1.0):
        raise DomainError(f"Punto fuera de B^e: min |x| = {float(np.min(rho)):.6g}")


class BergmanProjector:
    """
    Proyector truncado sobre Vec M^sigma (operator M) o N^sigma (operator N).

    Funciones:
    - basis: índices incluidos por grado (Vec X con norma > 0, o Z vectoriales)
    - coefficients: <f, psi_k> por grado, en paralelo
    - contributions / project: camino de coeficientes, con sumas parciales por grado
    - kernel / dual_kernel: matriz 2x2 b_jl(x, y) en sus dos formas
    - project_kernel_path: integral del núcleo contra f
    """

    def __init__(self, operator, truncation: KernelTruncation, rule: Optional[QuadratureRule] = None):
        self.operator = Operator(operator)
        self.truncation = truncation
        self.domain = truncation.domain
        self.rule = rule or rule_for_degree(self.domain, truncation.max_effective_degree + 2)
        if self.rule.domain is not self.domain:
            raise DomainError(f"Regla en {self.rule.domain.value} para un proyector en {self.domain.value}")
        self.basis: Dict[int, List[BasisIndex]] = {n: self._degree_basis(n) for n in truncation.degrees}
        self.norms: Dict[BasisIndex, float] = {
            idx: (norm_vec_X(idx) if self.operator is Operator.M else norm_Z(idx))
            for indices in self.basis.values()
            for idx in indices
        }
        logger.info(
            "Proyector B_%s en %s: N=%d, %d funciones, regla %s",
            self.operator.value, self.domain.value, truncation.N, self.size, self.rule.sizes,
        )

    # ============================================
    # BASE
    # ============================================

    def _degree_basis(self, n: int) -> List[BasisIndex]:
        if self.operator is Operator.M:
            candidates = [BasisIndex.make("X", n, m, s, domain=self.domain) for m, s in index_range(Family.X, self.domain, n)]
            return [idx for idx in candidates if norm_vec_X(idx) > 0.0]
        if n == 0:
            return []
        return [
            BasisIndex.make("Z", n, m, s, domain=self.domain)
            for m, s in index_range(Family.Z, self.domain, n)
            if not is_scalar_contragenic(self.domain, n, m)
        ]

    @property
    def size(self) -> int:
        return sum(len(indices) for indices in self.basis.values())

    @property
    def indices(self) -> List[BasisIndex]:
        return [idx for n in self.truncation.degrees for idx in self.basis[n]]

    def _psi(self, idx: BasisIndex, table: HarmonicTable) -> np.ndarray:
        """Función base normalizada, parte vectorial (2, ...)"""
        if self.operator is Operator.M:
            values = x_components(idx.n, idx.m, idx.parity.sign, table)
        else:
            values = z_components(idx.n, idx.m, idx.parity.sign, table)
        return values[1:3] / math.sqrt(self.norms[idx])

    def _table(self, x0, x1, x2) -> HarmonicTable:
        rho, t, phi = spherical(x0, x1, x2)
        return HarmonicTable(rho, t, phi, self.truncation.max_effective_degree)

    # ============================================
    # CAMINO DE COEFICIENTES
    # ============================================

    def coefficients(self, f: VectorField) -> Dict[int, np.ndarray]:
        """c_k = <f, psi_k> agrupados por grado"""
        values = np.asarray(f(*self.rule.points()), dtype=float)
        weighted = values[-2:] * self.rule.weights
        table = self.rule.table(self.truncation.max_effective_degree)

        def degree_coefficients(n: int) -> np.ndarray:
            return np.array([float(np.sum(self._psi(idx, table) * weighted)) for idx in self.basis[n]])

        degrees = self.truncation.degrees
        return dict(zip(degrees, ordered_map(degree_coefficients, degrees)))

    def contributions(self, coefficients: Dict[int, np.ndarray], x0, x1, x2) -> List[np.ndarray]:
        """Aporte (2, ...) de cada grado en los puntos, en el orden de los grados"""
        check_points(self.domain, x0, x1, x2)
        table = self._table(x0, x1, x2)
        out = []
        for n in self.truncation.degrees:
            total = np.zeros((2,) + table.shape)
            for c, idx in zip(coefficients[n], self.basis[n]):
                total += c * self._psi(idx, table)
            out.append(total)
        return out

    def project(self, f: VectorField, x0, x1, x2, coefficients: Optional[Dict[int, np.ndarray]] = None) -> np.ndarray:
        coefficients = coefficients if coefficients is not None else self.coefficients(f)
        return np.sum(self.contributions(coefficients, x0, x1, x2), axis=0)

    # ============================================
    # CAMINO DEL NÚCLEO
    # ============================================

    def kernel(self, x: Point3, y) -> np.ndarray:
        """b_jl(x, y) = sum_k [psi_k(x)]_j [psi_k(y)]_l, forma (2, 2, ...)"""
        xs = coords(x)
        ys = coords(y)
        check_points(self.domain, *xs)
        check_points(self.domain, *ys)
        table_x = self._table(*xs)
        table_y = self._table(*ys)
        result = np.zeros((2, 2) + table_y.shape)
        for idx in self.indices:
            px = self._psi(idx, table_x)
            py = self._psi(idx, table_y)
            result += np.einsum("j,l...->jl...", px.reshape(2), py)
        return result

    def dual_kernel(self, x: Point3, y) -> np.ndarray:
        """
        Misma matriz construida con las funciones duales de grado -n-1:
            M: |x|^(2n+1) |y|^(2n+1) [Z_{-n-1,m} e3]_j(x) [Z_{-n-1,m} e3]_l(y) / (c^2 ||Vec X_{n,m}||^2)
            N: c^2 |x|^(2n+1) |y|^(2n+1) [Vec X_{-n-1,m} e3]_j(x) [Vec X_{-n-1,m} e3]_l(y) / ||Z_{n,m}||^2
        """
        xs = coords(x)
        ys = coords(y)
        check_points(self.domain, *xs)
        check_points(self.domain, *ys)
        rho_x = spherical(*xs)[0]
        rho_y = spherical(*ys)[0]
        if np.any(rho_x == 0.0) or np.any(rho_y == 0.0):
            raise DomainError("La forma dual del núcleo no se evalúa en el origen")
        shape = np.broadcast_shapes(*(np.shape(c) for c in ys))
        result = np.zeros((2, 2) + shape)
        for idx in self.indices:
            n, m, sign = idx.n, idx.m, idx.parity.sign
            c = duality_factor(m)
            if self.operator is Operator.M:
                fx = eval_Z_formula(-n - 1, m, sign, *xs)[1:3]
                fy = eval_Z_formula(-n - 1, m, sign, *ys)[1:3]
                weight = 1.0 / (c * c * self.norms[idx])
            else:
                fx = _vec_x_formula(-n - 1, m, sign, *xs)
                fy = _vec_x_formula(-n - 1, m, sign, *ys)
                weight = c * c / self.norms[idx]
            tx = turn(fx) * rho_x ** (2 * n + 1)
            ty = turn(fy) * rho_y ** (2 * n + 1)
            result += weight * np.einsum("j,l...->jl...", tx.reshape(2), ty)
        return result

    def project_kernel_path(self, f: VectorField, x: Point3, dual: bool = False) -> VecField2:
        """B[f]_j(x) = ∫ Sc(b_j(x, y) conj f(y)) dV(y)"""
        nodes = self.rule.points()
        matrix = self.dual_kernel(x, nodes) if dual else self.kernel(x, nodes)
        values = np.asarray(f(*nodes), dtype=float)
        f_bar = conj(values[-2:])
        out = []
        for j in range(2):
            integrand = sc(quat_mul(matrix[j], f_bar))
            out.append(self.rule.integrate(integrand))
        return VecField2(*out)


def _vec_x_formula(n: int, m: int, sign: int, x0, x1, x2) -> np.ndarray:
    rho, t, phi = spherical(x0, x1, x2)
    return x_components(n, m, sign, HarmonicTable(rho, t, phi, effective_degree(n)))[1:3]


# ============================================
# OPERACIONES DE MÓDULO
# ============================================

def _pair(matrix: np.ndarray) -> Tuple[VecField2, VecField2]:
    return VecField2(float(matrix[0, 0]), float(matrix[0, 1])), VecField2(float(matrix[1, 0]), float(matrix[1, 1]))


def _value(values: np.ndarray, x):
    return VecField2.from_array(values) if isinstance(x, Point3) else values


def kernel_vecM(trunc: KernelTruncation, x: Point3, y: Point3) -> Tuple[VecField2, VecField2]:
    """(b_1, b_2) del núcleo de Vec M"""
    return _pair(BergmanProjector(Operator.M, trunc, rule=_point_rule(trunc)).kernel(x, y))


def kernel_vecM_dual(trunc: KernelTruncation, x: Point3, y: Point3) -> Tuple[VecField2, VecField2]:
    return _pair(BergmanProjector(Operator.M, trunc, rule=_point_rule(trunc)).dual_kernel(x, y))


def kernel_N(trunc: KernelTruncation, x: Point3, y: Point3) -> Tuple[VecField2, VecField2]:
    """(b_1, b_2) del núcleo de N"""
    return _pair(BergmanProjector(Operator.N, trunc, rule=_point_rule(trunc)).kernel(x, y))


def kernel_N_dual(trunc: KernelTruncation, x: Point3, y: Point3) -> Tuple[VecField2, VecField2]:
    return _pair(BergmanProjector(Operator.N, trunc, rule=_point_rule(trunc)).dual_kernel(x, y))


def _point_rule(trunc: KernelTruncation) -> QuadratureRule:
    # los núcleos puntuales no integran
    return build_rule(trunc.domain, 1, 1, 4)


def project_vecM(trunc: KernelTruncation, f: VectorField, rule: Optional[QuadratureRule], x):
    """B_M[f](x) por el camino de coeficientes"""
    projector = BergmanProjector(Operator.M, trunc, rule)
    return _value(projector.project(f, *coords(x)), x)


def project_N(trunc: KernelTruncation, f: VectorField, rule: Optional[QuadratureRule], x):
    """B_N[f](x) por el camino de coeficientes"""
    projector = BergmanProjector(Operator.N, trunc, rule)
    return _value(projector.project(f, *coords(x)), x)


def projector_P(trunc_M: KernelTruncation, trunc_N: KernelTruncation, f: VectorField, rule: Optional[QuadratureRule], x):
    """P = B_M + B_N"""
    if trunc_M.domain is not trunc_N.domain:
        raise DomainError("P necesita truncaciones en el mismo dominio")
    if rule is None:
        rule = rule_for_degree(trunc_M.domain, max(trunc_M.max_effective_degree, trunc_N.max_effective_degree) + 2)
    xs = coords(x)
    total = BergmanProjector(Operator.M, trunc_M, rule).project(f, *xs)
    total = total + BergmanProjector(Operator.N, trunc_N, rule).project(f, *xs)
    return _value(total, x)


def projector_Q(trunc_M: KernelTruncation, trunc_N: KernelTruncation, f: VectorField, rule: Optional[QuadratureRule], x):
    """Q = I - P"""
    xs = coords(x)
    projected = projector_P(trunc_M, trunc_N, f, rule, xs)
    values = np.asarray(f(*xs), dtype=float)[-2:]
    return _value(values - projected, x)


# ============================================
# TABLAS DE ERROR
# ============================================

def sphere_grid(radii: Sequence[float], n_theta: Optional[int] = None, n_phi: Optional[int] = None):
    """Malla de puntos medios (theta, phi) sobre cada esfera; forma (len(radii), n_theta, n_phi)"""
    n_theta = n_theta or settings.GRID_THETA
    n_phi = n_phi or settings.GRID_PHI
    theta = (np.arange(n_theta) + 0.5) * np.pi / n_theta
    phi = (np.arange(n_phi) + 0.5) * 2.0 * np.pi / n_phi
    rho = np.asarray(radii, dtype=float).reshape(-1, 1, 1)
    x0, x1, x2 = cartesian(rho, theta.reshape(1, -1, 1), phi.reshape(1, 1, -1))
    shape = (len(radii), n_theta, n_phi)
    return (
        np.broadcast_to(theta.reshape(1, -1, 1), shape),
        np.broadcast_to(phi.reshape(1, 1, -1), shape),
        tuple(np.broadcast_to(c, shape).copy() for c in (x0, x1, x2)),
    )


def _relative_error(approx: np.ndarray, exact: np.ndarray) -> np.ndarray:
    """max sobre la malla de |B f - f| / max(|f|, guard), por esfera"""
    deviation = np.hypot(*(approx - exact))
    scale = np.maximum(np.hypot(*exact), RELATIVE_GUARD)
    return np.max(deviation / scale, axis=(1, 2))


def _quotient(approx: np.ndarray, exact: np.ndarray) -> np.ndarray:
    """max sobre la malla de |[B f]_1| / max(|f_1|, guard), por esfera"""
    return np.max(np.abs(approx[0]) / np.maximum(np.abs(exact[0]), RELATIVE_GUARD), axis=(1, 2))


def truncation_list(truncations: Sequence[int]) -> List[int]:
    """Lista de N ordenada y sin repetidos; todos >= 0"""
    values = sorted(set(int(n) for n in truncations))
    if not values:
        raise InvalidIndexError("Lista de N vacía")
    if values[0] < 0:
        raise InvalidIndexError(f"N debe ser >= 0 (recibido {values[0]})")
    return values


def error_table(domain, operator, target, truncations: Sequence[int], radii: Sequence[float], rule: Optional[QuadratureRule] = None) -> BergmanTable:
    """
    Una fila por radio y una columna por N. Operador M: error relativo de B_M[Vec f]
    frente a Vec f. Operador N: cociente |[B_N f]_1| / |f_1|.
    Los coeficientes se calculan una vez para el N mayor; los N menores son sumas parciales.
    """
    domain = Domain(domain)
    operator = Operator(operator)
    truncations = truncation_list(truncations)
    trunc = KernelTruncation(domain, truncations[-1])
    _, _, points = sphere_grid(radii)
    check_points(domain, *points)

    field = variant_field(target, vector_part=True)
    projector = BergmanProjector(operator, trunc, rule)
    coefficients = projector.coefficients(field)
    parts = projector.contributions(coefficients, *points)
    exact = field(*points)

    metric = _relative_error if operator is Operator.M else _quotient
    partial = np.zeros_like(exact)
    columns: Dict[int, np.ndarray] = {}
    for position, part in enumerate(parts):
        partial = partial + part
        if position in truncations:
            columns[position] = metric(partial, exact)
            logger.debug("B_%s N=%d: %s", operator.value, position, columns[position])

    values = [[float(columns[n][i]) for n in truncations] for i in range(len(radii))]
    return BergmanTable(
        domain=domain,
        operator=operator.value,
        target=str(getattr(target, "value", target)),
        degrees=truncations,
        radii=[float(r) for r in radii],
        values=values,
    )
