"""
Monogénicas básicas X_{n,m}^± = dU_{n+1,m}^±, ambigénicas Y / Ytilde,
operadores de Cauchy-Riemann por diferencias finitas y normas cerradas
"""
import logging
import math
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from app.config import settings
from app.schemas.basis import BasisIndex, Domain, Family
from app.schemas.point import Point3
from app.services.algebra import ReducedQuaternion, as_full, conj, quat_mul
from app.services.harmonics import (
    HarmonicTable,
    coords,
    factorial_ratio,
    indices_for,
    norm_U,
    require_nonsingular,
    spherical,
    validate_index,
)
from app.services.legendre import effective_degree
from app.utils.errors import InvalidIndexError

logger = logging.getLogger(__name__)

# Campo A-valuado: (x0, x1, x2) -> array (3, ...)
Field = Callable[..., np.ndarray]

E1 = np.array([0.0, 1.0, 0.0, 0.0])
E2 = np.array([0.0, 0.0, 1.0, 0.0])


def alpha(n: int, m: int) -> int:
    """alpha_{n,m} = (n+m)(n+m+1)"""
    return (n + m) * (n + m + 1)


def beta(n: int, m: int) -> float:
    """beta_{n,m} = (n - 2m^2 + 1)/((n+1)(2n+1))"""
    return (n - 2 * m * m + 1) / ((n + 1) * (2 * n + 1))


# ============================================
# FUNCIÓN 1: X EN COORDENADAS
# ============================================

def x_components(n: int, m: int, sign: int, table: HarmonicTable) -> np.ndarray:
    """
    Componentes (Sc, e1, e2) de X_{n,m}^± a partir de los U del mismo grado.
    U_{n,-1} y U_{n,nu+1} no aparecen: m = 0 se trata aparte y m > nu da cero.
    """
    scalar = (n + m + 1) * table.U(n, m, sign)
    if m == 0:
        e1 = table.U(n, 1, 1)
        e2 = table.U(n, 1, -1)
    else:
        a = alpha(n, m)
        e1 = 0.5 * (table.U(n, m + 1, sign) - a * table.U(n, m - 1, sign))
        e2 = sign * 0.5 * (table.U(n, m + 1, -sign) + a * table.U(n, m - 1, -sign))
    return np.stack([scalar, e1, e2])


def _table_for(n: int, x0, x1, x2) -> HarmonicTable:
    rho, t, phi = spherical(x0, x1, x2)
    require_nonsingular(n, rho)
    return HarmonicTable(rho, t, phi, effective_degree(n))


def eval_X_field(idx: BasisIndex, x0, x1, x2) -> np.ndarray:
    """X (o su conjugado si idx.conjugate) como array (3, ...)"""
    validate_index(idx)
    values = x_components(idx.n, idx.m, idx.parity.sign, _table_for(idx.n, x0, x1, x2))
    return conj(values) if idx.conjugate else values


def eval_X(idx: BasisIndex, p: Point3) -> ReducedQuaternion:
    if idx.family is not Family.X:
        raise InvalidIndexError(f"{idx.label}: se esperaba la familia X")
    return ReducedQuaternion.from_array(eval_X_field(idx, *coords(p)))


# ============================================
# FUNCIÓN 2: AMBIGÉNICAS
# ============================================

def y_components(n: int, m: int, sign: int, table: HarmonicTable, tilde: bool) -> np.ndarray:
    values = x_components(n, m, sign, table)
    if not tilde:
        return values
    return conj(values) - beta(n, m) * values


def eval_Y_field(idx: BasisIndex, x0, x1, x2) -> np.ndarray:
    validate_index(idx)
    if idx.family not in (Family.Y, Family.Y_TILDE):
        raise InvalidIndexError(f"{idx.label}: se esperaba la familia Y o Ytilde")
    table = _table_for(idx.n, x0, x1, x2)
    values = y_components(idx.n, idx.m, idx.parity.sign, table, idx.family is Family.Y_TILDE)
    return conj(values) if idx.conjugate else values


def eval_Y(idx: BasisIndex, p: Point3) -> ReducedQuaternion:
    """Y = X; Ytilde = conj(X) - beta X"""
    return ReducedQuaternion.from_array(eval_Y_field(idx, *coords(p)))


# ============================================
# FUNCIÓN 3: OPERADORES DE CAUCHY-RIEMANN
# ============================================

def _partials(f: Field, p, h: float):
    x0, x1, x2 = coords(p)
    d0 = (np.asarray(f(x0 + h, x1, x2)) - np.asarray(f(x0 - h, x1, x2))) / (2 * h)
    d1 = (np.asarray(f(x0, x1 + h, x2)) - np.asarray(f(x0, x1 - h, x2))) / (2 * h)
    d2 = (np.asarray(f(x0, x1, x2 + h)) - np.asarray(f(x0, x1, x2 - h))) / (2 * h)
    return d0, d1, d2


def dbar_fd(f: Field, p, h: Optional[float] = None) -> np.ndarray:
    """Diferencias centrales de dbar f = df/dx0 + e1 df/dx1 + e2 df/dx2 (productos a la izquierda)"""
    h = h or settings.FD_STEP
    d0, d1, d2 = _partials(f, p, h)
    return as_full(d0) + quat_mul(E1, d1) + quat_mul(E2, d2)


def d_fd(f: Field, p, h: Optional[float] = None) -> np.ndarray:
    """Diferencias centrales de d f = df/dx0 - e1 df/dx1 - e2 df/dx2"""
    h = h or settings.FD_STEP
    d0, d1, d2 = _partials(f, p, h)
    return as_full(d0) - quat_mul(E1, d1) - quat_mul(E2, d2)


def field_of(idx: BasisIndex) -> Field:
    """Campo (x0, x1, x2) -> array de un índice X / Y / Ytilde"""
    if idx.family is Family.X:
        return lambda x0, x1, x2: eval_X_field(idx, x0, x1, x2)
    return lambda x0, x1, x2: eval_Y_field(idx, x0, x1, x2)


def appell_check(n: int, m: int, parity, p, h: Optional[float] = None) -> np.ndarray:
    """d X_{n,m}^± - 2(n+m+1) X_{n-1,m}^± en p (4 componentes)"""
    interior_ok = n >= 1 and 0 <= m <= n
    exterior_ok = n <= -3 and 0 <= m <= -n - 2
    if not (interior_ok or exterior_ok):
        raise InvalidIndexError(f"Propiedad de Appell no aplicable a (n={n}, m={m})")
    idx = validate_index(BasisIndex.make("X", n, m, parity))
    lower = validate_index(BasisIndex.make("X", n - 1, m, parity))
    derivative = d_fd(field_of(idx), p, h)
    expected = 2 * (n + m + 1) * eval_X_field(lower, *coords(p))
    return derivative - as_full(expected)


# ============================================
# FUNCIÓN 4: NORMAS
# ============================================

def _x_factorials(idx: BasisIndex) -> Fraction:
    n, m = idx.n, idx.m
    if idx.domain is Domain.INTERIOR:
        return factorial_ratio(n + 1 + m, n + 1 - m)
    return factorial_ratio(-n - 2 + m, -n - 2 - m)


def norm_X(idx: BasisIndex) -> float:
    """||X||^2 = 2 pi (n+1)(delta_{0,m}+1) A!/((2n+3) B!)"""
    validate_index(idx)
    n = idx.n
    delta = 1 if idx.m == 0 else 0
    value = Fraction(2 * (n + 1) * (delta + 1), 2 * n + 3) * _x_factorials(idx)
    return math.pi * float(value)


def norm_vec_X(idx: BasisIndex) -> float:
    """||Vec X||^2 = 2 pi (n^2+m^2+n)(delta_{0,m}+1) A!/((2n+3)(2n+1) B!); 0 si la parte vectorial se anula"""
    validate_index(idx)
    n, m = idx.n, idx.m
    delta = 1 if m == 0 else 0
    value = Fraction(2 * (n * n + m * m + n) * (delta + 1), (2 * n + 3) * (2 * n + 1)) * _x_factorials(idx)
    return math.pi * float(value)


def norm_Y_tilde(idx: BasisIndex) -> float:
    """||Ytilde||^2 = (1 - beta^2) ||X||^2"""
    validate_index(idx)
    b = beta(idx.n, idx.m)
    return (1.0 - b * b) * norm_X(idx)


def mixed_inner_XXbar(first: BasisIndex, second: Optional[BasisIndex] = None) -> float:
    """
    <conj X_1, X_2>. Cero si cambian grado, orden o paridad.
    Exterior: forma cerrada; interior: ||Sc X||^2 - ||Vec X||^2.
    """
    second = second or first
    validate_index(first)
    validate_index(second)
    if (first.domain, first.n, first.m, first.parity) != (second.domain, second.n, second.m, second.parity):
        return 0.0
    n, m = first.n, first.m
    delta = 1 if m == 0 else 0
    if first.domain is Domain.EXTERIOR:
        value = Fraction(2 * (n - 2 * m * m + 1) * (1 + delta), (2 * n + 3) * (2 * n + 1))
        return math.pi * float(value * factorial_ratio(-n + m - 2, -n - m - 2))
    scalar = 0.0
    if m <= n:
        scalar = (n + m + 1) ** 2 * norm_U(BasisIndex.make("U", n, m, first.parity))
    return scalar - norm_vec_X(first)


def intersection_dimension(domain, n: int, rule) -> int:
    """
    dim(M ∩ conj M)(n) = 2 dim M(n) - rango de la Gram de {X} ∪ {conj X}.
    El rango se mide sobre la matriz de correlaciones (diagonal unidad).
    """
    from app.services.quadrature import gram

    domain = Domain(domain)
    xs = indices_for(Family.X, domain, [n])
    xbars = indices_for(Family.X, domain, [n], conjugate=True)
    matrix = gram(xs + xbars, rule).matrix
    scale = np.sqrt(np.diag(matrix))
    correlation = matrix / np.outer(scale, scale)
    rank = int(np.linalg.matrix_rank(correlation, tol=1e-8, hermitian=True))
    logger.debug("Grado %d (%s): rango %d de %d", n, domain.value, rank, len(xs) + len(xbars))
    return 2 * len(xs) - rank
