"""
Contragénicas básicas Z_{n,m}^±

Vectoriales en ambos dominios (parte escalar nula) y escalares en el exterior
(m = -n + 1, Z = U_{n,-n-1}^±). Normas cerradas, dualidad con Vec X y
bases normalizadas.
"""
import logging
import math
from fractions import Fraction
from typing import Tuple

import numpy as np

from app.schemas.basis import BasisIndex, Domain, Family
from app.schemas.point import Point3
from app.services.algebra import ReducedQuaternion, VecField2, star, turn
from app.services.harmonics import (
    HarmonicTable,
    coords,
    factorial_ratio,
    is_scalar_contragenic,
    require_nonsingular,
    spherical,
    validate_index,
)
from app.services.legendre import effective_degree
from app.services.monogenic import alpha, norm_vec_X, x_components
from app.utils.errors import InvalidIndexError

logger = logging.getLogger(__name__)


def z_components(n: int, m: int, sign: int, table: HarmonicTable) -> np.ndarray:
    """
    Componentes (Sc, e1, e2) de Z_{n,m}^± para cualquier grado entero.
    El coeficiente es alpha_{n,-m} = alpha_{-n-1,m}.
    """
    if n < 0 and m == -n + 1:
        scalar = np.array(table.U(n, -n - 1, sign))
        zero = np.zeros(table.shape)
        return np.stack([scalar, zero, zero])
    zero = np.zeros(table.shape)
    if m == 0:
        return np.stack([zero, table.U(n, 1, -1), -table.U(n, 1, 1)])
    a = alpha(n, -m)
    e1 = table.U(n, m + 1, -sign) + a * table.U(n, m - 1, -sign)
    e2 = -sign * (table.U(n, m + 1, sign) - a * table.U(n, m - 1, sign))
    return np.stack([zero, e1, e2])


def eval_Z_formula(n: int, m: int, sign: int, x0, x1, x2) -> np.ndarray:
    """Z sin comprobar dominio ni conjunto de índices (p.ej. Z_{-1,1} para los núcleos duales)"""
    rho, t, phi = spherical(x0, x1, x2)
    require_nonsingular(n, rho)
    table = HarmonicTable(rho, t, phi, effective_degree(n))
    return z_components(n, m, sign, table)


def eval_Z_field(idx: BasisIndex, x0, x1, x2) -> np.ndarray:
    validate_index(idx)
    if idx.family is not Family.Z:
        raise InvalidIndexError(f"{idx.label}: se esperaba la familia Z")
    return eval_Z_formula(idx.n, idx.m, idx.parity.sign, x0, x1, x2)


def eval_Z(idx: BasisIndex, p: Point3) -> ReducedQuaternion:
    return ReducedQuaternion.from_array(eval_Z_field(idx, *coords(p)))


def norm_Z(idx: BasisIndex) -> float:
    """
    Vectoriales: 8 pi (n^2+m^2+n) A!/((1+delta_{0,m})(2n+3)(2n+1) B!)
    Escalares:   2 pi (-2n-2)!/((2n+3)(2n+1))
    """
    validate_index(idx)
    if idx.family is not Family.Z:
        raise InvalidIndexError(f"{idx.label}: se esperaba la familia Z")
    n, m = idx.n, idx.m
    if is_scalar_contragenic(idx.domain, n, m):
        return math.pi * float(Fraction(2 * math.factorial(-2 * n - 2), (2 * n + 3) * (2 * n + 1)))
    if idx.domain is Domain.INTERIOR:
        ratio = factorial_ratio(n - 1 + m, n - 1 - m)
    else:
        ratio = factorial_ratio(-n + m, -n - m)
    delta = 1 if m == 0 else 0
    value = Fraction(8 * (n * n + m * m + n), (1 + delta) * (2 * n + 3) * (2 * n + 1)) * ratio
    return math.pi * float(value)


# ============================================
# DUALIDAD
# ============================================

def duality_factor(m: int) -> int:
    return 1 if m == 0 else 2


def dual_from_X(n: int, m: int, sign: int, x0, x1, x2) -> Tuple[np.ndarray, np.ndarray]:
    """
    (forma e3, forma *) construidas a partir de Vec X_{-n-1,m}^±:
        sign c rho^(2n+1) (Vec X) e3      y      -sign c rho^(2n+1) (Vec X)*
    """
    rho, t, phi = spherical(x0, x1, x2)
    require_nonsingular(-1, rho)
    k = -n - 1
    table = HarmonicTable(rho, t, phi, effective_degree(k))
    vec_x = x_components(k, m, sign, table)[1:3]
    factor = sign * duality_factor(m) * rho ** (2 * n + 1)
    return factor * turn(vec_x), -factor * star(vec_x)


def _check_duality_index(n: int, m: int, parity) -> BasisIndex:
    idx = validate_index(BasisIndex.make("Z", n, m, parity))
    if is_scalar_contragenic(idx.domain, n, m):
        raise InvalidIndexError(f"{idx.label}: la dualidad no se aplica a las contragénicas escalares")
    return idx


def duality_residual(n: int, m: int, parity, p: Point3) -> VecField2:
    """Z_{n,m}^±(p) - sign c rho^(2n+1) (Vec X_{-n-1,m}^±(p)) e3"""
    idx = _check_duality_index(n, m, parity)
    x0, x1, x2 = coords(p)
    z = eval_Z_field(idx, x0, x1, x2)[1:3]
    dual, _ = dual_from_X(n, m, idx.parity.sign, x0, x1, x2)
    return VecField2.from_array(z - dual)


def duality_deviation(n: int, m: int, parity, x0, x1, x2) -> Tuple[float, float]:
    """
    Residuos relativos máximos sobre una muestra de puntos, normalizados por
    max |Z| en la muestra: (forma e3, forma *).
    """
    idx = _check_duality_index(n, m, parity)
    z = eval_Z_field(idx, x0, x1, x2)[1:3]
    dual, starred = dual_from_X(n, m, idx.parity.sign, x0, x1, x2)
    scale = float(np.max(np.hypot(z[0], z[1])))
    if scale == 0.0:
        scale = 1.0
    residual = float(np.max(np.hypot(*(z - dual)))) / scale
    star_residual = float(np.max(np.hypot(*(z - starred)))) / scale
    return residual, star_residual


# ============================================
# BASES NORMALIZADAS
# ============================================

def normalized_field(idx: BasisIndex, x0, x1, x2) -> np.ndarray:
    """Vec X / ||Vec X|| (familia X) o Z / ||Z|| (familia Z), como array (3, ...)"""
    if idx.family is Family.X:
        norm = norm_vec_X(idx)
        if norm <= 0.0:
            raise InvalidIndexError(f"{idx.label}: Vec X es idénticamente nula")
        rho, t, phi = spherical(x0, x1, x2)
        require_nonsingular(idx.n, rho)
        values = x_components(idx.n, idx.m, idx.parity.sign, HarmonicTable(rho, t, phi, effective_degree(idx.n)))
        values[0] = 0.0
        return values / math.sqrt(norm)
    if idx.family is Family.Z:
        return eval_Z_field(idx, x0, x1, x2) / math.sqrt(norm_Z(idx))
    raise InvalidIndexError(f"{idx.label}: solo se normalizan Vec X y Z")


def normalized(idx: BasisIndex, p: Point3) -> ReducedQuaternion:
    return ReducedQuaternion.from_array(normalized_field(idx, *coords(p)))


def legendre_phase_sign(n: int, m: int) -> int:
    """
    Factor entre Z de esta librería y las expresiones cerradas con fase de
    Condon-Shortley: (-1)^(m+1) vectoriales, (-1)^(-n-1) escalares.
    """
    if n < 0 and m == -n + 1:
        return -1 if (-n - 1) % 2 else 1
    return -1 if (m + 1) % 2 else 1
