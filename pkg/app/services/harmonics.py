"""
Armónicos esféricos sólidos U_{n,m}^± en B^i y B^e

    U_{n,m}^±(x) = rho^n P_n^m(cos theta) Phi_m^±(phi),  Phi^+ = cos(m phi), Phi^- = sin(m phi)

Incluye la lógica de conjuntos de índices (J, I_H, I_M, I_N), las normas cerradas,
la identidad de tipo Kelvin y la tabla de dimensiones por grado.
"""
import logging
import math
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

import numpy as np

from app.config import settings
from app.schemas.basis import BasisIndex, Domain, Family, Parity
from app.schemas.point import Point3
from app.services.legendre import effective_degree, legendre_table
from app.utils.errors import DomainError, InvalidIndexError

logger = logging.getLogger(__name__)

IndexPair = Tuple[int, Parity]


# ============================================
# COORDENADAS
# ============================================

def spherical(x0, x1, x2) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(rho, t = cos theta, phi) con x = (rho cos theta, rho sin theta cos phi, rho sin theta sin phi)"""
    x0 = np.asarray(x0, dtype=float)
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    rho = np.sqrt(x0 * x0 + x1 * x1 + x2 * x2)
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(rho > 0.0, x0 / np.where(rho > 0.0, rho, 1.0), 1.0)
    t = np.clip(t, -1.0, 1.0)
    phi = np.arctan2(x2, x1)
    return rho, t, phi


def cartesian(rho, theta, phi) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    rho = np.asarray(rho, dtype=float)
    s = np.sin(theta)
    return rho * np.cos(theta), rho * s * np.cos(phi), rho * s * np.sin(phi)


def coords(p) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Coordenadas cartesianas de un Point3 o de una terna de arrays"""
    if isinstance(p, Point3):
        return tuple(np.asarray(c, dtype=float) for c in p.cartesian)
    x0, x1, x2 = p
    return np.asarray(x0, dtype=float), np.asarray(x1, dtype=float), np.asarray(x2, dtype=float)


def require_nonsingular(n: int, rho) -> None:
    """Grados negativos no se evalúan en el origen"""
    if n < 0 and np.any(np.asarray(rho) == 0.0):
        raise DomainError(f"Singularidad en el origen para grado n={n}")


# ============================================
# TABLA DE ARMÓNICOS
# ============================================

class HarmonicTable:
    """
    Todos los U_{n,m}^± necesarios sobre un conjunto de puntos.

    Potencias de rho, tabla de Legendre en t y tabla trigonométrica en phi se
    calculan una vez y se combinan por broadcasting. Con reglas tensoriales
    (rho de forma (R,1,1), t de forma (1,T,1), phi de forma (1,1,A)) cada factor
    se calcula solo sobre su eje.
    """

    def __init__(self, rho, t, phi, nu_max: int, m_max: int = None):
        self.rho = np.asarray(rho, dtype=float)
        self.t = np.asarray(t, dtype=float)
        self.phi = np.asarray(phi, dtype=float)
        self.nu_max = nu_max
        self.m_max = nu_max + 1 if m_max is None else m_max
        self.shape = np.broadcast_shapes(self.rho.shape, self.t.shape, self.phi.shape)
        self._legendre = legendre_table(nu_max, self.m_max, self.t)
        self._cos = [np.cos(m * self.phi) for m in range(self.m_max + 1)]
        self._sin = [np.sin(m * self.phi) for m in range(self.m_max + 1)]
        self._powers: Dict[int, np.ndarray] = {}

    @classmethod
    def from_points(cls, x0, x1, x2, nu_max: int, m_max: int = None) -> "HarmonicTable":
        rho, t, phi = spherical(x0, x1, x2)
        return cls(rho, t, phi, nu_max, m_max)

    @classmethod
    def for_degrees(cls, degrees: Iterable[int], x0, x1, x2) -> "HarmonicTable":
        """Tabla suficiente para U de los grados dados y sus vecinos de orden m+1"""
        nu_max = max(effective_degree(n) for n in degrees)
        return cls.from_points(x0, x1, x2, nu_max)

    def power(self, n: int) -> np.ndarray:
        if n not in self._powers:
            with np.errstate(divide="ignore"):
                self._powers[n] = self.rho ** n
        return self._powers[n]

    def U(self, n: int, m: int, parity) -> np.ndarray:
        """U_{n,m}^± sin validar índice; cero si m > grado efectivo o si (m=0, -)"""
        sign = parity if isinstance(parity, int) else Parity.parse(parity).sign
        if m < 0:
            raise InvalidIndexError(f"Orden negativo m={m}")
        nu = effective_degree(n)
        if m > nu:
            return np.zeros(self.shape)
        if nu > self.nu_max:
            raise InvalidIndexError(f"Grado efectivo {nu} fuera de la tabla (max {self.nu_max})")
        trig = self._cos[m] if sign > 0 else self._sin[m]
        return np.broadcast_to(self.power(n) * self._legendre[nu, m] * trig, self.shape)


# ============================================
# CONJUNTOS DE ÍNDICES
# ============================================

def _degree_range_ok(family: Family, domain: Domain, n: int) -> bool:
    if domain is Domain.INTERIOR:
        return n >= (1 if family is Family.Z else 0)
    # U_{-1,0} = 1/rho se evalúa pero no entra en normas ni Gram
    return n <= (-1 if family is Family.U else -2)


def order_bound(family: Family, domain: Domain, n: int) -> int:
    """Mayor m admitido (para Z, el mayor m vectorial)"""
    interior = domain is Domain.INTERIOR
    if family is Family.U:
        return n if interior else -n - 1
    if family is Family.Z:
        return n - 1 if interior else -n
    return n + 1 if interior else -n - 2


def is_scalar_contragenic(domain: Domain, n: int, m: int) -> bool:
    return domain is Domain.EXTERIOR and m == -n + 1


def validate_index(idx: BasisIndex) -> BasisIndex:
    """Comprueba J^sigma, los conjuntos I y las combinaciones excluidas"""
    if idx.m < 0:
        raise InvalidIndexError(f"{idx.label}: orden negativo")
    if idx.m == 0 and idx.parity is Parity.MINUS:
        raise InvalidIndexError(f"{idx.label}: m=0 con paridad '-' está excluido")
    if not _degree_range_ok(idx.family, idx.domain, idx.n):
        raise InvalidIndexError(f"{idx.label}: grado n={idx.n} fuera de J^{idx.domain.short}")
    if effective_degree(idx.n) + 1 > settings.MAX_DEGREE:
        raise InvalidIndexError(f"{idx.label}: grado por encima del máximo soportado")
    bound = order_bound(idx.family, idx.domain, idx.n)
    if idx.m > bound and not (idx.family is Family.Z and is_scalar_contragenic(idx.domain, idx.n, idx.m)):
        raise InvalidIndexError(f"{idx.label}: orden m={idx.m} fuera del conjunto admitido (max {bound})")
    return idx


def index_range(family, domain, n: int) -> List[IndexPair]:
    """
    Enumeración (m, paridad) de un grado, con m creciente y '+' antes que '-'.
    Para Ytilde se omiten los índices con |beta| = 1 (Ytilde idénticamente nula):
    todo el grado 0 y los órdenes interiores m = n + 1.
    """
    family = Family(family)
    domain = Domain(domain)
    if not _degree_range_ok(family, domain, n):
        raise InvalidIndexError(f"Grado n={n} fuera de J^{domain.short} para la familia {family.value}")
    orders = list(range(order_bound(family, domain, n) + 1))
    if family is Family.Z and domain is Domain.EXTERIOR:
        orders.append(-n + 1)
    if family is Family.Y_TILDE:
        orders = [m for m in orders if abs(n - 2 * m * m + 1) != abs((n + 1) * (2 * n + 1))]
    pairs: List[IndexPair] = []
    for m in orders:
        pairs.append((m, Parity.PLUS))
        if m > 0:
            pairs.append((m, Parity.MINUS))
    return pairs


def indices_for(family, domain, degrees: Iterable[int], conjugate: bool = False) -> List[BasisIndex]:
    """Índices de varios grados, en orden"""
    return [
        BasisIndex.make(family, n, m, parity, domain=domain, conjugate=conjugate)
        for n in degrees
        for m, parity in index_range(family, domain, n)
    ]


def degrees_for(family, domain, max_degree: int) -> List[int]:
    """Grados 0..D (1..D para Z) en el interior, -2..-D en el exterior"""
    family = Family(family)
    if Domain(domain) is Domain.INTERIOR:
        return list(range(1 if family is Family.Z else 0, max_degree + 1))
    return list(range(-2, -max(2, max_degree) - 1, -1))


# ============================================
# EVALUACIÓN
# ============================================

def eval_U_field(idx: BasisIndex, x0, x1, x2) -> np.ndarray:
    validate_index(idx)
    rho, t, phi = spherical(x0, x1, x2)
    require_nonsingular(idx.n, rho)
    table = HarmonicTable(rho, t, phi, effective_degree(idx.n))
    return np.array(table.U(idx.n, idx.m, idx.parity.sign))


def eval_U(idx: BasisIndex, p: Point3) -> float:
    """U_{n,m}^±(p)"""
    if idx.family is not Family.U:
        raise InvalidIndexError(f"{idx.label}: se esperaba la familia U")
    return float(eval_U_field(idx, *coords(p)))


def kelvin_pair_check(n: int, m: int, parity, p: Point3) -> float:
    """U_{n,m}^±(p) - rho^(2n+1) U_{-n-1,m}^±(p)"""
    if n < 1:
        raise InvalidIndexError(f"La identidad de Kelvin se comprueba para n >= 1 (n={n})")
    inner_idx = BasisIndex.make("U", n, m, parity)
    outer_idx = BasisIndex.make("U", -n - 1, m, parity)
    rho = p.rho
    if rho == 0.0:
        raise DomainError("La identidad de Kelvin requiere rho > 0")
    return eval_U(inner_idx, p) - rho ** (2 * n + 1) * eval_U(outer_idx, p)


# ============================================
# NORMAS
# ============================================

def factorial_ratio(a: int, b: int) -> Fraction:
    """a!/b! exacto"""
    return Fraction(math.factorial(a), math.factorial(b))


def norm_U(idx: BasisIndex) -> float:
    """||U_{n,m}^±||^2 = 2 pi (1+delta_{0,m}) A!/((2n+3)(2n+1) B!)"""
    validate_index(idx)
    n, m = idx.n, idx.m
    if n == -1:
        raise InvalidIndexError(f"{idx.label}: no es de cuadrado integrable en B^e")
    if idx.domain is Domain.INTERIOR:
        a, b = n + m, n - m
    else:
        a, b = -n - 1 + m, -n - 1 - m
    delta = 1 if m == 0 else 0
    value = Fraction(2 * (1 + delta), (2 * n + 3) * (2 * n + 1)) * factorial_ratio(a, b)
    return math.pi * float(value)


# ============================================
# DIMENSIONES
# ============================================

class Space(str, Enum):
    """Espacios de la tabla de dimensiones por grado"""
    H = "H"
    H3 = "H3"
    M = "M"
    M_CAP_MBAR = "M&Mbar"
    M_PLUS_MBAR = "M+Mbar"
    N = "N"


def expected_dimension(space, n: int) -> int:
    """Dimensión tabulada del espacio homogéneo de grado n (n=0, n>=1 o n<=-2)"""
    space = Space(space)
    if n == -1:
        raise InvalidIndexError(f"Grado n={n} sin espacio asociado")
    interior = n >= 0
    if space is Space.H:
        return 2 * n + 1 if interior else -(2 * n + 1)
    if space is Space.H3:
        return 3 * (2 * n + 1) if interior else -3 * (2 * n + 1)
    if space is Space.M:
        return 2 * n + 3 if interior else -(2 * n + 3)
    if space is Space.M_CAP_MBAR:
        return 3 if n == 0 else (2 if interior else 0)
    if space is Space.M_PLUS_MBAR:
        return 3 if n == 0 else (4 * n + 4 if interior else -(4 * n + 6))
    return 0 if n == 0 else (2 * n - 1 if interior else -(2 * n - 3))


def dimension(space, n: int) -> int:
    """Dimensión obtenida contando las bases construidas"""
    space = Space(space)
    domain = Domain.for_degree(n)
    if space is Space.H:
        return len(index_range(Family.U, domain, n))
    if space is Space.H3:
        return 3 * len(index_range(Family.U, domain, n))
    if space is Space.M:
        return len(index_range(Family.X, domain, n))
    if space is Space.M_PLUS_MBAR:
        return len(index_range(Family.Y, domain, n)) + len(index_range(Family.Y_TILDE, domain, n))
    if space is Space.M_CAP_MBAR:
        return 2 * dimension(Space.M, n) - dimension(Space.M_PLUS_MBAR, n)
    if n == 0:
        return 0
    return len(index_range(Family.Z, domain, n))
