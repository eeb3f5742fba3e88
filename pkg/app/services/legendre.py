"""
Funciones asociadas de Legendre P_n^m(t)

Convención de Hobson SIN fase de Condon-Shortley:
    P_n^m(t) = (1 - t^2)^(m/2) d^m/dt^m P_n(t)
Grado negativo por reducción P_{-n}^m = P_{n-1}^m. Valor 0 si m > grado efectivo.
Evaluación por recurrencia ascendente en el grado a partir de P_m^m.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from app.config import settings
from app.utils.errors import DomainError, InvalidIndexError

logger = logging.getLogger(__name__)


def effective_degree(n: int) -> int:
    """nu = n si n >= 0, nu = -n - 1 si n < 0"""
    return n if n >= 0 else -n - 1


@dataclass(frozen=True)
class LegendreIndex:
    """Grado entero n (cualquier signo) y orden m >= 0"""
    n: int
    m: int

    @property
    def nu(self) -> int:
        return effective_degree(self.n)

    @property
    def vanishes(self) -> bool:
        return self.m > self.nu


def _check_argument(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1.0 + settings.DOMAIN_TOL):
        raise DomainError(f"Argumento de Legendre fuera de [-1, 1]: max |t| = {np.max(np.abs(t)):.6g}")
    return np.clip(t, -1.0, 1.0)


def _check_order(nu: int, m: int) -> None:
    if m < 0:
        raise InvalidIndexError(f"Orden negativo m={m}: use legendre_p_neg_order")
    if nu > settings.MAX_DEGREE:
        raise InvalidIndexError(f"Grado efectivo {nu} por encima del máximo soportado {settings.MAX_DEGREE}")


def legendre_table(nu_max: int, m_max: int, t) -> np.ndarray:
    """
    Tabla completa P_nu^m(t) para 0 <= nu <= nu_max, 0 <= m <= m_max.
    Devuelve un array de forma (nu_max + 1, m_max + 1, *t.shape); las entradas
    con m > nu son cero.
    """
    _check_order(nu_max, 0)
    if m_max < 0:
        raise InvalidIndexError(f"Orden máximo negativo: {m_max}")
    t = _check_argument(t)
    s = np.sqrt(np.clip(1.0 - t * t, 0.0, None))
    table = np.zeros((nu_max + 1, m_max + 1) + t.shape)

    diagonal = np.ones_like(t)
    for m in range(min(m_max, nu_max) + 1):
        if m > 0:
            diagonal = (2 * m - 1) * s * diagonal
        table[m, m] = diagonal
        if m + 1 <= nu_max:
            table[m + 1, m] = (2 * m + 1) * t * diagonal
        for k in range(m + 1, nu_max):
            table[k + 1, m] = ((2 * k + 1) * t * table[k, m] - (k + m) * table[k - 1, m]) / (k - m + 1)
    return table


def legendre_p(n: int, m: int, t):
    """
    P_n^m(t) para grado entero n (negativo por reducción) y orden m >= 0.
    Escalar si t es escalar, array en otro caso.
    """
    nu = effective_degree(n)
    _check_order(nu, m)
    t_arr = _check_argument(t)
    if m > nu:
        value = np.zeros_like(t_arr)
    else:
        value = legendre_table(nu, m, t_arr)[nu, m]
    return float(value) if value.ndim == 0 else value


def legendre_p_neg_order(n: int, m: int, t):
    """P_n^{-m}(t) = (n-m)!/(n+m)! P_n^m(t), solo para 0 <= m <= n"""
    if n < 0 or m < 0 or m > n:
        raise InvalidIndexError(f"P_n^(-m) solo se define aquí para 0 <= m <= n (n={n}, m={m})")
    factor = math.factorial(n - m) / math.factorial(n + m)
    return factor * legendre_p(n, m, t)
