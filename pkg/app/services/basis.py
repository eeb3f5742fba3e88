"""
Evaluación y normas de cualquier BasisIndex (U, X, Y, Ytilde, Z)
"""
from typing import Iterable

import numpy as np

from app.schemas.basis import BasisIndex, Family
from app.schemas.point import Point3
from app.services.algebra import ReducedQuaternion, conj
from app.services.contragenic import norm_Z, z_components
from app.services.harmonics import HarmonicTable, coords, norm_U, require_nonsingular, spherical, validate_index
from app.services.legendre import effective_degree
from app.services.monogenic import norm_X, norm_Y_tilde, x_components, y_components


def table_for(indices: Iterable[BasisIndex], x0, x1, x2) -> HarmonicTable:
    """Una sola tabla para todos los índices sobre los mismos puntos"""
    indices = list(indices)
    rho, t, phi = spherical(x0, x1, x2)
    for n in {idx.n for idx in indices}:
        require_nonsingular(n, rho)
    return HarmonicTable(rho, t, phi, max(effective_degree(idx.n) for idx in indices))


def components(idx: BasisIndex, table: HarmonicTable) -> np.ndarray:
    """Valores (3, ...) de un índice sobre una tabla ya construida"""
    sign = idx.parity.sign
    if idx.family is Family.U:
        scalar = np.array(table.U(idx.n, idx.m, sign))
        zero = np.zeros(table.shape)
        values = np.stack([scalar, zero, zero])
    elif idx.family is Family.X:
        values = x_components(idx.n, idx.m, sign, table)
    elif idx.family in (Family.Y, Family.Y_TILDE):
        values = y_components(idx.n, idx.m, sign, table, idx.family is Family.Y_TILDE)
    else:
        values = z_components(idx.n, idx.m, sign, table)
    return conj(values) if idx.conjugate else values


def basis_field(idx: BasisIndex, x0, x1, x2) -> np.ndarray:
    validate_index(idx)
    return components(idx, table_for([idx], x0, x1, x2))


def evaluate(idx: BasisIndex, p: Point3) -> ReducedQuaternion:
    """Valor de cualquier función base en un punto"""
    return ReducedQuaternion.from_array(basis_field(idx, *coords(p)))


def closed_norm(idx: BasisIndex) -> float:
    """Norma L2 al cuadrado por fórmula cerrada (la conjugación no la cambia)"""
    if idx.family is Family.U:
        return norm_U(idx)
    if idx.family in (Family.X, Family.Y):
        return norm_X(idx)
    if idx.family is Family.Y_TILDE:
        return norm_Y_tilde(idx)
    return norm_Z(idx)
