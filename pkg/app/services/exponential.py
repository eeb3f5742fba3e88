"""
Exponencial monogénica

    E(x) = e^x0 (cos a cos b + (sin a cos b e1 + cos a sin b e2)/sqrt(2)),  a = x1/sqrt(2), b = x2/sqrt(2)
    E*(x0, x1, x2) = E(-x0, x1, x2)
"""
from enum import Enum

import numpy as np

from app.schemas.point import Point3
from app.services.algebra import ReducedQuaternion
from app.services.harmonics import coords

SQRT2 = np.sqrt(2.0)


class ExpVariant(str, Enum):
    E = "E"
    ESTAR = "Estar"


def exp_field(x0, x1, x2) -> np.ndarray:
    """E como array (3, ...)"""
    x0 = np.asarray(x0, dtype=float)
    a = np.asarray(x1, dtype=float) / SQRT2
    b = np.asarray(x2, dtype=float) / SQRT2
    growth = np.exp(x0)
    return np.stack([
        growth * np.cos(a) * np.cos(b),
        growth * np.sin(a) * np.cos(b) / SQRT2,
        growth * np.cos(a) * np.sin(b) / SQRT2,
    ])


def exp_star_field(x0, x1, x2) -> np.ndarray:
    """E* como array (3, ...); no es monogénica"""
    return exp_field(-np.asarray(x0, dtype=float), x1, x2)


def vec_exp_field(x0, x1, x2) -> np.ndarray:
    return exp_field(x0, x1, x2)[1:3]


def vec_exp_star_field(x0, x1, x2) -> np.ndarray:
    return exp_star_field(x0, x1, x2)[1:3]


def variant_field(variant, vector_part: bool = False):
    variant = ExpVariant(variant)
    if variant is ExpVariant.E:
        return vec_exp_field if vector_part else exp_field
    return vec_exp_star_field if vector_part else exp_star_field


def monogenic_exp(p: Point3, variant=ExpVariant.E) -> ReducedQuaternion:
    """E(p) o E*(p)"""
    return ReducedQuaternion.from_array(variant_field(variant)(*coords(p)))
