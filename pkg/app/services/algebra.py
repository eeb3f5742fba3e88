"""
Álgebra de cuaterniones reducidos A = R + Re1 + Re2 y del subespacio A2 = Re1 + Re2

Los valores puntuales usan ReducedQuaternion / VecField2. Los campos evaluados en
mallas son arrays numpy con el eje de componentes delante: (3, ...) para A,
(2, ...) para A2 y (4, ...) para el producto completo (con e3).
"""
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np


@dataclass(frozen=True)
class ReducedQuaternion:
    """Valor a0 + a1 e1 + a2 e2"""
    a0: float
    a1: float
    a2: float

    @classmethod
    def from_array(cls, values) -> "ReducedQuaternion":
        a0, a1, a2 = (float(v) for v in np.asarray(values, dtype=float).reshape(3))
        return cls(a0, a1, a2)

    def as_array(self) -> np.ndarray:
        return np.array([self.a0, self.a1, self.a2])

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.a0, self.a1, self.a2)

    def __add__(self, other: "ReducedQuaternion") -> "ReducedQuaternion":
        return ReducedQuaternion(self.a0 + other.a0, self.a1 + other.a1, self.a2 + other.a2)

    def __sub__(self, other: "ReducedQuaternion") -> "ReducedQuaternion":
        return ReducedQuaternion(self.a0 - other.a0, self.a1 - other.a1, self.a2 - other.a2)

    def scale(self, factor: float) -> "ReducedQuaternion":
        return ReducedQuaternion(factor * self.a0, factor * self.a1, factor * self.a2)

    @property
    def magnitude(self) -> float:
        return float(np.sqrt(self.a0 ** 2 + self.a1 ** 2 + self.a2 ** 2))


@dataclass(frozen=True)
class VecField2:
    """Valor v1 e1 + v2 e2 de A2"""
    v1: float
    v2: float

    @classmethod
    def from_array(cls, values) -> "VecField2":
        v1, v2 = (float(v) for v in np.asarray(values, dtype=float).reshape(2))
        return cls(v1, v2)

    def as_array(self) -> np.ndarray:
        return np.array([self.v1, self.v2])

    def as_quaternion(self) -> ReducedQuaternion:
        return ReducedQuaternion(0.0, self.v1, self.v2)

    @property
    def magnitude(self) -> float:
        return float(np.hypot(self.v1, self.v2))


Quaternionish = Union[ReducedQuaternion, VecField2, np.ndarray, tuple, list]


def as_full(q: Quaternionish) -> np.ndarray:
    """
    Embebe un valor en H como array (4, ...).
    Acepta ReducedQuaternion, VecField2 o arrays con 2, 3 o 4 componentes.
    """
    if isinstance(q, ReducedQuaternion):
        return np.array([q.a0, q.a1, q.a2, 0.0])
    if isinstance(q, VecField2):
        return np.array([0.0, q.v1, q.v2, 0.0])
    arr = np.asarray(q, dtype=float)
    k = arr.shape[0]
    if k == 4:
        return arr
    zero = np.zeros_like(arr[0])
    if k == 3:
        return np.stack([arr[0], arr[1], arr[2], zero])
    if k == 2:
        return np.stack([zero, arr[0], arr[1], zero])
    raise ValueError(f"Número de componentes no soportado: {k}")


def quat_mul(p: Quaternionish, q: Quaternionish) -> np.ndarray:
    """Producto de cuaterniones (e_i^2 = -1, e1 e2 = e3); devuelve las 4 componentes"""
    a = as_full(p)
    b = as_full(q)
    a0, a1, a2, a3 = a[0], a[1], a[2], a[3]
    b0, b1, b2, b3 = b[0], b[1], b[2], b[3]
    return np.stack([
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ])


def sc(q: Quaternionish):
    """Parte escalar"""
    if isinstance(q, ReducedQuaternion):
        return q.a0
    if isinstance(q, VecField2):
        return 0.0
    return np.asarray(q, dtype=float)[0]


def vec(q: Quaternionish):
    """Parte vectorial en A2"""
    if isinstance(q, ReducedQuaternion):
        return VecField2(q.a1, q.a2)
    if isinstance(q, VecField2):
        return q
    arr = np.asarray(q, dtype=float)
    return arr[1:3] if arr.shape[0] >= 3 else arr


def conj(q: Quaternionish):
    """Conjugado Sc q - Vec q"""
    if isinstance(q, ReducedQuaternion):
        return ReducedQuaternion(q.a0, -q.a1, -q.a2)
    if isinstance(q, VecField2):
        return VecField2(-q.v1, -q.v2)
    arr = np.asarray(q, dtype=float)
    if arr.shape[0] == 2:
        return -arr
    out = -arr
    out[0] = arr[0]
    return out


def star(v: Union[VecField2, np.ndarray]):
    """Involución f* = f2 e1 + f1 e2 = -e1 f e2"""
    if isinstance(v, VecField2):
        return VecField2(v.v2, v.v1)
    arr = np.asarray(v, dtype=float)
    return np.stack([arr[1], arr[0]])


def turn(v: Union[VecField2, np.ndarray]):
    """Producto a la derecha por e3: v e3 = v2 e1 - v1 e2"""
    if isinstance(v, VecField2):
        return VecField2(v.v2, -v.v1)
    arr = np.asarray(v, dtype=float)
    return np.stack([arr[1], -arr[0]])
