"""
Schema de punto - coordenadas cartesianas con vista esférica
x = (rho cos(theta), rho sin(theta) cos(phi), rho sin(theta) sin(phi))
"""
import math
from typing import Sequence, Tuple

from pydantic import BaseModel, Field


class Point3(BaseModel):
    """Punto de R^3"""
    x0: float = Field(..., description="Coordenada x0 (eje polar)")
    x1: float = Field(..., description="Coordenada x1")
    x2: float = Field(..., description="Coordenada x2")

    class Config:
        frozen = True
        json_schema_extra = {"example": {"x0": 0.1, "x1": 0.2, "x2": 0.3}}

    @classmethod
    def of(cls, coords: Sequence[float]) -> "Point3":
        x0, x1, x2 = (float(c) for c in coords)
        return cls(x0=x0, x1=x1, x2=x2)

    @classmethod
    def parse(cls, text: str) -> "Point3":
        """Leer 'x0,x1,x2'"""
        parts = [p for p in text.replace(" ", "").split(",") if p]
        if len(parts) != 3:
            raise ValueError(f"Se esperaban 3 coordenadas, recibido: {text!r}")
        return cls.of(float(p) for p in parts)

    @classmethod
    def from_spherical(cls, rho: float, theta: float, phi: float) -> "Point3":
        s = math.sin(theta)
        return cls(x0=rho * math.cos(theta), x1=rho * s * math.cos(phi), x2=rho * s * math.sin(phi))

    @property
    def cartesian(self) -> Tuple[float, float, float]:
        return (self.x0, self.x1, self.x2)

    @property
    def rho(self) -> float:
        return math.sqrt(self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2)

    @property
    def theta(self) -> float:
        r = self.rho
        if r == 0.0:
            return 0.0
        return math.acos(max(-1.0, min(1.0, self.x0 / r)))

    @property
    def phi(self) -> float:
        return math.atan2(self.x2, self.x1) % (2.0 * math.pi)

    @property
    def spherical(self) -> Tuple[float, float, float]:
        return (self.rho, self.theta, self.phi)
