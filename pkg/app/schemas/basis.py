"""
Schemas de índices - Familias, dominios, paridades e índices de las bases
"""
from enum import Enum
from typing import Optional, Union

from pydantic import BaseModel, Field


class Domain(str, Enum):
    """Interior o exterior de la bola unidad"""
    INTERIOR = "interior"
    EXTERIOR = "exterior"

    @classmethod
    def for_degree(cls, n: int) -> "Domain":
        """Dominio natural de un grado (n >= 0 interior, n < 0 exterior)"""
        return cls.INTERIOR if n >= 0 else cls.EXTERIOR

    @property
    def short(self) -> str:
        return "i" if self is Domain.INTERIOR else "e"


class Family(str, Enum):
    """Familias de funciones base"""
    U = "U"
    X = "X"
    Y = "Y"
    Y_TILDE = "Ytilde"
    Z = "Z"


class Parity(str, Enum):
    """Superíndice ± (cos / sin en phi)"""
    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self) -> int:
        return 1 if self is Parity.PLUS else -1

    @property
    def flipped(self) -> "Parity":
        return Parity.MINUS if self is Parity.PLUS else Parity.PLUS

    @property
    def symbol(self) -> str:
        return "+" if self is Parity.PLUS else "-"

    @classmethod
    def parse(cls, value: Union[str, int, "Parity"]) -> "Parity":
        if isinstance(value, Parity):
            return value
        if value in ("+", "plus", 1, "1"):
            return cls.PLUS
        if value in ("-", "minus", -1, "-1"):
            return cls.MINUS
        raise ValueError(f"Paridad desconocida: {value!r}")


class BasisIndex(BaseModel):
    """
    Índice de una función base (familia, dominio, n, m, paridad).
    La validez respecto a J / I se comprueba en harmonics.validate_index.
    """
    family: Family = Field(..., description="Familia U, X, Y, Ytilde o Z")
    domain: Domain = Field(..., description="interior o exterior")
    n: int = Field(..., description="Grado de homogeneidad")
    m: int = Field(..., description="Orden")
    parity: Parity = Field(Parity.PLUS, description="Paridad ±")
    conjugate: bool = Field(False, description="Evaluar la conjugada (X̄)")

    class Config:
        frozen = True
        json_schema_extra = {
            "example": {
                "family": "Z",
                "domain": "exterior",
                "n": -2,
                "m": 3,
                "parity": "plus",
                "conjugate": False,
            }
        }

    @classmethod
    def make(
        cls,
        family: Union[str, Family],
        n: int,
        m: int,
        parity: Union[str, int, Parity] = Parity.PLUS,
        domain: Optional[Union[str, Domain]] = None,
        conjugate: bool = False,
    ) -> "BasisIndex":
        """Atajo: el dominio se deduce del signo de n si no se da"""
        return cls(
            family=Family(family),
            domain=Domain(domain) if domain is not None else Domain.for_degree(n),
            n=n,
            m=m,
            parity=Parity.parse(parity),
            conjugate=conjugate,
        )

    def conj(self) -> "BasisIndex":
        """El mismo índice con la conjugación invertida"""
        return self.model_copy(update={"conjugate": not self.conjugate})

    @property
    def label(self) -> str:
        bar = "bar" if self.conjugate else ""
        return f"{self.family.value}{bar}[{self.n},{self.m},{self.parity.symbol}]^{self.domain.short}"
