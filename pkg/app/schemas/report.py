"""
Schemas de informes - Parámetros de ejecución y filas de los informes de la CLI
"""
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from app.schemas.basis import Domain


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class RunConfig(BaseModel):
    """Parámetros comunes validados de un comando"""
    command: str = Field(..., description="Subcomando de la CLI")
    domain: Domain = Field(Domain.INTERIOR, description="interior o exterior")
    max_degree: int = Field(4, ge=0, le=64, description="Grado máximo |n| del informe")
    radial: int = Field(16, ge=1, description="Nodos radiales")
    polar: int = Field(16, ge=1, description="Nodos polares (en cos theta)")
    azimuthal: int = Field(64, ge=4, description="Nodos azimutales")
    tol: Optional[float] = Field(None, gt=0, description="Tolerancia (exit 4 si se supera)")
    output_format: OutputFormat = Field(OutputFormat.CSV, description="csv o json")
    output: Optional[Path] = Field(None, description="Fichero de salida (stdout si falta)")

    class Config:
        json_schema_extra = {
            "example": {
                "command": "norms",
                "domain": "interior",
                "max_degree": 4,
                "radial": 16,
                "polar": 16,
                "azimuthal": 64,
                "tol": 1e-8,
                "output_format": "csv",
                "output": None,
            }
        }


class NormRow(BaseModel):
    """Norma cerrada frente a norma por cuadratura"""
    label: str
    family: str
    domain: Domain
    n: int
    m: int
    parity: str
    closed_form: float
    quadrature: float
    rel_deviation: float


class GramRow(BaseModel):
    """Entrada (i, j) de una matriz de Gram"""
    row: str
    col: str
    value: float
    expected: float = Field(0.0, description="Valor cerrado (0 fuera de la diagonal)")
    ratio: float = Field(0.0, description="|G_ij| / sqrt(G_ii G_jj) o desviación relativa en la diagonal")


class GramReport(BaseModel):
    """Matriz de Gram de un bloque de funciones base"""
    family: str
    domain: Domain
    degrees: List[int]
    size: int
    max_offdiag_ratio: float
    max_diag_deviation: float
    rows: List[GramRow] = []

    @property
    def max_deviation(self) -> float:
        return max(self.max_offdiag_ratio, self.max_diag_deviation)


class DualityRow(BaseModel):
    """Residuo de la dualidad Z <-> Vec X en una muestra de puntos"""
    label: str
    n: int
    m: int
    parity: str
    max_residual: float = Field(..., description="Residuo relativo máximo (forma e3)")
    star_residual: float = Field(..., description="Residuo relativo máximo de la forma con *")


class BergmanTable(BaseModel):
    """Tabla de errores de un proyector truncado (una fila por radio)"""
    domain: Domain
    operator: str = Field(..., description="M (Vec M) o N (contragénicas)")
    target: str = Field(..., description="E o Estar")
    degrees: List[int] = Field(..., description="Valores de N (columnas)")
    radii: List[float] = Field(..., description="Valores de rho (filas)")
    values: List[List[float]]

    def as_rows(self) -> List[Dict[str, float]]:
        rows = []
        for rho, row in zip(self.radii, self.values):
            entry: Dict[str, float] = {"rho": rho}
            for n_trunc, value in zip(self.degrees, row):
                entry[f"N={n_trunc}"] = value
            rows.append(entry)
        return rows

    @property
    def columns(self) -> List[str]:
        return ["rho"] + [f"N={n}" for n in self.degrees]


class GridSample(BaseModel):
    """Muestra (theta, phi) de una función sobre una esfera, para graficar fuera"""
    rho: float
    theta: float
    phi: float
    c0: float
    c1: float
    c2: float
    value: float = Field(..., description="Magnitud representada")
