"""
Schemas Pydantic de ContraKernel
"""
from app.schemas.basis import BasisIndex, Domain, Family, Parity
from app.schemas.point import Point3
from app.schemas.report import (
    BergmanTable,
    DualityRow,
    GramReport,
    GramRow,
    GridSample,
    NormRow,
    OutputFormat,
    RunConfig,
)

__all__ = [
    "BasisIndex",
    "Domain",
    "Family",
    "Parity",
    "Point3",
    "BergmanTable",
    "DualityRow",
    "GramReport",
    "GramRow",
    "GridSample",
    "NormRow",
    "OutputFormat",
    "RunConfig",
]
