"""
Configuración de ContraKernel
Tamaños de cuadratura, paso de diferencias finitas, malla de muestreo y número de hilos
"""
import os
from typing import Optional, Tuple

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Configuración de la librería usando Pydantic"""

    # Información de la App
    APP_NAME: str = "ContraKernel"
    DEBUG: bool = os.getenv("DEBUG", "False") == "True"
    VERSION: str = "1.0.0"
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    # Paralelismo - tope de hilos para coeficientes y matrices de Gram
    CONTRAKERNEL_THREADS: Optional[int] = None

    # Cuadratura por defecto (radial, polar en cos(theta), azimutal)
    QUAD_RADIAL: int = 16
    QUAD_POLAR: int = 16
    QUAD_AZIMUTHAL: int = 64

    # Numérica
    FD_STEP: float = 1e-5
    MAX_DEGREE: int = 64
    DOMAIN_TOL: float = 1e-12

    # Malla (theta, phi) para las tablas de error
    GRID_THETA: int = 30
    GRID_PHI: int = 60

    @property
    def workers(self) -> int:
        """
        Número de hilos a usar.
        Sin CONTRAKERNEL_THREADS se usan todos los núcleos disponibles.
        """
        available = os.cpu_count() or 1
        if self.CONTRAKERNEL_THREADS is None:
            return available
        return max(1, min(self.CONTRAKERNEL_THREADS, available))

    def rule_sizes_for(self, max_degree: int) -> Tuple[int, int, int]:
        """Tamaños (R, T, A) suficientes para productos de grado |max_degree|"""
        n = abs(max_degree)
        return (
            max(self.QUAD_RADIAL, n + 4),
            max(self.QUAD_POLAR, n + 4),
            max(self.QUAD_AZIMUTHAL, 4 * n + 8),
        )

    class Config:
        env_file = ".env"
        case_sensitive = True


# Instancia única de configuración
settings = Settings()
