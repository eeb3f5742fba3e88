"""
Errores de ContraKernel
Cada error lleva el código de salida que usa la CLI
"""


class ContraKernelError(Exception):
    """Error base con detalle y código de salida"""

    exit_code: int = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InvalidIndexError(ContraKernelError):
    """Índice fuera de los conjuntos J / I, o combinación excluida"""

    exit_code = 2


class DomainError(ContraKernelError):
    """Punto o argumento fuera del dominio"""

    exit_code = 3


class ToleranceError(ContraKernelError):
    """Desviación máxima por encima de la tolerancia pedida"""

    exit_code = 4

    def __init__(self, detail: str, max_deviation: float, tolerance: float):
        super().__init__(detail)
        self.max_deviation = max_deviation
        self.tolerance = tolerance
