"""
Reparto de trabajo entre hilos con resultados en orden
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from app.config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None) -> List[R]:
    """
    Aplica func a cada elemento y devuelve los resultados en el orden de entrada.
    Cada resultado se calcula entero dentro de una sola tarea, así que no depende
    del número de hilos.
    """
    items = list(items)
    workers = workers or settings.workers
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    logger.debug("Repartiendo %d tareas en %d hilos", len(items), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
