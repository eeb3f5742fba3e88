"""
Configuración de logging
Los informes van a stdout; los logs van a stderr
"""
import logging
import sys

from app.config import settings


def setup_logging() -> None:
    """Configurar el logger raíz según settings"""
    level = logging.DEBUG if settings.DEBUG else getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )
