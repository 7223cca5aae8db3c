"""
Módulo para controlar logging del sistema.
Cada capa (poset, algebra, duality, ...) escribe en su propio archivo.
"""

import logging
import os
from logging.handlers import RotatingFileHandler

from dotenv import load_dotenv

load_dotenv()

LOG_DIR = os.getenv(
    "HEYTING_LOG_DIR",
    os.path.join(os.path.dirname(__file__), "..", "..", "data"),
)
os.makedirs(LOG_DIR, exist_ok=True)


def get_logger(name: str, filename: str) -> logging.Logger:
    """
    Obtiene un logger configurado con handlers de consola y archivo.

    Args:
        name: Nombre del logger
        filename: Nombre del archivo de log

    Returns:
        Logger configurado
    """
    logger = logging.getLogger(name)

    if logger.handlers:
        return logger

    logger.setLevel(logging.DEBUG)

    formatter = logging.Formatter(
        "%(asctime)s %(levelname)s %(name)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    # Consola: solo resúmenes
    console_handler = logging.StreamHandler()
    console_handler.setLevel(logging.INFO)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    # Archivo: detalle completo de las búsquedas
    file_handler = RotatingFileHandler(
        os.path.join(LOG_DIR, filename),
        maxBytes=10 * 1024 * 1024,  # 10MB
        backupCount=5,
        encoding="utf-8",
    )
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(formatter)
    logger.addHandler(file_handler)

    return logger


def get_log_file_path(filename: str) -> str:
    """
    Retorna la ruta completa del archivo de log.

    Args:
        filename: Nombre del archivo de log

    Returns:
        Ruta completa al archivo
    """
    return os.path.abspath(os.path.join(LOG_DIR, filename))


# Loggers
poset_logger = get_logger(name="poset_logger", filename="poset.log")
algebra_logger = get_logger(name="algebra_logger", filename="algebra.log")
duality_logger = get_logger(name="duality_logger", filename="duality.log")
terms_logger = get_logger(name="terms_logger", filename="terms.log")
variety_logger = get_logger(name="variety_logger", filename="variety.log")
constructions_logger = get_logger(
    name="constructions_logger", filename="constructions.log"
)
quality_logger = get_logger(name="quality_logger", filename="quality.log")
storage_logger = get_logger(name="storage_logger", filename="storage.log")
cli_logger = get_logger(name="cli_logger", filename="cli.log")
