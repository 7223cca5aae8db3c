"""
Límites de recursos configurables por variables de entorno (.env).

Todas las búsquedas exhaustivas consultan estos límites antes de empezar
y fallan con ResourceCapError en lugar de quedarse colgadas.
"""

import os
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Any, Dict

from dotenv import load_dotenv

from utils.logger import poset_logger as logger

load_dotenv()


class ResourceCapError(Exception):
    """Se lanza cuando una operación excede un límite de recursos."""

    def __init__(self, cap: str, value: int, limit: int):
        self.cap = cap
        self.value = value
        self.limit = limit
        super().__init__(f"Límite '{cap}' excedido: {value} > {limit}")

    def to_dict(self) -> Dict[str, Any]:
        """Serializa el error para reportes JSON."""
        return {"cap": self.cap, "value": self.value, "limit": self.limit}


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Valor inválido para {name}: '{raw}', se usa {default}")
        return default


@dataclass(frozen=True)
class Limits:
    """
    Límites de tamaño de las búsquedas.

    Attributes:
        max_points: Puntos máximos de un poset (una máscara de 64 bits)
        max_upsets: Upsets máximos al construir un álgebra desde un poset
        max_table_elements: Elementos máximos de un álgebra con tablas explícitas
        max_assignments: Asignaciones máximas al validar una ecuación
        max_partition_points: Puntos máximos para enumerar particiones correctas
        max_morphism_points: Puntos máximos para enumerar morfismos de Esakia
        max_member_points: Puntos máximos del dual en el test de pertenencia
        threads: Cantidad de workers por defecto
    """

    max_points: int = 64
    max_upsets: int = 1 << 16
    max_table_elements: int = 4096
    max_assignments: int = 10_000_000
    max_partition_points: int = 8
    max_morphism_points: int = 10
    max_member_points: int = 20
    threads: int = 1

    def with_overrides(self, **overrides: int) -> "Limits":
        """Retorna una copia con los límites indicados reemplazados."""
        return replace(self, **overrides)


@lru_cache(maxsize=1)
def get_limits() -> Limits:
    """
    Carga los límites desde el entorno una sola vez.

    Returns:
        Límites vigentes
    """
    return Limits(
        max_points=min(_env_int("HEYTING_MAX_POINTS", 64), 64),
        max_upsets=_env_int("HEYTING_MAX_UPSETS", 1 << 16),
        max_table_elements=_env_int("HEYTING_MAX_TABLE_ELEMENTS", 4096),
        max_assignments=_env_int("HEYTING_MAX_ASSIGNMENTS", 10_000_000),
        max_partition_points=_env_int("HEYTING_MAX_PARTITION_POINTS", 8),
        max_morphism_points=_env_int("HEYTING_MAX_MORPHISM_POINTS", 10),
        max_member_points=_env_int("HEYTING_MAX_MEMBER_POINTS", 20),
        threads=max(1, _env_int("HEYTING_THREADS", 1)),
    )


def enforce(cap: str, value: int, limit: int) -> None:
    """
    Verifica que value no supere limit.

    Args:
        cap: Nombre del límite (para el mensaje)
        value: Tamaño observado
        limit: Tamaño máximo permitido

    Raises:
        ResourceCapError: Si value > limit
    """
    if value > limit:
        logger.warning(f"Límite '{cap}' excedido: {value} > {limit}")
        raise ResourceCapError(cap, value, limit)
