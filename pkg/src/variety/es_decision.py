"""
Decisión de la propiedad ES (epimorfismos sobreyectivos) y certificados KG.

Una variedad tiene la propiedad ES sii sus miembros FSI no tienen
subálgebras propias epic. Para variedades finitamente generadas todos los
miembros FSI son finitos, así que la decisión recorre los representantes.
"""

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from algebra.heyting import HeytingAlgebra, alg_sum_all
from algebra.subalgebras import SubalgebraHandle
from constructions.named import bool2, diamond, x2_algebra
from duality.partitions import enumerate_subalgebras
from utils.limits import get_limits
from utils.logger import variety_logger as logger
from variety.epic import EpicVerdict, is_epic
from variety.presentation import VarietyPresentation, contains, representative_algebras

MAX_KG_LEVEL = 4
KG_SUMMANDS = ("diamond", "x2")


@dataclass(frozen=True)
class ESLogRow:
    """
    Una corrida de is_epic.

    Attributes:
        member: Índice del representante FSI B
        member_size: |B|
        subalgebra: Etiquetas de los elementos de A
        verdict: Resultado de is_epic
    """

    member: int
    member_size: int
    subalgebra: Tuple[str, ...]
    verdict: EpicVerdict

    def to_dict(self) -> Dict[str, Any]:
        return {
            "member": self.member,
            "member_size": self.member_size,
            "subalgebra": list(self.subalgebra),
            **self.verdict.to_dict(),
        }


@dataclass(frozen=True)
class ESResult:
    """
    Attributes:
        holds: True si ninguna subálgebra propia de un miembro FSI es epic
        rows: Registro de cada par (B, A) en orden canónico
    """

    holds: bool
    rows: Tuple[ESLogRow, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.holds

    @property
    def epic_rows(self) -> List[ESLogRow]:
        return [row for row in self.rows if row.verdict.epic]

    def to_frame(self) -> pd.DataFrame:
        """Registro como DataFrame (una fila por par B, A)."""
        return pd.DataFrame(
            [
                {
                    "member": row.member,
                    "member_size": row.member_size,
                    "subalgebra_size": len(row.subalgebra),
                    "epic": row.verdict.epic,
                    "stage": row.verdict.witness.stage if row.verdict.witness else "",
                }
                for row in self.rows
            ],
            columns=["member", "member_size", "subalgebra_size", "epic", "stage"],
        )

    def to_dict(self) -> Dict[str, Any]:
        return {"holds": self.holds, "log": [row.to_dict() for row in self.rows]}


def _proper_subalgebras(algebra: HeytingAlgebra) -> List[SubalgebraHandle]:
    return [s for s in enumerate_subalgebras(algebra) if s.size < algebra.m]


def _run_pair(
    job: Tuple[int, HeytingAlgebra, SubalgebraHandle], variety: VarietyPresentation
) -> ESLogRow:
    index, member, subalgebra = job
    verdict = is_epic(member, subalgebra, variety, check_membership=False)
    labels = tuple(member.labels[a] for a in subalgebra.elements)
    return ESLogRow(member=index, member_size=member.m, subalgebra=labels, verdict=verdict)


def es_property(variety: VarietyPresentation, threads: Optional[int] = None) -> ESResult:
    """
    Decide la propiedad ES de una variedad finitamente generada.

    Recorre cada miembro FSI B y cada subálgebra propia A de B. Los pares
    se reparten entre threads; el registro conserva el orden canónico.
    is_epic es Python puro y queda atado al GIL, así que threads > 1 solo
    cambia el orden de ejecución; el default es 1.

    Args:
        variety: Variedad finitamente generada
        threads: Workers (por defecto HEYTING_THREADS)

    Returns:
        ESResult con el veredicto y el registro completo

    Raises:
        ResourceCapError: Si algún miembro supera los límites
    """
    workers = threads if threads is not None else get_limits().threads
    jobs = [
        (index, member, subalgebra)
        for index, member in enumerate(representative_algebras(variety))
        for subalgebra in _proper_subalgebras(member)
    ]
    logger.info(f"ES para {variety}: {len(jobs)} pares (B, A) con {workers} workers")

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(lambda job: _run_pair(job, variety), jobs))
    else:
        rows = [_run_pair(job, variety) for job in jobs]

    holds = not any(row.verdict.epic for row in rows)
    logger.info(f"ES para {variety}: {'vale' if holds else 'falla'}")
    return ESResult(holds=holds, rows=tuple(rows))


_SUMMAND_BUILDERS = {"diamond": diamond, "x2": x2_algebra}


def kg_test_sum(blocks: Tuple[str, ...]) -> HeytingAlgebra:
    """A₁ + ⋯ + Aₙ + 𝟐 con A_i ∈ {D₂*, X₂*} nombrados de arriba hacia abajo."""
    try:
        parts = [_SUMMAND_BUILDERS[name]() for name in blocks]
    except KeyError as e:
        raise ValueError(f"Sumando desconocido: {e.args[0]}") from e
    return alg_sum_all(parts + [bool2()])


@dataclass(frozen=True)
class KGCertificate:
    """
    Resultado de la búsqueda de certificado.

    Attributes:
        level: Menor n con todas las sumas de nivel n excluidas, o None
        table: Pertenencia de cada suma (columnas n, blocks, member)
        monotone: True si cada nivel excluido es seguido por otro excluido
    """

    level: Optional[int]
    table: pd.DataFrame
    monotone: bool

    @property
    def label(self) -> str:
        if self.level is None:
            return "sin certificado"
        return "certificado (condición suficiente para ES)"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "level": self.level,
            "label": self.label,
            "monotone": self.monotone,
            "table": self.table.to_dict(orient="records"),
        }


def kg_es_certificate(variety: VarietyPresentation, n_max: int = 3) -> KGCertificate:
    """
    Busca el menor n tal que V excluye toda suma A₁ + ⋯ + Aₙ + 𝟐.

    Para V ⊆ KG, ese n certifica la propiedad ES. Se recorren todos los
    niveles hasta n_max para poder verificar la monotonía.

    Args:
        variety: Variedad finitamente generada
        n_max: Nivel máximo (≤ 4)

    Returns:
        KGCertificate con la tabla de pertenencia
    """
    if not 1 <= n_max <= MAX_KG_LEVEL:
        raise ValueError(f"n_max debe estar entre 1 y {MAX_KG_LEVEL}")
    records = []
    for n in range(1, n_max + 1):
        for blocks in itertools.product(KG_SUMMANDS, repeat=n):
            member = contains(variety, kg_test_sum(blocks)).holds
            records.append({"n": n, "blocks": "+".join(blocks) + "+2", "member": member})
    table = pd.DataFrame(records, columns=["n", "blocks", "member"])

    excluded = ~table.groupby("n")["member"].any()
    levels = [int(n) for n, value in excluded.items() if value]
    level = levels[0] if levels else None
    monotone = all(excluded.get(n + 1, True) for n in levels)
    if not monotone:
        logger.warning(f"Certificado KG no monótono para {variety}")
    logger.info(f"Certificado KG para {variety}: nivel {level}")
    return KGCertificate(level=level, table=table, monotone=monotone)
