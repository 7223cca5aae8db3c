"""
Detección de subálgebras epic con testigos explícitos.

Una subálgebra A ≤ B es V-epic sii para todo Y = C_* con C ∈ V y todo
par de morfismos de Esakia g, h: Y -> B_* con ⟨g(y), h(y)⟩ ∈ R_A para
todo y, se tiene g = h. Un par separador que pasa por C se factoriza por
un cociente FSI de C, así que alcanza con recorrer los representantes
FSI de V, más los automorfismos del propio B_* (B ∈ V).
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from algebra.heyting import HeytingAlgebra
from algebra.subalgebras import SubalgebraHandle
from duality.esakia import default_space, dual_algebra, is_esakia_morphism
from duality.partitions import CorrectPartition, subalgebra_to_partition
from poset.finite_poset import FinitePoset, bit, iter_bits, mask_of
from poset.isomorphism import automorphisms
from utils.limits import enforce, get_limits
from utils.logger import variety_logger as logger
from utils.verdict import Verdict
from variety.presentation import (
    VarietyMembershipError,
    VarietyPresentation,
    contains,
    fsi_representatives,
)

STAGE_AUTOMORPHISM = "automorfismo"
STAGE_FSI = "representante FSI"


@dataclass(frozen=True)
class EpicWitness:
    """
    Par separador g ≠ h: Y -> B_* relacionado punto a punto por R_A.

    Attributes:
        space: Dual Y del álgebra separadora C
        partition: Partición correcta R_A sobre B_*
        g: Primer morfismo (g[y] = imagen de y)
        h: Segundo morfismo
        stage: Etapa de la búsqueda que lo encontró
    """

    space: FinitePoset
    partition: CorrectPartition
    g: Tuple[int, ...]
    h: Tuple[int, ...]
    stage: str

    @property
    def target(self) -> FinitePoset:
        return self.partition.space

    @property
    def separating_algebra(self) -> HeytingAlgebra:
        return dual_algebra(self.space)

    @property
    def divergence(self) -> int:
        """Primer punto de Y donde g y h difieren."""
        return next(y for y in range(self.space.n) if self.g[y] != self.h[y])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "space": self.space.to_dict(),
            "g": list(self.g),
            "h": list(self.h),
            "divergence": self.space.labels[self.divergence],
            "stage": self.stage,
        }


@dataclass(frozen=True)
class EpicVerdict:
    """
    Attributes:
        epic: True si A es V-epic en B
        witness: Par separador cuando epic es False
    """

    epic: bool
    witness: Optional[EpicWitness] = None

    def __bool__(self) -> bool:
        return self.epic

    def to_dict(self) -> Dict[str, Any]:
        return {
            "epic": self.epic,
            "witness": self.witness.to_dict() if self.witness is not None else None,
        }


def _automorphism_pair(partition: CorrectPartition) -> Optional[EpicWitness]:
    space = partition.space
    labels = partition.class_of
    identity = tuple(range(space.n))
    for sigma in automorphisms(space):
        if sigma == identity:
            continue
        if all(labels[sigma[y]] == labels[y] for y in range(space.n)):
            return EpicWitness(
                space=space, partition=partition, g=identity, h=sigma, stage=STAGE_AUTOMORPHISM
            )
    return None


def separating_pair(
    space: FinitePoset, partition: CorrectPartition
) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """
    Busca g ≠ h: space -> partition.space de Esakia y R-relacionados.

    Construye g y h a la vez, de arriba hacia abajo en una extensión
    lineal de space: al llegar a y ya se conocen las imágenes de su upset
    estricto, y un candidato c para g sirve sii ↑c = g[↑y ∖ {y}] ∪ {c}
    (lo mismo para h). Además g(y) R h(y). Se recorren los candidatos en
    orden creciente, así que el par devuelto es el primero en ese orden.

    Returns:
        Tupla (g, h) o None si todo par relacionado es diagonal
    """
    target = partition.space
    labels = partition.class_of
    order = list(reversed(space.linear_extension))
    g = [-1] * space.n
    h = [-1] * space.n

    def candidates(values: List[int], y: int) -> List[int]:
        strict = mask_of(values[z] for z in iter_bits(space.up[y] & ~bit(y)))
        return [c for c in range(target.n) if target.up[c] == strict | bit(c)]

    def search(i: int, diverged: bool) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        if i == len(order):
            return (tuple(g), tuple(h)) if diverged else None
        y = order[i]
        options_h = candidates(h, y)
        for c in candidates(g, y):
            g[y] = c
            for d in options_h:
                if labels[c] != labels[d]:
                    continue
                h[y] = d
                found = search(i + 1, diverged or c != d)
                if found is not None:
                    return found
            h[y] = -1
        g[y] = -1
        return None

    return search(0, False)


def is_epic(
    algebra: HeytingAlgebra,
    subalgebra: SubalgebraHandle,
    variety: VarietyPresentation,
    check_membership: bool = True,
) -> EpicVerdict:
    """
    Decide si la subálgebra A de B es V-epic.

    Etapa 1: automorfismos σ ≠ id de B_* con σ(y) R_A y (C = B).
    Etapa 2: para cada representante FSI Y de V, pares g ≠ h: Y -> B_*.

    Args:
        algebra: Álgebra B
        subalgebra: Subálgebra A de B
        variety: Variedad V
        check_membership: Si True verifica antes que B ∈ V

    Returns:
        EpicVerdict con el primer par separador encontrado

    Raises:
        VarietyMembershipError: Si B no pertenece a V
        ResourceCapError: Si B_* o algún representante supera los límites
    """
    if subalgebra.parent is not algebra:
        raise ValueError("La subálgebra no pertenece al álgebra dada")
    limits = get_limits()
    space, _ = default_space(algebra)
    enforce("max_partition_points", space.n, limits.max_partition_points)
    if check_membership:
        membership = contains(variety, algebra)
        if not membership:
            raise VarietyMembershipError(membership)

    partition = subalgebra_to_partition(subalgebra, space)
    if all(len(block) == 1 for block in partition.classes):
        return EpicVerdict(epic=True)

    witness = _automorphism_pair(partition)
    if witness is not None:
        logger.debug(f"Par separador por automorfismo de B_* ({space.n} puntos)")
        return EpicVerdict(epic=False, witness=witness)

    for representative in fsi_representatives(variety):
        enforce("max_morphism_points", representative.n, limits.max_morphism_points)
        pair = separating_pair(representative, partition)
        if pair is not None:
            logger.debug(f"Par separador desde un representante de {representative.n} puntos")
            return EpicVerdict(
                epic=False,
                witness=EpicWitness(
                    space=representative,
                    partition=partition,
                    g=pair[0],
                    h=pair[1],
                    stage=STAGE_FSI,
                ),
            )

    logger.info(f"Subálgebra de {subalgebra.size} elementos es epic en B ({algebra.m})")
    return EpicVerdict(epic=True)


def validate_witness(witness: EpicWitness) -> Verdict:
    """
    Reverifica un testigo: ambos mapas de Esakia, relacionados y distintos.

    Returns:
        Verdict con la condición que falla
    """
    for name, mapping in (("g", witness.g), ("h", witness.h)):
        verdict = is_esakia_morphism(mapping, witness.space, witness.target)
        if not verdict:
            return Verdict.fail(f"{name} no es de Esakia", **verdict.witness)
    labels = witness.partition.class_of
    for y in range(witness.space.n):
        if labels[witness.g[y]] != labels[witness.h[y]]:
            return Verdict.fail("no relacionados", point=y)
    if witness.g == witness.h:
        return Verdict.fail("mapas iguales")
    return Verdict.ok()
