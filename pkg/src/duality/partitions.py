"""
Particiones correctas de espacios de Esakia finitos.

Una partición R es correcta si x R y y x ≤ z implican z R w para algún
w ≥ y. En un espacio finito la topología es discreta, así que la segunda
condición de la definición general (separación por upsets saturados)
siempre se cumple y solo se verifica la condición de retroceso.
"""

from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from algebra.heyting import HeytingAlgebra
from algebra.subalgebras import SubalgebraHandle
from duality.esakia import default_space, element_masks
from poset.finite_poset import (
    FinitePoset,
    PosetValidationError,
    bit,
    iter_bits,
    mask_of,
    validate,
)
from utils.limits import enforce, get_limits
from utils.logger import duality_logger as logger
from utils.verdict import Verdict


class CorrectPartitionError(Exception):
    """Se lanza cuando una partición no es válida o su cociente no es un poset."""

    def __init__(self, message: str, witness: Optional[Dict[str, Any]] = None):
        self.witness = witness or {}
        super().__init__(message)


def _canonical(classes: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    blocks = [tuple(sorted(int(x) for x in c)) for c in classes if len(c) > 0]
    return tuple(sorted(blocks))


@dataclass(frozen=True)
class CorrectPartition:
    """
    Partición de los puntos de un espacio finito.

    Attributes:
        space: Espacio subyacente
        classes: Clases ordenadas por su menor punto
    """

    space: FinitePoset
    classes: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_classes(
        cls, space: FinitePoset, classes: Sequence[Sequence[int]]
    ) -> "CorrectPartition":
        """
        Normaliza las clases y verifica que cubran cada punto una sola vez.

        Raises:
            CorrectPartitionError: Si no es una partición de los puntos
        """
        canonical = _canonical(classes)
        seen = [p for block in canonical for p in block]
        if sorted(seen) != list(range(space.n)):
            raise CorrectPartitionError(
                "Las clases no particionan los puntos", {"points": seen}
            )
        return cls(space=space, classes=canonical)

    @classmethod
    def from_labels(cls, space: FinitePoset, labels: Sequence[int]) -> "CorrectPartition":
        groups: Dict[int, List[int]] = {}
        for point, label in enumerate(labels):
            groups.setdefault(label, []).append(point)
        return cls.from_classes(space, list(groups.values()))

    @classmethod
    def identity(cls, space: FinitePoset) -> "CorrectPartition":
        return cls(space=space, classes=tuple((x,) for x in range(space.n)))

    @property
    def class_of(self) -> Tuple[int, ...]:
        """class_of[x] es el índice de la clase de x."""
        result = [0] * self.space.n
        for index, block in enumerate(self.classes):
            for x in block:
                result[x] = index
        return tuple(result)

    @property
    def class_masks(self) -> Tuple[int, ...]:
        return tuple(mask_of(block) for block in self.classes)

    def related(self, x: int, y: int) -> bool:
        labels = self.class_of
        return labels[x] == labels[y]

    def to_dict(self) -> Dict[str, Any]:
        return {"classes": [list(block) for block in self.classes]}


def is_correct_partition(partition: CorrectPartition) -> Verdict:
    """
    Verifica la condición de retroceso.

    Equivale a que todos los puntos de una clase vean, por encima de sí,
    exactamente las mismas clases.

    Returns:
        Verdict con testigo (x, y, z): x R y, x ≤ z y ninguna w ≥ y en la clase de z
    """
    space = partition.space
    labels = partition.class_of
    masks = partition.class_masks
    reach = [mask_of(labels[z] for z in iter_bits(space.up[x])) for x in range(space.n)]
    for block in partition.classes:
        first = block[0]
        for y in block[1:]:
            if reach[first] == reach[y]:
                continue
            x, other = (first, y) if reach[first] & ~reach[y] else (y, first)
            missing = reach[x] & ~reach[other]
            target_class = next(iter_bits(missing))
            z = next(iter_bits(space.up[x] & masks[target_class]))
            return Verdict.fail("condición de retroceso", triple=(x, other, z))
    return Verdict.ok()


def quotient_space(partition: CorrectPartition) -> FinitePoset:
    """
    Cociente X/R: [x] ≤ [y] sii x' ≤ y' para algunos x' R x, y' R y.

    El orden inducido se valida como orden parcial.

    Raises:
        CorrectPartitionError: Si el orden inducido no es antisimétrico o transitivo
    """
    space = partition.space
    labels = partition.class_of
    k = len(partition.classes)
    relation = [[i == j for j in range(k)] for i in range(k)]
    for x in range(space.n):
        for z in iter_bits(space.up[x]):
            relation[labels[x]][labels[z]] = True
    names = [
        space.labels[block[0]] if len(block) == 1 else "[" + ",".join(space.labels[p] for p in block) + "]"
        for block in partition.classes
    ]
    try:
        return validate(relation, labels=names)
    except PosetValidationError as e:
        raise CorrectPartitionError(
            f"El cociente no es un poset: {e.axiom}", {"classes": e.witness}
        ) from e


def quotient_map(partition: CorrectPartition) -> Tuple[int, ...]:
    """Proyección x ↦ [x] sobre los índices de clase."""
    return partition.class_of


def _restricted_growth_strings(n: int) -> Iterator[List[int]]:
    labels = [0] * n

    def extend(i: int, top: int) -> Iterator[List[int]]:
        if i == n:
            yield list(labels)
            return
        for label in range(top + 2):
            labels[i] = label
            yield from extend(i + 1, max(top, label))

    if n == 0:
        yield []
        return
    yield from extend(1, 0)


def enumerate_correct_partitions(space: FinitePoset) -> List[CorrectPartition]:
    """
    Todas las particiones correctas del espacio.

    Recorre las particiones como cadenas de crecimiento restringido (orden
    lexicográfico, la partición de una sola clase primero).

    Raises:
        ResourceCapError: Si el espacio supera el límite de puntos
    """
    enforce("max_partition_points", space.n, get_limits().max_partition_points)
    result = []
    total = 0
    for labels in _restricted_growth_strings(space.n):
        total += 1
        partition = CorrectPartition.from_labels(space, labels)
        if is_correct_partition(partition):
            result.append(partition)
    logger.debug(f"Particiones correctas: {len(result)} de {total} sobre {space.n} puntos")
    return result


def subalgebra_to_partition(
    subalgebra: SubalgebraHandle, space: Optional[FinitePoset] = None
) -> CorrectPartition:
    """
    Partición F R G sii F ∩ A = G ∩ A sobre el dual del padre.

    Args:
        subalgebra: Subálgebra A del padre B
        space: Dual de B a usar (por defecto el de procedencia o filtros primos)

    Returns:
        Partición correcta asociada
    """
    parent = subalgebra.parent
    if space is None:
        space, gamma = default_space(parent)
    else:
        gamma = element_masks(parent, space)
    members = subalgebra.elements
    keys = [
        mask_of(i for i, a in enumerate(members) if gamma[a] >> p & 1)
        for p in range(space.n)
    ]
    return CorrectPartition.from_labels(space, keys)


def partition_to_subalgebra(
    algebra: HeytingAlgebra, partition: CorrectPartition
) -> SubalgebraHandle:
    """
    Elementos de B cuyo upset es unión de clases de R.

    Args:
        algebra: Álgebra B
        partition: Partición correcta sobre un dual de B

    Returns:
        Handle de la subálgebra (B_*/R)* dentro de B
    """
    gamma = element_masks(algebra, partition.space)
    saturated = [
        a
        for a in range(algebra.m)
        if all(
            gamma[a] & block == 0 or gamma[a] & block == block
            for block in partition.class_masks
        )
    ]
    return SubalgebraHandle(parent=algebra, members=mask_of(saturated))


def enumerate_subalgebras(algebra: HeytingAlgebra) -> List[SubalgebraHandle]:
    """Subálgebras vía particiones correctas del dual, en el mismo orden."""
    space, _ = default_space(algebra)
    return [
        partition_to_subalgebra(algebra, partition)
        for partition in enumerate_correct_partitions(space)
    ]


def restrict_partition(partition: CorrectPartition, upset: int) -> CorrectPartition:
    """
    Restricción R ∩ Y² a un upset Y, reindexada sobre el subposet.
    """
    sub, points = partition.space.subposet(upset)
    position = {p: i for i, p in enumerate(points)}
    classes = [
        [position[p] for p in block if upset & bit(p)] for block in partition.classes
    ]
    return CorrectPartition.from_classes(sub, [c for c in classes if c])
