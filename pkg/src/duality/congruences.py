"""
Congruencias de un álgebra finita vía upsets de su dual.

Cada upset U del dual determina la congruencia a θ b sii γ(a) ∩ U = γ(b) ∩ U,
cuyo cociente es el álgebra de upsets de U.
"""

from dataclasses import dataclass
from typing import List, Tuple

from algebra.heyting import HeytingAlgebra, from_upsets
from duality.esakia import default_space
from utils.limits import enforce, get_limits
from utils.logger import duality_logger as logger


@dataclass(frozen=True)
class UpsetCongruence:
    """
    Congruencia asociada a un upset del dual.

    Attributes:
        upset: Máscara del upset sobre el dual
        classes: classes[a] es el menor elemento de la clase de a
        quotient: Álgebra cociente (upsets de U)
    """

    upset: int
    classes: Tuple[int, ...]
    quotient: HeytingAlgebra


def congruence_of_upset(algebra: HeytingAlgebra, gamma: Tuple[int, ...], upset: int) -> Tuple[int, ...]:
    first_seen = {}
    labels = []
    for a in range(algebra.m):
        key = gamma[a] & upset
        labels.append(first_seen.setdefault(key, a))
    return tuple(labels)


def congruences_via_upsets(algebra: HeytingAlgebra) -> List[UpsetCongruence]:
    """
    Una congruencia por upset del dual, en el orden canónico de upsets.

    Args:
        algebra: Álgebra con dual de a lo sumo el límite de particiones

    Returns:
        Lista de UpsetCongruence

    Raises:
        ResourceCapError: Si el dual es demasiado grande
    """
    space, gamma = default_space(algebra)
    enforce("max_partition_points", space.n, get_limits().max_partition_points)
    result = []
    for upset in space.all_upsets():
        sub, _ = space.subposet(upset)
        result.append(
            UpsetCongruence(
                upset=upset,
                classes=congruence_of_upset(algebra, gamma, upset),
                quotient=from_upsets(sub),
            )
        )
    logger.debug(f"Congruencias vía upsets: {len(result)}")
    return result