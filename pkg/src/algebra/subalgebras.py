"""
Subálgebras de un álgebra de Heyting finita.

Los subconjuntos de elementos se representan como máscaras de bits sobre
los índices del álgebra padre.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

import numpy as np

from algebra.heyting import HeytingAlgebra, restrict
from poset.finite_poset import bit, iter_bits, mask_of, popcount
from utils.logger import algebra_logger as logger


@dataclass(frozen=True)
class SubalgebraHandle:
    """
    Subálgebra identificada por sus elementos dentro del padre.

    Attributes:
        parent: Álgebra que la contiene
        members: Máscara de los elementos (contiene 0 y 1)
    """

    parent: HeytingAlgebra
    members: int

    @property
    def elements(self) -> Tuple[int, ...]:
        return tuple(iter_bits(self.members))

    @property
    def size(self) -> int:
        return popcount(self.members)

    def __contains__(self, element: int) -> bool:
        return bool(self.members >> element & 1)

    def is_closed(self) -> bool:
        """True si contiene 0, 1 y es cerrada bajo ∧, ∨ y →."""
        parent = self.parent
        if not (self.members >> parent.bottom & 1 and self.members >> parent.top & 1):
            return False
        idx = list(self.elements)
        grid = np.ix_(idx, idx)
        produced = np.concatenate(
            [parent.meet[grid].ravel(), parent.join[grid].ravel(), parent.imp[grid].ravel()]
        )
        return mask_of(int(v) for v in np.unique(produced)) & ~self.members == 0

    def as_algebra(self) -> HeytingAlgebra:
        """Álgebra con las tablas del padre restringidas a los miembros."""
        return restrict(self.parent, self.elements)

    def to_dict(self):
        return {"elements": [self.parent.labels[a] for a in self.elements]}


def _close(algebra: HeytingAlgebra, members: int) -> int:
    while True:
        idx = list(iter_bits(members))
        grid = np.ix_(idx, idx)
        produced = np.unique(
            np.concatenate(
                [
                    algebra.meet[grid].ravel(),
                    algebra.join[grid].ravel(),
                    algebra.imp[grid].ravel(),
                ]
            )
        )
        grown = members | mask_of(int(v) for v in produced)
        if grown == members:
            return members
        members = grown


def subalgebra_generated(algebra: HeytingAlgebra, generators: Iterable[int]) -> SubalgebraHandle:
    """
    Menor subálgebra que contiene los generadores.

    Itera hasta punto fijo agregando ∧, ∨ y → de todos los pares actuales.

    Args:
        algebra: Álgebra padre
        generators: Índices de elementos

    Returns:
        Handle de la subálgebra generada
    """
    start = mask_of(generators) | bit(algebra.bottom) | bit(algebra.top)
    return SubalgebraHandle(parent=algebra, members=_close(algebra, start))


def is_one_generated(algebra: HeytingAlgebra) -> Optional[int]:
    """
    Busca un generador único del álgebra.

    Returns:
        El menor índice a con subalgebra_generated(A, {a}) = A, o None
    """
    full = (1 << algebra.m) - 1
    for a in range(algebra.m):
        if subalgebra_generated(algebra, [a]).members == full:
            return a
    return None


def subalgebras_bruteforce(algebra: HeytingAlgebra) -> List[SubalgebraHandle]:
    """
    Todas las subálgebras, recorriendo clausuras de subconjuntos.

    Toda subálgebra se alcanza desde {0, 1} agregando de a un elemento y
    cerrando, así que la búsqueda no depende de la dualidad.

    Returns:
        Subálgebras en orden canónico (cardinalidad, máscara)
    """
    base = _close(algebra, bit(algebra.bottom) | bit(algebra.top))
    seen = {base}
    pending = [base]
    while pending:
        current = pending.pop()
        for a in range(algebra.m):
            if current >> a & 1:
                continue
            closed = _close(algebra, current | bit(a))
            if closed not in seen:
                seen.add(closed)
                pending.append(closed)
    ordered = sorted(seen, key=lambda mask: (popcount(mask), mask))
    logger.debug(f"Subálgebras por fuerza bruta: {len(ordered)} en álgebra de {algebra.m}")
    return [SubalgebraHandle(parent=algebra, members=mask) for mask in ordered]
