"""
Enumeración de posets finitos: no etiquetados (hasta isomorfismo) y etiquetados.
"""

from collections import defaultdict
from typing import Dict, List, Tuple

from poset.finite_poset import FinitePoset, bit, iter_bits
from poset.isomorphism import are_isomorphic, canonical_signature
from utils.limits import ResourceCapError
from utils.logger import poset_logger as logger

MAX_UNLABELED_POINTS = 7
MAX_LABELED_POINTS = 4

# Cantidad de posets no etiquetados con n puntos, n = 0..7
UNLABELED_COUNTS = (1, 1, 2, 5, 16, 63, 318, 2045)
# Cantidad de órdenes parciales sobre m puntos etiquetados, m = 0..4
LABELED_COUNTS = (1, 1, 3, 19, 219)


def _extend_with_maximal_point(poset: FinitePoset, downset: int) -> FinitePoset:
    """Agrega un punto nuevo, maximal, por encima exactamente de downset."""
    new = poset.n
    up = [m | bit(new) if downset >> x & 1 else m for x, m in enumerate(poset.up)]
    up.append(bit(new))
    return FinitePoset.from_up_masks(up)


def enumerate_posets(n: int) -> List[FinitePoset]:
    """
    Representantes de todos los posets con n puntos, hasta isomorfismo.

    Todo poset de n+1 puntos se obtiene agregando un punto maximal sobre
    algún downset de un poset de n puntos; los duplicados se descartan por
    buckets de firma más un test de isomorfismo.

    Args:
        n: Cantidad de puntos (≤ 7)

    Returns:
        Lista determinista de representantes

    Raises:
        ResourceCapError: Si n > 7
    """
    if n > MAX_UNLABELED_POINTS:
        raise ResourceCapError("unlabeled_poset_points", n, MAX_UNLABELED_POINTS)
    if n < 0:
        raise ValueError("n debe ser no negativo")

    level: List[FinitePoset] = [FinitePoset.from_up_masks([])]
    for size in range(n):
        buckets: Dict[Tuple, List[FinitePoset]] = defaultdict(list)
        next_level: List[FinitePoset] = []
        for poset in level:
            full = poset.full_mask
            for upset in poset.all_upsets():
                candidate = _extend_with_maximal_point(poset, full & ~upset)
                signature = canonical_signature(candidate)
                bucket = buckets[signature]
                if any(are_isomorphic(candidate, seen) is not None for seen in bucket):
                    continue
                bucket.append(candidate)
                next_level.append(candidate)
        level = next_level
        logger.debug(f"Posets con {size + 1} puntos: {len(level)}")

    logger.info(f"Enumerados {len(level)} posets no etiquetados con {n} puntos")
    return level


def enumerate_posets_up_to(n: int) -> List[FinitePoset]:
    """Todos los representantes con 0..n puntos, por tamaño creciente."""
    result: List[FinitePoset] = []
    for size in range(n + 1):
        result.extend(enumerate_posets(size))
    return result


def _off_diagonal_cells(m: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(m) for j in range(m) if i != j]


def enumerate_labeled_posets(m: int) -> List[FinitePoset]:
    """
    Todos los órdenes parciales sobre m puntos etiquetados.

    El orden es lexicográfico sobre las matrices de relación leídas por
    filas: la primera celda fuera de la diagonal es el bit más significativo.
    Así el índice k de cada orden es reproducible.

    Args:
        m: Cantidad de puntos (≤ 4)

    Returns:
        Lista de posets con etiquetas "0".."m-1"

    Raises:
        ResourceCapError: Si m > 4
    """
    if m > MAX_LABELED_POINTS:
        raise ResourceCapError("labeled_poset_points", m, MAX_LABELED_POINTS)
    cells = _off_diagonal_cells(m)
    width = len(cells)
    result: List[FinitePoset] = []

    for code in range(1 << width):
        up = [bit(i) for i in range(m)]
        for position, (i, j) in enumerate(cells):
            if code >> (width - 1 - position) & 1:
                up[i] |= bit(j)
        if _is_partial_order(up):
            result.append(FinitePoset.from_up_masks(up))

    logger.debug(f"Órdenes etiquetados sobre {m} puntos: {len(result)}")
    return result


def _is_partial_order(up: List[int]) -> bool:
    for i, mask in enumerate(up):
        for j in iter_bits(mask):
            if j != i and up[j] >> i & 1:
                return False
            # transitividad: ↑j ⊆ ↑i
            if up[j] & ~mask:
                return False
    return True
