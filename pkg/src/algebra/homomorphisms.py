"""
Oráculos algebraicos de fuerza bruta: homomorfismos y congruencias.

No usan la dualidad, por lo que sirven para contrastar los resultados
del módulo duality (conteo contravariante de morfismos, congruencias
vía upsets).
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np

from algebra.heyting import HeytingAlgebra, _readonly
from utils.limits import enforce
from utils.logger import algebra_logger as logger

MAX_ORACLE_ELEMENTS = 64
_OPERATIONS = ("meet", "join", "imp")


def is_homomorphism(
    source: HeytingAlgebra, target: HeytingAlgebra, mapping: Sequence[int]
) -> bool:
    """True si mapping preserva 0, 1, ∧, ∨ y →."""
    h = np.asarray(mapping, dtype=np.int64)
    if h.shape != (source.m,):
        return False
    if h[source.bottom] != target.bottom or h[source.top] != target.top:
        return False
    for name in _OPERATIONS:
        table_s = getattr(source, name)
        table_t = getattr(target, name)
        if not np.array_equal(h[table_s], table_t[h[:, None], h[None, :]]):
            return False
    return True


def _propagate(
    source: HeytingAlgebra, target: HeytingAlgebra, values: np.ndarray
) -> Optional[np.ndarray]:
    """Completa values cerrando bajo las operaciones; None si hay conflicto."""
    values = values.copy()
    while True:
        assigned = np.flatnonzero(values >= 0)
        grid = np.ix_(assigned, assigned)
        image = values[assigned]
        image_grid = np.ix_(image, image)
        changed = False
        for name in _OPERATIONS:
            positions = getattr(source, name)[grid].ravel()
            forced = getattr(target, name)[image_grid].ravel()
            current = values[positions]
            known = current >= 0
            if np.any(current[known] != forced[known]):
                return None
            if not known.all():
                values[positions[~known]] = forced[~known]
                changed = True
        if not changed:
            return values


def enumerate_homomorphisms(
    source: HeytingAlgebra, target: HeytingAlgebra
) -> List[Tuple[int, ...]]:
    """
    Todos los homomorfismos de Heyting source -> target.

    Backtracking elemento por elemento con propagación: fijado un valor,
    todo lo que se obtiene operando elementos ya asignados queda forzado.

    Args:
        source: Dominio
        target: Codominio

    Returns:
        Mapas h (h[a] = imagen de a) en orden lexicográfico
    """
    enforce("oracle_elements", max(source.m, target.m), MAX_ORACLE_ELEMENTS)
    start = np.full(source.m, -1, dtype=np.int64)
    start[source.bottom] = target.bottom
    start[source.top] = target.top
    found: List[Tuple[int, ...]] = []

    def search(values: Optional[np.ndarray]) -> None:
        if values is None:
            return
        free = np.flatnonzero(values < 0)
        if free.size == 0:
            if is_homomorphism(source, target, values):
                found.append(tuple(int(v) for v in values))
            return
        a = int(free[0])
        for candidate in range(target.m):
            attempt = values.copy()
            attempt[a] = candidate
            search(_propagate(source, target, attempt))

    search(_propagate(source, target, start))
    found.sort()
    logger.debug(f"Homomorfismos {source.m} -> {target.m}: {len(found)}")
    return found


def is_congruence(algebra: HeytingAlgebra, classes: Sequence[int]) -> bool:
    """
    True si la partición (classes[a] = clase de a) es compatible con ∧, ∨, →.
    """
    labels = np.asarray(classes)
    same = labels[:, None] == labels[None, :]
    for name in _OPERATIONS:
        table = getattr(algebra, name)
        # a ≡ b implica a op c ≡ b op c y c op a ≡ c op b
        row_images = labels[table]
        for a, b in np.argwhere(np.triu(same, k=1)):
            if not np.array_equal(row_images[a], row_images[b]):
                return False
            if not np.array_equal(row_images[:, a], row_images[:, b]):
                return False
    return True


def _find(parent: List[int], a: int) -> int:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def congruence_generated(
    algebra: HeytingAlgebra, pairs: Sequence[Tuple[int, int]], base: Optional[Sequence[int]] = None
) -> Tuple[int, ...]:
    """
    Menor congruencia que contiene base y los pares dados.

    Returns:
        Etiquetas canónicas: cada elemento apunta al menor de su clase
    """
    parent = list(range(algebra.m)) if base is None else [int(c) for c in base]
    for a in range(algebra.m):
        parent[a] = _find(parent, a)

    def union(a: int, b: int) -> bool:
        ra, rb = _find(parent, a), _find(parent, b)
        if ra == rb:
            return False
        parent[max(ra, rb)] = min(ra, rb)
        return True

    # basta propagar las aristas nuevas: base ya es compatible
    pending = [(int(a), int(b)) for a, b in pairs]
    tables = [getattr(algebra, name) for name in _OPERATIONS]
    while pending:
        a, b = pending.pop()
        if not union(a, b):
            continue
        for table in tables:
            pending.extend(zip(table[a].tolist(), table[b].tolist()))
            pending.extend(zip(table[:, a].tolist(), table[:, b].tolist()))
    return tuple(_find(parent, a) for a in range(algebra.m))


def enumerate_congruences(algebra: HeytingAlgebra) -> List[Tuple[int, ...]]:
    """
    Todas las congruencias, como supremos de congruencias principales.

    Returns:
        Etiquetas canónicas ordenadas por cantidad de clases descendente
    """
    enforce("oracle_elements", algebra.m, MAX_ORACLE_ELEMENTS)
    identity = tuple(range(algebra.m))
    seen = {identity}
    pending = [identity]
    while pending:
        current = pending.pop()
        reps = sorted(set(current))
        for i, a in enumerate(reps):
            for b in reps[i + 1 :]:
                joined = congruence_generated(algebra, [(a, b)], base=current)
                if joined not in seen:
                    seen.add(joined)
                    pending.append(joined)
    return sorted(seen, key=lambda labels: (-len(set(labels)), labels))


def quotient_algebra(algebra: HeytingAlgebra, classes: Sequence[int]) -> HeytingAlgebra:
    """
    Cociente por una congruencia dada como etiquetas de clase.

    Cada clase queda representada por su menor índice.
    """
    reps = sorted(set(int(c) for c in classes))
    position = np.array([reps.index(int(c)) for c in classes], dtype=np.int64)
    rep_idx = np.ix_(reps, reps)
    leq = np.zeros((len(reps), len(reps)), dtype=bool)
    join_q = position[algebra.join[rep_idx]]
    # [a] ≤ [b] sii [a] ∨ [b] = [b]
    leq[:, :] = join_q == np.arange(len(reps))[None, :]
    return HeytingAlgebra(
        leq=_readonly(leq),
        meet=_readonly(position[algebra.meet[rep_idx]]),
        join=_readonly(join_q),
        imp=_readonly(position[algebra.imp[rep_idx]]),
        bottom=int(position[algebra.bottom]),
        top=int(position[algebra.top]),
        labels=tuple(algebra.labels[r] for r in reps),
    )
