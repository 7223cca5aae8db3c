"""
Isomorfismo de álgebras de Heyting finitas.

Un isomorfismo de retículos distributivos finitos queda determinado por
su restricción a los join-irreducibles, así que alcanza con buscar un
isomorfismo de orden entre esos posets y extenderlo por supremos.
"""

from typing import Optional, Tuple

from algebra.heyting import HeytingAlgebra
from algebra.homomorphisms import is_homomorphism
from poset.finite_poset import FinitePoset, mask_of
from poset.isomorphism import iter_isomorphisms


def join_irreducible_poset(algebra: HeytingAlgebra) -> Tuple[FinitePoset, Tuple[int, ...]]:
    """
    Poset de los join-irreducibles con el orden heredado.

    Returns:
        Tupla (poset, elemento del álgebra de cada punto)
    """
    points = algebra.join_irreducibles
    up = [
        mask_of(j for j, b in enumerate(points) if algebra.leq[a, b]) for a in points
    ]
    return FinitePoset.from_up_masks(up), points


def _extend(
    source: HeytingAlgebra,
    target: HeytingAlgebra,
    source_points: Tuple[int, ...],
    target_points: Tuple[int, ...],
    point_map: Tuple[int, ...],
) -> Tuple[int, ...]:
    images = []
    for a in range(source.m):
        acc = target.bottom
        for i, j in enumerate(source_points):
            if source.leq[j, a]:
                acc = int(target.join[acc, target_points[point_map[i]]])
        images.append(acc)
    return tuple(images)


def algebra_iso(source: HeytingAlgebra, target: HeytingAlgebra) -> Optional[Tuple[int, ...]]:
    """
    Busca un isomorfismo de Heyting entre dos álgebras.

    Args:
        source: Álgebra de partida
        target: Álgebra de llegada

    Returns:
        Biyección h (h[a] = imagen de a) verificada contra las tablas, o None
    """
    if source.m != target.m:
        return None
    if source is target:
        return tuple(range(source.m))
    poset_s, points_s = join_irreducible_poset(source)
    poset_t, points_t = join_irreducible_poset(target)
    for point_map in iter_isomorphisms(poset_s, poset_t):
        mapping = _extend(source, target, points_s, points_t, point_map)
        if len(set(mapping)) == source.m and is_homomorphism(source, target, mapping):
            return mapping
    return None


def are_algebras_isomorphic(source: HeytingAlgebra, target: HeytingAlgebra) -> bool:
    return algebra_iso(source, target) is not None
