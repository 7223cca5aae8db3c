"""
Isomorfismos de posets finitos.

Se reduce a isomorfismo de digrafos sobre la relación estricta, usando
VF2 de networkx con invariantes locales como atributos de nodo para podar.
El orden de inserción de nodos es el de los índices, así que el primer
isomorfismo encontrado es determinista.
"""

from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from poset.finite_poset import FinitePoset, iter_bits, popcount


@lru_cache(maxsize=8192)
def point_invariants(poset: FinitePoset) -> Tuple[Tuple[int, int, int, int], ...]:
    """Por punto: (|↑x|, |↓x|, cubrimientos hacia arriba, cubrimientos hacia abajo)."""
    covers_up = [0] * poset.n
    covers_down = [0] * poset.n
    for a, b in poset.covers:
        covers_up[a] += 1
        covers_down[b] += 1
    return tuple(
        (popcount(poset.up[x]), popcount(poset.down[x]), covers_up[x], covers_down[x])
        for x in range(poset.n)
    )


@lru_cache(maxsize=8192)
def canonical_signature(poset: FinitePoset) -> Tuple:
    """Invariante barato: cantidad de puntos y multiconjunto de invariantes locales."""
    return (
        poset.n,
        sum(popcount(m) for m in poset.up),
        tuple(sorted(point_invariants(poset))),
    )


def _order_digraph(poset: FinitePoset) -> nx.DiGraph:
    graph = nx.DiGraph()
    invariants = point_invariants(poset)
    for x in range(poset.n):
        graph.add_node(x, inv=invariants[x])
    for x in range(poset.n):
        for y in iter_bits(poset.up[x]):
            if y != x:
                graph.add_edge(x, y)
    return graph


def iter_isomorphisms(
    source: FinitePoset, target: FinitePoset
) -> Iterator[Tuple[int, ...]]:
    """
    Itera isomorfismos de orden source -> target.

    Yields:
        Tuplas f con f[x] = imagen del punto x
    """
    if source.n != target.n:
        return
    if canonical_signature(source) != canonical_signature(target):
        return
    if source.n == 0:
        yield ()
        return
    matcher = DiGraphMatcher(
        _order_digraph(source),
        _order_digraph(target),
        node_match=lambda a, b: a["inv"] == b["inv"],
    )
    for mapping in matcher.isomorphisms_iter():
        yield tuple(mapping[x] for x in range(source.n))


def are_isomorphic(
    source: FinitePoset, target: FinitePoset
) -> Optional[Tuple[int, ...]]:
    """
    Busca un isomorfismo de orden entre dos posets.

    Args:
        source: Poset de partida
        target: Poset de llegada

    Returns:
        Biyección como tupla (f[x] = imagen de x) o None
    """
    return next(iter_isomorphisms(source, target), None)


def automorphisms(poset: FinitePoset) -> List[Tuple[int, ...]]:
    """Todos los automorfismos en orden lexicográfico (la identidad primero)."""
    return sorted(iter_isomorphisms(poset, poset))


def is_order_isomorphism(
    source: FinitePoset, target: FinitePoset, mapping: Tuple[int, ...]
) -> bool:
    """Verifica que mapping sea biyectivo y preserve y refleje el orden."""
    if source.n != target.n or len(mapping) != source.n:
        return False
    if sorted(mapping) != list(range(target.n)):
        return False
    return all(
        source.leq(x, y) == target.leq(mapping[x], mapping[y])
        for x in range(source.n)
        for y in range(source.n)
    )
