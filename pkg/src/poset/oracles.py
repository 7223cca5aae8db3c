"""
Oráculos de fuerza bruta para contrastar las medidas del poset.

Recorren todos los subconjuntos, por lo que solo sirven para posets chicos
(tests y escenarios de calidad).
"""

from typing import List

from poset.finite_poset import FinitePoset, iter_bits, popcount

MAX_ORACLE_POINTS = 12


def _guard(poset: FinitePoset) -> None:
    if poset.n > MAX_ORACLE_POINTS:
        raise ValueError(f"Oráculo limitado a {MAX_ORACLE_POINTS} puntos")


def is_chain_mask(poset: FinitePoset, mask: int) -> bool:
    points = list(iter_bits(mask))
    return all(poset.leq(a, b) or poset.leq(b, a) for a in points for b in points)


def is_antichain_mask(poset: FinitePoset, mask: int) -> bool:
    points = list(iter_bits(mask))
    return all(a == b or not poset.leq(a, b) for a in points for b in points)


def depth_bruteforce(poset: FinitePoset) -> int:
    _guard(poset)
    return max(
        (popcount(m) for m in range(1 << poset.n) if is_chain_mask(poset, m)),
        default=0,
    )


def width_bruteforce(poset: FinitePoset) -> int:
    _guard(poset)
    best = 0
    for m in range(1 << poset.n):
        if not is_antichain_mask(poset, m):
            continue
        # la anticadena debe caber en algún ↑x
        if any(m & ~poset.up[x] == 0 for x in range(poset.n)):
            best = max(best, popcount(m))
    return best


def incomparability_bruteforce(poset: FinitePoset) -> int:
    _guard(poset)
    best = 0
    for x in range(poset.n):
        region = [z for z in range(poset.n) if poset.leq(x, z)]
        for y in region:
            count = sum(
                1 for z in region if not poset.leq(y, z) and not poset.leq(z, y)
            )
            best = max(best, count)
    return best


def upset_count_bruteforce(poset: FinitePoset) -> int:
    _guard(poset)
    return sum(1 for m in range(1 << poset.n) if poset.is_upset(m))


def chains_bruteforce(poset: FinitePoset) -> List[int]:
    """Máscaras de todas las cadenas no vacías."""
    _guard(poset)
    return [m for m in range(1, 1 << poset.n) if is_chain_mask(poset, m)]


def antichains_bruteforce(poset: FinitePoset) -> List[int]:
    """Máscaras de todas las anticadenas no vacías."""
    _guard(poset)
    return [m for m in range(1, 1 << poset.n) if is_antichain_mask(poset, m)]
