"""
Generadores con nombre: 𝟐, cadenas, diamante (D₂*), D₂ y Xₙ.
"""

from dataclasses import replace
from typing import Callable, Dict

from algebra.heyting import HeytingAlgebra, from_upsets
from poset.finite_poset import FinitePoset, antichain, chain


def bool2() -> HeytingAlgebra:
    """Álgebra de Boole de dos elementos."""
    return replace(from_upsets(chain(1)), labels=("0", "1"))


def chain_algebra(k: int) -> HeytingAlgebra:
    """
    Cadena de k elementos como álgebra de Heyting (k ≥ 1).

    Los elementos quedan en orden ascendente: 0, c1, ..., 1.
    """
    if k < 1:
        raise ValueError("Una cadena necesita al menos un elemento")
    algebra = from_upsets(chain(k - 1))
    if k == 1:
        return replace(algebra, labels=("0",))
    labels = ("0",) + tuple(f"c{i}" for i in range(1, k - 1)) + ("1",)
    return replace(algebra, labels=labels)


def d2_space() -> FinitePoset:
    """D₂: dos puntos incomparables."""
    return antichain(2).relabel(["p", "q"])


def diamond() -> HeytingAlgebra:
    """D₂* ≅ 𝟐 × 𝟐."""
    return replace(from_upsets(d2_space()), labels=("0", "p", "q", "1"))


def x_n_space(n: int) -> FinitePoset:
    """
    Xₙ sobre a1..an, b1..bn: a1 ≤ b2..bn y a_m ≤ b1, b_m para m > 1.

    a_m tiene índice m-1 y b_m índice n+m-1.
    """
    if n < 2:
        raise ValueError("Xₙ requiere n ≥ 2")
    covers = [(0, n + m - 1) for m in range(2, n + 1)]
    for m in range(2, n + 1):
        covers.append((m - 1, n))
        covers.append((m - 1, n + m - 1))
    labels = [f"a{m}" for m in range(1, n + 1)] + [f"b{m}" for m in range(1, n + 1)]
    return FinitePoset.from_covers(2 * n, covers, labels=labels)


def x2_algebra() -> HeytingAlgebra:
    """X₂*, el álgebra de upsets de X₂ (8 elementos)."""
    return from_upsets(x_n_space(2))


NAMED_ALGEBRAS: Dict[str, Callable[[], HeytingAlgebra]] = {
    "bool2": bool2,
    "diamond": diamond,
    "x2-algebra": x2_algebra,
}
