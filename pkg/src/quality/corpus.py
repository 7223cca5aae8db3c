"""
Corpus aleatorio reproducible de posets y álgebras para los escenarios.
"""

from typing import List

import numpy as np

from algebra.heyting import HeytingAlgebra, from_upsets
from poset.finite_poset import FinitePoset

DEFAULT_SEED = 20240611


def make_rng(seed: int = DEFAULT_SEED) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_poset(rng: np.random.Generator, n: int, density: float = 0.35) -> FinitePoset:
    """
    Poset aleatorio de n puntos: cada par i < j se relaciona con
    probabilidad density y se toma la clausura transitiva.
    """
    pairs = [
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density
    ]
    return FinitePoset.from_covers(n, pairs)


def random_posets(
    rng: np.random.Generator, count: int, min_points: int, max_points: int
) -> List[FinitePoset]:
    """count posets con tamaño uniforme en [min_points, max_points]."""
    sizes = rng.integers(min_points, max_points + 1, size=count)
    return [random_poset(rng, int(n), density=float(rng.uniform(0.2, 0.6))) for n in sizes]


def random_small_algebra(rng: np.random.Generator, max_elements: int = 8) -> HeytingAlgebra:
    """
    Álgebra de upsets de un poset aleatorio con a lo sumo max_elements
    elementos; se reintenta hasta cumplir la cota.
    """
    max_points = max(1, int(np.log2(max_elements)))
    while True:
        n = int(rng.integers(1, max_points + 1))
        algebra = from_upsets(random_poset(rng, n, density=float(rng.uniform(0.2, 0.8))))
        if algebra.m <= max_elements:
            return algebra
