"""
Sumas de álgebras uno-generadas (la variedad KG) y las álgebras Bₙ y D.

Las álgebras de KG finitas FSI son sumas B₁ + ⋯ + Bₙ de downsets finitos
de RN; kg_decompose recupera esos bloques cortando en los nodos.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from algebra.heyting import (
    HeytingAlgebra,
    alg_sum_all,
    interval_algebra,
    is_fsi,
    nodes,
    product,
)
from algebra.isomorphism import are_algebras_isomorphic
from algebra.subalgebras import is_one_generated
from constructions.named import bool2, chain_algebra, diamond, x2_algebra
from constructions.rieger_nishimura import rn_downset
from duality.esakia import default_space
from utils.logger import constructions_logger as logger
from utils.verdict import Verdict

KG_BLOCKS = ("2", "a1", "a2", "a3")


class KGDecompositionError(Exception):
    """Se lanza cuando un álgebra no se deja partir en bloques uno-generados."""

    def __init__(self, message: str, interval: Tuple[str, str] | None = None):
        self.interval = interval
        super().__init__(message)


@dataclass(frozen=True)
class SumComponent:
    """
    Bloque entre dos nodos consecutivos.

    Attributes:
        name: "2", "diamond", "x2" u "other"
        low: Nodo inferior (índice en el álgebra)
        high: Nodo superior
        members: Elementos del intervalo
        algebra: Intervalo como álgebra
    """

    name: str
    low: int
    high: int
    members: Tuple[int, ...]
    algebra: HeytingAlgebra


def _component_name(block: HeytingAlgebra) -> str:
    if block.m == 2:
        return "2"
    if block.m == 4 and are_algebras_isomorphic(block, diamond()):
        return "diamond"
    if block.m == 8 and are_algebras_isomorphic(block, x2_algebra()):
        return "x2"
    return "other"


def sum_components(algebra: HeytingAlgebra) -> List[SumComponent]:
    """
    Corta el álgebra en sus nodos y nombra cada intervalo.

    Returns:
        Componentes de arriba hacia abajo, en el orden de alg_sum_all
    """
    cuts = nodes(algebra)
    components = []
    for low, high in zip(cuts, cuts[1:]):
        block, members = interval_algebra(algebra, low, high)
        components.append(
            SumComponent(
                name=_component_name(block),
                low=low,
                high=high,
                members=members,
                algebra=block,
            )
        )
    return list(reversed(components))


def kg_decompose(algebra: HeytingAlgebra) -> List[HeytingAlgebra]:
    """
    Descompone un álgebra FSI de KG en bloques uno-generados.

    Parte en todos los nodos y, si algún intervalo no es uno-generado, lo
    une con el de abajo hasta que lo sea. El resultado es la descomposición
    canónica más fina, no la de bloques maximales: la cadena de 3 da
    [𝟐, 𝟐] aunque ella misma sea uno-generada.

    Args:
        algebra: Álgebra finita FSI

    Returns:
        Bloques de arriba hacia abajo con alg_sum_all(bloques) ≅ A

    Raises:
        KGDecompositionError: Si A no es FSI o algún tramo no es uno-generado
    """
    if not is_fsi(algebra):
        raise KGDecompositionError("precondición: el álgebra no es FSI")
    cuts = nodes(algebra)
    blocks: List[HeytingAlgebra] = []
    high_index = len(cuts) - 1
    while high_index > 0:
        low_index = high_index - 1
        while True:
            block, _ = interval_algebra(algebra, cuts[low_index], cuts[high_index])
            if is_one_generated(block) is not None:
                break
            if low_index == 0:
                interval = (algebra.labels[cuts[0]], algebra.labels[cuts[high_index]])
                raise KGDecompositionError(
                    f"No es descomponible en KG: el tramo {interval} no es uno-generado",
                    interval,
                )
            low_index -= 1
        blocks.append(block)
        high_index = low_index
    logger.info(f"Descomposición KG: {len(blocks)} bloques")
    return blocks


def _block(name: str) -> HeytingAlgebra:
    if name == "2":
        return bool2()
    return rn_downset(name)


def kg_generator_sum(names: Sequence[str]) -> HeytingAlgebra:
    """Suma de bloques nombrados ("2" o etiquetas de RN), el primero arriba."""
    return alg_sum_all([_block(name) for name in names])


def random_kg_sum(rng: np.random.Generator, count: int) -> Tuple[HeytingAlgebra, List[str]]:
    """
    Suma aleatoria 𝟐 + B₁ + ⋯ + B_count con Bᵢ en 𝟐, ↓a1, ↓a2, ↓a3.

    El 𝟐 de arriba hace que la suma sea FSI.
    """
    names = ["2"] + [str(rng.choice(KG_BLOCKS)) for _ in range(count)]
    return kg_generator_sum(names), names


def kg_measure_bounds(algebra: HeytingAlgebra) -> Verdict:
    """
    Comprueba grado de incomparabilidad ≤ 2 y ancho ≤ 2 sobre el dual.
    """
    space, _ = default_space(algebra)
    degree = space.incomparability_degree
    if degree > 2:
        return Verdict.fail("incomparabilidad", degree=degree)
    if space.width > 2:
        return Verdict.fail("ancho", width=space.width)
    return Verdict.ok()


def b_n_family(n: int) -> HeytingAlgebra:
    """Bₙ = 𝟐 + (𝟐 × C) + C₁ + ⋯ + C_(n-2), con C la cadena de 3 y Cᵢ diamantes."""
    if n < 2:
        raise ValueError("Bₙ requiere n ≥ 2")
    parts = [bool2(), product(bool2(), chain_algebra(3))] + [diamond()] * (n - 2)
    return alg_sum_all(parts)


def algebra_D() -> HeytingAlgebra:
    """D = 𝟐 + ↓a3 + 𝟐, de 10 elementos."""
    return alg_sum_all([bool2(), rn_downset("a3"), bool2()])
