"""
Extracción de una copia de ↑f(⊥) dentro del dominio de un morfismo de Esakia.

Dado f: Y -> X con Y enraizado en ⊥ y tal que cada z > f(⊥) (salvo el
máximo de X) está en una anticadena de n elementos dentro de ↑f(⊥), cada
fibra T_z = f⁻¹(z) es una cadena y Z = {max T_z} ∪ {⊥} es isomorfo, vía
f, a ↑f(⊥) sin el máximo de X.
"""

from dataclasses import dataclass
from typing import Any, Dict, Tuple

from duality.esakia import EsakiaMap, require_esakia_morphism
from poset.finite_poset import bit, iter_bits, mask_of, popcount
from poset.isomorphism import is_order_isomorphism
from utils.logger import duality_logger as logger


class TrickWidthError(Exception):
    """Se lanza cuando no se cumplen las hipótesis de la extracción."""

    def __init__(self, hypothesis: str, witness: Dict[str, Any]):
        self.hypothesis = hypothesis
        self.witness = witness
        super().__init__(f"Hipótesis violada: {hypothesis} ({witness})")


@dataclass(frozen=True)
class TrickWidthResult:
    """
    Attributes:
        subset: Puntos de Y que forman Z, ordenados por su imagen
        image: Puntos de X (↑f(⊥) sin el máximo) en el mismo orden
    """

    subset: Tuple[int, ...]
    image: Tuple[int, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {"subset": list(self.subset), "image": list(self.image)}


def trick_width_subposet(f: EsakiaMap, n: int) -> TrickWidthResult:
    """
    Construye Z y certifica que f restringida a Z es un isomorfismo de orden.

    Args:
        f: Morfismo de Esakia Y -> X
        n: Tamaño de anticadena de la hipótesis

    Returns:
        TrickWidthResult con Z y su imagen

    Raises:
        EsakiaMorphismError: Si f no es un morfismo de Esakia
        TrickWidthError: Si Y no tiene mínimo, alguna z no está en una
            anticadena de n elementos, o alguna fibra no es una cadena
    """
    require_esakia_morphism(f)
    domain, codomain = f.source, f.target
    if n < 1:
        raise ValueError("n debe ser positivo")

    root = domain.minimum
    if root is None:
        raise TrickWidthError("mínimo", {"minimal_points": list(domain.minimal_points)})

    base = f(root)
    region = codomain.up[base]
    top = codomain.maximum
    targets = region & ~(bit(top) if top is not None else 0)

    for z in iter_bits(targets & ~bit(base)):
        others = region & codomain.incomparable[z]
        if codomain.max_antichain_size(others) < n - 1:
            raise TrickWidthError("anticadena", {"point": z, "n": n})

    chosen = {base: root}
    for z in iter_bits(targets & ~bit(base)):
        fiber = f.preimage_mask(bit(z))
        points = list(iter_bits(fiber))
        for i, a in enumerate(points):
            for c in points[i + 1 :]:
                if not (domain.leq(a, c) or domain.leq(c, a)):
                    raise TrickWidthError("fibra no es cadena", {"point": z, "pair": (a, c)})
        chosen[z] = max(points, key=lambda a: popcount(domain.down[a] & fiber))

    image = tuple(sorted(chosen))
    subset = tuple(chosen[z] for z in image)
    sub_domain, points_domain = domain.subposet(mask_of(subset))
    sub_codomain, points_codomain = codomain.subposet(mask_of(image))
    mapping = tuple(points_codomain.index(f(p)) for p in points_domain)
    if not is_order_isomorphism(sub_domain, sub_codomain, mapping):
        raise TrickWidthError("isomorfismo", {"subset": list(subset)})

    logger.info(f"Subposet extraído: {len(subset)} puntos isomorfos a ↑f(⊥)")
    return TrickWidthResult(subset=subset, image=image)
