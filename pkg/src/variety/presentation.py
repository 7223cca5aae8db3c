"""
Variedades finitamente generadas V(K) con K un conjunto finito de álgebras finitas.

Por el lema de Jónsson, los miembros FSI de V(K) están en HS(K). En el
lado dual: H toma upsets del espacio de un generador, S cocientes por
particiones correctas, y FSI pide que el cociente sea enraizado. Con eso
los miembros FSI se enumeran hasta isomorfismo y la pertenencia de un
álgebra finita se reduce a sus upsets principales.
"""

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, List, Sequence, Tuple

from algebra.heyting import HeytingAlgebra, HeytingValidationError, verify_heyting
from duality.esakia import default_space, dual_algebra
from duality.partitions import enumerate_correct_partitions, quotient_space
from poset.finite_poset import FinitePoset
from poset.isomorphism import are_isomorphic, canonical_signature
from utils.limits import enforce, get_limits
from utils.logger import variety_logger as logger
from utils.verdict import Verdict


class VarietyMembershipError(Exception):
    """Se lanza cuando un álgebra que debía estar en la variedad no lo está."""

    def __init__(self, verdict: Verdict):
        self.verdict = verdict
        super().__init__(f"El álgebra no pertenece a la variedad: {verdict.witness}")


@dataclass(frozen=True)
class VarietyPresentation:
    """
    Variedad generada por una lista finita de álgebras finitas.

    Attributes:
        generators: Generadores, cada uno con dual de a lo sumo el límite
            de puntos de particiones
    """

    generators: Tuple[HeytingAlgebra, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("Una variedad necesita al menos un generador")
        cap = get_limits().max_partition_points
        for algebra in self.generators:
            verdict = verify_heyting(algebra)
            if not verdict:
                raise HeytingValidationError(verdict)
            enforce("max_partition_points", default_space(algebra)[0].n, cap)

    @classmethod
    def of(cls, *generators: HeytingAlgebra) -> "VarietyPresentation":
        return cls(generators=tuple(generators))

    @classmethod
    def from_posets(cls, posets: Sequence[FinitePoset]) -> "VarietyPresentation":
        """Variedad generada por las álgebras de upsets de los posets dados."""
        return cls(generators=tuple(dual_algebra(p) for p in posets))

    @cached_property
    def duals(self) -> Tuple[FinitePoset, ...]:
        return tuple(default_space(a)[0] for a in self.generators)

    def __repr__(self) -> str:
        sizes = ", ".join(str(a.m) for a in self.generators)
        return f"VarietyPresentation(generadores=[{sizes}])"


def _upsets_to_scan(poset: FinitePoset, principal_only: bool) -> List[int]:
    if principal_only:
        return sorted(set(poset.up))
    return [u for u in poset.all_upsets() if u]


class _RepresentativeIndex:
    """Representantes sin repetir, agrupados por firma para el test de isomorfismo."""

    def __init__(self):
        self.items: List[FinitePoset] = []
        self.buckets: Dict[Tuple, List[int]] = defaultdict(list)

    def find(self, poset: FinitePoset) -> int:
        for index in self.buckets.get(canonical_signature(poset), []):
            if are_isomorphic(poset, self.items[index]) is not None:
                return index
        return -1

    def add(self, poset: FinitePoset) -> bool:
        if self.find(poset) >= 0:
            return False
        self.buckets[canonical_signature(poset)].append(len(self.items))
        self.items.append(poset)
        return True


@lru_cache(maxsize=64)
def fsi_representatives(
    variety: VarietyPresentation, principal_only: bool = True
) -> Tuple[FinitePoset, ...]:
    """
    Duales de los miembros FSI de V, hasta isomorfismo.

    Para cada dual P de un generador recorre upsets Q de P (H), cada
    partición correcta R de Q (S) y conserva Q/R si es enraizado.
    Alcanza con los upsets principales: un cociente enraizado de Q es el
    cociente de ↑x para cualquier x de su clase raíz. Con
    principal_only=False se recorren todos los upsets, para contrastar.

    Args:
        variety: Variedad finitamente generada
        principal_only: Si True recorre solo upsets principales

    Returns:
        Posets enraizados ordenados por (puntos, firma, descubrimiento)

    Raises:
        ResourceCapError: Si algún upset supera el límite de particiones
    """
    index = _RepresentativeIndex()
    for poset in variety.duals:
        for upset in _upsets_to_scan(poset, principal_only):
            sub, _ = poset.subposet(upset)
            for partition in enumerate_correct_partitions(sub):
                quotient = quotient_space(partition)
                if quotient.is_rooted:
                    index.add(quotient)

    ordered = sorted(
        enumerate(index.items), key=lambda item: (item[1].n, canonical_signature(item[1]), item[0])
    )
    result = tuple(poset for _, poset in ordered)
    logger.info(f"{variety}: {len(result)} miembros FSI hasta isomorfismo")
    return result


def find_representative(variety: VarietyPresentation, poset: FinitePoset) -> int:
    """Índice del representante FSI isomorfo al poset, o -1."""
    signature = canonical_signature(poset)
    for i, candidate in enumerate(fsi_representatives(variety)):
        if canonical_signature(candidate) == signature and are_isomorphic(poset, candidate) is not None:
            return i
    return -1


def contains(variety: VarietyPresentation, algebra: HeytingAlgebra) -> Verdict:
    """
    Decide si un álgebra finita pertenece a V.

    B está en V sii cada cociente FSI de B lo está, y los cocientes FSI
    finitos de B son los duales ↑x de los puntos x de B_*.

    Args:
        variety: Variedad finitamente generada
        algebra: Álgebra finita B

    Returns:
        Verdict; si vale, el testigo asigna a cada punto el índice de su
        representante; si no, trae el primer ↑x sin representante

    Raises:
        ResourceCapError: Si el dual de B supera el límite de pertenencia
    """
    space, _ = default_space(algebra)
    enforce("max_member_points", space.n, get_limits().max_member_points)
    matches: Dict[str, int] = {}
    for x in range(space.n):
        upset, _ = space.principal_upset(x)
        found = find_representative(variety, upset)
        if found < 0:
            logger.debug(f"↑{space.labels[x]} no es dual de un miembro FSI de {variety}")
            return Verdict.fail(
                "↑x fuera de V", point=space.labels[x], upset=upset.to_dict()
            )
        matches[space.labels[x]] = found
    return Verdict(holds=True, witness={"matches": matches})


def representative_algebras(variety: VarietyPresentation) -> List[HeytingAlgebra]:
    """Miembros FSI como álgebras de upsets, en el orden de los representantes."""
    return [dual_algebra(p) for p in fsi_representatives(variety)]
