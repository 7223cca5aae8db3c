"""
Dualidad de Esakia para álgebras de Heyting finitas.

En el caso finito la topología es discreta: un espacio de Esakia es un
poset finito y los morfismos son los mapas f con f[↑x] = ↑f(x).
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from algebra.heyting import HeytingAlgebra, from_upsets
from poset.finite_poset import FinitePoset, bit, iter_bits, mask_of
from utils.limits import enforce, get_limits
from utils.logger import duality_logger as logger
from utils.verdict import Verdict


class EsakiaMorphismError(Exception):
    """Se lanza cuando un mapa no es un morfismo de Esakia."""

    def __init__(self, verdict: Verdict):
        self.verdict = verdict
        super().__init__(f"No es un morfismo de Esakia: {verdict.reason} ({verdict.witness})")


@dataclass(frozen=True)
class EsakiaMap:
    """
    Mapa entre posets finitos.

    Attributes:
        source: Dominio
        target: Codominio
        map: map[x] es la imagen del punto x
    """

    source: FinitePoset
    target: FinitePoset
    map: Tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image_mask(self, points: int) -> int:
        return mask_of(self.map[x] for x in iter_bits(points))

    def preimage_mask(self, points: int) -> int:
        return mask_of(x for x, y in enumerate(self.map) if points >> y & 1)

    @property
    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    @property
    def is_surjective(self) -> bool:
        return set(self.map) == set(range(self.target.n))

    def to_dict(self) -> Dict[str, Any]:
        return {"map": list(self.map)}


@dataclass(frozen=True)
class DualSpace:
    """
    Espacio dual calculado desde las tablas.

    Attributes:
        poset: Filtros primos ordenados por inclusión
        generators: generators[p] es el join-primo a con F_p = ↑a
        gamma: gamma[a] es la máscara de filtros primos que contienen a a
    """

    poset: FinitePoset
    generators: Tuple[int, ...]
    gamma: Tuple[int, ...]


def join_prime_elements(algebra: HeytingAlgebra) -> Tuple[int, ...]:
    """
    Elementos a ≠ 0 tales que a ≤ x ∨ y implica a ≤ x o a ≤ y.

    Returns:
        Índices en orden ascendente
    """
    leq = algebra.leq
    result = []
    for a in range(algebra.m):
        if a == algebra.bottom:
            continue
        below_join = leq[a, algebra.join]
        either = leq[a, :][:, None] | leq[a, :][None, :]
        if np.array_equal(below_join, either):
            result.append(a)
    return tuple(result)


def dual_space(algebra: HeytingAlgebra) -> DualSpace:
    """
    Calcula el espacio de filtros primos sin usar la procedencia.

    En un álgebra finita todo filtro es principal, y ↑a es primo y propio
    exactamente cuando a es join-primo. ↑a ⊆ ↑b sii b ≤ a.

    Args:
        algebra: Álgebra de Heyting finita

    Returns:
        DualSpace con el poset, los generadores y el mapa γ
    """
    enforce("max_upsets", algebra.m, get_limits().max_upsets)
    generators = join_prime_elements(algebra)
    up = []
    for a in generators:
        up.append(mask_of(j for j, b in enumerate(generators) if algebra.leq[b, a]))
    labels = [f"↑{algebra.labels[a]}" for a in generators]
    poset = FinitePoset.from_up_masks(up, labels)
    gamma = tuple(
        mask_of(j for j, b in enumerate(generators) if algebra.leq[b, x])
        for x in range(algebra.m)
    )
    logger.debug(f"Dual de álgebra con {algebra.m} elementos: {poset.n} filtros primos")
    return DualSpace(poset=poset, generators=generators, gamma=gamma)


def prime_filters(algebra: HeytingAlgebra) -> FinitePoset:
    """Poset de filtros primos propios ordenados por inclusión."""
    return dual_space(algebra).poset


def dual_algebra(space: FinitePoset) -> HeytingAlgebra:
    """Álgebra de upsets del espacio (X*)."""
    return from_upsets(space)


def element_masks(algebra: HeytingAlgebra, space: FinitePoset) -> Tuple[int, ...]:
    """
    Upset de cada elemento sobre el espacio dado.

    El espacio debe ser el dual de procedencia o el de filtros primos.

    Raises:
        ValueError: Si el espacio no corresponde al álgebra
    """
    if algebra.dual is not None and algebra.element_upsets is not None and space == algebra.dual:
        return algebra.element_upsets
    computed = dual_space(algebra)
    if space == computed.poset:
        return computed.gamma
    raise ValueError("El espacio no es el dual registrado ni el de filtros primos")


def default_space(algebra: HeytingAlgebra) -> Tuple[FinitePoset, Tuple[int, ...]]:
    """Dual de procedencia si existe; si no, filtros primos. Con el mapa γ."""
    if algebra.dual is not None and algebra.element_upsets is not None:
        return algebra.dual, algebra.element_upsets
    computed = dual_space(algebra)
    return computed.poset, computed.gamma


def is_esakia_morphism(
    mapping: Sequence[int], source: FinitePoset, target: FinitePoset
) -> Verdict:
    """
    Verifica monotonía y condición de retroceso.

    Ambas juntas equivalen a f[↑x] = ↑f(x) para todo x.

    Args:
        mapping: mapping[x] = imagen de x
        source: Dominio
        target: Codominio

    Returns:
        Verdict con testigo (x, x') de no monotonía o (x, y) de retroceso
    """
    if len(mapping) != source.n:
        return Verdict.fail("dominio", expected=source.n, got=len(mapping))
    for x, y in enumerate(mapping):
        if not 0 <= y < target.n:
            return Verdict.fail("codominio", point=x, image=y)
    for x in range(source.n):
        fx = mapping[x]
        image = mask_of(mapping[z] for z in iter_bits(source.up[x]))
        outside = image & ~target.up[fx]
        if outside:
            z = next(z for z in iter_bits(source.up[x]) if outside >> mapping[z] & 1)
            return Verdict.fail("monotonía", pair=(x, z))
        missing = target.up[fx] & ~image
        if missing:
            y = next(iter_bits(missing))
            return Verdict.fail("condición de retroceso", pair=(x, y))
    return Verdict.ok()


def require_esakia_morphism(f: EsakiaMap) -> None:
    verdict = is_esakia_morphism(f.map, f.source, f.target)
    if not verdict:
        raise EsakiaMorphismError(verdict)


def enumerate_esakia_morphisms(source: FinitePoset, target: FinitePoset) -> List[EsakiaMap]:
    """
    Todos los morfismos de Esakia source -> target.

    Asigna puntos de arriba hacia abajo: al llegar a x ya se conoce la
    imagen U de su upset estricto, y un candidato c sirve sii ↑c = U ∪ {c}.

    Args:
        source: Dominio (≤ límite de puntos de morfismos)
        target: Codominio

    Returns:
        Morfismos en orden lexicográfico de sus tuplas

    Raises:
        ResourceCapError: Si algún poset supera el límite
    """
    cap = get_limits().max_morphism_points
    enforce("max_morphism_points", max(source.n, target.n), cap)
    order = list(reversed(source.linear_extension))
    values = [-1] * source.n
    found: List[Tuple[int, ...]] = []

    def search(i: int) -> None:
        if i == len(order):
            found.append(tuple(values))
            return
        x = order[i]
        strict_image = mask_of(values[z] for z in iter_bits(source.up[x] & ~bit(x)))
        for c in range(target.n):
            if target.up[c] == strict_image | bit(c):
                values[x] = c
                search(i + 1)
        values[x] = -1

    search(0)
    found.sort()
    logger.debug(f"Morfismos de Esakia {source.n} -> {target.n}: {len(found)}")
    return [EsakiaMap(source=source, target=target, map=m) for m in found]


def compose(first: EsakiaMap, second: EsakiaMap) -> EsakiaMap:
    """second ∘ first; el codominio de first debe ser el dominio de second."""
    if first.target != second.source:
        raise ValueError("Los mapas no se pueden componer")
    return EsakiaMap(
        source=first.source,
        target=second.target,
        map=tuple(second.map[y] for y in first.map),
    )


def upset_inclusion(poset: FinitePoset, upset: int) -> EsakiaMap:
    """
    Inclusión del subposet de un upset, que es un morfismo de Esakia.

    Raises:
        ValueError: Si la máscara no es un upset
    """
    if not poset.is_upset(upset):
        raise ValueError("La máscara no es un upset")
    sub, points = poset.subposet(upset)
    return EsakiaMap(source=sub, target=poset, map=points)


def image_is_upset(f: EsakiaMap) -> bool:
    """La imagen de un morfismo de Esakia es un upset del codominio."""
    return f.target.is_upset(f.image_mask(f.source.full_mask))


def dual_map_of_homomorphism(
    source: HeytingAlgebra, target: HeytingAlgebra, mapping: Sequence[int]
) -> EsakiaMap:
    """
    Mapa dual h_*: F ↦ h⁻¹(F) entre filtros primos.

    Args:
        source: Dominio A del homomorfismo
        target: Codominio B
        mapping: h con h[a] = imagen de a

    Returns:
        EsakiaMap de prime_filters(B) en prime_filters(A)
    """
    dual_a = dual_space(source)
    dual_b = dual_space(target)
    position = {a: p for p, a in enumerate(dual_a.generators)}
    images = []
    for b in dual_b.generators:
        # h⁻¹(↑b) es principal, generado por el menor a con b ≤ h(a)
        preimage = [a for a in range(source.m) if target.leq[b, mapping[a]]]
        generator = source.top
        for a in preimage:
            generator = int(source.meet[generator, a])
        images.append(position[generator])
    return EsakiaMap(source=dual_b.poset, target=dual_a.poset, map=tuple(images))


def homomorphism_of_dual_map(
    f: EsakiaMap,
) -> Tuple[HeytingAlgebra, HeytingAlgebra, Tuple[int, ...]]:
    """
    Homomorfismo dual f*: U ↦ f⁻¹(U) de target* en source*.

    Returns:
        Tupla (dominio target*, codominio source*, mapa de elementos)
    """
    domain = from_upsets(f.target)
    codomain = from_upsets(f.source)
    position = {u: i for i, u in enumerate(codomain.element_upsets)}
    mapping = tuple(position[f.preimage_mask(u)] for u in domain.element_upsets)
    return domain, codomain, mapping
