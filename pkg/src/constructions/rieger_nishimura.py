"""
Downsets principales finitos de la escalera de Rieger–Nishimura.

Elementos: 0, w0, w1, a1, w2, a2, ... con los cubrimientos
0 ⋖ w0, 0 ⋖ w1, w0 ⋖ a1, w1 ⋖ a1, w0 ⋖ w2 y, para k ≥ 1,
w(k+1) ⋖ a(k+1), ak ⋖ a(k+1), ak ⋖ w(k+2).
"""

import re
from dataclasses import dataclass
from typing import List, Tuple

from algebra.heyting import HeytingAlgebra, alg_sum_all, from_lattice_order
from algebra.isomorphism import algebra_iso
from algebra.subalgebras import SubalgebraHandle
from constructions.named import bool2, diamond
from poset.finite_poset import FinitePoset, mask_of
from utils.logger import constructions_logger as logger

MAX_RN_INDEX = 30

_LABEL = re.compile(r"^(?:(0)|([wa])(\d+))$")


class LemmaHypothesisError(Exception):
    """Se lanza cuando un extractor recibe un álgebra fuera de su hipótesis."""


@dataclass(frozen=True, order=True)
class RNElement:
    """
    Elemento de RN.

    Attributes:
        kind: "0", "w" o "a"
        index: Índice (0 para el cero)
    """

    kind: str
    index: int = 0

    @classmethod
    def parse(cls, label: str) -> "RNElement":
        match = _LABEL.match(label.strip())
        if match is None:
            raise ValueError(f"Etiqueta de RN inválida: '{label}'")
        if match.group(1):
            return cls("0")
        kind, index = match.group(2), int(match.group(3))
        if kind == "a" and index == 0:
            # a0 se lee como w0
            return cls("w", 0)
        return cls(kind, index)

    @property
    def label(self) -> str:
        return "0" if self.kind == "0" else f"{self.kind}{self.index}"


def _rn_elements(index: int) -> List[RNElement]:
    elements = [RNElement("0"), RNElement("w", 0)]
    for k in range(1, index + 1):
        elements.extend([RNElement("w", k), RNElement("a", k)])
    return elements


def _rn_covers(elements: List[RNElement]) -> List[Tuple[int, int]]:
    position = {e: i for i, e in enumerate(elements)}
    candidates = [
        (RNElement("0"), RNElement("w", 0)),
        (RNElement("0"), RNElement("w", 1)),
        (RNElement("w", 0), RNElement("a", 1)),
        (RNElement("w", 1), RNElement("a", 1)),
        (RNElement("w", 0), RNElement("w", 2)),
    ]
    top = max(e.index for e in elements)
    for k in range(1, top + 1):
        candidates.extend(
            [
                (RNElement("w", k + 1), RNElement("a", k + 1)),
                (RNElement("a", k), RNElement("a", k + 1)),
                (RNElement("a", k), RNElement("w", k + 2)),
            ]
        )
    return [
        (position[low], position[high])
        for low, high in candidates
        if low in position and high in position
    ]


def rn_poset(index: int) -> FinitePoset:
    """Fragmento de RN con todos los elementos de índice ≤ index."""
    if not 0 <= index <= MAX_RN_INDEX:
        raise ValueError(f"Índice fuera de rango (0..{MAX_RN_INDEX}): {index}")
    elements = _rn_elements(index)
    return FinitePoset.from_covers(
        len(elements), _rn_covers(elements), labels=[e.label for e in elements]
    )


def rn_downset(top: RNElement | str) -> HeytingAlgebra:
    """
    ↓top en RN como álgebra de Heyting.

    Las operaciones se derivan del orden del retículo y se verifican.

    Args:
        top: Elemento de RN o su etiqueta ("a3", "w5", ...)

    Returns:
        Álgebra con las etiquetas de RN
    """
    element = RNElement.parse(top) if isinstance(top, str) else top
    if element.kind == "0":
        raise ValueError("↓0 es el álgebra trivial, no se construye")
    poset = rn_poset(element.index)
    top_point = poset.labels.index(element.label)
    sub, _ = poset.principal_downset(top_point)
    algebra = from_lattice_order(sub.leq_matrix, labels=sub.labels)
    logger.debug(f"↓{element.label} en RN: {algebra.m} elementos")
    return algebra


def _top_element(algebra: HeytingAlgebra) -> RNElement:
    try:
        return RNElement.parse(algebra.labels[algebra.top])
    except ValueError as e:
        raise LemmaHypothesisError("El álgebra no está etiquetada como un downset de RN") from e


def _handle(algebra: HeytingAlgebra, labels: List[str]) -> SubalgebraHandle:
    members = {algebra.bottom, algebra.top}
    for label in labels:
        if label in algebra.labels:
            members.add(algebra.index_of(label))
    handle = SubalgebraHandle(parent=algebra, members=mask_of(members))
    if not handle.is_closed():
        raise LemmaHypothesisError(
            f"El conjunto {sorted(algebra.labels[a] for a in members)} no es una subálgebra"
        )
    return handle


def lemma_kg_i_subalgebra(algebra: HeytingAlgebra, n: int) -> SubalgebraHandle:
    """
    Subálgebra {b, 0} ∪ ⋃_(k<n) {w(1+3k), w(2+3k), a(2+3k)} de ↓b.

    Es isomorfa a 𝟐 + D₂* + ⋯ + D₂* con n diamantes.

    Args:
        algebra: rn_downset(b) con al menos 6n + 1 elementos
        n: Cantidad de diamantes

    Raises:
        LemmaHypothesisError: Si |A| < 6n + 1, o si el conjunto no es cerrado
            o no tiene la forma esperada
    """
    if n < 0:
        raise ValueError("n no puede ser negativo")
    if algebra.m < 6 * n + 1:
        raise LemmaHypothesisError(f"Se requiere |A| ≥ {6 * n + 1}, el álgebra tiene {algebra.m}")
    _top_element(algebra)
    labels: List[str] = []
    for k in range(n):
        labels.extend([f"w{1 + 3 * k}", f"w{2 + 3 * k}", f"a{2 + 3 * k}"])
    missing = [label for label in labels if label not in algebra.labels]
    if missing:
        raise LemmaHypothesisError(f"Faltan elementos en A: {missing}")
    handle = _handle(algebra, labels)

    expected = alg_sum_all([bool2()] + [diamond()] * n)
    if algebra_iso(handle.as_algebra(), expected) is None:
        raise LemmaHypothesisError("La subálgebra no es isomorfa a 𝟐 + D₂* + ⋯ + D₂*")
    return handle


def _c_set_labels(index: int) -> List[str]:
    """Etiquetas del conjunto C_index sin 0 ni 1; a0 se escribe w0."""

    def a(t: int) -> str:
        return "w0" if t == 0 else f"a{t}"

    if index == 1:
        return ["w0", "w1"]
    q = index % 3
    if q == 2:
        k = (index - 2) // 3
        ws = [f"w{t}" for t in range(1, 3 + 3 * k) if t % 3 != 0]
        return ws + [a(3 * t + 2) for t in range(k + 1)]
    k = index // 3
    base = _c_set_labels(3 * (k - 1) + 2)
    if q == 1:
        return base + [a(1 + 3 * k), a(3 * k), f"w{1 + 3 * k}"]
    return base + [a(3 * k), f"w{3 * k}", a(3 * k - 2), a(3 * (k - 1))]


def lemma_kg_ii_universe(algebra: HeytingAlgebra, q: int | None = None) -> SubalgebraHandle:
    """
    Conjunto C_(3p+q) dentro de ↓a(3p+q).

    Con W = {w_t : 3 ∤ t}:
    C(3k+2) = {w_t ∈ W : t ≤ 2+3k} ∪ {a(3t+2) : t ≤ k} ∪ {0, 1},
    C(3k+1) = C(3(k-1)+2) ∪ {a(1+3k), a(3k), w(1+3k)},
    C(3k) = C(3(k-1)+2) ∪ {a(3k), w(3k), a(3k-2), a(3(k-1))}, y C1 = ↓a1.

    Args:
        algebra: rn_downset de algún a_i
        q: Residuo esperado del índice módulo 3 (opcional)

    Raises:
        LemmaHypothesisError: Si el tope no es un a_i, el residuo no coincide
            o el conjunto no es cerrado
    """
    top = _top_element(algebra)
    if top.kind != "a" or top.index < 1:
        raise LemmaHypothesisError(f"El tope debe ser algún a_i, no {top.label}")
    if q is not None and top.index % 3 != q:
        raise LemmaHypothesisError(f"El índice {top.index} no tiene residuo {q} módulo 3")
    return _handle(algebra, _c_set_labels(top.index))
