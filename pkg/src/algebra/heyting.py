"""
Álgebras de Heyting finitas con tablas de operaciones explícitas.

Un álgebra guarda su orden y sus tablas ∧, ∨, → como arrays de numpy, y
opcionalmente su procedencia: el poset dual y el upset que corresponde a
cada elemento. Las tablas se guardan aunque haya procedencia, así la
dualidad se puede verificar en lugar de asumirse.
"""

from dataclasses import dataclass, replace
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from poset.finite_poset import FinitePoset, iter_bits
from utils.limits import enforce, get_limits
from utils.logger import algebra_logger as logger
from utils.verdict import Verdict


class HeytingValidationError(Exception):
    """Se lanza cuando unas tablas no forman un álgebra de Heyting."""

    def __init__(self, verdict: Verdict):
        self.verdict = verdict
        super().__init__(
            f"No es un álgebra de Heyting: {verdict.reason} ({verdict.witness})"
        )


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class HeytingAlgebra:
    """
    Álgebra de Heyting finita.

    Attributes:
        leq: Orden m×m (booleano)
        meet: Tabla de ∧ (índices de elementos)
        join: Tabla de ∨
        imp: Tabla de →
        bottom: Índice del 0
        top: Índice del 1
        labels: Nombre de cada elemento
        dual: Poset dual de procedencia (opcional)
        element_upsets: Upset (máscara sobre dual) de cada elemento (opcional)
    """

    leq: np.ndarray
    meet: np.ndarray
    join: np.ndarray
    imp: np.ndarray
    bottom: int
    top: int
    labels: Tuple[str, ...]
    dual: Optional[FinitePoset] = None
    element_upsets: Optional[Tuple[int, ...]] = None

    @property
    def m(self) -> int:
        return len(self.labels)

    @cached_property
    def down_size(self) -> np.ndarray:
        """Cantidad de elementos por debajo de cada elemento."""
        return _readonly(self.leq.sum(axis=0))

    @cached_property
    def linear_order(self) -> Tuple[int, ...]:
        """Elementos en una extensión lineal ascendente."""
        return tuple(int(i) for i in np.lexsort((np.arange(self.m), self.down_size)))

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError as e:
            raise KeyError(f"Elemento desconocido: '{label}'") from e

    def negation(self, a: int) -> int:
        return int(self.imp[a, self.bottom])

    @cached_property
    def join_irreducibles(self) -> Tuple[int, ...]:
        """
        Elementos a ≠ 0 cuyo supremo de estrictamente menores es < a.

        En un retículo distributivo finito coinciden con los join-primos.
        """
        result = []
        for a in range(self.m):
            if a == self.bottom:
                continue
            below = np.flatnonzero(self.leq[:, a])
            acc = self.bottom
            for b in below:
                if b != a:
                    acc = int(self.join[acc, b])
            if acc != a:
                result.append(a)
        return tuple(result)

    def to_dict(self) -> Dict[str, Any]:
        """
        Serializa el álgebra: forma dual si hay procedencia, tablas si no.
        """
        if self.dual is not None:
            return {"dual": self.dual.to_dict(), "labels": list(self.labels)}
        return {
            "labels": list(self.labels),
            "leq": self.leq.astype(int).tolist(),
            "meet": self.meet.tolist(),
            "join": self.join.tolist(),
            "imp": self.imp.tolist(),
            "bottom": self.bottom,
            "top": self.top,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "HeytingAlgebra":
        if "dual" in data:
            algebra = from_upsets(FinitePoset.from_dict(data["dual"]))
            labels = data.get("labels")
            if labels is not None and len(labels) == algebra.m:
                algebra = replace(algebra, labels=tuple(labels))
            return algebra
        if "imp" in data and "meet" in data:
            return from_tables(
                leq=data["leq"],
                meet=data["meet"],
                join=data["join"],
                imp=data["imp"],
                bottom=data["bottom"],
                top=data["top"],
                labels=data.get("labels"),
            )
        if "leq" in data:
            return from_lattice_order(data["leq"], labels=data.get("labels"))
        raise ValueError("El álgebra JSON debe incluir 'dual' o tablas explícitas")

    def __repr__(self) -> str:
        return f"HeytingAlgebra(m={self.m})"


def _upset_label(poset: FinitePoset, mask: int) -> str:
    return "{" + ",".join(poset.labels[p] for p in iter_bits(mask)) + "}"


def from_upsets(poset: FinitePoset) -> HeytingAlgebra:
    """
    Álgebra de los upsets de un poset finito.

    Los elementos son all_upsets(P) en orden canónico; ∧ = ∩, ∨ = ∪ y
    U → V = X ∖ ↓(U ∖ V).

    Args:
        poset: Poset dual

    Returns:
        Álgebra con procedencia registrada

    Raises:
        ResourceCapError: Si hay demasiados upsets para tablas explícitas
    """
    limits = get_limits()
    upsets = poset.all_upsets(limit=limits.max_upsets)
    m = len(upsets)
    enforce("max_table_elements", m, limits.max_table_elements)

    masks = np.array(upsets, dtype=np.uint64)
    order = np.argsort(masks, kind="stable")
    sorted_masks = masks[order]

    def lookup(values: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(sorted_masks, values)
        return order[pos]

    inter = masks[:, None] & masks[None, :]
    union = masks[:, None] | masks[None, :]
    diff = masks[:, None] & ~masks[None, :]

    # ↓(U ∖ V) punto por punto
    down_of_diff = np.zeros_like(diff)
    for x in range(poset.n):
        has_x = (diff >> np.uint64(x)) & np.uint64(1)
        down_of_diff |= np.where(has_x == 1, np.uint64(poset.down[x]), np.uint64(0))
    implication = np.uint64(poset.full_mask) & ~down_of_diff

    leq = (inter == masks[:, None])
    algebra = HeytingAlgebra(
        leq=_readonly(leq),
        meet=_readonly(lookup(inter).astype(np.int64)),
        join=_readonly(lookup(union).astype(np.int64)),
        imp=_readonly(lookup(implication).astype(np.int64)),
        bottom=0,
        top=m - 1,
        labels=tuple(_upset_label(poset, u) for u in upsets),
        dual=poset,
        element_upsets=tuple(upsets),
    )
    logger.debug(f"Álgebra de upsets construida: {poset.n} puntos, {m} elementos")
    return algebra


def from_lattice_order(
    leq: Sequence[Sequence[bool]] | np.ndarray, labels: Optional[Sequence[str]] = None
) -> HeytingAlgebra:
    """
    Construye un álgebra desde el orden de un retículo distributivo finito.

    ∧ y ∨ se leen del orden; → se obtiene por residuación como el mayor
    c con c ∧ a ≤ b.

    Args:
        leq: Matriz de orden m×m
        labels: Nombres opcionales

    Returns:
        Álgebra verificada

    Raises:
        HeytingValidationError: Si el orden no es un retículo de Heyting
    """
    order = np.asarray(leq, dtype=bool)
    m = order.shape[0]
    enforce("max_table_elements", m, get_limits().max_table_elements)
    down_size = order.sum(axis=0)
    up_size = order.sum(axis=1)

    bottoms = np.flatnonzero(up_size == m)
    tops = np.flatnonzero(down_size == m)
    if len(bottoms) != 1 or len(tops) != 1:
        raise HeytingValidationError(Verdict.fail("acotación", bottoms=bottoms.tolist()))

    meet = np.empty((m, m), dtype=np.int64)
    join = np.empty((m, m), dtype=np.int64)
    for i in range(m):
        lower = order[:, i][:, None] & order  # lower[k, j]: k ≤ i y k ≤ j
        meet[i] = np.argmax(np.where(lower, down_size[:, None], -1), axis=0)
        upper = order[i, :][:, None] & order.T  # upper[k, j]: i ≤ k y j ≤ k
        join[i] = np.argmax(np.where(upper, -down_size[:, None], -(m + 1)), axis=0)

    imp = np.empty((m, m), dtype=np.int64)
    for a in range(m):
        # candidates[c, b]: c ∧ a ≤ b
        candidates = order[meet[:, a]]
        imp[a] = np.argmax(np.where(candidates, down_size[:, None], -1), axis=0)

    algebra = HeytingAlgebra(
        leq=_readonly(order.copy()),
        meet=_readonly(meet),
        join=_readonly(join),
        imp=_readonly(imp),
        bottom=int(bottoms[0]),
        top=int(tops[0]),
        labels=tuple(labels) if labels is not None else tuple(str(i) for i in range(m)),
    )
    verdict = verify_heyting(algebra)
    if not verdict:
        raise HeytingValidationError(verdict)
    return algebra


def from_tables(
    leq: Any,
    meet: Any,
    join: Any,
    imp: Any,
    bottom: int,
    top: int,
    labels: Optional[Sequence[str]] = None,
) -> HeytingAlgebra:
    """Envuelve tablas explícitas sin verificarlas (ver verify_heyting)."""
    order = np.asarray(leq, dtype=bool)
    m = order.shape[0]
    return HeytingAlgebra(
        leq=_readonly(order.copy()),
        meet=_readonly(np.asarray(meet, dtype=np.int64).copy()),
        join=_readonly(np.asarray(join, dtype=np.int64).copy()),
        imp=_readonly(np.asarray(imp, dtype=np.int64).copy()),
        bottom=int(bottom),
        top=int(top),
        labels=tuple(labels) if labels is not None else tuple(str(i) for i in range(m)),
    )


def _first(mask: np.ndarray) -> Tuple[int, ...]:
    return tuple(int(v) for v in np.argwhere(mask)[0])


def verify_heyting(algebra: HeytingAlgebra) -> Verdict:
    """
    Verifica los axiomas de álgebra de Heyting sobre las tablas.

    Orden de los checks: forma de las tablas, orden parcial, cotas,
    ∧ como ínfimo, ∨ como supremo, distributividad, residuación y, si hay
    procedencia, acuerdo con las operaciones de conjuntos.

    Args:
        algebra: Álgebra a verificar

    Returns:
        Verdict con el axioma violado y el testigo si falla
    """
    m = algebra.m
    leq, meet, join, imp = algebra.leq, algebra.meet, algebra.join, algebra.imp
    for name, table in (("leq", leq), ("meet", meet), ("join", join), ("imp", imp)):
        if table.shape != (m, m):
            return Verdict.fail("forma", table=name, shape=list(table.shape))
    for name, table in (("meet", meet), ("join", join), ("imp", imp)):
        if table.size and (table.min() < 0 or table.max() >= m):
            return Verdict.fail("rango", table=name)

    if not np.all(np.diag(leq)):
        return Verdict.fail("reflexividad", element=int(np.flatnonzero(~np.diag(leq))[0]))
    anti = leq & leq.T & ~np.eye(m, dtype=bool)
    if anti.any():
        return Verdict.fail("antisimetría", pair=_first(anti))
    trans = ((leq.astype(np.int64) @ leq.astype(np.int64)) > 0) & ~leq
    if trans.any():
        return Verdict.fail("transitividad", pair=_first(trans))

    if not leq[algebra.bottom].all():
        return Verdict.fail("cota inferior", element=int(np.flatnonzero(~leq[algebra.bottom])[0]))
    if not leq[:, algebra.top].all():
        return Verdict.fail("cota superior", element=int(np.flatnonzero(~leq[:, algebra.top])[0]))

    idx = np.arange(m)
    for a in range(m):
        # meet[a, b] es cota inferior y la mayor de ellas
        if not (leq[meet[a], a].all() and leq[meet[a], idx].all()):
            b = int(np.flatnonzero(~(leq[meet[a], a] & leq[meet[a], idx]))[0])
            return Verdict.fail("ínfimo", triple=(a, b, int(meet[a, b])))
        lower = leq[:, a][:, None] & leq  # c ≤ a y c ≤ b
        bad = lower & ~leq[:, meet[a]]
        if bad.any():
            c, b = _first(bad)
            return Verdict.fail("ínfimo", triple=(a, b, c))
        if not (leq[a, join[a]].all() and leq[idx, join[a]].all()):
            b = int(np.flatnonzero(~(leq[a, join[a]] & leq[idx, join[a]]))[0])
            return Verdict.fail("supremo", triple=(a, b, int(join[a, b])))
        upper = leq[a, :][:, None] & leq.T  # a ≤ c y b ≤ c
        bad = upper & ~leq[join[a], :].T
        if bad.any():
            c, b = _first(bad)
            return Verdict.fail("supremo", triple=(a, b, c))

    for a in range(m):
        lhs = meet[a][join]  # a ∧ (b ∨ c)
        rhs = join[meet[a][:, None], meet[a][None, :]]  # (a∧b) ∨ (a∧c)
        if not np.array_equal(lhs, rhs):
            b, c = _first(lhs != rhs)
            return Verdict.fail("distributividad", triple=(a, b, c))

    for b in range(m):
        lhs = leq[meet[:, b]]  # lhs[a, c]: a ∧ b ≤ c
        rhs = leq[:, imp[b]]  # rhs[a, c]: a ≤ b → c
        if not np.array_equal(lhs, rhs):
            a, c = _first(lhs != rhs)
            return Verdict.fail("residuación", triple=(a, b, c))

    if algebra.dual is not None and algebra.element_upsets is not None:
        verdict = _verify_provenance(algebra)
        if not verdict:
            return verdict

    return Verdict.ok()


def _verify_provenance(algebra: HeytingAlgebra) -> Verdict:
    ups = algebra.element_upsets
    poset = algebra.dual
    for a in range(algebra.m):
        for b in range(algebra.m):
            if ups[int(algebra.meet[a, b])] != ups[a] & ups[b]:
                return Verdict.fail("procedencia", operation="meet", pair=(a, b))
            if ups[int(algebra.join[a, b])] != ups[a] | ups[b]:
                return Verdict.fail("procedencia", operation="join", pair=(a, b))
            expected = poset.full_mask & ~poset.down_closure(ups[a] & ~ups[b])
            if ups[int(algebra.imp[a, b])] != expected:
                return Verdict.fail("procedencia", operation="imp", pair=(a, b))
    return Verdict.ok()


def is_fsi(algebra: HeytingAlgebra) -> bool:
    """
    True si el tope es join-primo: x ∨ y = 1 implica x = 1 o y = 1.

    El álgebra de un elemento no es FSI (su dual es vacío, no enraizado).
    """
    if algebra.m < 2:
        return False
    idx = np.arange(algebra.m)
    reaches_top = algebra.join == algebra.top
    neither = (idx[:, None] != algebra.top) & (idx[None, :] != algebra.top)
    return not bool((reaches_top & neither).any())


def nodes(algebra: HeytingAlgebra) -> List[int]:
    """Elementos comparables con todos, en orden ascendente."""
    comparable = (algebra.leq | algebra.leq.T).all(axis=1)
    return [a for a in algebra.linear_order if comparable[a]]


def is_boolean(algebra: HeytingAlgebra) -> bool:
    negations = algebra.imp[:, algebra.bottom]
    return bool(np.all(algebra.join[np.arange(algebra.m), negations] == algebra.top))


def is_goedel(algebra: HeytingAlgebra) -> bool:
    """Prelinealidad: (a → b) ∨ (b → a) = 1 para todo a, b."""
    return bool(np.all(algebra.join[algebra.imp, algebra.imp.T] == algebra.top))


def alg_sum(upper: HeytingAlgebra, lower: HeytingAlgebra) -> HeytingAlgebra:
    """
    Pega lower debajo de upper, identificando el tope de lower con el 0 de upper.

    El universo es (upper ∖ {0}) ∪ lower: los elementos de lower conservan
    sus índices y los de upper (sin su 0) van a continuación.

    Args:
        upper: Álgebra de arriba (A en A + B)
        lower: Álgebra de abajo (B en A + B)

    Returns:
        Álgebra suma
    """
    mb = lower.m
    kept = [a for a in range(upper.m) if a != upper.bottom]
    m = mb + len(kept)
    enforce("max_table_elements", m, get_limits().max_table_elements)

    # posición de cada elemento de upper en la suma (su 0 se vuelve el tope de lower)
    place_upper = np.empty(upper.m, dtype=np.int64)
    place_upper[upper.bottom] = lower.top
    place_upper[kept] = np.arange(mb, m)
    glue = lower.top
    top = int(place_upper[upper.top])

    leq = np.zeros((m, m), dtype=bool)
    leq[:mb, :mb] = lower.leq
    leq[mb:, mb:] = upper.leq[np.ix_(kept, kept)]
    leq[:mb, mb:] = True

    meet = np.empty((m, m), dtype=np.int64)
    join = np.empty((m, m), dtype=np.int64)
    imp = np.empty((m, m), dtype=np.int64)
    ib = np.arange(mb)
    ia = np.arange(mb, m)

    meet[:mb, :mb] = lower.meet
    meet[mb:, mb:] = place_upper[upper.meet[np.ix_(kept, kept)]]
    meet[:mb, mb:] = ib[:, None]
    meet[mb:, :mb] = ib[None, :]

    join[:mb, :mb] = lower.join
    join[mb:, mb:] = place_upper[upper.join[np.ix_(kept, kept)]]
    join[:mb, mb:] = ia[None, :]
    join[mb:, :mb] = ia[:, None]

    # x, y en lower: si x ≤ y da el tope global; si no, x →_B y
    imp[:mb, :mb] = np.where(lower.leq, top, lower.imp)
    imp[mb:, mb:] = place_upper[upper.imp[np.ix_(kept, kept)]]
    # x en lower, y arriba: x ≤ y
    imp[:mb, mb:] = top
    # x arriba, y en lower: y salvo que y sea el punto de pegado
    imp[mb:, :mb] = ib[None, :]
    imp[mb:, glue] = place_upper[upper.imp[kept, upper.bottom]]

    labels = lower.labels + tuple(upper.labels[a] for a in kept)
    return HeytingAlgebra(
        leq=_readonly(leq),
        meet=_readonly(meet),
        join=_readonly(join),
        imp=_readonly(imp),
        bottom=lower.bottom,
        top=top,
        labels=labels,
    )


def alg_sum_all(parts: Sequence[HeytingAlgebra]) -> HeytingAlgebra:
    """A₁ + A₂ + ⋯ + Aₙ con A₁ arriba; asociativa, se agrupa por la derecha."""
    if not parts:
        raise ValueError("Se necesita al menos un sumando")
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = alg_sum(part, result)
    return result


def product(left: HeytingAlgebra, right: HeytingAlgebra) -> HeytingAlgebra:
    """
    Producto directo con operaciones componente a componente.

    El par (a, b) tiene índice a * |right| + b.
    """
    ma, mb = left.m, right.m
    m = ma * mb
    enforce("max_table_elements", m, get_limits().max_table_elements)

    def combine(ta: np.ndarray, tb: np.ndarray) -> np.ndarray:
        return (ta[:, None, :, None] * mb + tb[None, :, None, :]).reshape(m, m)

    leq = (left.leq[:, None, :, None] & right.leq[None, :, None, :]).reshape(m, m)
    labels = tuple(f"({a},{b})" for a in left.labels for b in right.labels)
    return HeytingAlgebra(
        leq=_readonly(leq),
        meet=_readonly(combine(left.meet, right.meet)),
        join=_readonly(combine(left.join, right.join)),
        imp=_readonly(combine(left.imp, right.imp)),
        bottom=left.bottom * mb + right.bottom,
        top=left.top * mb + right.top,
        labels=labels,
    )


def interval_algebra(
    algebra: HeytingAlgebra, low: int, high: int
) -> Tuple[HeytingAlgebra, Tuple[int, ...]]:
    """
    Intervalo [low, high] como álgebra de Heyting.

    ∧ y ∨ se heredan; la implicación relativa es (x → y) ∧ high.

    Returns:
        Tupla (álgebra del intervalo, elementos originales en orden)
    """
    if not algebra.leq[low, high]:
        raise ValueError(f"Intervalo vacío: {low} no está debajo de {high}")
    members = [
        a for a in algebra.linear_order if algebra.leq[low, a] and algebra.leq[a, high]
    ]
    position = np.full(algebra.m, -1, dtype=np.int64)
    position[members] = np.arange(len(members))
    grid = np.ix_(members, members)
    relative_imp = algebra.meet[algebra.imp[grid], high]
    sub = HeytingAlgebra(
        leq=_readonly(algebra.leq[grid].copy()),
        meet=_readonly(position[algebra.meet[grid]]),
        join=_readonly(position[algebra.join[grid]]),
        imp=_readonly(position[relative_imp]),
        bottom=int(position[low]),
        top=int(position[high]),
        labels=tuple(algebra.labels[a] for a in members),
    )
    return sub, tuple(members)


def restrict(algebra: HeytingAlgebra, members: Sequence[int]) -> HeytingAlgebra:
    """Álgebra inducida sobre un subconjunto cerrado (sin verificar cierre)."""
    members = sorted(members, key=lambda a: algebra.linear_order.index(a))
    position = np.full(algebra.m, -1, dtype=np.int64)
    position[members] = np.arange(len(members))
    grid = np.ix_(members, members)
    return HeytingAlgebra(
        leq=_readonly(algebra.leq[grid].copy()),
        meet=_readonly(position[algebra.meet[grid]]),
        join=_readonly(position[algebra.join[grid]]),
        imp=_readonly(position[algebra.imp[grid]]),
        bottom=int(position[algebra.bottom]),
        top=int(position[algebra.top]),
        labels=tuple(algebra.labels[a] for a in members),
    )
