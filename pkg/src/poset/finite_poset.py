"""
Posets finitos codificados con máscaras de bits.

Cada punto x guarda la máscara de su upset principal ↑x. Todo lo demás
(orden, cubrimientos, downsets, medidas) se deriva de esas máscaras, por
lo que un FinitePoset es inmutable y seguro de compartir entre threads.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from utils.limits import enforce, get_limits
from utils.logger import poset_logger as logger


class PosetValidationError(Exception):
    """Se lanza cuando una relación no es un orden parcial."""

    def __init__(self, axiom: str, witness: Tuple[int, ...]):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"La relación viola {axiom} en {witness}")


def bit(i: int) -> int:
    return 1 << i


def popcount(mask: int) -> int:
    return mask.bit_count()


def iter_bits(mask: int) -> Iterable[int]:
    """Itera los índices de los bits encendidos en orden ascendente."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(points: Iterable[int]) -> int:
    mask = 0
    for p in points:
        mask |= 1 << p
    return mask


@dataclass(frozen=True)
class FinitePoset:
    """
    Orden parcial finito sobre los puntos 0..n-1.

    Attributes:
        n: Cantidad de puntos (0 ≤ n ≤ 64)
        up: up[x] es la máscara de ↑x (incluye a x)
        labels: Nombre visible de cada punto
    """

    n: int
    up: Tuple[int, ...]
    labels: Tuple[str, ...]

    # ------------------------------------------------------------------
    # Construcción
    # ------------------------------------------------------------------

    @classmethod
    def from_up_masks(
        cls, up: Sequence[int], labels: Optional[Sequence[str]] = None
    ) -> "FinitePoset":
        """Construye sin validar; uso interno con máscaras ya cerradas."""
        n = len(up)
        enforce("max_points", n, get_limits().max_points)
        names = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        return cls(n=n, up=tuple(int(m) for m in up), labels=names)

    @classmethod
    def from_covers(
        cls,
        n: int,
        covers: Iterable[Tuple[int, int]],
        labels: Optional[Sequence[str]] = None,
    ) -> "FinitePoset":
        """
        Construye el poset como clausura reflexiva-transitiva de los cubrimientos.

        Args:
            n: Cantidad de puntos
            covers: Pares (i, j) con i cubierto por j
            labels: Nombres opcionales de los puntos

        Returns:
            Poset validado

        Raises:
            PosetValidationError: Si los pares generan un ciclo
        """
        enforce("max_points", n, get_limits().max_points)
        relation = np.eye(n, dtype=bool)
        for i, j in covers:
            if not (0 <= i < n and 0 <= j < n):
                raise PosetValidationError("rango de índices", (i, j))
            relation[i, j] = True
        return validate(_transitive_closure(relation), labels=labels)

    @classmethod
    def from_relation(
        cls,
        relation: Sequence[Sequence[bool]] | np.ndarray,
        labels: Optional[Sequence[str]] = None,
    ) -> "FinitePoset":
        """Alias de validate para una matriz de orden completa."""
        return validate(relation, labels=labels)

    # ------------------------------------------------------------------
    # Estructura derivada
    # ------------------------------------------------------------------

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def down(self) -> Tuple[int, ...]:
        down = [0] * self.n
        for x in range(self.n):
            for y in iter_bits(self.up[x]):
                down[y] |= 1 << x
        return tuple(down)

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        """Matriz booleana n×n con leq[x, y] = x ≤ y (solo lectura)."""
        matrix = np.zeros((self.n, self.n), dtype=bool)
        for x in range(self.n):
            for y in iter_bits(self.up[x]):
                matrix[x, y] = True
        matrix.setflags(write=False)
        return matrix

    @cached_property
    def covers(self) -> Tuple[Tuple[int, int], ...]:
        """Pares (x, y) con x ⋖ y, ordenados."""
        pairs = []
        for x in range(self.n):
            strict = self.up[x] & ~bit(x)
            for y in iter_bits(strict):
                # y cubre a x si nada estrictamente por encima de x queda debajo de y
                if strict & self.down[y] == bit(y):
                    pairs.append((x, y))
        return tuple(pairs)

    @cached_property
    def linear_extension(self) -> Tuple[int, ...]:
        """Extensión lineal de abajo hacia arriba (por tamaño de ↓x)."""
        return tuple(sorted(range(self.n), key=lambda x: (popcount(self.down[x]), x)))

    @cached_property
    def incomparable(self) -> Tuple[int, ...]:
        """incomparable[x] es la máscara de puntos incomparables con x."""
        return tuple(
            self.full_mask & ~(self.up[x] | self.down[x]) for x in range(self.n)
        )

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def incomparable_mask(self, x: int) -> int:
        return self.incomparable[x]

    def up_closure(self, points: int) -> int:
        """Menor upset que contiene la máscara dada."""
        result = 0
        for x in iter_bits(points):
            result |= self.up[x]
        return result

    def down_closure(self, points: int) -> int:
        """Menor downset que contiene la máscara dada."""
        result = 0
        for x in iter_bits(points):
            result |= self.down[x]
        return result

    def is_upset(self, mask: int) -> bool:
        return self.up_closure(mask) == mask

    def is_downset(self, mask: int) -> bool:
        return self.down_closure(mask) == mask

    @cached_property
    def minimal_points(self) -> Tuple[int, ...]:
        return tuple(x for x in range(self.n) if self.down[x] == bit(x))

    @cached_property
    def maximal_points(self) -> Tuple[int, ...]:
        return tuple(x for x in range(self.n) if self.up[x] == bit(x))

    @cached_property
    def minimum(self) -> Optional[int]:
        for x in range(self.n):
            if self.up[x] == self.full_mask:
                return x
        return None

    @cached_property
    def maximum(self) -> Optional[int]:
        for x in range(self.n):
            if self.down[x] == self.full_mask:
                return x
        return None

    @property
    def is_rooted(self) -> bool:
        """Un poset es enraizado si tiene mínimo (el vacío no lo es)."""
        return self.minimum is not None

    def subposet(self, mask: int) -> Tuple["FinitePoset", Tuple[int, ...]]:
        """
        Restringe el orden a los puntos de la máscara.

        Args:
            mask: Puntos a conservar

        Returns:
            Tupla (subposet, puntos originales en orden ascendente)
        """
        points = tuple(iter_bits(mask))
        index = {p: i for i, p in enumerate(points)}
        up = []
        for p in points:
            sub = 0
            for q in iter_bits(self.up[p] & mask):
                sub |= bit(index[q])
            up.append(sub)
        sub_labels = [self.labels[p] for p in points]
        return FinitePoset.from_up_masks(up, sub_labels), points

    def principal_upset(self, x: int) -> Tuple["FinitePoset", Tuple[int, ...]]:
        return self.subposet(self.up[x])

    def principal_downset(self, x: int) -> Tuple["FinitePoset", Tuple[int, ...]]:
        return self.subposet(self.down[x])

    def relabel(self, labels: Sequence[str]) -> "FinitePoset":
        if len(labels) != self.n:
            raise ValueError(f"Se esperaban {self.n} etiquetas, llegaron {len(labels)}")
        return FinitePoset(n=self.n, up=self.up, labels=tuple(labels))

    def opposite(self) -> "FinitePoset":
        """Orden dual (x ≤ y en el resultado si y ≤ x aquí)."""
        return FinitePoset(n=self.n, up=self.down, labels=self.labels)

    # ------------------------------------------------------------------
    # Upsets
    # ------------------------------------------------------------------

    def all_upsets(self, limit: Optional[int] = None) -> List[int]:
        """
        Enumera todos los upsets en orden canónico (cardinalidad, máscara).

        Args:
            limit: Cantidad máxima tolerada (default: límite global)

        Returns:
            Lista de máscaras sin duplicados

        Raises:
            ResourceCapError: Si hay más upsets que el límite
        """
        cap = limit if limit is not None else get_limits().max_upsets
        order = list(reversed(self.linear_extension))
        found: List[int] = []

        # De arriba hacia abajo: x entra solo si todo lo que está sobre x ya entró
        def extend(i: int, current: int) -> None:
            if i == len(order):
                found.append(current)
                enforce("max_upsets", len(found), cap)
                return
            x = order[i]
            extend(i + 1, current)
            if self.up[x] & ~bit(x) & ~current == 0:
                extend(i + 1, current | bit(x))

        extend(0, 0)
        found.sort(key=lambda m: (popcount(m), m))
        return found

    # ------------------------------------------------------------------
    # Medidas estructurales
    # ------------------------------------------------------------------

    @cached_property
    def heights(self) -> Tuple[int, ...]:
        """heights[x] es el tamaño de la cadena más larga que termina en x."""
        height = [0] * self.n
        for x in self.linear_extension:
            below = self.down[x] & ~bit(x)
            height[x] = 1 + max((height[y] for y in iter_bits(below)), default=0)
        return tuple(height)

    @cached_property
    def depth(self) -> int:
        """Tamaño de la cadena más larga (0 para el poset vacío)."""
        return max(self.heights, default=0)

    def max_antichain_size(self, mask: int) -> int:
        """
        Tamaño de la mayor anticadena dentro de la máscara (Dilworth).

        Se calcula como |S| menos un matching máximo del grafo bipartito
        de la relación estricta restringida a S.
        """
        points = list(iter_bits(mask))
        if not points:
            return 0
        graph = nx.Graph()
        left = [("L", p) for p in points]
        graph.add_nodes_from(left)
        graph.add_nodes_from(("R", p) for p in points)
        for p in points:
            for q in iter_bits(self.up[p] & mask & ~bit(p)):
                graph.add_edge(("L", p), ("R", q))
        matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=left)
        return len(points) - len(matching) // 2

    @cached_property
    def width(self) -> int:
        """Máximo, sobre x, de la mayor anticadena dentro de ↑x."""
        return max((self.max_antichain_size(self.up[x]) for x in range(self.n)), default=0)

    @cached_property
    def incomparability_degree(self) -> int:
        """
        Máximo de |{z ∈ ↑x : z incomparable con y}| sobre x e y ∈ ↑x.
        """
        best = 0
        for x in range(self.n):
            region = self.up[x]
            for y in iter_bits(region):
                best = max(best, popcount(self.incomparable[y] & region))
        return best

    # ------------------------------------------------------------------
    # Serialización
    # ------------------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        """Formato JSON {"points": [...], "covers": [[i, j], ...]}."""
        return {
            "points": list(self.labels),
            "covers": [[i, j] for i, j in self.covers],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FinitePoset":
        points = data.get("points")
        if points is None:
            raise ValueError("El poset JSON debe incluir la clave 'points'")
        covers = [tuple(pair) for pair in data.get("covers", [])]
        return cls.from_covers(len(points), covers, labels=[str(p) for p in points])

    def __repr__(self) -> str:
        return f"FinitePoset(n={self.n}, covers={list(self.covers)})"


def _transitive_closure(relation: np.ndarray) -> np.ndarray:
    """Clausura transitiva por cuadrados booleanos sucesivos."""
    closure = relation.copy()
    while True:
        step = closure | ((closure.astype(np.int64) @ closure.astype(np.int64)) > 0)
        if np.array_equal(step, closure):
            return closure
        closure = step


def validate(
    relation: Sequence[Sequence[bool]] | np.ndarray,
    labels: Optional[Sequence[str]] = None,
) -> FinitePoset:
    """
    Verifica los axiomas de orden parcial y construye el poset.

    Args:
        relation: Matriz n×n con relation[i][j] = i ≤ j
        labels: Nombres opcionales de los puntos

    Returns:
        Poset validado

    Raises:
        PosetValidationError: Con el axioma violado y el par o terna testigo
        ResourceCapError: Si n supera el límite de puntos
    """
    matrix = np.asarray(relation, dtype=bool)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise PosetValidationError("forma cuadrada", tuple(matrix.shape))
    n = matrix.shape[0]
    enforce("max_points", n, get_limits().max_points)

    for i in range(n):
        if not matrix[i, i]:
            raise PosetValidationError("reflexividad", (i, i))

    both = matrix & matrix.T
    np.fill_diagonal(both, False)
    if both.any():
        i, j = (int(v) for v in np.argwhere(both)[0])
        raise PosetValidationError("antisimetría", (i, j))

    # i ≤ j ≤ k sin i ≤ k
    composed = (matrix.astype(np.int64) @ matrix.astype(np.int64)) > 0
    missing = composed & ~matrix
    if missing.any():
        i, k = (int(v) for v in np.argwhere(missing)[0])
        j = int(np.flatnonzero(matrix[i] & matrix[:, k])[0])
        raise PosetValidationError("transitividad", (i, j, k))

    up = [int(sum(1 << int(j) for j in np.flatnonzero(matrix[i]))) for i in range(n)]
    poset = FinitePoset.from_up_masks(up, labels)
    logger.debug(f"Poset validado con {n} puntos")
    return poset


def chain(k: int) -> FinitePoset:
    """Cadena 0 < 1 < ... < k-1."""
    return FinitePoset.from_up_masks([((1 << k) - 1) & ~((1 << i) - 1) for i in range(k)])


def antichain(k: int) -> FinitePoset:
    return FinitePoset.from_up_masks([1 << i for i in range(k)])


def poset_sum(lower: FinitePoset, upper: FinitePoset) -> FinitePoset:
    """
    Suma ordinal: coloca upper por encima de lower.

    Los puntos de lower conservan sus índices y los de upper se desplazan.
    """
    shift = lower.n
    upper_mask = upper.full_mask << shift
    up = [m | upper_mask for m in lower.up] + [m << shift for m in upper.up]
    return FinitePoset.from_up_masks(up, lower.labels + upper.labels)


def tower(parts: Sequence[FinitePoset], with_top: bool = False) -> FinitePoset:
    """
    Apila las partes en orden ascendente y agrega un tope si se pide.

    Args:
        parts: Posets de abajo hacia arriba
        with_top: Si True agrega un punto ⊤ sobre todos

    Returns:
        Poset resultante
    """
    result = FinitePoset.from_up_masks([])
    for part in parts:
        result = poset_sum(result, part)
    if with_top:
        result = poset_sum(result, FinitePoset.from_up_masks([1], ["⊤"]))
    return result


def has_depth_at_most(poset: FinitePoset, n: int) -> bool:
    return poset.depth <= n


def has_width_at_most(poset: FinitePoset, n: int) -> bool:
    return poset.width <= n


def has_incomparability_at_most(poset: FinitePoset, n: int) -> bool:
    return poset.incomparability_degree <= n
