"""
Truncaciones finitas de las torres Xₙ^∞ y D₂^∞ con sus particiones.

Cada torre apila k copias (la copia j por debajo de la j+1) y opcionalmente
un tope ⊤. Las etiquetas x_i / y_i de Xₙ y ℓ_j / r_j de D₂ identifican los
puntos que las particiones emparejan.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

from constructions.named import d2_space, x_n_space
from duality.esakia import EsakiaMap
from duality.partitions import CorrectPartition, CorrectPartitionError, is_correct_partition
from poset.finite_poset import FinitePoset, bit, tower
from utils.logger import constructions_logger as logger

TOP_LABEL = "⊤"


@dataclass(frozen=True)
class LabeledTower:
    """
    Attributes:
        poset: Torre como poset
        copy_index: Copia de cada punto (-1 para ⊤)
        names: Nombre de cada punto según el esquema de la torre
        has_top: Si la torre lleva ⊤
    """

    poset: FinitePoset
    copy_index: Tuple[int, ...]
    names: Tuple[str, ...]
    has_top: bool

    @property
    def copies(self) -> int:
        return max(self.copy_index, default=-1) + 1

    def point(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError as e:
            raise KeyError(f"Punto desconocido en la torre: '{name}'") from e

    def points_of_copy(self, copy: int) -> List[int]:
        return [p for p, c in enumerate(self.copy_index) if c == copy]


def _x_copy_names(n: int, copy: int) -> List[str]:
    # índices de Xₙ: a_m en m-1, b_m en n+m-1
    if copy == 0:
        bottom_row = ["⊥"] + [f"x{m - 1}" for m in range(2, n + 1)]
        top_row = [f"x{n}"] + [f"y{m - 1}" for m in range(2, n + 1)]
    else:
        base = copy * n
        bottom_row = [f"y{base}"] + [f"x{base + m - 1}" for m in range(2, n + 1)]
        top_row = [f"x{base + n}"] + [f"y{base + m - 1}" for m in range(2, n + 1)]
    return bottom_row + top_row


def x_n_tower(n: int, copies: int, with_top: bool = True) -> LabeledTower:
    """
    Apila copias de Xₙ con las etiquetas x/y de la torre infinita.

    Copia 0: fila baja ⊥, x1..x(n-1); fila alta xn, y1..y(n-1).
    Copia c ≥ 1: fila baja y(cn), x(cn+1)..; fila alta x((c+1)n), y(cn+1)..

    Args:
        n: Parámetro de Xₙ (≥ 2)
        copies: Cantidad de copias (≥ 1)
        with_top: Si se agrega ⊤

    Returns:
        LabeledTower
    """
    if copies < 1:
        raise ValueError("La torre necesita al menos una copia")
    block = x_n_space(n)
    poset = tower([block] * copies, with_top=with_top)
    names: List[str] = []
    copy_index: List[int] = []
    for c in range(copies):
        names.extend(_x_copy_names(n, c))
        copy_index.extend([c] * block.n)
    if with_top:
        names.append(TOP_LABEL)
        copy_index.append(-1)
    logger.debug(f"Torre X{n} con {copies} copias y {poset.n} puntos")
    return LabeledTower(
        poset=poset.relabel(names),
        copy_index=tuple(copy_index),
        names=tuple(names),
        has_top=with_top,
    )


def _checked(partition: CorrectPartition) -> CorrectPartition:
    verdict = is_correct_partition(partition)
    if not verdict:
        raise CorrectPartitionError(
            f"La partición de la torre no es correcta: {verdict.reason}", verdict.witness
        )
    return partition


def _last_copy_block(t: LabeledTower, partner: int) -> List[int]:
    # sin ⊤ la última copia se colapsa junto con su pareja de la copia anterior;
    # ⊥ queda afuera cuando hay una sola copia
    block = set(t.points_of_copy(t.copies - 1))
    if partner >= 0:
        block.add(partner)
    block.discard(t.point("⊥"))
    return sorted(block)


def r_n_partition(t: LabeledTower) -> CorrectPartition:
    """
    Rₙ: a Rₙ b sii a = b o {a, b} = {x_k, y_k}.

    En la truncación con ⊤, el x_(Kn) de la última copia se empareja con ⊤.
    Sin ⊤, la última copia forma una sola clase junto con el b1 de la
    copia anterior.

    Raises:
        CorrectPartitionError: Si la partición resultante falla la condición de retroceso
    """
    names = t.names
    position: Dict[str, int] = {name: p for p, name in enumerate(names)}
    classes: List[List[int]] = []
    used = set()

    n = len(t.points_of_copy(0)) // 2
    if t.has_top:
        dangling = position[f"x{t.copies * n}"]
        classes.append([dangling, position[TOP_LABEL]])
        used.update(classes[-1])
    else:
        previous_b1 = t.points_of_copy(t.copies - 2)[n] if t.copies > 1 else -1
        block = _last_copy_block(t, previous_b1)
        classes.append(block)
        used.update(block)

    for p, name in enumerate(names):
        if p in used or not name.startswith("x"):
            continue
        partner = position.get("y" + name[1:])
        if partner is not None and partner not in used:
            classes.append([p, partner])
            used.update((p, partner))
    classes.extend([p] for p in range(len(names)) if p not in used)
    return _checked(CorrectPartition.from_classes(t.poset, classes))


def d2_tower_labeled(copies: int, with_top: bool = True) -> LabeledTower:
    """
    Torre de k copias de D₂; la copia j tiene los puntos ℓj (índice 2j) y rj (2j+1).
    """
    if copies < 1:
        raise ValueError("La torre necesita al menos una copia")
    poset = tower([d2_space()] * copies, with_top=with_top)
    names: List[str] = []
    copy_index: List[int] = []
    for j in range(copies):
        names.extend([f"l{j}", f"r{j}"])
        copy_index.extend([j, j])
    if with_top:
        names.append(TOP_LABEL)
        copy_index.append(-1)
    return LabeledTower(
        poset=poset.relabel(names),
        copy_index=tuple(copy_index),
        names=tuple(names),
        has_top=with_top,
    )


def d2_partition(t: LabeledTower) -> CorrectPartition:
    """
    Clases escalonadas {r_j, ℓ_(j+1)} con ℓ0 solo.

    Con ⊤ el último r se une a ⊤; sin ⊤ la última clase es
    {r_(k-2), ℓ_(k-1), r_(k-1)}.

    Raises:
        ValueError: Si la torre tiene menos de dos copias
        CorrectPartitionError: Si la partición falla la condición de retroceso
    """
    k = t.copies
    if k < 2:
        raise ValueError("La partición escalonada necesita al menos dos copias")
    left = [t.point(f"l{j}") for j in range(k)]
    right = [t.point(f"r{j}") for j in range(k)]
    classes: List[List[int]] = [[left[0]]]
    for j in range(k - 2):
        classes.append([right[j], left[j + 1]])
    if t.has_top:
        classes.append([right[k - 2], left[k - 1]])
        classes.append([right[k - 1], t.point(TOP_LABEL)])
    else:
        classes.append([right[k - 2], left[k - 1], right[k - 1]])
    return _checked(CorrectPartition.from_classes(t.poset, classes))


def doubled_fiber_map(poset: FinitePoset, x: int) -> EsakiaMap:
    """
    Duplica el punto x y colapsa la copia sobre x.

    El punto nuevo x' (índice n) queda debajo de x y encima de todo lo que
    estaba estrictamente debajo de x. El mapa es la identidad salvo x' ↦ x.

    Returns:
        EsakiaMap no inyectivo del poset ampliado en el original
    """
    n = poset.n
    up = []
    for y in range(n):
        mask = poset.up[y]
        if y != x and poset.leq(y, x):
            mask |= bit(n)
        up.append(mask)
    up.append(poset.up[x] | bit(n))
    labels = list(poset.labels) + [poset.labels[x] + "'"]
    doubled = FinitePoset.from_up_masks(up, labels)
    mapping = tuple(range(n)) + (x,)
    return EsakiaMap(source=doubled, target=poset, map=mapping)
