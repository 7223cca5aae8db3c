"""
Evaluación de términos en álgebras finitas y validez de ecuaciones.

La búsqueda de contraejemplos es vectorizada con numpy: cada término se
evalúa sobre un bloque completo de asignaciones indexando las tablas con
arrays. Las asignaciones se recorren en orden de base mixta, con la
primera variable como dígito más significativo; el bloque k fija esa
variable en el elemento k, así que el primer bloque con una falla
contiene el contraejemplo mínimo.
"""

from typing import Dict, Mapping, Optional, Sequence, Union

import numpy as np

from algebra.heyting import HeytingAlgebra
from terms.syntax import Equation, Imp, Join, Meet, One, Term, Var, Zero
from utils.limits import enforce, get_limits
from utils.logger import terms_logger as logger
from utils.verdict import Verdict

Assignment = Union[Mapping[int, int], Sequence[int]]


class MissingVariableError(Exception):
    """Se lanza cuando la asignación no cubre una variable del término."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"La asignación no define la variable x{index}")


def _lookup(assignment: Assignment, index: int):
    try:
        return assignment[index]
    except (KeyError, IndexError) as e:
        raise MissingVariableError(index) from e


def _fold(term: Term, algebra: HeytingAlgebra, assignment: Assignment, shape):
    if isinstance(term, Var):
        return _lookup(assignment, term.index)
    if isinstance(term, Zero):
        return np.full(shape, algebra.bottom, dtype=np.int64) if shape else algebra.bottom
    if isinstance(term, One):
        return np.full(shape, algebra.top, dtype=np.int64) if shape else algebra.top
    left = _fold(term.left, algebra, assignment, shape)
    right = _fold(term.right, algebra, assignment, shape)
    if isinstance(term, Meet):
        return algebra.meet[left, right]
    if isinstance(term, Join):
        return algebra.join[left, right]
    if isinstance(term, Imp):
        return algebra.imp[left, right]
    raise TypeError(f"Nodo de término desconocido: {type(term).__name__}")


def evaluate(term: Term, algebra: HeytingAlgebra, assignment: Assignment) -> int:
    """
    Valor del término bajo una asignación.

    Args:
        term: Término
        algebra: Álgebra finita
        assignment: Índice de variable -> índice de elemento

    Returns:
        Índice del elemento resultante

    Raises:
        MissingVariableError: Si falta alguna variable del término
    """
    return int(_fold(term, algebra, assignment, ()))


def evaluate_many(
    term: Term, algebra: HeytingAlgebra, columns: Mapping[int, np.ndarray]
) -> np.ndarray:
    """Evalúa el término sobre arrays de asignaciones de la misma forma."""
    shape = next(iter(columns.values())).shape if columns else (1,)
    return np.asarray(_fold(term, algebra, columns, shape))


def validates(
    algebra: HeytingAlgebra,
    equation: Equation,
    max_assignments: Optional[int] = None,
) -> Verdict:
    """
    Verifica exhaustivamente si el álgebra satisface la ecuación.

    Args:
        algebra: Álgebra finita
        equation: Ecuación a verificar
        max_assignments: Tope del espacio de búsqueda (por defecto el del entorno)

    Returns:
        Verdict; si falla, el testigo trae la asignación mínima en orden de
        base mixta y los valores de ambos lados

    Raises:
        ResourceCapError: Si |A|^(variables) supera el tope
    """
    names = equation.variables
    m = algebra.m
    limit = max_assignments if max_assignments is not None else get_limits().max_assignments
    enforce("max_assignments", m ** len(names), limit)

    if not names:
        lhs = evaluate(equation.lhs, algebra, {})
        rhs = evaluate(equation.rhs, algebra, {})
        if lhs == rhs:
            return Verdict.ok()
        return _falsifier(algebra, equation, {}, lhs, rhs)

    # bloque: la primera variable fija, el resto en una grilla
    rest = names[1:]
    if rest:
        grid = np.indices((m,) * len(rest), dtype=np.int64).reshape(len(rest), -1)
    else:
        grid = np.zeros((0, 1), dtype=np.int64)
    for leading in range(m):
        columns: Dict[int, np.ndarray] = {
            names[0]: np.full(grid.shape[1], leading, dtype=np.int64)
        }
        for position, index in enumerate(rest):
            columns[index] = grid[position]
        lhs = evaluate_many(equation.lhs, algebra, columns)
        rhs = evaluate_many(equation.rhs, algebra, columns)
        failing = np.flatnonzero(lhs != rhs)
        if failing.size:
            first = int(failing[0])
            assignment = {index: int(columns[index][first]) for index in names}
            return _falsifier(algebra, equation, assignment, int(lhs[first]), int(rhs[first]))

    logger.debug(f"Ecuación válida en álgebra de {m} elementos: {equation}")
    return Verdict.ok()


def _falsifier(
    algebra: HeytingAlgebra,
    equation: Equation,
    assignment: Dict[int, int],
    lhs: int,
    rhs: int,
) -> Verdict:
    logger.debug(f"Contraejemplo para {equation}: {assignment}")
    return Verdict.fail(
        "contraejemplo",
        assignment={f"x{i}": algebra.labels[a] for i, a in assignment.items()},
        indices=dict(assignment),
        lhs=algebra.labels[lhs],
        rhs=algebra.labels[rhs],
    )


def satisfies_all(
    algebra: HeytingAlgebra,
    equations: Sequence[Equation],
    max_assignments: Optional[int] = None,
) -> Verdict:
    """Primera ecuación que falla, con su posición y testigo."""
    for position, equation in enumerate(equations):
        verdict = validates(algebra, equation, max_assignments)
        if not verdict:
            return Verdict.fail(
                "contraejemplo",
                equation=position,
                text=equation.format(),
                **verdict.witness,
            )
    return Verdict.ok()
