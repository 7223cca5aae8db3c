"""
Familias de axiomas: profundidad, ancho y grado de incomparabilidad.

Convenciones de variables:
    - depth_term(n): x_i del texto clásico es la variable de índice i - 1
    - width_term(n): x_0..x_n con sus mismos índices
    - psi / delta: x es la variable 0 e y_i la variable i (i = 1..n+1)
"""

from typing import List

from poset.enumeration import MAX_LABELED_POINTS, enumerate_labeled_posets
from poset.finite_poset import FinitePoset
from terms.syntax import Equation, Imp, Join, One, Term, Var, Zero, big_join, negation
from utils.limits import ResourceCapError
from utils.logger import terms_logger as logger


def depth_term(n: int) -> Term:
    """
    d₁ = x₁ ∨ (x₁ → 0) y d_{n+1} = x_{n+1} ∨ (x_{n+1} → d_n).

    Un álgebra satisface d_n ≈ 1 sii su dual tiene profundidad ≤ n.
    """
    if n < 1:
        raise ValueError("n debe ser ≥ 1")
    term: Term = Zero()
    for i in range(n):
        x = Var(i)
        term = Join(x, Imp(x, term))
    return term


def width_term(n: int) -> Term:
    """
    wₙ = ⋁_{i=0}^{n} (x_i → ⋁_{j≠i} x_j).

    Un álgebra satisface wₙ ≈ 1 sii su dual tiene ancho ≤ n.
    """
    if n < 1:
        raise ValueError("n debe ser ≥ 1")
    xs = [Var(i) for i in range(n + 1)]
    return big_join(
        Imp(xs[i], big_join(xs[j] for j in range(n + 1) if j != i)) for i in range(n + 1)
    )


def _check_order(order: FinitePoset) -> None:
    if order.n < 1:
        raise ValueError("El orden debe tener al menos un punto")


def psi(order: FinitePoset) -> Term:
    """
    ψ = ⋁_i (y_i → (x ∨ ⋁_{j : y_i ≰ y_j} y_j)) para un orden sobre y_1..y_{n+1}.

    El punto p del orden corresponde a la variable y_{p+1}. El supremo de
    la familia vacía es 0.
    """
    _check_order(order)
    x = Var(0)
    ys = [Var(p + 1) for p in range(order.n)]
    disjuncts = []
    for i in range(order.n):
        above_not = [ys[j] for j in range(order.n) if not order.leq(i, j)]
        disjuncts.append(Imp(ys[i], big_join([x] + above_not)))
    return big_join(disjuncts)


def delta(order: FinitePoset) -> Term:
    """δ = ψ ∨ (x → ⋁_i y_i)."""
    _check_order(order)
    ys = [Var(p + 1) for p in range(order.n)]
    return Join(psi(order), Imp(Var(0), big_join(ys)))


def sigma_axioms(n: int) -> List[Equation]:
    """
    Σₙ: una ecuación δ ≈ 1 por cada orden etiquetado sobre n + 1 puntos.

    Un álgebra satisface Σₙ sii su dual tiene grado de incomparabilidad
    ≤ n. Las ecuaciones siguen el orden fijo de enumerate_labeled_posets.

    Raises:
        ResourceCapError: Si n + 1 supera los puntos etiquetados enumerables
    """
    if n < 0:
        raise ValueError("n debe ser no negativo")
    if n + 1 > MAX_LABELED_POINTS:
        raise ResourceCapError("sigma_n", n, MAX_LABELED_POINTS - 1)
    equations = [Equation(delta(order), One()) for order in enumerate_labeled_posets(n + 1)]
    logger.debug(f"Σ_{n}: {len(equations)} ecuaciones")
    return equations


def prelinearity() -> Equation:
    """(x0 → x1) ∨ (x1 → x0) ≈ 1, la ecuación de las álgebras de Gödel."""
    x, y = Var(0), Var(1)
    return Equation(Join(Imp(x, y), Imp(y, x)), One())


def three_way_prelinearity() -> Equation:
    """
    ⋁_{i=1}^{3} (x0 → x_i) ∨ (x_i → x0) ≈ 1.

    Las x_i pueden repetirse, así que en un álgebra FSI falla apenas hay
    dos elementos incomparables; en particular falla en 𝟐 + ↓a3 + 𝟐.
    """
    x = Var(0)
    return Equation(
        big_join(Join(Imp(x, Var(i)), Imp(Var(i), x)) for i in range(1, 4)), One()
    )


def negation_excluded_middle() -> Equation:
    """x0 ∨ ¬x0 ≈ 1, es decir d₁ ≈ 1."""
    x = Var(0)
    return Equation(Join(x, negation(x)), One())


NAMED_EQUATIONS = {
    "prelinearity": prelinearity,
    "three-way-prelinearity": three_way_prelinearity,
    "excluded-middle": negation_excluded_middle,
}
