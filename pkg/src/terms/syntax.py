"""
Términos del lenguaje de Heyting (∧, ∨, →, 0, 1) y su sintaxis de texto.

Sintaxis aceptada por el parser:
    - variables x0, x1, ... (el índice es el número)
    - constantes 0 y 1
    - & o ∧, | o ∨, -> o →, ~ o ¬ (abreviatura de t -> 0)
    - ecuaciones con = o ≈; un término suelto t se lee como t = 1

Precedencia de mayor a menor: ~, &, |, ->. La implicación asocia a la
derecha; & y | a la izquierda.
"""

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, List, Optional, Tuple, Union

from utils.logger import terms_logger as logger


class TermSyntaxError(Exception):
    """Se lanza cuando un texto no es un término o ecuación válida."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} (posición {position})")


class _Operators:
    """Permite escribir términos con &, | y >> (implicación)."""

    def __and__(self, other: "Term") -> "Meet":
        return Meet(self, other)

    def __or__(self, other: "Term") -> "Join":
        return Join(self, other)

    def __rshift__(self, other: "Term") -> "Imp":
        return Imp(self, other)


@dataclass(frozen=True)
class Var(_Operators):
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("El índice de variable debe ser no negativo")


@dataclass(frozen=True)
class Zero(_Operators):
    pass


@dataclass(frozen=True)
class One(_Operators):
    pass


@dataclass(frozen=True)
class Meet(_Operators):
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Join(_Operators):
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Imp(_Operators):
    left: "Term"
    right: "Term"


Term = Union[Var, Zero, One, Meet, Join, Imp]

_PRECEDENCE = {Imp: 1, Join: 2, Meet: 3}
_SYMBOLS = {
    Imp: ("->", "→"),
    Join: ("|", "∨"),
    Meet: ("&", "∧"),
}


@dataclass(frozen=True)
class Equation:
    """
    Ecuación lhs ≈ rhs.

    Attributes:
        lhs: Lado izquierdo
        rhs: Lado derecho
    """

    lhs: Term
    rhs: Term

    @property
    def variables(self) -> Tuple[int, ...]:
        return tuple(sorted(set(variables(self.lhs)) | set(variables(self.rhs))))

    def format(self, unicode: bool = False) -> str:
        sign = "≈" if unicode else "="
        return f"{format_term(self.lhs, unicode)} {sign} {format_term(self.rhs, unicode)}"

    def __str__(self) -> str:
        return self.format()


def variables(term: Term) -> Tuple[int, ...]:
    """Índices de las variables que aparecen en el término, ordenados."""
    found = set()
    pending = [term]
    while pending:
        node = pending.pop()
        if isinstance(node, Var):
            found.add(node.index)
        elif isinstance(node, (Meet, Join, Imp)):
            pending.extend((node.left, node.right))
    return tuple(sorted(found))


def size(term: Term) -> int:
    """Cantidad de nodos del árbol."""
    if isinstance(term, (Meet, Join, Imp)):
        return 1 + size(term.left) + size(term.right)
    return 1


def big_join(terms: Iterable[Term]) -> Term:
    """Supremo de una familia; la familia vacía da 0."""
    items = list(terms)
    if not items:
        return Zero()
    return reduce(Join, items)


def big_meet(terms: Iterable[Term]) -> Term:
    """Ínfimo de una familia; la familia vacía da 1."""
    items = list(terms)
    if not items:
        return One()
    return reduce(Meet, items)


def negation(term: Term) -> Imp:
    return Imp(term, Zero())


def format_term(term: Term, unicode: bool = False) -> str:
    """
    Escribe el término con los paréntesis mínimos que preservan el árbol.

    Args:
        term: Término a formatear
        unicode: Si True usa ∧, ∨, →; si no, &, |, ->

    Returns:
        Texto que parse_term vuelve a leer como el mismo árbol
    """
    if isinstance(term, Var):
        return f"x{term.index}"
    if isinstance(term, Zero):
        return "0"
    if isinstance(term, One):
        return "1"

    kind = type(term)
    prec = _PRECEDENCE[kind]
    symbol = _SYMBOLS[kind][1 if unicode else 0]
    # & y | asocian a la izquierda, -> a la derecha
    left_min, right_min = (prec + 1, prec) if kind is Imp else (prec, prec + 1)
    left = _wrap(term.left, left_min, unicode)
    right = _wrap(term.right, right_min, unicode)
    return f"{left} {symbol} {right}"


def _wrap(term: Term, minimum: int, unicode: bool) -> str:
    text = format_term(term, unicode)
    if _PRECEDENCE.get(type(term), 4) < minimum:
        return f"({text})"
    return text


_TOKEN = re.compile(
    r"\s*(?:(?P<var>x\d+)|(?P<const>[01])|(?P<op>->|→|&|∧|\||∨|~|¬|\(|\)|=|≈))"
)


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    position = 0
    stripped = text.rstrip()
    while position < len(stripped):
        match = _TOKEN.match(stripped, position)
        if match is None:
            start = position + len(stripped[position:]) - len(stripped[position:].lstrip())
            raise TermSyntaxError(f"Símbolo inesperado '{stripped[start]}'", start, text)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        position = match.end()
    tokens.append(("end", "", len(stripped)))
    return tokens


class _Parser:
    """Descenso recursivo sobre la lista de tokens."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    @property
    def current(self) -> Tuple[str, str, int]:
        return self.tokens[self.index]

    def accept(self, *values: str) -> Optional[str]:
        kind, value, _ = self.current
        if kind == "op" and value in values:
            self.index += 1
            return value
        return None

    def expect(self, *values: str) -> None:
        if self.accept(*values) is None:
            self.fail(f"Se esperaba {' o '.join(repr(v) for v in values)}")

    def fail(self, message: str) -> None:
        kind, value, position = self.current
        found = "fin del texto" if kind == "end" else f"'{value}'"
        raise TermSyntaxError(f"{message}, se encontró {found}", position, self.text)

    def equation(self) -> Equation:
        lhs = self.implication()
        if self.accept("=", "≈"):
            rhs = self.implication()
        else:
            rhs = One()
        if self.current[0] != "end":
            self.fail("Texto sobrante")
        return Equation(lhs, rhs)

    def term(self) -> Term:
        result = self.implication()
        if self.current[0] != "end":
            self.fail("Texto sobrante")
        return result

    def implication(self) -> Term:
        left = self.disjunction()
        if self.accept("->", "→"):
            return Imp(left, self.implication())
        return left

    def disjunction(self) -> Term:
        result = self.conjunction()
        while self.accept("|", "∨"):
            result = Join(result, self.conjunction())
        return result

    def conjunction(self) -> Term:
        result = self.unary()
        while self.accept("&", "∧"):
            result = Meet(result, self.unary())
        return result

    def unary(self) -> Term:
        if self.accept("~", "¬"):
            return negation(self.unary())
        return self.atom()

    def atom(self) -> Term:
        kind, value, _ = self.current
        if kind == "var":
            self.index += 1
            return Var(int(value[1:]))
        if kind == "const":
            self.index += 1
            return One() if value == "1" else Zero()
        if self.accept("("):
            inner = self.implication()
            self.expect(")")
            return inner
        self.fail("Se esperaba una variable, una constante o '('")


def parse_term(text: str) -> Term:
    """
    Lee un término.

    Raises:
        TermSyntaxError: Si el texto no es un término
    """
    return _Parser(text).term()


def parse_equation(text: str) -> Equation:
    """
    Lee una ecuación 's = t' o 's ≈ t'; un término suelto t es 't = 1'.

    Raises:
        TermSyntaxError: Si el texto no es una ecuación
    """
    equation = _Parser(text).equation()
    logger.debug(f"Ecuación leída: {equation}")
    return equation
