"""Abstract syntax shared by mechanisms and queries.

Mechanisms are built from ``Var``, ``Not``, ``And`` and ``Or``.  Queries add
``Implies`` and the predicates ``Goal``, ``Affects``, ``Causes``, ``Means``
and ``End``.  All nodes are frozen, so structural equality is ``==``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union


@dataclass(frozen=True, slots=True, order=True)
class Literal:
    """A possibly negated variable."""

    name: str
    positive: bool = True

    def negate(self) -> Literal:
        return Literal(self.name, not self.positive)

    def holds(self, values) -> bool:
        return values[self.name] == self.positive

    def __str__(self) -> str:
        return self.name if self.positive else "!" + self.name


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Not:
    operand: Formula


@dataclass(frozen=True, slots=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Implies:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Goal:
    literal: Literal


@dataclass(frozen=True, slots=True)
class Affects:
    literal: Literal
    patient: str
    sign: str  # "+" or "-"

    def __post_init__(self) -> None:
        if self.sign not in ("+", "-"):
            raise ValueError(f"sign must be '+' or '-', got {self.sign!r}")


@dataclass(frozen=True, slots=True)
class Causes:
    cause: Literal
    effect: Formula


@dataclass(frozen=True, slots=True)
class Means:
    reading: int
    patient: str

    def __post_init__(self) -> None:
        if self.reading not in (1, 2):
            raise ValueError(f"reading must be 1 or 2, got {self.reading!r}")


@dataclass(frozen=True, slots=True)
class End:
    patient: str


BoolExpr = Union[Var, Not, And, Or]
Formula = Union[Var, Not, And, Or, Implies, Goal, Affects, Causes, Means, End]

BOOL_NODES = (Var, Not, And, Or)
PREDICATES = (Goal, Affects, Causes, Means, End)


def literal_formula(literal: Literal) -> Formula:
    """The formula that is true exactly when ``literal`` holds."""
    atom = Var(literal.name)
    return atom if literal.positive else Not(atom)


def walk(node: Formula) -> Iterator[Formula]:
    """Pre-order traversal of ``node`` and its sub-formulae."""
    stack = [node]
    while stack:
        cur = stack.pop()
        yield cur
        if isinstance(cur, Not):
            stack.append(cur.operand)
        elif isinstance(cur, (And, Or, Implies)):
            stack.append(cur.right)
            stack.append(cur.left)
        elif isinstance(cur, Causes):
            stack.append(cur.effect)


def variables(node: Formula) -> set[str]:
    """Names of all variables mentioned in ``node``, including predicate literals."""
    names = set()
    for sub in walk(node):
        if isinstance(sub, Var):
            names.add(sub.name)
        elif isinstance(sub, (Goal, Affects)):
            names.add(sub.literal.name)
        elif isinstance(sub, Causes):
            names.add(sub.cause.name)
    return names


def is_boolean(node: Formula) -> bool:
    """True if ``node`` only uses mechanism connectives."""
    return all(isinstance(sub, BOOL_NODES) for sub in walk(node))


def is_counterfactual_safe(node: Formula) -> bool:
    """True if ``node`` may appear as the effect of ``Causes``.

    Means, End and nested Causes are excluded.
    """
    return not any(isinstance(sub, (Causes, Means, End)) for sub in walk(node))
