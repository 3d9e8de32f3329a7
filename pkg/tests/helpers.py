"""Random syntax trees shared by the property tests and the acceptance suite."""

import random

from hypothesis import strategies as st

from kantcheck.expr import (
    Affects,
    And,
    Causes,
    End,
    Goal,
    Implies,
    Literal,
    Means,
    Not,
    Or,
    Var,
)

NAMES = ["a", "b", "press", "x_1", "Goal", "End", "_t"]
PATIENTS = ["Bob", "alice", "Mr. Smith", 'say "hi"', "Zoë"]


def random_literal(rng: random.Random) -> Literal:
    return Literal(rng.choice(NAMES), rng.random() < 0.5)


def random_tree(rng: random.Random, depth: int, queries: bool = True, effect_safe=False):
    """A random mechanism (queries=False) or query tree of height at most ``depth``."""
    leaves = ["var"]
    if queries:
        leaves += ["goal", "affects"]
        if not effect_safe:
            leaves += ["means", "end"]
    inner = ["not", "and", "or"]
    if queries:
        inner.append("implies")
        if not effect_safe:
            inner.append("causes")
    if depth <= 1 or rng.random() < 0.25:
        kind = rng.choice(leaves)
    else:
        kind = rng.choice(inner)
    sub = lambda: random_tree(rng, depth - 1, queries, effect_safe)  # noqa: E731
    if kind == "var":
        return Var(rng.choice(NAMES))
    if kind == "goal":
        return Goal(random_literal(rng))
    if kind == "affects":
        return Affects(random_literal(rng), rng.choice(PATIENTS), rng.choice("+-"))
    if kind == "means":
        return Means(rng.choice((1, 2)), rng.choice(PATIENTS))
    if kind == "end":
        return End(rng.choice(PATIENTS))
    if kind == "not":
        return Not(sub())
    if kind == "causes":
        return Causes(random_literal(rng), random_tree(rng, depth - 1, True, True))
    return {"and": And, "or": Or, "implies": Implies}[kind](sub(), sub())


def height(node) -> int:
    if isinstance(node, Not):
        return 1 + height(node.operand)
    if isinstance(node, (And, Or, Implies)):
        return 1 + max(height(node.left), height(node.right))
    if isinstance(node, Causes):
        return 1 + height(node.effect)
    return 1


@st.composite
def trees(draw, queries=True, max_depth=6):
    seed = draw(st.integers(0, 2**32 - 1))
    depth = draw(st.integers(1, max_depth))
    return random_tree(random.Random(seed), depth, queries)
