"""Brute-force reference implementations for testing the engine.

Nothing here is used to produce verdicts.  The code deliberately avoids the
engine's helpers: expressions are evaluated over whole truth tables with
numpy, assignments come from naive fixpoint iteration, and treated-as-means
is recomputed by enumerating every literal.
"""

from __future__ import annotations

import random
from typing import Mapping

import numpy as np

from kantcheck.expr import And, Literal, Not, Or, Var
from kantcheck.model import (
    Affect,
    Intervention,
    Model,
    Situation,
)

MAX_DEPENDS_VARIABLES = 16
MAX_MEANS_VARIABLES = 12


class OracleError(RuntimeError):
    pass


def _table(expr, columns: Mapping[str, np.ndarray]) -> np.ndarray:
    match expr:
        case Var(name):
            return columns[name]
        case Not(operand):
            return ~_table(operand, columns)
        case And(left, right):
            return _table(left, columns) & _table(right, columns)
        case Or(left, right):
            return _table(left, columns) | _table(right, columns)
    raise TypeError(f"not a mechanism expression: {expr!r}")


def _columns(names: list[str]) -> dict[str, np.ndarray]:
    rows = np.arange(2 ** len(names), dtype=np.int64)
    return {name: ((rows >> k) & 1).astype(bool) for k, name in enumerate(names)}


def _mentions(expr) -> set[str]:
    match expr:
        case Var(name):
            return {name}
        case Not(operand):
            return _mentions(operand)
        case And(left, right) | Or(left, right):
            return _mentions(left) | _mentions(right)
    raise TypeError(f"not a mechanism expression: {expr!r}")


def _apply(expr, values: Mapping[str, bool]) -> bool:
    match expr:
        case Var(name):
            return values[name]
        case Not(operand):
            return not _apply(operand, values)
        case And(left, right):
            return _apply(left, values) and _apply(right, values)
        case Or(left, right):
            return _apply(left, values) or _apply(right, values)
    raise TypeError(f"not a mechanism expression: {expr!r}")


def oracle_depends(model: Model, v_i: str, v_j: str) -> bool:
    """Truth-table dependence over every variable of the model."""
    names = [v for v in model.variables if v != v_j]
    if len(names) + 1 > MAX_DEPENDS_VARIABLES:
        raise OracleError(f"model has more than {MAX_DEPENDS_VARIABLES} variables")
    expr = model.mechanisms[v_i]
    columns = _columns(names)
    n = 2 ** len(names)
    low = _table(expr, {**columns, v_j: np.zeros(n, dtype=bool)})
    high = _table(expr, {**columns, v_j: np.ones(n, dtype=bool)})
    return bool(np.any(low != high))


_checked: dict[int, Model] = {}


def _assert_acyclic(model: Model) -> None:
    if _checked.get(id(model)) is model:
        return
    parents = {}
    for c in model.consequences:
        expr = model.mechanisms[c]
        mentioned = sorted(_mentions(expr) - {c})
        cols = _columns(mentioned)
        n = 2 ** len(mentioned)
        deps = set()
        for v in mentioned:
            low = _table(expr, {**cols, v: np.zeros(n, dtype=bool)})
            high = _table(expr, {**cols, v: np.ones(n, dtype=bool)})
            if np.any(low != high):
                deps.add(v)
        parents[c] = deps & set(model.consequences)
    # repeatedly strip consequences whose consequence-parents are all stripped
    remaining = set(model.consequences)
    while remaining:
        free = {c for c in remaining if not parents[c] & remaining}
        if not free:
            raise OracleError(f"cyclic model: {sorted(remaining)}")
        remaining -= free
    if len(_checked) > 64:
        _checked.clear()
    _checked[id(model)] = model


def oracle_evaluate(
    model: Model,
    situation: Situation,
    intervention: Intervention,
    initial_guess: Mapping[str, bool],
) -> dict[str, bool]:
    """Jacobi fixpoint iteration from ``initial_guess`` on the consequences."""
    _assert_acyclic(model)
    forced = {lit.name: lit.positive for lit in intervention.literals}
    values = {}
    for v in model.actions + model.background:
        values[v] = forced.get(v, situation.values[v])
    for c in model.consequences:
        values[c] = forced.get(c, bool(initial_guess.get(c, False)))
    for _ in range(len(model.consequences) + 1):
        nxt = dict(values)
        for c in model.consequences:
            if c not in forced:
                nxt[c] = _apply(model.mechanisms[c], values)
        if nxt == values:
            return values
        values = nxt
    raise OracleError("fixpoint iteration did not converge")


def _world(model, situation, literals: frozenset) -> dict[str, bool]:
    return oracle_evaluate(model, situation, Intervention(literals), {})


def _butfor(model, situation, y: Literal, phi: Literal) -> bool:
    actual = _world(model, situation, frozenset())
    if actual[y.name] != y.positive or actual[phi.name] != phi.positive:
        return False
    counter = _world(model, situation, frozenset({Literal(y.name, not y.positive)}))
    return counter[phi.name] != phi.positive


def oracle_means(model: Model, situation: Situation, patient: str, reading: int) -> bool:
    """Treated-as-means by enumerating every literal over actions and consequences."""
    pool = model.actions + model.consequences
    if len(pool) > MAX_MEANS_VARIABLES:
        raise OracleError(f"more than {MAX_MEANS_VARIABLES} actions and consequences")
    action = Literal(situation.action, True)
    goals = model.goals.get(situation.action, ())
    actual = _world(model, situation, frozenset())
    triples = set(model.affects)
    for name in pool:
        for positive in (True, False):
            v = Literal(name, positive)
            touches = actual[name] == positive and (
                Affect(v, patient, "+") in triples or Affect(v, patient, "-") in triples
            )
            if not touches or not _butfor(model, situation, action, v):
                continue
            if reading == 2:
                return True
            if any(_butfor(model, situation, v, g) for g in goals):
                return True
    return False


def _random_expr(rng: random.Random, names: list[str], depth: int):
    if depth == 0 or rng.random() < 0.3:
        node = Var(rng.choice(names))
        return Not(node) if rng.random() < 0.3 else node
    kind = rng.choice((Not, And, Or, And, Or))
    if kind is Not:
        return Not(_random_expr(rng, names, depth - 1))
    return kind(_random_expr(rng, names, depth - 1), _random_expr(rng, names, depth - 1))


def random_model(rng: random.Random, max_depth: int = 3) -> Model:
    """A random acyclic model: each mechanism only reads earlier variables."""
    actions = [f"a{i}" for i in range(rng.randint(1, 3))]
    background = [f"b{i}" for i in range(rng.randint(0, 2))]
    consequences = [f"c{i}" for i in range(rng.randint(0, 5))]
    patients = [f"p{i}" for i in range(rng.randint(1, 3))]
    earlier = actions + background
    mechanisms = {}
    for c in consequences:
        mechanisms[c] = _random_expr(rng, earlier, max_depth)
        earlier = earlier + [c]
    keyable = actions + consequences
    affects = []
    for _ in range(rng.randint(0, 2 * len(keyable))):
        aff = Affect(
            Literal(rng.choice(keyable), rng.random() < 0.7),
            rng.choice(patients),
            rng.choice("+-"),
        )
        if aff not in affects:
            affects.append(aff)
    goals = {}
    for a in actions:
        k = rng.randint(0, min(2, len(keyable)))
        picks = rng.sample(keyable, k)
        goals[a] = tuple(Literal(v, rng.random() < 0.7) for v in picks)
    return Model(
        actions=actions,
        background=background,
        consequences=consequences,
        mechanisms=mechanisms,
        goals=goals,
        patients=patients,
        affects=affects,
        name="random",
    )


def random_background(rng: random.Random, model: Model) -> dict[str, bool]:
    return {b: rng.random() < 0.5 for b in model.background}
