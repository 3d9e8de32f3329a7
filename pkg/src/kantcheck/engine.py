"""Dependence, evaluation under interventions, but-for causation and satisfaction.

Only but-for causation is supported.  It does not handle preemption: if a
victim has already been poisoned, a shot that also kills is not a but-for
cause of death, because death would have happened anyway::

    >>> from kantcheck.fixtures import load_fixture
    >>> from kantcheck.model import make_situation, NO_INTERVENTION
    >>> from kantcheck.expr import Literal, Var
    >>> m = load_fixture("poisoning")
    >>> w = make_situation(m, "shoot", {"poisoned": True})
    >>> butfor_cause(m, w, NO_INTERVENTION, Literal("shoot"), Var("dead"))
    False
"""

from __future__ import annotations

import graphlib
import itertools
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from kantcheck.expr import (
    Affects,
    And,
    Causes,
    End,
    Formula,
    Goal,
    Implies,
    Literal,
    Means,
    Not,
    Or,
    Var,
    is_counterfactual_safe,
    literal_formula,
    variables,
)
from kantcheck.model import (
    MAX_MECHANISM_VARIABLES,
    NO_INTERVENTION,
    Affect,
    Intervention,
    Model,
    Situation,
)

Assignment = Mapping[str, bool]


class CyclicModel(ValueError):
    """The dependence relation has a cycle; ``witness`` lists its variables."""

    def __init__(self, witness: list[str]):
        self.witness = witness
        chain = " ≺ ".join(witness + witness[:1])
        super().__init__(f"dependence cycle {chain}")


@dataclass(frozen=True)
class DependenceGraph:
    """Semantic dependence edges ``(v_j, v_i)`` meaning v_i depends on v_j.

    ``levels`` stratifies the variables: level 0 holds everything with no
    incoming edge (all actions and background variables among them), and
    each later level depends only on earlier ones.  ``order`` flattens the
    levels, names sorted within a level.
    """

    nodes: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    levels: tuple[tuple[str, ...], ...]

    @property
    def order(self) -> tuple[str, ...]:
        return tuple(itertools.chain.from_iterable(self.levels))

    def parents(self, node: str) -> set[str]:
        return {src for src, dst in self.edges if dst == node}


def eval_bool(expr, values: Mapping[str, bool]) -> bool:
    """Evaluate a mechanism expression under ``values``."""
    if isinstance(expr, Var):
        return values[expr.name]
    if isinstance(expr, Not):
        return not eval_bool(expr.operand, values)
    if isinstance(expr, And):
        return eval_bool(expr.left, values) and eval_bool(expr.right, values)
    if isinstance(expr, Or):
        return eval_bool(expr.left, values) or eval_bool(expr.right, values)
    raise TypeError(f"not a mechanism expression: {expr!r}")


def _mechanism_depends(expr, v_j: str) -> bool:
    mentioned = variables(expr)
    if v_j not in mentioned:
        return False
    names = sorted(mentioned - {v_j})
    if len(names) + 1 > MAX_MECHANISM_VARIABLES:
        raise ValueError(
            f"mechanism mentions more than {MAX_MECHANISM_VARIABLES} variables"
        )
    for bits in itertools.product((False, True), repeat=len(names)):
        values = dict(zip(names, bits))
        values[v_j] = False
        low = eval_bool(expr, values)
        values[v_j] = True
        if eval_bool(expr, values) != low:
            return True
    return False


def depends(model: Model, v_i: str, v_j: str) -> bool:
    """Whether consequence ``v_i`` semantically depends on ``v_j``.

    Only the variables occurring in v_i's mechanism are enumerated; any
    other variable cannot change its value.
    """
    if v_i not in model.consequences:
        raise ValueError(f"{v_i!r} is not a consequence variable")
    if v_i == v_j:
        raise ValueError("dependence is only defined for distinct variables")
    return _mechanism_depends(model.mechanisms[v_i], v_j)


def build_dependence_graph(model: Model) -> DependenceGraph:
    """Semantic dependence graph with a level-wise topological order.

    Raises :class:`CyclicModel` with a witness if the model is cyclic.
    """
    edges = set()
    sorter: graphlib.TopologicalSorter = graphlib.TopologicalSorter()
    for v in model.variables:
        sorter.add(v)
    for c in model.consequences:
        expr = model.mechanisms[c]
        for v in sorted(variables(expr) - {c}):
            if _mechanism_depends(expr, v):
                edges.add((v, c))
                sorter.add(c, v)
    try:
        sorter.prepare()
    except graphlib.CycleError as exc:
        cycle = list(exc.args[1][:-1])
        # graphlib reports successors first; flip so each node depends on the next
        cycle.reverse()
        k = cycle.index(min(cycle))
        raise CyclicModel(cycle[k:] + cycle[:k]) from None
    levels = []
    while sorter.is_active():
        ready = sorted(sorter.get_ready())
        levels.append(tuple(ready))
        sorter.done(*ready)
    return DependenceGraph(tuple(model.variables), frozenset(edges), tuple(levels))


def evaluate(
    model: Model, situation: Situation, intervention: Intervention = NO_INTERVENTION
) -> Assignment:
    """Extend ``situation`` to every variable of ``model`` under ``intervention``.

    Intervened variables take the intervened value; consequences are
    computed level by level from their mechanisms.
    """
    forced = intervention.forced()
    values = dict(situation.values)
    values.update((k, v) for k, v in forced.items() if k in values)
    mechanisms = model.mechanisms
    for name in model.graph.order:
        if name in forced:
            values[name] = forced[name]
        elif name in mechanisms:
            # variables not yet computed here are semantically irrelevant to name
            values[name] = eval_bool(mechanisms[name], _Defaulting(values))
    return MappingProxyType(values)


class _Defaulting:
    __slots__ = ("values",)

    def __init__(self, values):
        self.values = values

    def __getitem__(self, key):
        return self.values.get(key, False)


def _check_effect(phi: Formula) -> None:
    if not is_counterfactual_safe(phi):
        raise ValueError("the effect of a but-for cause may not contain Means, End or Causes")


def _as_formula(phi) -> Formula:
    return literal_formula(phi) if isinstance(phi, Literal) else phi


def butfor_cause(
    model: Model,
    situation: Situation,
    intervention: Intervention,
    y: Literal,
    phi: Formula | Literal,
) -> bool:
    """Whether ``y`` is an actual but-for cause of ``phi``.

    Both must hold under ``intervention``, and ``phi`` must fail once ``y``
    is replaced by its negation in the intervention.
    """
    phi = _as_formula(phi)
    _check_effect(phi)
    actual = evaluate(model, situation, intervention)
    if not y.holds(actual) or not _sat(model, situation, intervention, actual, phi):
        return False
    flipped = intervention.flip(y)
    return not _sat(model, situation, flipped, evaluate(model, situation, flipped), phi)


def direct_consequences(
    model: Model, situation: Situation, intervention: Intervention, v: Literal
) -> frozenset[Literal]:
    """Consequence literals that ``v`` is a but-for cause of."""
    actual = evaluate(model, situation, intervention)
    if not v.holds(actual):
        return frozenset()
    out = set()
    for c in model.consequences:
        lit = Literal(c, actual[c])
        if butfor_cause(model, situation, intervention, v, lit):
            out.add(lit)
    return frozenset(out)


def affects_actually(
    model: Model, values: Assignment, literal: Literal, patient: str, sign: str
) -> bool:
    """``(literal, patient, sign)`` is in K and ``literal`` holds in ``values``."""
    return Affect(literal, patient, sign) in model.affect_set and literal.holds(values)


def _sat(model, situation, intervention, values, phi) -> bool:
    if isinstance(phi, Var):
        try:
            return values[phi.name]
        except KeyError:
            raise ValueError(f"unknown variable {phi.name!r}") from None
    if isinstance(phi, Not):
        return not _sat(model, situation, intervention, values, phi.operand)
    if isinstance(phi, And):
        return _sat(model, situation, intervention, values, phi.left) and _sat(
            model, situation, intervention, values, phi.right
        )
    if isinstance(phi, Or):
        return _sat(model, situation, intervention, values, phi.left) or _sat(
            model, situation, intervention, values, phi.right
        )
    if isinstance(phi, Implies):
        return not _sat(model, situation, intervention, values, phi.left) or _sat(
            model, situation, intervention, values, phi.right
        )
    if isinstance(phi, Goal):
        _check_variable(model, phi.literal)
        return phi.literal in model.goals_of(situation.action)
    if isinstance(phi, Affects):
        _check_variable(model, phi.literal)
        model.check_patient(phi.patient)
        return affects_actually(model, values, phi.literal, phi.patient, phi.sign)
    if isinstance(phi, Causes):
        _check_variable(model, phi.cause)
        return butfor_cause(model, situation, intervention, phi.cause, phi.effect)
    if isinstance(phi, Means):
        from kantcheck.principles import treated_as_means

        return treated_as_means(
            model, situation, phi.patient, phi.reading, intervention
        )[0]
    if isinstance(phi, End):
        from kantcheck.principles import treated_as_end

        return treated_as_end(model, situation, phi.patient, intervention)
    raise TypeError(f"not a formula: {phi!r}")


def _check_variable(model: Model, lit: Literal) -> None:
    if lit.name not in model.variables:
        raise ValueError(f"unknown variable {lit.name!r}")


def satisfies(
    model: Model,
    situation: Situation,
    intervention: Intervention,
    formula: Formula,
) -> bool:
    """Whether ``formula`` holds in ``situation`` under ``intervention``.

    ``Affects`` requires the literal to be true as well as listed in K;
    otherwise ``survive1`` and ``!survive1`` would both affect the same
    patient in every situation.
    """
    values = evaluate(model, situation, intervention)
    return _sat(model, situation, intervention, values, formula)

