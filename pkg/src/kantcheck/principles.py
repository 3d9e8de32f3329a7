"""Treated-as-end, treated-as-means, the categorical imperative and meritorious choice."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

from kantcheck.engine import affects_actually, butfor_cause, evaluate
from kantcheck.expr import Literal
from kantcheck.model import (
    NO_INTERVENTION,
    Intervention,
    Model,
    Situation,
    make_situation,
)


class Reading(enum.IntEnum):
    """Which notion of "treated as a means" to apply.

    Reading 1 counts patients affected by something on a causal path to a
    goal; Reading 2 counts anyone affected by a direct consequence of the
    action.
    """

    ONE = 1
    TWO = 2


NO_POSITIVE_GOAL = "no-positive-goal"
NEGATIVE_GOAL = "negative-goal"


@dataclass(frozen=True, slots=True)
class EndFailure:
    kind: str  # NO_POSITIVE_GOAL or NEGATIVE_GOAL
    literal: Literal | None = None

    def describe(self, patient: str) -> str:
        if self.kind == NO_POSITIVE_GOAL:
            return f"no goal affects {patient} positively"
        return f"goal {self.literal} affects {patient} negatively"


@dataclass(frozen=True, slots=True)
class Violation:
    patient: str
    means_witness: Literal
    end_failures: tuple[EndFailure, ...]


@dataclass(frozen=True)
class Verdict:
    action: str
    reading: Reading
    violations: tuple[Violation, ...]

    @property
    def permissible(self) -> bool:
        return not self.violations


def end_failures(
    model: Model,
    situation: Situation,
    patient: str,
    intervention: Intervention = NO_INTERVENTION,
) -> tuple[EndFailure, ...]:
    """Reasons ``patient`` is not treated as an end; empty if they are."""
    model.check_patient(patient)
    values = evaluate(model, situation, intervention)
    goals = model.goals_of(situation.action)
    failures = []
    if not any(affects_actually(model, values, g, patient, "+") for g in goals):
        failures.append(EndFailure(NO_POSITIVE_GOAL))
    for g in goals:
        if affects_actually(model, values, g, patient, "-"):
            failures.append(EndFailure(NEGATIVE_GOAL, g))
    return tuple(failures)


def treated_as_end(
    model: Model,
    situation: Situation,
    patient: str,
    intervention: Intervention = NO_INTERVENTION,
) -> bool:
    """Some goal affects ``patient`` positively and none negatively."""
    return not end_failures(model, situation, patient, intervention)


def _candidates(model: Model, values) -> list[Literal]:
    keyable = set(model.actions) | set(model.consequences)
    return [Literal(v, values[v]) for v in model.graph.order if v in keyable]


def treated_as_means(
    model: Model,
    situation: Situation,
    patient: str,
    reading: int,
    intervention: Intervention = NO_INTERVENTION,
) -> tuple[bool, Literal | None]:
    """Whether ``patient`` is used as a means, with the first witness literal.

    Witnesses are true literals over actions and consequences (the action
    itself included) that the action is a but-for cause of and that affect
    ``patient``.  Reading 1 also requires the witness to be a but-for cause
    of a goal.  Candidates are tried in dependence order, then by name.
    """
    model.check_patient(patient)
    reading = Reading(reading)
    values = evaluate(model, situation, intervention)
    action = Literal(situation.action)
    goals = model.goals_of(situation.action)
    for v in _candidates(model, values):
        if not (
            affects_actually(model, values, v, patient, "+")
            or affects_actually(model, values, v, patient, "-")
        ):
            continue
        if not butfor_cause(model, situation, intervention, action, v):
            continue
        if reading is Reading.TWO or any(
            butfor_cause(model, situation, intervention, v, g) for g in goals
        ):
            return True, v
    return False, None


def ci_permissible(
    model: Model,
    situation: Situation,
    reading: int = 1,
    intervention: Intervention = NO_INTERVENTION,
) -> Verdict:
    """Check that everyone treated as a means is also treated as an end."""
    reading = Reading(reading)
    violations = []
    for p in model.patients:
        used, witness = treated_as_means(model, situation, p, reading, intervention)
        if not used:
            continue
        failures = end_failures(model, situation, p, intervention)
        if failures:
            violations.append(Violation(p, witness, failures))
    return Verdict(situation.action, reading, tuple(violations))


def positive_goal_patients(model: Model, situation: Situation) -> frozenset[str]:
    """Patients some goal of the chosen action actually affects positively."""
    values = evaluate(model, situation)
    goals = model.goals_of(situation.action)
    return frozenset(
        p
        for p in model.patients
        if any(affects_actually(model, values, g, p, "+") for g in goals)
    )


def negatively_affected_patients(model: Model, situation: Situation) -> frozenset[str]:
    """Patients hurt by some consequence literal that holds in ``situation``."""
    values = evaluate(model, situation)
    lits = [Literal(c, values[c]) for c in model.consequences]
    return frozenset(
        p
        for p in model.patients
        if any(affects_actually(model, values, lit, p, "-") for lit in lits)
    )


def meritorious(
    model: Model,
    background: Mapping[str, bool] | None = None,
    reading: int = 1,
    permitted_only: bool = True,
    tiebreak_negative: bool = False,
) -> frozenset[str]:
    """Permitted actions whose goals positively affect the most patients.

    Every maximizer is returned; the caller picks among ties.  An empty set
    means no action is permitted.  A patient counts even if another goal
    also affects them negatively.  With ``tiebreak_negative``, ties are
    broken in favour of actions leaving fewer patients negatively affected
    by the resulting consequences.
    """
    scored = []
    for a in model.actions:
        w = make_situation(model, a, background)
        if permitted_only and not ci_permissible(model, w, reading).permissible:
            continue
        key = (len(positive_goal_patients(model, w)),)
        if tiebreak_negative:
            key += (-len(negatively_affected_patients(model, w)),)
        scored.append((key, a))
    if not scored:
        return frozenset()
    best = max(key for key, _ in scored)
    return frozenset(a for key, a in scored if key == best)
