import random

import pytest

from kantcheck.expr import Literal, Var
from kantcheck.model import (
    Affect,
    InconsistentIntervention,
    Intervention,
    Model,
    SituationError,
    make_situation,
    validate_model,
)
from kantcheck.oracle import random_background, random_model
from kantcheck.syntax import parse_mechanism


def errors(model):
    return [d for d in validate_model(model) if d.severity == "error"]


def test_trolley_is_valid(models):
    assert validate_model(models["trolley"]) == []


@pytest.mark.parametrize(
    "name",
    ["suicide", "amputation", "flowers", "flowers_both_goals", "false_promise",
     "trolley", "drowning", "light_switch", "poisoning", "talent"],
)
def test_every_fixture_has_no_errors(models, name):
    assert errors(models[name]) == []


def test_two_variable_cycle():
    m = Model(
        actions=["a"],
        consequences=["c1", "c2"],
        mechanisms={"c1": Var("c2"), "c2": Var("c1")},
    )
    (diag,) = errors(m)
    assert diag.message == "dependence cycle c1 ≺ c2 ≺ c1"


def test_vacuous_mention_is_not_a_cycle():
    m = Model(
        actions=["a"],
        consequences=["c1", "c2"],
        mechanisms={"c1": parse_mechanism("c2 & !c2"), "c2": parse_mechanism("c1 | a")},
    )
    assert errors(m) == []


def test_affect_on_background_variable():
    m = Model(
        actions=["a"],
        background=["b"],
        patients=["P"],
        affects=[Affect(Literal("b"), "P", "+")],
    )
    (diag,) = errors(m)
    assert "affect key must be in A ∪ C" in diag.message


def test_missing_mechanism_and_unknowns():
    m = Model(
        actions=["a"],
        consequences=["c", "d"],
        mechanisms={"d": parse_mechanism("a & ghost"), "e": Var("a")},
        goals={"a": (Literal("nowhere"),), "zz": ()},
        patients=["P"],
        affects=[Affect(Literal("c"), "Q", "-")],
    )
    messages = {(d.element, d.message) for d in errors(m)}
    assert ("mechanisms.c", "missing mechanism") in messages
    assert ("mechanisms.d", "unknown variable 'ghost'") in messages
    assert ("mechanisms.e", "mechanism for a non-consequence variable") in messages
    assert ("goals.a", "unknown variable 'nowhere'") in messages
    assert ("goals.zz", "goals for an unknown action") in messages
    assert ("affects.c", "unknown patient 'Q'") in messages


def test_self_reference_and_duplicates():
    m = Model(
        actions=["a", "c"],
        consequences=["c"],
        mechanisms={"c": parse_mechanism("c | a")},
        patients=["P", "P"],
    )
    messages = [d.message for d in errors(m)]
    assert "declared as both action and consequence" in messages
    assert "mechanism refers to itself" in messages
    assert "duplicate patient" in messages


def test_no_actions_is_an_error():
    assert errors(Model(actions=[]))


def test_mixed_sign_affect_is_a_warning():
    m = Model(
        actions=["a"],
        patients=["P"],
        affects=[Affect(Literal("a"), "P", "+"), Affect(Literal("a"), "P", "-")],
    )
    (diag,) = validate_model(m)
    assert diag.severity == "warning"


def test_dual_affect_entries_are_independent(models):
    # (drown, Alice, -) and (!drown, Alice, +) is not a mixed-sign warning
    assert validate_model(models["drowning"]) == []


def test_diagnostics_are_sorted_and_deterministic():
    m = Model(
        actions=["a"],
        consequences=["z", "b"],
        mechanisms={},
        patients=["P"],
        affects=[Affect(Literal("q"), "P", "+")],
    )
    first = validate_model(m)
    assert first == validate_model(m)
    assert [d.element for d in first] == sorted(d.element for d in first)


def test_make_situation_drowning(models):
    w = make_situation(models["drowning"], "rescue", {"accident": True})
    assert dict(w.values) == {"rescue": True, "refrain": False, "accident": True}


def test_make_situation_suicide(models):
    w = make_situation(models["suicide"], "suicide", {})
    assert dict(w.values) == {"suicide": True}


@pytest.mark.parametrize(
    "action, background",
    [("rescue", {}), ("suicide", {"accident": True})],
)
def test_make_situation_errors_suicide(models, action, background):
    with pytest.raises(SituationError):
        make_situation(models["suicide"], action, background)


def test_make_situation_missing_background(models):
    with pytest.raises(SituationError, match="missing"):
        make_situation(models["drowning"], "rescue", {})


def test_exactly_one_action_true():
    rng = random.Random(7)
    for _ in range(200):
        m = random_model(rng)
        bg = random_background(rng, m)
        for a in m.actions:
            w = make_situation(m, a, bg)
            assert [x for x in m.actions if w.values[x]] == [a]


def test_intervention_consistency():
    with pytest.raises(InconsistentIntervention):
        Intervention.of(Literal("x"), Literal("x", False))
    x = Intervention.of(Literal("x"), Literal("y", False))
    assert x.flip(Literal("x")) == Intervention.of(Literal("x", False), Literal("y", False))
    assert x.flip(Literal("z")).forced() == {"x": True, "y": False, "z": False}


def test_model_is_immutable(models):
    m = models["suicide"]
    with pytest.raises(Exception):
        m.actions = ("x",)
    with pytest.raises(TypeError):
        m.mechanisms["dead"] = Var("x")
