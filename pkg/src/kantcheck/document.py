"""JSON model documents.

A document looks like::

    {
      "actions": ["suicide"],
      "background": [],
      "consequences": ["dead"],
      "patients": ["Bob"],
      "mechanisms": {"dead": "suicide"},
      "affects": {"suicide": [["Bob", "+"]], "dead": []},
      "goals": {"suicide": ["dead"]}
    }

Affect and goal entries are literal strings, so ``"!drown"`` names the
negated variable.
"""

from __future__ import annotations

import json
import os
from typing import Any

from kantcheck.model import Affect, Diagnostic, Model, ModelError, validate_model
from kantcheck.syntax import ParseError, parse_literal, parse_mechanism, render

KEYS = ("actions", "background", "consequences", "patients", "mechanisms", "affects", "goals")


def _string_list(doc: dict, key: str, errors: list[Diagnostic]) -> list[str]:
    value = doc.get(key, [])
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        errors.append(Diagnostic("error", key, "must be a list of strings"))
        return []
    return value


def _mapping(doc: dict, key: str, errors: list[Diagnostic]) -> dict:
    value = doc.get(key, {})
    if not isinstance(value, dict):
        errors.append(Diagnostic("error", key, "must be an object"))
        return {}
    return value


def _literal(text: Any, element: str, errors: list[Diagnostic]):
    if not isinstance(text, str):
        errors.append(Diagnostic("error", element, f"literal must be a string, got {text!r}"))
        return None
    try:
        return parse_literal(text)
    except ParseError as exc:
        errors.append(Diagnostic("error", element, f"bad literal {text!r}: {exc}"))
        return None


def model_from_document(doc: Any, name: str = "") -> Model:
    """Build and validate a model; raises ModelError listing every problem."""
    errors: list[Diagnostic] = []
    if not isinstance(doc, dict):
        raise ModelError([Diagnostic("error", "<document>", "must be a JSON object")], name)
    for key in sorted(set(doc) - set(KEYS)):
        errors.append(Diagnostic("error", key, "unknown key"))
    if "actions" not in doc:
        errors.append(Diagnostic("error", "actions", "missing"))

    actions = _string_list(doc, "actions", errors)
    background = _string_list(doc, "background", errors)
    consequences = _string_list(doc, "consequences", errors)
    patients = _string_list(doc, "patients", errors)

    mechanisms = {}
    for c, text in _mapping(doc, "mechanisms", errors).items():
        element = f"mechanisms.{c}"
        if not isinstance(text, str):
            errors.append(Diagnostic("error", element, "must be a string"))
            continue
        try:
            mechanisms[c] = parse_mechanism(text)
        except ParseError as exc:
            errors.append(Diagnostic("error", element, str(exc)))

    affects = []
    for key, pairs in _mapping(doc, "affects", errors).items():
        element = f"affects.{key}"
        lit = _literal(key, element, errors)
        if not isinstance(pairs, list):
            errors.append(Diagnostic("error", element, "must be a list of [patient, sign] pairs"))
            continue
        for pair in pairs:
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not isinstance(pair[0], str)
                or pair[1] not in ("+", "-")
            ):
                errors.append(Diagnostic("error", element, f"bad affect entry {pair!r}"))
            elif lit is not None:
                affects.append(Affect(lit, pair[0], pair[1]))

    goals = {}
    for action, lits in _mapping(doc, "goals", errors).items():
        element = f"goals.{action}"
        if not isinstance(lits, list):
            errors.append(Diagnostic("error", element, "must be a list of literals"))
            continue
        parsed = [_literal(t, element, errors) for t in lits]
        goals[action] = tuple(lit for lit in parsed if lit is not None)

    model = Model(
        actions=actions,
        background=background,
        consequences=consequences,
        mechanisms=mechanisms,
        goals=goals,
        patients=patients,
        affects=affects,
        name=name,
    )
    if not errors:
        errors = validate_model(model)
    else:
        # a partly parsed model can still report structural problems
        seen = {d.element for d in errors}
        errors = sorted(
            errors + [d for d in validate_model(model) if d.element not in seen],
            key=lambda d: (d.element, d.severity, d.message),
        )
    if any(d.severity == "error" for d in errors):
        raise ModelError(errors, name)
    return model


def read_document(path: str | os.PathLike) -> Any:
    """Read the raw JSON; raises OSError or ValueError (json.JSONDecodeError)."""
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_model(path: str | os.PathLike) -> Model:
    """Read, parse and validate the model document at ``path``."""
    name = os.path.splitext(os.path.basename(os.fspath(path)))[0]
    return model_from_document(read_document(path), name=name)


def model_to_document(model: Model) -> dict:
    """Serialize ``model``.

    Every action and consequence gets an affects entry (possibly empty) and
    every action a goals entry, so documents written that way round-trip.
    Negated affect keys appear only when they carry entries.
    """
    affects: dict[str, list] = {v: [] for v in model.actions + model.consequences}
    for aff in model.affects:
        affects.setdefault(str(aff.literal), []).append([aff.patient, aff.sign])
    return {
        "actions": list(model.actions),
        "background": list(model.background),
        "consequences": list(model.consequences),
        "patients": list(model.patients),
        "mechanisms": {c: render(model.mechanisms[c]) for c in model.consequences},
        "affects": affects,
        "goals": {a: [str(g) for g in model.goals_of(a)] for a in model.actions},
    }


def dumps_model(model: Model) -> str:
    return json.dumps(model_to_document(model), indent=2, ensure_ascii=False) + "\n"


def dump_model(model: Model, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_model(model))
