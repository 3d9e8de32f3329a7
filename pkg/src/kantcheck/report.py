"""Verdict reports in machine (JSON) and human (text) form.

Machine reports are JSON objects carrying ``"schema_version": "1"``.  See
``docs/format.md`` for the field list of each command.
"""

from __future__ import annotations

from typing import Any, Mapping

from kantcheck.model import Diagnostic, Model, Situation
from kantcheck.principles import (
    EndFailure,
    Reading,
    Verdict,
    Violation,
    ci_permissible,
    negatively_affected_patients,
    positive_goal_patients,
    treated_as_end,
    treated_as_means,
)
from kantcheck.syntax import parse_literal

SCHEMA_VERSION = "1"


def patient_table(model: Model, situation: Situation) -> dict[str, dict[str, bool]]:
    return {
        p: {
            "means1": treated_as_means(model, situation, p, 1)[0],
            "means2": treated_as_means(model, situation, p, 2)[0],
            "end": treated_as_end(model, situation, p),
        }
        for p in model.patients
    }


def _failure_obj(f: EndFailure) -> dict:
    obj = {"kind": f.kind}
    if f.literal is not None:
        obj["literal"] = str(f.literal)
    return obj


def verdict_to_obj(verdict: Verdict) -> dict[str, Any]:
    return {
        "action": verdict.action,
        "reading": int(verdict.reading),
        "permissible": verdict.permissible,
        "violations": [
            {
                "patient": v.patient,
                "means_witness": str(v.means_witness),
                "end_failures": [_failure_obj(f) for f in v.end_failures],
            }
            for v in verdict.violations
        ],
    }


def verdict_from_obj(obj: Mapping[str, Any]) -> Verdict:
    violations = tuple(
        Violation(
            v["patient"],
            parse_literal(v["means_witness"]),
            tuple(
                EndFailure(f["kind"], parse_literal(f["literal"]) if "literal" in f else None)
                for f in v["end_failures"]
            ),
        )
        for v in obj["violations"]
    )
    return Verdict(obj["action"], Reading(obj["reading"]), violations)


def check_report(
    model: Model, situation: Situation, reading: int, verdict: Verdict | None = None
) -> dict[str, Any]:
    if verdict is None:
        verdict = ci_permissible(model, situation, reading)
    background = {b: situation.values[b] for b in model.background}
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "check",
        "model": model.name,
        "background": background,
        **verdict_to_obj(verdict),
        "patients": patient_table(model, situation),
    }


def describe_verdict(verdict: Verdict) -> str:
    head = "permissible" if verdict.permissible else "impermissible"
    lines = [f"{verdict.action}: {head} (reading {int(verdict.reading)})"]
    for v in verdict.violations:
        reasons = "; ".join(f.describe(v.patient) for f in v.end_failures)
        lines.append(
            f"  {v.patient} is treated as a means via {v.means_witness} "
            f"but not as an end: {reasons}"
        )
    return "\n".join(lines)


def check_text(report: Mapping[str, Any]) -> str:
    verdict = verdict_from_obj(report)
    lines = [describe_verdict(verdict)]
    if report["background"]:
        bg = ", ".join(f"{k}={str(v).lower()}" for k, v in report["background"].items())
        lines.insert(0, f"background: {bg}")
    lines.append("  patient        means1 means2 end")
    for p, row in report["patients"].items():
        cells = " ".join(f"{str(row[k]).lower():<6}" for k in ("means1", "means2", "end"))
        lines.append(f"  {p:<14} {cells}".rstrip())
    return "\n".join(lines)


def meritorious_scores(
    model: Model, situations: Mapping[str, Situation], reading: int
) -> dict[str, dict[str, Any]]:
    return {
        a: {
            "permissible": ci_permissible(model, w, reading).permissible,
            "positive": len(positive_goal_patients(model, w)),
            "negative": len(negatively_affected_patients(model, w)),
        }
        for a, w in situations.items()
    }


def diagnostics_obj(diags: list[Diagnostic]) -> list[dict[str, str]]:
    return [
        {"severity": d.severity, "element": d.element, "message": d.message}
        for d in diags
    ]

