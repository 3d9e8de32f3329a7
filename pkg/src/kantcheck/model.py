"""Kantian causal agency models, situations and interventions."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Mapping

from kantcheck.expr import BoolExpr, Literal, variables
from kantcheck.syntax import IDENT_RE

ACTION = "action"
BACKGROUND = "background"
CONSEQUENCE = "consequence"

MAX_MECHANISM_VARIABLES = 20


class ModelError(ValueError):
    """A model failed validation; ``diagnostics`` lists every problem found."""

    def __init__(self, diagnostics: list[Diagnostic], source: str = ""):
        self.diagnostics = diagnostics
        lines = [str(d) for d in diagnostics if d.severity == "error"]
        prefix = f"{source}: " if source else ""
        super().__init__(prefix + "invalid model:\n  " + "\n  ".join(lines))


class SituationError(ValueError):
    pass


class InconsistentIntervention(ValueError):
    pass


class UnknownPatient(KeyError):
    def __str__(self) -> str:
        return f"unknown patient {self.args[0]!r}"


@dataclass(frozen=True, slots=True, order=True)
class Affect:
    """One triple of the affect relation: ``literal`` affects ``patient`` with ``sign``."""

    literal: Literal
    patient: str
    sign: str


@dataclass(frozen=True, slots=True)
class Diagnostic:
    severity: str  # "error" or "warning"
    element: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity}: {self.element}: {self.message}"


@dataclass(frozen=True, eq=False)
class Model:
    """A model tuple (A, B, C, F, G, P, K).

    Admissible interpretations are not stored; build a :class:`Situation`
    per query with :func:`make_situation`.  ``goals`` may omit actions whose
    goal set is empty.  Affect keys are literals, so ``!drown`` can affect a
    patient independently of ``drown``.

    The affect clause is read as ``(c, p, +) in K`` for ``c ▷+ p``; the
    ``(a, c, +)`` spelling would not type-check against K.
    """

    actions: tuple[str, ...]
    background: tuple[str, ...] = ()
    consequences: tuple[str, ...] = ()
    mechanisms: Mapping[str, BoolExpr] = field(default_factory=dict)
    goals: Mapping[str, tuple[Literal, ...]] = field(default_factory=dict)
    patients: tuple[str, ...] = ()
    affects: tuple[Affect, ...] = ()
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "actions", tuple(self.actions))
        object.__setattr__(self, "background", tuple(self.background))
        object.__setattr__(self, "consequences", tuple(self.consequences))
        object.__setattr__(self, "patients", tuple(self.patients))
        object.__setattr__(self, "affects", tuple(self.affects))
        object.__setattr__(self, "mechanisms", MappingProxyType(dict(self.mechanisms)))
        object.__setattr__(
            self,
            "goals",
            MappingProxyType({a: tuple(gs) for a, gs in self.goals.items()}),
        )

    def _key(self):
        return (
            self.actions,
            self.background,
            self.consequences,
            dict(self.mechanisms),
            {a: gs for a, gs in self.goals.items() if gs},
            self.patients,
            self.affect_set,
        )

    def __eq__(self, other):
        # K is a relation, so affect order does not matter; neither do empty goal sets
        if not isinstance(other, Model):
            return NotImplemented
        return self._key() == other._key()

    __hash__ = None

    @property
    def variables(self) -> tuple[str, ...]:
        return self.actions + self.background + self.consequences

    def kind(self, name: str) -> str:
        if name in self.actions:
            return ACTION
        if name in self.background:
            return BACKGROUND
        if name in self.consequences:
            return CONSEQUENCE
        raise KeyError(name)

    def goals_of(self, action: str) -> tuple[Literal, ...]:
        return self.goals.get(action, ())

    @cached_property
    def affect_set(self) -> frozenset[Affect]:
        return frozenset(self.affects)

    @cached_property
    def graph(self):
        """Semantic dependence graph; raises ``CyclicModel`` for cyclic models."""
        from kantcheck.engine import build_dependence_graph

        return build_dependence_graph(self)

    def check_patient(self, patient: str) -> None:
        if patient not in self.patients:
            raise UnknownPatient(patient)


@dataclass(frozen=True)
class Situation:
    """An interpretation w_a of actions and background variables.

    ``values`` assigns exactly one action true (the chosen one).
    """

    action: str
    values: Mapping[str, bool]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", MappingProxyType(dict(self.values)))


@dataclass(frozen=True)
class Intervention:
    """A consistent set of literals overriding their variables' values."""

    literals: frozenset[Literal] = frozenset()

    def __post_init__(self) -> None:
        lits = frozenset(self.literals)
        object.__setattr__(self, "literals", lits)
        clash = sorted(lit.name for lit in lits if lit.negate() in lits)
        if clash:
            raise InconsistentIntervention(
                f"intervention sets both polarities of {clash[0]!r}"
            )

    @classmethod
    def of(cls, *literals: Literal) -> Intervention:
        return cls(frozenset(literals))

    def forced(self) -> dict[str, bool]:
        return {lit.name: lit.positive for lit in self.literals}

    def flip(self, y: Literal) -> Intervention:
        """The intervention (X minus {y}) plus {not y}."""
        return Intervention((self.literals - {y}) | {y.negate()})

    def __iter__(self):
        return iter(sorted(self.literals))

    def __len__(self) -> int:
        return len(self.literals)


NO_INTERVENTION = Intervention()


def make_situation(
    model: Model, action: str, background: Mapping[str, bool] | None = None
) -> Situation:
    """Build w_a: ``action`` true, every other action false, background as given."""
    background = dict(background or {})
    if action not in model.actions:
        raise SituationError(f"unknown action {action!r}")
    missing = [b for b in model.background if b not in background]
    if missing:
        raise SituationError(f"missing background value for {', '.join(missing)}")
    extra = sorted(set(background) - set(model.background))
    if extra:
        raise SituationError(f"not a background variable: {', '.join(extra)}")
    for name, value in background.items():
        if not isinstance(value, bool):
            raise SituationError(f"background value for {name!r} must be a bool")
    values = {a: a == action for a in model.actions}
    values.update(background)
    return Situation(action, values)


def _check_names(model: Model, out: list[Diagnostic]) -> None:
    seen: dict[str, str] = {}
    for kind, names in (
        (ACTION, model.actions),
        (BACKGROUND, model.background),
        (CONSEQUENCE, model.consequences),
    ):
        for name in names:
            if not IDENT_RE.match(name):
                out.append(Diagnostic("error", name, "not a valid identifier"))
            if name in seen:
                out.append(
                    Diagnostic(
                        "error", name, f"declared as both {seen[name]} and {kind}"
                    )
                )
            seen.setdefault(name, kind)
    if not model.actions:
        out.append(Diagnostic("error", "actions", "at least one action is required"))
    dup = sorted({p for p in model.patients if model.patients.count(p) > 1})
    for p in dup:
        out.append(Diagnostic("error", f"patients.{p}", "duplicate patient"))


def _check_mechanisms(model: Model, out: list[Diagnostic]) -> bool:
    """Returns True if the mechanisms are well-formed enough for dependence analysis."""
    ok = True
    known = set(model.variables)
    for c in model.consequences:
        if c not in model.mechanisms:
            out.append(Diagnostic("error", f"mechanisms.{c}", "missing mechanism"))
            ok = False
    for c, expr in model.mechanisms.items():
        element = f"mechanisms.{c}"
        if c not in model.consequences:
            out.append(
                Diagnostic("error", element, "mechanism for a non-consequence variable")
            )
            ok = False
            continue
        names = variables(expr)
        for v in sorted(names - known):
            out.append(Diagnostic("error", element, f"unknown variable {v!r}"))
            ok = False
        if c in names:
            out.append(Diagnostic("error", element, "mechanism refers to itself"))
            ok = False
        if len(names) > MAX_MECHANISM_VARIABLES:
            out.append(
                Diagnostic(
                    "error",
                    element,
                    f"mentions {len(names)} variables (limit {MAX_MECHANISM_VARIABLES})",
                )
            )
            ok = False
    return ok


def _check_goals(model: Model, out: list[Diagnostic]) -> None:
    known = set(model.variables)
    for action, lits in model.goals.items():
        element = f"goals.{action}"
        if action not in model.actions:
            out.append(Diagnostic("error", element, "goals for an unknown action"))
        for lit in lits:
            if lit.name not in known:
                out.append(Diagnostic("error", element, f"unknown variable {lit.name!r}"))


def _check_affects(model: Model, out: list[Diagnostic]) -> None:
    keyable = set(model.actions) | set(model.consequences)
    patients = set(model.patients)
    for aff in model.affects:
        element = f"affects.{aff.literal}"
        if aff.literal.name not in keyable:
            out.append(
                Diagnostic(
                    "error",
                    element,
                    "affect key must be in A ∪ C (an action or consequence)",
                )
            )
        if aff.patient not in patients:
            out.append(Diagnostic("error", element, f"unknown patient {aff.patient!r}"))
        if aff.sign not in ("+", "-"):
            out.append(Diagnostic("error", element, f"bad sign {aff.sign!r}"))
    signs: dict[tuple[Literal, str], set[str]] = {}
    for aff in model.affects:
        signs.setdefault((aff.literal, aff.patient), set()).add(aff.sign)
    for (lit, patient), s in signs.items():
        if s >= {"+", "-"}:
            out.append(
                Diagnostic(
                    "warning",
                    f"affects.{lit}",
                    f"affects {patient} both positively and negatively",
                )
            )


def validate_model(model: Model) -> list[Diagnostic]:
    """Check every structural side condition; an empty list means valid.

    Diagnostics are sorted by element name.  Cycles in the semantic
    dependence graph are errors; a literal affecting one patient with both
    signs is only a warning.
    """
    from kantcheck.engine import CyclicModel, build_dependence_graph

    out: list[Diagnostic] = []
    _check_names(model, out)
    mechanisms_ok = _check_mechanisms(model, out)
    _check_goals(model, out)
    _check_affects(model, out)
    if mechanisms_ok and not any(d.severity == "error" for d in out):
        try:
            build_dependence_graph(model)
        except CyclicModel as exc:
            out.append(
                Diagnostic("error", f"mechanisms.{exc.witness[0]}", str(exc))
            )
    return sorted(out, key=lambda d: (d.element, d.severity, d.message))


def check_model(model: Model, source: str = "") -> Model:
    """Raise :class:`ModelError` if ``model`` has validation errors."""
    diags = validate_model(model)
    if any(d.severity == "error" for d in diags):
        raise ModelError(diags, source)
    return model

