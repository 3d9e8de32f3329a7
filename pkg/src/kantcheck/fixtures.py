"""Bundled example models.

``suicide``, ``amputation``, ``flowers``, ``flowers_both_goals``,
``false_promise``, ``trolley`` and ``drowning`` are the classic cases;
``light_switch`` is the reading-lamp example, ``poisoning`` shows the
preemption limitation and ``talent`` the laziness case the checker cannot
distinguish.
"""

from __future__ import annotations

from importlib import resources

from kantcheck.document import load_model
from kantcheck.model import Model

FIXTURES = (
    "suicide",
    "amputation",
    "flowers",
    "flowers_both_goals",
    "false_promise",
    "trolley",
    "drowning",
    "light_switch",
    "poisoning",
    "talent",
)


def fixture_path(name: str):
    if name not in FIXTURES:
        raise KeyError(f"no fixture named {name!r}")
    return resources.files("kantcheck") / "models" / f"{name}.json"


def load_fixture(name: str) -> Model:
    with resources.as_file(fixture_path(name)) as path:
        return load_model(path)
