"""Bundled desk-scale instances and their pinned reports.

Each ``instances/<name>.game`` ships with an ``instances/<name>.expected``
file holding the exact text report the standard battery must produce.
The ``examples`` command re-runs the battery and fails on the first
byte of drift, which turns the bundled instances into an executable
regression suite.
"""

from __future__ import annotations

from importlib import resources

from .games import DEFAULT_BUDGET_CAP, DEFAULT_COALITION_CAP, GameInstance
from .gamefile import parse_game
from .reports import full_report

INSTANCE_NAMES = (
    "fork3",
    "path5",
    "web5",
    "tiers8",
    "ring7",
    "tritail4",
    "k3",
    "bpath4-uncon",
    "bpath4-con",
    "path5-b2",
    "bpath4-gen-d1",
    "bpath4-gen-cap",
)


def _read(filename: str) -> str:
    return (
        resources.files("matchcore").joinpath("instances", filename).read_text()
    )


def load_instance(name: str) -> GameInstance:
    if name not in INSTANCE_NAMES:
        raise KeyError(f"no bundled instance named {name!r}")
    return parse_game(_read(f"{name}.game"))


def expected_report(name: str) -> str:
    return _read(f"{name}.expected")


def instance_report_text(
    name: str,
    cap: int = DEFAULT_COALITION_CAP,
    budget_cap: int = DEFAULT_BUDGET_CAP,
) -> str:
    return full_report(load_instance(name), cap, budget_cap).to_text()


def run_examples() -> tuple[list[str], bool]:
    """Compare every bundled instance against its pinned report.

    Returns the per-instance result lines and an overall success flag.
    """
    lines = []
    ok = True
    for name in INSTANCE_NAMES:
        actual = instance_report_text(name)
        want = expected_report(name)
        if actual == want:
            lines.append(f"ok       {name}")
        else:
            ok = False
            lines.append(f"MISMATCH {name}")
    return lines, ok
