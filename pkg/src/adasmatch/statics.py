"""Comparative statics of permanent shocks and the sign table they produce."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Mapping, Optional

from .efficiency import efficiency_report
from .equilibrium import Equilibrium, ModelParams, solve
from .errors import DomainError

# relative shocks scale the parameter; absolute shocks add to it
RELATIVE_TARGETS = ("delta", "mu_wealth", "a", "l")
ABSOLUTE_TARGETS = ("i", "tau_w")
TARGETS = RELATIVE_TARGETS + ABSOLUTE_TARGETS

DEFAULT_MAGNITUDES = {"delta": 0.10, "mu_wealth": 0.10, "a": 0.10, "l": 0.10, "i": 0.0025, "tau_w": 0.0025}
SIGN_DEADZONE = 1e-12
VARIABLES = ("theta", "y", "n", "u", "u_star")


@dataclass(frozen=True)
class Shock:
    """A permanent change to one parameter.

    ``magnitude`` is a fraction of the current value for ``delta``,
    ``mu_wealth``, ``a`` and ``l``, and an absolute monthly rate for ``i`` and
    ``tau_w``.
    """

    target: str
    direction: str
    magnitude: Optional[float] = None

    def __post_init__(self):
        if self.target not in TARGETS:
            raise DomainError(f"unknown shock target {self.target!r}; expected one of {TARGETS}")
        if self.direction not in ("increase", "decrease"):
            raise DomainError(f"shock direction must be 'increase' or 'decrease', got {self.direction!r}")
        if self.magnitude is not None and self.magnitude < 0:
            raise DomainError("shock magnitude must be non-negative; use direction for the sign")

    @property
    def size(self) -> float:
        return DEFAULT_MAGNITUDES[self.target] if self.magnitude is None else self.magnitude

    def apply(self, params: ModelParams) -> ModelParams:
        old = params.flat()[self.target]
        sign = 1.0 if self.direction == "increase" else -1.0
        if self.target in RELATIVE_TARGETS:
            new = old * (1.0 + sign * self.size)
        else:
            new = old + sign * self.size
        return params.updated(**{self.target: new})

    @property
    def label(self) -> str:
        return f"{self.direction} {self.target}"


def sign_of(x: float, deadzone: float = SIGN_DEADZONE) -> int:
    if x > deadzone:
        return 1
    if x < -deadzone:
        return -1
    return 0


SIGN_SYMBOLS = {1: "+", 0: "0", -1: "-"}


@dataclass(frozen=True)
class StaticsRow:
    shock: Shock
    signs: dict
    deltas: dict

    def symbols(self) -> dict:
        return {k: SIGN_SYMBOLS[s] for k, s in self.signs.items()}


def _snapshot(params: ModelParams) -> tuple[Equilibrium, dict]:
    eq = solve(params)
    rep = efficiency_report(params, eq)
    return eq, {"theta": eq.theta, "y": eq.y, "n": eq.n, "u": eq.u, "u_star": rep.u_star}


def apply_shock(params: ModelParams, shock: Shock) -> tuple[Equilibrium, Equilibrium, StaticsRow]:
    """Solve before and after ``shock`` and record the direction of each response."""
    shocked = shock.apply(params)
    before, vals0 = _snapshot(params)
    after, vals1 = _snapshot(shocked)
    deltas = {k: vals1[k] - vals0[k] for k in VARIABLES}
    signs = {k: sign_of(d) for k, d in deltas.items()}
    return before, after, StaticsRow(shock, signs, deltas)


# rows of the business-cycle and policy table, in order
TABLE1_SHOCKS = (
    ("demand", "delta", "decrease"),
    ("demand", "mu_wealth", "increase"),
    ("supply", "a", "decrease"),
    ("supply", "l", "decrease"),
    ("policy", "i", "decrease"),
    ("policy", "tau_w", "increase"),
)

ROW_TITLES = {
    ("delta", "decrease"): "Decrease in discount rate",
    ("mu_wealth", "increase"): "Increase in marginal utility of wealth",
    ("a", "decrease"): "Decrease in labour productivity",
    ("l", "decrease"): "Decrease in labour-force size",
    ("i", "decrease"): "Decrease in nominal interest rate",
    ("tau_w", "increase"): "Increase in wealth tax rate",
}

# expected signs for theta, y, n, u, u_star
TABLE1_EXPECTED = {
    ("delta", "decrease"): (-1, -1, -1, 1, 0),
    ("mu_wealth", "increase"): (-1, -1, -1, 1, 0),
    ("a", "decrease"): (1, -1, 1, -1, 0),
    ("l", "decrease"): (1, -1, -1, -1, 0),
    ("i", "decrease"): (1, 1, 1, -1, 0),
    ("tau_w", "increase"): (1, 1, 1, -1, 0),
}


def table1(params: ModelParams, magnitudes: Optional[Mapping[str, float]] = None) -> list[StaticsRow]:
    """The six shocks of the business-cycle table, each applied to ``params``."""
    magnitudes = dict(magnitudes or {})
    rows = []
    for _, target, direction in TABLE1_SHOCKS:
        shock = Shock(target, direction, magnitudes.get(target))
        rows.append(apply_shock(params, shock)[2])
    return rows


def matches_table1(rows: list[StaticsRow]) -> bool:
    for row in rows:
        expected = TABLE1_EXPECTED[(row.shock.target, row.shock.direction)]
        if tuple(row.signs[k] for k in VARIABLES) != expected:
            return False
    return True


STATICS_HEADER = (
    "group",
    "shock",
    "tightness",
    "output",
    "employment",
    "unemployment_actual",
    "unemployment_efficient",
    "d_theta",
    "d_y",
    "d_n",
    "d_u",
    "d_u_star",
)


def _group(shock: Shock) -> str:
    for group, target, _ in TABLE1_SHOCKS:
        if target == shock.target:
            return group
    return ""


def statics_to_csv(rows: list[StaticsRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(STATICS_HEADER)
    for row in rows:
        sym = row.symbols()
        title = ROW_TITLES.get((row.shock.target, row.shock.direction), row.shock.label)
        writer.writerow(
            [_group(row.shock), title]
            + [sym[k] for k in VARIABLES]
            + [repr(row.deltas[k]) for k in VARIABLES]
        )
    return buf.getvalue()
