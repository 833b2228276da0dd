"""Flat ``key = value`` run configuration."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional

from .equilibrium import DEFAULT_TARGET_U, ModelParams, calibrate_demand, parameter_names
from .errors import ConfigurationError

log = logging.getLogger(__name__)

ALIASES = {"lambda": "lam"}

RUN_DEFAULTS = {
    "out": ".",
    "theta_min": 0.0,
    "theta_max": 5.0,
    "theta_count": 201,
    "horizon": 120.0,
    "dt": 0.01,
}

_STRING_KEYS = {"out"}
_INT_KEYS = {"theta_count"}


def _model_defaults() -> dict[str, float]:
    return ModelParams().flat()


def known_keys() -> set[str]:
    return set(parameter_names()) | set(RUN_DEFAULTS) | {"target_u"}


def parse_text(text: str, source: str = "<config>") -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{source}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigurationError(f"{source}:{lineno}: empty key")
        out[ALIASES.get(key, key)] = value
    return out


def parse_assignments(items: Iterable[str]) -> dict[str, str]:
    return parse_text("\n".join(items), "<command line>")


def _coerce(key: str, value) -> object:
    if key in _STRING_KEYS:
        return str(value)
    try:
        if key in _INT_KEYS:
            return int(value)
        return float(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{key}: cannot parse {value!r} as a number") from None


@dataclass
class Config:
    """Every model parameter plus run settings; see :data:`RUN_DEFAULTS`.

    ``explicit`` records which keys were supplied rather than defaulted.
    """

    values: dict = field(default_factory=dict)
    explicit: set = field(default_factory=set)

    @classmethod
    def build(cls, *layers: Mapping[str, object]) -> "Config":
        """Merge layers left to right (later wins), validate, and fill defaults."""
        merged: dict = {}
        for layer in layers:
            for key, value in layer.items():
                key = ALIASES.get(key, key)
                if value is None:
                    continue
                merged[key] = value
        unknown = sorted(set(merged) - known_keys())
        if unknown:
            raise ConfigurationError(f"unknown config key(s): {', '.join(unknown)}")

        values = {key: _coerce(key, value) for key, value in merged.items()}
        explicit = set(values)
        defaults = {**_model_defaults(), **RUN_DEFAULTS}
        missing = sorted(k for k in defaults if k not in values and k != "mu_wealth")
        if missing:
            log.info("using default calibration for: %s", ", ".join(missing))
        for key in defaults:
            values.setdefault(key, defaults[key])
        if "target_u" not in explicit and "mu_wealth" not in explicit:
            log.info("mu_wealth not given; calibrating demand to target_u=%s", DEFAULT_TARGET_U)
            values["target_u"] = DEFAULT_TARGET_U
        elif "target_u" in explicit and "mu_wealth" in explicit:
            log.info("target_u given; it overrides mu_wealth=%s", values["mu_wealth"])
        return cls(values, explicit)

    @classmethod
    def load(cls, path: Optional[str], overrides: Optional[Mapping[str, object]] = None) -> "Config":
        layers = []
        if path is not None:
            text = Path(path).read_text(encoding="utf-8")
            layers.append(parse_text(text, str(path)))
        layers.append(dict(overrides or {}))
        return cls.build(*layers)

    def __getitem__(self, key: str):
        return self.values[key]

    @property
    def target_u(self) -> Optional[float]:
        return self.values.get("target_u")

    def model_params(self) -> ModelParams:
        names = parameter_names()
        flat = {k: v for k, v in self.values.items() if k in names}
        base = ModelParams().updated(**flat)
        if self.target_u is not None:
            base = base.updated(mu_wealth=calibrate_demand(self.target_u, base))
        return base

    def to_dict(self) -> dict:
        return {k: self.values[k] for k in sorted(self.values)}
