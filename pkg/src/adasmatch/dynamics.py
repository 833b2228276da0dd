"""Out-of-equilibrium paths: unemployment adjustment, the costate phase line, and wealth."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Union

import numpy as np

from .curves import PolicyParams, PreferenceParams, check_demand_exists, demand_shifter
from .equilibrium import Equilibrium
from .errors import DomainError, StepSizeError
from .matching import MatchingParams, beveridge_unemployment, job_finding_rate
from .ode import integrate

DEFAULT_DT = 0.01
MAX_STEP_RATE = 0.5
DIVERGENCE_FACTOR = 1e9


@dataclass
class TimePath:
    """Sampled trajectory of one state variable; times are in months."""

    times: np.ndarray
    values: np.ndarray
    state_label: str
    flags: dict = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.times.shape != self.values.shape:
            raise ValueError("times and values must have the same length")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("path values must be finite")

    def value_at(self, t: float) -> float:
        return float(np.interp(t, self.times, self.values))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("t", "value"))
        for t, v in zip(self.times.tolist(), self.values.tolist()):
            writer.writerow((repr(t), repr(v)))
        return buf.getvalue()

    def sidecar(self, parameters: Optional[dict] = None) -> dict:
        return {"state_label": self.state_label, "parameters": dict(parameters or {}), "flags": dict(self.flags)}


def _check_step(rate: float, dt: float) -> None:
    if not dt > 0:
        raise DomainError(f"time step must be positive, got {dt}")
    if dt * abs(rate) > MAX_STEP_RATE:
        raise StepSizeError(f"step {dt} too coarse for rate {rate}: need dt*rate <= {MAX_STEP_RATE}")


def integrate_unemployment(
    u0: float, theta: float, m: MatchingParams, horizon: float, dt: float = DEFAULT_DT
) -> TimePath:
    """Unemployment under ``du/dt = lam*(1-u) - f(theta)*u`` with tightness held fixed."""
    if not 0 < u0 < 1:
        raise DomainError(f"initial unemployment must be in (0, 1), got {u0}")
    f = job_finding_rate(theta, m)
    _check_step(m.lam + f, dt)
    times, values, _ = integrate(lambda t, u: m.lam * (1.0 - u) - f * u, u0, horizon, dt)
    return TimePath(
        times,
        values,
        "u",
        {"theta": theta, "beveridge_u": beveridge_unemployment(theta, m), "convergence_rate": m.lam + f},
    )


def remaining_deviation(path: TimePath, target: float, t: float) -> float:
    """Share of the initial gap ``u(0) - target`` still present at time ``t``."""
    return (path.value_at(t) - target) / (path.values[0] - target)


def fitted_decay_rate(path: TimePath, target: float) -> float:
    """Exponential decay rate of ``|x(t) - target|`` from a least-squares log-linear fit."""
    dev = np.abs(path.values - target)
    keep = dev > 0
    if keep.sum() < 2:
        raise DomainError("path does not deviate from the target")
    slope = np.polyfit(path.times[keep], np.log(dev[keep]), 1)[0]
    return -float(slope)


SOURCE = "source"


@dataclass
class PhaseLine:
    """Costate path and the classification of its critical point.

    ``divergence`` is +1 or -1 once the path has left the threshold band
    ``|gamma| <= 1e9 * gamma0`` upwards or downwards, and 0 otherwise.
    """

    path: TimePath
    critical_point: float
    stability: str
    start: str
    divergence: int


def costate_phase_line(
    gamma_init: float,
    pr: PreferenceParams,
    pol: PolicyParams,
    horizon: float,
    dt: float = DEFAULT_DT,
) -> PhaseLine:
    """Integrate ``dgamma/dt = (delta - r + tau_w)*gamma - x'(0)`` from ``gamma_init``.

    The slope ``delta - r + tau_w`` is positive, so the critical point is a
    source: any start off it drifts away monotonically. Integration stops early
    once ``|gamma|`` exceeds the divergence threshold.
    """
    check_demand_exists(pr, pol)
    k = demand_shifter(pr, pol)
    gamma0 = pr.mu_wealth / k
    _check_step(k, dt)
    bound = DIVERGENCE_FACTOR * gamma0
    times, values, stopped = integrate(
        lambda t, g: k * g - pr.mu_wealth, gamma_init, horizon, dt, stop=lambda g: abs(g) > bound
    )
    divergence = int(math.copysign(1, values[-1])) if stopped else 0
    if gamma_init > gamma0:
        start = "above"
    elif gamma_init < gamma0:
        start = "below"
    else:
        start = "critical"
    flags = {"critical_point": gamma0, "truncated": stopped, "divergence": divergence}
    return PhaseLine(
        path=TimePath(times, values, "gamma", flags),
        critical_point=gamma0,
        stability=SOURCE,
        start=start,
        divergence=divergence,
    )


BALANCE_DEBT = "balance_debt"
EXPLICIT_PATH = "explicit_path"


@dataclass(frozen=True)
class FiscalRule:
    """Lump-sum tax policy.

    ``balance_debt`` picks the real tax that keeps real debt at its initial
    level; ``explicit_path`` uses ``real_tax``, a constant or a function of
    time giving T(t)/p(t).
    """

    mode: str = BALANCE_DEBT
    real_tax: Union[float, Callable[[float], float], None] = None

    def __post_init__(self):
        if self.mode not in (BALANCE_DEBT, EXPLICIT_PATH):
            raise DomainError(f"unknown fiscal mode {self.mode!r}")
        if self.mode == EXPLICIT_PATH and self.real_tax is None:
            raise DomainError("explicit_path needs a real_tax path")


class WealthPaths(NamedTuple):
    w: TimePath
    b: TimePath
    p: TimePath


def wealth_path(
    w0: float,
    eq: Equilibrium,
    fiscal: FiscalRule,
    pol: PolicyParams,
    horizon: float,
    dt: float = DEFAULT_DT,
) -> WealthPaths:
    """Real bonds ``w``, nominal bonds ``b = p*w`` and prices ``p = exp(pi*t)``.

    Integrates the household budget constraint with unemployment, tightness
    and consumption frozen at their equilibrium values.
    """
    net_return = pol.real_rate() - pol.tau_w
    _check_step(net_return, dt)
    surplus = eq.y - (1.0 + eq.wedge) * eq.c
    if fiscal.mode == BALANCE_DEBT:
        tax_level = net_return * w0 + surplus

        def real_tax(t):
            return tax_level

    elif callable(fiscal.real_tax):
        real_tax = fiscal.real_tax
    else:
        const = float(fiscal.real_tax)

        def real_tax(t):
            return const

    times, w, _ = integrate(lambda t, x: net_return * x + surplus - real_tax(t), w0, horizon, dt)
    p = np.exp(pol.pi * times)
    flags = {"fiscal_mode": fiscal.mode, "net_return": net_return}
    return WealthPaths(
        TimePath(times, w, "w", flags),
        TimePath(times, p * w, "b", flags),
        TimePath(times, p, "p", flags),
    )
