"""Equilibrium of the AD-AS model and quantities derived from it."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields, replace
from typing import NamedTuple

from .curves import (
    DemandCurve,
    EndowmentParams,
    PolicyParams,
    PreferenceParams,
    as_output,
    check_demand_exists,
    demand_shifter,
)
from .errors import DomainError, NumericalError
from .matching import (
    MatchingParams,
    beveridge_unemployment,
    recruiting_wedge,
    theta_tau,
    tightness_for_unemployment,
)
from .rootfind import bisect

DEFAULT_TOL = 1e-12
BRACKET_FLOOR = 1e-12
DEFAULT_TARGET_U = 0.06

_GROUPS = ("matching", "prefs", "endow", "policy")


@dataclass(frozen=True)
class ModelParams:
    matching: MatchingParams = MatchingParams()
    prefs: PreferenceParams = PreferenceParams()
    endow: EndowmentParams = EndowmentParams()
    policy: PolicyParams = PolicyParams()

    def __post_init__(self):
        check_demand_exists(self.prefs, self.policy)

    def flat(self) -> dict[str, float]:
        """All parameters as a single ``name -> value`` mapping."""
        out = {}
        for group in _GROUPS:
            out.update(asdict(getattr(self, group)))
        return out

    def updated(self, **changes: float) -> "ModelParams":
        """Copy with some flat parameters replaced, e.g. ``params.updated(i=0.0)``."""
        parts = {group: {} for group in _GROUPS}
        for key, value in changes.items():
            parts[group_of(key)][key] = value
        return ModelParams(**{g: replace(getattr(self, g), **kw) if kw else getattr(self, g) for g, kw in parts.items()})


def parameter_names() -> dict[str, str]:
    """Map every flat parameter name to the group holding it."""
    groups = {
        "matching": MatchingParams,
        "prefs": PreferenceParams,
        "endow": EndowmentParams,
        "policy": PolicyParams,
    }
    return {f.name: g for g, cls in groups.items() for f in fields(cls)}


def group_of(name: str) -> str:
    try:
        return parameter_names()[name]
    except KeyError:
        raise KeyError(f"unknown parameter {name!r}") from None


@dataclass(frozen=True)
class Equilibrium:
    theta: float
    y: float
    u: float
    n: float
    v: float
    c: float
    wedge: float
    r: float
    gamma0: float
    welfare_flow: float
    residual: float

    def to_dict(self) -> dict[str, float]:
        return asdict(self)


def _excess_supply(params: ModelParams):
    demand = DemandCurve(params.prefs, params.policy, params.matching)
    m, e = params.matching, params.endow
    return lambda theta: as_output(theta, m, e) - demand(theta)


def _bracket(g, m: MatchingParams) -> tuple[float, float]:
    lo = BRACKET_FLOOR
    while g(lo) >= 0:
        lo *= 1e-3
        if lo < 1e-300:
            raise NumericalError("aggregate supply exceeds demand at every positive tightness")

    tt = theta_tau(m)
    if math.isfinite(tt):
        eps = 1e-9
        hi = tt * (1.0 - eps)
        while g(hi) <= 0:
            eps *= 1e-3
            if eps < 1e-15:
                raise NumericalError("demand exceeds supply up to the recruiting capacity bound")
            hi = tt * (1.0 - eps)
    else:
        # no recruiting cost: AD is flat, AS climbs towards capacity
        hi = 1.0
        while g(hi) <= 0:
            hi *= 2.0
            if hi > 1e300:
                raise NumericalError(
                    "demand at or above productive capacity: no equilibrium without recruiting costs"
                )
    return lo, hi


def solve_tightness(params: ModelParams, tol: float = DEFAULT_TOL) -> float:
    """Tightness at which AS equals AD."""
    g = _excess_supply(params)
    lo, hi = _bracket(g, params.matching)
    res = bisect(g, lo, hi, rtol=tol)
    if not res.converged:
        raise NumericalError(f"bisection did not converge on [{res.lo}, {res.hi}]")
    return res.root


def solve(params: ModelParams, tol: float = DEFAULT_TOL) -> Equilibrium:
    """Solve for the unique equilibrium and derive every other variable from tightness."""
    theta = solve_tightness(params, tol)
    return equilibrium_at(params, theta)


def equilibrium_at(params: ModelParams, theta: float) -> Equilibrium:
    m, pr, e, pol = params.matching, params.prefs, params.endow, params.policy
    u = beveridge_unemployment(theta, m)
    n = (1.0 - u) * e.l
    y = e.a * n
    v = theta * (e.l - n)
    wedge = recruiting_wedge(theta, m)
    c = y / (1.0 + wedge)
    gamma0 = pr.mu_wealth / demand_shifter(pr, pol)
    welfare = _welfare(u, v, pr, e, m)
    residual = abs(_excess_supply(params)(theta))
    return Equilibrium(
        theta=theta,
        y=y,
        u=u,
        n=n,
        v=v,
        c=c,
        wedge=wedge,
        r=pol.real_rate(),
        gamma0=gamma0,
        welfare_flow=welfare,
        residual=residual,
    )


def calibrate_demand(target_u: float, params: ModelParams) -> float:
    """Marginal utility of wealth x'(0) that puts equilibrium unemployment at ``target_u``.

    ``params.prefs.mu_wealth`` is ignored.
    """
    m, pr, e = params.matching, params.prefs, params.endow
    if not 0 < target_u < 1:
        raise DomainError(f"target unemployment must be in (0, 1), got {target_u}")
    theta = tightness_for_unemployment(target_u, m)
    if not theta < theta_tau(m):
        raise DomainError(
            f"target unemployment {target_u} needs tightness {theta} beyond theta_tau={theta_tau(m)}"
        )
    y = as_output(theta, m, e)
    wedge = recruiting_wedge(theta, m)
    return demand_shifter(pr, params.policy) * (y * (1.0 + wedge) ** (pr.sigma - 1.0)) ** (-1.0 / pr.sigma)


def with_target_unemployment(params: ModelParams, target_u: float) -> ModelParams:
    return params.updated(mu_wealth=calibrate_demand(target_u, params))


def default_params(target_u: float = DEFAULT_TARGET_U) -> ModelParams:
    """The shipped calibration, with x'(0) set so that unemployment equals ``target_u``."""
    return with_target_unemployment(ModelParams(), target_u)


class UnemploymentSplit(NamedTuple):
    u_k: float
    u_f: float


def keynesian_unemployment(params: ModelParams) -> float:
    """Unemployment that deficient demand alone would cause without recruiting costs."""
    pr, e = params.prefs, params.endow
    demand = (demand_shifter(pr, params.policy) / pr.mu_wealth) ** pr.sigma
    return max(0.0, 1.0 - demand / (e.a * e.l))


def decompose_unemployment(params: ModelParams, eq: Equilibrium | None = None) -> UnemploymentSplit:
    """Split equilibrium unemployment into Keynesian and frictional parts."""
    if eq is None:
        eq = solve(params)
    u_k = keynesian_unemployment(params)
    return UnemploymentSplit(u_k, eq.u - u_k)


def _welfare(u: float, v: float, pr: PreferenceParams, e: EndowmentParams, m: MatchingParams) -> float:
    consumed = e.a * ((1.0 - u) * e.l - m.kappa * v)
    if consumed < 0:
        raise DomainError("recruiting absorbs more than total output")
    s = pr.sigma
    return s / (s - 1.0) * consumed ** ((s - 1.0) / s) + pr.x0


def flow_welfare(eq: Equilibrium, pr: PreferenceParams, e: EndowmentParams, m: MatchingParams) -> float:
    """Flow social welfare at the equilibrium's unemployment rate and vacancy level."""
    return _welfare(eq.u, eq.v, pr, e, m)


def welfare_at(u: float, v: float, pr: PreferenceParams, e: EndowmentParams, m: MatchingParams) -> float:
    """Flow social welfare for an arbitrary ``(u, v)`` pair."""
    return _welfare(u, v, pr, e, m)


@dataclass(frozen=True)
class SurplusCheck:
    margin: float
    euler_residual: float

    @property
    def positive(self) -> bool:
        return self.margin > 0


def bilateral_surplus_check(eq: Equilibrium, pr: PreferenceParams) -> SurplusCheck:
    """Consumer surplus from one more service, ``c**(-1/sigma) - gamma0``.

    ``euler_residual`` is the relative error in ``c**(-1/sigma) = gamma0 * (1 + wedge)``.
    """
    marginal = eq.c ** (-1.0 / pr.sigma)
    target = eq.gamma0 * (1.0 + eq.wedge)
    return SurplusCheck(margin=marginal - eq.gamma0, euler_residual=abs(marginal - target) / target)
