"""Efficient tightness, efficient unemployment, and the unemployment gap."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from .equilibrium import Equilibrium, ModelParams, solve
from .errors import DomainError, NumericalError
from .matching import (
    MatchingParams,
    beveridge_unemployment,
    job_finding_rate,
    theta_tau,
    vacancies_on_beveridge,
    vacancy_filling_rate,
)
from .rootfind import bisect


@dataclass(frozen=True)
class EfficiencyReport:
    theta_star: float
    u_star: float
    v_star: float
    epsilon_at_star: float
    gap: float

    def to_dict(self) -> dict[str, float]:
        return asdict(self)


def beveridge_elasticity(theta: float, m: MatchingParams) -> float:
    """Elasticity of vacancies to unemployment along the Beveridge curve, as a positive number."""
    if not theta > 0:
        raise DomainError(f"Beveridge elasticity needs tightness > 0, got {theta}")
    return (m.eta + m.lam / job_finding_rate(theta, m)) / (1.0 - m.eta)


def beveridge_elasticity_from_u(u: float, m: MatchingParams) -> float:
    if not 0 < u < 1:
        raise DomainError(f"unemployment rate must be in (0, 1), got {u}")
    return (m.eta + u / (1.0 - u)) / (1.0 - m.eta)


def efficiency_condition(theta: float, m: MatchingParams) -> float:
    """``kappa/(1-eta) * (eta*theta + lam/q(theta)) - 1``; zero at efficient tightness."""
    if theta == 0:
        return -1.0
    return m.kappa / (1.0 - m.eta) * (m.eta * theta + m.lam / vacancy_filling_rate(theta, m)) - 1.0


def efficient_tightness(m: MatchingParams, tol: float = 1e-14) -> float:
    """Unique root of :func:`efficiency_condition` on ``(0, theta_tau)``.

    The condition rises strictly from -1 at zero to above zero at
    ``theta_tau``, so bisection on the full interval always brackets it.
    """
    if m.kappa == 0:
        raise DomainError("efficient tightness is unbounded without recruiting costs")
    res = bisect(lambda th: efficiency_condition(th, m), 0.0, theta_tau(m), rtol=tol)
    if not res.converged:
        raise NumericalError("efficient-tightness bisection did not converge")
    return res.root


def efficiency_report(params: ModelParams, eq: Optional[Equilibrium] = None) -> EfficiencyReport:
    m = params.matching
    theta_star = efficient_tightness(m)
    u_star = beveridge_unemployment(theta_star, m)
    v_star = vacancies_on_beveridge(u_star, m, params.endow.l)
    if eq is None:
        eq = solve(params)
    return EfficiencyReport(
        theta_star=theta_star,
        u_star=u_star,
        v_star=v_star,
        epsilon_at_star=beveridge_elasticity(theta_star, m),
        gap=eq.u - u_star,
    )
