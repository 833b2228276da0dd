"""Matching-market primitives under a Cobb-Douglas matching function.

Time is measured in months; every rate here is a monthly rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigurationError, DomainError


@dataclass(frozen=True)
class MatchingParams:
    """Matching technology and recruiting cost.

    Attributes:
        mu: matching efficacy (matches per month at unit tightness).
        eta: matching elasticity with respect to jobseekers, in (0, 1).
        lam: job-separation rate per month.
        kappa: recruiters needed per vacancy. Zero switches recruiting costs
            off entirely; the capacity bound ``theta_tau`` is then infinite.
    """

    mu: float = 0.60
    eta: float = 0.5
    lam: float = 0.035
    kappa: float = 0.92

    def __post_init__(self):
        if not self.mu > 0:
            raise ConfigurationError(f"matching efficacy mu must be > 0, got {self.mu}")
        if not 0 < self.eta < 1:
            raise ConfigurationError(f"matching elasticity eta must be in (0, 1), got {self.eta}")
        if not self.lam > 0:
            raise ConfigurationError(f"separation rate lambda must be > 0, got {self.lam}")
        if not self.kappa >= 0 or not math.isfinite(self.kappa):
            raise ConfigurationError(f"recruiting cost kappa must be >= 0, got {self.kappa}")
        tt = theta_tau(self)
        if self.kappa > 0 and not (math.isfinite(tt) and tt > 0):
            raise ConfigurationError("capacity tightness theta_tau is not finite and positive")


def job_finding_rate(theta: float, p: MatchingParams) -> float:
    """Rate ``mu * theta**(1-eta)`` at which a jobseeker finds a job."""
    if theta < 0:
        raise DomainError(f"tightness must be >= 0, got {theta}")
    return p.mu * theta ** (1.0 - p.eta)


def vacancy_filling_rate(theta: float, p: MatchingParams) -> float:
    """Rate ``mu * theta**(-eta)`` at which a vacancy is filled."""
    if not theta > 0:
        raise DomainError(f"vacancy-filling rate needs tightness > 0, got {theta}")
    return p.mu * theta ** (-p.eta)


def beveridge_unemployment(theta: float, p: MatchingParams) -> float:
    """Unemployment rate at which inflows to and outflows from unemployment balance."""
    f = job_finding_rate(theta, p)
    return p.lam / (p.lam + f)


def theta_tau(p: MatchingParams) -> float:
    """Tightness at which all new hires are absorbed by recruiting.

    Solves ``q(theta) = kappa * lam`` in closed form. Infinite when kappa is 0.
    """
    if p.kappa == 0:
        return math.inf
    return (p.mu / (p.kappa * p.lam)) ** (1.0 / p.eta)


def recruiting_wedge(theta: float, p: MatchingParams) -> float:
    """Extra services bought for recruiting per service consumed.

    ``kappa*lam / (q(theta) - kappa*lam)``; zero at ``theta=0`` and unbounded
    as ``theta`` approaches :func:`theta_tau`.
    """
    if theta < 0:
        raise DomainError(f"tightness must be >= 0, got {theta}")
    if p.kappa == 0 or theta == 0:
        return 0.0
    if theta >= theta_tau(p):
        raise DomainError(
            f"tightness {theta} is beyond the productive capacity of recruiting "
            f"(theta_tau={theta_tau(p)})"
        )
    kl = p.kappa * p.lam
    gap = vacancy_filling_rate(theta, p) - kl
    if not gap > 0:
        # rounding right at the pole
        raise DomainError(f"tightness {theta} is beyond the productive capacity of recruiting")
    return kl / gap


def vacancies_on_beveridge(u: float, p: MatchingParams, l: float = 1.0) -> float:
    """Vacancies needed to hold unemployment at ``u`` on the Beveridge curve."""
    if not 0 < u < 1:
        raise DomainError(f"unemployment rate must be in (0, 1), got {u}")
    if not l > 0:
        raise DomainError(f"labour force must be > 0, got {l}")
    return (p.lam * (1.0 - u) / (p.mu * u**p.eta)) ** (1.0 / (1.0 - p.eta)) * l


def tightness_for_unemployment(u: float, p: MatchingParams) -> float:
    """Invert the Beveridge curve: tightness at which unemployment equals ``u``."""
    if not 0 < u <= 1:
        raise DomainError(f"unemployment rate must be in (0, 1], got {u}")
    f = p.lam * (1.0 - u) / u
    return (f / p.mu) ** (1.0 / (1.0 - p.eta))
