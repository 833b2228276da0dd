"""Aggregate supply and aggregate demand as functions of tightness."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, replace
from typing import Iterable, Optional

from .errors import ConfigurationError, DomainError
from .matching import MatchingParams, beveridge_unemployment, recruiting_wedge, theta_tau

# AD is never sampled closer to the pole than this fraction of theta_tau.
AD_DOMAIN_CLIP = 1e-9


@dataclass(frozen=True)
class PreferenceParams:
    """Household preferences.

    ``mu_wealth`` is the marginal utility of relative wealth at zero, x'(0);
    ``x0`` is the utility level of zero relative wealth, x(0). Relative wealth
    is zero in equilibrium, so the rest of the wealth-utility function never
    enters the solution.
    """

    sigma: float = 2.0
    delta: float = 0.004
    mu_wealth: float = 1.0
    x0: float = 0.0

    def __post_init__(self):
        if not self.sigma > 1:
            raise ConfigurationError(f"curvature sigma must be > 1, got {self.sigma}")
        if not self.delta > 0:
            raise ConfigurationError(f"discount rate delta must be > 0, got {self.delta}")
        if not self.mu_wealth > 0:
            raise ConfigurationError(f"marginal utility of wealth must be > 0, got {self.mu_wealth}")
        if not math.isfinite(self.x0):
            raise ConfigurationError("x0 must be finite")


@dataclass(frozen=True)
class EndowmentParams:
    a: float = 1.0
    l: float = 1.0

    def __post_init__(self):
        if not self.a > 0:
            raise ConfigurationError(f"labour productivity a must be > 0, got {self.a}")
        if not self.l > 0:
            raise ConfigurationError(f"labour force l must be > 0, got {self.l}")

    @property
    def capacity(self) -> float:
        return self.a * self.l


@dataclass(frozen=True)
class PolicyParams:
    """Monetary and tax policy: nominal rate ``i``, inflation norm ``pi``, wealth tax ``tau_w``."""

    i: float = 0.004
    pi: float = 0.002
    tau_w: float = 0.0

    def __post_init__(self):
        if not self.i >= 0:
            raise ConfigurationError(f"nominal rate i must be >= 0 (zero lower bound), got {self.i}")
        if not self.tau_w >= 0:
            raise ConfigurationError(f"wealth tax tau_w must be >= 0, got {self.tau_w}")
        if not math.isfinite(self.pi):
            raise ConfigurationError("inflation norm pi must be finite")

    def real_rate(self) -> float:
        return self.i - self.pi

    def at_zlb(self) -> "PolicyParams":
        return replace(self, i=0.0)


def demand_shifter(pr: PreferenceParams, pol: PolicyParams) -> float:
    """``delta - r + tau_w``: the discount rate net of the after-tax return on wealth."""
    return pr.delta - pol.real_rate() + pol.tau_w


def check_demand_exists(pr: PreferenceParams, pol: PolicyParams) -> None:
    k = demand_shifter(pr, pol)
    if not k > 0:
        raise ConfigurationError(
            f"no interior solution: need delta > r - tau_w, got delta={pr.delta}, "
            f"r={pol.real_rate()}, tau_w={pol.tau_w}"
        )


def as_output(theta: float, m: MatchingParams, e: EndowmentParams) -> float:
    """Output produced when unemployment sits on the Beveridge curve."""
    return (1.0 - beveridge_unemployment(theta, m)) * e.a * e.l


@dataclass(frozen=True)
class DemandCurve:
    """Aggregate demand as a function of tightness.

    Construction fails with :class:`ConfigurationError` when the after-tax real
    return on wealth is not below the discount rate.
    """

    prefs: PreferenceParams
    policy: PolicyParams
    matching: MatchingParams

    def __post_init__(self):
        check_demand_exists(self.prefs, self.policy)

    @property
    def intercept(self) -> float:
        """Output demanded at zero tightness."""
        return (demand_shifter(self.prefs, self.policy) / self.prefs.mu_wealth) ** self.prefs.sigma

    def __call__(self, theta: float) -> float:
        wedge = recruiting_wedge(theta, self.matching)
        return self.intercept * (1.0 + wedge) ** (1.0 - self.prefs.sigma)


def ad_output(theta: float, pr: PreferenceParams, pol: PolicyParams, m: MatchingParams) -> float:
    return DemandCurve(pr, pol, m)(theta)


def zlb_ad_output(theta: float, pr: PreferenceParams, pol: PolicyParams, m: MatchingParams) -> float:
    """AD with the nominal rate at zero: the most outward position monetary policy can reach."""
    return DemandCurve(pr, pol.at_zlb(), m)(theta)


@dataclass(frozen=True)
class CurveRow:
    theta: float
    as_: float
    ad: float
    zlb_ad: float
    valid: bool


CSV_HEADER = ("theta", "as", "ad", "zlb_ad")


def sample_curves(
    theta_grid: Iterable[float],
    m: MatchingParams,
    e: EndowmentParams,
    pr: PreferenceParams,
    pol: PolicyParams,
) -> list[CurveRow]:
    """Evaluate AS, AD and ZLB-AD on a grid.

    Points outside ``[0, theta_tau*(1-1e-9)]`` are kept as invalid rows with
    NaN in the columns that cannot be evaluated.
    """
    ad = DemandCurve(pr, pol, m)
    zlb = DemandCurve(pr, pol.at_zlb(), m)
    upper = theta_tau(m) * (1.0 - AD_DOMAIN_CLIP)
    rows = []
    for theta in theta_grid:
        theta = float(theta)
        if not (0 <= theta <= upper):
            as_val = as_output(theta, m, e) if theta >= 0 else math.nan
            rows.append(CurveRow(theta, as_val, math.nan, math.nan, False))
            continue
        try:
            rows.append(CurveRow(theta, as_output(theta, m, e), ad(theta), zlb(theta), True))
        except DomainError:
            rows.append(CurveRow(theta, as_output(theta, m, e), math.nan, math.nan, False))
    return rows


def curves_to_csv(rows: Iterable[CurveRow], fh: Optional[io.TextIOBase] = None) -> str:
    """Serialize curve rows as ``theta,as,ad,zlb_ad``; returns the text."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow([repr(r.theta), repr(r.as_), repr(r.ad), repr(r.zlb_ad)])
    text = buf.getvalue()
    if fh is not None:
        fh.write(text)
    return text
