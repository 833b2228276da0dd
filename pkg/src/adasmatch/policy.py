"""Monetary and wealth-tax multipliers and optimal-policy prescriptions."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable, Optional

from .curves import demand_shifter
from .efficiency import efficiency_report
from .equilibrium import ModelParams, solve
from .errors import DomainError, NumericalError
from .rootfind import bisect

NOMINAL_RATE = "nominal_rate"
WEALTH_TAX = "wealth_tax"

DEFAULT_STEP = 1e-4
# the step never exceeds this fraction of the demand shifter delta - r + tau_w
RELATIVE_STEP_CAP = 2e-4
RICHARDSON_RTOL = 1e-6
# keeps r strictly below delta + tau_w at the top of a rate search
RATE_CEILING_MARGIN = 1e-9


@dataclass(frozen=True)
class Multiplier:
    """Finite-difference estimate of a policy multiplier in pp per pp.

    ``value`` is the Richardson-extrapolated estimate from steps ``step`` and
    ``step/2``; ``richardson_gap`` is the relative disagreement between the two
    raw estimates.
    """

    value: float
    scheme: str
    step: float
    richardson_gap: float

    @property
    def one_sided(self) -> bool:
        return self.scheme != "central"

    @property
    def richardson_ok(self) -> bool:
        return self.richardson_gap <= RICHARDSON_RTOL


def _difference(fn: Callable[[float], float], x: float, h: float, scheme: str) -> float:
    if scheme == "central":
        return (fn(x + h) - fn(x - h)) / (2.0 * h)
    if scheme == "forward":
        return (-3.0 * fn(x) + 4.0 * fn(x + h) - fn(x + 2.0 * h)) / (2.0 * h)
    return (3.0 * fn(x) - 4.0 * fn(x - h) + fn(x - 2.0 * h)) / (2.0 * h)


def _derivative(fn, x: float, h: float, lower: float, upper: float) -> Multiplier:
    if x - h >= lower and x + h < upper:
        scheme = "central"
    elif x + 2.0 * h < upper:
        scheme = "forward"
    elif x - 2.0 * h >= lower:
        scheme = "backward"
    else:
        raise DomainError(f"no room for a finite difference of step {h} around {x}")
    coarse = _difference(fn, x, h, scheme)
    fine = _difference(fn, x, 0.5 * h, scheme)
    gap = abs(coarse - fine) / abs(fine) if fine != 0 else abs(coarse - fine)
    return Multiplier(value=(4.0 * fine - coarse) / 3.0, scheme=scheme, step=h, richardson_gap=gap)


def _step(params: ModelParams, h: Optional[float]) -> float:
    if h is not None:
        if not h > 0:
            raise DomainError(f"step must be positive, got {h}")
        return h
    return min(DEFAULT_STEP, RELATIVE_STEP_CAP * demand_shifter(params.prefs, params.policy))


def rate_ceiling(params: ModelParams) -> float:
    """Largest nominal rate that keeps demand well defined, minus a small margin."""
    pol, pr = params.policy, params.prefs
    return pr.delta + pol.pi + pol.tau_w - RATE_CEILING_MARGIN


def unemployment_at(params: ModelParams, **policy_changes: float) -> float:
    return solve(params.updated(**policy_changes)).u


def monetary_multiplier(params: ModelParams, h: Optional[float] = None) -> Multiplier:
    """du/di: unemployment response to the nominal rate, in pp per pp.

    Central differences are used where ``i - h`` respects the zero lower bound,
    otherwise a second-order one-sided stencil, flagged through ``scheme``.
    """
    step = _step(params, h)
    ceiling = params.prefs.delta + params.policy.pi + params.policy.tau_w
    return _derivative(lambda i: unemployment_at(params, i=i), params.policy.i, step, 0.0, ceiling)


def tax_multiplier(params: ModelParams, h: Optional[float] = None) -> Multiplier:
    """-du/dtau_w: unemployment reduction per unit of wealth tax, in pp per pp."""
    step = _step(params, h)
    d = _derivative(lambda t: unemployment_at(params, tau_w=t), params.policy.tau_w, step, 0.0, float("inf"))
    return Multiplier(value=-d.value, scheme=d.scheme, step=d.step, richardson_gap=d.richardson_gap)


@dataclass(frozen=True)
class PolicyPrescription:
    """A recommended setting for one policy instrument.

    ``required_change`` is the unconstrained move the formula or solver calls
    for; ``optimal_value`` is what can actually be set (clipped at the zero
    lower bound for the nominal rate).
    """

    instrument: str
    current_value: float
    optimal_value: float
    required_change: float
    gap_before: float
    gap_after_predicted: float
    multiplier_used: float
    zlb_binding: bool

    def to_dict(self) -> dict:
        return asdict(self)

    def summary(self) -> str:
        name = "nominal rate" if self.instrument == NOMINAL_RATE else "wealth tax"
        line = (
            f"{name}: {self.current_value:.6g} -> {self.optimal_value:.6g} per month "
            f"(change {self.required_change:+.6g}); gap {100 * self.gap_before:.4g} pp -> "
            f"{100 * self.gap_after_predicted:.4g} pp"
        )
        if self.zlb_binding:
            line += "; zero lower bound binds"
        return line


def optimal_rate_sufficient_statistic(gap: float, multiplier: float, i_current: float) -> PolicyPrescription:
    """Nominal rate that closes ``gap`` to first order: ``i* = i - gap / multiplier``."""
    if not multiplier > 0:
        raise DomainError(f"monetary multiplier must be > 0, got {multiplier}")
    change = -gap / multiplier
    target = i_current + change
    binding = target < 0
    optimal = 0.0 if binding else target
    after = gap - multiplier * (i_current - optimal) if binding else 0.0
    return PolicyPrescription(
        instrument=NOMINAL_RATE,
        current_value=i_current,
        optimal_value=optimal,
        required_change=change,
        gap_before=gap,
        gap_after_predicted=after,
        multiplier_used=multiplier,
        zlb_binding=binding,
    )


def optimal_wealth_tax(gap: float, tax_multiplier: float, tau_current: float) -> PolicyPrescription:
    """Wealth tax that closes ``gap`` to first order: ``tau* = tau + gap / multiplier``.

    The tax is not bound by the zero lower bound, so the result is never clipped.
    """
    if not tax_multiplier > 0:
        raise DomainError(f"tax multiplier must be > 0, got {tax_multiplier}")
    change = gap / tax_multiplier
    return PolicyPrescription(
        instrument=WEALTH_TAX,
        current_value=tau_current,
        optimal_value=tau_current + change,
        required_change=change,
        gap_before=gap,
        gap_after_predicted=0.0,
        multiplier_used=tax_multiplier,
        zlb_binding=False,
    )


def optimal_rate_exact(params: ModelParams, tol: float = 1e-15) -> PolicyPrescription:
    """Nominal rate at which equilibrium unemployment equals efficient unemployment.

    When even a zero rate leaves unemployment above its efficient level, the
    rate is set to zero and the remaining gap is reported.
    """
    u_star = efficiency_report(params).u_star
    i_now = params.policy.i
    u_now = unemployment_at(params)
    mult = monetary_multiplier(params).value

    u_zlb = unemployment_at(params, i=0.0)
    if u_zlb > u_star:
        return PolicyPrescription(
            instrument=NOMINAL_RATE,
            current_value=i_now,
            optimal_value=0.0,
            required_change=0.0 - i_now,
            gap_before=u_now - u_star,
            gap_after_predicted=u_zlb - u_star,
            multiplier_used=mult,
            zlb_binding=True,
        )
    res = bisect(lambda i: unemployment_at(params, i=i) - u_star, 0.0, rate_ceiling(params), rtol=0.0, atol=tol)
    if not res.converged:
        raise NumericalError("optimal-rate bisection did not converge")
    return PolicyPrescription(
        instrument=NOMINAL_RATE,
        current_value=i_now,
        optimal_value=res.root,
        required_change=res.root - i_now,
        gap_before=u_now - u_star,
        gap_after_predicted=unemployment_at(params, i=res.root) - u_star,
        multiplier_used=mult,
        zlb_binding=False,
    )


def optimal_wealth_tax_exact(params: ModelParams, tol: float = 1e-15) -> PolicyPrescription:
    """Wealth tax at which equilibrium unemployment equals efficient unemployment.

    The nominal rate is held at its current value. A non-negative tax cannot
    cool an overheating economy, so in that case the tax is set to zero.
    """
    u_star = efficiency_report(params).u_star
    tau_now = params.policy.tau_w
    u_now = unemployment_at(params)
    mult = tax_multiplier(params).value

    def excess(t: float) -> float:
        return unemployment_at(params, tau_w=t) - u_star

    if excess(0.0) <= 0:
        return PolicyPrescription(
            instrument=WEALTH_TAX,
            current_value=tau_now,
            optimal_value=0.0,
            required_change=0.0 - tau_now,
            gap_before=u_now - u_star,
            gap_after_predicted=excess(0.0),
            multiplier_used=mult,
            zlb_binding=False,
        )
    hi = max(tau_now, demand_shifter(params.prefs, params.policy), 1e-6)
    while excess(hi) > 0:
        hi *= 2.0
        if hi > 1e6:
            raise NumericalError("no wealth tax closes the unemployment gap")
    res = bisect(excess, 0.0, hi, rtol=0.0, atol=tol)
    return PolicyPrescription(
        instrument=WEALTH_TAX,
        current_value=tau_now,
        optimal_value=res.root,
        required_change=res.root - tau_now,
        gap_before=u_now - u_star,
        gap_after_predicted=excess(res.root),
        multiplier_used=mult,
        zlb_binding=False,
    )
