import math

import numpy as np
import pytest

from adasmatch import MatchingParams, ModelParams, PolicyParams, PreferenceParams
from adasmatch.curves import EndowmentParams
from adasmatch.equilibrium import (
    bilateral_surplus_check,
    calibrate_demand,
    decompose_unemployment,
    flow_welfare,
    keynesian_unemployment,
    solve,
    welfare_at,
    with_target_unemployment,
)
from adasmatch.errors import ConfigurationError, DomainError
from adasmatch.matching import beveridge_unemployment, recruiting_wedge

import oracles
from conftest import rel

# theta at u = 0.06 under the default matching calibration:
# (0.035 * 0.94 / (0.06 * 0.6))**2, evaluated in 40-digit arithmetic
THETA_AT_6PCT = 0.8351929012345679012345679


def test_default_calibration_hits_target(params):
    eq = solve(params)
    assert eq.u == pytest.approx(0.06, abs=1e-12)
    assert eq.theta == pytest.approx(THETA_AT_6PCT, rel=1e-11)
    n, lo, hi, root = oracles.equilibrium_grid_scan(params)
    assert n == 1
    assert lo <= eq.theta <= hi
    assert rel(eq.theta, root) < 1e-10


def test_accounting_identities(params):
    eq = solve(params)
    e = params.endow
    assert rel(eq.n, (1 - eq.u) * e.l) < 1e-12
    assert rel(eq.y, e.a * eq.n) < 1e-12
    assert rel(eq.y, (1 + eq.wedge) * eq.c) < 1e-12
    assert rel(eq.v, eq.theta * (e.l - eq.n)) < 1e-12
    assert eq.c < eq.y
    assert eq.residual < 1e-12
    assert eq.r == params.policy.i - params.policy.pi
    assert eq.gamma0 == params.prefs.mu_wealth / (params.prefs.delta - eq.r)


def test_zero_recruiting_cost_limit():
    # [(delta - r) / x'(0)]**sigma = 0.9 with sigma = 2, a = l = 1
    pr = PreferenceParams(sigma=2.0, delta=0.004, mu_wealth=0.002 / math.sqrt(0.9))
    p = ModelParams(matching=MatchingParams(kappa=0.0), prefs=pr, policy=PolicyParams(i=0.004, pi=0.002))
    eq = solve(p)
    assert eq.y == pytest.approx(0.9, abs=1e-10)
    assert eq.u == pytest.approx(0.1, abs=1e-10)
    assert eq.wedge == 0.0


def test_zero_recruiting_cost_without_slack_is_numerical_error():
    from adasmatch.errors import NumericalError

    pr = PreferenceParams(sigma=2.0, delta=0.004, mu_wealth=0.001)
    p = ModelParams(matching=MatchingParams(kappa=0.0), prefs=pr)
    with pytest.raises(NumericalError):
        solve(p)


def test_doubling_demand_terms_leaves_equilibrium(params):
    r = params.policy.real_rate()
    pr = params.prefs
    doubled = params.updated(delta=r + 2 * (pr.delta - r), mu_wealth=2 * pr.mu_wealth)
    assert rel(solve(doubled).theta, solve(params).theta) < 1e-10


def test_invalid_params_are_configuration_errors():
    with pytest.raises(ConfigurationError, match="no interior solution"):
        ModelParams(prefs=PreferenceParams(delta=0.001), policy=PolicyParams(i=0.01, pi=0.0))


def test_calibrate_round_trip(params):
    for target in (0.03, 0.06, 0.1, 0.25):
        p = with_target_unemployment(params, target)
        assert solve(p).u == pytest.approx(target, abs=1e-9)


def test_calibrate_closed_form(params):
    m, pr, e = params.matching, params.prefs, params.endow
    theta = 1.7
    u = beveridge_unemployment(theta, m)
    x = calibrate_demand(u, params)
    k = pr.delta - params.policy.real_rate()
    wedge = recruiting_wedge(theta, m)
    as_val = float(oracles.as_curve(theta, params))
    expected = k * ((1 + wedge) ** (pr.sigma - 1) * as_val) ** (-1 / pr.sigma)
    assert rel(x, expected) < 1e-12
    assert rel(solve(params.updated(mu_wealth=x)).theta, theta) < 1e-10


def test_calibrate_monotone(params):
    xs = [calibrate_demand(u, params) for u in np.linspace(0.02, 0.5, 25)]
    assert all(a < b for a, b in zip(xs, xs[1:]))


def test_calibrate_unreachable_target(params):
    with pytest.raises(DomainError):
        calibrate_demand(1e-9, params)  # needs tightness beyond theta_tau
    with pytest.raises(DomainError):
        calibrate_demand(1.2, params)


def test_decomposition_cases(params):
    u_k, u_f = decompose_unemployment(params)
    assert u_f > 0
    assert u_k + u_f == solve(params).u
    # strong demand
    strong = params.updated(mu_wealth=params.prefs.mu_wealth / 10)
    u_k, u_f = decompose_unemployment(strong)
    assert u_k == 0.0 and u_f == solve(strong).u
    # [(delta - r)/x'(0)]**sigma = 0.9 with a l = 1
    p = params.updated(mu_wealth=0.002 / math.sqrt(0.9))
    assert keynesian_unemployment(p) == pytest.approx(0.1, abs=1e-15)


def test_flow_welfare_examples(params):
    from adasmatch.equilibrium import equilibrium_at

    pr = PreferenceParams(sigma=2.0, x0=0.0)
    e = EndowmentParams(1.0, 1.0)
    m = MatchingParams(kappa=0.5)
    # a[(1-u)l - kappa v] = 1 at u = 0, v = 0
    assert welfare_at(0.0, 0.0, pr, e, m) == 2.0
    eq = solve(params)
    assert rel(flow_welfare(eq, params.prefs, params.endow, params.matching), eq.welfare_flow) < 1e-15
    # x'(0) does not enter welfare at fixed (u, v)
    assert flow_welfare(eq, params.prefs, params.endow, params.matching) == flow_welfare(
        eq, PreferenceParams(sigma=params.prefs.sigma, mu_wealth=7.0), params.endow, params.matching
    )
    with pytest.raises(DomainError):
        welfare_at(0.5, 10.0, pr, e, m)


def test_consumption_equals_output_net_of_recruiting(rng):
    for _ in range(20):
        p = oracles.random_model(rng)
        eq = solve(p)
        net = p.endow.a * ((1 - eq.u) * p.endow.l - p.matching.kappa * eq.v)
        assert rel(net, eq.c) < 1e-10


def test_bilateral_surplus(params, rng):
    eq = solve(params)
    chk = bilateral_surplus_check(eq, params.prefs)
    assert chk.positive
    assert chk.euler_residual < 1e-10
    assert rel(chk.margin, eq.gamma0 * eq.wedge) < 1e-10
    # surplus vanishes as tightness goes to zero
    slack = params.updated(mu_wealth=params.prefs.mu_wealth * 1e4)
    eq0 = solve(slack)
    assert eq0.theta < 1e-8
    assert bilateral_surplus_check(eq0, slack.prefs).margin < 1e-6 * eq0.gamma0


def test_uniqueness_and_agreement_on_random_calibrations(rng):
    for _ in range(20):
        p = oracles.random_model(rng)
        eq = solve(p)
        n, lo, hi, root = oracles.equilibrium_grid_scan(p, npoints=10**5)
        assert n == 1
        assert rel(eq.theta, root) < 1e-10
