import csv
import json

import pytest

from adasmatch.cli import main

import oracles
from conftest import rel


def run(tmp_path, *args):
    return main([*args, "--out", str(tmp_path)])


def test_solve_default(tmp_path):
    assert run(tmp_path, "solve") == 0
    eq = json.loads((tmp_path / "equilibrium.json").read_text())
    eff = json.loads((tmp_path / "efficiency.json").read_text())
    assert eq["residual"] <= 1e-12
    assert eq["u"] == pytest.approx(0.06, abs=1e-9)
    assert set(eff) == {"theta_star", "u_star", "v_star", "epsilon_at_star", "gap"}
    from adasmatch import default_params

    n, lo, hi, root = oracles.equilibrium_grid_scan(default_params(), 10**5)
    assert rel(eq["theta"], root) < 1e-10


def test_solve_target_u(tmp_path):
    assert run(tmp_path, "solve", "--target-u", "0.08") == 0
    eq = json.loads((tmp_path / "equilibrium.json").read_text())
    assert eq["u"] == pytest.approx(0.08, abs=1e-6)


def test_solve_bad_config(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("delta = 0.001\ni = 0.01\npi = 0.0\n")
    assert run(tmp_path, "solve", "--config", str(cfg)) == 2
    err = capsys.readouterr().err.strip()
    assert len(err.splitlines()) == 1
    assert "delta > r - tau_w" in err


def test_unknown_config_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("# comment\nbogus = 1\n")
    assert run(tmp_path, "solve", "--config", str(cfg)) == 2
    assert "bogus" in capsys.readouterr().err


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# calibration\nlambda = 0.03  # separation\ntarget_u = 0.07\n")
    assert run(tmp_path, "solve", "--config", str(cfg), "--set", "target_u=0.09") == 0
    eq = json.loads((tmp_path / "equilibrium.json").read_text())
    assert eq["u"] == pytest.approx(0.09, abs=1e-9)


def test_missing_config_file_is_io_error(tmp_path):
    assert run(tmp_path, "solve", "--config", str(tmp_path / "nope.cfg")) == 1


def test_curves(tmp_path):
    assert run(tmp_path, "curves", "--set", "theta_count=3", "--set", "theta_max=2") == 0
    rows = list(csv.reader((tmp_path / "curves.csv").open()))
    assert rows[0] == ["theta", "as", "ad", "zlb_ad"]
    assert len(rows) == 4
    side = json.loads((tmp_path / "curves.json").read_text())
    assert {"theta_eq", "theta_star"} <= set(side["markers"])


def test_curves_monotone_and_dominated(tmp_path):
    assert run(tmp_path, "curves", "--set", "theta_count=500", "--set", "theta_max=50") == 0
    rows = list(csv.DictReader((tmp_path / "curves.csv").open()))
    as_col = [float(r["as"]) for r in rows]
    assert all(a <= b for a, b in zip(as_col, as_col[1:]))
    assert all(float(r["zlb_ad"]) >= float(r["ad"]) for r in rows)


def test_table1(tmp_path):
    assert run(tmp_path, "table1") == 0
    rows = list(csv.DictReader((tmp_path / "statics.csv").open()))
    assert len(rows) == 6
    got = [(r["tightness"], r["output"], r["employment"], r["unemployment_actual"], r["unemployment_efficient"]) for r in rows]
    assert got == [
        ("-", "-", "-", "+", "0"),
        ("-", "-", "-", "+", "0"),
        ("+", "-", "+", "-", "0"),
        ("+", "-", "-", "-", "0"),
        ("+", "+", "+", "-", "0"),
        ("+", "+", "+", "-", "0"),
    ]


def test_shock_zero_and_unknown(tmp_path):
    assert run(tmp_path, "shock", "--target", "a", "--magnitude", "0") == 0
    (row,) = list(csv.DictReader((tmp_path / "statics.csv").open()))
    assert all(float(row[k]) == 0.0 for k in ("d_theta", "d_y", "d_n", "d_u", "d_u_star"))
    assert run(tmp_path, "shock", "--target", "weather") == 2


def test_policy_sufficient_statistic(tmp_path):
    assert run(tmp_path, "policy", "--gap", "0.05", "--multiplier", "0.5") == 0
    rx = json.loads((tmp_path / "policy.json").read_text())
    assert rx["required_change"] == -0.1
    assert rx["instrument"] == "nominal_rate"


def test_policy_exact_zlb(tmp_path):
    # depressed demand: unemployment above u* even at the zero lower bound
    assert run(tmp_path, "policy", "--exact", "--set", "i=0", "--target-u", "0.15") == 0
    rx = json.loads((tmp_path / "policy.json").read_text())
    assert rx["zlb_binding"] is True
    assert rx["gap_after_predicted"] > 0


def test_policy_wealth_tax(tmp_path):
    assert run(tmp_path, "policy", "--instrument", "wealth_tax", "--gap", "0.01", "--multiplier", "0.5") == 0
    rx = json.loads((tmp_path / "policy.json").read_text())
    assert rx["required_change"] == 0.02


def test_dynamics_flat_at_beveridge(tmp_path):
    assert run(tmp_path, "dynamics", "--set", "horizon=12") == 0
    vals = [float(r["value"]) for r in csv.DictReader((tmp_path / "u_path.csv").open())]
    assert max(vals) - min(vals) == 0.0
    side = json.loads((tmp_path / "u_path.json").read_text())
    assert side["state_label"] == "u"


def test_dynamics_gamma_and_wealth(tmp_path):
    assert run(tmp_path, "dynamics", "--state", "gamma", "--gamma-scale", "0.99", "--set", "horizon=30000", "--set", "dt=1") == 0
    side = json.loads((tmp_path / "gamma_path.json").read_text())
    assert side["flags"]["divergence"] == -1
    assert run(tmp_path, "dynamics", "--state", "w", "--w0", "3") == 0
    for name in ("w_path.csv", "b_path.csv", "p_path.csv"):
        assert (tmp_path / name).exists()


def test_dynamics_step_too_large(tmp_path):
    assert run(tmp_path, "dynamics", "--u0", "0.1", "--set", "dt=10") == 2


def test_sweep_skips_invalid_points(tmp_path):
    assert run(tmp_path, "sweep", "--param", "delta", "--start", "0.001", "--stop", "0.006", "--num", "6") == 0
    rows = list(csv.DictReader((tmp_path / "sweep.csv").open()))
    assert [r["valid"] for r in rows] == ["0", "0", "1", "1", "1", "1"]


def test_outputs_are_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert main(["solve", "--out", str(d)]) == 0
        assert main(["table1", "--out", str(d)]) == 0
        assert main(["curves", "--out", str(d)]) == 0
    for name in ("equilibrium.json", "efficiency.json", "statics.csv", "curves.csv", "curves.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_csv_format_for_solve(tmp_path):
    assert run(tmp_path, "solve", "--format", "csv") == 0
    (row,) = list(csv.DictReader((tmp_path / "equilibrium.csv").open()))
    assert float(row["u"]) == pytest.approx(0.06, abs=1e-9)


def test_bad_argument_exit_code(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--format", "xml"])
    assert exc.value.code == 2
