"""Command-line front end.

Exit codes: 0 success, 1 file I/O error, 2 configuration error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import dynamics, policy, statics
from .config import Config, parse_assignments
from .curves import sample_curves
from .curves import curves_to_csv
from .efficiency import efficiency_report
from .equilibrium import decompose_unemployment, parameter_names, solve
from .errors import ConfigurationError, DomainError, NumericalError
from .matching import theta_tau

log = logging.getLogger("adasmatch")

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _clean(obj):
    """Replace non-finite floats by None so the JSON stays standard."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _dump_json(obj) -> str:
    return json.dumps(_clean(obj), indent=2, allow_nan=False) + "\n"


def _records_to_csv(records: list[dict]) -> str:
    buf = io.StringIO()
    if records:
        writer = csv.writer(buf, lineterminator="\n")
        header = list(records[0])
        writer.writerow(header)
        for rec in records:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in (rec[k] for k in header)])
    return buf.getvalue()


def _write(out_dir: Path, name: str, text: str) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    log.info("wrote %s", path)
    return path


def _emit(args, cfg: Config, stem: str, payload, default_format: str):
    fmt = args.format or default_format
    out = Path(cfg["out"])
    if fmt == "json":
        return _write(out, f"{stem}.json", _dump_json(payload))
    records = payload if isinstance(payload, list) else [payload]
    return _write(out, f"{stem}.csv", _records_to_csv(records))


def _config(args) -> Config:
    overrides = parse_assignments(args.set or [])
    if getattr(args, "target_u", None) is not None:
        overrides["target_u"] = args.target_u
    if args.out is not None:
        overrides["out"] = args.out
    return Config.load(args.config, overrides)


def cmd_solve(args) -> int:
    cfg = _config(args)
    params = cfg.model_params()
    eq = solve(params)
    rep = efficiency_report(params, eq)
    split = decompose_unemployment(params, eq)
    eq_payload = {**eq.to_dict(), "u_k": split.u_k, "u_f": split.u_f}
    _emit(args, cfg, "equilibrium", eq_payload, "json")
    _emit(args, cfg, "efficiency", rep.to_dict(), "json")
    print(
        f"theta={eq.theta!r} u={eq.u!r} y={eq.y!r} u*={rep.u_star!r} "
        f"gap={100 * rep.gap:.4f} pp residual={eq.residual:.3g}"
    )
    return EXIT_OK


def cmd_curves(args) -> int:
    cfg = _config(args)
    params = cfg.model_params()
    m = params.matching
    count = cfg["theta_count"]
    if count < 0:
        raise ConfigurationError("theta_count must be non-negative")
    grid = np.linspace(cfg["theta_min"], cfg["theta_max"], count) if count else []
    rows = sample_curves(grid, m, params.endow, params.prefs, params.policy)
    eq = solve(params)
    rep = efficiency_report(params, eq)
    sidecar = {
        "columns": ["theta", "as", "ad", "zlb_ad"],
        "markers": {
            "theta_eq": eq.theta,
            "y_eq": eq.y,
            "theta_star": rep.theta_star,
            "theta_tau": theta_tau(m),
        },
        "invalid_rows": [k for k, r in enumerate(rows) if not r.valid],
        "parameters": params.flat(),
    }
    out = Path(cfg["out"])
    if (args.format or "csv") == "json":
        sidecar["rows"] = [[r.theta, r.as_, r.ad, r.zlb_ad] for r in rows]
    else:
        _write(out, "curves.csv", curves_to_csv(rows))
    _write(out, "curves.json", _dump_json(sidecar))
    return EXIT_OK


def _write_statics(args, cfg: Config, rows) -> None:
    out = Path(cfg["out"])
    if (args.format or "csv") == "json":
        payload = [
            {"shock": r.shock.label, "magnitude": r.shock.size, "signs": r.symbols(), "deltas": r.deltas}
            for r in rows
        ]
        _write(out, "statics.json", _dump_json(payload))
    else:
        _write(out, "statics.csv", statics.statics_to_csv(rows))
    for r in rows:
        sym = r.symbols()
        print(f"{r.shock.label:<20} " + " ".join(f"{k}:{sym[k]}" for k in statics.VARIABLES))


def cmd_shock(args) -> int:
    cfg = _config(args)
    shock = statics.Shock(args.target, args.direction, args.magnitude)
    _, _, row = statics.apply_shock(cfg.model_params(), shock)
    _write_statics(args, cfg, [row])
    return EXIT_OK


def cmd_table1(args) -> int:
    cfg = _config(args)
    rows = statics.table1(cfg.model_params())
    _write_statics(args, cfg, rows)
    print("matches table:", "yes" if statics.matches_table1(rows) else "no")
    return EXIT_OK


def cmd_policy(args) -> int:
    cfg = _config(args)
    params = cfg.model_params()
    tax = args.instrument == policy.WEALTH_TAX
    if args.exact:
        rx = policy.optimal_wealth_tax_exact(params) if tax else policy.optimal_rate_exact(params)
    else:
        gap = args.gap if args.gap is not None else efficiency_report(params).gap
        if args.multiplier is not None:
            mult = args.multiplier
        else:
            mult = (policy.tax_multiplier(params) if tax else policy.monetary_multiplier(params)).value
        if tax:
            rx = policy.optimal_wealth_tax(gap, mult, params.policy.tau_w)
        else:
            rx = policy.optimal_rate_sufficient_statistic(gap, mult, params.policy.i)
    _emit(args, cfg, "policy", rx.to_dict(), "json")
    print(rx.summary())
    return EXIT_OK


def cmd_dynamics(args) -> int:
    cfg = _config(args)
    params = cfg.model_params()
    horizon, dt = cfg["horizon"], cfg["dt"]
    out = Path(cfg["out"])
    eq = solve(params)
    if args.state == "u":
        u0 = eq.u if args.u0 is None else args.u0
        paths = {"u": dynamics.integrate_unemployment(u0, eq.theta, params.matching, horizon, dt)}
    elif args.state == "gamma":
        g0 = eq.gamma0 * args.gamma_scale if args.gamma_init is None else args.gamma_init
        line = dynamics.costate_phase_line(g0, params.prefs, params.policy, horizon, dt)
        line.path.flags.update(stability=line.stability, start=line.start)
        paths = {"gamma": line.path}
    else:
        if args.fiscal == dynamics.EXPLICIT_PATH:
            rule = dynamics.FiscalRule(dynamics.EXPLICIT_PATH, args.real_tax)
        else:
            rule = dynamics.FiscalRule(dynamics.BALANCE_DEBT)
        w, b, p = dynamics.wealth_path(args.w0, eq, rule, params.policy, horizon, dt)
        paths = {"w": w, "b": b, "p": p}
    for label, path in paths.items():
        _write(out, f"{label}_path.csv", path.to_csv())
        _write(out, f"{label}_path.json", _dump_json(path.sidecar(params.flat())))
    main_path = next(iter(paths.values()))
    start, end, span = (float(x) for x in (main_path.values[0], main_path.values[-1], main_path.times[-1]))
    print(f"{main_path.state_label}: {start!r} -> {end!r} over {span!r} months")
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _config(args)
    if args.param not in parameter_names():
        raise ConfigurationError(f"unknown sweep parameter {args.param!r}")
    if args.num < 1:
        raise ConfigurationError("sweep needs --num >= 1")
    base = cfg.model_params()
    records = []
    for value in np.linspace(args.start, args.stop, args.num).tolist():
        rec = {args.param: value, "theta": math.nan, "y": math.nan, "u": math.nan, "u_star": math.nan, "gap": math.nan, "valid": 0}
        try:
            params = base.updated(**{args.param: value})
            eq = solve(params)
            rep = efficiency_report(params, eq)
        except (ConfigurationError, DomainError, NumericalError) as exc:
            log.info("skipping %s=%r: %s", args.param, value, exc)
        else:
            rec.update(theta=eq.theta, y=eq.y, u=eq.u, u_star=rep.u_star, gap=rep.gap, valid=1)
        records.append(rec)
    _emit(args, cfg, "sweep", records, "csv")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key=value config file")
    common.add_argument("--out", metavar="DIR", help="output directory (default: config 'out' or .)")
    common.add_argument("--format", choices=("json", "csv"), help="output format")
    common.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a config key")
    common.add_argument("--target-u", type=float, help="calibrate x'(0) so unemployment equals this rate")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="adasmatch", description="Matching AD-AS business-cycle model")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", parents=[common], help="solve the equilibrium and efficiency benchmark")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("curves", parents=[common], help="sample AS, AD and ZLB-AD on a tightness grid")
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("shock", parents=[common], help="comparative statics of one shock")
    p.add_argument("--target", required=True)
    p.add_argument("--direction", default="decrease")
    p.add_argument("--magnitude", type=float)
    p.set_defaults(func=cmd_shock)

    p = sub.add_parser("table1", parents=[common], help="sign table of demand, supply and policy shocks")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("policy", parents=[common], help="optimal nominal rate or wealth tax")
    p.add_argument("--instrument", choices=(policy.NOMINAL_RATE, policy.WEALTH_TAX), default=policy.NOMINAL_RATE)
    p.add_argument("--gap", type=float, help="unemployment gap as a fraction (default: model gap)")
    p.add_argument("--multiplier", type=float, help="multiplier in pp per pp (default: model multiplier)")
    p.add_argument("--exact", action="store_true", help="solve the model for the optimum instead")
    p.set_defaults(func=cmd_policy)

    p = sub.add_parser("dynamics", parents=[common], help="integrate a state variable over time")
    p.add_argument("--state", choices=("u", "gamma", "w"), default="u")
    p.add_argument("--u0", type=float, help="initial unemployment (default: equilibrium)")
    p.add_argument("--gamma-init", type=float, help="initial costate")
    p.add_argument("--gamma-scale", type=float, default=1.0, help="initial costate as a multiple of gamma0")
    p.add_argument("--w0", type=float, default=1.0, help="initial real bonds")
    p.add_argument("--fiscal", choices=(dynamics.BALANCE_DEBT, dynamics.EXPLICIT_PATH), default=dynamics.BALANCE_DEBT)
    p.add_argument("--real-tax", type=float, default=0.0, help="constant real lump-sum tax for explicit_path")
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("sweep", parents=[common], help="solve over a range of one parameter")
    p.add_argument("--param", required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--num", type=int, default=11)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (ConfigurationError, DomainError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
