"""Command-line front end.

Subcommands:

    eval         print the full h(c) component breakdown for a scheme
    verify-table check every built-in reference scheme at its threshold
    optimize     improve a scheme and re-certify its threshold c*
    oracle       compare the finite arithmetic sums against the limit value
    check        run the quick self-check property suite
    scan         emit (c, h(c)) as CSV for plotting

Schemes come from a config file (flat key = value lines, polynomial
coefficients as ascending-degree arrays) or from a named preset:

    r  = 1.18
    c  = 0.515398
    f1 = [1.95, 1.47, -1.07, -0.29]
    f1t = [-0.7, -1.92]
    P  = [0, 0, 1]

Exit codes: 0 success, 1 validation failure, 2 degenerate-scheme or other
math failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .fracpoly import DomainError, FracPoly, beta_convolve, make
from .hfunc import CoeffScheme, DegenerateSchemeError, HBreakdown, h_value
from .optimizer import OptimizeConfig, optimize_scheme, verify_table
from .presets import get_preset, preset_names
from .quadcheck import dimreduct_check, h_value_numeric
from .sieve import finite_h, mertens_deficit
from . import presets as _presets

__all__ = ["main", "main_entry"]

_SCHEME_KEYS = {"r", "f1", "f1t", "P"}
_SCALAR_KEYS = {
    "r",
    "c",
    "T",
    "c_lo",
    "c_hi",
    "c_step",
    "bisection_tol",
    "simplex_scale",
    "max_iters",
    "seed",
}
_LIST_KEYS = {"f1", "f1t", "P"}
_KNOWN_KEYS = _SCALAR_KEYS | _LIST_KEYS


class CliError(Exception):
    """Validation failure surfaced to the user (exit code 1)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); route through CliError
        raise CliError(message)


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def parse_config_text(text: str) -> dict:
    """Parse the flat key = value config format; rejects unknown keys."""
    config: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"config line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _KNOWN_KEYS:
            raise CliError(f"config line {lineno}: unknown key {key!r}")
        if key in config:
            raise CliError(f"config line {lineno}: duplicate key {key!r}")
        try:
            parsed = json.loads(value.strip())
        except json.JSONDecodeError as exc:
            raise CliError(f"config line {lineno}: bad value for {key!r}: {exc}") from exc
        if key in _LIST_KEYS:
            if not isinstance(parsed, list) or not all(
                isinstance(v, (int, float)) for v in parsed
            ):
                raise CliError(f"config line {lineno}: {key!r} must be a numeric array")
        elif not isinstance(parsed, (int, float)):
            raise CliError(f"config line {lineno}: {key!r} must be a number")
        config[key] = parsed
    return config


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_config_text(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read config {path!r}: {exc}") from exc


def _scheme_from_config(config: dict) -> CoeffScheme:
    if "r" not in config:
        raise CliError("config must set r")
    if "f1" not in config:
        raise CliError("config must set f1")
    try:
        return CoeffScheme(
            r=float(config["r"]),
            f1=FracPoly.from_coeffs(config["f1"]),
            f1t=FracPoly.from_coeffs(config.get("f1t", [])),
            P=FracPoly.from_coeffs(config.get("P", [])),
        )
    except (ValueError, DomainError) as exc:
        raise CliError(f"invalid scheme: {exc}") from exc


def _resolve_scheme(args) -> tuple[CoeffScheme, dict]:
    """Scheme plus raw config dict from --config or --preset."""
    if getattr(args, "preset", None):
        try:
            preset = get_preset(args.preset)
        except KeyError as exc:
            raise CliError(str(exc)) from exc
        return preset.scheme, {"c": preset.c}
    if getattr(args, "config", None):
        config = _load_config(args.config)
        return _scheme_from_config(config), config
    raise CliError("one of --config or --preset is required")


def _write_scheme_config(path: str, scheme: CoeffScheme, c: float) -> None:
    """Emit a config file that round-trips the scheme bit-exactly."""

    def row(p: FracPoly) -> str:
        deg = int(round(p.degree)) if not p.is_zero else 0
        dense = [0.0] * (deg + 1)
        for coeff, expo in p.terms:
            dense[int(round(expo))] = coeff
        return "[" + ", ".join(repr(v) for v in dense) + "]"

    lines = [
        f"r = {scheme.r!r}",
        f"c = {c!r}",
        f"f1 = {row(scheme.f1)}",
        f"f1t = {row(scheme.f1t)}",
        f"P = {row(scheme.P)}",
    ]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _print_breakdown(hb: HBreakdown, out) -> None:
    items = hb.as_dict()
    for key, value in items.items():
        print(f"{key}={_fmt(value)}", file=out)
    body = ", ".join(f'"{k}": {_fmt(v)}' for k, v in items.items())
    print("{" + body + "}", file=out)


def _require_c(args, config) -> float:
    c = args.c if args.c is not None else config.get("c")
    if c is None:
        raise CliError("no c given; set it in the config or pass --c")
    c = float(c)
    if not (0.0 < c < 1.0):
        raise CliError("c must lie strictly between 0 and 1")
    return c


def _cmd_eval(args, out) -> int:
    scheme, config = _resolve_scheme(args)
    hb = h_value(scheme, _require_c(args, config))
    _print_breakdown(hb, out)
    return 0


def _cmd_verify_table(args, out) -> int:
    report = verify_table()
    if args.json:
        rows = [
            {
                "name": row.name,
                "c": row.c,
                "r": row.r,
                "margin_direct": row.margin_direct,
                "recovered": row.recovered,
                "margin_final": row.margin_final,
                "passed": row.passed,
            }
            for row in report.rows
        ]
        print(json.dumps(rows, indent=2), file=out)
    else:
        for row in report.rows:
            path = "recovered" if row.recovered else "direct"
            verdict = "PASS" if row.passed else "FAIL"
            print(
                f"{row.name}: c={_fmt(row.c)} r={_fmt(row.r)} "
                f"margin={_fmt(row.margin_final)} ({path}) {verdict}",
                file=out,
            )
        print(
            "all rows pass" if report.all_passed else "some rows FAIL",
            file=out,
        )
    return 0 if report.all_passed else 2


def _cmd_optimize(args, out) -> int:
    scheme, config = _resolve_scheme(args)
    degrees = (
        int(scheme.f1.degree),
        int(scheme.f1t.degree),
        max(int(scheme.P.degree), 1),
    )
    cfg_kwargs = {"degrees": degrees}
    if {"c_lo", "c_hi", "c_step"} <= config.keys():
        cfg_kwargs["c_grid"] = (config["c_lo"], config["c_hi"], config["c_step"])
    for key, name in [
        ("bisection_tol", "bisection_tol"),
        ("max_iters", "max_iters"),
        ("simplex_scale", "simplex_scale"),
        ("seed", "seed"),
    ]:
        if key in config:
            cfg_kwargs[name] = type(getattr(OptimizeConfig(), name))(config[key])
    try:
        cfg = OptimizeConfig(**cfg_kwargs)
    except ValueError as exc:
        raise CliError(f"invalid optimizer settings: {exc}") from exc

    report = optimize_scheme(cfg, scheme)
    print(f"c_star={_fmt(report.c_star)}", file=out)
    print(f"margin={_fmt(report.margin)}", file=out)
    print(f"iterations={len(report.trace)}", file=out)

    with open(args.trace_out, "w", encoding="utf-8") as fh:
        fh.write("iteration,objective\n")
        for iteration, objective in report.trace:
            fh.write(f"{iteration},{_fmt(objective)}\n")
    print(f"trace written to {args.trace_out}", file=out)

    _write_scheme_config(args.scheme_out, report.best_scheme, report.c_star)
    print(f"best scheme written to {args.scheme_out}", file=out)
    return 0


def _cmd_oracle(args, out) -> int:
    scheme, config = _resolve_scheme(args)
    c = _require_c(args, config)
    t_param = args.T if args.T is not None else config.get("T")
    if t_param is None:
        raise CliError("no T given; set it in the config or pass --T")
    try:
        h_fin, num, den = finite_h(scheme, c, float(t_param))
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    h_lim = h_value(scheme, c).h
    print(f"h_finite={_fmt(h_fin)}", file=out)
    print(f"num={_fmt(num)}", file=out)
    print(f"den={_fmt(den)}", file=out)
    print(f"h_limit={_fmt(h_lim)}", file=out)
    rel = abs(h_fin - h_lim) / abs(h_lim) if h_lim != 0 else math.inf
    print(f"rel_deviation={_fmt(rel)}", file=out)
    return 0


def _cmd_scan(args, out) -> int:
    scheme, _ = _resolve_scheme(args)
    if not (0.0 < args.clo < args.chi < 1.0) or args.step <= 0:
        raise CliError("need 0 < --clo < --chi < 1 and --step > 0")
    print("c,h", file=out)
    n_steps = int((args.chi - args.clo) / args.step + 1e-9)
    for i in range(n_steps + 1):
        c = min(args.clo + i * args.step, args.chi)
        print(f"{_fmt(c)},{_fmt(h_value(scheme, c).h)}", file=out)
    return 0


def _cmd_check(args, out) -> int:
    """Quick self-check suite: Beta identities, the nested-integral reduction,
    the prime-log-sum bound, and quadrature-vs-exact agreement."""
    from scipy.integrate import quad

    failures = 0

    def report(name: str, ok: bool, detail: str) -> None:
        nonlocal failures
        if not ok:
            failures += 1
        print(f"{'PASS' if ok else 'FAIL'} {name} ({detail})", file=out)

    # Beta-kernel convolutions against adaptive quadrature
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(5):
        a = float(rng.uniform(0.6, 2.8))
        poly = make([(float(rng.uniform(-2, 2)), k) for k in range(5)])
        conv = beta_convolve(a, poly)
        for u in (0.3, 1.0):
            ref, _ = quad(
                lambda v: poly.eval(v), 0.0, u,
                weight="alg", wvar=(0.0, a - 1.0),
                epsabs=1e-13, epsrel=1e-12,
            )
            worst = max(worst, abs(conv.eval(u) - ref) / max(abs(ref), 1e-30))
    report("beta-convolution vs quadrature", worst < 1e-10, f"max rel err {worst:.2e}")

    # nested-integral reduction identity
    worst = 0.0
    for _ in range(5):
        m = int(rng.integers(1, 4))
        a_vec = [int(rng.integers(1, 4)) for _ in range(m)]
        poly = make([(float(rng.uniform(-1, 1)), k) for k in range(4)])
        lhs, rhs = dimreduct_check(m, a_vec, poly, float(rng.uniform(1.5, math.e**3)))
        worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-30))
    report("nested-integral reduction", worst < 1e-9, f"max rel err {worst:.2e}")

    # prime log-sum deficit stays bounded
    deficits = [mertens_deficit(y) for y in (10**4, 10**5)]
    ok = all(-3.0 < d < 0.0 for d in deficits)
    report("prime log-sum deficit bounded", ok, f"values {[f'{d:.3f}' for d in deficits]}")

    # quadrature oracle agrees with the exact pipeline
    preset = _presets.PRESETS[0]
    exact = h_value(preset.scheme, preset.c)
    numeric = h_value_numeric(preset.scheme, preset.c, order=32)
    fields = ["d1", "d2", "d31", "d32", "n1", "n2", "n31", "n32", "n41", "n42", "n43"]
    worst = max(
        abs(getattr(exact, f) - getattr(numeric, f)) / abs(getattr(numeric, f))
        for f in fields
    )
    report("quadrature vs exact components", worst < 1e-7, f"max rel err {worst:.2e}")

    return 0 if failures == 0 else 2


def _build_parser() -> _Parser:
    parser = _Parser(prog="zetagaps", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_scheme_opts(p):
        p.add_argument("--config", help="path to a scheme config file")
        p.add_argument(
            "--preset", help=f"built-in scheme: {', '.join(preset_names())}"
        )

    p_eval = sub.add_parser("eval", help="print the h(c) component breakdown")
    add_scheme_opts(p_eval)
    p_eval.add_argument("--c", type=float, help="override c from the config")

    p_table = sub.add_parser("verify-table", help="check the built-in reference schemes")
    p_table.add_argument("--json", action="store_true", help="emit JSON")

    p_opt = sub.add_parser("optimize", help="improve a scheme and re-certify c*")
    add_scheme_opts(p_opt)
    p_opt.add_argument("--trace-out", default="trace.csv", help="iteration trace CSV")
    p_opt.add_argument(
        "--scheme-out", default="best_scheme.cfg", help="best scheme config output"
    )

    p_oracle = sub.add_parser("oracle", help="finite arithmetic sums vs the limit")
    add_scheme_opts(p_oracle)
    p_oracle.add_argument("--c", type=float, help="override c from the config")
    p_oracle.add_argument("--T", type=float, help="sets mollifier length T/log(T)^2")

    sub.add_parser("check", help="run the quick self-check property suite")

    p_scan = sub.add_parser("scan", help="CSV of (c, h(c)) over a grid")
    add_scheme_opts(p_scan)
    p_scan.add_argument("--clo", type=float, required=True)
    p_scan.add_argument("--chi", type=float, required=True)
    p_scan.add_argument("--step", type=float, required=True)

    return parser


_COMMANDS = {
    "eval": _cmd_eval,
    "verify-table": _cmd_verify_table,
    "optimize": _cmd_optimize,
    "oracle": _cmd_oracle,
    "check": _cmd_check,
    "scan": _cmd_scan,
}


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args, out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DegenerateSchemeError, DomainError, ArithmeticError) as exc:
        print(f"math error: {exc}", file=sys.stderr)
        return 2


def main_entry() -> None:
    sys.exit(main())
