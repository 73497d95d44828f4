"""Command-line front end.

Every subcommand writes one primary file (``--output``, or stdout) in the
chosen ``--format``. ``wiener`` and ``sharpness`` also write a companion file
in the other format next to it, with the same stem. JSON output carries a
``schema`` key and is validated against the shipped schema before writing.

Exit codes: 0 success, 1 failed selftest, 2 validation, 3 convergence, 4 I/O.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

from ._numerics import DEFAULT_TOL
from .capacity import CapacityProfile, Condenser, profile_ball, profile_power_decay, radial_capacity, radial_capacity_oracle
from .errors import ConvergenceError, DomainError
from .exponents import alpha_bar_bounds, duality_record, solve_p1, DEGENERATE_Q
from .onedim import verify_power_table
from .sharpness import iterated_sharpness_check, sharpness_run
from .wiener import classify_regularity, potential_lower_bound

EXIT_OK, EXIT_SELFTEST, EXIT_VALIDATION, EXIT_CONVERGENCE, EXIT_IO = 0, 1, 2, 3, 4
SCHEMA_VERSION = 1


def rational(text: str) -> float:
    """Parse ``"4/3"``, ``"0.5"`` or ``"1e-3"`` exactly, then round once to float."""
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number or num/den fraction: {text!r}") from None


def rational_list(text: str) -> list[float]:
    return [rational(part) for part in text.split(",") if part.strip()]


def _jsonable(value):
    """Replace non-finite floats by None; json is then written with ``allow_nan=False``."""
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def load_schema(kind: str) -> dict:
    text = resources.files("qminwiener").joinpath("schemas", f"{kind}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def render_json(kind: str, payload: dict) -> str:
    doc = _jsonable({"schema": f"qminwiener/{kind}/{SCHEMA_VERSION}", **payload})
    jsonschema.validate(doc, load_schema(kind))
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def render_csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _write(path: Path | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8", newline="\n")


def emit(args, texts: dict[str, str]) -> None:
    """Write the text for ``args.format`` as primary and any other format as companion."""
    primary = texts[args.format]
    out = Path(args.output) if args.output else None
    _write(out, primary)
    if out is None:
        return
    for fmt, text in texts.items():
        if fmt != args.format:
            _write(out.with_suffix(f".{fmt}"), text)


def run_exponents(args) -> int:
    Q, p = args.Q, args.p
    rec = duality_record(Q, p, args.tolerance)
    p1 = math.inf if Q - 1 < DEGENERATE_Q else solve_p1(p, Q ** (1 / p), args.tolerance)
    payload = {
        "p": p,
        "Q": Q,
        "alpha_lower": rec.alpha_lower,
        "alpha_bar": rec.alpha_bar,
        "beta_lower": rec.beta_lower,
        "beta_bar": rec.beta_bar,
        "p1": p1,
        "wiener_exponent": rec.alpha_bar / (p - 1) + args.eps,
        "bounds": list(alpha_bar_bounds(Q, p)),
    }
    texts = {"json": render_json("exponents", payload)}
    flat = {k: v for k, v in payload.items() if k != "bounds"}
    flat["bound_lo"], flat["bound_hi"] = payload["bounds"]
    texts["csv"] = render_csv(list(flat), [list(flat.values())])
    _write(Path(args.output) if args.output else None, texts[args.format])
    return EXIT_OK


def _profile(args) -> tuple[str, CapacityProfile]:
    if args.profile_csv is not None:
        return "file", CapacityProfile.from_csv(args.profile_csv)
    if args.profile == "ball":
        return "ball", profile_ball(args.n, args.p, args.lam, count=args.K + 1)
    if args.profile == "power":
        return "power", profile_power_decay(args.a, args.scale, args.K + 1, lam=args.lam)
    raise DomainError("profile must be 'ball', 'power', or given with --profile-csv")


def run_wiener(args) -> int:
    source, profile = _profile(args)
    report = classify_regularity(profile, args.Q, args.p, args.eps, args.tolerance)
    body = report.to_dict()
    payload = {
        "profile": {"source": source, "r0": profile.r0, "ratio": profile.ratio, "count": len(profile)},
        "Q": args.Q,
        "p": args.p,
        "eps": args.eps,
        **body,
    }
    if args.delta is not None:
        bound = potential_lower_bound(profile, args.delta, args.c)
        payload["potential"] = {"delta": bound.delta, "c": bound.c, "final": bound.final, "levels": bound.levels.tolist()}
    sums = report.partial_sums.tolist()
    texts = {
        "json": render_json("wiener", payload),
        "csv": render_csv(["K", "S_K"], enumerate(sums)),
    }
    emit(args, texts)
    return EXIT_OK


def run_capacity(args) -> int:
    c = Condenser(args.n, args.p, args.rho, args.r)
    exact = radial_capacity(c)
    oracle = radial_capacity_oracle(c, args.grid)
    payload = {
        "n": args.n,
        "p": args.p,
        "rho": args.rho,
        "r": args.r,
        "capacity": exact,
        "oracle": oracle,
        "grid_points": args.grid,
        "rel_err": abs(oracle - exact) / exact,
    }
    texts = {"json": render_json("capacity", payload), "csv": render_csv(list(payload), [list(payload.values())])}
    _write(Path(args.output) if args.output else None, texts[args.format])
    return EXIT_OK


def run_verify_power(args) -> int:
    rows = verify_power_table(args.alpha, args.p, args.grid)
    header = ["alpha", "p", "Q_formula", "Q_bruteforce", "abs_err"]
    texts = {"csv": render_csv(header, ([r[h] for h in header] for r in rows)), "json": render_json("verify-power", {"rows": rows})}
    _write(Path(args.output) if args.output else None, texts[args.format])
    return EXIT_OK


def run_sharpness(args) -> int:
    run = sharpness_run(args.Q, args.p, args.n)
    summary = run.summary()
    if args.delta is not None:
        summary["iterated"] = iterated_sharpness_check(run, args.delta, args.c, args.k).to_dict()
    rows = run.rows()
    header = ["eps", "rho_eps", "inf_u", "cap_term"]
    texts = {
        "csv": render_csv(header, ([r[h] for h in header] for r in rows)),
        "json": render_json("sharpness", summary),
    }
    emit(args, texts)
    return EXIT_OK


def run_selftest(args) -> int:
    from .acceptance import run_all

    results = run_all(echo=print)
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} criteria passed")
    return EXIT_OK if failed == 0 else EXIT_SELFTEST


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="primary output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), help="format of the primary output")
    common.add_argument("--tolerance", type=rational, default=DEFAULT_TOL, help="root-solver tolerance (default 1e-12)")
    common.add_argument("--seed", type=int, default=0, help="reserved for randomized sweeps")

    parser = argparse.ArgumentParser(prog="qminwiener", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("exponents", parents=[common], help="alpha_lower, alpha_bar, duals and p1 for (Q, p)")
    sp.add_argument("--Q", type=rational, required=True)
    sp.add_argument("--p", type=rational, required=True)
    sp.add_argument("--eps", type=rational, default=0.0)
    sp.set_defaults(func=run_exponents, default_format="json")

    sp = sub.add_parser("wiener", parents=[common], help="classify a Wiener-type sum over a capacity profile")
    sp.add_argument("--profile", choices=("ball", "power"), default="ball")
    sp.add_argument("--profile-csv", help="read the profile from a j,r_j,kappa_j CSV instead")
    sp.add_argument("--Q", type=rational, required=True)
    sp.add_argument("--p", type=rational, required=True)
    sp.add_argument("--eps", type=rational, default=0.0)
    sp.add_argument("--K", type=int, default=999, help="last index of the sum (K+1 terms)")
    sp.add_argument("--n", type=int, default=3, help="dimension for the ball profile")
    sp.add_argument("--lam", type=rational, default=0.5, help="radius ratio")
    sp.add_argument("--a", type=rational, default=1.0, help="power-decay rate")
    sp.add_argument("--scale", type=rational, default=1.0, help="power-decay scale")
    sp.add_argument("--delta", type=rational, help="also emit potential lower-bound levels")
    sp.add_argument("--c", type=rational, default=1.0)
    sp.set_defaults(func=run_wiener, default_format="json")

    sp = sub.add_parser("capacity", parents=[common], help="radial condenser capacity against the discrete oracle")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=rational, required=True)
    sp.add_argument("--rho", type=rational, required=True)
    sp.add_argument("--r", type=rational, default=1.0)
    sp.add_argument("--grid", type=int, default=10_000)
    sp.set_defaults(func=run_capacity, default_format="json")

    sp = sub.add_parser("verify-power", parents=[common], help="brute-force best constants of x**alpha")
    sp.add_argument("--alpha", type=rational_list, required=True, help="comma-separated list, fractions allowed")
    sp.add_argument("--p", type=rational, required=True)
    sp.add_argument("--grid", type=int, default=400)
    sp.set_defaults(func=run_verify_power, default_format="csv")

    sp = sub.add_parser("sharpness", parents=[common], help="eps sweep of the truncated negative power")
    sp.add_argument("--Q", type=rational, required=True)
    sp.add_argument("--p", type=rational, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--delta", type=rational, help="also run the iterated-estimate check")
    sp.add_argument("--c", type=rational, default=1.0)
    sp.add_argument("--k", type=int, default=1)
    sp.set_defaults(func=run_sharpness, default_format="csv")

    sp = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    sp.set_defaults(func=run_selftest, default_format="json")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    try:
        return args.func(args)
    except (DomainError, ValueError) as exc:
        print(f"qminwiener: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ConvergenceError as exc:
        print(f"qminwiener: convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except OSError as exc:
        print(f"qminwiener: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
