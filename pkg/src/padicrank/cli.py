"""Batch command-line front end.

Every command is deterministic: identical inputs and configuration produce
byte-identical output, regardless of --threads.  Exit codes: 0 success,
2 precision/size errors, 3 invalid input.  Output goes to stdout or, with
--out, to a file written atomically.

Global flags may also be set through PADICRANK_* environment variables
(PADICRANK_PRECISION, PADICRANK_GUARD, PADICRANK_THREADS, PADICRANK_FORMAT,
PADICRANK_SEED).
"""
from __future__ import annotations

import argparse
import os
import sys

from . import serialize
from .characters import CharacterClass
from .config import DEFAULT_GUARD, DEFAULT_PRECISION
from .errors import (InvalidInput, NotAUnitSeries, PrecisionExhausted,
                     SizeCapExceeded, TorsionAssumptionViolated,
                     TruncationInsufficient)
from .estimator import cumulative_bound
from .logmatrix import h_valuation_direct, h_valuation_formula, resolve_convention
from .padic import numeric_valuation
from .ranks import DEFAULT_SIZE_CAP, coinv_rank_charsum, coinv_rank_direct, harris_fit
from .series import OneVarSeries, eval_at_character, valuation_profile, weierstrass_prepare

EXIT_OK = 0
EXIT_PRECISION = 2
EXIT_INVALID = 3


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with the invalid-input code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _env_default(name: str, fallback, cast):
    raw = os.environ.get(f"PADICRANK_{name}")
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except ValueError:
        raise InvalidInput(f"bad PADICRANK_{name}={raw!r}")


def build_parser() -> _Parser:
    parser = _Parser(prog="padicrank", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int,
                        default=_env_default("PRECISION", DEFAULT_PRECISION, int),
                        help="working precision N in base-p digits")
    common.add_argument("--guard", type=int,
                        default=_env_default("GUARD", DEFAULT_GUARD, int),
                        help="guard digits; tau = N - guard")
    common.add_argument("--threads", type=int,
                        default=_env_default("THREADS", os.cpu_count() or 1, int))
    common.add_argument("--format", choices=("json", "csv"),
                        default=_env_default("FORMAT", None, str))
    common.add_argument("--out", default=None, help="output file (atomic write)")
    common.add_argument("--seed", type=int,
                        default=_env_default("SEED", 0, int),
                        help="seed reserved for randomized harnesses")

    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("logmatrix", parents=[common],
                       help="first-row valuation table against the closed form")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--ap", type=int, required=True)
    s.add_argument("--nmax", type=int, required=True)

    s = sub.add_parser("rankbound", parents=[common],
                       help="cumulative rank bound from a scenario file")
    s.add_argument("--scenario", required=True)
    s.add_argument("--nmax", type=int, required=True)

    s = sub.add_parser("coinv", parents=[common],
                       help="coinvariant rank of a presented module")
    s.add_argument("--module", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--method", choices=("direct", "charsum", "both"), default="both")
    s.add_argument("--size-cap", type=int, default=DEFAULT_SIZE_CAP)

    s = sub.add_parser("eval", parents=[common],
                       help="evaluate a series at a character class")
    s.add_argument("--series", required=True)
    s.add_argument("--theta", required=True, help='class literal "r,s[,e]"')
    s.add_argument("--var", choices=("Tp", "Tq"), default="Tp",
                   help="root used for one-variable series")

    s = sub.add_parser("weierstrass", parents=[common],
                       help="Weierstrass preparation of a one-variable series")
    s.add_argument("--series", required=True)

    s = sub.add_parser("profile", parents=[common],
                       help="exact valuation-profile fit over a character grid")
    s.add_argument("--series", required=True)
    s.add_argument("--rmax", type=int, required=True)
    s.add_argument("--smax", type=int, required=True)
    s.add_argument("--rmin", type=int, default=1)
    s.add_argument("--smin", type=int, default=1)
    s.add_argument("--gap", type=int, default=1, help="minimal |r-s| for the regions")

    s = sub.add_parser("harris", parents=[common],
                       help="quadratic growth fit for a presented module")
    s.add_argument("--module", required=True)
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--method", choices=("direct", "charsum"), default="charsum")
    return parser


def _check_config(args):
    if args.precision <= args.guard or args.guard < 4:
        raise InvalidInput(
            f"need precision > guard >= 4, got N={args.precision} g={args.guard}")


def _logmatrix(args) -> tuple[str, int]:
    if args.p < 3 or args.p % 2 == 0:
        raise InvalidInput(f"p must be an odd prime, got {args.p}")
    if args.ap == 0 or args.ap % args.p != 0:
        raise InvalidInput(f"p must divide a_p and a_p != 0, got a_p={args.ap}")
    if args.nmax < 1:
        raise InvalidInput("nmax must be >= 1")
    resolution = resolve_convention(args.p, args.ap, args.nmax,
                                    args.precision, args.guard)
    rows = []
    for n in range(1, args.nmax + 1):
        direct = h_valuation_direct(args.p, args.ap, n, resolution.chosen,
                                    args.precision, args.guard)
        formula = h_valuation_formula(args.p, n)
        rows.append((n, direct, formula, direct == formula))
    if args.format == "json":
        obj = {
            "p": args.p,
            "ap": args.ap,
            "convention": resolution.chosen.label(),
            "fully_resolved": resolution.fully_resolved,
            "rows": [
                {
                    "n": n,
                    "sharp": serialize.fraction_str(d[0]),
                    "flat": serialize.fraction_str(d[1]),
                    "formula_sharp": serialize.fraction_str(f[0]),
                    "formula_flat": serialize.fraction_str(f[1]),
                    "match": ok,
                }
                for n, d, f, ok in rows
            ],
        }
        return serialize.dumps_json(obj), EXIT_OK
    lines = ["n,sharp_val_num,sharp_val_den,flat_val_num,flat_val_den,"
             "formula_sharp,formula_flat,match"]
    for n, d, f, ok in rows:
        lines.append(
            f"{n},{d[0].numerator},{d[0].denominator},"
            f"{d[1].numerator},{d[1].denominator},"
            f"{serialize.fraction_str(f[0])},{serialize.fraction_str(f[1])},"
            f"{'true' if ok else 'false'}"
        )
    return "\n".join(lines) + "\n", EXIT_OK


def _rankbound(args) -> tuple[str, int]:
    scenario = serialize.load_scenario(args.scenario)
    report = cumulative_bound(scenario, args.nmax, args.guard, args.threads)
    if args.format == "csv":
        return serialize.rank_report_to_csv(report), EXIT_OK
    return serialize.dumps_json(serialize.rank_report_to_obj(report)), EXIT_OK


def _coinv(args) -> tuple[str, int]:
    module = serialize.load_presentation(args.module)
    result: dict = {"n": args.n, "method": args.method}
    code = EXIT_OK
    if args.method in ("charsum", "both"):
        result["charsum"] = coinv_rank_charsum(module, args.n, args.guard)
    if args.method in ("direct", "both"):
        try:
            result["direct"] = coinv_rank_direct(module, args.n, args.size_cap, args.guard)
        except SizeCapExceeded as exc:
            result["direct_error"] = str(exc)
            code = EXIT_PRECISION
    if "direct" in result and "charsum" in result:
        result["agreement"] = result["direct"] == result["charsum"]
    return serialize.dumps_json(result), code


def _eval(args) -> tuple[str, int]:
    series = serialize.load_series(args.series)
    theta = CharacterClass.from_literal(series.prime, args.theta)
    value = eval_at_character(series, theta, args.var, args.guard)
    v = numeric_valuation(value, args.guard)
    obj = {
        "theta": theta.literal(),
        "level": theta.level,
        "valuation": serialize.fraction_str(v),
        "numerically_zero": v is None,
        "coeffs": [str(c) for c in value.coeffs],
    }
    return serialize.dumps_json(obj), EXIT_OK


def _weierstrass(args) -> tuple[str, int]:
    series = serialize.load_series(args.series)
    if not isinstance(series, OneVarSeries):
        raise InvalidInput("weierstrass needs a one-variable series")
    fact = weierstrass_prepare(series, args.guard)
    obj = {
        "p_power": fact.p_power,
        "lambda": fact.lam,
        "unit": serialize.series_to_obj(fact.unit),
        "distinguished": serialize.series_to_obj(fact.distinguished),
    }
    return serialize.dumps_json(obj), EXIT_OK


def _profile(args) -> tuple[str, int]:
    series = serialize.load_series(args.series)
    if isinstance(series, OneVarSeries):
        raise InvalidInput("profile needs a two-variable series")
    fit = valuation_profile(series, range(args.rmin, args.rmax + 1),
                            range(args.smin, args.smax + 1), args.gap, args.guard)
    obj = {
        "a": fit.a, "b1": fit.b1, "c1": fit.c1, "b2": fit.b2, "c2": fit.c2,
        "n0": fit.n0, "gap": fit.gap, "residual_ok": fit.residual_ok,
    }
    return serialize.dumps_json(obj), EXIT_OK


def _harris(args) -> tuple[str, int]:
    module = serialize.load_presentation(args.module)
    fit = harris_fit(module, args.nmax, args.method, guard=args.guard)
    obj = {
        "r_estimate": serialize.fraction_str(fit.r_estimate),
        "ranks": [[n, rk] for n, rk in fit.ranks],
        "residual_bound": serialize.fraction_str(fit.residual_bound),
    }
    return serialize.dumps_json(obj), EXIT_OK


_DISPATCH = {
    "logmatrix": _logmatrix,
    "rankbound": _rankbound,
    "coinv": _coinv,
    "eval": _eval,
    "weierstrass": _weierstrass,
    "profile": _profile,
    "harris": _harris,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _check_config(args)
        text, code = _DISPATCH[args.command](args)
    except (InvalidInput, TorsionAssumptionViolated, NotAUnitSeries, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (PrecisionExhausted, SizeCapExceeded, TruncationInsufficient) as exc:
        print(f"precision error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    if args.out:
        serialize.write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
