"""``trump`` command line: check, decide, verify, curve.

Exit codes: 0 success (satisfied / trumped / verified), 1 negative answer
(violated / not trumped / refuted), 2 inconclusive, 64 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import _interval as I
from .catalyst import REFUTED, VERIFIED, Catalyst, verify_catalyst
from .means import CLOSURE, GRID, NU_MAX, NU_MIN, STRICT, check_conditions, r_curve, samples_to_csv
from .polynomials import DEFAULT_MAX_DEGREE
from .reduction import NOT_TRUMPED, TRUMPED, decide_trumping
from .sequences import ProbSequence

EX_OK, EX_NO, EX_UNSURE, EX_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _read_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _sequence(text) -> ProbSequence:
    if isinstance(text, list):
        return ProbSequence(text)
    return ProbSequence.parse(text)


def _pair(args):
    x = y = None
    if args.input:
        data = _read_json(args.input)
        x, y = _sequence(data["x"]), _sequence(data["y"])
    if args.x:
        x = _sequence(args.x)
    if args.y:
        y = _sequence(args.y)
    if x is None or y is None:
        raise UsageError("both --x and --y (or --input) are required")
    if len(x) == 0 or len(y) == 0:
        raise UsageError("sequences must be nonempty")
    return x, y


def _catalyst(spec: str):
    """A catalyst from a file path, inline JSON, or a comma separated list."""
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            spec = fh.read()
    text = spec.strip()
    if text.startswith(("{", "[")):
        data = json.loads(text)
        if isinstance(data, dict) and "catalyst" in data:
            data = data["catalyst"]
        return Catalyst.from_json(data)
    return ProbSequence.parse(text)


def _emit(payload: str, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload if payload.endswith("\n") else payload + "\n")
    else:
        sys.stdout.write(payload if payload.endswith("\n") else payload + "\n")


def cmd_check(args) -> int:
    x, y = _pair(args)
    rep = check_conditions(x, y, args.mode, args.nu_min, args.nu_max, args.grid, args.precision_bits)
    _emit(rep.to_csv() if args.csv else rep.to_json(indent=2), args.out)
    return EX_OK if rep.satisfied else EX_NO if rep.violated else EX_UNSURE


def cmd_decide(args) -> int:
    x, y = _pair(args)
    cat = _catalyst(args.catalyst) if args.catalyst else None
    rep = decide_trumping(x, y, catalyst=cat, max_degree=args.max_degree,
                          precision=args.precision_bits, nu_min=args.nu_min,
                          nu_max=args.nu_max, grid=args.grid)
    if args.certificate and rep.certificate and rep.verdict == TRUMPED:
        with open(args.certificate, "w", encoding="utf-8") as fh:
            json.dump(rep.certificate, fh, indent=2)
            fh.write("\n")
    _emit(rep.to_json(indent=2), args.out)
    return EX_OK if rep.verdict == TRUMPED else EX_NO if rep.verdict == NOT_TRUMPED else EX_UNSURE


def cmd_verify(args) -> int:
    if args.certificate:
        data = _read_json(args.certificate)
        x, y = _sequence(data["x"]), _sequence(data["y"])
        cat = Catalyst.from_json(data["catalyst"])
    else:
        x, y = _pair(args)
        if not args.catalyst:
            raise UsageError("--catalyst or --certificate is required")
        cat = _catalyst(args.catalyst)
    res = verify_catalyst(x, y, cat, args.precision_bits)
    _emit(json.dumps(res.to_dict(), indent=2), args.out)
    return EX_OK if res.status == VERIFIED else EX_NO if res.status == REFUTED else EX_UNSURE


def cmd_curve(args) -> int:
    x, y = _pair(args)
    if args.grid < 2:
        raise UsageError("--grid must be at least 2")
    step = (Fraction(repr(args.nu_max)) - Fraction(repr(args.nu_min))) / (args.grid - 1)
    nus = [Fraction(repr(args.nu_min)) + i * step for i in range(args.grid)]
    _emit(samples_to_csv(r_curve(x, y, nus, args.precision_bits)), args.out)
    return EX_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="trump", description="Decide and certify the trumping relation between sequences.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, grid=True):
        p.add_argument("--x", help='sequence literal, e.g. "2/9,3/9,4/9"')
        p.add_argument("--y", help="sequence literal")
        p.add_argument("--input", help='JSON file with {"x": [...], "y": [...]}')
        p.add_argument("--precision-bits", type=int, default=I.DEFAULT_PRECISION)
        p.add_argument("--out", help="write the report here instead of stdout")
        if grid:
            p.add_argument("--nu-min", type=float, default=NU_MIN)
            p.add_argument("--nu-max", type=float, default=NU_MAX)
            p.add_argument("--grid", type=int, default=GRID)

    p = sub.add_parser("check", help="check the power-mean and entropy conditions")
    common(p)
    p.add_argument("--mode", choices=(STRICT, CLOSURE), default=STRICT)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--csv", action="store_true", help="sampled R curve as CSV")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decide", help="decide trumping and construct a catalyst")
    common(p)
    p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    p.add_argument("--catalyst", help="candidate catalyst: file, JSON or sequence literal")
    p.add_argument("--certificate", help="write the catalyst certificate to this file")
    p.add_argument("--json", action="store_true", help="JSON report (default)")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("verify", help="verify a catalyst exactly")
    common(p, grid=False)
    p.add_argument("--catalyst", help="catalyst: file, JSON or sequence literal")
    p.add_argument("--certificate", help="certificate file written by decide")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("curve", help="R_nu enclosures as CSV")
    common(p)
    p.add_argument("--csv", action="store_true", help="CSV output (default)")
    p.set_defaults(func=cmd_curve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        sys.stderr.close()
        return EX_OK
    except (UsageError, ValueError, TypeError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"trump {args.command}: error: {exc}", file=sys.stderr)
        return EX_USAGE


if __name__ == "__main__":
    sys.exit(main())
