"""Command-line front end: ``arithspace <command> ...``.

Numeric flags accept scientific notation (``--N 1e6``). Machine-readable
output is ``--format json`` (default) or ``--format csv``; ``text`` is for
people. Exit status is 0 on success, 1 when a verify suite fails, and 2 on
usage errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import re
import sys

import numpy as np

from . import verify as verify_mod
from ._errors import ArithSpaceError
from .cache import build_cached, load_or_build
from .characters import character, character_group
from .functions import ALIASES, classical_growth_bound, parse_kind
from .norms import NormKind, truncation_curve, u_norm_hybrid, u_norm_log
from .operators import convolution_constant_scan, convolve
from .series import (
    inv_zeta,
    l_function,
    mertens_scan,
    neg_zeta_log_deriv,
    psi_scan,
    zeta,
)

_COMPLEX_RE = re.compile(
    r"^\s*(?P<re>[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)"
    r"(\s*(?P<sign>[+-])\s*(?P<im>(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)?\s*i)?\s*$"
)


def parse_count(text: str) -> int:
    """Parse a positive count such as ``1000``, ``1e6`` or ``2.5e5``."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value.is_integer():
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return int(value)


def parse_complex(text: str) -> complex:
    """Parse ``RE+IMi`` text: ``2``, ``2+3i``, ``1.5-0.25i``, ``2+i``."""
    m = _COMPLEX_RE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(
            f"cannot parse s={text!r}; expected the form RE+IMi, e.g. 2+3i or 1.5"
        )
    re_part = float(m.group("re"))
    if m.group("sign") is None:
        return complex(re_part, 0.0)
    im = float(m.group("im")) if m.group("im") else 1.0
    return complex(re_part, -im if m.group("sign") == "-" else im)


def _emit(payload, fmt: str, csv_text: str | None = None, text: str | None = None) -> None:
    if fmt == "csv" and csv_text is not None:
        sys.stdout.write(csv_text)
    elif fmt == "text" and text is not None:
        print(text)
    else:
        print(json.dumps(payload, indent=2, sort_keys=False))


def _kind(name: str):
    try:
        return parse_kind(name)
    except ArithSpaceError as exc:
        raise _UsageError(str(exc)) from None


def _table(args, name: str):
    kind = _kind(name)
    return kind, load_or_build(kind, args.N, args.cache_dir, alpha=args.alpha, k=args.k)


class _UsageError(Exception):
    pass


# -- commands ------------------------------------------------------------------


def cmd_build(args) -> int:
    N = args.count if args.count is not None else args.N
    if N < 1:
        raise _UsageError("build needs N >= 1")
    kind = _kind(args.kind)
    cache_dir = args.cache_dir or ".arithspace-cache"
    table, path, status = build_cached(kind, N, cache_dir, alpha=args.alpha, k=args.k)
    payload = {"kind": kind.value, "N": N, "value_kind": table.value_kind.name, "path": str(path), "status": status}
    _emit(payload, args.format, text=f"{status} {path} ({table.value_kind.name}, N={N})")
    return 0


def cmd_norm(args) -> int:
    kind, f = _table(args, args.function)
    norm_kind = NormKind.parse(args.kind)
    bound = classical_growth_bound(kind, alpha=args.alpha, k=args.k)
    if norm_kind is NormKind.LogSup:
        report = u_norm_log(f, bound)
    else:
        # the l2 tail needs 2(1 - alpha) > 1
        report = u_norm_hybrid(f, bound if bound.alpha < 0.5 else None)
    payload = report.to_json()
    _emit(payload, args.format, text=f"{report.norm_kind.value}({f.label}) = {report.value!r}"
          f" (argmax {report.argmax_witness}, upper {report.certified_upper})")
    return 0


def cmd_conv(args) -> int:
    _, f = _table(args, args.f)
    _, g = _table(args, args.g)
    h = convolve(f, g)
    head = h.N if args.head is None else min(args.head, h.N)
    vals = h.values[:head].tolist()
    if args.format == "csv":
        rows = "".join(f"{n},{v!r}\n" for n, v in enumerate(vals, start=1))
        sys.stdout.write("n,value\n" + rows)
    elif args.format == "text":
        print(f"{h.label} ({h.value_kind.name}), first {head} of {h.N}: {vals}")
    else:
        if h.value_kind.name == "Complex":
            vals = [[v.real, v.imag] for v in vals]
        print(json.dumps({"label": h.label, "N": h.N, "value_kind": h.value_kind.name, "values": vals}))
    return 0


def cmd_series(args) -> int:
    s, N = args.s, args.N
    if args.expr == "zeta":
        ev = zeta(s, N)
    elif args.expr == "invzeta":
        ev = inv_zeta(s, N)
    elif args.expr == "lambda-logderiv":
        ev = neg_zeta_log_deriv(s, N)
    else:
        ev = l_function(character(args.q, args.index), s, N)
    payload = ev.to_json()
    _emit(payload, args.format, text=f"{args.expr}({s}) = {ev.partial} +/- {ev.tail_radius:.3e} (N={N})")
    return 0


def cmd_scan(args) -> int:
    X = args.X if args.X is not None else args.N
    if args.which == "conv-constant":
        report = convolution_constant_scan(args.N)
    elif args.which == "mertens":
        report = mertens_scan(X, args.theta)
    else:
        report = psi_scan(X)
    payload = report.to_json()
    _emit(payload, args.format, csv_text=report.to_csv(), text=json.dumps(payload))
    return 0


def cmd_characters(args) -> int:
    chars = [character(args.q, args.index)] if args.index is not None else character_group(args.q)
    payload = {"q": args.q, "count": len(chars), "characters": [c.describe() for c in chars]}
    lines = [f"chi[{c.modulus},{c.index}] order={c.order} principal={c.principal} "
             f"values={np.round(c.values, 12).tolist()}" for c in chars]
    if args.format == "csv":
        rows = ["index,order,principal,r,numerator,root_order"]
        for c in chars:
            rows += [f"{c.index},{c.order},{int(c.principal)},{r},{a},{c.root_order}"
                     for r, a in enumerate(c.numerators.tolist())]
        sys.stdout.write("\n".join(rows) + "\n")
    else:
        _emit(payload, args.format, text="\n".join(lines))
    return 0


def _default_Ms(N: int) -> list[int]:
    Ms = []
    j = 0
    while 10 ** j < N:
        Ms += [m for m in (10 ** j, 2 * 10 ** j, 5 * 10 ** j) if m < N]
        j += 1
    return Ms


def cmd_approx(args) -> int:
    _, f = _table(args, args.function)
    Ms = args.M or _default_Ms(f.N)
    curve = truncation_curve(f, Ms, NormKind.parse(args.kind))
    payload = {"function": f.label, "kind": NormKind.parse(args.kind).value, "N": f.N,
               "curve": [[M, e] for M, e in curve]}
    csv_text = "M,error\n" + "".join(f"{M},{e!r}\n" for M, e in curve)
    _emit(payload, args.format, csv_text=csv_text, text=csv_text)
    return 0


def cmd_verify(args) -> int:
    result = verify_mod.run_suite(args.suite, seed=args.seed, N=args.N if args.N_given else None)
    if not args.detail:
        result = {k: v for k, v in result.items() if k != "checks"}
    status = "PASS" if result["passed"] else "FAIL"
    print(f"{status} {args.suite}: {result['cases'] - result['failures']}/{result['cases']} checks",
          file=sys.stderr)
    print(json.dumps(result, indent=2))
    return 0 if result["passed"] else 1


# -- parser --------------------------------------------------------------------


def _add_globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--N", type=parse_count, default=d(1_000_000), help="table length (default 1e6)")
    p.add_argument("--cache-dir", default=d(None), help="directory for UARF table files")
    p.add_argument("--format", choices=("json", "csv", "text"), default=d("json"))
    p.add_argument("--seed", type=int, default=d(None), help="seed for random batteries")
    p.add_argument("--alpha", type=float, default=d(1.0), help="exponent for the id function")
    p.add_argument("--k", type=int, default=d(1), help="exponent for the log function")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arithspace", description=__doc__.splitlines()[0])
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    kinds = ", ".join(sorted(ALIASES))

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        _add_globals(p, suppress=True)
        p.set_defaults(func=func)
        return p

    p = add("build", cmd_build, "build a classical table and write it to the cache")
    p.add_argument("kind", help=f"one of: {kinds}")
    p.add_argument("count", nargs="?", type=parse_count, help="table length (overrides --N)")

    p = add("norm", cmd_norm, "hybrid or log-sup norm of a classical function")
    p.add_argument("function", help=f"one of: {kinds}")
    p.add_argument("kind", choices=("hybrid", "logsup"))

    p = add("conv", cmd_conv, "Dirichlet convolution of two classical functions")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--head", type=parse_count, help="print only the first HEAD values")

    p = add("series", cmd_series, "certified Dirichlet series evaluation")
    p.add_argument("expr", choices=("zeta", "invzeta", "lambda-logderiv", "L"))
    p.add_argument("--s", type=parse_complex, required=True, help="point as RE+IMi, e.g. 2+3i")
    p.add_argument("--q", type=parse_count, default=1, help="character modulus for L")
    p.add_argument("--index", type=int, default=0, help="character index for L")

    p = add("scan", cmd_scan, "desk-scale scans (conv-constant, mertens, psi)")
    p.add_argument("which", choices=("conv-constant", "mertens", "psi"))
    p.add_argument("--X", type=parse_count, help="scan limit (defaults to --N)")
    p.add_argument("--theta", type=float, default=0.5)

    p = add("characters", cmd_characters, "Dirichlet characters mod q")
    p.add_argument("--q", type=parse_count, required=True)
    p.add_argument("--index", type=int)

    p = add("approx", cmd_approx, "truncation-error curve of a classical function")
    p.add_argument("function")
    p.add_argument("--kind", choices=("hybrid", "logsup"), default="logsup")
    p.add_argument("--M", type=parse_count, nargs="+", help="truncation points")

    p = add("verify", cmd_verify, "run a check suite")
    p.add_argument("suite", choices=verify_mod.SUITES)
    p.add_argument("--detail", action="store_true", help="include every individual check")
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(argv)
    args.N_given = any(a == "--N" or a.startswith("--N=") for a in argv)
    if args.N < 1:
        parser.error("--N must be >= 1")
    try:
        return args.func(args)
    except _UsageError as exc:
        parser.error(str(exc))
    except ArithSpaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
