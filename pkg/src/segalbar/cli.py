"""``segalbar`` command line.

Exit codes: 0 success, 1 a check failed (the witness is printed), 2 malformed
input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import simplex_cats as sc
from .bar_segal import (
    DEFAULT_N,
    MODES,
    STRICT,
    InvalidSimplicialSet,
    MalformedSSet,
    NotSegal,
    TruncationError,
    dumps_sset,
    load_sset,
    nerve,
    reconstruct_monoid,
    segal_check,
    verify_bar_equality,
)
from .bisimplicial import (
    InterchangeFails,
    InvalidBisimplicialSet,
    double_nerve,
    double_segal_check,
    dumps_bisset,
    eckmann_hilton,
    load_bisset,
)
from .dual_functors import h_map, hj_map, j_map
from .finset_model import MonoidError, NotCommutative, dumps_monoid, load_monoid
from .render import render_arrow, render_summary
from .verify import MAX_SIZE_LIMIT, MAX_TRUNCATION_LIMIT, full_suite

OK, FAILED, MALFORMED = 0, 1, 2

KINDS = ("total", "partial", "interval", "op")


class CheckFailed(Exception):
    pass


def _bounded(name: str, lo: int, hi: int) -> Callable[[str], int]:
    def parse(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer") from None
        if not lo <= v <= hi:
            raise argparse.ArgumentTypeError(f"{name} must be in {lo}..{hi}")
        return v
    return parse


# -- map arguments --------------------------------------------------------------

def _op_arrow(text: str) -> sc.OpArrow:
    a = sc.parse_map(text)
    if not isinstance(a, sc.OpArrow):
        raise sc.ShapeError(f"expected an arrow of the form [m]→[n]:[...], got {text!r}")
    return a


def _interval(text: str) -> sc.IntervalMap:
    f = sc.parse_map(text)
    if not isinstance(f, sc.TotalMap):
        raise sc.ShapeError(f"expected an interval map n→m:[...], got {text!r}")
    return sc.IntervalMap(f)


# -- subcommands ----------------------------------------------------------------

def cmd_hom(args, out):
    arrows = sc.enumerate_hom(args.kind, args.n, args.m)
    if not args.count:
        for f in arrows:
            out(str(f))
    out(f"{len(arrows)} arrow{'s' if len(arrows) != 1 else ''}")


def cmd_compose(args, out):
    out(str(sc.compose(sc.parse_map(args.g), sc.parse_map(args.f))))


def cmd_tensor(args, out):
    out(str(sc.tensor(sc.parse_map(args.f), sc.parse_map(args.g))))


def cmd_jmap(args, out):
    out(str(j_map(_op_arrow(args.arrow))))


def cmd_hmap(args, out):
    out(str(h_map(_interval(args.map))))


def cmd_hjmap(args, out):
    out(str(hj_map(_op_arrow(args.arrow))))


def cmd_render(args, out):
    out(render_arrow(sc.parse_map(args.map), "dot" if args.format == "dot" else "ascii"), end="")


def _emit(text: str, path, out):
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        out(text, end="")


def cmd_nerve(args, out):
    _emit(dumps_sset(nerve(load_monoid(args.monoid), args.N)), args.output, out)


def cmd_segal_check(args, out):
    X = load_sset(args.sset)
    report = segal_check(X, args.mode)
    out(render_summary(X, report), end="")
    if not report.passed:
        raise CheckFailed(f"witness: {report.failures[0]}")


def cmd_reconstruct(args, out):
    X = load_sset(args.sset)
    _emit(dumps_monoid(reconstruct_monoid(X)), args.output, out)


def cmd_bar_equal(args, out):
    result = verify_bar_equality(load_sset(args.sset), load_monoid(args.monoid))
    if not result.equal:
        where = f" at {result.arrow}" if result.arrow is not None else ""
        raise CheckFailed(f"not equal{where}: {result.detail}")
    out(f"equal: {result.detail}" if result.detail else "equal")


def cmd_double_nerve(args, out):
    _emit(dumps_bisset(double_nerve(load_monoid(args.monoid), args.N, args.M)), args.output, out)


def cmd_bisegal_check(args, out):
    X = load_bisset(args.bisset)
    report = double_segal_check(X, args.mode)
    out(render_summary(X), end="")
    for line in report.lines():
        out(line)
    if not report.passed:
        where, verdict = report.failures()[0]
        raise CheckFailed(f"witness: {where} {verdict}")
    out(f"double segal check ({report.mode}): PASS")


def cmd_eckmann_hilton(args, out):
    eh = eckmann_hilton(load_bisset(args.bisset))
    for name, M in (("horizontal", eh.horizontal), ("vertical", eh.vertical)):
        out(f"{name} product:")
        width = max(len(e) for e in M.elements)
        for a, row in zip(M.elements, M.table_rows()):
            out("  " + f"{a:>{width}} | " + " ".join(f"{M.elements[v]:>{width}}" for v in row))
    for line in eh.lines():
        out(line)
    if not eh.verdict:
        raise CheckFailed("the two products are not equal and commutative")
    out("verdict: equal and commutative")


def cmd_verify(args, out):
    results = full_suite(args.max_size)
    for r in results:
        line = r.line() if args.timings else r.line().replace(f" ({r.seconds:.2f}s)", "")
        out(line)
    failed = [r for r in results if not r.passed]
    out(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if failed:
        raise CheckFailed(f"first failure: {failed[0].name}: {failed[0].detail}")


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="segalbar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    level = _bounded("size", 0, 12)

    p = sub.add_parser("hom", help="list the arrows of a hom-set")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("n", type=level)
    p.add_argument("m", type=level)
    p.add_argument("--count", action="store_true", help="only print the count")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("compose", help="print G∘F")
    p.add_argument("g")
    p.add_argument("f")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("tensor", help="print F⊗G (ordinal sum)")
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(func=cmd_tensor)

    for name, func, meta in (("jmap", cmd_jmap, "arrow"), ("hmap", cmd_hmap, "map"), ("hjmap", cmd_hjmap, "arrow")):
        p = sub.add_parser(name, help=f"apply {name[:-3].upper()}")
        p.add_argument(meta)
        p.set_defaults(func=func)

    p = sub.add_parser("render", help="draw a map")
    p.add_argument("map")
    p.add_argument("--format", choices=("text", "dot"), default="text")
    p.set_defaults(func=cmd_render)

    trunc = _bounded("truncation", 0, MAX_TRUNCATION_LIMIT)
    p = sub.add_parser("nerve", help="write the nerve of a monoid file")
    p.add_argument("monoid")
    p.add_argument("--N", type=trunc, default=DEFAULT_N)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_nerve)

    p = sub.add_parser("segal-check", help="check the Segal condition level by level")
    p.add_argument("sset")
    p.add_argument("--mode", choices=MODES, default=STRICT)
    p.set_defaults(func=cmd_segal_check)

    p = sub.add_parser("reconstruct", help="recover the monoid of a Segal simplicial set")
    p.add_argument("sset")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("bar-equal", help="compare a simplicial set with the nerve of a monoid")
    p.add_argument("sset")
    p.add_argument("monoid")
    p.set_defaults(func=cmd_bar_equal)

    p = sub.add_parser("double-nerve", help="write the double nerve of a commutative monoid")
    p.add_argument("monoid")
    p.add_argument("--N", type=trunc, default=3)
    p.add_argument("--M", type=trunc, default=3)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_double_nerve)

    p = sub.add_parser("bisegal-check", help="Segal check on every row and on the column n=1")
    p.add_argument("bisset")
    p.add_argument("--mode", choices=MODES, default=STRICT)
    p.set_defaults(func=cmd_bisegal_check)

    p = sub.add_parser("eckmann-hilton", help="extract both products and test the interchange law")
    p.add_argument("bisset")
    p.set_defaults(func=cmd_eckmann_hilton)

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--max-size", type=_bounded("max-size", 1, MAX_SIZE_LIMIT), default=4)
    p.add_argument("--timings", action="store_true", help="show per-check timings")
    p.set_defaults(func=cmd_verify)
    return parser


MALFORMED_ERRORS = (
    sc.ShapeError,
    MonoidError,
    MalformedSSet,
    InvalidSimplicialSet,
    InvalidBisimplicialSet,
    TruncationError,
    json.JSONDecodeError,
    OSError,
)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return MALFORMED if exc.code else OK

    def out(text: str = "", end: str = "\n"):
        sys.stdout.write(text + end)

    try:
        args.func(args, out)
    except CheckFailed as exc:
        out(f"FAIL: {exc}")
        return FAILED
    except (NotSegal, NotCommutative, InterchangeFails) as exc:
        out(f"FAIL: {exc}")
        return FAILED
    except MALFORMED_ERRORS as exc:
        # NotCommutative is a MonoidError but is caught above as a check failure
        sys.stderr.write(f"segalbar: error: {exc}\n")
        return MALFORMED
    return OK


if __name__ == "__main__":
    sys.exit(main())
