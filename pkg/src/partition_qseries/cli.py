"""Command-line interface: ``pqseries <subcommand> ...``.

Exit status: 0 success, 1 a compared pair differs or an identity fails,
2 bad input, 3 steps do not form a loop, 4 degenerate loop, 5 positivity
check failed, 6 pentagon move not applicable, 7 lattice limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import closed_forms
from ._backend import BACKEND
from .errors import LatticeLimitError
from .lattice import DEFAULT_LIMIT, STRATEGIES
from .loops import NotALoopError, PentagonError, loop_from_json, pentagon_expand
from .partition import partition_series, q_pentagon_check
from .quiver import QuiverError
from .series import QSeries, format_rational, parse_rational
from .variables import FAILED, DegenerateLoopError, ExponentForm, PositivityError, build_system, exponent_form

EXIT_DIFFER = 1
EXIT_PARSE = 2
EXIT_NOT_LOOP = 3
EXIT_DEGENERATE = 4
EXIT_POSITIVITY = 5
EXIT_PENTAGON = 6
EXIT_LIMIT = 7


class CliError(Exception):
    def __init__(self, code, message):
        self.code = code
        super().__init__(message)


def _cutoff(text):
    try:
        value = parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if value < 0:
        raise argparse.ArgumentTypeError("cutoff must be nonnegative")
    return value


def _err(*args):
    print(*args, file=sys.stderr)


def _load_loop(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        return loop_from_json(data)
    except NotALoopError as exc:
        raise CliError(EXIT_NOT_LOOP, f"not a loop; final matrix: {json.dumps([list(r) for r in exc.final.b])}")
    except (OSError, json.JSONDecodeError, QuiverError, KeyError, TypeError, ValueError) as exc:
        raise CliError(EXIT_PARSE, f"cannot read loop from {path}: {exc}")


def _form(loop):
    try:
        form = exponent_form(loop)
    except DegenerateLoopError as exc:
        raise CliError(EXIT_DEGENERATE, str(exc))
    except PositivityError as exc:
        raise CliError(EXIT_POSITIVITY, str(exc))
    if form.positivity == FAILED:
        raise CliError(EXIT_POSITIVITY, "loop is not positive: F(k) <= 0 for some nonzero k >= 0")
    return form


def _series(form, args) -> QSeries:
    try:
        return partition_series(form, args.cutoff, strategy=args.strategy, jobs=args.jobs, limit=args.max_terms)
    except LatticeLimitError as exc:
        raise CliError(EXIT_LIMIT, str(exc))
    except PositivityError as exc:
        raise CliError(EXIT_POSITIVITY, str(exc))


def _emit(series: QSeries, fmt: str) -> None:
    print(series.dumps() if fmt == "json" else series.to_text())


def _describe_form(form) -> None:
    _err(f"delta: {form.delta}")
    _err(f"positivity: {form.positivity}" + (f" (bound {form.bound})" if form.bound else ""))
    _err("gram:")
    for row in form.gram:
        _err("  " + " ".join(str(x) for x in row))


def cmd_compute(args) -> int:
    loop = _load_loop(args.loop)
    form = _form(loop)
    if args.verbose:
        _err(f"backend: {BACKEND}")
        _err(f"normal form: m={list(loop.mutations)} phi={list(loop.phi)}")
        _describe_form(form)
    _emit(_series(form, args), args.format)
    return 0


def cmd_verify_pentagon(args) -> int:
    loop = _load_loop(args.loop)
    try:
        moved = pentagon_expand(loop, args.pos)
    except PentagonError as exc:
        raise CliError(EXIT_PENTAGON, str(exc))
    z0 = _series(_form(loop), args)
    z1 = _series(_form(moved), args)
    equal = z0.agrees_with(z1)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "original": z0.to_json(),
                    "expanded": z1.to_json(),
                    "expanded_normal_form": moved.normal_form_json(),
                    "equal": equal,
                },
                separators=(", ", ": "),
            )
        )
    else:
        print(f"original: {z0.to_text()}")
        print(f"expanded: {z1.to_text()}")
        print("EQUAL" if equal else "DIFFER")
    return 0 if equal else EXIT_DIFFER


def _compare(direct, closed, args) -> int:
    if args.mode == "direct":
        _emit(direct(), args.format)
        return 0
    if args.mode == "closed-form":
        _emit(closed(), args.format)
        return 0
    a, b = direct(), closed()
    equal = a.agrees_with(b)
    if args.format == "json":
        print(json.dumps({"direct": a.to_json(), "closed_form": b.to_json(), "equal": equal}, separators=(", ", ": ")))
    else:
        _emit(a, args.format)
        _err("closed form: " + ("EQUAL" if equal else "DIFFER"))
    return 0 if equal else EXIT_DIFFER


def _dynkin_type(text):
    try:
        return closed_forms.DynkinType.parse(text)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc))


def cmd_dynkin(args) -> int:
    t = _dynkin_type(args.type)
    loop = closed_forms.dynkin_loop(t)
    if args.verbose:
        _err(f"loop: m={list(loop.mutations)} phi=id")
    return _compare(
        lambda: _series(_form(loop), args),
        lambda: _series(closed_forms.dynkin_form(t), args),
        args,
    )


def cmd_square(args) -> int:
    t, tp = _dynkin_type(args.type1), _dynkin_type(args.type2)
    try:
        loop = closed_forms.square_loop(t, tp, args.order)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc))
    if args.verbose:
        _err(f"loop: m={list(loop.mutations)} phi=id")
    return _compare(
        lambda: _series(_form(loop), args),
        lambda: _series(ExponentForm.from_gram(closed_forms.square_gram(t, tp, args.order)), args),
        args,
    )


def cmd_check_identities(args) -> int:
    rows = []
    for m in range(6):
        for n in range(6):
            rows.append((f"q-pentagon m={m} n={n}", q_pentagon_check(m, n, args.cutoff)))
    rows.append(("A3 theta identity", closed_forms.theta_check_a3(args.cutoff)))
    ok = all(r[1] for r in rows)
    if args.format == "json":
        print(json.dumps({"cutoff": format_rational(args.cutoff), "checks": [{"name": n, "pass": p} for n, p in rows], "all_pass": ok}))
    else:
        width = max(len(n) for n, _ in rows)
        for name, passed in rows:
            print(f"{name:<{width}}  {'PASS' if passed else 'FAIL'}")
    return 0 if ok else EXIT_DIFFER


def cmd_info(args) -> int:
    loop = _load_loop(args.loop)
    system = build_system(loop)
    out = {"n": loop.n, "T": loop.length, "normal_form": loop.normal_form_json(), "s_variables": list(system.slot_names)}
    form = None
    if system.is_nondegenerate():
        form = exponent_form(system)
        out["form"] = form.to_json()
    if args.format == "json":
        print(json.dumps(out))
    else:
        print(f"normal form: m={out['normal_form']['mutations']} phi={out['normal_form']['phi']}")
        print(f"T: {loop.length}")
        print(f"s-variables: {' '.join(system.slot_names)}")
        if form is None:
            print("degenerate")
        else:
            print(f"delta: {form.delta}")
            print(f"positivity: {form.positivity}")
            print("gram:")
            for row in form.gram:
                print("  " + " ".join(str(x) for x in row))
    if form is None:
        return EXIT_DEGENERATE
    return EXIT_POSITIVITY if form.positivity == FAILED else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cutoff", type=_cutoff, default=Fraction(10), help="largest exponent kept, p/q or integer")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for the lattice sum")
    common.add_argument("--strategy", choices=STRATEGIES, default=None)
    common.add_argument("--max-terms", type=int, default=DEFAULT_LIMIT, help="abort after this many lattice points")
    common.add_argument("--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="pqseries", description="Partition q-series of quiver mutation loops.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("compute", parents=[common], help="partition q-series of a loop file")
    s.add_argument("loop")
    s.set_defaults(func=cmd_compute)

    s = sub.add_parser("verify-pentagon", parents=[common], help="compare Z before and after a pentagon move")
    s.add_argument("loop")
    s.add_argument("--pos", type=int, required=True, help="0-based index into the normalized mutation list")
    s.set_defaults(func=cmd_verify_pentagon)

    def modes(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--direct", dest="mode", action="store_const", const="direct")
        g.add_argument("--closed-form", dest="mode", action="store_const", const="closed-form")
        g.add_argument("--both", dest="mode", action="store_const", const="both")
        sp.set_defaults(mode="direct")

    s = sub.add_parser("dynkin", parents=[common], help="alternating Dynkin loop, e.g. A3, D5, E6")
    s.add_argument("type")
    modes(s)
    s.set_defaults(func=cmd_dynkin)

    s = sub.add_parser("square", parents=[common], help="square-product loop of two Dynkin types")
    s.add_argument("type1")
    s.add_argument("type2")
    s.add_argument("--order", choices=(closed_forms.PLUS_FIRST, closed_forms.MINUS_FIRST), default=closed_forms.PLUS_FIRST)
    modes(s)
    s.set_defaults(func=cmd_square)

    s = sub.add_parser("check-identities", parents=[common], help="q-pentagon and A3 theta identities")
    s.set_defaults(func=cmd_check_identities)

    s = sub.add_parser("info", parents=[common], help="normal form, delta, Gram matrix, positivity")
    s.add_argument("loop")
    s.set_defaults(func=cmd_info)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        _err(f"error: {exc}")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
