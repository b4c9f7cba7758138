"""Command-line front end.

Exit codes: 0 pass, 1 fail, 2 undecided, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import InvariantViolation, NoRepresentative, NotLSpaceForm, Undecided
from .falg import ClassExpr, arch_compare, class_compare, class_epsilon, class_sequence
from .knots import KnotError, alexander, knot_class
from .laurent import format_poly
from .parser import ParseError, parse_expr, to_text
from .simplify import realize_steps
from .verify import CHECKS, UsageError, run_check

EXIT_PASS, EXIT_FAIL, EXIT_UNDECIDED, EXIT_USAGE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def _seq_text(s) -> str:
    return "[" + ", ".join(map(str, s)) + "]"


def _parse(text: str):
    try:
        return parse_expr(text)
    except ParseError as exc:
        raise UsageError(f"{exc}\n{exc.caret()}") from None
    except KnotError as exc:
        raise UsageError(str(exc)) from None


def _klass(text: str) -> ClassExpr:
    try:
        return knot_class(_parse(text))
    except KnotError as exc:
        raise UsageError(str(exc)) from None


# commands return (exit code, text, json document)


def cmd_alex(args):
    e = _parse(args.expr)
    try:
        f = alexander(e)
    except KnotError as exc:
        raise UsageError(str(exc)) from None
    terms = [[k, v] for k, v in sorted(f.as_dict().items())]
    return EXIT_PASS, format_poly(f), {"alexander": format_poly(f), "expr": to_text(e), "terms": terms}


def cmd_steps(args):
    k = _klass(args.expr)
    s = class_sequence(k)
    return EXIT_PASS, _seq_text(s), {"class": k.to_list(), "expr": args.expr, "steps": list(s)}


def cmd_tau(args):
    k = _klass(args.expr)
    return EXIT_PASS, str(k.tau()), {"expr": args.expr, "tau": k.tau()}


def cmd_epsilon(args):
    k = _klass(args.expr)
    e = 0 if k.is_zero() else class_epsilon(k)
    return EXIT_PASS, str(e), {"epsilon": e, "expr": args.expr}


def cmd_a12(args):
    k = _klass(args.expr)
    s = class_sequence(k)
    a1 = s[0] if s and s[0] > 0 else None
    a2 = s[1] if a1 is not None and len(s) > 1 and s[1] > 0 else None
    show = lambda v: "undefined" if v is None else str(v)  # noqa: E731
    return EXIT_PASS, f"a1 = {show(a1)}\na2 = {show(a2)}", {"a1": a1, "a2": a2, "expr": args.expr}


def cmd_compare(args):
    rel = class_compare(_klass(args.a), _klass(args.b))
    code = EXIT_UNDECIDED if rel == "undecided" else EXIT_PASS
    return code, rel, {"a": args.a, "b": args.b, "relation": rel}


def cmd_arch(args):
    if args.max_n < 1:
        raise UsageError("--max-n must be at least 1")
    v = arch_compare(_klass(args.a), _klass(args.b), args.max_n)
    text = v.relation
    if v.certificate:
        text += f" ({'sampled' if v.sampled else 'certified'}: {v.certificate})"
    code = EXIT_UNDECIDED if v.relation == "undecided" else EXIT_PASS
    return code, text, {"a": args.a, "b": args.b, **v.to_dict()}


def cmd_dump(args):
    k = _klass(args.expr)
    s = class_sequence(k)
    try:
        c = realize_steps(s)
    except NoRepresentative as exc:
        return EXIT_FAIL, f"no complex realizes {_seq_text(s)}: {exc}", {"error": str(exc), "steps": list(s)}
    doc = c.canonical().to_dict()
    return EXIT_PASS, _dump(doc), doc


def cmd_verify(args):
    check = CHECKS[args.check]
    flags = {name: getattr(args, name) for name, *_ in check.flags}
    progress = None
    if not args.json:
        progress = lambda o: print(f"{o.status:9} {o.params}: {o.note}", file=sys.stderr, flush=True)  # noqa: E731
    report = run_check(args.check, flags, progress=progress if args.verbose else None)
    code = {"pass": EXIT_PASS, "fail": EXIT_FAIL, "undecided": EXIT_UNDECIDED}[report.status]
    if args.json:
        return code, None, json.loads(report.to_json(args.timings))
    return code, "\n".join(report.lines()), None


# argument parsing


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        out = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    if out[0] > out[1]:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return out


_KINDS = {"int": int, "ints": _ints, "range": _range}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="canonical JSON output")
    p = _Parser(
        prog="floereps",
        description="Staircase complexes, epsilon-equivalence classes and their ordering.",
        epilog="Expressions starting with '-' need a preceding '--', e.g. floereps epsilon -- '-T(3,4)'.",
    )
    p.add_argument("--json", action="store_true", help="canonical JSON output")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def expr_cmd(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("expr", help="knot expression, e.g. 'T(3,4) + 2*T(2,3)'")
        sp.set_defaults(fn=fn)

    expr_cmd("alex", cmd_alex, "Alexander polynomial")
    expr_cmd("steps", cmd_steps, "reduced step sequence of the class")
    expr_cmd("tau", cmd_tau, "the tau invariant")
    expr_cmd("epsilon", cmd_epsilon, "the epsilon invariant")
    expr_cmd("a12", cmd_a12, "the local invariants a1 and a2")
    expr_cmd("dump", cmd_dump, "serialized reduced complex of the class")

    sp = sub.add_parser("compare", parents=[common], help="order of two classes")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.set_defaults(fn=cmd_compare)

    sp = sub.add_parser("arch", parents=[common], help="Archimedean comparison")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--max-n", type=int, default=3, help="largest sampled multiple (default 3)")
    sp.set_defaults(fn=cmd_arch)

    vp = sub.add_parser("verify", parents=[common], help="run a verification check")
    checks = vp.add_subparsers(dest="check", required=True, metavar="CHECK")
    for cid, check in CHECKS.items():
        cp = checks.add_parser(cid, parents=[common], help=check.description)
        for name, kind, default, help_ in check.flags:
            show = f"{default[0]}..{default[1]}" if kind == "range" else default
            cp.add_argument("--" + name.replace("_", "-"), dest=name, type=_KINDS[kind], default=default,
                            help=f"{help_} (default {show})")
        cp.add_argument("--timings", action="store_true", help="include timings in JSON output")
        cp.add_argument("-v", "--verbose", action="store_true", help="print each instance as it finishes")
        cp.set_defaults(fn=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, text, doc = args.fn(args)
    except UsageError as exc:
        print(f"floereps: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Undecided as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except (InvariantViolation, NoRepresentative, NotLSpaceForm) as exc:
        print(f"floereps: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.json:
        print(_dump(doc if doc is not None else {"result": text}))
    elif text is not None:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
