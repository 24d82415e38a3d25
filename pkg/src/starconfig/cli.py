"""Command-line interface.

Exit codes: 0 success, 1 usage or input error, 2 an internal check failed.
All randomness derives from ``--seed``; identical flags give identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import cubic
from .classify import answer, classification_table
from .harness import ReplicationError, replicate_l4, replicate_l5
from .polyring import FormSyntaxError, NonHomogeneousError, format_form, parse_form
from .star import (
    StarConfigError,
    build_star,
    contains_star,
    hilbert_function_computed,
    hilbert_function_formula,
    random_curve_through,
    random_star,
)
from .tangent import QUARTIC_WITNESS, QUINTIC_WITNESS, dominance_check

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _lines_arg(args) -> list | None:
    if not args.lines:
        return None
    return [parse_form(t) for t in args.lines]


def cmd_hilbert(args) -> int:
    if args.l < 2:
        raise UsageError("--l must be at least 2")
    X = build_star(_lines_arg(args)) if args.lines else random_star(args.l, args.seed, args.bound)
    if X.l != args.l:
        raise UsageError(f"--l {args.l} but {X.l} lines given")
    rows = []
    for t in range(args.t_max + 1):
        f, c = hilbert_function_formula(X.l, t), hilbert_function_computed(X, t)
        rows.append({"t": t, "formula": f, "computed": c, "match": f == c})
    ok = all(r["match"] for r in rows)
    text = [f"X({X.l}) lines: " + ", ".join(str(ln) for ln in X.lines), " t  formula  computed"]
    text += [f"{r['t']:>2}  {r['formula']:>7}  {r['computed']:>8}  {'match' if r['match'] else 'MISMATCH'}"
             for r in rows]
    _emit(args, {"l": X.l, "star": X.to_json(), "rows": rows, "ok": ok}, "\n".join(text))
    return EXIT_OK if ok else EXIT_CHECK


def _witness(args, d: int, l: int) -> list:
    if args.lines or args.multipliers:
        if not (args.lines and args.multipliers):
            raise UsageError("--lines and --multipliers must be given together")
        return [(args.lines, args.multipliers)]
    if args.known_witness:
        known = {(4, 4): QUARTIC_WITNESS, (5, 5): QUINTIC_WITNESS}
        if (d, l) not in known:
            raise UsageError("known witnesses exist only for (d, l) = (4, 4) and (5, 5)")
        return [known[(d, l)]]
    return []


def cmd_check(args) -> int:
    d, l = args.d, args.l
    if l < 2 or d < 1:
        raise UsageError("need --l >= 2 and --d >= 1")
    expected = answer(d, l)
    if d < l - 1:
        payload = {"d": d, "l": l, "verdict": "certified-no", "reason": expected.reason,
                   "dim": 0, "dim_S_d": (d + 2) * (d + 1) // 2}
        _emit(args, payload, f"(d, l) = ({d}, {l}): no ({expected.reason}: "
                             f"generators have degree {l - 1} > {d})")
        return EXIT_OK
    result = dominance_check(d, l, args.trials, args.seed, args.bound,
                             witnesses=_witness(args, d, l))
    payload = result.to_json()
    payload["expected"] = expected.to_json()
    # a yes cell must certify, and a no cell can never certify
    consistent = result.certified == expected.answer
    text = f"(d, l) = ({d}, {l}): {result.verdict}, dim {result.dim}/{result.dim_S_d} " \
           f"after {result.trials} trial(s)"
    if result.witness is not None:
        text += "\n  L: " + ", ".join(format_form(f) for f in result.witness.L)
        text += "\n  M: " + ", ".join(format_form(f) for f in result.witness.M)
    if not result.certified:
        text += "\n  (a failed rank test certifies nothing; " \
                f"classification: {'yes' if expected.answer else 'no'}, {expected.reason})"
    _emit(args, payload, text)
    return EXIT_OK if consistent else EXIT_CHECK


def cmd_classify(args) -> int:
    table = classification_table(args.d_max, args.l_max, args.d_min, args.l_min)
    ds = range(args.d_min, args.d_max + 1)
    ls = range(args.l_min, args.l_max + 1)
    short = {"degree-bound": "B", "dimension-count": "D", "luroth": "L",
             "trivial-small-l": "T", "certified-rank": "R", "group-law": "G"}
    if args.latex:
        lines = [r"\begin{tabular}{c|" + "c" * len(ds) + "}",
                 "$l \\backslash d$ & " + " & ".join(str(d) for d in ds) + r" \\ \hline"]
        for l in ls:
            cells = [("Y" if table[d, l].answer else "N") + "$_{" + short[table[d, l].reason] + "}$"
                     for d in ds]
            lines.append(f"{l} & " + " & ".join(cells) + r" \\")
        lines.append(r"\end{tabular}")
        text = "\n".join(lines)
    else:
        lines = ["l\\d " + "".join(f"{d:>5}" for d in ds)]
        for l in ls:
            lines.append(f"{l:>3} " + "".join(
                f"{('Y' if table[d, l].answer else 'N') + short[table[d, l].reason]:>5}" for d in ds))
        lines.append("Y/N = contains X(l) or not; " + ", ".join(f"{v}={k}" for k, v in short.items()))
        text = "\n".join(lines)
    _emit(args, [v.to_json() for v in table.values()], text)
    return EXIT_OK


def _point(text: str) -> cubic.CurvePoint:
    if text.lower() in ("inf", "infinity", "o"):
        return cubic.INFINITY
    try:
        x, y = (Fraction(p.strip()) for p in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse point {text!r}; expected 'x,y' with rationals like 25/4")
    return cubic.CurvePoint(x, y)


def cmd_cubic_x4(args) -> int:
    if args.default:
        C, p1, p2 = cubic.DEFAULT_CURVE, cubic.DEFAULT_P1, cubic.DEFAULT_P2
    else:
        if None in (args.a, args.b, args.p1, args.p2):
            raise UsageError("give --default or all of --a, --b, --p1, --p2")
        C = cubic.WeierstrassCurve(Fraction(args.a), Fraction(args.b))
        p1, p2 = _point(args.p1), _point(args.p2)
    built = cubic.construct_x4(C, p1, p2)
    ok = all(cubic.on_curve(C, P) for P in built.points.values()) and contains_star(C.equation, built.star)
    payload = built.to_json()
    payload["ok"] = ok
    text = [f"curve: y^2 = x^3 + ({C.a})x + ({C.b})"]
    text += [f"  l{i}: {ln}" for i, ln in enumerate(built.star.lines, 1)]
    text += [f"  {name:>5} = {P}  on lines {built.incidence[name]}" for name, P in built.points.items()]
    text.append("valid X(4) on the curve" if ok else "CHECK FAILED")
    _emit(args, payload, "\n".join(text))
    return EXIT_OK if ok else EXIT_CHECK


def cmd_replicate(args) -> int:
    l, d = args.l, args.d
    explicit = {(4, 4): QUARTIC_WITNESS, (5, 5): QUINTIC_WITNESS}
    if (d, l) in explicit:
        result = dominance_check(d, l, 0, args.seed, args.bound, witnesses=[explicit[(d, l)]])
        payload = {"l": l, "d": d, "path": "explicit-witness", "check": result.to_json(),
                   "ok": result.certified}
        text = (f"(d, l) = ({d}, {l}) is settled by an explicit witness, not by the evaluation "
                f"argument: dim I_{d} = {result.dim}/{result.dim_S_d} ({result.verdict})")
        _emit(args, payload, text)
        return EXIT_OK if result.certified else EXIT_CHECK
    if (d, l) == (3, 4):
        raise UsageError("(3, 4) is settled by the group law; run 'cubic-x4 --default'")
    minimum = {4: 5, 5: 6}[l]
    if d < minimum:
        raise UsageError(f"the evaluation argument for l={l} needs d >= {minimum}")
    run = replicate_l4 if l == 4 else replicate_l5
    try:
        report = run(d, args.seed, args.bound)
    except ReplicationError as exc:
        _emit(args, exc.report.to_json(), exc.report.to_text())
        return EXIT_CHECK
    _emit(args, report.to_json(), report.to_text())
    return EXIT_OK


def cmd_curve_through(args) -> int:
    if args.lines:
        X = build_star(_lines_arg(args))
    else:
        if args.l is None:
            raise UsageError("give --l or --lines")
        X = random_star(args.l, args.seed, args.bound)
    F = random_curve_through(X, args.d, args.seed, args.bound)
    ok = contains_star(F, X)
    payload = {"d": args.d, "l": X.l, "star": X.to_json(), "F": format_form(F), "contains": ok}
    _emit(args, payload, f"F = {format_form(F)}\ncontains X({X.l}): {ok}")
    return EXIT_OK if ok else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--bound", type=int, default=100, help="random coefficient bound")
    common.add_argument("--trials", type=int, default=5)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = _Parser(prog="starconfig", description="Star configurations on generic plane curves")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    h = sub.add_parser("hilbert", parents=[common], help="Hilbert function, formula vs computed")
    h.add_argument("--l", type=int, required=True)
    h.add_argument("--t-max", type=int, default=10)
    h.add_argument("--lines", nargs="+", help="explicit linear forms instead of random lines")
    h.set_defaults(func=cmd_hilbert)

    c = sub.add_parser("check", parents=[common], help="rank test for one (d, l)")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--l", type=int, required=True)
    c.add_argument("--lines", nargs="+")
    c.add_argument("--multipliers", nargs="+")
    c.add_argument("--known-witness", action="store_true",
                   help="try the built-in witness for (4,4) or (5,5) first")
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("classify", parents=[common], help="yes/no grid with reasons")
    k.add_argument("--d-max", type=int, default=10)
    k.add_argument("--l-max", type=int, default=8)
    k.add_argument("--d-min", type=int, default=1)
    k.add_argument("--l-min", type=int, default=2)
    k.add_argument("--latex", action="store_true")
    k.set_defaults(func=cmd_classify)

    x = sub.add_parser("cubic-x4", parents=[common], help="X(4) on a cubic by the group law")
    x.add_argument("--default", action="store_true", help="y^2 = x^3 - 25x, p1=(-4,6), p2=(0,0)")
    x.add_argument("--a")
    x.add_argument("--b")
    x.add_argument("--p1", help="x,y")
    x.add_argument("--p2", help="x,y")
    x.set_defaults(func=cmd_cubic_x4)

    r = sub.add_parser("replicate", parents=[common], help="evaluation-matrix rank argument")
    r.add_argument("--l", type=int, choices=(4, 5), required=True)
    r.add_argument("--d", type=int, required=True)
    r.set_defaults(func=cmd_replicate)

    t = sub.add_parser("curve-through", parents=[common], help="random curve through an X(l)")
    t.add_argument("--d", type=int, required=True)
    t.add_argument("--l", type=int)
    t.add_argument("--lines", nargs="+")
    t.set_defaults(func=cmd_curve_through)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormSyntaxError, NonHomogeneousError, StarConfigError,
            cubic.CurveError, ValueError) as exc:
        print(f"starconfig: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"starconfig: check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    raise SystemExit(main())
