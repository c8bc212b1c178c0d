"""Command line front end.

Exit codes: 0 success, 1 negative verdict, 2 input or usage error,
3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import formats
from .bipartite import find_perfect_matching, from_bipartite, to_bipartite
from .classify import classify, survey
from .digraph import Digraph
from .errors import CapacityError, InputError, InternalConsistencyError
from .kelly import (
    ROOT_RULES,
    kelly_width_exact,
    ordering_width,
    recognize_width1,
    validate_kelly_decomposition,
)
from .matrixlab.linalg import nullity
from .matrixlab.properties import asap_check, in_Q0, sp_check
from .matrixlab.reduction import check_matrix
from .matrixlab.search import nu_lower_bound_search
from .minors import CATALOG, DEFAULT_CAP, has_directed_minor

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


class Result:
    def __init__(self, data: dict, text: str, code: int = EXIT_OK):
        self.data, self.text, self.code = data, text, code


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _digraph(path: str) -> Digraph:
    return formats.parse_digraph(_read(path))


def _one_based(seq) -> list[int]:
    return [v + 1 for v in seq]


# -- subcommands ------------------------------------------------------------------

def cmd_classify(args) -> Result:
    D = _digraph(args.input)
    report = classify(D, with_matrix=args.with_matrix, seed=args.seed, trials=args.trials,
                      cap=args.cap, timings=args.timings)
    data = report.to_json()
    lines = [f"verdict: {report.verdict}"]
    for key, value in data["certificates"].items():
        lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
    return Result(data, "\n".join(lines))


def cmd_kelly_width(args) -> Result:
    D = _digraph(args.input)
    data: dict = {"schema": 1}
    code = EXIT_OK
    if args.greedy:
        order = recognize_width1(D)
        data.update({"method": "greedy", "width-at-most-2": order is not None,
                     "ordering": None if order is None else _one_based(order)})
        text = ("Kelly-width <= 2, ordering " + " ".join(map(str, _one_based(order)))
                if order is not None else "greedy found no width-1 ordering (inconclusive)")
        if order is None:
            code = EXIT_NEGATIVE
    else:
        report = kelly_width_exact(D, args.cap)
        if ordering_width(D, report.ordering) != report.ordering_width:
            raise InternalConsistencyError("optimal ordering does not re-validate")
        data.update({"method": "exact", "kelly-width": report.width,
                     "ordering": _one_based(report.ordering)})
        text = f"Kelly-width {report.width}, ordering " + " ".join(map(str, _one_based(report.ordering)))
        if args.cap is not None:
            data["within-cap"] = report.within_cap
            text += f"\nwithin cap {args.cap}: {report.within_cap}"
            if not report.within_cap:
                code = EXIT_NEGATIVE
    if args.decomposition:
        KD = formats.decomposition_from_json(formats.load_json(_read(args.decomposition)))
        check = validate_kelly_decomposition(D, KD, root_rule=args.root_rule)
        data["decomposition"] = {"valid": check.valid, "width": check.width,
                                 "violations": list(check.violations), "root-rule": args.root_rule}
        text += f"\ndecomposition valid: {check.valid}, width {check.width}"
        if check.violations:
            text += ", violations: " + ", ".join(check.violations)
        if not check.valid:
            code = EXIT_NEGATIVE
    return Result(data, text, code)


def cmd_minor(args) -> Result:
    D = _digraph(args.input)
    if args.pattern_file:
        P, name = _digraph(args.pattern_file), Path(args.pattern_file).name
    else:
        P, name = CATALOG[args.pattern], args.pattern
    w = has_directed_minor(D, P, cap=args.cap, name=name)
    data = {"schema": 1, "pattern": name, "found": w is not None,
            "witness": None if w is None else w.to_json()}
    if w is None:
        return Result(data, f"{name}: not a directed minor", EXIT_NEGATIVE)
    steps = "; ".join(" ".join([s["op"], str(s["u"])] + ([str(s["w"])] if "w" in s else []))
                      for s in data["witness"]["steps"])
    return Result(data, f"{name}: found\nsteps: {steps or '(none)'}\n"
                        f"mapping: {' '.join(map(str, data['witness']['mapping']))}")


def cmd_matrix(args) -> Result:
    A = formats.parse_matrix(_read(args.matrix))
    D = _digraph(args.digraph) if args.digraph else None
    if D is not None and D.n != A.n:
        raise InputError("matrix and digraph sizes differ")
    data: dict = {"schema": 1, "n": A.n}
    if args.action == "nullity":
        k = nullity(A)
        data["nullity"] = k
        return Result(data, f"nullity {k}")
    if args.action == "asap":
        res = asap_check(A)
        data.update({"asap": res.holds, "violation-dimension": res.dimension,
                     "violation-basis": [formats.matrix_to_json(X)["entries"] for X in res.basis]})
        return Result(data, f"ASAP: {str(res.holds).lower()}"
                            + ("" if res.holds else f" (violation space dimension {res.dimension})"),
                      EXIT_OK if res.holds else EXIT_NEGATIVE)
    if D is None:
        raise InputError("the support property needs --digraph")
    res = sp_check(A, D)
    data.update({"sp": res.holds, "witness": None if res.witness is None else res.witness.to_json()})
    text = f"SP: {str(res.holds).lower()}"
    if res.witness is not None:
        text += (f"\nx = {' '.join(data['witness']['x'])}\ny = {' '.join(data['witness']['y'])}")
    return Result(data, text, EXIT_OK if res.holds else EXIT_NEGATIVE)


def cmd_reduce(args) -> Result:
    D = _digraph(args.digraph)
    A = formats.parse_matrix(_read(args.matrix))
    if D.n != A.n:
        raise InputError("matrix and digraph sizes differ")
    if not in_Q0(D, A):
        raise InputError("matrix is not in Q0 of the digraph")
    try:
        verdict = check_matrix(D, A, require_clean=not args.allow_minors)
    except InternalConsistencyError as e:
        data = {"schema": 1, "verdict": "no-sp-violation", "nullity": nullity(A), "detail": str(e)}
        return Result(data, f"nullity {nullity(A)} and no support-property violation: {e}",
                      EXIT_NEGATIVE)
    trace = [{"kind": s.kind, "vertex": s.vertex + 1, "transposed": s.transposed}
             for s in verdict.trace]
    data = {"schema": 1, "verdict": verdict.kind, "terminal": verdict.terminal, "trace": trace,
            "resettled": verdict.resettled,
            "witness": None if verdict.witness is None else verdict.witness.to_json()}
    lines = [f"verdict: {verdict.kind} ({verdict.terminal})"]
    for s in trace:
        lines.append(f"  {s['kind']} at {s['vertex']}" + (" (transposed)" if s["transposed"] else ""))
    if verdict.witness is not None:
        lines.append("x = " + " ".join(data["witness"]["x"]))
        lines.append("y = " + " ".join(data["witness"]["y"]))
    return Result(data, "\n".join(lines))


def cmd_search_nu(args) -> Result:
    D = _digraph(args.input)
    A = nu_lower_bound_search(D, args.target, args.trials, args.seed)
    data = {"schema": 1, "target": args.target, "trials": args.trials, "seed": args.seed,
            "found": A is not None, "matrix": None if A is None else formats.matrix_to_json(A)}
    if A is None:
        return Result(data, f"no certificate for nu >= {args.target} in {args.trials} trials",
                      EXIT_NEGATIVE)
    return Result(data, f"nu >= {args.target} certified by\n" + formats.format_matrix(A).rstrip())


def cmd_bipartite(args) -> Result:
    text = _read(args.input)
    if args.direction == "to":
        G, M = to_bipartite(formats.parse_digraph(text))
        out = formats.format_bigraph(G, M)
        data = {"schema": 1, "bigraph": out}
        return Result(data, out.rstrip())
    G, M = formats.parse_bigraph(text)
    if M is None:
        M = find_perfect_matching(G)
        if M is None:
            raise InputError("bigraph has no perfect matching")
    D = from_bipartite(G, M)
    return Result({"schema": 1, "digraph": formats.digraph_to_json(D)},
                  formats.format_digraph(D).rstrip())


def cmd_survey(args) -> Result:
    summary = survey(args.n, sample=args.sample, seed=args.seed, nu_trials=args.nu_trials,
                     q0_trials=args.q0_trials)
    if args.output:
        Path(args.output).write_text(formats.dumps_json(summary))
    bad = len(summary["equivalence-failures"]) + len(summary["nu-two-certificates-on-minor-free"])
    eng = summary["engine"]
    text = (f"n={args.n} {summary['mode']}: {summary['digraphs']} digraphs, "
            f"classes {summary['classes']}, equivalence failures "
            f"{len(summary['equivalence-failures'])}, nu>=2 certificates on minor-free "
            f"{len(summary['nu-two-certificates-on-minor-free'])}")
    if eng["runs"]:
        text += (f"\nengine: {eng['runs']} runs, {eng['violations']} violations, "
                 f"{len(eng['no-violation'])} without a violation")
    return Result(summary, text, EXIT_NEGATIVE if bad else EXIT_OK)


# -- parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="stablenu", parents=[common],
                                     description="Stable maximum nullity of digraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="decide nu = 0, 1 or >= 2")
    p.add_argument("--input", required=True)
    p.add_argument("--with-matrix", action="store_true", help="attach an ASAP matrix certificate")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="minor search host limit")
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("kelly-width", parents=[common], help="Kelly-width via elimination orderings")
    p.add_argument("--input", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--greedy", action="store_true")
    p.add_argument("--cap", type=int)
    p.add_argument("--decomposition", help="Kelly-decomposition JSON to validate")
    p.add_argument("--root-rule", choices=ROOT_RULES, default="guarded")
    p.set_defaults(func=cmd_kelly_width)

    p = sub.add_parser("minor", parents=[common], help="directed minor containment")
    p.add_argument("--input", required=True)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--pattern", choices=sorted(CATALOG))
    which.add_argument("--pattern-file")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser("matrix", parents=[common], help="ASAP, SP and nullity checks")
    p.add_argument("action", choices=("asap", "sp", "nullity"))
    p.add_argument("--matrix", required=True)
    p.add_argument("--digraph")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("reduce", parents=[common], help="run the reduction engine")
    p.add_argument("--digraph", required=True)
    p.add_argument("--matrix", required=True)
    p.add_argument("--allow-minors", action="store_true",
                   help="skip the forbidden-minor precondition")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("search-nu", parents=[common], help="randomized lower-bound certificates")
    p.add_argument("--input", required=True)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.set_defaults(func=cmd_search_nu)

    p = sub.add_parser("bipartite", parents=[common], help="digraph <-> bipartite correspondence")
    p.add_argument("direction", choices=("to", "from"))
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_bipartite)

    p = sub.add_parser("survey", parents=[common], help="equivalence survey on small digraphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sample", type=int)
    p.add_argument("--nu-trials", type=int, default=0)
    p.add_argument("--q0-trials", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(func=cmd_survey)
    return parser


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    args.format = getattr(args, "format", "text")
    args.seed = getattr(args, "seed", 0)
    try:
        result = args.func(args)
    except CapacityError as e:
        print(f"capacity exceeded: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        sys.stdout.write(formats.dumps_json(result.data))
    else:
        print(result.text)
    return result.code


def main() -> None:
    sys.exit(run_cli())
