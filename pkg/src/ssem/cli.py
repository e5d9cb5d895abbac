"""Command line entry point.

Every subcommand prints one v1 report (``--format text`` or ``json``) and
exits with 0 (pass), 1 (failed, counterexamples listed), 2 (usage or parse
error) or 3 (inconclusive because a bound was hit).
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence, Tuple

from . import nqueens
from .checks import (
    FAIL,
    PASS,
    TRUNCATED,
    CheckReport,
    SpecBounds,
    check_completeness,
    check_correctness,
    check_level_mapping,
    default_jobs,
)
from .semantics import ground_instances, herbrand_alphabet, herbrand_tp, iterate
from .sld import Limits, Solver, UnknownPredicate, answer_set
from .syntax import ParseError, parse_program, parse_query, report_encode, to_text
from .terms import Program

EXIT = {PASS: 0, FAIL: 1, TRUNCATED: 3}

P1_TEXT = "p(f(X)).\np(f(a)).\n"
P2_TEXT = "p(f(X)).\n"

BUILTINS = {
    "nqueens": lambda: nqueens.program(),
    "nqueens-full": lambda: nqueens.program(full=True),
    "p1": lambda: parse_program(P1_TEXT),
    "p2": lambda: parse_program(P2_TEXT),
}


class UsageError(Exception):
    pass


def _load(args) -> Tuple[Program, str]:
    if args.file:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {args.file}: {e.strerror}") from e
        prog, name = parse_program(text), args.file
    else:
        prog, name = BUILTINS[args.builtin](), args.builtin
    if args.mutant:
        if args.file or args.builtin != "nqueens":
            raise UsageError("--mutant applies to the builtin nqueens program only")
        prog, name = nqueens.mutant(args.mutant), f"nqueens:{args.mutant}"
    return prog, name


def _bounds(args) -> SpecBounds:
    try:
        return SpecBounds.parse(args.bounds) if args.bounds else SpecBounds()
    except ValueError as e:
        raise UsageError(f"bad --bounds: {e}") from e


def _report(check, name, verdict="pass", bounds="-", spec="-", **kw) -> CheckReport:
    return CheckReport(check=check, program=name, spec=spec, verdict=verdict, bounds=bounds, **kw)


# -- subcommands -------------------------------------------------------------

def cmd_solve(args) -> CheckReport:
    prog, name = _load(args)
    query = parse_query(args.query)
    solver = Solver(prog, query, Limits(args.max_depth, args.max_answers, args.max_height))
    items = []
    for ans in solver:
        items.append({"answer": to_text(ans.substitution), "instance": to_text(ans.instance)})
    verdict = TRUNCATED if solver.status == "truncated" else PASS
    bounds = f"max_depth={args.max_depth},max_height={args.max_height},max_answers={args.max_answers}"
    return _report(
        "solve", name, verdict, bounds,
        statistics={"answers": len(items), "steps": solver.steps, "status": solver.status},
        items=items,
    )


def cmd_s_model(args) -> CheckReport:
    prog, name = _load(args)
    interp = iterate(prog, args.iters, max_atoms=args.max_atoms)
    atoms = list(interp.atoms)
    if args.pred:
        atoms = [a for a in atoms if a.functor == args.pred or f"{a.functor}/{a.arity}" == args.pred]
    if args.figure:
        from .plotting import plot_iteration_sizes

        names = sorted({k for d in interp.pred_sizes for k in d})
        series = {k: [d.get(k, 0) for d in interp.pred_sizes] for k in names}
        plot_iteration_sizes(series, args.figure, title=name)
    return _report(
        "s-model", name, TRUNCATED if interp.truncated else PASS,
        f"iters={args.iters},max_atoms={args.max_atoms}",
        statistics={
            "iterations": interp.iterations,
            "fixpoint": interp.fixpoint,
            "classes": len(interp.atoms),
            "listed": len(atoms),
            "sizes": ",".join(map(str, interp.sizes)) or "-",
        },
        items=[{"atom": to_text(a)} for a in atoms],
    )


def _parse_alphabet(text: Optional[str], prog: Program):
    if not text:
        return herbrand_alphabet(prog)
    out = []
    for part in text.split(","):
        f, _, n = part.strip().partition("/")
        if not f or not n.isdigit():
            raise UsageError(f"bad alphabet symbol {part!r}, expected name/arity")
        out.append((f, int(n)))
    return out


def _bridge(prog: Program, iters: int, depth: int, alphabet):
    ground = herbrand_tp(prog, iters, depth, alphabet)
    lifted = ground_instances(iterate(prog, iters).atoms, depth, alphabet)
    return ground, lifted


def cmd_herbrand(args) -> CheckReport:
    prog, name = _load(args)
    alphabet = _parse_alphabet(args.alphabet, prog)
    ground, lifted = _bridge(prog, args.iters, args.depth, alphabet)
    diff = sorted(to_text(a) for a in ground ^ lifted)
    report = _report(
        "herbrand", name, PASS if not diff else FAIL,
        f"iters={args.iters},depth={args.depth}",
        statistics={
            "alphabet": ",".join(f"{f}/{n}" for f, n in alphabet),
            "ground_atoms": len(ground),
            "lifted_atoms": len(lifted),
            "bridge_equal": not diff,
        },
        items=[{"atom": t} for t in sorted(to_text(a) for a in ground)],
    )
    for t in diff[:10]:
        side = "ground-only" if any(to_text(a) == t for a in ground) else "lifted-only"
        report.counterexamples.append({"atom": t, "side": side})
    return report


def _spec(args):
    try:
        return nqueens.SPECS[args.spec]
    except KeyError:
        raise UsageError(f"unknown spec {args.spec!r}; choose from {', '.join(nqueens.SPECS)}") from None


def cmd_check_correctness(args) -> CheckReport:
    prog, name = _load(args)
    return check_correctness(
        prog, _spec(args), _bounds(args), max_tuples=args.max_tuples, jobs=args.jobs, program_name=name
    )


def cmd_check_completeness(args) -> CheckReport:
    prog, name = _load(args)
    spec = _spec(args)
    if spec.level is None:
        raise UsageError(f"spec {spec.name} has no level mapping")
    witness = None if args.generic_search else nqueens.completeness_witness
    report = check_completeness(
        prog, spec, _bounds(args), witness=witness, max_tuples=args.max_tuples, program_name=name
    )
    if args.figure:
        from .plotting import plot_levels

        plot_levels(report.targets or [], args.figure, title=f"{name} / {spec.name}")
    return report


def cmd_check_levels(args) -> CheckReport:
    spec = _spec(args)
    if spec.level is None:
        raise UsageError(f"spec {spec.name} has no level mapping")
    return check_level_mapping(spec, _bounds(args), seed=args.seed, renamings=args.renamings)


def cmd_queens(args) -> CheckReport:
    prog, name = _load(args)
    solver = Solver(prog, nqueens.queens_query(args.n), Limits(max_depth=args.max_depth))
    found = []
    for ans in solver:
        found.append(nqueens.extract_solution(ans))
    report = _report(
        "queens", name, TRUNCATED if solver.status == "truncated" else PASS,
        f"n={args.n},max_depth={args.max_depth}",
        statistics={"solutions": len(found), "steps": solver.steps},
        items=[{"columns": ",".join(map(str, s)) or "-"} for s in found],
    )
    if args.oracle:
        oracle = nqueens.brute_force_queens(args.n)
        got = set(found)
        report.statistics["oracle_solutions"] = len(oracle)
        report.statistics["oracle_match"] = got == oracle and len(got) == len(found)
        for s in sorted(oracle - got):
            report.counterexamples.append({"missing": ",".join(map(str, s))})
        for s in sorted(got - oracle):
            report.counterexamples.append({"unexpected": ",".join(map(str, s))})
        if len(got) != len(found):
            report.counterexamples.append({"duplicates": len(found) - len(got)})
        if report.counterexamples:
            report.verdict = FAIL
    if args.figure:
        from .plotting import plot_boards

        plot_boards(found, args.figure)
    return report


def cmd_demo_s2(args) -> CheckReport:
    alphabet = [("a", 0), ("f", 1)]
    stats = {}
    items = []
    counts = {}
    bridges = []
    for label, text in (("p1", P1_TEXT), ("p2", P2_TEXT)):
        prog = parse_program(text)
        interp = iterate(prog, args.iters)
        answers, status = answer_set(prog, parse_query("p(Y)"))
        ground, lifted = _bridge(prog, args.iters, args.depth, alphabet)
        counts[label] = (len(interp.atoms), len(answers))
        bridges.append(ground)
        stats[f"{label}.classes"] = len(interp.atoms)
        stats[f"{label}.fixpoint"] = interp.fixpoint
        stats[f"{label}.iterations"] = interp.iterations
        stats[f"{label}.answers"] = len(answers)
        stats[f"{label}.ground_atoms"] = len(ground)
        stats[f"{label}.bridge_equal"] = ground == lifted
        for a in interp.atoms:
            items.append({"program": label, "class": to_text(a)})
    stats["herbrand_equal"] = bridges[0] == bridges[1]
    ok = counts["p1"] == (2, 2) and counts["p2"] == (1, 1) and stats["herbrand_equal"]
    return _report(
        "demo-s2", "p1,p2", PASS if ok else FAIL,
        f"iters={args.iters},depth={args.depth}",
        statistics=stats, items=items,
    )


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--timing", action="store_true", help="include elapsed_seconds in the report")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sampling")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")

    source = argparse.ArgumentParser(add_help=False)
    group = source.add_mutually_exclusive_group()
    group.add_argument("--file", help="program file (overrides --builtin)")
    group.add_argument("--builtin", choices=sorted(BUILTINS), default="nqueens")
    source.add_argument("--mutant", choices=sorted(nqueens.MUTANT_TEXT), help="mutated nqueens program")

    checks = argparse.ArgumentParser(add_help=False)
    checks.add_argument("--bounds", help="e.g. i=3,len=6,vars=2,junk=1")
    checks.add_argument("--max-tuples", type=int)

    parser = argparse.ArgumentParser(prog="ssem", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("solve", parents=[common, source], help="SLD answers of a query")
    p.add_argument("query", help='e.g. "p(Y)" or "?- pqs(4,[A,B,C,D],_,_)."')
    p.add_argument("--max-depth", type=int, default=10_000)
    p.add_argument("--max-height", type=int)
    p.add_argument("--max-answers", type=int)
    p.set_defaults(run=cmd_solve)

    p = sub.add_parser("s-model", parents=[common, source], help="bottom-up iterates of the s-semantics")
    p.add_argument("--iters", type=int, default=10)
    p.add_argument("--max-atoms", type=int)
    p.add_argument("--pred", help="list only this predicate (name or name/arity)")
    p.add_argument("--figure", help="plot classes per iteration to this file")
    p.set_defaults(run=cmd_s_model)

    p = sub.add_parser("herbrand", parents=[common, source], help="ground iterates and the bridge to the s-model")
    p.add_argument("--iters", type=int, default=4)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--alphabet", help="e.g. a/0,f/1 (default: the program's symbols)")
    p.set_defaults(run=cmd_herbrand)

    p = sub.add_parser("check-correctness", parents=[common, source, checks], help="bounded correctness check")
    p.add_argument("--spec", default="S")
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.set_defaults(run=cmd_check_correctness)

    p = sub.add_parser("check-completeness", parents=[common, source, checks], help="bounded completeness check")
    p.add_argument("--spec", default="S0")
    p.add_argument("--generic-search", action="store_true", help="search witnesses instead of constructing them")
    p.add_argument("--figure", help="plot the level histogram to this file")
    p.set_defaults(run=cmd_check_completeness)

    p = sub.add_parser("check-levels", parents=[common, checks], help="level mapping is invariant under renaming")
    p.add_argument("--spec", default="S")
    p.add_argument("--renamings", type=int, default=3)
    p.set_defaults(run=cmd_check_levels)

    p = sub.add_parser("queens", parents=[common, source], help="solve n-queens with the program")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="compare with brute force")
    p.add_argument("--max-depth", type=int, default=100_000)
    p.add_argument("--figure", help="draw the boards to this file")
    p.set_defaults(run=cmd_queens)

    p = sub.add_parser("demo-s2", parents=[common], help="two programs, one Herbrand model, different answers")
    p.add_argument("--iters", type=int, default=2)
    p.add_argument("--depth", type=int, default=4)
    p.set_defaults(run=cmd_demo_s2)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        report = args.run(args)
    except (UsageError, ParseError, UnknownPredicate) as e:
        msg = f"unknown predicate {e.args[0]}" if isinstance(e, UnknownPredicate) else str(e)
        print(f"ssem {args.command}: {msg}", file=sys.stderr)
        return 2
    text = report_encode(report, args.format, timing=args.timing)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            sys.stderr.close()
    return EXIT[report.verdict]


if __name__ == "__main__":
    sys.exit(main())
