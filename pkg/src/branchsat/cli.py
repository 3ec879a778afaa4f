"""Command-line entry point.

Verbs: ``solve``, ``audit``, ``factor``, ``gen``, ``bench``.  Exit codes for
``solve`` follow the SAT-competition convention (10 SAT, 20 UNSAT); 1 means
bad input, 2 a node-budget abort, 3 a strict-audit violation and 4 an oracle
disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import List, Optional

from .analysis import branching_factor
from .dimacs import DimacsError, emit_dimacs, emit_result, parse_dimacs_file
from .generators import GenConfig, GenerationError, generate, read_manifest
from .oracle import solve_exhaustive
from .search import AuditFailure, BudgetExceeded, SolverConfig, solve

EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_INPUT = 1
EXIT_BUDGET = 2
EXIT_AUDIT = 3
EXIT_ORACLE = 4

ORACLE_MAX_VARS = 14


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _err(msg: str) -> None:
    print(f"c {msg}", file=sys.stderr)


def _solver_args(p):
    p.add_argument("input", help="DIMACS file, or - for standard input")
    p.add_argument("--stats", metavar="PATH", help="write the JSON stats document here")
    p.add_argument("--strict-audit", action="store_true", help="abort on the first audit violation")
    p.add_argument("--trace", action="store_true", help="log every reduction rule application to stderr")
    p.add_argument("--node-budget", type=int, default=10 ** 7)
    p.add_argument("--branch-order", choices=("true-first", "false-first"), default="true-first")
    p.add_argument("--seed", type=int, default=0, help="accepted for symmetry with gen/bench; unused")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="branchsat", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="decide a DIMACS instance")
    _solver_args(p)
    p.add_argument("--audit", action="store_true", help="write the per-node audit log to stderr")
    p.add_argument("--exhaustive-audit", action="store_true", help="explore both branches at every node")
    p.add_argument("--oracle-check", action="store_true",
                   help=f"cross-check the verdict by enumeration (n <= {ORACLE_MAX_VARS})")

    p = sub.add_parser("audit", help="solve in exhaustive-audit mode and print the audit log")
    _solver_args(p)

    p = sub.add_parser("factor", help="branching factor of a vector")
    p.add_argument("components", nargs="+", type=int)

    p = sub.add_parser("gen", help="emit a generated instance as DIMACS")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--widths", default="3", help="comma-separated clause widths")
    p.add_argument("--mode", default="uniform", choices=("uniform", "degree3-adversarial", "reduced-fuzz"))

    p = sub.add_parser("bench", help="solve every instance of a manifest, one JSON row each")
    p.add_argument("manifest", help="manifest file (one 'seed=... mode=... n=... m=... widths=...' per line)")
    p.add_argument("--stats", metavar="PATH", help="write the rows here instead of stdout")
    p.add_argument("--exhaustive-audit", action="store_true")
    p.add_argument("--node-budget", type=int, default=10 ** 7)
    p.add_argument("--seed", type=int, default=0, help="added to every manifest seed")
    return ap


def _config(args, exhaustive: bool, audit_log=None) -> SolverConfig:
    tracer = None
    if getattr(args, "trace", False):
        def tracer(rule, what, before, after):
            print(f"c trace {rule} {what} m={before}->{after}", file=sys.stderr)
    return SolverConfig(
        exhaustive=exhaustive,
        strict_audit=getattr(args, "strict_audit", False),
        node_budget=args.node_budget,
        true_first=getattr(args, "branch_order", "true-first") == "true-first",
        audit_log=audit_log,
        tracer=tracer,
    )


def _load(path: str):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        inst = parse_dimacs_file(path)
    for w in caught:
        _err(f"warning: {w.message}")
    return inst


def _write_stats(path: Optional[str], stats: dict) -> None:
    if path:
        with open(path, "w") as fh:
            json.dump(stats, fh, indent=2, sort_keys=False)
            fh.write("\n")


def cmd_solve(args) -> int:
    try:
        inst = _load(args.input)
    except (OSError, DimacsError) as exc:
        _err(f"input error: {exc}")
        return EXIT_INPUT

    audit_log = None
    if args.audit:
        audit_log = lambda res: print(f"c audit {res.line()}", file=sys.stderr)
    cfg = _config(args, args.exhaustive_audit, audit_log)
    try:
        verdict, report = solve(inst.formula, cfg)
    except BudgetExceeded as exc:
        _err(f"aborted: {exc}")
        return EXIT_BUDGET
    except AuditFailure as exc:
        _err(f"audit violation: {exc}")
        return EXIT_AUDIT

    # extend the model to every declared variable and check the raw clauses
    if verdict.sat:
        full = {v: verdict.model.get(v, 0) for v in range(1, inst.num_vars + 1)}
        verdict.model = full
        if not verdict.satisfies(inst.raw_clauses):
            _err("internal error: model does not satisfy the input clauses")
            return EXIT_AUDIT

    if args.oracle_check:
        n = inst.formula.n
        if n > ORACLE_MAX_VARS:
            _err(f"oracle check refused: {n} variables exceeds the limit of {ORACLE_MAX_VARS}")
        else:
            expected = solve_exhaustive(inst.raw_clauses).status
            if expected != verdict.status:
                _err(f"oracle disagreement: solver {verdict.status}, oracle {expected}")
                return EXIT_ORACLE
            _err("oracle check passed")

    sys.stdout.write(emit_result(verdict))
    _write_stats(args.stats, report.stats())
    return EXIT_SAT if verdict.sat else EXIT_UNSAT


def cmd_audit(args) -> int:
    try:
        inst = _load(args.input)
    except (OSError, DimacsError) as exc:
        _err(f"input error: {exc}")
        return EXIT_INPUT
    lines: List[str] = []
    cfg = _config(args, True, lambda res: lines.append(res.line()))
    try:
        verdict, report = solve(inst.formula, cfg)
    except BudgetExceeded as exc:
        _err(f"aborted: {exc}")
        return EXIT_BUDGET
    except AuditFailure as exc:
        for line in lines:
            print(line)
        _err(f"audit violation: {exc}")
        return EXIT_AUDIT
    for line in lines:
        print(line)
    s = report.stats()
    print(f"summary verdict={s['verdict']} m={s['m']} branching_nodes={s['branching_nodes']} "
          f"audited={report.audited_nodes} violations={report.audit_violations} "
          f"(potential={report.potential_violations} cover={report.cover_violations} "
          f"claims={report.claim_violations}) potential_ratio={s['potential_ratio']:.6g}")
    _write_stats(args.stats, s)
    return 0 if report.audit_violations == 0 else EXIT_AUDIT


def cmd_factor(args) -> int:
    try:
        res = branching_factor(args.components)
    except ValueError as exc:
        _err(f"input error: {exc}")
        return EXIT_INPUT
    print(f"{res.factor:.6f}")
    return 0


def cmd_gen(args) -> int:
    try:
        cfg = GenConfig(seed=args.seed, n=args.n, m=args.m,
                        widths=tuple(int(w) for w in args.widths.split(",")), mode=args.mode)
        f = generate(cfg)
    except (ValueError, GenerationError) as exc:
        _err(f"input error: {exc}")
        return EXIT_INPUT
    sys.stdout.write(emit_dimacs(f, num_vars=max(args.n, max(f.variables(), default=0)),
                                 comments=[cfg.to_line()]))
    return 0


def cmd_bench(args) -> int:
    try:
        with open(args.manifest) as fh:
            configs = read_manifest(fh.read())
    except (OSError, ValueError) as exc:
        _err(f"input error: {exc}")
        return EXIT_INPUT
    rows = []
    for cfg in configs:
        if args.seed:
            cfg = GenConfig(cfg.seed + args.seed, cfg.n, cfg.m, cfg.widths, cfg.mode)
        try:
            f = generate(cfg)
            _, report = solve(f, _config(args, args.exhaustive_audit))
        except GenerationError as exc:
            _err(f"skipping {cfg.to_line()}: {exc}")
            continue
        except BudgetExceeded as exc:
            _err(f"aborted on {cfg.to_line()}: {exc}")
            return EXIT_BUDGET
        row = {"instance": cfg.to_line()}
        row.update(report.stats())
        rows.append(json.dumps(row, sort_keys=False))
    text = "".join(r + "\n" for r in rows)
    if args.stats:
        with open(args.stats, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


COMMANDS = {
    "solve": cmd_solve,
    "audit": cmd_audit,
    "factor": cmd_factor,
    "gen": cmd_gen,
    "bench": cmd_bench,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.verb](args)


if __name__ == "__main__":
    sys.exit(main())
