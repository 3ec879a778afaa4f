"""DIMACS CNF parsing and SAT-competition style output."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .formula import Formula, clause_satisfied, literal_order


class DimacsError(ValueError):
    pass


class DimacsWarning(UserWarning):
    pass


@dataclass
class ParsedInstance:
    declared_vars: int
    declared_clauses: int
    formula: Formula
    raw_clauses: List[Tuple[int, ...]] = field(default_factory=list)
    tautologies_removed: int = 0
    duplicates_removed: int = 0
    header_mismatch: bool = False
    vars_extended: bool = False

    @property
    def num_vars(self) -> int:
        """Declared variable count, extended to the largest index seen."""
        top = max((abs(l) for c in self.raw_clauses for l in c), default=0)
        return max(self.declared_vars, top)


@dataclass
class Verdict:
    status: str  # "SAT" or "UNSAT"
    model: Optional[Dict[int, int]] = None

    def __post_init__(self):
        if self.status not in ("SAT", "UNSAT"):
            raise ValueError(f"unknown status {self.status!r}")
        if (self.status == "SAT") != (self.model is not None):
            raise ValueError("a model is present iff the verdict is SAT")

    @property
    def sat(self) -> bool:
        return self.status == "SAT"

    def satisfies(self, clauses) -> bool:
        return self.sat and all(clause_satisfied(c, self.model) for c in clauses)


def _tokens(text: str):
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("c") or s.startswith("%"):
            continue
        yield lineno, s


def parse_dimacs(text: Union[str, bytes]) -> ParsedInstance:
    """Parse DIMACS CNF text.

    Tautological clauses are dropped and repeated literals inside a clause are
    collapsed.  Header count mismatches and out-of-range variables only warn.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")

    header: Optional[Tuple[int, int]] = None
    raw: List[Tuple[int, ...]] = []
    current: List[int] = []
    for lineno, line in _tokens(text):
        if line.startswith("p"):
            if header is not None:
                raise DimacsError(f"line {lineno}: duplicate header")
            parts = line.split()
            if len(parts) > 4 and parts[4] == "0":
                raise DimacsError(f"line {lineno}: literal 0 inside header")
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                nv, nc = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: non-integer header field") from None
            if nv < 0 or nc < 0:
                raise DimacsError(f"line {lineno}: negative header count")
            header = (nv, nc)
            continue
        if header is None:
            raise DimacsError(f"line {lineno}: clause data before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: non-integer token {tok!r}") from None
            if lit == 0:
                raw.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        # unterminated final clause
        raw.append(tuple(current))

    inst = ParsedInstance(header[0], header[1], Formula(), raw_clauses=raw)
    for clause in raw:
        lits = set(clause)
        inst.duplicates_removed += len(clause) - len(lits)
        if any(-l in lits for l in lits):
            inst.tautologies_removed += 1
            continue
        inst.formula.add_clause(frozenset(lits))

    if len(raw) != header[1]:
        inst.header_mismatch = True
        warnings.warn(
            f"header declares {header[1]} clauses, found {len(raw)}", DimacsWarning
        )
    top = max((abs(l) for c in raw for l in c), default=0)
    if top > header[0]:
        inst.vars_extended = True
        warnings.warn(
            f"variable {top} exceeds declared count {header[0]}", DimacsWarning
        )
    return inst


def parse_dimacs_file(path: str) -> ParsedInstance:
    if path == "-":
        import sys

        return parse_dimacs(sys.stdin.buffer.read())
    with open(path, "rb") as fh:
        return parse_dimacs(fh.read())


def emit_dimacs(formula: Formula, num_vars: Optional[int] = None, comments=()) -> str:
    clauses = formula.clause_list()
    if num_vars is None:
        num_vars = max(formula.variables(), default=0)
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {num_vars} {len(clauses)}")
    for clause in clauses:
        lits = sorted(clause, key=literal_order)
        lines.append(" ".join(str(l) for l in lits + [0]))
    return "\n".join(lines) + "\n"


def emit_result(verdict: Verdict) -> str:
    if not verdict.sat:
        return "s UNSATISFIABLE\n"
    lits = [v if verdict.model[v] else -v for v in sorted(verdict.model)]
    return "s SATISFIABLE\nv " + " ".join(str(l) for l in lits + [0]) + "\n"
