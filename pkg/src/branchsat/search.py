"""Branch-and-reduce search with per-node audits."""

from __future__ import annotations

import hashlib
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .analysis import BAD, DEFAULT_CONSTANTS, GOOD, PotentialConstants, covers, potential
from .cases import BranchDecision, select_branch
from .dimacs import Verdict
from .formula import Formula, _assign_inplace, clause_satisfied, var
from .reducer import (
    BranchAssign,
    ReduceAssign,
    Resolution,
    SubsumptionDelete,
    TrailEvent,
    Tracer,
    classify,
    reduce_inplace,
)


class BudgetExceeded(RuntimeError):
    pass


class AuditFailure(RuntimeError):
    pass


class ReconstructionError(AssertionError):
    pass


@dataclass
class SolverConfig:
    exhaustive: bool = False  # explore both children even after SAT
    audit: bool = True
    strict_audit: bool = False
    node_budget: int = 10 ** 7
    true_first: bool = True  # explore literal=1 before literal=0
    constants: PotentialConstants = DEFAULT_CONSTANTS
    keep_audit_records: bool = False
    audit_log: Optional[Callable[["AuditResult"], None]] = None
    tracer: Optional[Tracer] = None


@dataclass
class SearchNode:
    m: int
    label: str
    decision: BranchDecision
    child_m: Tuple[int, int]
    child_labels: Tuple[str, str]
    depth: int = 0

    @property
    def decreases(self) -> Tuple[int, int]:
        return (self.m - self.child_m[0], self.m - self.child_m[1])


@dataclass
class AuditResult:
    node: SearchNode
    potential_ok: bool
    cover_ok: bool
    claims_ok: bool
    lhs: float
    rhs: float

    @property
    def ok(self) -> bool:
        return self.potential_ok and self.cover_ok and self.claims_ok

    def violations(self) -> int:
        return (not self.potential_ok) + (not self.cover_ok) + (not self.claims_ok)

    def line(self) -> str:
        n = self.node
        d = n.decision
        return (
            f"depth={n.depth} m={n.m} class={n.label} case={d.case} lit={d.literal} "
            f"vector={d.vector[0]},{d.vector[1]} dec={n.decreases[0]},{n.decreases[1]} "
            f"children={n.child_labels[0]},{n.child_labels[1]} "
            f"phi={self.lhs:.6g}<={self.rhs:.6g} "
            f"{'ok' if self.ok else 'VIOLATION'}"
            + ("" if self.potential_ok else " potential")
            + ("" if self.cover_ok else " cover")
            + ("" if self.claims_ok else " claim")
        )


@dataclass
class SolveReport:
    verdict: str = ""
    m: int = 0
    n: int = 0
    root_label: str = GOOD
    branching_nodes: int = 0
    max_depth: int = 0
    case_tallies: Counter = field(default_factory=Counter)
    reductions: Counter = field(default_factory=Counter)
    potential_violations: int = 0
    cover_violations: int = 0
    claim_violations: int = 0
    audited_nodes: int = 0
    root_potential: float = 0.0
    elapsed_ms: float = 0.0
    trace_hash: str = ""
    audit_records: List[AuditResult] = field(default_factory=list)

    @property
    def audit_violations(self) -> int:
        return self.potential_violations + self.cover_violations + self.claim_violations

    @property
    def potential_ratio(self) -> float:
        return (self.branching_nodes + 1) / self.root_potential

    def stats(self) -> dict:
        return {
            "verdict": self.verdict,
            "m": self.m,
            "n": self.n,
            "branching_nodes": self.branching_nodes,
            "max_depth": self.max_depth,
            "case_tallies": dict(sorted(self.case_tallies.items())),
            "reductions": dict(sorted(self.reductions.items())),
            "audit_violations": self.audit_violations,
            "potential_ratio": self.potential_ratio,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "trace_hash": self.trace_hash,
        }


def node_potential(m: int, label: str, k: PotentialConstants = DEFAULT_CONSTANTS) -> float:
    return potential(m, label, k)


def audit_node(node: SearchNode, k: PotentialConstants = DEFAULT_CONSTANTS) -> AuditResult:
    """Check a branching node against its guarantees.

    * the potential of the two children does not exceed that of the node;
    * the measured clause decreases cover the case's vector;
    * each child claimed good is good, or decreased one clause more than claimed.
    """
    lhs = potential(node.child_m[0], node.child_labels[0], k) + potential(
        node.child_m[1], node.child_labels[1], k
    )
    rhs = potential(node.m, node.label, k)
    dec = node.decreases
    vec = node.decision.vector
    cover_ok = covers(vec, dec)
    claims_ok = all(
        not claimed or child == GOOD or got >= want + 1
        for claimed, child, got, want in zip(
            node.decision.claims, node.child_labels, dec, vec
        )
    )
    return AuditResult(node, lhs <= rhs, cover_ok, claims_ok, lhs, rhs)


def reconstruct_model(
    trail: Iterable[TrailEvent], leaf: Optional[Dict[int, int]] = None
) -> Dict[int, int]:
    """Replay ``trail`` backwards to extend a model of the final formula.

    Unassigned variables read as 0.  A resolved variable is set to 1 exactly
    when one of its positive clauses is otherwise unsatisfied.
    """
    model: Dict[int, int] = dict(leaf or {})
    for event in reversed(list(trail)):
        if isinstance(event, (ReduceAssign, BranchAssign)):
            lit = event.literal
            model[var(lit)] = 1 if lit > 0 else 0
        elif isinstance(event, Resolution):
            v = event.variable
            model.pop(v, None)
            pos_open = any(not clause_satisfied(c - {v}, model) for c in event.pos_clauses)
            neg_open = any(not clause_satisfied(c - {-v}, model) for c in event.neg_clauses)
            if pos_open and neg_open:
                raise ReconstructionError(f"both sides of resolved variable {v} unsatisfied")
            model[v] = 1 if pos_open else 0
    return model


class _Search:
    def __init__(self, config: SolverConfig, report: SolveReport):
        self.cfg = config
        self.report = report
        self.trail: List[TrailEvent] = []
        self.model: Optional[Dict[int, int]] = None
        self.hasher = hashlib.sha256()

    def reduce(self, f: Formula) -> List[TrailEvent]:
        return reduce_inplace(f, self.report.reductions, self.cfg.tracer)

    def child(self, f: Formula, lit: int) -> Tuple[Formula, List[TrailEvent]]:
        g = f.copy()
        _assign_inplace(g, lit)
        return g, self.reduce(g)

    def on_sat(self):
        if self.model is None:
            self.model = reconstruct_model(self.trail)

    def run(self, f: Formula, depth: int) -> bool:
        """Explore a reduced formula; True iff satisfiable."""
        rep = self.report
        cfg = self.cfg
        k = cfg.constants
        mark = len(self.trail)
        try:
            while True:
                if depth > rep.max_depth:
                    rep.max_depth = depth
                if f.is_empty():
                    self.on_sat()
                    return True
                if f.has_empty_clause():
                    return False
                label = classify(f)
                decision = select_branch(f, label)
                rep.case_tallies[decision.case] += 1
                if decision.zero_branch:
                    before = potential(f.m, label, k)
                    _assign_inplace(f, decision.literal)
                    self.trail.append(ReduceAssign(decision.literal, decision.case))
                    self.trail.extend(self.reduce(f))
                    after = potential(f.m, classify(f), k)
                    if cfg.audit and after > before:
                        rep.potential_violations += 1
                        if cfg.strict_audit:
                            raise AuditFailure(f"{decision.case}: potential rose")
                    self.hasher.update(f"z{depth}:{decision.case}:{decision.literal};".encode())
                    continue
                break

            rep.branching_nodes += 1
            if rep.branching_nodes > cfg.node_budget:
                raise BudgetExceeded(f"more than {cfg.node_budget} branching nodes")
            x = decision.literal
            self.hasher.update(f"b{depth}:{f.m}:{decision.case}:{x};".encode())

            sides = [(x, *self.child(f, x)), (-x, *self.child(f, -x))]
            if cfg.audit:
                node = SearchNode(
                    f.m, label, decision,
                    (sides[0][1].m, sides[1][1].m),
                    (classify(sides[0][1]), classify(sides[1][1])),
                    depth,
                )
                res = audit_node(node, k)
                rep.audited_nodes += 1
                rep.potential_violations += not res.potential_ok
                rep.cover_violations += not res.cover_ok
                rep.claim_violations += not res.claims_ok
                if cfg.keep_audit_records:
                    rep.audit_records.append(res)
                if cfg.audit_log:
                    cfg.audit_log(res)
                if cfg.strict_audit and not res.ok:
                    raise AuditFailure(res.line())

            if not cfg.true_first:
                sides.reverse()
            found = False
            for i, (lit, g, events) in enumerate(sides):
                base = len(self.trail)
                self.trail.append(BranchAssign(lit, i))
                self.trail.extend(events)
                if self.run(g, depth + 1):
                    found = True
                del self.trail[base:]
                if found and not cfg.exhaustive:
                    break
            return found
        finally:
            del self.trail[mark:]


def solve(formula: Formula, config: Optional[SolverConfig] = None) -> Tuple[Verdict, SolveReport]:
    """Decide satisfiability of ``formula``.

    Returns the verdict (with a model checked against ``formula`` when
    satisfiable) and a report of the search.
    """
    cfg = config or SolverConfig()
    start = time.perf_counter()
    rep = SolveReport(m=formula.m, n=formula.n)
    rep.root_label = classify(formula)
    rep.root_potential = potential(formula.m, rep.root_label, cfg.constants)

    search = _Search(cfg, rep)
    f = formula.copy()
    search.trail.extend(search.reduce(f))
    limit = sys.getrecursionlimit()
    if limit < 4 * formula.n + 1000:
        sys.setrecursionlimit(4 * formula.n + 1000)
    sat = search.run(f, 0)

    if sat:
        model = {v: search.model.get(v, 0) for v in sorted(formula.variables())}
        if not formula.satisfied_by(model):
            raise ReconstructionError("reconstructed model does not satisfy the input")
        verdict = Verdict("SAT", model)
    else:
        verdict = Verdict("UNSAT")
    rep.verdict = verdict.status
    search.hasher.update(
        f"{verdict.status}:{rep.branching_nodes}:{rep.max_depth}:"
        f"{sorted(rep.case_tallies.items())}:{sorted(rep.reductions.items())}".encode()
    )
    rep.trace_hash = search.hasher.hexdigest()
    rep.elapsed_ms = (time.perf_counter() - start) * 1000
    return verdict, rep
