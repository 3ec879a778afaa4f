"""The five reduction rules, the reduced-form fixpoint and good/bad classification.

Every rule comes in two flavours: a private ``_rN`` that mutates a formula in
place and returns the trail events it produced (or ``None`` when the rule does
not apply), and a public ``ruleN_*`` wrapper that works on a copy.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Set, Tuple, Union

from .analysis import BAD, GOOD
from .formula import Clause, Formula, _assign_inplace, coincident_pairs, literal_order, var


# -- trail events ------------------------------------------------------------


@dataclass(frozen=True)
class ReduceAssign:
    literal: int
    rule: str


@dataclass(frozen=True)
class Resolution:
    variable: int
    pos_clauses: Tuple[Clause, ...]
    neg_clauses: Tuple[Clause, ...]


@dataclass(frozen=True)
class SubsumptionDelete:
    clause_id: int
    clause: Clause


@dataclass(frozen=True)
class BranchAssign:
    literal: int
    side: int  # 0 for the first explored child, 1 for the second


TrailEvent = Union[ReduceAssign, Resolution, SubsumptionDelete, BranchAssign]
Tracer = Callable[[str, str, int, int], None]


# -- rule implementations (in place) -----------------------------------------


def _assign_many(f: Formula, lits: Sequence[int], rule: str) -> List[TrailEvent]:
    events: List[TrailEvent] = []
    for lit in lits:
        _assign_inplace(f, lit)
        events.append(ReduceAssign(lit, rule))
    return events


def _r1(f: Formula) -> Optional[List[TrailEvent]]:
    for cid in sorted(f.clauses):
        clause = f.clauses[cid]
        if len(clause) == 1:
            (lit,) = clause
            return _assign_many(f, [lit], "R1")
    occ = f.occ
    for lit in sorted(occ, key=literal_order):
        if -lit not in occ:
            return _assign_many(f, [lit], "R1")
    return None


def _r2(f: Formula) -> Optional[List[TrailEvent]]:
    clauses = f.clauses
    occ = f.occ
    for cid in sorted(clauses, key=lambda i: (len(clauses[i]), i)):
        c = clauses[cid]
        if c:
            pivot = min(c, key=lambda l: len(occ[l]))
            candidates = occ[pivot]
        else:
            candidates = clauses.keys()
        n = len(c)
        for other in sorted(candidates):
            if other == cid:
                continue
            d = clauses[other]
            if len(d) >= n and c <= d:
                f.remove_clause(other)
                return [SubsumptionDelete(other, d)]
    return None


def _resolve_inplace(f: Formula, v: int) -> Resolution:
    pos_ids = sorted(f.occ.get(v, ()))
    neg_ids = sorted(f.occ.get(-v, ()))
    pos = tuple(f.clauses[i] for i in pos_ids)
    negs = tuple(f.clauses[i] for i in neg_ids)
    for i in pos_ids + neg_ids:
        f.remove_clause(i)
    for e in pos:
        e_rest = e - {v}
        for d in negs:
            d_rest = d - {-v}
            if any(-l in d_rest for l in e_rest):
                continue
            f.add_clause(e_rest | d_rest)
    return Resolution(v, pos, negs)


def _r3(f: Formula) -> Optional[List[TrailEvent]]:
    # strictly decreasing (1,b) resolutions are preferred over (2,2) ones
    occ = f.occ
    pick22 = None
    for lit in sorted(occ, key=literal_order):
        a = len(occ[lit])
        b = len(occ.get(-lit, ()))
        if a == 1 and b >= 1:
            return [_resolve_inplace(f, var(lit))]
        if pick22 is None and a == 2 and b == 2:
            pick22 = lit
    if pick22 is not None:
        return [_resolve_inplace(f, var(pick22))]
    return None


def _degrees(f: Formula):
    occ = f.occ
    return {lit: (len(occ[lit]), len(occ.get(-lit, ()))) for lit in occ}


def _r4(f: Formula) -> Optional[List[TrailEvent]]:
    deg = _degrees(f)
    low = [l for l, (a, b) in deg.items() if a == 2 and b >= 3]
    if not low:
        return None
    high = {l for l, (a, b) in deg.items() if a >= 3 and b == 2}
    for lit in low:
        for cid in f.occ[lit]:
            if not (f.clauses[cid] & high):
                return None
    return _assign_many(f, sorted(high, key=literal_order), "R4")


def _r5(f: Formula) -> Optional[List[TrailEvent]]:
    deg = _degrees(f)
    four3 = {l for l, d in deg.items() if d == (4, 3)}
    if not four3:
        return None
    three3 = {l for l, (a, b) in deg.items() if a == 3 and b >= 3}
    members = set()
    for lit in four3:
        if any(f.clauses[cid] & three3 for cid in f.occ[lit]):
            members.add(lit)
    if not members:
        return None
    for lit in members:
        for cid in f.occ.get(-lit, ()):
            if not (f.clauses[cid] & four3):
                return None
    return _assign_many(f, sorted(members, key=literal_order), "R5")


def _collapse_conflict(f: Formula) -> List[TrailEvent]:
    """Keep a single empty clause; it subsumes everything else."""
    keep = min(f._empty)
    events: List[TrailEvent] = []
    for cid in sorted(f.clauses):
        if cid != keep:
            events.append(SubsumptionDelete(cid, f.remove_clause(cid)))
    return events


RULES = (("R1", _r1), ("R2", _r2), ("R3", _r3), ("R4", _r4), ("R5", _r5))


def reduce_inplace(
    f: Formula,
    counts: Optional[Counter] = None,
    tracer: Optional[Tracer] = None,
) -> List[TrailEvent]:
    """Apply rules by priority R1 > R2 > R3 > R4 > R5 until none applies.

    Each application restarts from R1.  An empty clause stops the loop after
    collapsing the formula to that single clause.
    """
    trail: List[TrailEvent] = []
    while True:
        if f._empty:
            if f.m > 1:
                before = f.m
                trail.extend(_collapse_conflict(f))
                if counts is not None:
                    counts["R2"] += 1
                if tracer:
                    tracer("R2", "empty-clause", before, f.m)
            return trail
        for name, rule in RULES:
            before = f.m
            events = rule(f)
            if events is not None:
                trail.extend(events)
                if counts is not None:
                    counts[name] += 1
                if tracer:
                    tracer(name, _describe(events), before, f.m)
                break
        else:
            return trail


def _describe(events: Sequence[TrailEvent]) -> str:
    parts = []
    for e in events:
        if isinstance(e, ReduceAssign):
            parts.append(str(e.literal))
        elif isinstance(e, Resolution):
            parts.append(f"var {e.variable}")
        elif isinstance(e, SubsumptionDelete):
            parts.append(f"clause {e.clause_id}")
    return ",".join(parts)


# -- public API ----------------------------------------------------------------


def _wrap(rule):
    def apply(f: Formula):
        out = f.copy()
        events = rule(out)
        if events is None:
            return None
        return out, events

    apply.__name__ = rule.__name__.lstrip("_")
    return apply


rule1_unit_pure = _wrap(_r1)
rule1_unit_pure.__doc__ = "Assign a 1-clause literal or a pure literal; None if neither exists."
rule2_subsumption = _wrap(_r2)
rule2_subsumption.__doc__ = "Delete one clause that contains another clause; None if none does."
rule3_resolve_small = _wrap(_r3)
rule3_resolve_small.__doc__ = "Resolve on a (1,1+)- or (2,2)-literal; None if none exists."
rule4_autarky = _wrap(_r4)
rule4_autarky.__doc__ = (
    "Assign every (3+,2)-literal when each clause holding a (2,3+)-literal also "
    "holds a (3+,2)-literal.  No (2,3+)-literal at all means not applicable."
)
rule5_autarky = _wrap(_r5)
rule5_autarky.__doc__ = (
    "Assign the (4,3)-literals that share a clause with a (3,3+)-literal, provided "
    "every clause holding one of their negations holds some (4,3)-literal."
)


def resolve_variable(f: Formula, v: int) -> Tuple[Formula, Resolution]:
    """Replace all clauses on variable ``v`` by their non-tautological resolvents."""
    v = var(v)
    if v not in f.occ and -v not in f.occ:
        raise ValueError(f"variable {v} does not occur in the formula")
    out = f.copy()
    event = _resolve_inplace(out, v)
    return out, event


def is_autarkic(f: Formula, lits) -> bool:
    xs = set(lits)
    for lit in xs:
        if -lit in xs:
            raise ValueError(f"set contains complementary literals {lit} and {-lit}")
    for lit in xs:
        for cid in f.occ.get(-lit, ()):
            if not (f.clauses[cid] & xs):
                return False
    return True


def reduce_fixpoint(
    f: Formula,
    counts: Optional[Counter] = None,
    tracer: Optional[Tracer] = None,
) -> Tuple[Formula, List[TrailEvent]]:
    out = f.copy()
    trail = reduce_inplace(out, counts, tracer)
    return out, trail


def is_reduced(f: Formula) -> bool:
    if f.has_empty_clause():
        return f.m == 1
    return all(rule(f.copy()) is None for _, rule in RULES)


# -- classification ------------------------------------------------------------


def bad_conditions(f: Formula) -> Tuple[bool, bool, bool, bool]:
    """The four structural conditions, in order, evaluated on ``f``."""
    deg = _degrees(f)
    allowed = {(3, 3), (3, 4), (4, 3)}
    c1 = all(d in allowed for d in deg.values())
    c2 = not coincident_pairs(f)
    c3 = all(len(c) != 2 for c in f.clauses.values())
    four3 = {l for l, d in deg.items() if d == (4, 3)}
    three3 = {l for l, (a, b) in deg.items() if a == 3 and b >= 3}
    c4 = not any((c & four3) and (c & three3) for c in f.clauses.values())
    return c1, c2, c3, c4


def classify(f: Formula) -> str:
    """``"Bad"`` iff all four conditions hold; empty or conflicting formulas are Good."""
    if f.is_empty() or f.has_empty_clause():
        return GOOD
    return BAD if all(bad_conditions(f)) else GOOD


def reduced_structure_violations(f: Formula) -> List[str]:
    """Structural facts every reduced formula must satisfy; returns the failures."""
    problems = []
    if f.is_empty() or f.has_empty_clause():
        return problems
    for cid, c in f.items():
        if len(c) == 1:
            problems.append(f"1-clause {cid}")
    for lit, (a, b) in _degrees(f).items():
        if (a, b) == (2, 2):
            problems.append(f"(2,2)-literal {lit}")
        if b <= 1 and a >= 1:
            problems.append(f"({b},{a})-literal {-lit}")
        if a + b < 5:
            problems.append(f"total degree {a + b} for {lit}")
    for lit in f.occ:
        if -lit not in f.occ:
            problems.append(f"pure literal {lit}")
    return problems
