"""Branching-literal selection for reduced formulas.

The dispatcher walks the case analysis in priority order and returns a
:class:`BranchDecision`.  Each decision carries the branching vector the case
guarantees, recorded positionally as ``(decrease when literal=1, decrease when
literal=0)``, and per-branch flags for children claimed to be good.  Execution
never depends on the sub-case: both children are simply reduced to the
fixpoint.  The label and vector only feed the audit.

Ties are broken by literal order (lowest variable, positive first) and clause id.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .analysis import BAD, GOOD
from .formula import Formula, coincident_pairs, literal_order
from .reducer import classify


class DispatchError(RuntimeError):
    """No case matched; only possible if the formula is not reduced."""


@dataclass(frozen=True)
class BranchDecision:
    literal: int
    case: str
    vector: Tuple[int, int] = (0, 0)
    claims: Tuple[bool, bool] = (False, False)
    # zero-branch decisions assign ``literal`` and loop back into reduction
    zero_branch: bool = False


CASE_LABELS = (
    "Bad-1", "Bad-2",
    "Good-1",
    "Good-2.1", "Good-2.2.1", "Good-2.2.2a", "Good-2.2.2b", "Good-2.2.2c", "Good-2.2.2d",
    "Good-3.1.1", "Good-3.1.2", "Good-3.1.3a", "Good-3.1.3b", "Good-3.1.4",
    "Good-3.1.5a", "Good-3.1.5b",
    "Good-3.2.1", "Good-3.2.2a", "Good-3.2.2b", "Good-3.2.2c",
    "Good-3.3.1", "Good-3.3.2",
    "Good-3.4.1", "Good-3.4.2", "Good-3.4.3",
    "Good-4.1.1", "Good-4.1.2a", "Good-4.1.2b", "Good-4.2",
)

BOTH = (True, True)
NONE = (False, False)


class _View:
    """Degree table and helpers over a reduced formula."""

    def __init__(self, f: Formula):
        self.f = f
        occ = f.occ
        self.deg: Dict[int, Tuple[int, int]] = {
            lit: (len(occ[lit]), len(occ.get(-lit, ()))) for lit in occ
        }
        self.order: List[int] = sorted(occ, key=literal_order)
        self.two_clauses: List[int] = [cid for cid, c in f.items() if len(c) == 2]

    def d(self, lit: int) -> Tuple[int, int]:
        return self.deg.get(lit, (0, len(self.f.occ.get(-lit, ()))))

    def where(self, pred) -> List[int]:
        return [l for l in self.order if pred(*self.deg[l])]

    def ids(self, lit: int):
        return self.f.occ.get(lit, set())

    def share_clause(self, x: int, y: int) -> bool:
        return bool(self.ids(x) & self.ids(y))

    def clause(self, cid: int):
        return self.f.clauses[cid]

    def oriented_two_clauses(self):
        for cid in self.two_clauses:
            a, b = sorted(self.clause(cid), key=literal_order)
            yield cid, a, b
            yield cid, b, a


def _is_23p(a, b):
    return a == 2 and b >= 3


def _is_3p2(a, b):
    return a >= 3 and b == 2


def select_branch(f: Formula, label: Optional[str] = None) -> BranchDecision:
    if f.is_empty() or f.has_empty_clause():
        raise ValueError("select_branch needs a nonempty formula without empty clauses")
    if label is None:
        label = classify(f)
    v = _View(f)
    if label == BAD:
        return _bad(v)
    return _good(v)


def _bad(v: _View) -> BranchDecision:
    for lit in v.order:
        if v.deg[lit] == (3, 4):
            return BranchDecision(lit, "Bad-1", (3, 4), NONE)
    lit = v.order[0]
    if v.deg[lit] != (3, 3):
        raise DispatchError(f"bad formula with literal {lit} of degree {v.deg[lit]}")
    return BranchDecision(lit, "Bad-2", (3, 3), BOTH)


def _good(v: _View) -> BranchDecision:
    for lit in v.order:
        a, b = v.deg[lit]
        if a == 3 and b >= 5:
            return BranchDecision(lit, "Good-1", (3, 5), NONE)
        if a >= 4 and b >= 4:
            return BranchDecision(lit, "Good-1", (4, 4), NONE)
    lits34 = v.where(lambda a, b: (a, b) == (3, 4))
    if lits34:
        return _good_case2(v, lits34)
    if v.where(_is_23p):
        return _good_case3(v)
    return _good_case4(v)


def _good_case2(v: _View, lits34: List[int]) -> BranchDecision:
    low = v.where(_is_23p)
    if low:
        for x in lits34:
            if any(v.share_clause(x, y) for y in low):
                return BranchDecision(x, "Good-2.1", (4, 4), NONE)
        for x in lits34:
            if any(v.share_clause(-x, y) for y in low):
                return BranchDecision(x, "Good-2.1", (3, 5), NONE)
        return BranchDecision(lits34[0], "Good-2.1", (3, 4), BOTH)

    # only (3,4), (4,3) and (3,3) literals remain
    four3 = set(v.where(lambda a, b: (a, b) == (4, 3)))
    three3p = set(v.where(lambda a, b: a == 3 and b >= 3))
    members = [
        x for x in v.order
        if x in four3 and any(v.clause(c) & three3p for c in v.ids(x))
    ]
    if members:
        for x in members:
            if any(not (v.clause(c) & four3) for c in v.ids(-x)):
                return BranchDecision(x, "Good-2.2.1", (4, 3), BOTH)
        raise DispatchError("case 2.2.1 without a witness clause; autarky rule missed")

    pairs = coincident_pairs(v.f)
    for x, y, _ in pairs:
        for p, q in ((x, y), (y, x)):
            if v.deg[p] == (3, 4):
                return BranchDecision(p, "Good-2.2.2a", (4, 4), NONE)
    for x, y, _ in pairs:
        if v.deg[x] == (3, 3) and v.deg[y] == (3, 3):
            return BranchDecision(lits34[0], "Good-2.2.2b", (3, 4), BOTH)
        if v.deg[x] == (4, 3) and v.deg[y] == (4, 3):
            return BranchDecision(x, "Good-2.2.2c", (4, 3), BOTH)
    if pairs:
        raise DispatchError(f"case 2.2.2 with unexpected coincident pair {pairs[0]}")
    if v.two_clauses:
        x = min(v.clause(v.two_clauses[0]), key=literal_order)
        return BranchDecision(x, "Good-2.2.2d", (3, 5), NONE)
    raise DispatchError("case 2.2.2 without coincident pair or 2-clause")


def _good_case3(v: _View) -> BranchDecision:
    d = v.d
    f = v.f

    # 3.1: a 2-clause {x, y} with x a (3+,2+)-literal
    cands = [(cid, x, y) for cid, x, y in v.oriented_two_clauses()
             if d(x)[0] >= 3 and d(x)[1] >= 2]
    for cid, x, y in cands:
        if all(len(v.clause(c)) == 2 for c in v.ids(-x)):
            return BranchDecision(x, "Good-3.1.1", (5, 3), NONE)
    if cands:
        cid, x, y = cands[0]
        if d(x) == (3, 3) or d(y) == (3, 3):
            b = x if d(x) == (3, 3) else y
            return BranchDecision(b, "Good-3.1.2", (3, 4), BOTH)
        if _is_3p2(*d(x)) and _is_3p2(*d(y)):
            if all(y in v.clause(c) for c in v.ids(-x)):
                return BranchDecision(y, "Good-3.1.3a", (5, 3), NONE)
            return BranchDecision(x, "Good-3.1.3b", (3, 4), BOTH)
        if _is_3p2(*d(x)) and _is_23p(*d(y)):
            if not v.share_clause(y, -x):
                return BranchDecision(x, "Good-3.1.4", (4, 4), NONE)
            if any(c != cid and len(v.clause(c)) == 2 for c in v.ids(x)):
                return BranchDecision(x, "Good-3.1.5a", (4, 4), NONE)
            return BranchDecision(x, "Good-3.1.5b", (4, 3), BOTH)
        raise DispatchError(f"case 3.1 with degrees {d(x)}, {d(y)}")

    # 3.2: every remaining 2-clause joins two (2,3+)-literals
    if v.two_clauses:
        for cid, x, y in v.oriented_two_clauses():
            if not v.share_clause(y, -x):
                return BranchDecision(x, "Good-3.2.1", (3, 5), NONE)
        cid, x, y = next(v.oriented_two_clauses())
        (dcid,) = [c for c in v.ids(y) if c != cid]
        size = len(v.clause(dcid))
        if size == 2:
            return BranchDecision(y, "Good-3.2.2a", zero_branch=True)
        if size == 3:
            return BranchDecision(y, "Good-3.2.2b", (3, 5), NONE)
        return BranchDecision(x, "Good-3.2.2c", (3, 4), BOTH)

    # 3.3: a clause holding a (3,3)-literal x and a (2,3+)-literal y
    mixed = []
    for cid, c in f.items():
        xs = sorted((l for l in c if d(l) == (3, 3)), key=literal_order)
        ys = sorted((l for l in c if _is_23p(*d(l))), key=literal_order)
        mixed.extend((x, y) for x in xs for y in ys)
    for x, y in mixed:
        if len(v.ids(x) & v.ids(y)) >= 2:
            return BranchDecision(x, "Good-3.3.1", (5, 3), NONE)
    if mixed:
        return BranchDecision(mixed[0][0], "Good-3.3.2", (4, 3), BOTH)

    # 3.4: a clause with at least three (2,3+)-literals
    groups = []
    for cid, c in f.items():
        lows = sorted((l for l in c if _is_23p(*d(l))), key=literal_order)
        if len(lows) >= 3:
            groups.append((cid, lows))
    for cid, lows in groups:
        for x1, x2 in combinations(lows, 2):
            if len(v.ids(x1) & v.ids(x2)) >= 2:
                return BranchDecision(x1, "Good-3.4.1", (5, 3), NONE)
    for cid, lows in groups:
        other = {x: next(c for c in v.ids(x) if c != cid) for x in lows}
        for xi in lows:
            for xj in lows:
                if xi != xj and -xi in v.clause(other[xj]):
                    return BranchDecision(xi, "Good-3.4.2", (4, 4), NONE)
    if groups:
        return BranchDecision(groups[0][1][0], "Good-3.4.3", (4, 3), BOTH)
    raise DispatchError("case 3 exhausted without a matching clause")


def _good_case4(v: _View) -> BranchDecision:
    if any(dd != (3, 3) for dd in v.deg.values()):
        raise DispatchError("case 4 reached with a literal that is not (3,3)")
    pairs = coincident_pairs(v.f)
    for x, y, k in pairs:
        if k >= 3:
            return BranchDecision(x, "Good-4.1.1", (6, 3), NONE)
    if pairs:
        for x, y, _ in pairs:
            for p in (x, y):
                if any(len(v.clause(c)) == 2 for c in v.ids(p)):
                    return BranchDecision(p, "Good-4.1.2a", (4, 4), NONE)
        return BranchDecision(pairs[0][0], "Good-4.1.2b", (4, 3), BOTH)
    if v.two_clauses:
        x = min(v.clause(v.two_clauses[0]), key=literal_order)
        return BranchDecision(x, "Good-4.2", (3, 5), NONE)
    raise DispatchError("good formula of (3,3)-literals without pair or 2-clause")
