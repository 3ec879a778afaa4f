"""CNF formulas with an occurrence index.

Literals are signed non-zero integers in the DIMACS convention: ``v`` is the
positive literal of variable ``v`` and ``-v`` its negation.  Clauses are
frozensets of literals.  A :class:`Formula` keeps clauses under stable integer
ids together with a literal -> clause-id index, so degree queries are O(1).
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Set, Tuple

Clause = FrozenSet[int]


def var(lit: int) -> int:
    return lit if lit > 0 else -lit


def neg(lit: int) -> int:
    return -lit


def literal_order(lit: int) -> Tuple[int, int]:
    """Sort key: lowest variable first, positive polarity before negative."""
    return (lit if lit > 0 else -lit, 0 if lit > 0 else 1)


def make_clause(lits: Iterable[int]) -> Clause:
    """Build a clause, rejecting zero literals and complementary pairs."""
    clause = frozenset(lits)
    for lit in clause:
        if lit == 0 or not isinstance(lit, int):
            raise ValueError(f"invalid literal {lit!r}")
        if -lit in clause:
            raise ValueError(f"clause contains both {lit} and {-lit}")
    return clause


class DegreePair(NamedTuple):
    pos: int
    neg: int

    @property
    def total(self) -> int:
        return self.pos + self.neg


class Formula:
    """A sequence of clauses with stable ids and an occurrence index.

    Duplicate clauses and empty clauses are representable.  Mutating methods
    are used by the reducer on private copies; public transformations such as
    :func:`assign_literal` return new formulas.
    """

    __slots__ = ("clauses", "occ", "_next_id", "_empty")

    def __init__(self, clauses: Iterable[Iterable[int]] = ()):
        self.clauses: Dict[int, Clause] = {}
        self.occ: Dict[int, Set[int]] = {}
        self._next_id = 0
        self._empty: Set[int] = set()
        for c in clauses:
            self.add_clause(c)

    # -- construction / mutation -------------------------------------------

    def add_clause(self, lits: Iterable[int]) -> int:
        clause = lits if isinstance(lits, frozenset) else make_clause(lits)
        cid = self._next_id
        self._next_id += 1
        self.clauses[cid] = clause
        if not clause:
            self._empty.add(cid)
        occ = self.occ
        for lit in clause:
            s = occ.get(lit)
            if s is None:
                occ[lit] = {cid}
            else:
                s.add(cid)
        return cid

    def remove_clause(self, cid: int) -> Clause:
        clause = self.clauses.pop(cid)
        occ = self.occ
        for lit in clause:
            s = occ[lit]
            s.discard(cid)
            if not s:
                del occ[lit]
        self._empty.discard(cid)
        return clause

    def remove_literal(self, cid: int, lit: int) -> None:
        """Drop ``lit`` from clause ``cid`` keeping the clause id."""
        clause = self.clauses[cid] - {lit}
        self.clauses[cid] = clause
        s = self.occ[lit]
        s.discard(cid)
        if not s:
            del self.occ[lit]
        if not clause:
            self._empty.add(cid)

    def copy(self) -> "Formula":
        f = Formula.__new__(Formula)
        f.clauses = dict(self.clauses)
        f.occ = {lit: set(ids) for lit, ids in self.occ.items()}
        f._next_id = self._next_id
        f._empty = set(self._empty)
        return f

    # -- queries -------------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def n(self) -> int:
        return len(self.variables())

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses.values())

    def __repr__(self) -> str:
        body = ", ".join(
            "{" + ",".join(str(l) for l in sorted(c, key=literal_order)) + "}"
            for c in self.clause_list()
        )
        return f"Formula([{body}])"

    def clause_list(self) -> List[Clause]:
        return [self.clauses[cid] for cid in sorted(self.clauses)]

    def items(self) -> List[Tuple[int, Clause]]:
        return sorted(self.clauses.items())

    def degree(self, lit: int) -> int:
        s = self.occ.get(lit)
        return len(s) if s else 0

    def degree_pair(self, lit: int) -> DegreePair:
        return DegreePair(self.degree(lit), self.degree(-lit))

    def literals(self) -> Set[int]:
        return set(self.occ)

    def variables(self) -> Set[int]:
        return {var(lit) for lit in self.occ}

    def ordered_literals(self) -> List[int]:
        """Both polarities of every live variable, in tie-breaking order."""
        out = []
        for v in sorted(self.variables()):
            out.append(v)
            out.append(-v)
        return out

    def has_empty_clause(self) -> bool:
        return bool(self._empty)

    def is_empty(self) -> bool:
        return not self.clauses

    def clauses_with(self, lit: int) -> Set[int]:
        return self.occ.get(lit, set())

    def check_consistency(self) -> None:
        """Raise AssertionError unless the index mirrors the clause contents."""
        expected: Dict[int, Set[int]] = {}
        for cid, clause in self.clauses.items():
            for lit in clause:
                expected.setdefault(lit, set()).add(cid)
            assert all(-lit not in clause for lit in clause), f"tautology in {cid}"
        assert expected == self.occ, "occurrence index out of sync"
        assert self._empty == {cid for cid, c in self.clauses.items() if not c}
        assert all(cid < self._next_id for cid in self.clauses)

    def satisfied_by(self, model) -> bool:
        return all(clause_satisfied(c, model) for c in self.clauses.values())


def clause_satisfied(clause: Iterable[int], model) -> bool:
    """``model`` maps variables to truthy/falsy values; missing means 0."""
    for lit in clause:
        val = bool(model.get(var(lit), 0))
        if val == (lit > 0):
            return True
    return False


def degree_pair(formula: Formula, lit: int) -> DegreePair:
    return formula.degree_pair(lit)


def coincident_pairs(formula: Formula) -> List[Tuple[int, int, int]]:
    """Literal pairs sharing at least two clauses, with their co-occurrence count.

    Pairs are returned as ``(x, y, count)`` with ``x`` before ``y`` in literal
    order, sorted by that order.
    """
    counts: Counter = Counter()
    for clause in formula.clauses.values():
        if len(clause) < 2:
            continue
        for x, y in combinations(sorted(clause, key=literal_order), 2):
            counts[(x, y)] += 1
    pairs = [(x, y, k) for (x, y), k in counts.items() if k >= 2]
    pairs.sort(key=lambda t: (literal_order(t[0]), literal_order(t[1])))
    return pairs


def _assign_inplace(formula: Formula, lit: int) -> None:
    for cid in list(formula.occ.get(lit, ())):
        formula.remove_clause(cid)
    for cid in list(formula.occ.get(-lit, ())):
        formula.remove_literal(cid, -lit)


def assign_literal(formula: Formula, lit: int) -> Formula:
    """Return the formula conditioned on ``lit = 1``.

    Clauses containing ``lit`` are deleted and ``-lit`` is removed from the
    rest.  A clause emptied this way stays as an empty clause.
    """
    out = formula.copy()
    _assign_inplace(out, lit)
    return out
