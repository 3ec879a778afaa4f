"""Exhaustive truth-table oracle."""

from __future__ import annotations

from typing import Dict, Iterable, Optional, Sequence

import numpy as np

from .dimacs import Verdict
from .formula import Formula

MAX_ORACLE_VARS = 25
_CHUNK_BITS = 16


class OracleLimitError(ValueError):
    pass


def _variables(clauses) -> list:
    return sorted({abs(l) for c in clauses for l in c})


def solve_exhaustive(formula, variables: Optional[Sequence[int]] = None) -> Verdict:
    """Try every assignment in lexicographic order (first variable most significant).

    ``formula`` may be a :class:`Formula` or any iterable of literal collections.
    The returned model is the first satisfying assignment in that order;
    variables not occurring anywhere are 0.
    """
    clauses = [tuple(c) for c in (formula.clause_list() if isinstance(formula, Formula) else formula)]
    vs = list(variables) if variables is not None else _variables(clauses)
    n = len(vs)
    if n > MAX_ORACLE_VARS:
        raise OracleLimitError(f"{n} variables exceeds the oracle limit of {MAX_ORACLE_VARS}")
    if any(len(c) == 0 for c in clauses):
        return Verdict("UNSAT")
    pos = {v: i for i, v in enumerate(vs)}
    # bit for variable index i sits at position n-1-i so index order is lexicographic
    shifts = [n - 1 - pos[abs(l)] for c in clauses for l in c]
    signs = [l > 0 for c in clauses for l in c]
    bounds = np.cumsum([0] + [len(c) for c in clauses])

    total = 1 << n
    chunk = min(total, 1 << _CHUNK_BITS)
    shift_arr = np.array(shifts, dtype=np.int64)
    sign_arr = np.array(signs, dtype=bool)
    for start in range(0, total, chunk):
        idx = np.arange(start, start + chunk, dtype=np.int64)
        if clauses:
            lit_vals = ((idx[:, None] >> shift_arr[None, :]) & 1).astype(bool) == sign_arr
            sat = np.logical_or.reduceat(lit_vals, bounds[:-1], axis=1).all(axis=1)
        else:
            sat = np.ones(chunk, dtype=bool)
        hits = np.flatnonzero(sat)
        if hits.size:
            a = int(idx[hits[0]])
            model = {v: (a >> (n - 1 - i)) & 1 for i, v in enumerate(vs)}
            return Verdict("SAT", model)
    return Verdict("UNSAT")


def is_satisfiable(formula) -> bool:
    return solve_exhaustive(formula).sat
