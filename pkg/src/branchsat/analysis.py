"""Branching-vector arithmetic: factors, the covers relation and the potential."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

from scipy.optimize import brentq

GOOD = "Good"
BAD = "Bad"


@dataclass(frozen=True)
class FactorResult:
    vector: Tuple[int, ...]
    factor: float
    residual: float


@dataclass(frozen=True)
class PotentialConstants:
    c1: float = 2.0
    c2: float = 2.0 / 0.9136
    base: float = 1.2226

    def constant(self, label: str) -> float:
        if label == GOOD:
            return self.c1
        if label == BAD:
            return self.c2
        raise ValueError(f"unknown class label {label!r}")


DEFAULT_CONSTANTS = PotentialConstants()


def characteristic(x: float, vector: Sequence[int]) -> float:
    """f(x) = 1 - sum x^-c_i; increasing on (1, inf) for vectors of length >= 1."""
    return 1.0 - sum(x ** (-c) for c in vector)


def branching_factor(vector: Sequence[int]) -> FactorResult:
    """Largest real root of ``1 - sum x^-c_i``."""
    vec = tuple(int(c) for c in vector)
    if not vec:
        raise ValueError("empty branching vector")
    if any(c < 1 for c in vec):
        raise ValueError(f"branching vector components must be >= 1: {vec}")
    if len(vec) == 1:
        return FactorResult(vec, 1.0, characteristic(1.0, vec))
    lo, hi = 1.0 + 1e-9, 2.0
    # f(hi) >= 0 needed for the bracket; only longer vectors push the root past 2
    while characteristic(hi, vec) < 0:
        lo, hi = hi, hi * 2
    if characteristic(hi, vec) == 0:
        root = hi
    else:
        root = brentq(characteristic, lo, hi, args=(vec,), xtol=1e-15, rtol=1e-15)
    return FactorResult(vec, root, characteristic(root, vec))


def covers(b: Sequence[int], c: Sequence[int]) -> bool:
    """True iff ``b`` covers ``c``, i.e. ``c`` dominates ``b`` componentwise.

    Both vectors are compared after sorting in descending order.
    """
    if len(b) != len(c):
        raise ValueError(f"length mismatch: {tuple(b)} vs {tuple(c)}")
    bs = sorted(b, reverse=True)
    cs = sorted(c, reverse=True)
    return all(ci >= bi for bi, ci in zip(bs, cs))


def potential(m: int, label: str, k: PotentialConstants = DEFAULT_CONSTANTS) -> float:
    if m < 0:
        raise ValueError("clause count must be non-negative")
    return k.constant(label) * k.base ** m


def proof_chains(k: PotentialConstants = DEFAULT_CONSTANTS):
    """The five inductive-step inequalities as (name, lhs, rhs) triples."""
    b = k.base
    return [
        ("bad (3,4)", k.c2 * (b ** -3 + b ** -4), k.c2),
        ("bad (3*,3*)", 2 * k.c1 * b ** -3, k.c2),
        ("good (3,5)", k.c2 * (b ** -3 + b ** -5), k.c1),
        ("good (4,4)", 2 * k.c2 * b ** -4, k.c1),
        ("good (3*,4*)", k.c1 * (b ** -3 + b ** -4), k.c1),
    ]
