"""Exact CNF-SAT by branch-and-reduce on the clause count, with audited search trees."""

from .analysis import (
    BAD,
    DEFAULT_CONSTANTS,
    GOOD,
    FactorResult,
    PotentialConstants,
    branching_factor,
    covers,
    potential,
)
from .cases import BranchDecision, DispatchError, select_branch
from .dimacs import ParsedInstance, Verdict, emit_result, parse_dimacs
from .formula import DegreePair, Formula, assign_literal, coincident_pairs, degree_pair
from .generators import GenConfig, generate
from .oracle import solve_exhaustive
from .reducer import classify, reduce_fixpoint
from .search import SolveReport, SolverConfig, audit_node, reconstruct_model, solve

__version__ = "0.1.0"
