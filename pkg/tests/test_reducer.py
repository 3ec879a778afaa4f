from collections import Counter

import pytest
from hypothesis import assume, given, strategies as st

from branchsat.analysis import BAD, GOOD
from branchsat.formula import Formula
from branchsat.oracle import solve_exhaustive
from branchsat.reducer import (
    ReduceAssign,
    Resolution,
    bad_conditions,
    classify,
    is_autarkic,
    is_reduced,
    reduce_fixpoint,
    reduced_structure_violations,
    resolve_variable,
    rule1_unit_pure,
    rule2_subsumption,
    rule3_resolve_small,
    rule4_autarky,
    rule5_autarky,
)

from conftest import formula_strategy

X, Y, Z, A, B, C, D = 1, 2, 3, 4, 5, 6, 7

# no rule other than R5 applies here; found by a seeded degree-shaped search
R5_WITNESS = [
    [-4, -3, -2], [-4, -3, 2], [-4, 1, 2], [-4, 1, 3], [-3, -1, 4],
    [-2, -1, 3], [-2, -1, 4], [-1, 2, 4], [1, 2, 3],
]
# x is (2,3) and both its clauses hold the (3,2)-literal y; the (2,3)-literal
# -y sits only in clauses holding the (3,2)-literal -x
R4_WITNESS = [[X, Y, A], [X, Y, -A], [-X, -Y, B], [-X, -Y, -B], [-X, Y, C]]


def cs(f):
    return sorted(sorted(c) for c in f.clause_list())


# -- R1 ------------------------------------------------------------------------


@pytest.mark.parametrize(
    "clauses, after, lit",
    [
        ([[X]], [], X),
        ([[X, Y], [X, Z]], [], X),
        ([[X], [-X]], [[]], X),
    ],
)
def test_rule1_examples(clauses, after, lit):
    g, events = rule1_unit_pure(Formula(clauses))
    assert cs(g) == after
    assert events == [ReduceAssign(lit, "R1")]


def test_rule1_not_applicable():
    assert rule1_unit_pure(Formula([[X, Y], [-X, -Y], [X, -Y], [-X, Y]])) is None


# -- R2 ------------------------------------------------------------------------


@pytest.mark.parametrize(
    "clauses, after",
    [([[X], [X, Y]], [[X]]), ([[X, Y], [X, Y]], [[X, Y]])],
)
def test_rule2_examples(clauses, after):
    g, events = rule2_subsumption(Formula(clauses))
    assert cs(g) == after
    assert len(events) == 1


def test_rule2_not_applicable():
    assert rule2_subsumption(Formula([[X, Y], [Y, Z]])) is None


# -- resolution and R3 ---------------------------------------------------------


@pytest.mark.parametrize(
    "clauses, after",
    [
        ([[X, A], [-X, B]], [[A, B]]),
        ([[X, A], [-X, -A]], []),
        ([[X, A], [X, B], [-X, C], [-X, D]], [[A, C], [A, D], [B, C], [B, D]]),
    ],
)
def test_resolve_variable_examples(clauses, after):
    f = Formula(clauses)
    g, event = resolve_variable(f, X)
    assert cs(g) == sorted(sorted(c) for c in after)
    assert isinstance(event, Resolution) and event.variable == X
    assert sorted(map(sorted, event.pos_clauses)) == sorted(sorted(c) for c in clauses if X in c)
    assert sorted(map(sorted, event.neg_clauses)) == sorted(sorted(c) for c in clauses if -X in c)
    assert X not in g.variables()


def test_resolvent_literals_collapse():
    g, _ = resolve_variable(Formula([[X, A, B], [-X, A, C]]), X)
    assert cs(g) == [[A, B, C]]


def test_rule3_one_one():
    g, events = rule3_resolve_small(Formula([[X, A], [-X, B], [A, B, C]]))
    assert cs(g) == [[A, B], [A, B, C]]
    assert isinstance(events[0], Resolution)


def test_rule3_two_two_keeps_m():
    f = Formula([[X, A], [X, B], [-X, C], [-X, D]])
    g, _ = rule3_resolve_small(f)
    assert g.m == 4


def test_rule3_not_applicable_on_three_three():
    f = Formula([[1, 2, 3, 4], [1, 2, 3, -4], [1, 2, -3, 4],
                 [-1, -2, -3, -4], [-1, -2, -3, 4], [-1, -2, 3, -4]])
    assert rule3_resolve_small(f) is None


# -- autarkies -----------------------------------------------------------------


@pytest.mark.parametrize(
    "clauses, lits, expected",
    [
        ([[X, A], [X, B]], {X}, True),
        ([[X, A], [-X, B]], {X}, False),
        ([[X, A], [-X, Y], [-Y, X]], {X, Y}, True),
    ],
)
def test_is_autarkic_examples(clauses, lits, expected):
    assert is_autarkic(Formula(clauses), lits) is expected


def test_is_autarkic_rejects_complementary_set():
    with pytest.raises(ValueError):
        is_autarkic(Formula([[X, Y]]), {X, -X})


def test_rule4_fires_on_witness():
    f = Formula(R4_WITNESS)
    g, events = rule4_autarky(f)
    assert [e.literal for e in events] == [-X, Y]
    assert all(e.rule == "R4" for e in events)
    assert g.is_empty()
    assert is_autarkic(f, {-X, Y})


def test_rule4_vacuous_premise_not_applicable():
    # degrees (3,3) everywhere: no (2,3+)-literal
    f = Formula([[1, 2, 3, 4], [1, 2, 3, -4], [1, 2, -3, 4],
                 [-1, -2, -3, -4], [-1, -2, -3, 4], [-1, -2, 3, -4]])
    assert rule4_autarky(f) is None


def test_rule4_premise_fails():
    # -y is (2,3) and shares no clause with a (3+,2)-literal
    f = Formula(R4_WITNESS[:2] + [[-Y, B], [-Y, -B], [-X, Y, C], [-X, A, C], [-X, -A]])
    assert rule4_autarky(f) is None


def test_rule5_fires_on_witness():
    f = Formula(R5_WITNESS)
    for rule in (rule1_unit_pure, rule2_subsumption, rule3_resolve_small, rule4_autarky):
        assert rule(f) is None
    g, events = rule5_autarky(f)
    lits = [e.literal for e in events]
    assert lits == [-1, 2, -4]
    assert g.m < f.m
    assert is_autarkic(f, set(lits))
    assert solve_exhaustive(f).sat == solve_exhaustive(g).sat


def test_rule5_needs_a_four_three_literal():
    assert rule5_autarky(Formula(R4_WITNESS)) is None


def test_rule5_premise_fails():
    # -2 is the only (4,3)-literal and sits next to the (3,3)-literal 4, so the
    # clauses holding 2 have no (4,3)-literal
    f = Formula([[-4, -3, -2], [-4, -1, 2], [-4, 2], [-3, -2, 1], [-2, -1, 4],
                 [-2, 3, 4], [1, 2, 4]])
    assert f.degree_pair(-2) == (4, 3) and f.degree_pair(4) == (3, 3)
    assert rule5_autarky(f) is None


# -- fixpoint ------------------------------------------------------------------


def test_fixpoint_examples():
    g, _ = reduce_fixpoint(Formula([[X, Y], [-X, Y], [X, Z]]))
    assert g.is_empty()
    g, _ = reduce_fixpoint(Formula([[X], [-X, Y], [-Y]]))
    assert g.has_empty_clause()


def test_conflict_collapses_to_single_empty_clause():
    g, _ = reduce_fixpoint(Formula([[X], [-X], [A, B, C], [-A, B]]))
    assert cs(g) == [[]]
    assert is_reduced(g)


def test_fixpoint_counts_and_tracer():
    counts, lines = Counter(), []
    reduce_fixpoint(Formula(R5_WITNESS), counts, lambda *a: lines.append(a))
    assert counts["R5"] == 1
    assert lines[0][0] == "R5" and lines[0][2] == 9


@given(formula_strategy(max_var=7, max_clauses=18))
def test_reduction_preserves_satisfiability(f):
    g, _ = reduce_fixpoint(f)
    assert solve_exhaustive(f).sat == solve_exhaustive(g).sat
    assert g.m <= f.m
    g.check_consistency()
    assert is_reduced(g)
    assert reduce_fixpoint(g)[0].m == g.m


@given(formula_strategy(max_var=7, max_clauses=18))
def test_each_rule_step_never_grows(f):
    """Every application shrinks m, except resolution on a (2,2)-literal, which keeps it."""
    for rule in (rule1_unit_pure, rule2_subsumption, rule3_resolve_small,
                 rule4_autarky, rule5_autarky):
        out = rule(f)
        if out is None:
            continue
        g, events = out
        if isinstance(events[0], Resolution) and \
                (len(events[0].pos_clauses), len(events[0].neg_clauses)) == (2, 2):
            assert g.m <= f.m
        else:
            assert g.m < f.m


@given(formula_strategy(max_var=8, max_clauses=24, max_width=5))
def test_reduced_structure(f):
    g, _ = reduce_fixpoint(f)
    assert reduced_structure_violations(g) == []


@given(formula_strategy(max_var=8, max_clauses=24, max_width=5))
def test_goodness_transfer(f):
    assume(not f.is_empty() and not f.has_empty_clause())
    if classify(f) == GOOD:
        g, _ = reduce_fixpoint(f)
        assert classify(g) == GOOD or g.m <= f.m - 1


@given(formula_strategy(max_var=6, max_clauses=16))
def test_autarky_soundness(f):
    for rule in (rule4_autarky, rule5_autarky):
        out = rule(f)
        if out is None or not solve_exhaustive(f).sat:
            continue
        lits = [e.literal for e in out[1]]
        forced = f.copy()
        for lit in lits:
            forced.add_clause([lit])
        assert solve_exhaustive(forced).sat


# -- classification ------------------------------------------------------------


def test_classify_two_clause_is_good():
    assert classify(Formula([[X, Y]])) == GOOD


def test_classify_two_five_literal_is_good():
    f = Formula([[X, A, B], [X, -A, C], [-X, A, C], [-X, B, -C], [-X, -A, -B],
                 [-X, -B, C], [-X, A, -C]])
    assert f.degree_pair(X) == (2, 5)
    assert classify(f) == GOOD
    assert bad_conditions(f)[0] is False


def test_degenerate_formulas_are_good():
    assert classify(Formula()) == GOOD
    assert classify(Formula([[]])) == GOOD


def test_bad_fixture(fixtures_dir):
    from branchsat.dimacs import parse_dimacs_file
    import os

    f = parse_dimacs_file(os.path.join(fixtures_dir, "bad_n30.cnf")).formula
    assert bad_conditions(f) == (True, True, True, True)
    assert classify(f) == BAD
    assert is_reduced(f)
