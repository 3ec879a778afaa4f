import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from branchsat.analysis import (
    BAD,
    DEFAULT_CONSTANTS,
    GOOD,
    PotentialConstants,
    branching_factor,
    characteristic,
    covers,
    potential,
    proof_chains,
)

vectors = st.lists(st.integers(1, 12), min_size=2, max_size=4)


@pytest.mark.parametrize(
    "vector, rounded",
    [((3, 3), 1.2600), ((3, 4), 1.2208), ((3, 5), 1.1939), ((4, 4), 1.1893)],
)
def test_table_factors(vector, rounded):
    assert abs(branching_factor(vector).factor - rounded) <= 5e-4


def test_three_three_is_cube_root_of_two():
    assert branching_factor((3, 3)).factor == pytest.approx(2 ** (1 / 3), abs=1e-12)


def test_two_two_is_sqrt_two():
    assert branching_factor((2, 2)).factor == pytest.approx(math.sqrt(2), abs=1e-12)


def test_single_component_and_errors():
    assert branching_factor((5,)).factor == 1.0
    with pytest.raises(ValueError):
        branching_factor(())
    with pytest.raises(ValueError):
        branching_factor((0, 2))


def test_long_vector_root_above_two():
    res = branching_factor((1, 1, 1, 1))
    assert res.factor == pytest.approx(4.0, abs=1e-10)


@given(vectors)
def test_root_properties(vec):
    res = branching_factor(vec)
    assert abs(res.residual) <= 1e-10
    assert characteristic(res.factor - 1e-6, vec) < 0 < characteristic(res.factor + 1e-6, vec)


@given(vectors, st.randoms(use_true_random=False))
def test_permutation_invariance(vec, rnd):
    shuffled = list(vec)
    rnd.shuffle(shuffled)
    assert branching_factor(shuffled).factor == pytest.approx(branching_factor(vec).factor, abs=1e-12)


@given(vectors, st.data())
def test_growing_a_component_lowers_the_factor(vec, data):
    i = data.draw(st.integers(0, len(vec) - 1))
    grown = list(vec)
    grown[i] += data.draw(st.integers(1, 5))
    assert branching_factor(grown).factor < branching_factor(vec).factor


def test_covers_examples():
    assert covers((3, 4), (4, 5))
    assert not covers((3, 4), (3, 3))
    assert covers((4, 3), (3, 4))  # order-insensitive
    with pytest.raises(ValueError):
        covers((3, 4), (3, 4, 5))


@given(st.lists(st.integers(1, 9), min_size=2, max_size=2), st.lists(st.integers(0, 4), min_size=2, max_size=2))
def test_covering_vector_has_no_smaller_factor(b, bump):
    c = [x + d for x, d in zip(b, bump)]
    assert covers(b, c)
    assert branching_factor(c).factor <= branching_factor(b).factor + 1e-12


def test_potential_values():
    assert potential(0, GOOD) == 2.0
    # exact rational arithmetic as an independent reference
    base = Fraction(12226, 10000)
    good3 = 2 * base ** 3
    bad3 = Fraction(2) / Fraction(9136, 10000) * base ** 3
    assert potential(3, GOOD) == pytest.approx(float(good3), rel=1e-14)
    assert potential(3, BAD) == pytest.approx(float(bad3), rel=1e-14)
    assert float(good3) == pytest.approx(3.654964, abs=1e-6)
    assert float(bad3) == pytest.approx(4.000618, abs=1e-6)
    with pytest.raises(ValueError):
        potential(-1, GOOD)
    with pytest.raises(ValueError):
        potential(1, "Ugly")


def test_default_constants():
    k = DEFAULT_CONSTANTS
    assert (k.c1, k.base) == (2.0, 1.2226)
    assert k.c2 == pytest.approx(2 / 0.9136)


def test_proof_chains_hold():
    chains = proof_chains()
    assert len(chains) == 5
    for name, lhs, rhs in chains:
        assert lhs <= rhs, name


def test_proof_chains_fail_with_smaller_base():
    # the base is close to tight: a clearly smaller one breaks a chain
    k = PotentialConstants(base=1.20)
    assert any(lhs > rhs for _, lhs, rhs in proof_chains(k))
