import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_torsion_order
from protocork.errors import BarHasReduced, InconsistentGradings, MismatchedShapes
from protocork.floer import (
    CriticalPointData,
    CyclicSummand,
    FiniteUModule,
    bar_gr,
    cobordism_map_degree,
    default_maps,
    dimension_additivity_check,
    exact_sequence_check,
    formal_dimension,
    morgan_szabo_number,
    ms_consistency,
    ms_gate,
    reduced_membership_hint,
    split_package,
    standard_package,
    torsion_order,
    u_power,
)


# --- standard packages --------------------------------------------------------


def test_sphere_hat():
    p = standard_package(0, "hat")
    assert [(t.k, t.multiplicity, t.top_grading) for t in p.standard] == [(0, 1, -1)]


def test_b1_two_hat():
    p = standard_package(2, "hat")
    assert [(t.multiplicity, t.top_grading) for t in p.standard] == [(1, -3), (2, -2), (1, -1)]


def test_bar_has_only_towers():
    p = standard_package(1, "bar")
    assert p.tower_rank == 2 and len(p.reduced) == 0
    assert all(t.kind == "bar" and t.top_grading is None for t in p.standard)


@pytest.mark.parametrize("b1", range(9))
def test_shape_exhaustive(b1):
    p = standard_package(b1, "hat")
    assert p.tower_rank == 2**b1
    for t in p.standard:
        assert t.multiplicity == comb(b1, t.k)
        assert t.top_grading == t.k - 1 - b1
        assert -b1 - 1 <= t.top_grading <= -1


def test_bad_inputs():
    with pytest.raises(ValueError):
        standard_package(-1, "hat")
    with pytest.raises(ValueError):
        standard_package(1, "tilde")
    with pytest.raises(ValueError):
        CyclicSummand(Fraction(0), 0)


def test_split_package():
    assert split_package(2, "hat") == standard_package(2, "hat")
    red = FiniteUModule.of([(Fraction(-2), 2)])
    p = split_package(2, "hat", red)
    assert p.tower_rank == 4 and len(p.reduced) == 1
    with pytest.raises(BarHasReduced):
        split_package(1, "bar", red)


def test_package_json():
    p = split_package(1, "hat", FiniteUModule.of([{"gr": "1/2", "order": 3}]))
    assert p.to_json() == {
        "flavor": "hat",
        "b1": 1,
        "towers": [{"k": 0, "mult": 1, "top_gr": "-2"}, {"k": 1, "mult": 1, "top_gr": "-1"}],
        "reduced": [{"gr": "1/2", "order": 3}],
    }


# --- exact sequence -----------------------------------------------------------


def _triple(b1, red):
    return split_package(b1, "check", red), split_package(b1, "hat", red), split_package(b1, "bar")


def _random_reduced(rnd):
    return FiniteUModule.of(
        (Fraction(rnd.randint(-10, 10), rnd.choice([1, 2, 4])), rnd.randint(1, 5))
        for _ in range(rnd.randint(0, 4))
    )


def test_sequence_basic_cases():
    assert exact_sequence_check(*_triple(0, FiniteUModule()))
    red = FiniteUModule.of([(Fraction(-2), 2)])
    assert exact_sequence_check(*_triple(2, red))
    maps = default_maps(2, 1)
    assert not exact_sequence_check(*_triple(2, red), maps.replace("j_tower", 0, 1))


def test_kernel_of_p_is_the_reduced_part():
    maps = default_maps(2, 1)
    assert all(c != 0 for c in maps.p_tower)
    assert all(c == 0 for c in maps.p_reduced)


def test_sequence_random_reduced_and_corruptions():
    rnd = random.Random(99)
    for b1 in range(6):
        for _ in range(100):
            red = _random_reduced(rnd)
            pk = _triple(b1, red)
            maps = default_maps(b1, len(red))
            assert exact_sequence_check(*pk, maps)
            corr = maps.corruptions()
            assert len(corr) == 2 * (b1 + 1) + 2 * len(red)
            for bad in corr:
                assert not exact_sequence_check(*pk, bad)


def test_non_unit_image_is_rejected():
    pk = _triple(1, FiniteUModule.of([(0, 2)]))
    assert not exact_sequence_check(*pk, default_maps(1, 1).replace("j_reduced", 0, 2))


def test_sequence_shape_errors():
    red = FiniteUModule.of([(0, 2)])
    c, h, b = _triple(2, red)
    with pytest.raises(MismatchedShapes):
        exact_sequence_check(c, split_package(3, "hat", red), b)
    with pytest.raises(MismatchedShapes):
        exact_sequence_check(c, split_package(2, "hat"), b)
    with pytest.raises(MismatchedShapes):
        exact_sequence_check(h, c, b)
    with pytest.raises(MismatchedShapes):
        exact_sequence_check(c, h, b, default_maps(2, 0))


# --- torsion orders -----------------------------------------------------------


M = FiniteUModule.of([(0, 3), (0, 2), (0, 5)])


def test_torsion_examples():
    assert torsion_order(M, {}) == 0
    assert torsion_order(M, {0: {0: 1}}) == 3
    assert torsion_order(M, {0: {1: 1}}) == 2
    assert torsion_order(M, [(1, 0, 1), (2, 0, 1)]) == 5
    assert torsion_order(M, {0: {3: 4}}) == 0
    assert torsion_order(M, {1: {0: 0}}) == 0


elements = st.dictionaries(
    st.integers(0, 2),
    st.dictionaries(st.integers(0, 6), st.integers(-3, 3), max_size=3),
    max_size=3,
)


@settings(max_examples=300, deadline=None)
@given(elements)
def test_torsion_matches_brute_force(x):
    orders = [s.order for s in M.summands]
    assert torsion_order(M, x) == brute_torsion_order(orders, x)


@settings(max_examples=300, deadline=None)
@given(elements, st.integers(0, 7))
def test_u_shifts_torsion(x, a):
    assert torsion_order(M, u_power(M, x, a)) == max(torsion_order(M, x) - a, 0)


# --- gradings and dimensions --------------------------------------------------


def test_map_degrees():
    assert cobordism_map_degree(0, -2, 0, 0, 2) == 0
    assert cobordism_map_degree(0, 0, 0, 3, 3) == 0
    assert cobordism_map_degree(1, 0, 0, 0, 0) == Fraction(1, 4)


def test_ms_gate_examples():
    g = ms_gate(0, 4, 0, 0)
    assert (g.d, g.passes) == (-2, False)
    g = ms_gate(0, -4, 0, 1)
    assert (g.d, g.passes) == (2, True)
    assert ms_gate(0, 0, 0, 0).passes
    assert ms_gate(1, 0, 0, 0).to_json() == {"d": "1/4", "passes": True}


@settings(max_examples=300, deadline=None)
@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.integers(0, 20), st.integers(0, 5))
def test_ms_gate_monotone(c, chi, sig, dd, extra):
    if not ms_gate(c, chi, sig, dd).passes:
        assert not ms_gate(c, chi, sig, dd + extra).passes


def test_formal_dimension_examples():
    assert formal_dimension(2, 2, 0) == -1
    assert formal_dimension(2, 2, -1) == 0
    assert formal_dimension(3, 1, 1) == -1
    with pytest.raises(ValueError):
        formal_dimension(2, 3, 0)


def test_bar_gr_examples():
    assert bar_gr(1, 2, 1, 2) == 0
    assert bar_gr(3, -1, 3, 0) == -2


@settings(max_examples=1000, deadline=None)
@given(*[st.integers(0, 8), st.integers(-10, 10)] * 3)
def test_bar_gr_antisymmetric_additive(a, i, b, j, c, k):
    assert bar_gr(a, i, b, j) == -bar_gr(b, j, a, i)
    assert bar_gr(a, i, b, j) + bar_gr(b, j, c, k) == bar_gr(a, i, c, k)


def test_additivity_examples_and_exhaustive():
    assert dimension_additivity_check(2, 2, 0) and dimension_additivity_check(2, 2, -1)
    for b1 in range(6):
        for f in range(b1 + 1):
            for i in range(-5, 6):
                assert dimension_additivity_check(b1, f, i)


# --- Morgan-Szabo number ------------------------------------------------------


def test_ms_number():
    assert morgan_szabo_number(CriticalPointData(2, (2, 0), {"x": 0})) == 2
    cp = CriticalPointData(2, (2,), {"x": 0, "y": 3}, {("y", "x"): 3, ("x", "y"): -3})
    assert morgan_szabo_number(cp) == 5
    assert ms_consistency(cp, 2) and not ms_consistency(cp, 3)


def test_ms_number_errors():
    with pytest.raises(InconsistentGradings):
        morgan_szabo_number(CriticalPointData(1, (1,), {"x": 0, "y": 1}, {("x", "y"): 1}))
    with pytest.raises(ValueError):
        CriticalPointData(1, (0,), {"x": 0})
    with pytest.raises(ValueError):
        CriticalPointData(1, (1, 1), {"x": 0})
    with pytest.raises(ValueError):
        morgan_szabo_number(CriticalPointData(1, (1,), {}))


# --- reduced membership -------------------------------------------------------


def test_membership_hint():
    p = split_package(2, "hat", FiniteUModule.of([(0, 2)]))
    assert reduced_membership_hint(p, [0, 0, 0, 0], [1])
    assert not reduced_membership_hint(p, [0, 0, 0, 1], [0])
    x0, x1 = ([0, 0, 0, 1], [1]), ([0, 0, 0, 1], [0])
    delta = [a - b for a, b in zip(x0[0], x1[0])], [a - b for a, b in zip(x0[1], x1[1])]
    assert reduced_membership_hint(p, *delta)
    with pytest.raises(MismatchedShapes):
        reduced_membership_hint(p, [0], [0])
