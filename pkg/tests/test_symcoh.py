"""Cohomology of finite abelian groups: spec values and brute-force oracles."""

import pytest

from homcert.bruteforce import enumerate_cocycles
from homcert.groups import FinGenAbGroup
from homcert.symcoh import (
    SymComplex,
    ext1,
    h2_hochschild,
    h2s,
    h3s,
    h_normalized,
    verify_low_degree,
)

Z = FinGenAbGroup((0,))
TRIVIAL = FinGenAbGroup(())


def G(*orders):
    return FinGenAbGroup(tuple(orders))


# -- ext1: gcd formula against hand-derived values ---------------------------


def test_ext1_coprime_vanishes():
    # from the resolution 0 -> Z -> Z -> Z/2 -> 0: Ext^1 = (Z/3)/2(Z/3) = 0
    assert ext1(G(2), G(3)).is_trivial


def test_ext1_z2_z2():
    # two extensions: Z/4 and Z/2 x Z/2, classified by brute force below
    assert ext1(G(2), G(2)).invariant_factors == (2,)


def test_ext1_gcd_example():
    assert ext1(G(4), G(6)).invariant_factors == (2,)


def test_ext1_with_integer_coefficients():
    # gcd(n, 0) = n convention: Ext^1(Z/n, Z) = Z/n
    assert ext1(G(3), Z).invariant_factors == (3,)


def test_ext1_rejects_infinite_base():
    with pytest.raises(ValueError):
        ext1(Z, G(2))


def test_ext1_additive_and_symmetric():
    a = ext1(G(2, 4), G(6)).invariant_factors
    parts = list(ext1(G(2), G(6)).invariant_factors) + list(ext1(G(4), G(6)).invariant_factors)
    from homcert.intlinalg import PresentedGroup

    assert PresentedGroup.from_orders(parts).invariant_factors == a
    # symmetry under swapping cyclic factors of the coefficient group
    assert ext1(G(4), G(2, 6)) == ext1(G(4), G(6, 2))


def test_ext1_matches_extension_census():
    for g, a in [((2,), (2,)), ((2,), (3,)), ((3,), (3,)), ((2,), (4,)), ((4,), (2,))]:
        census = enumerate_cocycles(G(*g), G(*a))
        expected = ext1(G(*g), G(*a)).order()
        assert census.symmetric_classes == expected


# -- symmetric cohomology ----------------------------------------------------


def test_h2s_trivial_group():
    assert h2s(TRIVIAL, G(5)).is_trivial
    assert h2s(G(1), G(5)).is_trivial


def test_h2s_z2_z2():
    assert h2s(G(2), G(2)).invariant_factors == (2,)


def test_h2s_integer_coefficients():
    assert h2s(G(3), Z).invariant_factors == (3,)


def test_h3s_examples_vanish():
    assert h3s(TRIVIAL, G(2)).is_trivial
    assert h3s(G(2), G(2)).is_trivial
    assert h3s(G(3), G(9)).is_trivial


def test_h2s_rejects_infinite_base():
    with pytest.raises(ValueError):
        h2s(Z, G(2))


# -- Hochschild --------------------------------------------------------------


def test_hochschild_trivial_group():
    assert h2_hochschild(TRIVIAL, G(3)).is_trivial


def test_hochschild_z2_z2():
    census = enumerate_cocycles(G(2), G(2))
    assert census.hochschild_classes == 2
    assert h2_hochschild(G(2), G(2)).invariant_factors == (2,)


def test_hochschild_z2_z3():
    census = enumerate_cocycles(G(2), G(3))
    assert census.hochschild_classes == 1
    assert h2_hochschild(G(2), G(3)).is_trivial


@pytest.mark.parametrize(
    "g, a",
    [((2,), (2,)), ((2,), (4,)), ((3,), (2,)), ((3,), (3,)), ((2, 2), (2,)), ((4,), (2,))],
)
def test_hochschild_matches_enumeration(g, a):
    group, coeffs = G(*g), G(*a)
    census = enumerate_cocycles(group, coeffs)
    assert h2_hochschild(group, coeffs).order() == census.hochschild_classes
    assert h2s(group, coeffs).order() == census.symmetric_classes
    assert census.all_coboundaries_symmetric
    assert census.symmetric_classes_stay_distinct


# -- normalized variant ------------------------------------------------------


def test_normalized_trivial_group():
    n2, n3 = h_normalized(TRIVIAL, G(7))
    assert n2.is_trivial and n3.is_trivial


def test_normalized_z2_z2():
    n2, n3 = h_normalized(G(2), G(2))
    assert n2.invariant_factors == (2,)
    assert n3.is_trivial


def test_normalized_z4_z2():
    n2, n3 = h_normalized(G(4), G(2))
    assert n2.invariant_factors == (2,)  # = gcd(4, 2)
    assert n3.is_trivial


# -- low-degree consequences -------------------------------------------------


def test_low_degree_report_z2_z2():
    rep = verify_low_degree(G(2), G(2))
    assert rep.ok
    assert rep.h2s_factors == (2,)
    assert rep.h3s_factors == ()


def test_low_degree_report_trivial():
    rep = verify_low_degree(TRIVIAL, G(5))
    assert rep.ok
    assert rep.h2s_factors == ()


def test_low_degree_report_z6_z4():
    rep = verify_low_degree(G(6), G(4))
    assert rep.ok
    assert rep.h2s_factors == (2,)


# -- assembled complex cross-checks -----------------------------------------


@pytest.mark.parametrize("g, a", [((2,), (2,)), ((3,), (2, 4)), ((2, 2), (0,)), ((4,), (6,))])
def test_assembled_complex_agrees_with_factorwise(g, a):
    group, coeffs = G(*g), G(*a)
    cx = SymComplex(group, coeffs)
    assert cx.cohomology(2) == h2s(group, coeffs)
    assert cx.cohomology(3) == h3s(group, coeffs)


def test_assembled_differentials_form_complex():
    cx = SymComplex(G(2, 2), G(2, 3))
    d1, d2, d3 = cx.differential(1), cx.differential(2), cx.differential(3)
    assert (d2 @ d1).is_zero()
    assert (d3 @ d2).is_zero()
    assert cx.term(2).generator_count == d1.rows
