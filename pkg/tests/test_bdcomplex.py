"""The symbolic boundary rules: d.d = 0, instantiation, evaluation."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homcert.bdcomplex import (
    RULES,
    SHAPES,
    FormalChain,
    ShapeError,
    apply_d,
    evaluate_chain,
    instantiate,
    variable,
    verify_d_squared,
)
from homcert.groups import FinGenAbGroup

X, Y, Z, T = (variable(n) for n in "xyzt")


def test_d1_on_a_generic_pair():
    chain = FormalChain.single(0, (X, Y))
    out = apply_d(1, chain)
    expected = (
        FormalChain.single(0, ((1, 1, 0, 0),))
        - FormalChain.single(0, (X,))
        - FormalChain.single(0, (Y,))
    )
    assert out == expected


def test_d2_swaps_on_pair_summand():
    chain = FormalChain.single(1, (X, Y))
    out = apply_d(2, chain)
    assert out == FormalChain.single(0, (X, Y)) - FormalChain.single(0, (Y, X))


def test_apply_d_on_zero_chain():
    for level in range(4):
        assert apply_d(level, FormalChain.zero()).is_zero


def test_apply_d_rejects_wrong_arity():
    with pytest.raises(ShapeError):
        apply_d(1, FormalChain.single(0, (X, Y, Z)))
    with pytest.raises(ShapeError):
        apply_d(2, FormalChain.single(2, (X, Y)))


def test_d_squared_vanishes_on_all_generators():
    report = verify_d_squared()
    assert len(report.residues) == 1 + 2 + 5
    assert report.ok, report.failing()


def test_d2_of_d3_on_singleton():
    # d3([x]) = (0, [x,x]); d2 then cancels [x,x] - [x,x]
    once = apply_d(3, FormalChain.single(4, (X,)))
    assert once == FormalChain.single(1, (X, X))
    assert apply_d(2, once).is_zero


def test_d2_of_d3_on_generic_quadruple():
    once = apply_d(3, FormalChain.single(0, (X, Y, Z, T)))
    assert len(once.items()) == 5
    assert apply_d(2, once).is_zero


def test_d0_of_d1_telescopes():
    once = apply_d(1, FormalChain.single(0, (X, Y)))
    assert apply_d(0, once).is_zero


@settings(max_examples=60, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3), st.sampled_from([1, 2, 3]))
def test_apply_d_is_linear(m, n, level):
    shape = SHAPES[level]
    rng = random.Random(m * 7 + n * 13 + level)
    def random_chain():
        terms = {}
        for _ in range(rng.randrange(1, 4)):
            slot = rng.randrange(len(shape))
            sym = tuple(
                tuple(rng.randrange(-2, 3) for _ in range(4))
                for _ in range(shape[slot])
            )
            terms[(slot, sym)] = rng.randrange(-3, 4) or 1
        return FormalChain(terms)

    c1, c2 = random_chain(), random_chain()
    lhs = apply_d(level, c1 + c2.scale(n))
    rhs = apply_d(level, c1) + apply_d(level, c2).scale(n)
    assert lhs == rhs


# -- instantiation -----------------------------------------------------------


def test_instantiate_trivial_group_level1():
    G = FinGenAbGroup((1,))
    M = instantiate(G, 1)
    assert M.shape == (1, 1)
    assert M.entry(0, 0) == -1  # [0+0] - [0] - [0] = -[0]


def test_instantiate_z2_level1_rows():
    G = FinGenAbGroup((2,))
    M = instantiate(G, 1)
    assert M.shape == (4, 2)
    # row of (1,1): [1+1] - 2[1] = [0] - 2[1]
    row = {j: M.entry(3, j) for j in range(2) if M.entry(3, j)}
    assert row == {0: 1, 1: -2}


def test_instantiate_z2_level2_pair_summand():
    G = FinGenAbGroup((2,))
    M = instantiate(G, 2)
    assert M.shape == (8 + 4, 4)
    # pair summand starts at row 8; source (1,0) is row 8 + 2
    row = {j: M.entry(10, j) for j in range(4) if M.entry(10, j)}
    assert row == {2: 1, 1: -1}  # [1,0] - [0,1]


def test_instantiate_rejects_infinite_group():
    with pytest.raises(ValueError):
        instantiate(FinGenAbGroup((0,)), 1)


SMALL_GROUPS = [
    FinGenAbGroup(o)
    for o in [(2,), (3,), (4,), (5,), (6,), (7,), (8,), (2, 2), (2, 4), (2, 2, 2), (1,)]
]


@pytest.mark.parametrize("G", SMALL_GROUPS, ids=lambda g: g.describe())
def test_boundary_matrices_compose_to_zero(G):
    """d_{l-1} after d_l vanishes: exactly over ZZ for l = 2, 3, and modulo
    the cyclic orders for l = 1 (the augmentation lands in the group)."""
    d1, d2, d3 = (instantiate(G, l) for l in (1, 2, 3))
    assert (d2 @ d1).is_zero()
    assert (d3 @ d2).is_zero()
    d0 = instantiate(G, 0)
    comp = d1 @ d0
    for (_, j), v in comp.entries():
        assert v % G.cyclic_orders[j] == 0


def test_evaluate_chain_examples():
    G = FinGenAbGroup((2,))
    one = (1,)
    assert evaluate_chain(FormalChain.zero(), {}, G) == {}
    sym = FormalChain.single(0, (X, Y))
    assert evaluate_chain(sym, {"x": one, "y": one}, G) == {(0, (one, one)): 1}
    d1 = apply_d(1, sym)
    assert evaluate_chain(d1, {"x": one, "y": one}, G) == {(0, ((0,),)): 1, (0, (one,)): -2}


def test_evaluate_chain_requires_assignment():
    with pytest.raises(ValueError):
        evaluate_chain(FormalChain.single(0, (X,)), {}, FinGenAbGroup((2,)))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10_000))
def test_evaluation_commutes_with_instantiation(seed):
    """evaluate(apply_d(l, c)) equals the matrix action of instantiate on
    evaluate(c), for random chains and assignments in groups of order <= 8."""
    rng = random.Random(seed)
    G = rng.choice(SMALL_GROUPS[:10])
    level = rng.choice([1, 2, 3])
    shape = SHAPES[level]
    elems = list(G.elements())

    terms = {}
    for _ in range(rng.randrange(1, 4)):
        slot = rng.randrange(len(shape))
        sym = tuple(
            tuple(rng.randrange(0, 3) for _ in range(4)) for _ in range(shape[slot])
        )
        terms[(slot, sym)] = rng.randrange(-3, 4) or 2
    chain = FormalChain(terms)
    assignment = {name: rng.choice(elems) for name in "xyzt"}

    lhs = evaluate_chain(apply_d(level, chain), assignment, G)

    M = instantiate(G, level)
    src = evaluate_chain(chain, assignment, G)
    order = G.order
    src_off = [0]
    for a in shape:
        src_off.append(src_off[-1] + order**a)
    tgt_shape = SHAPES[level - 1]
    tgt_off = [0]
    for a in tgt_shape:
        tgt_off.append(tgt_off[-1] + order**a)

    vec = [0] * src_off[-1]
    for (slot, tup), coeff in src.items():
        vec[src_off[slot] + G.tuple_index(tup)] = coeff
    out = [0] * tgt_off[-1]
    for (i, j), v in M.entries():
        if vec[i]:
            out[j] += vec[i] * v

    rhs_vec = [0] * tgt_off[-1]
    for (slot, tup), coeff in lhs.items():
        rhs_vec[tgt_off[slot] + G.tuple_index(tup)] = coeff
    assert out == rhs_vec
