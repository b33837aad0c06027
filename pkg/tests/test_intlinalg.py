"""Hermite/Smith forms, integer solving, and presented-group homology."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homcert.intlinalg import (
    IntMatrix,
    NotAComplexError,
    PresentedGroup,
    hnf,
    homology,
    kernel,
    rank,
    snf,
    snf_factors,
    solve,
)


def small_matrices(max_dim=6, max_entry=5):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-max_entry, max_entry), min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            ).map(IntMatrix.from_rows)
        )
    )


# -- Hermite form ------------------------------------------------------------


def test_hnf_identity_is_fixed():
    A = IntMatrix.identity(2)
    H, U = hnf(A)
    assert H == A
    assert U == A


def test_hnf_hand_reduced_example():
    # swap rows, subtract twice the first row: [[2,4],[1,1]] -> [[1,1],[0,2]]
    A = IntMatrix.from_rows([[2, 4], [1, 1]])
    H, U = hnf(A)
    assert H.to_rows() == [[1, 1], [0, 2]]
    assert U @ A == H


def test_hnf_zero_matrix():
    A = IntMatrix.zeros(3, 3)
    H, U = hnf(A)
    assert H.is_zero()
    assert U @ A == H


def test_hnf_empty_shapes():
    for r, c in [(0, 3), (3, 0), (0, 0)]:
        H, U = hnf(IntMatrix.zeros(r, c))
        assert H.shape == (r, c)
        assert U.shape == (r, r)


def _is_row_hnf(H):
    rows = H.row_dicts()
    pivots = []
    for r in rows:
        if not r:
            continue
        c = min(r)
        assert r[c] > 0, "pivot must be positive"
        pivots.append((c, r[c]))
    cols = [c for c, _ in pivots]
    assert cols == sorted(cols) and len(set(cols)) == len(cols)
    # entries above each pivot reduced into [0, pivot)
    dense = H.to_rows()
    for k, (c, p) in enumerate(pivots):
        for i in range(k):
            assert 0 <= dense[i][c] < p
    return True


@settings(max_examples=120, deadline=None)
@given(small_matrices())
def test_hnf_properties(A):
    H, U = hnf(A)
    assert U @ A == H
    assert _is_row_hnf(H)
    # U is unimodular: its own Hermite form must be the identity
    HU, _ = hnf(U)
    assert HU == IntMatrix.identity(A.rows)


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_hnf_deterministic(A):
    assert hnf(A)[0] == hnf(A)[0]
    assert snf(A).factors == snf(A).factors


# -- Smith form --------------------------------------------------------------


def test_snf_identity():
    assert snf(IntMatrix.identity(3)).factors == (1, 1, 1)


def test_snf_coprime_diagonal():
    # d1 = gcd of entries = 1, d1*d2 = |det| = 6
    assert snf(IntMatrix.diagonal([2, 3])).factors == (1, 6)


def test_snf_already_smith():
    assert snf(IntMatrix.diagonal([2, 2])).factors == (2, 2)


@settings(max_examples=120, deadline=None)
@given(small_matrices())
def test_snf_decomposition(A):
    form = snf(A)
    assert form.U @ A @ form.V == form.D
    # unimodularity via round-trip Hermite forms
    assert hnf(form.U)[0] == IntMatrix.identity(A.rows)
    assert hnf(form.V)[0] == IntMatrix.identity(A.cols)
    facts = form.factors
    assert all(f >= 0 for f in facts)
    for a, b in zip(facts, facts[1:]):
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0
    assert snf_factors(A) == facts


# -- solving -----------------------------------------------------------------


def test_solve_identity():
    A = IntMatrix.identity(3)
    assert solve(A, [4, -7, 0]) == [4, -7, 0]


def test_solve_parity_obstruction():
    assert solve(IntMatrix.from_rows([[2]]), [3]) is None


def test_solve_extended_gcd():
    assert solve(IntMatrix.from_rows([[2, 3]]), [1]) == [-1, 1]


def test_solve_rejects_dimension_mismatch():
    with pytest.raises(ValueError):
        solve(IntMatrix.identity(2), [1, 2, 3])


@settings(max_examples=120, deadline=None)
@given(small_matrices(max_dim=4, max_entry=4),
       st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_solve_reexpands(A, xs):
    x0 = xs[: A.cols]
    b = A.apply(x0)
    x = solve(A, b)
    assert x is not None
    assert A.apply(x) == b


@settings(max_examples=60, deadline=None)
@given(small_matrices(max_dim=3, max_entry=3),
       st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_solve_absence_is_genuine(A, bs):
    b = bs[: A.rows]
    x = solve(A, b)
    if x is not None:
        assert A.apply(x) == b
        return
    # brute-force box search oracle on dims <= 3
    span = range(-8, 9)
    for cand in itertools.product(span, repeat=A.cols):
        assert A.apply(list(cand)) != b


@settings(max_examples=80, deadline=None)
@given(small_matrices(max_dim=5, max_entry=4))
def test_kernel_is_killed(A):
    K = kernel(A)
    assert (A @ K).is_zero()
    # the kernel basis is independent: rank equals column count
    assert rank(K) == K.cols
    assert K.cols == A.cols - rank(A)


# -- presented groups --------------------------------------------------------


def test_presented_group_equality_by_invariants():
    # Z/2 x Z/4 presented two different ways
    a = PresentedGroup.from_orders([2, 4])
    b = PresentedGroup(2, IntMatrix.from_rows([[2, 2], [0, 4]]))
    assert a.invariant_factors == (2, 4)
    assert b == a
    assert PresentedGroup.from_orders([8]) != a


def test_presented_group_drops_units():
    g = PresentedGroup.from_orders([1, 1, 6])
    assert g.invariant_factors == (6,)
    assert g.describe() == "Z/6"
    assert PresentedGroup.from_orders([0, 2]).describe() == "Z/2 x Z"


# -- homology ----------------------------------------------------------------


def test_homology_free_middle():
    # 0 -> Z -> 0
    h = homology(
        IntMatrix.zeros(1, 0),
        IntMatrix.zeros(0, 1),
        (PresentedGroup.free(0), PresentedGroup.free(1), PresentedGroup.free(0)),
    )
    assert h.invariant_factors == (0,)


def test_homology_doubling_cokernel():
    # Z --x2--> Z -> 0 at the right-hand term
    h = homology(
        IntMatrix.from_rows([[2]]),
        IntMatrix.zeros(0, 1),
        (PresentedGroup.free(1), PresentedGroup.free(1), PresentedGroup.free(0)),
    )
    assert h.invariant_factors == (2,)


def test_homology_zero_maps():
    h = homology(
        IntMatrix.zeros(1, 1),
        IntMatrix.zeros(1, 1),
        (PresentedGroup.free(1), PresentedGroup.free(1), PresentedGroup.free(1)),
    )
    assert h.invariant_factors == (0,)


def test_homology_rejects_non_complex():
    with pytest.raises(NotAComplexError):
        homology(
            IntMatrix.from_rows([[1]]),
            IntMatrix.from_rows([[1]]),
            (PresentedGroup.free(1), PresentedGroup.free(1), PresentedGroup.free(1)),
        )


def _enumerate_homology(d_in, d_out, in_orders, mid_orders, out_orders):
    """Brute-force ker/im data for complexes of finite diagonal groups.

    Returns (order of H, kill-count map d -> #{h in H : d*h = 0}).
    """
    def reduce(vec, orders):
        return tuple(v % n for v, n in zip(vec, orders))

    mids = list(itertools.product(*(range(n) for n in mid_orders)))
    kernel_elems = [
        x for x in mids
        if reduce(d_out.apply(list(x)), out_orders) == (0,) * len(out_orders)
    ]
    image = {
        reduce(d_in.apply(list(y)), mid_orders)
        for y in itertools.product(*(range(n) for n in in_orders))
    }
    assert image <= set(kernel_elems)
    h_order = len(kernel_elems) // len(image)
    kills = {}
    for d in range(1, 65):
        cnt = sum(
            1 for x in kernel_elems
            if reduce(tuple(d * v for v in x), mid_orders) in image
        )
        kills[d] = cnt // len(image)
    return h_order, kills


@pytest.mark.parametrize(
    "d_in, d_out, orders",
    [
        # Z/4 --x2--> Z/4 --x2--> Z/4 : exact in the middle
        ([[2]], [[2]], ([4], [4], [4])),
        # Z/2 --0--> Z/4 --x2--> Z/2 reading 2: Z/4 -> Z/2 is reduction-compatible
        ([[2]], [[2]], ([2], [4], [2])),
        ([[0]], [[0]], ([6], [6], [6])),
        ([[2, 0], [0, 3]], [[3, 0], [0, 2]], ([6, 6], [6, 6], [6, 6])),
        ([[1], [1]], [[1, -1]], ([4], [4, 4], [4])),
    ],
)
def test_homology_matches_enumeration(d_in, d_out, orders):
    in_o, mid_o, out_o = orders
    A = IntMatrix.from_rows(d_in)
    B = IntMatrix.from_rows(d_out)
    terms = tuple(PresentedGroup.from_orders(o) for o in orders)
    h = homology(A, B, terms)
    h_order, kills = _enumerate_homology(A, B, in_o, mid_o, out_o)
    assert h.order() == h_order
    for d, cnt in kills.items():
        expected = 1
        for f in h.invariant_factors:
            expected *= gcd_like(d, f)
        assert cnt == expected, (d, h.invariant_factors)


def gcd_like(d, f):
    # number of solutions of d*x = 0 in Z/f (f = 0 would be infinite; not used here)
    import math

    return math.gcd(d, f) if f else 1


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_homology_random_small_complexes(data):
    """Random diagonal complexes of order <= 64, checked against enumeration."""
    dims = data.draw(st.tuples(st.integers(1, 2), st.integers(1, 2), st.integers(1, 2)))
    orders = tuple(
        tuple(data.draw(st.sampled_from([2, 3, 4]), label=f"o{i}{j}") for j in range(dims[i]))
        for i in range(3)
    )
    din = [
        [data.draw(st.integers(-2, 2), label=f"a{i}{j}") for j in range(dims[0])]
        for i in range(dims[1])
    ]
    dout = [
        [data.draw(st.integers(-2, 2), label=f"b{i}{j}") for j in range(dims[1])]
        for i in range(dims[2])
    ]
    A = IntMatrix.from_rows(din, dims[0])
    B = IntMatrix.from_rows(dout, dims[1])
    terms = tuple(PresentedGroup.from_orders(list(o)) for o in orders)

    # keep only instances that are genuine complexes with well-defined maps
    def preserves(mat, src_orders, dst_orders):
        for j, m in enumerate(src_orders):
            col = [m * mat.entry(i, j) for i in range(mat.rows)]
            if any(v % n for v, n in zip(col, dst_orders)):
                return False
        return True

    composite = B @ A
    ok = (
        preserves(A, orders[0], orders[1])
        and preserves(B, orders[1], orders[2])
        and all(
            composite.entry(i, j) % orders[2][i] == 0
            for i in range(composite.rows)
            for j in range(composite.cols)
        )
    )
    if not ok:
        return
    h = homology(A, B, terms)
    h_order, _ = _enumerate_homology(A, B, *orders)
    assert h.order() == h_order
