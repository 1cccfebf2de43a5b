from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fourcycle.gf2 import (
    GirthAtLeast,
    RowSpace,
    SparseBinaryMatrix,
    expand,
    from_alist,
    gf2_product,
    gf2_product_is_zero,
    gf2_rank,
    has_four_cycle,
    pack_rows,
    pack_vectors,
    quantum_rate,
    tanner_girth,
    to_alist,
)
from fourcycle.model import INF, ModelMatrix, check_girth6

from .conftest import DUAL_CONTAINING_3x6, EXAMPLE_723_C, EXAMPLE_723_D, dense_expand, dense_rank, nx_girth


def bits(rows):
    return SparseBinaryMatrix.from_dense(np.array([[int(c) for c in r] for r in rows], dtype=np.uint8))


dense_matrices = st.tuples(st.integers(1, 12), st.integers(1, 70)).flatmap(
    lambda mn: st.lists(st.lists(st.integers(0, 1), min_size=mn[1], max_size=mn[1]), min_size=mn[0], max_size=mn[0])
).map(lambda rows: np.array(rows, dtype=np.uint8))


# --- SparseBinaryMatrix ---------------------------------------------------------


def test_sparse_matrix_invariants():
    with pytest.raises(ValueError):
        SparseBinaryMatrix(2, 3, [[0, 3], []])
    assert SparseBinaryMatrix(1, 3, [[2, 1, 2]]).row(0) == [1, 2]
    a = SparseBinaryMatrix(2, 4, [[0, 3], [1]])
    assert a.to_dense().tolist() == [[1, 0, 0, 1], [0, 1, 0, 0]]
    assert a.transpose().to_dense().tolist() == a.to_dense().T.tolist()
    assert a == SparseBinaryMatrix.from_dense(a.to_dense())


@given(dense_matrices)
def test_dense_round_trip(a):
    s = SparseBinaryMatrix.from_dense(a)
    assert np.array_equal(s.to_dense(), a)
    assert np.array_equal(s.column_weights(), a.sum(axis=0))
    assert np.array_equal(s.row_weights(), a.sum(axis=1))


# --- expansion ------------------------------------------------------------------


def test_expand_examples():
    assert expand(ModelMatrix.from_rows([[1]], 3)).rows == [[1], [2], [0]]
    assert expand(ModelMatrix.from_rows([[INF]], 3)).rows == [[], [], []]
    assert expand(ModelMatrix.from_rows([[0]], 3)).rows == [[0], [1], [2]]


@settings(deadline=None)
@given(
    st.tuples(st.integers(1, 9), st.integers(1, 4), st.integers(1, 6)).flatmap(
        lambda pjl: st.lists(
            st.lists(st.one_of(st.integers(0, pjl[0] - 1), st.just(INF)), min_size=pjl[2], max_size=pjl[2]),
            min_size=pjl[1],
            max_size=pjl[1],
        ).map(lambda rows: (rows, pjl[0]))
    )
)
def test_expand_matches_dense_oracle(rows_P):
    rows, P = rows_P
    h = expand(ModelMatrix.from_rows(rows, P))
    assert np.array_equal(h.to_dense(), dense_expand(rows, P))


@given(st.integers(1, 11), st.integers(1, 4), st.integers(1, 6), st.randoms())
def test_expand_regular(P, J, L, rnd):
    mc = ModelMatrix.from_rows([[rnd.randrange(P) for _ in range(L)] for _ in range(J)], P)
    h = expand(mc)
    assert set(h.column_weights()) == {J} and set(h.row_weights()) == {L}


# --- products -------------------------------------------------------------------


def test_product_examples():
    hc = expand(ModelMatrix.from_rows(EXAMPLE_723_C, 7))
    hd = expand(ModelMatrix.from_rows(EXAMPLE_723_D, 7))
    assert gf2_product_is_zero(hc, hd)
    eye = SparseBinaryMatrix.from_dense(np.eye(2, dtype=np.uint8))
    assert not gf2_product_is_zero(eye, eye)
    assert gf2_product_is_zero(hc, SparseBinaryMatrix.zeros(5, 42))
    with pytest.raises(ValueError):
        gf2_product_is_zero(hc, SparseBinaryMatrix.zeros(5, 41))


@given(dense_matrices, st.randoms())
def test_product_matches_dense(a, rnd):
    b = np.array([[rnd.randrange(2) for _ in range(a.shape[1])] for _ in range(rnd.randrange(1, 8))], dtype=np.uint8)
    want = a.astype(int) @ b.T.astype(int) % 2
    sa, sb = SparseBinaryMatrix.from_dense(a), SparseBinaryMatrix.from_dense(b)
    assert np.array_equal(gf2_product(sa, sb).to_dense(), want)
    assert gf2_product_is_zero(sa, sb) == (not want.any())


# --- rank -----------------------------------------------------------------------


def test_rank_examples():
    assert gf2_rank(SparseBinaryMatrix.from_dense(np.eye(5, dtype=np.uint8))) == 5
    hc = expand(ModelMatrix.from_rows(EXAMPLE_723_C, 7))
    assert gf2_rank(hc) == dense_rank(hc.to_dense()) == 19
    a = np.array([[1, 0, 1, 1], [0, 1, 1, 0], [1, 0, 1, 1], [0, 0, 0, 1]], dtype=np.uint8)
    assert gf2_rank(SparseBinaryMatrix.from_dense(a)) == gf2_rank(SparseBinaryMatrix.from_dense(np.unique(a, axis=0))) == 3
    assert gf2_rank(SparseBinaryMatrix.zeros(3, 4)) == 0


@given(dense_matrices, st.randoms())
def test_rank_matches_dense_oracle(a, rnd):
    s = SparseBinaryMatrix.from_dense(a)
    r = gf2_rank(s)
    assert r == dense_rank(a)
    assert r <= min(a.shape)
    perm = list(range(a.shape[0]))
    rnd.shuffle(perm)
    assert gf2_rank(SparseBinaryMatrix.from_dense(a[perm])) == r


@given(dense_matrices)
def test_pack_vectors_matches_pack_rows(a):
    assert np.array_equal(pack_vectors(a), pack_rows(SparseBinaryMatrix.from_dense(a)))


@given(dense_matrices, st.randoms())
def test_rowspace_membership(a, rnd):
    span = RowSpace(SparseBinaryMatrix.from_dense(a))
    combo = np.zeros(a.shape[1], dtype=np.uint8)
    for row in a:
        if rnd.random() < 0.5:
            combo ^= row
    assert span.contains(combo[None, :])[0]
    v = np.array([rnd.randrange(2) for _ in range(a.shape[1])], dtype=np.uint8)
    assert span.contains(v[None, :])[0] == (dense_rank(np.vstack([a, v])) == dense_rank(a))


# --- quantum rate ---------------------------------------------------------------


def test_quantum_rate_examples():
    hc = expand(ModelMatrix.from_rows(EXAMPLE_723_C, 7))
    hd = expand(ModelMatrix.from_rows(EXAMPLE_723_D, 7))
    assert quantum_rate(hc, hd) == Fraction(42 - 19 - 19, 42)
    z = SparseBinaryMatrix.zeros(2, 4)
    assert quantum_rate(z, z) == 1
    eye = SparseBinaryMatrix.from_dense(np.eye(2, dtype=np.uint8))
    with pytest.raises(ValueError):
        quantum_rate(eye, eye)


# --- girth ----------------------------------------------------------------------


def test_girth_examples():
    assert tanner_girth(bits(DUAL_CONTAINING_3x6)) == 4
    hc = expand(ModelMatrix.from_rows(EXAMPLE_723_C, 7))
    g = tanner_girth(hc, cap=40)
    assert g == nx_girth(hc.to_dense()) and g >= 6
    assert tanner_girth(hc, cap=40, circulant=7) == g
    tree = bits(["1100", "0011"])
    g_tree = tanner_girth(tree, cap=8)
    assert isinstance(g_tree, GirthAtLeast) and str(g_tree) == ">=8"
    with pytest.raises(ValueError):
        tanner_girth(tree, cap=2)


def test_dual_containing_cycle_is_the_listed_one():
    a = bits(DUAL_CONTAINING_3x6).to_dense()
    # checks 0,1 and variables 4,5: (0,4),(1,4),(1,5),(0,5)
    assert a[0, 4] and a[1, 4] and a[1, 5] and a[0, 5]


@settings(deadline=None)
@given(dense_matrices)
def test_girth_matches_networkx(a):
    cap = 2 * sum(a.shape) + 2
    g = tanner_girth(SparseBinaryMatrix.from_dense(a), cap=cap)
    ref = nx_girth(a)
    if ref == float("inf"):
        assert isinstance(g, GirthAtLeast)
    else:
        assert g == ref
    assert has_four_cycle(SparseBinaryMatrix.from_dense(a)) == (ref == 4)


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 15), st.integers(2, 25), st.floats(0.05, 0.3), st.randoms())
def test_sparse_girth_matches_networkx(m, n, density, rnd):
    a = np.array([[rnd.random() < density for _ in range(n)] for _ in range(m)], dtype=np.uint8)
    g = tanner_girth(SparseBinaryMatrix.from_dense(a), cap=2 * (m + n) + 2)
    ref = nx_girth(a)
    assert (isinstance(g, GirthAtLeast) and ref == float("inf")) or g == ref


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 13), st.integers(1, 3), st.integers(2, 5), st.randoms())
def test_circulant_girth_shortcut(P, J, L, rnd):
    rows = [[rnd.choice([*range(P), INF]) for _ in range(L)] for _ in range(J)]
    h = expand(ModelMatrix.from_rows(rows, P))
    assert tanner_girth(h, cap=16, circulant=P) == tanner_girth(h, cap=16)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 13), st.integers(2, 4), st.integers(2, 6), st.randoms())
def test_girth6_condition_matches_bfs(P, J, L, rnd):
    rows = [[rnd.choice([*range(P), INF]) for _ in range(L)] for _ in range(J)]
    mc = ModelMatrix.from_rows(rows, P)
    assert check_girth6(mc) == (nx_girth(dense_expand(rows, P)) >= 6)


# --- Prop. 1 on small sizes ---------------------------------------------------------


@pytest.mark.parametrize("P", [2, 3, 5, 8])
def test_circulant_product_identity(P):
    vals = [*range(P), INF]
    for x in vals:
        for y in vals:
            ix = expand(ModelMatrix.from_rows([[x]], P))
            iy = expand(ModelMatrix.from_rows([[y]], P))
            diff = INF if INF in (x, y) else (x - y) % P
            assert gf2_product(ix, iy) == expand(ModelMatrix.from_rows([[diff]], P))


# --- alist ----------------------------------------------------------------------


def test_alist_format():
    a = bits(["110", "011"])
    assert to_alist(a) == "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n"


@given(dense_matrices)
def test_alist_round_trip(a):
    s = SparseBinaryMatrix.from_dense(a)
    assert from_alist(to_alist(s)) == s


def test_alist_malformed():
    with pytest.raises(ValueError):
        from_alist("3 2\n2 2\n")
    with pytest.raises(ValueError):
        from_alist("1 1\n1 1\n1\n1\n5\n1\n")
