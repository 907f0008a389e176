import itertools
import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fistab import exactlin


# independently coded oracles ------------------------------------------------


def rank_oracle(A, p):
    """Fraction-free Gaussian elimination with python ints; written
    separately from the library's vectorized reduction."""
    rows = [[int(x) % p for x in row] for row in np.atleast_2d(A)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    while col < ncols and rank < len(rows):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                f = rows[r][col] * inv % p
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def snf_oracle(A):
    from sympy.matrices.normalforms import smith_normal_form
    M = sympy.Matrix(A.tolist())
    D = smith_normal_form(M)
    diag = [abs(int(D[i, i])) for i in range(min(D.shape))]
    return tuple(d for d in diag if d != 0)


def minor_gcds(A, kmax):
    """gcd of all k x k minors, exact by expansion; tiny inputs only."""
    M = sympy.Matrix(A.tolist())
    out = []
    for k in range(1, kmax + 1):
        g = 0
        for rows in itertools.combinations(range(A.shape[0]), k):
            for cols in itertools.combinations(range(A.shape[1]), k):
                g = math.gcd(g, int(M[list(rows), list(cols)].det()))
        out.append(g)
    return out


mat_small = st.integers(-9, 9)


@st.composite
def matrices(draw, max_side=6, entries=mat_small):
    m = draw(st.integers(0, max_side))
    n = draw(st.integers(0, max_side))
    data = draw(st.lists(st.lists(entries, min_size=n, max_size=n),
                         min_size=m, max_size=m))
    return np.array(data, dtype=np.int64).reshape(m, n)


# rank / rref ---------------------------------------------------------------


@settings(max_examples=120, deadline=None)
@given(matrices(), st.sampled_from([2, 3, 5, 7]))
def test_rank_matches_oracle(A, p):
    assert exactlin.rank_modp(A, p) == rank_oracle(A, p)


@settings(max_examples=80, deadline=None)
@given(matrices(), st.sampled_from([2, 3, 5]))
def test_rank_transpose_invariant(A, p):
    assert exactlin.rank_modp(A, p) == exactlin.rank_modp(A.T, p)


@settings(max_examples=80, deadline=None)
@given(matrices(), st.sampled_from([2, 3, 5]))
def test_rref_pivots(A, p):
    R, pivots = exactlin.rref_modp(A, p)
    assert len(pivots) == exactlin.rank_modp(A, p)
    for r, c in enumerate(pivots):
        assert R[r, c] == 1
        col = R[:, c].copy()
        col[r] = 0
        assert not col.any()


@settings(max_examples=80, deadline=None)
@given(matrices(), st.sampled_from([2, 3, 5]))
def test_nullspace_annihilated(A, p):
    K = exactlin.nullspace_modp(A, p)
    assert K.shape[0] == A.shape[1]
    assert not (A @ K % p).any()
    assert exactlin.rank_modp(K, p) == K.shape[1]
    assert K.shape[1] == exactlin.nullity_modp(A, p)


@settings(max_examples=60, deadline=None)
@given(matrices(max_side=5), st.sampled_from([2, 3, 5]))
def test_solve_consistent_systems(A, p):
    rng = np.random.default_rng(0)
    x = rng.integers(0, p, size=A.shape[1])
    b = A @ x % p
    y = exactlin.solve_modp(A, b, p)
    assert (A @ y % p == b[:, None] % p).all()


def test_solve_inconsistent():
    A = np.array([[1, 0], [1, 0]])
    with pytest.raises(ValueError):
        exactlin.solve_modp(A, np.array([1, 2]), 3)


@settings(max_examples=60, deadline=None)
@given(matrices(max_side=5), st.sampled_from([2, 3, 5]))
def test_colspace_projection_section(A, p):
    proj, sec = exactlin.colspace_complement_projection(A, p)
    q = A.shape[0] - exactlin.rank_modp(A, p)
    assert proj.shape == (q, A.shape[0])
    assert not (proj @ A % p).any()
    assert (proj @ sec % p == np.eye(q, dtype=np.int64) % p).all()


# sparse and GF(2) paths ----------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(matrices(), st.sampled_from([2, 3, 5]))
def test_sparse_rank_matches_dense(A, p):
    cols = []
    for j in range(A.shape[1]):
        cols.append({i: int(A[i, j]) % p for i in range(A.shape[0])
                     if A[i, j] % p})
    assert exactlin.sparse_rank_modp(cols, A.shape[0], p) == rank_oracle(A, p)


@settings(max_examples=60, deadline=None)
@given(matrices(max_side=9, entries=st.integers(0, 1)))
def test_gf2_dense_matches_oracle(A):
    assert exactlin.rank_gf2_dense(A) == rank_oracle(A, 2)


@settings(max_examples=60, deadline=None)
@given(matrices(max_side=9, entries=st.integers(0, 1)))
def test_gf2_packed_matches_dense(A):
    rows = [list(np.nonzero(A[i] % 2)[0]) for i in range(A.shape[0])]
    M = exactlin.pack_rows_gf2(rows, A.shape[1])
    assert exactlin.rank_gf2_packed(M, A.shape[1]) == rank_oracle(A, 2)


def test_gf2_pack_cancels_duplicates():
    M = exactlin.pack_rows_gf2([[3, 3, 5]], 8)
    assert exactlin.rank_gf2_packed(M.copy(), 8) == 1
    M2 = exactlin.pack_rows_gf2([[3, 3]], 8)
    assert exactlin.rank_gf2_packed(M2, 8) == 0


def test_gf2_from_columns_wide():
    rng = np.random.default_rng(5)
    A = rng.integers(0, 2, size=(40, 300))
    cols = np.array([np.nonzero(A[:, j])[0][:3] for j in range(300)
                     if A[:, j].sum() >= 3])
    dense = np.zeros((40, len(cols)), dtype=np.int64)
    for j, idx in enumerate(cols):
        for i in idx:
            dense[i, j] ^= 1
    assert exactlin.rank_gf2_from_columns(cols, 40) == rank_oracle(dense, 2)


# Smith normal form ---------------------------------------------------------


@settings(max_examples=100, deadline=None)
@given(matrices(max_side=5, entries=st.integers(-20, 20)))
def test_snf_matches_sympy(A):
    assert exactlin.smith_normal_form(A) == snf_oracle(A)


@settings(max_examples=60, deadline=None)
@given(matrices(max_side=4, entries=st.integers(-6, 6)))
def test_snf_minor_gcd_characterization(A):
    inv = exactlin.smith_normal_form(A)
    gcds = minor_gcds(A, len(inv))
    prod = 1
    for k, d in enumerate(inv):
        prod *= d
        assert prod == gcds[k]
    for a, b in zip(inv, inv[1:]):
        assert b % a == 0


def test_snf_frozen_examples():
    assert exactlin.smith_normal_form(np.diag([4, 6])) == (2, 12)
    assert exactlin.smith_normal_form(np.zeros((3, 3), dtype=np.int64)) == ()
    A = np.array([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    assert exactlin.smith_normal_form(A) == (2, 2, 156)


def test_bad_prime_rejected():
    with pytest.raises(ValueError):
        exactlin.rank_modp(np.eye(2, dtype=np.int64), 4)
    with pytest.raises(ValueError):
        exactlin.rank_modp(np.eye(2, dtype=np.int64), 1)
