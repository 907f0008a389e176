"""Exact linear algebra over prime fields and over the integers.

Everything here is exact: F_p arithmetic uses int64 numpy arrays reduced
mod p (p < 2**31, so products fit in int64 headroom after reduction), the
integer Smith normal form uses arbitrary-precision Python ints.  The two
heavy paths are a vectorized dense elimination mod p and a bit-packed
GF(2) eliminator for large sparse boundary matrices.
"""

from __future__ import annotations

import numpy as np

_PMAX = 2**31


def _check_p(p: int) -> None:
    if not (2 <= p < _PMAX):
        raise ValueError(f"modulus {p} out of supported range [2, 2^31)")
    # cheap deterministic primality for the sizes we allow
    if p % 2 == 0 and p != 2:
        raise ValueError(f"modulus {p} is not prime")
    d = 3
    while d * d <= p:
        if p % d == 0:
            raise ValueError(f"modulus {p} is not prime")
        d += 2


def asmod(A, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2:
        raise ValueError("expected a 2d array")
    return A % p


def rref_modp(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p.  Returns (R, pivot_columns)."""
    _check_p(p)
    R = asmod(A, p).copy()
    m, n = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = (R[r] * inv) % p
        others = np.nonzero(R[:, c])[0]
        others = others[others != r]
        if others.size:
            R[others] = (R[others] - np.outer(R[others, c], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank_modp(A, p: int) -> int:
    A = asmod(A, p)
    if min(A.shape) == 0:
        return 0
    if p == 2 and A.shape[0] * A.shape[1] > 1 << 22:
        return rank_gf2_dense(A)
    return len(rref_modp(A, p)[1])


def nullity_modp(A, p: int) -> int:
    A = np.asarray(A)
    return A.shape[1] - rank_modp(A, p)


def nullspace_modp(A, p: int) -> np.ndarray:
    """Columns form a basis of ker(A) over F_p."""
    A = asmod(A, p)
    m, n = A.shape
    R, pivots = rref_modp(A, p)
    free = [c for c in range(n) if c not in set(pivots)]
    K = np.zeros((n, len(free)), dtype=np.int64)
    for j, fc in enumerate(free):
        K[fc, j] = 1
        for i, pc in enumerate(pivots):
            K[pc, j] = (-int(R[i, fc])) % p
    return K


def solve_modp(A, B, p: int) -> np.ndarray:
    """Solve A @ X = B mod p.  Raises ValueError if inconsistent."""
    A = asmod(A, p)
    B = np.asarray(B, dtype=np.int64)
    if B.ndim == 1:
        B = B[:, None]
    B = asmod(B, p)
    m, n = A.shape
    aug = np.concatenate([A, B], axis=1)
    R, pivots = rref_modp(aug, p)
    if any(c >= n for c in pivots):
        raise ValueError("inconsistent linear system mod p")
    X = np.zeros((n, B.shape[1]), dtype=np.int64)
    for i, pc in enumerate(pivots):
        X[pc] = R[i, n:]
    return X


def colspace_complement_projection(A, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Projection onto a complement of the column space of A.

    Returns (proj, section): proj is q x m with proj @ A = 0 and
    proj @ section = I_q, where q = m - rank(A).  Coordinates of the
    quotient F_p^m / col(A) are the non-pivot rows of the column-reduced
    form of A.
    """
    A = asmod(A, p)
    m = A.shape[0]
    R, pivots = rref_modp(A.T, p)  # rows of R span the column space of A
    r = len(pivots)
    free = [i for i in range(m) if i not in set(pivots)]
    # in rref, reducing x against R clears exactly the pivot coordinates:
    # x - sum_k x[pc_k] R[k], supported on the free coordinates afterwards
    P = np.zeros((m, r), dtype=np.int64)
    for k, pc in enumerate(pivots):
        P[pc, k] = 1
    Red = (np.eye(m, dtype=np.int64) - R[:r].T @ P.T) % p
    proj = Red[free, :] % p
    section = np.zeros((m, len(free)), dtype=np.int64)
    for j, fr in enumerate(free):
        section[fr, j] = 1
    return proj, section


# ---------------------------------------------------------------------------
# sparse left-to-right column reduction (primary sparse path)
# ---------------------------------------------------------------------------


def sparse_rank_modp(columns: list[dict[int, int]], nrows: int, p: int) -> int:
    """Rank of a column-sparse matrix over F_p.

    `columns[j]` maps row index -> coefficient.  Left-to-right reduction
    with a pivot table keyed on the lowest (largest-index) nonzero row,
    the same scheme used for boundary-matrix reduction.
    """
    _check_p(p)
    pivot: dict[int, dict[int, int]] = {}
    rank = 0
    for col in columns:
        col = {r: v % p for r, v in col.items() if v % p}
        while col:
            low = max(col)
            piv = pivot.get(low)
            if piv is None:
                inv = pow(col[low], -1, p)
                pivot[low] = {r: (v * inv) % p for r, v in col.items()}
                rank += 1
                break
            f = col[low]
            for r, v in piv.items():
                w = (col.get(r, 0) - f * v) % p
                if w:
                    col[r] = w
                else:
                    col.pop(r, None)
        if rank == nrows:
            break
    return rank


# ---------------------------------------------------------------------------
# bit-packed GF(2)
# ---------------------------------------------------------------------------


def pack_rows_gf2(rows: list[list[int]] | np.ndarray, ncols: int) -> np.ndarray:
    """Pack row-wise column-index lists into a (nrows, ceil(ncols/64)) table."""
    nwords = (ncols + 63) // 64
    if isinstance(rows, np.ndarray) and rows.ndim == 2:
        # fixed number of entries per row: vectorized scatter with parity
        nrows = rows.shape[0]
        M = np.zeros((nrows, nwords), dtype=np.uint64)
        for k in range(rows.shape[1]):
            idx = rows[:, k].astype(np.int64)
            M[np.arange(nrows), idx >> 6] ^= np.uint64(1) << (idx & 63).astype(np.uint64)
        return M
    M = np.zeros((len(rows), nwords), dtype=np.uint64)
    for i, cols in enumerate(rows):
        for c in cols:
            M[i, c >> 6] ^= np.uint64(1) << np.uint64(c & 63)
    return M


def rank_gf2_packed(M: np.ndarray, ncols: int, max_rank: int | None = None) -> int:
    """Rank of a bit-packed GF(2) matrix.  Destroys M.

    Column-sweep elimination with periodic compaction of zeroed rows;
    XORs are restricted to the word range at and beyond the pivot word.
    """
    if M.size == 0:
        return 0
    M = np.ascontiguousarray(M)
    nwords = M.shape[1]
    rank = 0
    r = 0
    cap = max_rank if max_rank is not None else min(M.shape[0], ncols)
    since_compact = 0
    for c in range(ncols):
        if rank >= cap or r >= M.shape[0]:
            break
        w, b = divmod(c, 64)
        mask = np.uint64(1) << np.uint64(b)
        hit = np.nonzero(M[r:, w] & mask)[0]
        if hit.size == 0:
            continue
        piv = r + int(hit[0])
        if piv != r:
            tmp = M[r].copy()
            M[r] = M[piv]
            M[piv] = tmp
        rest = r + hit[1:]
        if rest.size:
            M[rest[:, None], np.arange(w, nwords)] ^= M[r, w:]
        r += 1
        rank += 1
        since_compact += 1
        if since_compact >= 2048 and M.shape[0] - r > 4096:
            live = np.nonzero(M[r:].any(axis=1))[0]
            if live.size < M.shape[0] - r:
                M = np.concatenate([M[:r], M[r + live]], axis=0)
            since_compact = 0
    return rank


def rank_gf2_dense(A) -> int:
    A = (np.asarray(A, dtype=np.int64) % 2).astype(np.uint8)
    m, n = A.shape
    if m == 0 or n == 0:
        return 0
    if m < n:
        A = A.T
        m, n = n, m
    packed = pack_rows_gf2([list(np.nonzero(row)[0]) for row in A], n)
    return rank_gf2_packed(packed, n)


def rank_gf2_from_columns(columns: np.ndarray, nrows: int,
                          max_rank: int | None = None) -> int:
    """Rank over GF(2) of a matrix given as (ncols, k) row-index array,
    column j having ones exactly at rows columns[j, :] (distinct entries).
    Transposes to rows internally: rank is symmetric."""
    M = pack_rows_gf2(columns, nrows)
    return rank_gf2_packed(M, nrows, max_rank=max_rank)


# ---------------------------------------------------------------------------
# integer Smith normal form
# ---------------------------------------------------------------------------


def smith_normal_form(A) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of an integer matrix.

    Exact over Python ints.  Pivot selection prefers smallest absolute
    value and breaks ties by a Markowitz-style fill estimate.  Zero
    invariant factors are not reported: the tuple has length rank(A).
    """
    A = np.asarray(A)
    mat: dict[tuple[int, int], int] = {}
    m, n = A.shape
    for i in range(m):
        for j in range(n):
            v = int(A[i, j])
            if v:
                mat[(i, j)] = v
    rows: dict[int, set[int]] = {}
    cols: dict[int, set[int]] = {}
    for (i, j) in mat:
        rows.setdefault(i, set()).add(j)
        cols.setdefault(j, set()).add(i)

    def set_entry(i: int, j: int, v: int) -> None:
        if v:
            if (i, j) not in mat:
                rows.setdefault(i, set()).add(j)
                cols.setdefault(j, set()).add(i)
            mat[(i, j)] = v
        elif (i, j) in mat:
            del mat[(i, j)]
            rows[i].discard(j)
            cols[j].discard(i)

    def add_row(dst: int, src: int, f: int) -> None:
        if f == 0:
            return
        for j in list(rows.get(src, ())):
            set_entry(dst, j, mat.get((dst, j), 0) + f * mat[(src, j)])

    def add_col(dst: int, src: int, f: int) -> None:
        if f == 0:
            return
        for i in list(cols.get(src, ())):
            set_entry(i, dst, mat.get((i, dst), 0) + f * mat[(i, src)])

    diags: list[int] = []
    while mat:
        best = None
        best_key = None
        for (i, j), v in mat.items():
            fill = (len(rows[i]) - 1) * (len(cols[j]) - 1)
            key = (abs(v), fill)
            if best_key is None or key < best_key:
                best_key = key
                best = (i, j)
        pi, pj = best
        # make the pivot divide its whole row and column, then clear
        while True:
            pv = mat[(pi, pj)]
            moved = False
            for i in list(cols.get(pj, ())):
                if i == pi:
                    continue
                q = mat[(i, pj)] // pv
                add_row(i, pi, -q)
                if (i, pj) in mat:
                    # remainder smaller than pivot: swap roles
                    pi = i
                    moved = True
                    break
            if moved:
                continue
            pv = mat[(pi, pj)]
            for j in list(rows.get(pi, ())):
                if j == pj:
                    continue
                q = mat[(pi, j)] // pv
                add_col(j, pj, -q)
                if (pi, j) in mat:
                    pj = j
                    moved = True
                    break
            if not moved:
                break
        pv = mat[(pi, pj)]
        # pivot row/col now only contain the pivot itself, unless some
        # remainder reappeared; loop above guarantees clean state
        assert rows[pi] == {pj} and cols[pj] == {pi}
        diags.append(abs(pv))
        set_entry(pi, pj, 0)

    # enforce the divisibility chain among diagonal entries
    diags = [d for d in diags if d]
    changed = True
    while changed:
        changed = False
        for a in range(len(diags)):
            for b in range(a + 1, len(diags)):
                if diags[b] % diags[a]:
                    import math
                    g = math.gcd(diags[a], diags[b])
                    lcm = diags[a] * diags[b] // g
                    diags[a], diags[b] = g, lcm
                    changed = True
    diags.sort()
    return tuple(diags)
