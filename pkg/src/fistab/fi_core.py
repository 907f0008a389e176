"""Truncated consistent sequences of symmetric-group representations.

A window stores, for 0 <= n <= N over F_p: the dimension of level n, the
matrices of the adjacent transpositions s_i = (i, i+1) acting on level n,
and the structure map from level n-1 into level n induced by the standard
inclusion.  All consistency identities (involution, braid, commutation,
equivariance of the structure maps, and the two-step symmetry of composed
structure maps) are checked by `validate`.

Points of [n] = {0, ..., n-1} are 0-indexed throughout; s_i swaps points
i and i+1 for 0 <= i <= n-2.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import exactlin


class ValidationError(Exception):
    """A consistency identity failed; message names level and identity."""


class WindowError(Exception):
    """Requested computation does not fit in the stored window."""


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------


def adjacent_factorization(sigma: tuple[int, ...]) -> list[int]:
    """Write sigma as s_{i_k} .. s_{i_1} (apply i_1 first).

    Returned list is [i_1, ..., i_k]; sorting the one-line form by
    adjacent swaps records the factorization.
    """
    lst = list(sigma)
    swaps: list[int] = []
    done = False
    while not done:
        done = True
        for i in range(len(lst) - 1):
            if lst[i] > lst[i + 1]:
                lst[i], lst[i + 1] = lst[i + 1], lst[i]
                swaps.append(i)
                done = False
    return swaps


def compose(sigma, tau) -> tuple[int, ...]:
    """(sigma o tau)(x) = sigma(tau(x))."""
    return tuple(sigma[t] for t in tau)


def matrix_of_permutation(trans_mats: list[np.ndarray], sigma, p: int,
                          dim: int) -> np.ndarray:
    """Action matrix of an arbitrary permutation from the adjacent ones.

    trans_mats[i] must represent s_i; representation property gives
    rho(sigma) as the product over an adjacent factorization.
    """
    out = np.eye(dim, dtype=np.int64)
    for i in adjacent_factorization(tuple(sigma)):
        out = trans_mats[i] @ out % p
    return out


def insertion_permutation(m: int, t: int) -> tuple[int, ...]:
    """Permutation of [m+1] sending i -> i for i < t, i -> i+1 for t <= i <= m-1
    and m -> t.  Composed with the standard inclusion it realizes the
    order-preserving injection [m] -> [m+1] whose image misses t."""
    out = list(range(m + 1))
    for i in range(t, m):
        out[i] = i + 1
    out[m] = t
    return tuple(out)


# ---------------------------------------------------------------------------
# finite sequences of S_m representations (no structure maps)
# ---------------------------------------------------------------------------


@dataclass
class FBWindow:
    """Levelwise S_m-representations for 0 <= m <= top degree."""

    p: int
    dims: list[int]
    trans: list[list[np.ndarray]]  # trans[m][i] = matrix of s_i on level m

    @property
    def degree(self) -> int:
        """Largest m with a nonzero level, or -1."""
        d = -1
        for m, dm in enumerate(self.dims):
            if dm:
                d = m
        return d

    def perm_matrix(self, m: int, sigma) -> np.ndarray:
        return matrix_of_permutation(self.trans[m], sigma, self.p, self.dims[m])


def fb_zero(p: int, top: int) -> FBWindow:
    return FBWindow(p, [0] * (top + 1),
                    [[np.zeros((0, 0), dtype=np.int64)] * max(0, m - 1)
                     for m in range(top + 1)])


def fb_trivial(p: int, deg: int, top: int | None = None) -> FBWindow:
    top = deg if top is None else top
    V = fb_zero(p, top)
    V.dims[deg] = 1
    V.trans[deg] = [np.eye(1, dtype=np.int64)] * max(0, deg - 1)
    return V


def fb_regular(p: int, deg: int, top: int | None = None) -> FBWindow:
    """The group algebra of S_deg as a left module over itself."""
    top = deg if top is None else top
    V = fb_zero(p, top)
    perms = list(itertools.permutations(range(deg)))
    index = {s: k for k, s in enumerate(perms)}
    V.dims[deg] = len(perms)
    mats = []
    for i in range(deg - 1):
        si = list(range(deg))
        si[i], si[i + 1] = si[i + 1], si[i]
        si = tuple(si)
        A = np.zeros((len(perms), len(perms)), dtype=np.int64)
        for s in perms:
            A[index[compose(si, s)], index[s]] = 1
        mats.append(A)
    V.trans[deg] = mats
    return V


def fb_direct_sum(*parts: FBWindow) -> FBWindow:
    p = parts[0].p
    top = max(len(V.dims) for V in parts) - 1
    out = fb_zero(p, top)
    for m in range(top + 1):
        dims = [V.dims[m] if m < len(V.dims) else 0 for V in parts]
        out.dims[m] = sum(dims)
        mats = []
        for i in range(max(0, m - 1)):
            blocks = []
            for V, d in zip(parts, dims):
                blocks.append(V.trans[m][i] if d else
                              np.zeros((0, 0), dtype=np.int64))
            mats.append(_block_diag(blocks, out.dims[m]))
        out.trans[m] = mats
    return out


def _block_diag(blocks: list[np.ndarray], dim: int) -> np.ndarray:
    A = np.zeros((dim, dim), dtype=np.int64)
    off = 0
    for B in blocks:
        d = B.shape[0]
        A[off:off + d, off:off + d] = B
        off += d
    return A


# ---------------------------------------------------------------------------
# the windowed modules
# ---------------------------------------------------------------------------


@dataclass
class FIModuleWindow:
    p: int
    N: int
    dims: list[int]
    act: list[list[np.ndarray]]      # act[n][i]: s_i on level n, i <= n-2
    phi: list[np.ndarray | None]     # phi[n]: level n-1 -> level n; phi[0] None
    name: str = ""

    def perm_matrix(self, n: int, sigma) -> np.ndarray:
        return matrix_of_permutation(self.act[n], sigma, self.p, self.dims[n])

    def insertion_map(self, m: int, t: int) -> np.ndarray:
        """Matrix of the order-preserving injection [m] -> [m+1] missing t."""
        if m + 1 > self.N:
            raise WindowError(f"insertion into level {m+1} beyond window {self.N}")
        pi = insertion_permutation(m, t)
        return self.perm_matrix(m + 1, pi) @ self.phi[m + 1] % self.p

    def composite_phi(self, a: int, b: int) -> np.ndarray:
        """Structure map composite: level a -> level b along standard inclusions."""
        out = np.eye(self.dims[a], dtype=np.int64)
        for n in range(a + 1, b + 1):
            out = self.phi[n] @ out % self.p
        return out


def validate(M: FIModuleWindow) -> list[str]:
    """All consistency identities; returns a list of violation messages."""
    bad: list[str] = []
    p = M.p
    if len(M.dims) != M.N + 1:
        return [f"dims has length {len(M.dims)}, expected N+1={M.N+1}"]
    for n in range(M.N + 1):
        d = M.dims[n]
        if len(M.act[n]) != max(0, n - 1):
            bad.append(f"level {n}: expected {max(0, n-1)} transposition matrices")
            continue
        for i, A in enumerate(M.act[n]):
            if A.shape != (d, d):
                bad.append(f"level {n}: s_{i} matrix has shape {A.shape}, want {(d, d)}")
                continue
            if not ((A @ A) % p == np.eye(d, dtype=np.int64)).all():
                bad.append(f"level {n}: involution fails for s_{i}")
        for i in range(n - 2):
            A, B = M.act[n][i], M.act[n][i + 1]
            if not ((A @ B @ A) % p == (B @ A @ B) % p).all():
                bad.append(f"level {n}: braid relation fails at s_{i}, s_{i+1}")
        for i in range(n - 1):
            for j in range(i + 2, n - 1):
                A, B = M.act[n][i], M.act[n][j]
                if not ((A @ B) % p == (B @ A) % p).all():
                    bad.append(f"level {n}: s_{i} and s_{j} do not commute")
        if n >= 1:
            P = M.phi[n]
            if P is None or P.shape != (d, M.dims[n - 1]):
                bad.append(f"level {n}: structure map has wrong shape")
                continue
            for i in range(n - 2):
                lhs = (P @ M.act[n - 1][i]) % p
                rhs = (M.act[n][i] @ P) % p
                if not (lhs == rhs).all():
                    bad.append(f"level {n}: structure map not equivariant at s_{i}")
        if n >= 2:
            PP = (M.phi[n] @ M.phi[n - 1]) % p
            top = M.act[n][n - 2]
            if not ((top @ PP) % p == PP).all():
                bad.append(f"level {n}: two-step symmetry fails")
    return bad


def assert_valid(M: FIModuleWindow) -> None:
    bad = validate(M)
    if bad:
        raise ValidationError("; ".join(bad))


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def constant_module(p: int, N: int) -> FIModuleWindow:
    dims = [1] * (N + 1)
    act = [[np.eye(1, dtype=np.int64)] * max(0, n - 1) for n in range(N + 1)]
    phi: list[np.ndarray | None] = [None] + [np.eye(1, dtype=np.int64)] * N
    return FIModuleWindow(p, N, dims, act, phi, name="constant")


def torsion_point_module(p: int, m: int, N: int) -> FIModuleWindow:
    """One-dimensional trivial representation at level m, zero elsewhere."""
    dims = [1 if n == m else 0 for n in range(N + 1)]
    act = []
    for n in range(N + 1):
        d = dims[n]
        act.append([np.eye(d, dtype=np.int64)] * max(0, n - 1))
    phi: list[np.ndarray | None] = [None]
    for n in range(1, N + 1):
        phi.append(np.zeros((dims[n], dims[n - 1]), dtype=np.int64))
    return FIModuleWindow(p, N, dims, act, phi, name=f"torsion_point({m})")


def induced_basis(V: FBWindow, n: int) -> list[tuple[tuple[int, ...], int]]:
    """Basis of the level-n piece of the induced module on V.

    Entries are (subset of [n] as a sorted tuple, index into the level-|subset|
    basis of V); ordered by subset size, then subset, then index.
    """
    basis = []
    for j in range(min(n, len(V.dims) - 1) + 1):
        if V.dims[j] == 0:
            continue
        for A in itertools.combinations(range(n), j):
            for v in range(V.dims[j]):
                basis.append((A, v))
    return basis


def induced_module(V: FBWindow, N: int) -> FIModuleWindow:
    """Left adjoint of the forgetful functor, evaluated on the window.

    Level n has one basis vector per (j-subset A of [n], basis vector of
    level j of V); s_i acts by moving the subset and straightening the
    injection back to order-preserving form, which twists by an adjacent
    transposition of V exactly when i and i+1 both lie in A.
    """
    p = V.p
    dims = []
    bases = []
    indexes = []
    for n in range(N + 1):
        b = induced_basis(V, n)
        bases.append(b)
        indexes.append({key: k for k, key in enumerate(b)})
        dims.append(len(b))
    act: list[list[np.ndarray]] = []
    phi: list[np.ndarray | None] = [None]
    for n in range(N + 1):
        mats = []
        for i in range(n - 1):
            A = np.zeros((dims[n], dims[n]), dtype=np.int64)
            for col, (sub, v) in enumerate(bases[n]):
                if i in sub and i + 1 in sub:
                    r = sub.index(i)
                    blk = V.trans[len(sub)][r]
                    for w in range(V.dims[len(sub)]):
                        if blk[w, v] % p:
                            A[indexes[n][(sub, w)], col] = blk[w, v] % p
                else:
                    moved = tuple(sorted(
                        (i + 1 if x == i else i if x == i + 1 else x)
                        for x in sub))
                    A[indexes[n][(moved, v)], col] = 1
            mats.append(A)
        act.append(mats)
        if n >= 1:
            P = np.zeros((dims[n], dims[n - 1]), dtype=np.int64)
            for col, (sub, v) in enumerate(bases[n - 1]):
                P[indexes[n][(sub, v)], col] = 1
            phi.append(P)
    name = "induced"
    return FIModuleWindow(p, N, dims, act, phi, name=name)


def free_module(p: int, m: int, N: int) -> FIModuleWindow:
    """Induced on the group algebra at level m; dimension n!/(n-m)! at level n."""
    M = induced_module(fb_regular(p, m), N)
    M.name = f"free({m})"
    return M


def direct_sum(M1: FIModuleWindow, M2: FIModuleWindow) -> FIModuleWindow:
    if (M1.p, M1.N) != (M2.p, M2.N):
        raise ValueError("direct sum requires matching modulus and window")
    p, N = M1.p, M1.N
    dims = [M1.dims[n] + M2.dims[n] for n in range(N + 1)]
    act = []
    phi: list[np.ndarray | None] = [None]
    for n in range(N + 1):
        mats = []
        for i in range(n - 1):
            mats.append(_block_diag([M1.act[n][i], M2.act[n][i]], dims[n]))
        act.append(mats)
        if n >= 1:
            P = np.zeros((dims[n], dims[n - 1]), dtype=np.int64)
            P[:M1.dims[n], :M1.dims[n - 1]] = M1.phi[n]
            P[M1.dims[n]:, M1.dims[n - 1]:] = M2.phi[n]
            phi.append(P)
    return FIModuleWindow(p, N, dims, act, phi,
                          name=f"({M1.name})+({M2.name})")


# ---------------------------------------------------------------------------
# maps, submodules, quotients
# ---------------------------------------------------------------------------


@dataclass
class FIMapWindow:
    """A levelwise map commuting with the group action and structure maps."""

    source: FIModuleWindow
    target: FIModuleWindow
    mats: list[np.ndarray]

    def validate(self) -> list[str]:
        bad = []
        S, T = self.source, self.target
        p = S.p
        for n in range(S.N + 1):
            F = self.mats[n]
            if F.shape != (T.dims[n], S.dims[n]):
                bad.append(f"level {n}: map has wrong shape")
                continue
            for i in range(n - 1):
                if not ((F @ S.act[n][i]) % p == (T.act[n][i] @ F) % p).all():
                    bad.append(f"level {n}: map not equivariant at s_{i}")
            if n >= 1:
                lhs = (F @ S.phi[n]) % p
                rhs = (T.phi[n] @ self.mats[n - 1]) % p
                if not (lhs == rhs).all():
                    bad.append(f"level {n}: map does not commute with structure maps")
        return bad


def quotient_by_images(M: FIModuleWindow, images: list[np.ndarray],
                       name: str = "") -> FIModuleWindow:
    """Quotient of M by the levelwise column spans (assumed invariant)."""
    p = M.p
    projs, secs, dims = [], [], []
    for n in range(M.N + 1):
        pr, sec = exactlin.colspace_complement_projection(images[n], p)
        projs.append(pr)
        secs.append(sec)
        dims.append(pr.shape[0])
    act = []
    phi: list[np.ndarray | None] = [None]
    for n in range(M.N + 1):
        mats = []
        for i in range(n - 1):
            mats.append(projs[n] @ M.act[n][i] @ secs[n] % p)
        act.append(mats)
        if n >= 1:
            phi.append(projs[n] @ M.phi[n] @ secs[n - 1] % p)
    return FIModuleWindow(p, M.N, dims, act, phi, name=name or f"quot({M.name})")


def submodule_from_kernels(f: FIMapWindow, name: str = "") -> FIModuleWindow:
    """The levelwise kernel of an equivariant map, as a module window."""
    M = f.source
    p = M.p
    kers = [exactlin.nullspace_modp(f.mats[n], p) for n in range(M.N + 1)]
    dims = [K.shape[1] for K in kers]
    act = []
    phi: list[np.ndarray | None] = [None]
    for n in range(M.N + 1):
        mats = []
        for i in range(n - 1):
            mats.append(exactlin.solve_modp(kers[n], M.act[n][i] @ kers[n] % p, p))
        act.append(mats)
        if n >= 1:
            phi.append(exactlin.solve_modp(kers[n], M.phi[n] @ kers[n - 1] % p, p))
    return FIModuleWindow(p, M.N, dims, act, phi, name=name or "ker")


def cokernel_module(f: FIMapWindow, name: str = "") -> FIModuleWindow:
    return quotient_by_images(f.target, f.mats, name=name or "coker")


# ---------------------------------------------------------------------------
# shift and derivative
# ---------------------------------------------------------------------------


def shift(M: FIModuleWindow, a: int = 1) -> FIModuleWindow:
    """Add a points at the top; the window shrinks by a.

    Level n of the result is level n+a of M; the structure map at level n
    is the action of the transposition of the two top points composed
    with the original structure map, which realizes the injection sending
    the added point to the new top element.
    """
    if a < 0 or a > M.N:
        raise WindowError(f"cannot shift by {a} inside window {M.N}")
    out = M
    for _ in range(a):
        out = _shift_once(out)
    out.name = f"shift({M.name},{a})" if a else M.name
    return out


def _shift_once(M: FIModuleWindow) -> FIModuleWindow:
    p = M.p
    N = M.N - 1
    dims = [M.dims[n + 1] for n in range(N + 1)]
    act = [[M.act[n + 1][i] for i in range(n - 1)] for n in range(N + 1)]
    phi: list[np.ndarray | None] = [None]
    for n in range(1, N + 1):
        top = M.act[n + 1][n - 1]  # transposition of points n-1, n at level n+1
        phi.append(top @ M.phi[n + 1] % p)
    return FIModuleWindow(p, N, dims, act, phi)


def derivative(M: FIModuleWindow, a: int = 1) -> FIModuleWindow:
    """Iterated cokernel of the canonical map into the shift."""
    out = M
    for _ in range(a):
        out = _derivative_once(out)
    out.name = f"derivative({M.name},{a})"
    return out


def _derivative_once(M: FIModuleWindow) -> FIModuleWindow:
    S = _shift_once(M)
    # canonical map at level n is the structure map of M into level n+1
    images = [M.phi[n + 1] for n in range(S.N + 1)]
    return quotient_by_images(S, images)


def observed_torsion(M: FIModuleWindow) -> tuple[bool, int]:
    """(is the whole window torsion, largest level with torsion elements).

    An element of level n counts as torsion when it dies under the
    composite structure map to the top of the window; the second entry is
    -1 when no level has any.
    """
    p = M.p
    h0 = -1
    all_torsion = True
    for n in range(M.N + 1):
        if M.dims[n] == 0:
            continue
        comp = M.composite_phi(n, M.N)
        nul = exactlin.nullity_modp(comp, p)
        if nul:
            h0 = n
        if nul < M.dims[n]:
            all_torsion = False
    return all_torsion, h0


# ---------------------------------------------------------------------------
# seeded random presented modules
# ---------------------------------------------------------------------------


def random_induced_map(p: int, N: int, gen_deg: int, rel_deg: int,
                       seed: int) -> FIMapWindow:
    """Seeded map between induced windows, free by adjunction.

    The target is induced on trivial representations in degrees <= gen_deg,
    the source on the group algebra at rel_deg, so the map is determined by
    one freely chosen vector: the image of the identity basis element.
    """
    rng = np.random.default_rng(seed)
    parts = [fb_trivial(p, gen_deg)]
    for j in range(gen_deg):
        if rng.integers(0, 2):
            parts.append(fb_trivial(p, j))
    V = fb_direct_sum(*parts)
    W = fb_regular(p, rel_deg)
    tgt = induced_module(V, N)
    src = induced_module(W, N)
    img = rng.integers(0, p, size=tgt.dims[rel_deg]).astype(np.int64)

    perms = list(itertools.permutations(range(rel_deg)))
    phi_w = np.zeros((tgt.dims[rel_deg], len(perms)), dtype=np.int64)
    for k, s in enumerate(perms):
        phi_w[:, k] = tgt.perm_matrix(rel_deg, s) @ img % p

    tgt_index = [{key: i for i, key in enumerate(induced_basis(V, n))}
                 for n in range(N + 1)]
    tgt_bases = [induced_basis(V, n) for n in range(N + 1)]
    mats = []
    for n in range(N + 1):
        F = np.zeros((tgt.dims[n], src.dims[n]), dtype=np.int64)
        for col, (sub, k) in enumerate(induced_basis(W, n)):
            vec = phi_w[:, k]
            # push the level-rel_deg image along the order embedding onto sub
            for row, (B, v) in enumerate(tgt_bases[rel_deg]):
                c = int(vec[row]) % p
                if c == 0:
                    continue
                moved = tuple(sorted(sub[x] for x in B))
                F[tgt_index[n][(moved, v)], col] = (
                    F[tgt_index[n][(moved, v)], col] + c) % p
        mats.append(F)
    return FIMapWindow(src, tgt, mats)


def random_presented(p: int, N: int, gen_deg: int, rel_deg: int,
                     seed: int) -> FIModuleWindow:
    """Cokernel of a seeded map of induced windows.

    Generated in degrees <= gen_deg with relations in degree rel_deg, so
    the presentation degrees of the result are bounded by (gen_deg, rel_deg).
    """
    f = random_induced_map(p, N, gen_deg, rel_deg, seed)
    M = cokernel_module(f, name=f"random_presented(seed={seed})")
    return M


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def encode(M: FIModuleWindow) -> dict:
    levels = []
    for n in range(M.N + 1):
        levels.append({
            "n": n,
            "dim": M.dims[n],
            "transpositions": [A.tolist() for A in M.act[n]],
            "inclusion": None if n == 0 else M.phi[n].tolist(),
        })
    return {"kind": "fi_module", "p": M.p, "N": M.N, "levels": levels}


def decode(doc: dict) -> FIModuleWindow:
    if doc.get("kind") != "fi_module":
        raise ValueError(f"expected kind 'fi_module', got {doc.get('kind')!r}")
    p = int(doc["p"])
    exactlin._check_p(p)
    N = int(doc["N"])
    levels = doc["levels"]
    if [lv["n"] for lv in levels] != list(range(N + 1)):
        raise ValueError("levels must be 0..N in order")
    dims, act, phi = [], [], [None]
    for lv in levels:
        n, d = lv["n"], int(lv["dim"])
        dims.append(d)
        mats = [np.asarray(A, dtype=np.int64).reshape(d, d) % p
                for A in lv["transpositions"]]
        if len(mats) != max(0, n - 1):
            raise ValueError(f"level {n}: expected {max(0, n-1)} transpositions")
        act.append(mats)
        if n >= 1:
            if lv["inclusion"] is None:
                raise ValueError(f"level {n}: missing inclusion matrix")
            P = np.asarray(lv["inclusion"], dtype=np.int64)
            try:
                P = P.reshape(d, dims[n - 1]) % p
            except ValueError:
                raise ValueError(
                    f"level {n}: inclusion matrix shape {P.shape}") from None
            phi.append(P)
        elif lv["inclusion"] is not None:
            raise ValueError("level 0 must have null inclusion")
    return FIModuleWindow(p, N, dims, act, phi)


def save(M: FIModuleWindow, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(encode(M), fh)


def load(path: str) -> FIModuleWindow:
    with open(path) as fh:
        return decode(json.load(fh))
