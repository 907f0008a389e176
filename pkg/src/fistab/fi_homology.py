"""Homology functors, stability invariants and polynomial fitting.

Two independent routes to generation and relation degrees are kept side
by side on purpose:

* the subset-indexed Koszul-style complex (`koszul_boundary`,
  `homology_table`), exact at every evaluation level using only levels
  below it, and
* the induction presentation complex (`presentation_profiles`), built
  from coset transversals.

`presentation_degrees` runs both and raises on disagreement.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from . import exactlin
from .fi_core import (FIModuleWindow, FIMapWindow, WindowError,
                      insertion_permutation, shift, derivative,
                      observed_torsion)


class InternalConsistencyError(Exception):
    """Two routes that must agree produced different answers."""


class FitError(Exception):
    """Stored dimensions do not agree with the fitted polynomial in the
    expected onset range."""


# ---------------------------------------------------------------------------
# Koszul route
# ---------------------------------------------------------------------------


def koszul_boundary(M: FIModuleWindow, n: int, k: int) -> np.ndarray:
    """Boundary C_k -> C_{k-1} of the evaluation-n complex.

    C_k is one copy of level n-k per k-subset R of [n]; moving the j-th
    smallest element r out of R applies the insertion map of the
    complement and carries sign (-1)^j.
    """
    p = M.p
    if k < 1 or k > n:
        rows = 0
        if 1 <= k <= n + 1:
            rows = comb(n, k - 1) * M.dims[n - k + 1]
        return np.zeros((rows, 0), dtype=np.int64)
    m = n - k
    src_subsets = list(itertools.combinations(range(n), k))
    tgt_subsets = list(itertools.combinations(range(n), k - 1))
    tgt_index = {R: i for i, R in enumerate(tgt_subsets)}
    ds, dt = M.dims[m], M.dims[m + 1]
    D = np.zeros((len(tgt_subsets) * dt, len(src_subsets) * ds), dtype=np.int64)
    if ds == 0 or dt == 0:
        return D
    ins = [M.insertion_map(m, t) for t in range(m + 1)]
    for c, R in enumerate(src_subsets):
        for j, r in enumerate(R):
            Rp = R[:j] + R[j + 1:]
            t = r - j  # rank of r within the complement of Rp
            blk = ins[t] if j % 2 == 0 else (-ins[t]) % p
            i0 = tgt_index[Rp] * dt
            D[i0:i0 + dt, c * ds:c * ds + ds] = (
                D[i0:i0 + dt, c * ds:c * ds + ds] + blk) % p
    return D


def koszul_dims(M: FIModuleWindow, n: int) -> list[int]:
    return [comb(n, k) * M.dims[n - k] for k in range(n + 1)]


def homology_at(M: FIModuleWindow, n: int, i_max: int) -> list[int]:
    """dim H_i at evaluation n for 0 <= i <= i_max."""
    dims = koszul_dims(M, n)
    kmax = min(n, i_max + 1)
    ranks = [0] * (n + 2)
    for k in range(1, kmax + 1):
        ranks[k] = exactlin.rank_modp(koszul_boundary(M, n, k), M.p)
    out = []
    for i in range(i_max + 1):
        if i > n:
            out.append(0)
            continue
        ci = dims[i]
        out.append(ci - ranks[i] - ranks[i + 1])
    return out


def homology_table(M: FIModuleWindow, i_max: int) -> list[list[int]]:
    """table[i][n] = dim H_i at evaluation n, exact for every n <= N."""
    table = [[0] * (M.N + 1) for _ in range(i_max + 1)]
    for n in range(M.N + 1):
        col = homology_at(M, n, i_max)
        for i in range(i_max + 1):
            table[i][n] = col[i]
    return table


def degree_of_profile(profile: list[int]) -> int:
    deg = -1
    for n, v in enumerate(profile):
        if v:
            deg = n
    return deg


# ---------------------------------------------------------------------------
# presentation route (independent of the Koszul assembly)
# ---------------------------------------------------------------------------


def _transversal_block(M: FIModuleWindow, n: int, j: int) -> np.ndarray:
    """rho_n(tau_j) Phi_n where tau_j is the coset representative sending
    the top point of [n] to j, order-preserving on the rest."""
    tau = insertion_permutation(n - 1, j)
    return M.perm_matrix(n, tau) @ M.phi[n] % M.p


def presentation_mu(M: FIModuleWindow, n: int) -> np.ndarray:
    """Induction of level n-1 to level n: blocks over the n cosets."""
    d = M.dims[n]
    src = n * M.dims[n - 1]
    mu = np.zeros((d, src), dtype=np.int64)
    w = M.dims[n - 1]
    for j in range(n):
        mu[:, j * w:(j + 1) * w] = _transversal_block(M, n, j)
    return mu


def presentation_relation_map(M: FIModuleWindow, n: int) -> np.ndarray:
    """Difference of the two natural maps from the doubly-induced level n-2.

    Basis of the source: ordered pairs (a, b) of distinct points of [n]
    (the coset representative h_{a,b} maps the two top points to a and b),
    tensored with level n-2.  The first map pushes the very top point into
    the module, the second swaps the two added points first.
    """
    p = M.p
    w2, w1 = M.dims[n - 2], M.dims[n - 1]
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    D = np.zeros((n * w1, len(pairs) * w2), dtype=np.int64)
    if w2 == 0 or w1 == 0:
        return D

    def rep(a: int, b: int) -> tuple[int, ...]:
        rest = [x for x in range(n) if x not in (a, b)]
        return tuple(rest + [a, b])

    def tau_inv(j: int) -> tuple[int, ...]:
        tau = insertion_permutation(n - 1, j)
        inv = [0] * n
        for x, y in enumerate(tau):
            inv[y] = x
        return tuple(inv)

    for c, (a, b) in enumerate(pairs):
        for swapped in (False, True):
            x, y = (b, a) if swapped else (a, b)
            # h_{x,y} lands in the coset of tau_y; the twist is the leftover
            # permutation of [n-1]
            h = rep(x, y)
            ti = tau_inv(y)
            wperm = tuple(ti[h[i]] for i in range(n - 1))
            blk = M.perm_matrix(n - 1, wperm) @ M.phi[n - 1] % p
            if swapped:
                blk = (-blk) % p
            i0 = y * w1
            D[i0:i0 + w1, c * w2:c * w2 + w2] = (
                D[i0:i0 + w1, c * w2:c * w2 + w2] + blk) % p
    return D


def presentation_profiles(M: FIModuleWindow) -> tuple[list[int], list[int]]:
    """(dim coker, dim middle homology) of the induction presentation
    complex at each level."""
    p = M.p
    h0 = [0] * (M.N + 1)
    h1 = [0] * (M.N + 1)
    h0[0] = M.dims[0]
    for n in range(1, M.N + 1):
        mu = presentation_mu(M, n)
        r_mu = exactlin.rank_modp(mu, p)
        h0[n] = M.dims[n] - r_mu
        if n == 1:
            h1[n] = mu.shape[1] - r_mu
            continue
        rel = presentation_relation_map(M, n)
        if ((mu @ rel) % p).any():
            raise InternalConsistencyError(
                f"level {n}: relation map does not land in the kernel")
        h1[n] = (mu.shape[1] - r_mu) - exactlin.rank_modp(rel, p)
    return h0, h1


def presentation_degrees(M: FIModuleWindow) -> tuple[int, int]:
    """(t0, t1) within the window, cross-checked against the Koszul route."""
    h0p, h1p = presentation_profiles(M)
    table = homology_table(M, 1)
    if table[0] != h0p or table[1] != h1p:
        raise InternalConsistencyError(
            "presentation complex disagrees with the subset complex: "
            f"H0 {table[0]} vs {h0p}; H1 {table[1]} vs {h1p}")
    return degree_of_profile(h0p), degree_of_profile(h1p)


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------


def is_semi_induced_window(M: FIModuleWindow) -> bool:
    """True when every higher homology vanishes at every window level."""
    for n in range(M.N + 1):
        dims = koszul_dims(M, n)
        ranks = [0] * (n + 2)
        for k in range(1, n + 1):
            ranks[k] = exactlin.rank_modp(koszul_boundary(M, n, k), M.p)
        for i in range(1, n + 1):
            if dims[i] - ranks[i] - ranks[i + 1] != 0:
                return False
    return True


@dataclass
class StableDegreeResult:
    delta: int | None
    certified: bool
    derivative_route: int | None
    shift_route: list[int] = field(default_factory=list)
    plateau: int = 0


def stable_degree(M: FIModuleWindow) -> StableDegreeResult:
    """Least n with torsion (n+1)-st derivative, certified two ways.

    Route one iterates the derivative and tests observed torsion; route
    two tracks the generation degree of iterated shifts, which must reach
    a terminal plateau of length >= 2 at the same value for the result to
    be certified.
    """
    delta_a = None
    D = M
    for j in range(M.N + 1):
        tor, _ = observed_torsion(D)
        if tor:
            delta_a = j - 1
            break
        if D.N == 0:
            break
        D = derivative(D)

    t0s: list[int] = []
    for s in range(M.N):
        S = shift(M, s)
        t0s.append(degree_of_profile(homology_table(S, 0)[0]))
    # only trust a shifted generation degree when the remaining window
    # extends at least one level past it, so the degree is not an artifact
    # of truncation
    trusted = [(s, v) for s, v in enumerate(t0s) if M.N - s >= v + 1]
    plateau = 0
    delta_b = None
    if trusted:
        delta_b = trusted[-1][1]
        plateau = 1
        for _, v in reversed(trusted[:-1]):
            if v == delta_b:
                plateau += 1
            else:
                break
    certified = (delta_a is not None and delta_b is not None
                 and delta_a == delta_b and plateau >= 2)
    delta = delta_a if delta_a is not None else delta_b
    return StableDegreeResult(delta, certified, delta_a, t0s, plateau)


@dataclass
class LocalDegreeResult:
    hmax: int | None
    certified: bool
    shifts_tried: int = 0


def local_degree(M: FIModuleWindow,
                 delta: int | None = None) -> LocalDegreeResult:
    """hmax + 1 is the least shift whose result has no higher homology.

    Certification needs the remaining window after that shift to be at
    least delta + 1 levels deep, so vanishing is attested on a stretch as
    long as the stable range.
    """
    if delta is None:
        delta = stable_degree(M).delta
    for s in range(M.N + 1):
        S = shift(M, s)
        if is_semi_induced_window(S):
            certified = delta is not None and (M.N - s) >= delta + 1
            return LocalDegreeResult(s - 1, certified, s + 1)
    return LocalDegreeResult(None, False, M.N + 1)


# ---------------------------------------------------------------------------
# complexes of modules and hyper homology
# ---------------------------------------------------------------------------


@dataclass
class FIComplexWindow:
    """Chain complex of module windows; diffs[j] maps degree j to j-1."""

    p: int
    N: int
    jmin: int
    jmax: int
    modules: list[FIModuleWindow]              # index j - jmin
    diffs: dict[int, list[np.ndarray]]         # diffs[j][n], jmin < j <= jmax

    def module(self, j: int) -> FIModuleWindow:
        return self.modules[j - self.jmin]

    def validate(self) -> list[str]:
        from .fi_core import validate as validate_module
        bad = []
        for j in range(self.jmin, self.jmax + 1):
            for msg in validate_module(self.module(j)):
                bad.append(f"degree {j}: {msg}")
        for j in range(self.jmin + 1, self.jmax + 1):
            f = FIMapWindow(self.module(j), self.module(j - 1), self.diffs[j])
            for msg in f.validate():
                bad.append(f"differential {j}: {msg}")
        for j in range(self.jmin + 2, self.jmax + 1):
            for n in range(self.N + 1):
                if ((self.diffs[j - 1][n] @ self.diffs[j][n]) % self.p).any():
                    bad.append(f"d^2 != 0 at degree {j}, level {n}")
        return bad


def two_term_complex(f: FIMapWindow) -> FIComplexWindow:
    """[source -> target] in degrees 1 and 0."""
    S = f.source
    return FIComplexWindow(S.p, S.N, 0, 1, [f.target, f.source],
                           {1: f.mats})


def module_as_complex(M: FIModuleWindow) -> FIComplexWindow:
    return FIComplexWindow(M.p, M.N, 0, 0, [M], {})


def shift_complex(C: FIComplexWindow, a: int = 1) -> FIComplexWindow:
    mods = [shift(C.module(j), a) for j in range(C.jmin, C.jmax + 1)]
    diffs = {j: [C.diffs[j][n + a] for n in range(C.N - a + 1)]
             for j in C.diffs}
    return FIComplexWindow(C.p, C.N - a, C.jmin, C.jmax, mods, diffs)


def hyper_boundary(C: FIComplexWindow, n: int, m: int) -> np.ndarray:
    """Total boundary T_m -> T_{m-1} at evaluation n.

    T_m stacks the Koszul degree r piece of the degree-j module over all
    j + r = m; the complex differential carries sign (-1)^r.
    """
    p = C.p

    def layers(total: int) -> list[tuple[int, int]]:
        out = []
        for j in range(C.jmin, C.jmax + 1):
            r = total - j
            if 0 <= r <= n:
                out.append((j, r))
        return out

    src, tgt = layers(m), layers(m - 1)

    def block_dim(j: int, r: int) -> int:
        return comb(n, r) * C.module(j).dims[n - r]

    src_off, off = {}, 0
    for jr in src:
        src_off[jr] = off
        off += block_dim(*jr)
    ncols = off
    tgt_off, off = {}, 0
    for jr in tgt:
        tgt_off[jr] = off
        off += block_dim(*jr)
    nrows = off
    D = np.zeros((nrows, ncols), dtype=np.int64)
    for (j, r) in src:
        c0 = src_off[(j, r)]
        w = block_dim(j, r)
        if w == 0:
            continue
        if r >= 1 and (j, r - 1) in tgt_off:
            K = koszul_boundary(C.module(j), n, r)
            i0 = tgt_off[(j, r - 1)]
            D[i0:i0 + K.shape[0], c0:c0 + w] = K
        if j > C.jmin and (j - 1, r) in tgt_off:
            d = C.diffs[j][n - r]
            blk = np.kron(np.eye(comb(n, r), dtype=np.int64), d) % p
            if r % 2 == 1:
                blk = (-blk) % p
            i0 = tgt_off[(j - 1, r)]
            D[i0:i0 + blk.shape[0], c0:c0 + w] = blk
    return D


def hyper_homology_table(C: FIComplexWindow, k_max: int) -> dict[int, list[int]]:
    """table[k][n] = dim of total homology in degree k at evaluation n."""
    table: dict[int, list[int]] = {k: [0] * (C.N + 1)
                                   for k in range(C.jmin, k_max + 1)}
    for n in range(C.N + 1):
        tdims = {}
        for m in range(C.jmin, k_max + 2):
            d = 0
            for j in range(C.jmin, C.jmax + 1):
                r = m - j
                if 0 <= r <= n:
                    d += comb(n, r) * C.module(j).dims[n - r]
            tdims[m] = d
        ranks = {}
        for m in range(C.jmin + 1, k_max + 2):
            ranks[m] = exactlin.rank_modp(hyper_boundary(C, n, m), C.p)
        ranks[C.jmin] = 0
        for k in range(C.jmin, k_max + 1):
            table[k][n] = tdims[k] - ranks[k] - ranks.get(k + 1, 0)
    return table


def hyper_t_degrees(C: FIComplexWindow, k_max: int) -> dict[int, int]:
    table = hyper_homology_table(C, k_max)
    return {k: degree_of_profile(v) for k, v in table.items()}


# ---------------------------------------------------------------------------
# polynomial fitting in the binomial basis
# ---------------------------------------------------------------------------


@dataclass
class PolynomialFit:
    coeffs: list[int]          # coeffs[d] multiplies C(n, d)
    onset: int

    def value(self, n: int) -> int:
        return sum(c * comb(n, d) for d, c in enumerate(self.coeffs))

    def pretty(self) -> str:
        terms = [f"{c}*C(n,{d})" for d, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


def polynomial_fit(M: FIModuleWindow, delta: int, hmax: int) -> PolynomialFit:
    """Interpolate dimensions through the top delta+1 window levels.

    Requires certified invariants from the caller; raises FitError when
    the stored dimensions deviate from the fit at any level past hmax+1,
    or when the binomial-basis coefficients fail to be integers.
    """
    if delta < 0:
        fit = PolynomialFit([], M.N + 1)
        onset = M.N + 1
        for n in range(M.N, -1, -1):
            if M.dims[n] == 0:
                onset = n
            else:
                break
        fit.onset = onset
        if onset > max(hmax + 1, 0):
            raise FitError(f"zero fit fails from level {max(hmax+1,0)}")
        return fit
    pts = list(range(M.N - delta, M.N + 1))
    if pts[0] < 0:
        raise WindowError("window too short for the requested fit degree")
    A = [[Fraction(comb(n, d)) for d in range(delta + 1)] for n in pts]
    b = [Fraction(M.dims[n]) for n in pts]
    coeffs = _solve_fractions(A, b)
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise FitError("non-integer coefficient in the binomial basis")
        out.append(int(c))
    fit = PolynomialFit(out, M.N + 1)
    onset = M.N + 1
    for n in range(M.N, -1, -1):
        if M.dims[n] == fit.value(n):
            onset = n
        else:
            break
    fit.onset = onset
    if onset > max(hmax + 1, 0):
        raise FitError(
            f"dimensions match the fit only from level {onset}, expected "
            f"from {max(hmax + 1, 0)}")
    return fit


def _solve_fractions(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(A)
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    for c in range(n):
        piv = next(i for i in range(c, n) if M[i][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [M[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# aggregate report
# ---------------------------------------------------------------------------


@dataclass
class InvariantReport:
    t0: int
    t1: int
    delta: int | None
    delta_certified: bool
    hmax: int | None
    hmax_certified: bool
    torsion_degree: int
    semi_induced: bool

    def asdict(self) -> dict:
        return {
            "t0": self.t0, "t1": self.t1,
            "stable_degree": self.delta,
            "stable_degree_certified": self.delta_certified,
            "local_degree": self.hmax,
            "local_degree_certified": self.hmax_certified,
            "torsion_degree": self.torsion_degree,
            "semi_induced": self.semi_induced,
        }


def invariants(M: FIModuleWindow) -> InvariantReport:
    t0, t1 = presentation_degrees(M)
    sd = stable_degree(M)
    ld = local_degree(M, sd.delta)
    _, h0 = observed_torsion(M)
    return InvariantReport(t0, t1, sd.delta, sd.certified, ld.hmax,
                           ld.certified, h0, is_semi_induced_window(M))
