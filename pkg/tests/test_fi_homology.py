import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fistab import fi_core, fi_homology

primes = st.sampled_from([2, 3, 5])


# degree bookkeeping ---------------------------------------------------------


def test_degree_of_profile():
    assert fi_homology.degree_of_profile([0, 0, 0]) == -1
    assert fi_homology.degree_of_profile([1, 0, 2, 0]) == 2


# zeroth and first homology ---------------------------------------------------


@settings(max_examples=15, deadline=None)
@given(primes, st.integers(1, 3), st.integers(4, 6))
def test_induced_generators_concentrated(p, d, N):
    M = fi_core.induced_module(fi_core.fb_trivial(p, d), N)
    table = fi_homology.homology_table(M, 0)
    assert table[0] == [1 if n == d else 0 for n in range(N + 1)]


@settings(max_examples=15, deadline=None)
@given(primes, st.integers(0, 2), st.integers(4, 6))
def test_semi_induced_acyclic(p, d, N):
    # induced modules have no higher homology anywhere in the window
    M = fi_core.induced_module(
        fi_core.fb_direct_sum(fi_core.fb_trivial(p, d),
                              fi_core.fb_regular(p, d + 1)), N)
    table = fi_homology.homology_table(M, 2)
    assert not any(table[1])
    assert not any(table[2])


def test_constant_module_homology():
    M = fi_core.constant_module(3, 6)
    table = fi_homology.homology_table(M, 1)
    assert table[0] == [1, 0, 0, 0, 0, 0, 0]
    assert not any(table[1])


def test_torsion_point_homology():
    # one S_2-trivial generator at level 2 with everything above killed:
    # a relation pushes in at level 3
    M = fi_core.torsion_point_module(2, 2, 6)
    table = fi_homology.homology_table(M, 1)
    assert table[0] == [0, 0, 1, 0, 0, 0, 0]
    assert fi_homology.degree_of_profile(table[1]) == 3


# presentation route vs Koszul route ------------------------------------------


@settings(max_examples=25, deadline=None)
@given(primes, st.integers(0, 500))
def test_presentation_matches_koszul(p, seed):
    M = fi_core.random_presented(p, 6, 1 + seed % 2, 2 + seed % 2, seed)
    h0, h1 = fi_homology.presentation_profiles(M)
    table = fi_homology.homology_table(M, 1)
    assert h0 == table[0]
    assert h1 == table[1]


def test_presentation_level_edge_cases():
    M = fi_core.torsion_point_module(3, 1, 4)
    h0, h1 = fi_homology.presentation_profiles(M)
    assert h0[0] == M.dims[0]
    # level 1: relations are exactly the kernel of the structure map
    # out of level 0
    K = np.asarray(M.phi[1])
    rank = np.linalg.matrix_rank(K) if K.size else 0
    assert h1[1] == M.dims[0] - rank


def test_presentation_consistency_guard():
    M = fi_core.free_module(2, 1, 5)
    # corrupting an action matrix must either fail validation or trip the
    # internal mu-compatibility check
    M.act[3][0] = np.eye(3, dtype=np.int64)[[0, 1, 2]]
    bad_validate = bool(fi_core.validate(M))
    tripped = False
    try:
        fi_homology.presentation_degrees(M)
    except fi_homology.InternalConsistencyError:
        tripped = True
    assert bad_validate or tripped


# invariants -------------------------------------------------------------------


@settings(max_examples=10, deadline=None)
@given(primes, st.integers(0, 3))
def test_free_module_invariants(p, m):
    M = fi_core.free_module(p, m, 7)
    inv = fi_homology.invariants(M)
    assert inv.t0 == (m if m > 0 else 0)
    assert inv.t1 == -1
    assert inv.delta == m and inv.delta_certified
    assert inv.hmax == -1 and inv.hmax_certified
    assert inv.semi_induced


def test_torsion_module_invariants():
    M = fi_core.torsion_point_module(2, 2, 7)
    inv = fi_homology.invariants(M)
    assert inv.delta == -1 and inv.delta_certified
    assert inv.hmax == 2
    assert inv.torsion_degree == 2
    assert not inv.semi_induced


def test_shift_makes_torsion_semi_induced():
    M = fi_core.torsion_point_module(2, 2, 7)
    inv = fi_homology.invariants(M)
    S = fi_core.shift(M, inv.hmax + 1)
    assert fi_homology.is_semi_induced_window(S)
    S_less = fi_core.shift(M, inv.hmax)
    assert not fi_homology.is_semi_induced_window(S_less)


@settings(max_examples=15, deadline=None)
@given(primes, st.integers(0, 300))
def test_derivative_drops_stable_degree(p, seed):
    M = fi_core.random_presented(p, 7, 2, 3, seed)
    inv = fi_homology.stable_degree(M)
    dinv = fi_homology.stable_degree(fi_core.derivative(M))
    if inv.certified and dinv.certified:
        assert dinv.delta == max(inv.delta - 1, -1)


# polynomial fit ---------------------------------------------------------------


def test_fit_free_module():
    M = fi_core.free_module(3, 2, 7)
    inv = fi_homology.invariants(M)
    fit = fi_homology.polynomial_fit(M, inv.delta, inv.hmax)
    assert fit.onset == 0
    assert [fit.value(n) for n in range(8)] == M.dims
    # n(n-1) in the binomial basis is 2*C(n,2)
    assert list(fit.coeffs) == [0, 0, 2]


def test_fit_with_late_onset():
    M = fi_core.direct_sum(fi_core.torsion_point_module(2, 2, 7),
                           fi_core.constant_module(2, 7))
    inv = fi_homology.invariants(M)
    fit = fi_homology.polynomial_fit(M, inv.delta, inv.hmax)
    assert fit.onset == 3
    assert [fit.value(n) for n in range(3, 8)] == M.dims[3:]


def test_fit_error_when_profile_not_polynomial():
    # dims 1,2,1,... of the truncated point module never fit a degree-(-1)
    # or degree-0 polynomial with early onset
    M = fi_core.torsion_point_module(2, 1, 6)
    with pytest.raises(fi_homology.FitError):
        fi_homology.polynomial_fit(M, -1, -1)


# hyper homology ---------------------------------------------------------------


def test_module_as_complex_matches_plain_homology():
    M = fi_core.random_presented(3, 6, 1, 2, 17)
    C = fi_homology.module_as_complex(M)
    table = fi_homology.hyper_homology_table(C, 2)
    plain = fi_homology.homology_table(M, 2)
    for k in range(3):
        assert table[k] == plain[k]


@settings(max_examples=10, deadline=None)
@given(primes, st.integers(0, 200))
def test_two_term_complex_euler(p, seed):
    f = fi_core.random_induced_map(p, 6, 1, 2, seed)
    C = fi_homology.two_term_complex(f)
    assert C.validate() == []
    table = fi_homology.hyper_homology_table(C, 2)
    ker = fi_core.submodule_from_kernels(f)
    cok = fi_core.cokernel_module(f)
    k0 = fi_homology.homology_table(cok, 2)
    # degree 0 of the hyper table is the FI-homology of H_0 of the complex
    assert table[0] == k0[0]


@settings(max_examples=10, deadline=None)
@given(primes, st.integers(0, 200))
def test_shift_monotone_t_degrees(p, seed):
    f = fi_core.random_induced_map(p, 6, 1 + seed % 2, 2, seed)
    C = fi_homology.two_term_complex(f)
    t = fi_homology.hyper_t_degrees(C, 1)
    tS = fi_homology.hyper_t_degrees(fi_homology.shift_complex(C), 1)
    for k in t:
        assert tS[k] <= t[k]


def test_hyper_boundary_squares_to_zero():
    f = fi_core.random_induced_map(2, 5, 1, 2, 3)
    C = fi_homology.two_term_complex(f)
    for n in range(6):
        for m in range(1, 4):
            d1 = fi_homology.hyper_boundary(C, n, m)
            d2 = fi_homology.hyper_boundary(C, n, m + 1)
            if d1.size and d2.size:
                assert not (d1 @ d2 % 2).any()


# stable and local degree certification ----------------------------------------


def test_stable_degree_routes_agree_on_induced():
    M = fi_core.induced_module(fi_core.fb_trivial(2, 2), 7)
    res = fi_homology.stable_degree(M)
    assert res.delta == 2 and res.certified
    assert res.derivative_route == 2
    assert res.shift_route[0] == 2 and res.plateau >= 2


def test_local_degree_of_induced():
    M = fi_core.induced_module(fi_core.fb_regular(3, 2), 7)
    res = fi_homology.local_degree(M, 2)
    assert res.hmax == -1 and res.certified
