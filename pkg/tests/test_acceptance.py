"""Acceptance gate: twelve pinned criteria, one verdict line each.

Run as part of the plain pytest suite.  Every criterion prints
`CRITERION n: PASS|FAIL - summary (elapsed / budget)` and fails the test
on a wrong value or a blown time budget.  Heavy shared objects (the
rank-4 split-basis complex) are computed once per session.
"""

import time

import pytest

from fistab import bounds, cli, congruence, fi_core, fi_homology, splitbases


def _verdict(num: int, ok: bool, summary: str, elapsed: float,
             budget: float) -> None:
    flag = "PASS" if ok and elapsed < budget else "FAIL"
    print(f"CRITERION {num}: {flag} - {summary} "
          f"({elapsed:.1f}s / budget {budget:.0f}s)")
    assert ok, f"criterion {num}: {summary}"
    assert elapsed < budget, f"criterion {num}: over budget ({elapsed:.1f}s)"


def test_criterion_01_nonvanishing_rank2_mod4(capsys):
    t0 = time.time()
    code = cli.main(["spb", "verify", "theoremD", "--p", "2", "--ell", "2",
                     "--k", "1"])
    out = splitbases.verify_theoremD(2, 2, 1)
    with capsys.disabled():
        _verdict(1, code == 0 and out["nonvanishing"] and out["betti"] == 3,
                 f"H~_0 of SPB_2(Z/4,(2)) over F_2 has dim {out['betti']} != 0",
                 time.time() - t0, 1.0)


def test_criterion_02_nonvanishing_rank2_mod9(capsys):
    t0 = time.time()
    out = splitbases.verify_theoremD(3, 2, 1)
    with capsys.disabled():
        _verdict(2, out["nonvanishing"],
                 f"H~_0 of SPB_2(Z/9,(3)) over F_3 has dim {out['betti']} != 0",
                 time.time() - t0, 10.0)


@pytest.fixture(scope="session")
def spb4():
    return splitbases.spb_complex(4, 2, 4, "spb_modI")


def test_criterion_03_nonvanishing_rank4_mod4(spb4, capsys):
    t0 = time.time()
    betti = splitbases.reduced_betti(spb4, 2, [1])[1]
    fvec = spb4.f_vector()
    ok = betti > 0 and fvec[3] == 65536
    with capsys.disabled():
        _verdict(3, ok,
                 f"H~_1 of SPB_4(Z/4,(2)) over F_2 has dim {betti} != 0, "
                 f"f-vector {fvec}", time.time() - t0, 600.0)


def test_criterion_04_stable_range_acyclicity(spb4, capsys):
    t0 = time.time()
    b3 = splitbases.reduced_betti(
        splitbases.spb_complex(4, 2, 3, "spb_modI"), 2, [0])[0]
    b4 = splitbases.reduced_betti(spb4, 2, [0])[0]
    b9 = splitbases.reduced_betti(
        splitbases.spb_complex(9, 3, 3, "spb_modI"), 3, [0])[0]
    with capsys.disabled():
        _verdict(4, b3 == b4 == b9 == 0,
                 f"H~_0 vanishes: rank 3 and 4 over Z/4 ({b3},{b4}), "
                 f"rank 3 over Z/9 ({b9})", time.time() - t0, 120.0)


def test_criterion_05_coset_complex_identification(capsys):
    t0 = time.time()
    ok = True
    for n in (2, 3):
        rep = splitbases.coset_spb_isomorphism(4, 2, n)
        ok = ok and rep["vertex_bijection"] and \
            rep["maximal_simplices_match"] and rep["saturated"]
    with capsys.disabled():
        _verdict(5, ok, "coset complex is isomorphic to the split-basis "
                 "complex at ranks 2, 3 and the tower is saturated",
                 time.time() - t0, 60.0)


def test_criterion_06_presentation_vs_koszul(capsys):
    t0 = time.time()
    checked = 0
    ok = True
    seed = 0
    while checked < 50 and time.time() - t0 < 110:
        p = (2, 3)[seed % 2]
        M = fi_core.random_presented(p, 8, 1 + seed % 2, 2 + seed % 2, seed)
        seed += 1
        if max(M.dims) > 40 or max(M.dims) == 0:
            continue
        h0, h1 = fi_homology.presentation_profiles(M)
        table = fi_homology.homology_table(M, 1)
        ok = ok and h0 == table[0] and h1 == table[1]
        checked += 1
    with capsys.disabled():
        _verdict(6, ok and checked >= 50,
                 f"presentation H_0/H_1 equals Koszul rows on {checked} "
                 "seeded windows (p in 2,3; levels to 8; dims <= 40)",
                 time.time() - t0, 120.0)


def test_criterion_07_induced_acyclicity(capsys):
    t0 = time.time()
    ok = True
    count = 0
    for seed in range(20):
        p = (2, 3, 5)[seed % 3]
        parts = [fi_core.fb_trivial(p, seed % 3)]
        if seed % 2:
            parts.append(fi_core.fb_regular(p, 1 + seed % 2))
        else:
            parts.append(fi_core.fb_trivial(p, 1 + (seed // 2) % 3))
        M = fi_core.induced_module(fi_core.fb_direct_sum(*parts), 8)
        table = fi_homology.homology_table(M, 3)
        ok = ok and not any(any(row) for row in table[1:])
        count += 1
    with capsys.disabled():
        _verdict(7, ok and count >= 20,
                 f"higher Koszul homology vanishes on {count} induced "
                 "windows through level 8", time.time() - t0, 60.0)


def test_criterion_08_inequality_audit(capsys):
    t0 = time.time()
    rep = bounds.audit(2025)
    with capsys.disabled():
        _verdict(8, rep.instances >= 100 and rep.ok(),
                 f"{rep.checks} inequality checks on {rep.instances} "
                 f"instances, {len(rep.violations)} violations "
                 f"({rep.skipped_uncertified} skipped uncertified)",
                 time.time() - t0, 300.0)


def test_criterion_09_congruence_homology_empirics(capsys):
    t0 = time.time()
    r1 = congruence.application_b_empirical(1, 2, 6)
    r2 = congruence.application_b_empirical(2, 2, 5)
    ok = (r1["delta"] == 2 and r1["t0"] == 2 and r1["fit_onset"] == 0
          and r1["fit_coeffs"] == [0, 1, 2] and r1["all_ok"]
          and r2["delta"] == 4 and r2["all_ok"]
          and r2["dims"] == [0, 1, 10, 45, 136, 325])
    with capsys.disabled():
        _verdict(9, ok,
                 "H_1 window: delta 2, t0 2, dims fit n^2 from level 0; "
                 "H_2 window: delta 4, dims fit C(n^2+1,2)",
                 time.time() - t0, 120.0)


def test_criterion_10_dimension_formula(capsys):
    t0 = time.time()
    ok = True
    for r in range(1, 5):
        for p in (2, 3):
            for k in range(4):
                got = congruence.bar_homology_oracle([p] * r, k, p)
                ok = ok and got == congruence.cohom_dim_formula(r, k)
    with capsys.disabled():
        _verdict(10, ok, "bar-resolution homology matches C(r+k-1,k) for "
                 "rank <= 4, degree <= 3, p in {2,3}",
                 time.time() - t0, 120.0)


def test_criterion_11_hyper_vs_equivariant(capsys):
    t0 = time.time()
    ok = True
    vals = []
    for n, k in [(0, 0), (1, 1), (2, 1), (2, 2)]:
        out = congruence.theoremC_check(2, 2, n, k)
        ok = ok and out["equal"]
        vals.append((n, k, out["lhs"]))
    with capsys.disabled():
        _verdict(11, ok, f"hyper FI-homology equals equivariant homology "
                 f"over F_2 at {vals}", time.time() - t0, 600.0)


def test_criterion_12_bound_formula_pinning(capsys):
    t0 = time.time()
    c = bounds.congruence_bounds(0, 1)
    ok = (c["delta_le"], c["hmax_le"], c["t0_le"], c["t1_le"]) == (2, 8, 11, 20)
    for d in range(6):
        for k in range(21):
            ok = ok and bounds.typeB_growth(2, d, k) \
                == bounds.congruence_bounds(d, k)
    a = bounds.config_bounds(2, False, 1)
    ok = ok and (a["delta_le"], a["hmax_le"], a["t0_le"], a["t1_le"]) \
        == (2, 6, 9, 16)
    with capsys.disabled():
        _verdict(12, ok, "closed-form bounds reproduce the pinned "
                 "application values", time.time() - t0, 1.0)
