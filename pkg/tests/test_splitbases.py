import itertools
import json
import math

import numpy as np
import pytest
import sympy

from fistab import splitbases as sb


# group enumeration vs a breadth-first closure oracle ---------------------------


def bfs_group_oracle(m, q, n):
    """Closure from elementary congruence generators and mod-q-trivial
    diagonal units; independent of the kernel-filter enumeration."""
    gens = []
    for i in range(n):
        for j in range(n):
            E = np.eye(n, dtype=np.int64)
            E[i, j] = (E[i, j] + q) % m
            gens.append(E)
    for i in range(n):
        for u in range(1, m):
            if math.gcd(u, m) == 1 and u % q == 1 % q and u != 1:
                D = np.eye(n, dtype=np.int64)
                D[i, i] = u
                gens.append(D)
    seen = {tuple(np.eye(n, dtype=np.int64).ravel())}
    frontier = [np.eye(n, dtype=np.int64)]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                w = g @ h % m
                key = tuple(w.ravel())
                if key not in seen:
                    seen.add(key)
                    nxt.append(w)
        frontier = nxt
    return seen


@pytest.mark.parametrize("m,q,n,order", [
    (4, 2, 1, 2), (4, 2, 2, 16), (4, 2, 3, 512), (9, 3, 2, 81), (8, 2, 2, 256),
])
def test_group_order_and_bfs_closure(m, q, n, order):
    G = sb.congruence_group(m, q, n)
    assert G.order == order
    assert {tuple(g.ravel()) for g in G.mats} == bfs_group_oracle(m, q, n)


def test_group_membership_and_inverses():
    G = sb.congruence_group(8, 2, 2)
    inv = G.inverses()
    for i in range(0, G.order, 17):
        prod = G.mats[i] @ G.mats[inv[i]] % 8
        assert (prod == np.eye(2, dtype=np.int64)).all()
    with pytest.raises(KeyError):
        G.index_of(np.array([[0, 1], [1, 0]]))


def test_group_guard():
    with pytest.raises(sb.FeasibilityError):
        sb.congruence_group(4, 2, 6)


def test_batch_det_matches_sympy():
    rng = np.random.default_rng(2)
    for n in (1, 2, 3, 4, 5):
        mats = rng.integers(-9, 9, size=(20, n, n))
        dets = sb._batch_det(mats)
        for M, d in zip(mats, dets):
            assert int(sympy.Matrix(M.tolist()).det()) == d


def test_matinv_mod():
    rng = np.random.default_rng(3)
    for _ in range(30):
        A = rng.integers(0, 9, size=(3, 3))
        d = int(sb._batch_det(A[None])[0])
        if math.gcd(d, 9) != 1:
            continue
        Ainv = sb._matinv_mod(A, 9)
        assert (A @ Ainv % 9 == np.eye(3, dtype=np.int64)).all()


# f-vectors vs the orbit-stabilizer oracle --------------------------------------


def orbit_stabilizer_fvector(m, q, n):
    """Faces of each dimension counted as sums of orbit sizes of the
    standard sub-simplices; vertex types are rigid, so distinct type
    sets give disjoint orbits."""
    G = sb.congruence_group(m, q, n)
    inv = G.inverse_mats()
    cols = G.mats.transpose(0, 2, 1)
    out = []
    for k in range(n):
        total = 0
        for S in itertools.combinations(range(n), k + 1):
            stab = 0
            for gi in range(G.order):
                ok = all((cols[gi, i] == np.eye(n, dtype=np.int64)[i]).all()
                         and (inv[gi, i] == np.eye(n, dtype=np.int64)[i]).all()
                         for i in S)
                stab += ok
            total += G.order // stab
        out.append(total)
    return out


@pytest.mark.parametrize("m,q,n,fvec", [
    (4, 2, 1, [2]),
    (4, 2, 2, [16, 16]),
    (4, 2, 3, [96, 768, 512]),
    (9, 3, 2, [54, 81]),
])
def test_spb_fvector(m, q, n, fvec):
    X = sb.spb_complex(m, q, n, "spb_modI")
    assert X.f_vector() == fvec
    assert orbit_stabilizer_fvector(m, q, n) == fvec


def test_spb_vertices_in_two_edges():
    X = sb.spb_complex(4, 2, 2, "spb_modI")
    deg = {v: 0 for v in range(len(X.vertices))}
    for e in X.faces(1):
        for v in e:
            deg[v] += 1
    assert set(deg.values()) == {2}


def test_group_acts_simplicially():
    m, q, n = 4, 2, 3
    G = sb.congruence_group(m, q, n)
    X = sb.spb_complex(m, q, n, "spb_modI")
    index = {lab: i for i, lab in enumerate(X.vertices)}
    inv = G.inverse_mats()
    rng = np.random.default_rng(0)
    for gi in rng.integers(0, G.order, size=8):
        g, gi_inv = G.mats[gi], inv[gi]
        moved = set()
        for mx in list(X.maximal)[:40]:
            imgs = []
            for v in mx:
                vv, ff = X.vertices[v]
                nv = tuple(int(x) for x in g @ np.array(vv) % m)
                nf = tuple(int(x) for x in np.array(ff) @ gi_inv % m)
                imgs.append(index[(nv, nf)])
            moved.add(frozenset(imgs))
        assert moved <= X.maximal


def test_modI_needs_proper_ideal():
    with pytest.raises(ValueError):
        sb.verify_theoremD(2, 1, 1)
    with pytest.raises(ValueError):
        sb.coset_spb_isomorphism(4, 1, 2)


def test_su_contains_spb_and_clique_property():
    SU = sb.spb_complex(4, 2, 2, "su_modI")
    SPB = sb.spb_complex(4, 2, 2, "spb_modI")
    su_edges = {frozenset(SU.vertices[v] for v in f) for f in SU.faces(1)}
    spb_edges = {frozenset(SPB.vertices[v] for v in f) for f in SPB.faces(1)}
    assert spb_edges <= su_edges
    # every SU simplex satisfies the pairwise duality predicate
    for f in SU.faces(1):
        a, b = (SU.vertices[v] for v in f)
        assert sb._compatible(a, b, 4)


def test_full_ring_variant_closes_under_permutation():
    X = sb.spb_complex(2, 1, 2, "spb")
    labs = {frozenset(X.vertices[v] for v in mx) for mx in X.maximal}
    for mx in labs:
        flipped = frozenset((v[::-1], g[::-1]) for (v, g) in mx)
        assert flipped in labs
    assert X.f_vector()[0] == len(X.vertices)


# coset complexes ----------------------------------------------------------------


def test_trivial_tower_gives_full_simplex():
    Y, iso, sat = sb.y_gamma_complex(sb.TrivialGroupTower(4), 4)
    assert sat
    assert Y.maximal == {frozenset(range(4))}
    assert sb.reduced_betti(Y, 2, [0, 1, 2]) == {0: 0, 1: 0, 2: 0}


@pytest.mark.parametrize("n", [2, 3])
def test_coset_iso_and_saturation(n):
    rep = sb.coset_spb_isomorphism(4, 2, n)
    assert rep["vertex_bijection"]
    assert rep["maximal_simplices_match"]
    assert rep["saturated"]
    assert rep["coset_f_vector"] == rep["spb_f_vector"]


def test_coset_orbit_counts_are_binomial():
    # the group acts transitively on each type set, so the orbit count of
    # (k-1)-simplices is C(n, k)
    n = 3
    G = sb.congruence_group(4, 2, n)
    Y = sb.coset_complex(G, n)
    for k in range(1, n + 1):
        faces = Y.faces(k - 1)
        types = {tuple(sorted(Y.vertices[v][0] for v in f)) for f in faces}
        assert len(types) == math.comb(n, k)


# reduced homology ----------------------------------------------------------------


def triangle_boundary():
    return sb.SimplicialComplex(
        ["a", "b", "c"],
        {frozenset([0, 1]), frozenset([1, 2]), frozenset([0, 2])})


def test_homology_triangle():
    X = triangle_boundary()
    assert sb.reduced_betti(X, 2, [0, 1]) == {0: 0, 1: 1}
    assert sb.reduced_betti(X, 5, [0, 1]) == {0: 0, 1: 1}
    hz = sb.integral_reduced_homology(X, [0, 1])
    assert hz[0] == (0, ()) and hz[1] == (1, ())


def test_homology_full_simplex_and_empty():
    X = sb.SimplicialComplex(list("abcd"), {frozenset(range(4))})
    assert sb.reduced_betti(X, 3, [0, 1, 2, 3]) == {0: 0, 1: 0, 2: 0, 3: 0}
    E = sb.SimplicialComplex([], set())
    assert sb.reduced_betti(E, 2, [-1, 0]) == {-1: 1, 0: 0}


def test_homology_disjoint_points():
    X = sb.SimplicialComplex(list("abc"),
                             {frozenset([0]), frozenset([1]), frozenset([2])})
    assert sb.reduced_betti(X, 2, [0]) == {0: 2}


def rp2():
    # minimal 6-vertex triangulation of the real projective plane
    tris = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
            (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6)]
    return sb.SimplicialComplex(
        list(range(1, 7)), {frozenset(t - 1 for t in tri) for tri in tris})


def test_homology_projective_plane_torsion():
    X = rp2()
    hz = sb.integral_reduced_homology(X, [0, 1, 2])
    assert hz[0] == (0, ())
    assert hz[1] == (0, (2,))
    assert hz[2] == (0, ())
    # universal coefficients: the 2-torsion shows up twice mod 2
    assert sb.reduced_betti(X, 2, [0, 1, 2]) == {0: 0, 1: 1, 2: 1}
    assert sb.reduced_betti(X, 3, [0, 1, 2]) == {0: 0, 1: 0, 2: 0}


def test_universal_coefficient_rank_relation():
    for X in (triangle_boundary(), rp2(), sb.spb_complex(4, 2, 2, "spb_modI")):
        hz = sb.integral_reduced_homology(X, [0, 1])
        for p in (2, 3):
            bp = sb.reduced_betti(X, p, [0, 1])
            for k in (0, 1):
                tk = sum(1 for d in hz[k][1] if d % p == 0)
                tk1 = sum(1 for d in hz.get(k - 1, (0, ()))[1] if d % p == 0)
                assert bp[k] == hz[k][0] + tk + tk1


def test_euler_characteristic_consistency():
    for X in (triangle_boundary(), rp2(), sb.spb_complex(4, 2, 3, "spb_modI")):
        f = X.f_vector()
        chi_faces = sum((-1) ** k * c for k, c in enumerate(f)) - 1
        betti = sb.reduced_betti(X, 2, list(range(len(f))))
        chi_homology = sum((-1) ** k * betti[k] for k in range(len(f)))
        assert chi_faces == chi_homology


# verification entry points --------------------------------------------------------


def test_theoremD_small():
    out = sb.verify_theoremD(2, 2, 1)
    assert out["nonvanishing"] and out["betti"] == 3
    out = sb.verify_theoremD(3, 2, 1)
    assert out["nonvanishing"] and out["betti"] == 8


def test_charney_small():
    assert sb.verify_charney(4, 2, 3)["all_vanish"]
    assert sb.verify_charney(4, 2, 2)["checked_degrees"] == []


def test_spb_in_su_small():
    assert sb.verify_spb_in_su(4, 2, 2)["all_contained"]
    assert sb.verify_spb_in_su(9, 3, 2)["all_contained"]


def test_simplicial_roundtrip():
    X = sb.spb_complex(4, 2, 2, "spb_modI")
    doc = json.loads(json.dumps(X.encode()))
    Y = sb.SimplicialComplex.decode(doc)
    assert Y.f_vector() == X.f_vector()
    assert {frozenset(map(tuple, (X.vertices[v] for v in mx)))
            for mx in X.maximal} \
        == {frozenset(map(tuple, (Y.vertices[v] for v in mx)))
            for mx in Y.maximal}
