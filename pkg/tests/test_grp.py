"""Group enumeration, subgroups, conjugacy classes, cosets."""

import numpy as np
import pytest

from branchlab import grp, mat, ring


def _gl(kind, r):
    return grp.build_gl2(ring.make_ring(kind, r=r))


def test_orders_match_closed_forms():
    for kind, r, g, s in [
        ("z2", 1, 6, 6),
        ("z2", 2, 96, 48),
        ("z2", 3, 1536, 384),
        ("z2", 4, 24576, 3072),
        ("f2t", 2, 96, 48),
        ("f2t", 3, 1536, 384),
        ("f2t", 4, 24576, 3072),
        ("f4t", 1, 180, 60),
        ("eis2", 2, 96, 48),
        ("eis2", 3, 1536, 384),
    ]:
        spec = ring.make_ring(kind, r=r)
        assert grp.gl2_order(spec) == g
        assert grp.sl2_order(spec) == s
        G = grp.build_gl2(spec)
        assert G.n == g
        assert grp.sl2_subgroup(G).n == s
        assert grp.build_sl2(spec).n == s


def test_group_axioms_exhaustive_small():
    for G in (_gl("z2", 1), grp.build_sl2(ring.make_ring("f2t", r=2))):
        idx = np.arange(G.n, dtype=np.int64)
        mul = G.mul(idx[:, None], idx[None, :])
        e = G.identity
        assert np.array_equal(mul[e], idx) and np.array_equal(mul[:, e], idx)
        assert np.array_equal(mul[idx, G.inv[idx]], np.full(G.n, e))
        a3 = mul[mul[idx[:, None, None], idx[None, :, None]], idx[None, None, :]]
        b3 = mul[idx[:, None, None], mul[idx[None, :, None], idx[None, None, :]]]
        assert np.array_equal(a3, b3)
        # each row/column of the multiplication table is a permutation
        assert all(len(set(mul[i])) == G.n for i in range(G.n))


def test_matrix_position_round_trip():
    G = _gl("z2", 2)
    spec = G.spec
    for p in range(0, G.n, 11):
        M = G.matrix(p)
        assert G.pos_of_matrix(M) == p
        assert ring.is_unit(mat.det(M))
    with pytest.raises(ValueError):
        G.pos_of_matrix(mat.mat(spec, [[2, 0], [0, 1]]))  # det not a unit
    S = grp.sl2_subgroup(G)
    with pytest.raises(ValueError):
        S.pos_of_matrix(mat.mat(spec, [[3, 0], [0, 1]]))  # in GL2, det != 1


def test_mul_matches_matrix_product():
    G = _gl("f2t", 2)
    for a in range(0, G.n, 17):
        for b in range(0, G.n, 13):
            got = G.matrix(int(G.mul(np.int64(a), np.int64(b))))
            assert got == mat.mat_mul(G.matrix(a), G.matrix(b))


def test_dets_traces_element_orders():
    G = _gl("z2", 2)
    orders = G.element_orders
    for p in range(G.n):
        M = G.matrix(p)
        assert G.dets[p] == mat.det(M).code
        assert G.traces[p] == mat.trace(M).code
        # brute element order
        k, acc = 1, p
        while acc != G.identity:
            acc = int(G.mul(np.int64(acc), np.int64(p)))
            k += 1
        assert orders[p] == k
    assert G.exponent == int(np.lcm.reduce(orders))


def test_congruence_subgroups():
    for kind in ("z2", "f2t"):
        for r in (2, 3):
            spec = ring.make_ring(kind, r=r)
            G = grp.build_gl2(spec)
            S = grp.sl2_subgroup(G)
            q = spec.q
            for i in range(1, r):
                M = grp.congruence_subgroup(G, i)
                K = grp.congruence_subgroup(S, i)
                assert M.n == q ** (4 * (r - i))
                assert K.n == q ** (3 * (r - i))
                # members reduce to the identity mod pi^i
                sub = ring.truncate(spec, i)
                for p in M.parent_pos[:: max(1, M.n // 5)]:
                    assert mat.mat_proj(G.matrix(int(p)), sub) == mat.identity(sub)
                # normal in the parent: conjugation permutes the member set
                members = set(M.parent_pos.tolist())
                g = int(np.random.default_rng(3).integers(G.n))
                gi = int(G.inv[g])
                for p in list(members)[:: max(1, M.n // 5)]:
                    c = int(G.mul(np.int64(g), G.mul(np.int64(p), np.int64(gi))))
                    assert c in members


def test_sl2_subgroup_dets():
    G = _gl("z2", 3)
    S = grp.sl2_subgroup(G)
    assert np.all(G.dets[S.parent_pos] == 1)
    assert S.n * ring.unit_count(G.spec) == G.n


def test_conjugacy_classes():
    for G in (_gl("z2", 1), _gl("z2", 2), grp.build_sl2(ring.make_ring("z2", r=2))):
        cc = grp.ConjClasses(G)
        assert int(cc.sizes.sum()) == G.n
        assert np.array_equal(cc.class_id[cc.reps], np.arange(cc.k))
        assert all(G.n % int(s) == 0 for s in cc.sizes)  # orbit sizes divide the order
        # inverse_class and power maps agree with direct computation
        for c in range(cc.k):
            rep = int(cc.reps[c])
            assert cc.class_id[G.inv[rep]] == cc.inverse_class[c]
        # class of identity is a singleton
        cid = int(cc.class_id[G.identity])
        assert cc.sizes[cid] == 1
        # brute orbit check on a few classes
        for c in range(0, cc.k, 3):
            rep = int(cc.reps[c])
            orbit = {int(G.mul(G.mul(g, np.int64(rep)), G.inv[g])) for g in range(G.n)}
            assert orbit == set(np.flatnonzero(cc.class_id == c).tolist())


def test_class_counts_frozen():
    assert grp.ConjClasses(_gl("z2", 1)).k == 3  # S3
    assert grp.ConjClasses(_gl("z2", 2)).k == 14
    assert grp.ConjClasses(grp.build_sl2(ring.make_ring("z2", r=2))).k == 10
    assert grp.ConjClasses(_gl("f2t", 2)).k == 14
    assert grp.ConjClasses(grp.build_sl2(ring.make_ring("f2t", r=2))).k == 10


def test_centralizer_orbit_identity():
    G = _gl("z2", 2)
    cc = grp.ConjClasses(G)
    for c in range(cc.k):
        rep = int(cc.reps[c])
        cent = sum(
            1
            for g in range(G.n)
            if int(G.mul(np.int64(g), np.int64(rep))) == int(G.mul(np.int64(rep), np.int64(g)))
        )
        assert cent * int(cc.sizes[c]) == G.n


def test_cosets_partition():
    G = _gl("z2", 2)
    H = grp.congruence_subgroup(G, 1)
    reps = grp.cosets(G, H)
    assert len(reps) * H.n == G.n
    seen = set()
    hset = H.parent_pos
    for t in reps:
        coset = {int(G.mul(np.int64(int(t)), np.int64(int(h)))) for h in hset}
        assert len(coset) == H.n and not (coset & seen)
        seen |= coset
    assert len(seen) == G.n


def test_double_cosets_partition():
    G = _gl("z2", 2)
    H = grp.congruence_subgroup(G, 1)
    S = grp.sl2_subgroup(G)
    reps, sizes = grp.double_cosets(G, S, H)
    assert int(np.sum(sizes)) == G.n
    seen = set()
    for t, size in zip(reps, sizes):
        dc = {
            int(G.mul(G.mul(np.int64(int(s)), np.int64(int(t))), np.int64(int(h))))
            for s in S.parent_pos
            for h in H.parent_pos
        }
        assert len(dc) == int(size) and not (dc & seen)
        seen |= dc
    assert len(seen) == G.n


def test_subgroup_closure_and_derived():
    spec = ring.make_ring("z2", r=1)
    G = grp.build_gl2(spec)  # = S3
    e01 = G.pos_of_matrix(mat.mat(spec, [[1, 1], [0, 1]]))
    e10 = G.pos_of_matrix(mat.mat(spec, [[1, 0], [1, 1]]))
    H = grp.subgroup_closure(G, [e01, e10], name="elem")
    assert H.n == 6  # the elementary matrices generate all of SL2(F2) = S3
    T = grp.subgroup_closure(G, [], name="1")
    assert T.n == 1
    D = grp.derived_subgroup(G)
    assert D.n == 3  # A3 inside S3
    # derived subgroup contains every commutator
    dset = set(D.parent_pos.tolist())
    for a in range(G.n):
        for b in range(G.n):
            c = G.mul(G.mul(np.int64(a), np.int64(b)), G.mul(G.inv[a], G.inv[b]))
            assert int(c) in dset


def test_is_abelian():
    G = _gl("z2", 2)
    assert not grp.is_abelian(G)
    assert grp.is_abelian(grp.congruence_subgroup(G, 1))


def test_budget_errors():
    with pytest.raises(grp.BudgetError):
        grp.build_gl2(ring.make_ring("z2", r=9))
    with pytest.raises(grp.BudgetError):
        grp.build_gl2(ring.make_ring("z2", r=2), budget=10)


def test_pos_in_ancestor():
    G = _gl("z2", 2)
    S = grp.sl2_subgroup(G)
    K = grp.congruence_subgroup(S, 1)
    up = K.pos_in_ancestor(G)
    for i in range(K.n):
        assert G.matrix(int(up[i])) == K.matrix(i)


def test_perm_actions():
    G = grp.build_sl2(ring.make_ring("f2t", r=2))
    g = 7
    right = G.right_mul_perm(g)
    left = G.left_mul_perm(g)
    conj = G.conj_perm(g)
    for x in range(0, G.n, 5):
        assert right[x] == int(G.mul(np.int64(x), np.int64(g)))
        assert left[x] == int(G.mul(np.int64(g), np.int64(x)))
        assert conj[x] == int(G.mul(G.mul(np.int64(g), np.int64(x)), G.inv[g]))
