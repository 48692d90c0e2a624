"""Finite matrix-group engine for GL2/SL2 over the chain rings.

One GroupTable class serves ambient groups and subgroups alike: elements are
stored as four parallel entry-code arrays plus a packed-code position index,
products are recomputed from matrix entries (never a full Cayley table), and
subgroups carry a link to their parent so characters can be fused up and down.

Orbit computations (conjugacy classes, cosets, double cosets) run as min-label
propagation over generator permutation arrays.  Generating sets are found
greedily and verified by breadth-first closure, so every table is self-checking.
"""

from __future__ import annotations

from functools import cached_property
from math import lcm

import numpy as np

from . import mat, ring
from .mat import Mat2
from .ring import RingSpec


class BudgetError(RuntimeError):
    """Requested enumeration exceeds the configured element budget."""


DEFAULT_BUDGET = 1 << 25


def gl2_order(spec: RingSpec) -> int:
    q = spec.q
    return q ** (4 * spec.r - 3) * (q - 1) * (q * q - 1)


def sl2_order(spec: RingSpec) -> int:
    return gl2_order(spec) // ring.unit_count(spec)


class GroupTable:
    """Enumerated matrix group (or subgroup) with entrywise multiplication."""

    def __init__(self, spec, name, ms, gens=None, parent=None, parent_pos=None):
        self.spec = spec
        self.name = name
        self.m11, self.m12, self.m21, self.m22 = (np.ascontiguousarray(a, dtype=np.int64) for a in ms)
        self.n = len(self.m11)
        self.parent = parent
        self.parent_pos = parent_pos
        self.codes = mat._vpack(spec, (self.m11, self.m12, self.m21, self.m22))
        pos = np.full(spec.size ** 4, -1, dtype=np.int32)
        pos[self.codes] = np.arange(self.n, dtype=np.int32)
        self._pos = pos
        ident = int(mat._vpack(spec, tuple(np.int64(c) for c in (1, 0, 0, 1))))
        self.identity = int(pos[ident])
        if self.identity < 0:
            raise ValueError("element set lacks the identity")
        inv_ms = mat._vmat_inv(spec, self.entries(np.arange(self.n)))
        self.inv = self._lookup(inv_ms)
        self.gens = [int(g) for g in gens] if gens is not None else self._greedy_gens()
        if gens is not None:
            covered = int(_closure_mask(self, self.gens).sum())
            if covered != self.n:
                raise ValueError(f"given generators span {covered} of {self.n} elements")

    # -------------------------------------------------------------- plumbing

    def entries(self, i):
        return (self.m11[i], self.m12[i], self.m21[i], self.m22[i])

    def _lookup(self, ms):
        p = self._pos[mat._vpack(self.spec, ms)]
        if not np.all(p >= 0):
            raise ValueError(f"product left the element set of {self.name}")
        return p.astype(np.int64)

    def pos_of_codes(self, codes):
        """Positions of packed matrix codes; -1 marks non-members."""
        return self._pos[np.asarray(codes, dtype=np.int64)].astype(np.int64)

    def mul(self, i, j):
        """Position(s) of element i times element j; broadcasts."""
        p = self._lookup(mat._vmat_mul(self.spec, self.entries(i), self.entries(j)))
        return p if isinstance(i, np.ndarray) or isinstance(j, np.ndarray) else int(p)

    def matrix(self, i) -> Mat2:
        return Mat2(self.spec, int(self.m11[i]), int(self.m12[i]), int(self.m21[i]), int(self.m22[i]))

    def pos_of_matrix(self, X: Mat2) -> int:
        p = int(self._pos[int(mat._vpack(self.spec, tuple(np.int64(c) for c in X.codes)))])
        if p < 0:
            raise ValueError(f"{mat.encode_mat(X)} is not in {self.name}")
        return p

    @cached_property
    def dets(self):
        return mat._vdet(self.spec, self.entries(np.arange(self.n)))

    @cached_property
    def traces(self):
        return mat._vtrace(self.spec, self.entries(np.arange(self.n)))

    def _greedy_gens(self):
        gens: list[int] = []
        known = _closure_mask(self, gens)
        while not known.all():
            gens.append(int(np.flatnonzero(~known)[0]))
            known = _closure_mask(self, gens)
        return gens

    # -------------------------------------------------------------- orders

    @cached_property
    def element_orders(self):
        out = np.zeros(self.n, dtype=np.int64)
        out[self.identity] = 1
        cur = np.arange(self.n, dtype=np.int64)
        base = np.arange(self.n, dtype=np.int64)
        k = 1
        while np.any(out == 0):
            alive = out == 0
            cur[alive] = self.mul(cur[alive], base[alive])
            k += 1
            out[alive & (cur == self.identity)] = k
        return out

    @cached_property
    def exponent(self):
        return lcm(*(int(o) for o in np.unique(self.element_orders)))

    # -------------------------------------------------------------- permutations

    def right_mul_perm(self, g: int):
        return self._lookup(mat._vmat_mul(self.spec, self.entries(np.arange(self.n)), self.entries(g)))

    def left_mul_perm(self, g: int):
        return self._lookup(mat._vmat_mul(self.spec, self.entries(g), self.entries(np.arange(self.n))))

    def conj_perm(self, g: int):
        """x -> g x g^-1 as a position permutation."""
        gx = mat._vmat_mul(self.spec, self.entries(g), self.entries(np.arange(self.n)))
        return self._lookup(mat._vmat_mul(self.spec, gx, self.entries(int(self.inv[g]))))

    def pos_in_ancestor(self, ancestor: "GroupTable"):
        """Map positions here to positions in a (transitive) parent table."""
        if ancestor is self:
            return np.arange(self.n, dtype=np.int64)
        t, idx = self, np.arange(self.n, dtype=np.int64)
        while t.parent is not None:
            idx = t.parent_pos[idx]
            t = t.parent
            if t is ancestor:
                return idx
        raise ValueError(f"{ancestor.name} is not an ancestor of {self.name}")

    def __repr__(self):
        return f"<{self.name} over {self.spec.short_name} r={self.spec.r}, {self.n} elements>"


def _closure_mask(table: GroupTable, gens) -> np.ndarray:
    known = np.zeros(table.n, dtype=bool)
    known[table.identity] = True
    frontier = np.array([table.identity], dtype=np.int64)
    while len(frontier):
        nxt = []
        for g in gens:
            p = table.mul(frontier, np.int64(g))
            p = p[~known[p]]
            if len(p):
                p = np.unique(p)
                known[p] = True
                nxt.append(p)
        frontier = np.concatenate(nxt) if nxt else np.array([], dtype=np.int64)
    return known


# ------------------------------------------------------------------ builders


def _enumerate_group(spec, keep_fn, name, expected, budget):
    if expected > budget:
        raise BudgetError(
            f"|{name}({spec.short_name}, r={spec.r})| = {expected} exceeds the budget {budget}; "
            "use the predict module for closed forms at this level"
        )
    total = spec.size ** 4
    chunks = []
    step = 1 << 22
    for start in range(0, total, step):
        codes = np.arange(start, min(start + step, total), dtype=np.int64)
        X = mat._vunpack(spec, codes)
        keep = keep_fn(X)
        chunks.append(tuple(t[keep] for t in X))
    ms = tuple(np.concatenate([c[k] for c in chunks]) for k in range(4))
    table = GroupTable(spec, name, ms)
    if table.n != expected:
        raise AssertionError(f"enumerated {table.n} elements of {name}, expected {expected}")
    return table


def build_gl2(spec: RingSpec, budget: int = DEFAULT_BUDGET) -> GroupTable:
    """All of GL_2(o_r) by vectorized scan; order formula asserted."""
    return _enumerate_group(
        spec,
        lambda X: ring._vval(spec, mat._vdet(spec, X)) == 0,
        "GL2",
        gl2_order(spec),
        budget,
    )


def build_sl2(spec: RingSpec, budget: int = DEFAULT_BUDGET) -> GroupTable:
    """All of SL_2(o_r) as its own ambient table."""
    return _enumerate_group(
        spec,
        lambda X: mat._vdet(spec, X) == 1,
        "SL2",
        sl2_order(spec),
        budget,
    )


def subgroup(table: GroupTable, members, gens=None, name="subgroup") -> GroupTable:
    """Wrap a closed subset of table as a child GroupTable.

    members: boolean mask or position array.  Closure failures surface as
    errors during construction (products must stay inside the member set).
    """
    members = np.asarray(members)
    idx = np.flatnonzero(members) if members.dtype == bool else np.sort(members.astype(np.int64))
    ms = tuple(t[idx] for t in table.entries(np.arange(table.n)))
    sub_gens = None
    if gens is not None:
        back = np.full(table.n, -1, dtype=np.int64)
        back[idx] = np.arange(len(idx))
        sub_gens = [int(back[g]) for g in gens]
        if any(g < 0 for g in sub_gens):
            raise ValueError("generator not inside the member set")
    return GroupTable(table.spec, name, ms, gens=sub_gens, parent=table, parent_pos=idx)


def sl2_subgroup(gl: GroupTable) -> GroupTable:
    sub = subgroup(gl, gl.dets == 1, name="SL2")
    assert sub.n == sl2_order(gl.spec)
    return sub


def congruence_subgroup(G: GroupTable, i: int) -> GroupTable:
    """M^i = I + pi^i M_2(o_r) intersected with G (K^i when G is SL2)."""
    spec = G.spec
    if not 1 <= i <= spec.r:
        raise ValueError(f"congruence level {i} not in [1, {spec.r}]")
    X = G.entries(np.arange(G.n))
    one_ = np.int64(1)
    keep = (
        (ring._vval(spec, ring._vadd(spec, X[0], ring._vneg(spec, one_))) >= i)
        & (ring._vval(spec, X[1]) >= i)
        & (ring._vval(spec, X[2]) >= i)
        & (ring._vval(spec, ring._vadd(spec, X[3], ring._vneg(spec, one_))) >= i)
    )
    name = f"K^{i}" if G.name.startswith("SL2") or G.name.startswith("K^") else f"M^{i}"
    sub = subgroup(G, keep, name=name)
    q, r = spec.q, spec.r
    expected = {"M": q ** (4 * (r - i)), "K": q ** (3 * (r - i))}[name[0]]
    if G.name in ("GL2", "SL2") and sub.n != expected:
        raise AssertionError(f"|{name}| = {sub.n}, expected {expected}")
    return sub


def subgroup_closure(G: GroupTable, generators, name="closure") -> GroupTable:
    """Subgroup of G generated by the given positions."""
    gens = [int(g) for g in generators]
    mask = _closure_mask(G, gens)
    return subgroup(G, mask, gens=[g for g in gens if g != G.identity] or None, name=name)


def normal_closure(G: GroupTable, S, normalizers, name="normal closure") -> GroupTable:
    """Smallest subgroup of G containing S and stable under the normalizers."""
    gens = [int(s) for s in S]
    while True:
        H = subgroup_closure(G, gens, name=name)
        in_H = np.zeros(G.n, dtype=bool)
        in_H[H.parent_pos] = True
        fresh = []
        for g in normalizers:
            gi = int(G.inv[g])
            for s in gens:
                t = G.mul(G.mul(int(g), s), gi)
                if not in_H[t]:
                    fresh.append(int(t))
        if not fresh:
            return H
        gens.extend(fresh)


def derived_subgroup(H: GroupTable) -> GroupTable:
    """Normal closure in H of the commutators of its generator pairs."""
    comms = set()
    for a in H.gens:
        ai = int(H.inv[a])
        for b in H.gens:
            bi = int(H.inv[b])
            comms.add(H.mul(H.mul(int(a), int(b)), H.mul(ai, bi)))
    comms.discard(H.identity)
    return normal_closure(H, sorted(comms), H.gens, name=f"[{H.name},{H.name}]")


def is_abelian(H: GroupTable) -> bool:
    return all(H.mul(a, b) == H.mul(b, a) for a in H.gens for b in H.gens)


# ------------------------------------------------------------------ orbits


def _orbit_labels(n: int, perms) -> np.ndarray:
    """Connected components of the union of the permutations' edge sets.

    Monotone min-label flow: labels only decrease and always hold a position
    inside the holder's orbit, so the fixpoint labels each orbit by its
    minimum position.
    """
    lab = np.arange(n, dtype=np.int64)
    while True:
        before = lab.copy()
        for p in perms:
            lab = np.minimum(lab, lab[p])
            np.minimum.at(lab, p, lab.copy())
        lab = np.minimum(lab, lab[lab])
        if np.array_equal(lab, before):
            return lab


class ConjClasses:
    """Partition of a GroupTable into conjugacy classes."""

    def __init__(self, table: GroupTable):
        self.table = table
        perms = [table.conj_perm(g) for g in table.gens]
        lab = _orbit_labels(table.n, perms)
        self.reps = np.unique(lab)
        self.class_id = np.searchsorted(self.reps, lab)
        self.k = len(self.reps)
        self.sizes = np.bincount(self.class_id, minlength=self.k)
        assert int(self.sizes.sum()) == table.n
        assert all(table.n % int(s) == 0 for s in self.sizes)

    @cached_property
    def inverse_class(self):
        """Class index of the inverses, per class."""
        return self.class_id[self.table.inv[self.reps]]

    def power_class(self, s: int) -> np.ndarray:
        """Class index of rep^s, per class."""
        out = np.full(self.k, self.table.identity, dtype=np.int64)
        for _ in range(s % self.table.exponent):
            out = self.table.mul(out, self.reps)
        return self.class_id[out]

    def __repr__(self):
        return f"<{self.k} classes of {self.table.name}, sizes {sorted(set(map(int, self.sizes)))}>"


def conjugacy_classes(G: GroupTable) -> ConjClasses:
    return ConjClasses(G)


def cosets(G: GroupTable, H: GroupTable) -> np.ndarray:
    """Representatives (positions in G) of the left cosets gH."""
    hg = _gen_positions_in(G, H)
    labels = _orbit_labels(G.n, [G.right_mul_perm(g) for g in hg])
    reps = np.unique(labels)
    assert len(reps) * H.n == G.n
    return reps


def double_cosets(G: GroupTable, H1: GroupTable, H2: GroupTable):
    """(representatives, sizes) for H1\\G/H2."""
    p1 = [G.left_mul_perm(g) for g in _gen_positions_in(G, H1)]
    p2 = [G.right_mul_perm(g) for g in _gen_positions_in(G, H2)]
    labels = _orbit_labels(G.n, p1 + p2)
    reps, counts = np.unique(labels, return_counts=True)
    assert int(counts.sum()) == G.n
    return reps, counts


def _gen_positions_in(G: GroupTable, H: GroupTable):
    if H is G:
        return list(H.gens)
    up = H.pos_in_ancestor(G)
    return [int(up[g]) for g in H.gens]
