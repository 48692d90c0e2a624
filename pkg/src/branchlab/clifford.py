"""Inertia machinery for restricting GL2 irreducibles to SL2.

The congruence subgroup M^ell of GL2(o_r) (ell = ceil(r/2)) is abelian, and
its linear characters are exactly

    psi_A(I + pi^ell B) = psi(pi^ell trace(A~ B)),   A in M_2(o_ell'),

for a fixed coordinate lift A~ of A.  This module builds psi_A and its
restriction psi_[A] to K^ell = M^ell cap SL2, the stabilizers of both
characters inside GL2 and SL2, the auxiliary h/H unipotent layers, the coset
space D_A = o_r^x / det C_GL2(psi_A), character-extension tests through
abelianizations, the fiber Irr(C_GL2(psi_A) | psi_A), and the coset-twisted
decomposition

    Res_SL2 Ind(phi) = sum over d in D_A of Ind(phi^d).

Every identity with two independent computation paths (stabilizer scan vs
product formula, coset counts vs centralizer determinant images, twisted
domains vs conjugated subgroups) is computed both ways; the cross-check
failures raise, and are part of the contract.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, lcm

import numpy as np

from . import chartab, cyclo, grp, mat, ring
from .chartab import ClassFunction
from .grp import GroupTable
from .mat import Mat2
from .ring import RingElem, RingSpec


def _cache(G: GroupTable) -> dict:
    if not hasattr(G, "cache"):
        G.cache = {}
    return G.cache


# ------------------------------------------------------------------ layers


@dataclass(eq=False)
class _Layers:
    """Congruence layers and lookup maps shared by every psi_A over one table."""

    spec: RingSpec
    spec_lp: RingSpec
    ell: int
    ellp: int
    gl: GroupTable | None  # None when built from a bare SL2 table
    sl: GroupTable
    Ml: GroupTable | None
    Mlp: GroupTable | None
    Kl: GroupTable
    K1: GroupTable
    B_M: tuple | None  # (m - I)/pi^ell entrywise, per M^ell position
    B_K: tuple
    gl_to_Ml: np.ndarray | None
    sl_to_Kl: np.ndarray
    glp_entries: tuple | None  # gl entries projected to o_ell'
    pi_ell_code: int


def _inverse_map(size: int, positions: np.ndarray) -> np.ndarray:
    back = np.full(size, -1, dtype=np.int64)
    back[positions] = np.arange(len(positions), dtype=np.int64)
    return back


def _b_arrays(spec: RingSpec, table: GroupTable, ell: int) -> tuple:
    m11, m12, m21, m22 = table.entries(np.arange(table.n))
    one = np.int64(1)
    d11 = ring._vadd(spec, m11, ring._vneg(spec, one))
    d22 = ring._vadd(spec, m22, ring._vneg(spec, one))
    return tuple(ring.div_pi_power(spec, t, ell) for t in (d11, m12, m21, d22))


def _layers(G: GroupTable) -> _Layers:
    cache = _cache(G)
    if "clifford_layers" in cache:
        return cache["clifford_layers"]
    spec = G.spec
    if spec.r < 2:
        raise ValueError("psi_A machinery needs level r >= 2")
    is_gl = G.n == grp.gl2_order(spec)
    is_sl = G.n == grp.sl2_order(spec)
    if not (is_gl or is_sl):
        raise ValueError("G must be a full GL2 or SL2 table")
    ell, ellp = spec.ell, spec.ell_prime
    spec_lp = ring.truncate(spec, ellp)
    if is_gl:
        sl = grp.sl2_subgroup(G)
        Ml = grp.congruence_subgroup(G, ell)
        Mlp = grp.congruence_subgroup(G, ellp)
        Kl = grp.congruence_subgroup(sl, ell)
        K1 = grp.congruence_subgroup(sl, 1)
        B_M = _b_arrays(spec, Ml, ell)
        gl_to_Ml = _inverse_map(G.n, Ml.parent_pos)
        glp_entries = tuple(ring._vproj(spec, spec_lp, t) for t in G.entries(np.arange(G.n)))
        gl = G
    else:
        gl = Ml = Mlp = None
        B_M = gl_to_Ml = glp_entries = None
        sl = G
        Kl = grp.congruence_subgroup(G, ell)
        K1 = grp.congruence_subgroup(G, 1)
    B_K = _b_arrays(spec, Kl, ell)
    sl_to_Kl = _inverse_map(sl.n, Kl.parent_pos)
    pe = ring.one(spec)
    for _ in range(ell):
        pe = ring.mul(pe, ring.uniformizer(spec))
    out = _Layers(
        spec, spec_lp, ell, ellp, gl, sl, Ml, Mlp, Kl, K1,
        B_M, B_K, gl_to_Ml, sl_to_Kl, glp_entries, pe.code,
    )
    cache["clifford_layers"] = out
    return out


# ------------------------------------------------------------------ psi_A


@dataclass(eq=False)
class PsiA:
    """psi_A on M^ell together with its restriction psi_[A] to K^ell.

    exps_M / exps_K hold the zeta_n exponent of the character value at every
    member position of M^ell / K^ell (exps_M is None when built from a bare
    SL2 table, where only psi_[A] exists).
    """

    group: GroupTable
    A: Mat2
    Atilde: Mat2
    n: int
    exps_M: np.ndarray | None = field(repr=False, default=None)
    exps_K: np.ndarray = field(repr=False, default=None)
    _inertia: "InertiaData | None" = field(repr=False, default=None, compare=False)

    @property
    def layers(self) -> _Layers:
        return _layers(self.group)

    @cached_property
    def psi_M(self) -> ClassFunction:
        """psi_A as an exact class function on M^ell (classes are singletons)."""
        if self.exps_M is None:
            raise ValueError("psi_A on M^ell needs the ambient GL2 table")
        cc = chartab.conjugacy_classes_cached(self.layers.Ml)
        return chartab.class_function_from_exponents(cc, self.n, self.exps_M[cc.reps])

    @cached_property
    def psi_K(self) -> ClassFunction:
        """psi_[A], the restriction to K^ell."""
        cc = chartab.conjugacy_classes_cached(self.layers.Kl)
        return chartab.class_function_from_exponents(cc, self.n, self.exps_K[cc.reps])

    def __repr__(self):
        return f"<psi_A for A={mat.encode_mat(self.A)} at level r={self.layers.spec.r}>"


def _psi_exps(L: _Layers, Atilde: Mat2, B: tuple) -> np.ndarray:
    spec = L.spec
    a11, a12, a21, a22 = (np.int64(c) for c in Atilde.codes)
    b11, b12, b21, b22 = B
    m, ad = ring._vmul, ring._vadd
    tr = ad(
        spec,
        ad(spec, m(spec, a11, b11), m(spec, a12, b21)),
        ad(spec, m(spec, a21, b12), m(spec, a22, b22)),
    )
    arg = ring._vmul(spec, np.int64(L.pi_ell_code), tr)
    return np.asarray(ring.psi_exponent(spec, arg), dtype=np.int64)


def make_psiA(G: GroupTable, A: Mat2) -> PsiA:
    """The character psi_A of M^ell (psi_[A] of K^ell for an SL2 table).

    A must live over o_ell'; A = 0 gives the trivial character, and distinct
    A give distinct characters.
    """
    L = _layers(G)
    if A.spec != L.spec_lp:
        raise ValueError(f"A must be over the level-{L.ellp} quotient ring, got level {A.spec.r}")
    key = ("psiA", A.codes)
    cache = _cache(G)
    if key in cache:
        return cache[key]
    Atilde = mat.mat_lift(L.spec, A)
    n = ring.psi_order(L.spec)
    exps_K = _psi_exps(L, Atilde, L.B_K)
    exps_M = _psi_exps(L, Atilde, L.B_M) if L.Ml is not None else None
    out = PsiA(G, A, Atilde, n, exps_M, exps_K)
    cache[key] = out
    return out


def _require_companion(A: Mat2):
    if A.m11 != 0 or ring._vval(A.spec, np.int64(A.m21)) != 0:
        raise ValueError(f"non-companion A: {mat.encode_mat(A)}")


# ------------------------------------------------------------------ h / H layers


def h_set(psiA: PsiA, i: int) -> list[RingElem]:
    """h^i = {x in o_r : 2x = 0 mod pi^i and x(x + beta~) = 0 mod pi^i}.

    beta~ is the lifted trace entry of the companion matrix; ascending codes.
    """
    _require_companion(psiA.A)
    L = psiA.layers
    spec = L.spec
    if not 0 <= i <= spec.r:
        raise ValueError(f"congruence level {i} not in [0, {spec.r}]")
    beta = np.int64(psiA.Atilde.m22)
    x = np.arange(spec.size, dtype=np.int64)
    two = np.int64(ring.from_integer(spec, 2).code)
    c1 = ring._vval(spec, ring._vmul(spec, two, x)) >= i
    c2 = ring._vval(spec, ring._vmul(spec, x, ring._vadd(spec, x, beta))) >= i
    return [RingElem(spec, int(c)) for c in x[c1 & c2]]


def H_group(psiA: PsiA, i: int) -> GroupTable:
    """H^i = {e_x = [[1, a~^-1 x],[0,1]] : x in h^i} as a subgroup of SL2."""
    L = psiA.layers
    spec = L.spec
    hs = h_set(psiA, i)
    ainv = np.int64(ring.inv(RingElem(spec, psiA.Atilde.m21)).code)
    tops = ring._vmul(spec, ainv, np.array([h.code for h in hs], dtype=np.int64))
    zero, one = np.zeros(len(hs), dtype=np.int64), np.ones(len(hs), dtype=np.int64)
    pos = L.sl.pos_of_codes(mat._vpack(spec, (one, tops, zero, one)))
    if np.any(pos < 0):
        raise AssertionError("unipotent element missing from SL2 table")
    sub = grp.subgroup(L.sl, np.sort(pos), name=f"H^{i}")
    if not grp.is_abelian(sub):
        raise AssertionError(f"H^{i} is not abelian")
    return sub


# ------------------------------------------------------------------ masks


def _commute_mask(spec: RingSpec, X: tuple, codes4: tuple) -> np.ndarray:
    """Positions whose entries (4 parallel arrays) commute with the fixed matrix."""
    a, b, c, d = (np.int64(t) for t in codes4)
    x11, x12, x21, x22 = X
    m, ad, ng = ring._vmul, ring._vadd, ring._vneg
    # entries of X*A - A*X (the diagonal x11*a-style terms cancel)
    e11 = ad(spec, m(spec, x12, c), ng(spec, m(spec, b, x21)))
    e12 = ad(
        spec,
        ad(spec, m(spec, x11, b), m(spec, x12, d)),
        ng(spec, ad(spec, m(spec, a, x12), m(spec, b, x22))),
    )
    e21 = ad(
        spec,
        ad(spec, m(spec, x21, a), m(spec, x22, c)),
        ng(spec, ad(spec, m(spec, c, x11), m(spec, d, x21))),
    )
    e22 = ad(spec, m(spec, x21, b), ng(spec, m(spec, c, x12)))
    return (e11 == 0) & (e12 == 0) & (e21 == 0) & (e22 == 0)


def _product_mask(G: GroupTable, pos_a, pos_b) -> np.ndarray:
    """Membership mask of the product set {a*b : a in pos_a, b in pos_b}."""
    pa = np.asarray(pos_a, dtype=np.int64)
    pb = np.asarray(pos_b, dtype=np.int64)
    prod = G.mul(np.repeat(pa, len(pb)), np.tile(pb, len(pa)))
    out = np.zeros(G.n, dtype=bool)
    out[prod] = True
    return out


def _stabilizer_mask_gl(L: _Layers, psiA: PsiA) -> np.ndarray:
    """g in GL2 with psi_A(g^-1 m g) = psi_A(m) on the generators m of M^ell.

    Conjugation by g is an automorphism of the abelian M^ell and psi_A is a
    homomorphism, so agreement on generators is agreement everywhere.
    """
    gl, Ml = L.gl, L.Ml
    allg = np.arange(gl.n, dtype=np.int64)
    up = Ml.pos_in_ancestor(gl)
    keep = np.ones(gl.n, dtype=bool)
    for mgen in Ml.gens:
        t = gl.mul(gl.mul(gl.inv, np.int64(int(up[mgen]))), allg)
        inside = L.gl_to_Ml[t]
        if np.any(inside < 0):
            raise AssertionError("conjugate left M^ell")
        keep &= psiA.exps_M[inside] == psiA.exps_M[int(mgen)]
    return keep


def _bracket_stabilizer_mask_sl(L: _Layers, psiA: PsiA) -> np.ndarray:
    """g in SL2 stabilizing psi_[A], by the same generator scan on K^ell."""
    sl, Kl = L.sl, L.Kl
    alls = np.arange(sl.n, dtype=np.int64)
    up = Kl.pos_in_ancestor(sl)
    keep = np.ones(sl.n, dtype=bool)
    for kgen in Kl.gens:
        t = sl.mul(sl.mul(sl.inv, np.int64(int(up[kgen]))), alls)
        inside = L.sl_to_Kl[t]
        if np.any(inside < 0):
            raise AssertionError("conjugate left K^ell")
        keep &= psiA.exps_K[inside] == psiA.exps_K[int(kgen)]
    return keep


def _scalar_conj_mask_sl(L: _Layers, A: Mat2) -> np.ndarray:
    """g in SL2 with gamma(g)^-1 A gamma(g) - A scalar (the psi_[A] stabilizer test)."""
    lp = L.spec_lp
    sl = L.sl
    up = sl.parent_pos
    P = tuple(t[up] for t in L.glp_entries)
    Pi = tuple(t[up[sl.inv]] for t in L.glp_entries)
    Av = tuple(np.int64(c) for c in A.codes)
    D = mat._vmat_mul(lp, Pi, mat._vmat_mul(lp, Av, P))
    d11 = ring._vadd(lp, D[0], ring._vneg(lp, np.int64(A.m11)))
    d22 = ring._vadd(lp, D[3], ring._vneg(lp, np.int64(A.m22)))
    return (D[1] == A.m12) & (D[2] == A.m21) & (d11 == d22)


# ------------------------------------------------------------------ inertia


@dataclass(eq=False)
class InertiaData:
    """Stabilizer subgroups and coset data attached to one psi_A."""

    psiA: PsiA
    c_gl: GroupTable  # C_GL2(psi_A), subgroup of GL2
    c_sl: GroupTable  # C_SL2(psi_A) = C_GL2(psi_A) cap SL2
    c_sl_bracket: GroupTable  # C_SL2(psi_[A])
    c_s_ell: GroupTable  # (C_GL2(A~) M^ell) cap SL2
    d_s_ell: GroupTable  # (C_GL2(A~) M^ell) cap K^1
    h_ell: list
    h_ellp: list
    H_ell: GroupTable
    H_ellp: GroupTable
    dA_reps: list  # smallest-code unit per coset of det C_GL2(psi_A) in o_r^x
    det_image: np.ndarray  # sorted codes of det(C_GL2(psi_A))

    def __repr__(self):
        return (
            f"<inertia of {self.psiA!r}: |C_GL|={self.c_gl.n}, |C_SL|={self.c_sl.n}, "
            f"|C_SL[.]|={self.c_sl_bracket.n}, |D_A|={len(self.dA_reps)}>"
        )


def inertia(psiA: PsiA) -> InertiaData:
    """Stabilizers of psi_A / psi_[A], each built two or three independent ways.

    Routes per subgroup: a literal stabilizer scan, the residue-level
    commutation/scalar test, and the unipotent product formula.  Any
    disagreement raises.  D_A representatives come from explicit coset
    enumeration and are checked against the determinant-image count.
    """
    if psiA._inertia is not None:
        return psiA._inertia
    L = psiA.layers
    if L.gl is None:
        raise ValueError("inertia needs the ambient GL2 table")
    _require_companion(psiA.A)
    spec, lp = L.spec, L.spec_lp
    gl, sl = L.gl, L.sl

    stab = _stabilizer_mask_gl(L, psiA)
    cent_lift = _commute_mask(spec, gl.entries(np.arange(gl.n)), psiA.Atilde.codes)
    prod = _product_mask(gl, np.flatnonzero(cent_lift), L.Mlp.pos_in_ancestor(gl))
    if not np.array_equal(stab, prod):
        raise AssertionError("C_GL2(psi_A): stabilizer scan and product formula disagree")
    resid = _commute_mask(lp, L.glp_entries, psiA.A.codes)
    if not np.array_equal(stab, resid):
        raise AssertionError("C_GL2(psi_A): stabilizer scan and residue commutation disagree")
    c_gl = grp.subgroup(gl, stab, name="C_GL2(psi_A)")
    c_sl = grp.subgroup(sl, stab[sl.parent_pos], name="C_SL2(psi_A)")

    bstab = _bracket_stabilizer_mask_sl(L, psiA)
    bres = _scalar_conj_mask_sl(L, psiA.A)
    if not np.array_equal(bstab, bres):
        raise AssertionError("C_SL2(psi_[A]): stabilizer scan and scalar test disagree")
    h_ellp = h_set(psiA, L.ellp)
    H_ellp = H_group(psiA, L.ellp)
    bprod = _product_mask(sl, c_sl.parent_pos, H_ellp.pos_in_ancestor(sl))
    if not np.array_equal(bstab, bprod):
        raise AssertionError("C_SL2(psi_[A]): stabilizer scan and H-product formula disagree")
    c_sl_bracket = grp.subgroup(sl, bstab, name="C_SL2(psi_[A])")

    prod_ell = _product_mask(gl, np.flatnonzero(cent_lift), L.Ml.pos_in_ancestor(gl))
    in_sl = prod_ell[sl.parent_pos]
    c_s_ell = grp.subgroup(sl, in_sl, name="C_S^l(A~)")
    k1_mask = np.zeros(sl.n, dtype=bool)
    k1_mask[L.K1.parent_pos] = True
    d_s_ell = grp.subgroup(sl, in_sl & k1_mask, name="D_S^l(A~)")
    h_ell = h_set(psiA, L.ell)
    H_ell = H_group(psiA, L.ell)

    det_image = np.unique(gl.dets[stab])
    units = ring.unit_codes(spec)
    coset_label = ring._vmul(spec, units[:, None], det_image[None, :]).min(axis=1)
    rep_codes = np.unique(coset_label)
    if len(rep_codes) * len(det_image) != len(units):
        raise AssertionError("determinant cosets do not partition the units evenly")
    _csize, dsize = mat.centralizer_units(psiA.A)
    if len(det_image) != dsize * spec.q**L.ell:
        raise AssertionError(
            f"|det C_GL2(psi_A)| = {len(det_image)} != {dsize} * q^{L.ell}"
        )
    low_units = ring.unit_count(lp)
    if low_units % dsize or len(rep_codes) != low_units // dsize:
        raise AssertionError(
            f"|D_A| = {len(rep_codes)} does not match (q-1)q^(l'-1)/|det C(A)| = {low_units}/{dsize}"
        )
    if ring.val(mat.trace(psiA.A)) == 0 and len(rep_codes) != 1:
        raise AssertionError("unit trace must give |D_A| = 1")
    dA_reps = [RingElem(spec, int(c)) for c in rep_codes]

    out = InertiaData(
        psiA, c_gl, c_sl, c_sl_bracket, c_s_ell, d_s_ell,
        h_ell, h_ellp, H_ell, H_ellp, dA_reps, det_image,
    )
    psiA._inertia = out
    return out


# ------------------------------------------------------------------ abelianization and extensions


def _positions_in(K: GroupTable, H: GroupTable) -> np.ndarray:
    """Positions of K's members inside H, through their common ancestor."""
    if K is H:
        return np.arange(K.n, dtype=np.int64)
    root = H
    while root.parent is not None:
        root = root.parent
    up_h = H.pos_in_ancestor(root)
    up_k = K.pos_in_ancestor(root)
    out = _inverse_map(root.n, up_h)[up_k]
    if np.any(out < 0):
        raise ValueError(f"{K.name} is not contained in {H.name}")
    return out


@dataclass(eq=False)
class _AbelianQuotient:
    """H/[H,H] with labels, coset representatives, and exponent."""

    H: GroupTable
    derived_pos: np.ndarray  # positions of [H,H] inside H
    lab: np.ndarray  # H position -> quotient label
    reps: np.ndarray  # representative H position per label
    size: int
    exponent: int
    id_label: int

    def mul_label(self, i: int, j) -> np.ndarray:
        return self.lab[self.H.mul(int(self.reps[i]), self.reps[np.asarray(j, dtype=np.int64)])]


def _abelian_quotient(H: GroupTable) -> _AbelianQuotient:
    cache = _cache(H)
    if "abelian_quotient" in cache:
        return cache["abelian_quotient"]
    Hd = grp.derived_subgroup(H)
    dpos = Hd.pos_in_ancestor(H)
    perms = [H.right_mul_perm(int(dpos[g])) for g in Hd.gens]
    raw = grp._orbit_labels(H.n, perms)
    reps = np.unique(raw)
    lab = np.searchsorted(reps, raw).astype(np.int64)
    size = len(reps)
    assert size * Hd.n == H.n
    idl = int(lab[H.identity])
    ords = np.zeros(size, dtype=np.int64)
    ords[idl] = 1
    cur = np.arange(size, dtype=np.int64)
    base = np.arange(size, dtype=np.int64)
    k = 1
    while np.any(ords == 0):
        alive = ords == 0
        cur[alive] = lab[H.mul(reps[cur[alive]], reps[base[alive]])]
        k += 1
        ords[alive & (cur == idl)] = k
    E = lcm(*(int(o) for o in np.unique(ords)))
    out = _AbelianQuotient(H, dpos, lab, reps, size, E, idl)
    cache["abelian_quotient"] = out
    return out


def _extend_all(Hq: _AbelianQuotient, base: np.ndarray, limit: int | None = None) -> list[np.ndarray]:
    """All exponent labelings of the quotient extending a seeded partial character.

    base holds a mod-exponent value on the labels of a subgroup (and -1
    elsewhere).  Finite-abelian character theory makes every branch solvable;
    the count of leaves is the index of the seeded subgroup.
    """
    E = Hq.exponent
    out: list[np.ndarray] = []
    stack = [base]
    while stack:
        cur = stack.pop()
        missing = np.flatnonzero(cur < 0)
        if missing.size == 0:
            out.append(cur)
            if limit is not None and len(out) >= limit:
                return out
            continue
        q = int(missing[0])
        n, x = 1, q
        while cur[x] < 0:
            x = int(Hq.mul_label(x, q))
            n += 1
        t = int(cur[x])  # exponent already assigned to q^n
        g = gcd(n, E)
        if t % g:
            raise AssertionError("partial character admits no extension; seed is inconsistent")
        y0 = (t // g) * pow(n // g, -1, E // g) % (E // g)
        assigned = np.flatnonzero(cur >= 0)
        for j in range(g):
            y = (y0 + j * (E // g)) % E
            nxt = cur.copy()
            plab = q
            # assign the cosets q^s S for s = 1..n-1; q itself sits in q*S
            for s in range(1, n):
                rows = Hq.mul_label(plab, assigned)
                nxt[rows] = (s * y + cur[assigned]) % E
                plab = int(Hq.mul_label(plab, q))
            stack.append(nxt)
    return out


def _linear_exponents(psi: ClassFunction) -> tuple[np.ndarray, int]:
    """Per-position root-of-unity exponents of a linear character."""
    N = psi.n
    red = cyclo.reduction_matrix(N)
    lookup = {red[t].tobytes(): t for t in range(N)}
    exps_cls = np.empty(psi.classes.k, dtype=np.int64)
    for j in range(psi.classes.k):
        key = psi.vals[j].tobytes()
        if key not in lookup:
            raise ValueError("psi must be linear (root-of-unity valued)")
        exps_cls[j] = lookup[key]
    return exps_cls[psi.classes.class_id], N


def _rescale_exponents(t: np.ndarray, N: int, E: int) -> np.ndarray:
    num = t * E
    if np.any(num % N):
        raise AssertionError("character values do not embed in the abelianization exponent")
    return (num // N) % E


def _roots_agree(xe: np.ndarray, E: int, te: np.ndarray, N: int) -> bool:
    return bool(np.all((xe * N - te * E) % (N * E) == 0))


def _seed_base(Hq: _AbelianQuotient, labels: np.ndarray, exps: np.ndarray) -> np.ndarray:
    ulab, first_idx = np.unique(labels, return_index=True)
    per_label = exps[first_idx]
    spread = per_label[np.searchsorted(ulab, labels)]
    if np.any(spread != exps):
        raise AssertionError("character is not constant on abelianization fibers")
    base = np.full(Hq.size, -1, dtype=np.int64)
    base[ulab] = per_label
    if base[Hq.id_label] not in (-1, 0):
        raise AssertionError("identity must map to 1")
    base[Hq.id_label] = 0
    return base


def extends_to(psi: ClassFunction, H: GroupTable) -> tuple[bool, ClassFunction | None]:
    """Whether a linear character of K <= H extends to H, with a witness.

    Criterion: psi extends iff it is trivial on K cap [H, H].  The witness is
    built through the abelianization of H and verified to restrict to psi.
    """
    K = psi.classes.table
    if psi.degree != 1:
        raise ValueError("psi must be linear")
    kpos = _positions_in(K, H)
    exps_K, N = _linear_exponents(psi)
    Hq = _abelian_quotient(H)
    in_derived = np.zeros(H.n, dtype=bool)
    in_derived[Hq.derived_pos] = True
    if np.any((exps_K % N != 0) & in_derived[kpos]):
        return False, None
    E = Hq.exponent
    base = _seed_base(Hq, Hq.lab[kpos], _rescale_exponents(exps_K, N, E))
    ext = _extend_all(Hq, base, limit=1)[0]
    if not _roots_agree(ext[Hq.lab[kpos]], E, exps_K, N):
        raise AssertionError("constructed extension does not restrict to psi")
    ccH = chartab.conjugacy_classes_cached(H)
    return True, chartab.class_function_from_exponents(ccH, E, ext[Hq.lab[ccH.reps]])


def all_linear_characters(H: GroupTable) -> list[ClassFunction]:
    """Every linear character of H, through its abelianization."""
    Hq = _abelian_quotient(H)
    base = np.full(Hq.size, -1, dtype=np.int64)
    base[Hq.id_label] = 0
    exts = _extend_all(Hq, base)
    if len(exts) != Hq.size:
        raise AssertionError(f"found {len(exts)} linear characters, expected {Hq.size}")
    ccH = chartab.conjugacy_classes_cached(H)
    return [
        chartab.class_function_from_exponents(ccH, Hq.exponent, e[Hq.lab[ccH.reps]])
        for e in exts
    ]


# ------------------------------------------------------------------ the phi layer


def phi_set(psiA: PsiA, budget: int = grp.DEFAULT_BUDGET) -> list[ClassFunction]:
    """Irr(C_GL2(psi_A) | psi_A) as class functions on C_GL2(psi_A).

    Even r: the linear characters of the abelianization extending psi_A.
    Odd r: the full character table of C_GL2(psi_A) filtered by a nonzero
    (hence full) pairing with psi_A on M^ell.  Dimensions (1 for even r, q
    for odd r) and the fiber size are verified.
    """
    I = inertia(psiA)
    L = psiA.layers
    C = I.c_gl
    if C.n > budget:
        raise grp.BudgetError(f"|C_GL2(psi_A)| = {C.n} exceeds the budget {budget}")
    q, r = L.spec.q, L.spec.r
    ml_in_C = _positions_in(L.Ml, C)
    fiber = C.n // L.Ml.n
    if r % 2 == 0:
        Hq = _abelian_quotient(C)
        base = _seed_base(Hq, Hq.lab[ml_in_C], _rescale_exponents(psiA.exps_M, psiA.n, Hq.exponent))
        exts = _extend_all(Hq, base)
        if len(exts) != fiber:
            raise AssertionError(f"found {len(exts)} extensions of psi_A, expected [C:M^l] = {fiber}")
        ccC = chartab.conjugacy_classes_cached(C)
        out = []
        for e in exts:
            if not _roots_agree(e[Hq.lab[ml_in_C]], Hq.exponent, psiA.exps_M, psiA.n):
                raise AssertionError("extension does not restrict to psi_A")
            out.append(chartab.class_function_from_exponents(ccC, Hq.exponent, e[Hq.lab[ccC.reps]]))
        return out
    # odd r: cut the full table down to the psi_A fiber
    table = chartab.character_table_cached(C)
    mlC = grp.subgroup(C, ml_in_C, name="M^l")
    up_gl = mlC.pos_in_ancestor(L.gl)
    exps_at = psiA.exps_M[L.gl_to_Ml[up_gl]]
    ccm = chartab.conjugacy_classes_cached(mlC)
    psi_cf = chartab.class_function_from_exponents(ccm, psiA.n, exps_at[ccm.reps])
    out = []
    for phi in table:
        m = chartab.inner(chartab.restrict(phi, mlC), psi_cf)
        if m == 0:
            continue
        if phi.degree != q or m != q:
            raise AssertionError(
                f"odd-level fiber member has degree {phi.degree}, pairing {m}; expected q = {q}"
            )
        out.append(phi)
    if len(out) * q**2 != fiber:
        raise AssertionError(f"fiber has {len(out)} members, expected [C:M^l]/q^2 = {fiber // q**2}")
    return out


# ------------------------------------------------------------------ Mackey decomposition


def mackey_restriction(psiA: PsiA, phi: ClassFunction) -> list[tuple[RingElem, ClassFunction]]:
    """[(d, Ind_{C_SL2(psi_{A_d})} phi^d)] for d over D_A, with exactness checks.

    phi^d(x) = phi(diag(d,1)^-1 x diag(d,1)).  The sum of the summands is
    checked to equal Res_SL2 Ind_GL2(phi) exactly, the twisted domains are
    checked against independently computed stabilizers, and all summand
    dimensions agree.
    """
    I = inertia(psiA)
    L = psiA.layers
    C, gl, sl = I.c_gl, L.gl, L.sl
    if phi.classes.table is not C:
        raise ValueError("phi must be a class function on C_GL2(psi_A)")
    rho = chartab.induce(phi, gl)
    if chartab.inner(rho, rho) != 1:
        raise AssertionError("Ind(phi) is not irreducible; phi is outside the psi_A fiber")
    lhs = chartab.restrict(rho, sl)
    gl_to_C = _inverse_map(gl.n, C.parent_pos)
    out = []
    for d in I.dA_reps:
        td = gl.pos_of_matrix(Mat2(L.spec, d.code, 0, 0, 1))
        perm = gl.conj_perm(td)
        mask = np.zeros(gl.n, dtype=bool)
        mask[perm[C.parent_pos]] = True
        A_d = mat.conjugate_by_diag(psiA.A, d)
        if not np.array_equal(mask, _stabilizer_mask_gl(L, make_psiA(gl, A_d))):
            raise AssertionError("conjugated inertia group differs from the stabilizer of psi_{A_d}")
        c_sl_d = grp.subgroup(sl, mask[sl.parent_pos], name="C_SL2(psi_A_d)")
        cc_d = chartab.conjugacy_classes_cached(c_sl_d)
        reps_gl = sl.parent_pos[c_sl_d.parent_pos[cc_d.reps]]
        iperm = gl.conj_perm(int(gl.inv[td]))
        back_C = gl_to_C[iperm[reps_gl]]
        if np.any(back_C < 0):
            raise AssertionError("phi^d argument left C_GL2(psi_A)")
        phid = ClassFunction(cc_d, phi.n, phi.vals[phi.classes.class_id[back_C]].copy())
        ind = chartab.induce(phid, sl)
        expected = phi.degree * sl.n
        if expected % c_sl_d.n or ind.degree != expected // c_sl_d.n:
            raise AssertionError("summand dimension disagrees with dim(phi) |SL2| / |C_SL2(psi_{A_d})|")
        out.append((d, ind))
    total = out[0][1]
    for _, cf in out[1:]:
        total = total + cf
    if not total.same(lhs):
        raise AssertionError("Mackey sum does not equal the direct restriction")
    if len({cf.degree for _, cf in out}) != 1:
        raise AssertionError("summand dimensions are not all equal")
    return out
