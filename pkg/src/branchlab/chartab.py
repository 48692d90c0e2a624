"""Exact character tables by the class-algebra eigenvector method.

The central characters of a finite group are the common eigenvectors of its
class-multiplication matrices.  We find them modulo a prime p = 1 (mod
exponent), p > 2*sqrt(|G|), by iteratively splitting eigenspaces of seeded
random combinations of class matrices (collisions of eigenvalues mod p are
expected and handled, not assumed away), recover the degrees from the
orthogonality relations, and lift every value to an exact integer combination
of roots of unity through a discrete Fourier transform over the power map.

Class functions are stored as integer coefficient vectors in the canonical
power basis of Q(zeta_n), so equality, inner products, induction and
restriction are all exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt, lcm

import numpy as np
import sympy

from . import cyclo
from .cyclo import CycloElem
from .grp import ConjClasses, GroupTable

# ------------------------------------------------------------- mod-p linalgebra


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime p = 1 (mod exponent) with p > 2*sqrt(order)."""
    bound = 2 * isqrt(order) + 1
    p = exponent + 1
    while p <= bound or not sympy.isprime(p):
        p += exponent
    return p


def _rref_mod(A: np.ndarray, p: int):
    """Row-reduce a copy of A mod p; returns (R, pivot_columns)."""
    R = A.copy() % p
    n, m = R.shape
    pivots = []
    row = 0
    for col in range(m):
        if row == n:
            break
        nz = np.flatnonzero(R[row:, col])
        if len(nz) == 0:
            continue
        i = row + int(nz[0])
        if i != row:
            R[[row, i]] = R[[i, row]]
        R[row] = (R[row] * pow(int(R[row, col]), p - 2, p)) % p
        other = np.flatnonzero(R[:, col])
        other = other[other != row]
        if len(other):
            R[other] = (R[other] - np.outer(R[other, col], R[row])) % p
        pivots.append(col)
        row += 1
    return R, pivots


def _kernel_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning the right kernel of A mod p."""
    n, m = A.shape
    R, pivots = _rref_mod(A, p)
    free = [c for c in range(m) if c not in pivots]
    basis = np.zeros((m, len(free)), dtype=np.int64)
    for t, c in enumerate(free):
        basis[c, t] = 1
        for row, pc in enumerate(pivots):
            basis[pc, t] = (-R[row, c]) % p
    return basis


def _restriction_mod(B: np.ndarray, MB: np.ndarray, p: int) -> np.ndarray:
    """T with B @ T = MB for full-column-rank B (all mod p)."""
    d = B.shape[1]
    R, pivots = _rref_mod(np.hstack([B, MB]), p)
    if pivots[:d] != list(range(d)):
        raise AssertionError("subspace basis lost rank")
    return R[:d, d:]


def _hessenberg_mod(A: np.ndarray, p: int) -> np.ndarray:
    H = A.copy() % p
    n = len(H)
    for j in range(n - 2):
        nz = np.flatnonzero(H[j + 1 :, j])
        if len(nz) == 0:
            continue
        i = j + 1 + int(nz[0])
        if i != j + 1:
            H[[j + 1, i]] = H[[i, j + 1]]
            H[:, [j + 1, i]] = H[:, [i, j + 1]]
        inv = pow(int(H[j + 1, j]), p - 2, p)
        mults = (H[j + 2 :, j] * inv) % p
        H[j + 2 :] = (H[j + 2 :] - mults[:, None] * H[j + 1]) % p
        H[:, j + 1] = (H[:, j + 1] + H[:, j + 2 :] @ mults) % p
    return H


def _charpoly_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Coefficients of det(xI - A) mod p, constant term first."""
    H = _hessenberg_mod(A, p)
    n = len(H)
    polys = [np.array([1], dtype=np.int64)]  # c_0 = 1
    for m in range(1, n + 1):
        c = np.zeros(m + 1, dtype=np.int64)
        prev = polys[m - 1]
        c[1 : m + 1] += prev
        c[:m] -= (int(H[m - 1, m - 1]) * prev) % p
        prod = 1
        for i in range(m - 2, -1, -1):
            prod = (prod * int(H[i + 1, i])) % p
            if prod == 0:
                break
            coef = (int(H[i, m - 1]) * prod) % p
            if coef:
                c[: i + 1] -= (coef * polys[i]) % p
        polys.append(c % p)
    return polys[n]


def _poly_roots_mod(coeffs: np.ndarray, p: int) -> np.ndarray:
    """All roots in F_p by vectorized Horner evaluation."""
    xs = np.arange(p, dtype=np.int64)
    y = np.zeros(p, dtype=np.int64)
    for c in coeffs[::-1]:
        y = (y * xs + int(c)) % p
    return xs[y == 0]


def _sqrt_mod(a: int, p: int) -> int:
    r = sympy.ntheory.sqrt_mod(a, p)
    if r is None:
        raise AssertionError("degree recovery hit a non-residue")
    return int(r)


# ------------------------------------------------------------- class functions


@dataclass(frozen=True)
class ClassFunction:
    """Exact class function: canonical coefficient row per conjugacy class."""

    classes: ConjClasses
    n: int
    vals: np.ndarray  # [k, euler_phi(n)] int64, read-only

    def __post_init__(self):
        self.vals.setflags(write=False)

    def value(self, j: int) -> CycloElem:
        return cyclo.from_canonical(self.n, self.vals[j])

    def value_at_pos(self, pos: int) -> CycloElem:
        return self.value(int(self.classes.class_id[pos]))

    @property
    def degree(self) -> int:
        j0 = int(self.classes.class_id[self.classes.table.identity])
        return cyclo.to_integer(self.value(j0))

    def with_order(self, m: int) -> "ClassFunction":
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError("new order must be a multiple")
        return ClassFunction(self.classes, m, self.vals @ cyclo.embed_matrix(self.n, m))

    def conj(self) -> "ClassFunction":
        return ClassFunction(self.classes, self.n, self.vals @ cyclo.conj_matrix(self.n))

    def __add__(self, other):
        f, g = _align(self, other)
        return ClassFunction(f.classes, f.n, f.vals + g.vals)

    def __sub__(self, other):
        f, g = _align(self, other)
        return ClassFunction(f.classes, f.n, f.vals - g.vals)

    def scale(self, m: int) -> "ClassFunction":
        return ClassFunction(self.classes, self.n, m * self.vals)

    def same(self, other) -> bool:
        f, g = _align(self, other)
        return np.array_equal(f.vals, g.vals)

    def float_values(self) -> np.ndarray:
        zs = np.exp(2j * np.pi * np.arange(self.vals.shape[1]) / self.n)
        return self.vals @ zs

    def __repr__(self):
        return f"<class function on {self.classes.table.name}, order {self.n}, deg {self.degree}>"


def _align(f: ClassFunction, g: ClassFunction):
    if f.classes is not g.classes:
        raise ValueError("class functions live on different partitions")
    m = lcm(f.n, g.n)
    return f.with_order(m), g.with_order(m)


def class_function_from_exponents(classes: ConjClasses, n: int, exps) -> ClassFunction:
    """Linear character from per-class exponents: class j maps to zeta_n^exps[j]."""
    red = cyclo.reduction_matrix(n)
    vals = red[np.asarray(exps, dtype=np.int64) % n]
    return ClassFunction(classes, n, vals.astype(np.int64))


def trivial_character(classes: ConjClasses) -> ClassFunction:
    return class_function_from_exponents(classes, 1, np.zeros(classes.k, dtype=np.int64))


def regular_character(classes: ConjClasses) -> ClassFunction:
    vals = np.zeros((classes.k, 1), dtype=np.int64)
    j0 = int(classes.class_id[classes.table.identity])
    vals[j0, 0] = classes.table.n
    return ClassFunction(classes, 1, vals)


# ------------------------------------------------------------- inner products


def inner(f: ClassFunction, g: ClassFunction) -> int:
    """<f, g> = |G|^-1 sum |c_j| f(g_j) conj(g(g_j)), exactly."""
    f, g = _align(f, g)
    S = cyclo.product_tensor(f.n)
    gc = g.vals @ cyclo.conj_matrix(g.n)
    W = np.einsum("j,ja,jb->ab", f.classes.sizes, f.vals, gc)
    tot = np.einsum("ab,abt->t", W, S)
    order = f.classes.table.n
    if np.any(tot % order):
        raise cyclo.NotRational(f"inner product not integral: {tot} / {order}")
    return cyclo.to_integer(cyclo.from_canonical(f.n, tot // order))


# ------------------------------------------------------------- character tables


@dataclass(frozen=True)
class CharacterTable:
    classes: ConjClasses
    n: int  # root order = group exponent
    tensor: np.ndarray  # [num_irr, k, euler_phi(n)] canonical int64
    degrees: np.ndarray

    @property
    def k(self) -> int:
        return len(self.degrees)

    def char(self, i: int) -> ClassFunction:
        return ClassFunction(self.classes, self.n, self.tensor[i])

    def __iter__(self):
        return (self.char(i) for i in range(self.k))

    def __repr__(self):
        degs = sorted(set(map(int, self.degrees)))
        return f"<character table of {self.classes.table.name}: {self.k} irreducibles, degrees {degs}>"


def _power_class_matrix(cc: ConjClasses, n_max: int) -> np.ndarray:
    """P[s, j] = class index of rep_j^s for s in [0, n_max]."""
    G = cc.table
    P = np.empty((n_max + 1, cc.k), dtype=np.int64)
    cur = np.full(cc.k, G.identity, dtype=np.int64)
    for s in range(n_max + 1):
        P[s] = cc.class_id[cur]
        if s < n_max:
            cur = G.mul(cur, cc.reps)
    return P


def _class_matrix_combo(G: GroupTable, cc: ConjClasses, theta: np.ndarray, p: int) -> np.ndarray:
    """M with M[j, col] = sum_i theta_i #{x in c_i : x^-1 g_col in c_j}, mod p."""
    k = cc.k
    th_elem = theta[cc.class_id].astype(np.float64)
    M = np.empty((k, k), dtype=np.int64)
    for col in range(k):
        y = G.mul(G.inv, np.int64(cc.reps[col]))
        M[:, col] = np.bincount(cc.class_id[y], weights=th_elem, minlength=k).astype(np.int64) % p
    return M


def _central_characters(G: GroupTable, cc: ConjClasses, p: int, seed: int) -> np.ndarray:
    """All k central-character vectors mod p, rows normalized at the identity."""
    k = cc.k
    rng = np.random.default_rng(seed)
    subspaces = [np.eye(k, dtype=np.int64)]
    rounds = 0
    while any(S.shape[1] > 1 for S in subspaces):
        if rounds >= 24:
            raise AssertionError("eigenspace splitting failed to converge")
        theta = rng.integers(1, p, size=k, dtype=np.int64)
        M = _class_matrix_combo(G, cc, theta, p)
        nxt = []
        for S in subspaces:
            if S.shape[1] == 1:
                nxt.append(S)
                continue
            T = _restriction_mod(S, (M @ S) % p, p)
            roots = _poly_roots_mod(_charpoly_mod(T, p), p)
            found = 0
            for lam in roots:
                Tl = (T - int(lam) * np.eye(len(T), dtype=np.int64)) % p
                Kb = _kernel_mod(Tl, p)
                if Kb.shape[1]:
                    nxt.append((S @ Kb) % p)
                    found += Kb.shape[1]
            if found != S.shape[1]:
                raise AssertionError("eigenspace split lost dimensions")
        subspaces = nxt
        rounds += 1
    vecs = np.hstack(subspaces) % p  # columns are eigenvectors
    j0 = int(cc.class_id[G.identity])
    omega = np.empty((k, k), dtype=np.int64)
    for i in range(k):
        v = vecs[:, i]
        if v[j0] == 0:
            raise AssertionError("eigenvector vanishes at the identity class")
        omega[i] = (v * pow(int(v[j0]), p - 2, p)) % p
    return omega


def _degrees_mod(cc: ConjClasses, omega: np.ndarray, p: int) -> np.ndarray:
    order = cc.table.n
    inv_sizes = np.array([pow(int(s), p - 2, p) for s in cc.sizes], dtype=np.int64)
    jstar = cc.inverse_class
    degs = np.empty(cc.k, dtype=np.int64)
    for i in range(cc.k):
        s = int(np.sum(omega[i] * omega[i][jstar] % p * inv_sizes % p) % p)
        if s == 0:
            raise AssertionError("norm of central character vanished")
        d2 = (order % p) * pow(s, p - 2, p) % p
        d = _sqrt_mod(d2, p)
        degs[i] = min(d, p - d)
    if int(np.sum(degs.astype(object) ** 2)) != order:
        raise AssertionError("degree recovery failed the sum-of-squares identity")
    return degs


def dixon_table(G: GroupTable, seed: int = 0, classes: ConjClasses | None = None) -> CharacterTable:
    """Full exact character table of an enumerated group."""
    cc = classes if classes is not None else conjugacy_classes_cached(G)
    e = G.exponent
    p = dixon_prime(G.n, e)
    omega = _central_characters(G, cc, p, seed)
    degs = _degrees_mod(cc, omega, p)
    inv_sizes = np.array([pow(int(s), p - 2, p) for s in cc.sizes], dtype=np.int64)
    chi_p = (degs[:, None] * omega % p) * inv_sizes[None, :] % p

    z = pow(sympy.primitive_root(p), (p - 1) // e, p)
    orders = G.element_orders[cc.reps]
    n_max = int(orders.max())
    P = _power_class_matrix(cc, n_max)
    red = cyclo.reduction_matrix(e)
    phi_e = red.shape[1]
    tensor = np.zeros((cc.k, cc.k, phi_e), dtype=np.int64)
    for j in range(cc.k):
        nj = int(orders[j])
        zn = pow(int(z), e // nj, p)
        zpow = np.ones(nj, dtype=np.int64)
        for t in range(1, nj):
            zpow[t] = zpow[t - 1] * zn % p
        # D[s, m] = zn^(-s m); columns of chi over the power classes reps^s
        sm = np.outer(np.arange(nj), np.arange(nj))
        D = zpow[(-sm) % nj]
        ninv = pow(nj, p - 2, p)
        block = chi_p[:, P[:nj, j]]  # [k_irr, nj]
        am = (block @ D) % p * ninv % p
        if np.any(am > degs[:, None]):
            raise AssertionError("eigenvalue multiplicities exceed the degree")
        if not np.array_equal(am.sum(axis=1), degs):
            raise AssertionError("eigenvalue multiplicities do not sum to the degree")
        tensor[:, j, :] = am @ red[(np.arange(nj) * (e // nj)) % e]
    # canonical row order: by degree, then lexicographically by coefficients
    idx = sorted(range(cc.k), key=lambda i: (int(degs[i]), tensor[i].tobytes()))
    table = CharacterTable(cc, e, tensor[idx], degs[idx])
    _verify_identity_column(table)
    return table


def conjugacy_classes_cached(G: GroupTable) -> ConjClasses:
    if not hasattr(G, "cache"):
        G.cache = {}
    if "classes" not in G.cache:
        G.cache["classes"] = ConjClasses(G)
    return G.cache["classes"]


def character_table_cached(G: GroupTable, seed: int = 0) -> CharacterTable:
    if not hasattr(G, "cache"):
        G.cache = {}
    key = ("chartab", seed)
    if key not in G.cache:
        G.cache[key] = dixon_table(G, seed=seed)
    return G.cache[key]


def _verify_identity_column(table: CharacterTable):
    j0 = int(table.classes.class_id[table.classes.table.identity])
    e0 = cyclo.reduction_matrix(table.n)[0]
    for i in range(table.k):
        if not np.array_equal(table.tensor[i, j0], int(table.degrees[i]) * e0):
            raise AssertionError("identity-class value disagrees with the degree")


# ------------------------------------------------------------- orthogonality


def orthogonality_certificate(table: CharacterTable) -> dict:
    """Exact proof that the table rows are orthonormal.

    The Gram entries G_ij = sum_c |c| chi_i(c) conj(chi_j(c)) - |G| delta_ij
    are canonical vectors with an explicitly bounded coefficient size C.  Each
    is evaluated at all phi(n) primitive n-th roots modulo two primes = 1 (mod
    n) whose product exceeds 2C.  A square Vandermonde system on distinct
    nodes is invertible mod p, so all-zero evaluations force the zero vector;
    zero mod both primes plus the bound forces exact zero.
    """
    cc = table.classes
    n = table.n
    phi_n = table.tensor.shape[2]
    order = cc.table.n
    # coefficient bound: |sum_c |c| v w S| <= sum_c |c| * max|v| * max|w| * phi * max|S|
    S = cyclo.product_tensor(n)
    vmax = int(np.abs(table.tensor).max())
    C = int(cc.sizes.sum()) * vmax * vmax * phi_n * int(np.abs(S).max()) + order
    primes = []
    p = n + 1
    prod = 1
    while prod <= 2 * C:
        while not sympy.isprime(p):
            p += n
        primes.append(p)
        prod *= p
        p += n
    prim_exps = [m for m in range(1, n + 1) if np.gcd(m, n) == 1]
    conj_tensor = table.tensor @ cyclo.conj_matrix(n)
    w = cc.sizes.astype(np.int64)
    row_target = order * np.eye(table.k, dtype=np.int64)
    col_target = np.diag(order // cc.sizes)
    for p in primes:
        z = pow(sympy.primitive_root(p), (p - 1) // n, p)
        for m in prim_exps:
            zm = pow(int(z), m, p)
            pw = np.array([pow(zm, t, p) for t in range(phi_n)], dtype=np.int64)
            Tz = (table.tensor @ pw) % p  # [k_irr, k_class]
            Tzc = (conj_tensor @ pw) % p
            gram = (Tz * w[None, :]) @ Tzc.T % p
            if np.any((gram - row_target) % p):
                raise AssertionError(f"row orthogonality fails mod {p} at primitive root #{m}")
            gram_c = Tz.T @ Tzc % p
            if np.any((gram_c - col_target) % p):
                raise AssertionError(f"column orthogonality fails mod {p} at primitive root #{m}")
    return {"primes": primes, "bound": C, "primitive_roots_checked": len(prim_exps), "ok": True}


def verify_orthogonality_exact(table: CharacterTable, columns: bool = True):
    """Direct exact pairwise inner products; quadratic in k, for small tables."""
    for i in range(table.k):
        fi = table.char(i)
        for j in range(i, table.k):
            got = inner(fi, table.char(j))
            if got != (1 if i == j else 0):
                raise AssertionError(f"<chi_{i}, chi_{j}> = {got}")
    if not columns:
        return
    cc = table.classes
    S = cyclo.product_tensor(table.n)
    Tc = table.tensor @ cyclo.conj_matrix(table.n)
    e0 = cyclo.reduction_matrix(table.n)[0]
    order = cc.table.n
    gram = np.einsum("ica,idb,abt->cdt", table.tensor, Tc, S, optimize=True)
    target = np.einsum("cd,t->cdt", np.diag(order // cc.sizes), e0)
    if not np.array_equal(gram, target):
        raise AssertionError("column orthogonality fails")


# ------------------------------------------------------------- induce/restrict


def _fusion(H: GroupTable, G: GroupTable, ccH: ConjClasses, ccG: ConjClasses) -> np.ndarray:
    up = H.pos_in_ancestor(G)
    return ccG.class_id[up[ccH.reps]]


def restrict(f: ClassFunction, H: GroupTable) -> ClassFunction:
    """Restriction along the parent chain from f's group down to H."""
    G = f.classes.table
    ccH = conjugacy_classes_cached(H)
    fus = _fusion(H, G, ccH, f.classes)
    return ClassFunction(ccH, f.n, f.vals[fus].copy())


def induce(f: ClassFunction, G: GroupTable) -> ClassFunction:
    """Induced class function, exactly; dim scales by the index."""
    H = f.classes.table
    ccG = conjugacy_classes_cached(G)
    fus = _fusion(H, G, f.classes, ccG)
    phi_n = f.vals.shape[1]
    acc = np.zeros((ccG.k, phi_n), dtype=np.int64)
    weighted = f.classes.sizes[:, None] * f.vals
    np.add.at(acc, fus, weighted)
    num = G.n * acc
    den = H.n * ccG.sizes[:, None]
    if np.any(num % den):
        raise AssertionError("induced values are not integral over the fusion data")
    return ClassFunction(ccG, f.n, num // den)


def decompose(f: ClassFunction, table: CharacterTable) -> list[tuple[int, int]]:
    """Nonzero multiplicities (index, m_i), with exact reconstruction check."""
    out = []
    recon = None
    for i in range(table.k):
        m = inner(f, table.char(i))
        if m < 0:
            raise AssertionError(f"negative multiplicity {m} against irreducible {i}")
        if m:
            out.append((i, m))
            piece = table.char(i).scale(m)
            recon = piece if recon is None else recon + piece
    if recon is None:
        recon = trivial_character(table.classes).scale(0)
    if not recon.same(f):
        raise AssertionError("decomposition does not reconstruct the class function")
    return out
