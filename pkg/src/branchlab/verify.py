"""End-to-end branching verification and the command-line interface.

The pipeline enumerates GL2(o_r) and SL2(o_r), computes both character
tables exactly, locates the regular irreducibles (those whose restriction
to the level-ell congruence block is supported on cyclic matrices), and
decomposes each restriction to SL2.  Observed constituent counts and
dimensions are checked against the closed-form predictions, against the
Mackey-decomposition route at small levels, and against the dimension
lower bound for odd levels in characteristic two.  The outcome is a
versioned BranchReport (schema 1).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import chartab, clifford, cyclo, grp, mat, predict, ring
from .chartab import CharacterTable, ClassFunction
from .grp import GroupTable
from .mat import Mat2
from .ring import RingSpec

SCHEMA = 1
KINDS = ("z2", "f2t", "f4t", "eis2")


# ----------------------------------------------------- regular irreducibles


def _psi_exponent_table(L) -> np.ndarray:
    """T[A_code, m] = zeta-exponent of psi_A at the m-th member of M^ell.

    Rows range over all of M_2(o_l') — exactly the character group of the
    abelian M^ell — columns over member positions of M^ell.
    """
    lp, spec = L.spec_lp, L.spec
    acodes = np.arange(lp.size**4, dtype=np.int64)
    a, b, c, d = (ring._vlift(spec, lp, t)[:, None] for t in mat._vunpack(lp, acodes))
    b11, b12, b21, b22 = (t[None, :] for t in L.B_M)
    m, ad = ring._vmul, ring._vadd
    tr = ad(
        spec,
        ad(spec, m(spec, a, b11), m(spec, b, b21)),
        ad(spec, m(spec, c, b12), m(spec, d, b22)),
    )
    arg = ring._vmul(spec, np.int64(L.pi_ell_code), tr)
    return np.asarray(ring.psi_exponent(spec, arg), dtype=np.int64)


def find_regular(G: GroupTable, table: CharacterTable | None = None):
    """[(irreducible index, supporting A list)] over the regular irreducibles.

    The support of rho is {A over o_l' : <Res_{M^ell} rho, psi_A> != 0};
    rho is regular iff every supporting A is cyclic.  A float transform only
    proposes the support; acceptance is the exact identity
    sum_A m_A psi_A = Res_{M^ell} rho, which pins the m_A uniquely because
    distinct characters of the abelian M^ell are linearly independent.  For
    regular rho the support is verified to be a single conjugation orbit
    (every member has the same companion form, reached by an explicit
    conjugator) carrying one common multiplicity.
    """
    if table is None:
        table = chartab.character_table_cached(G)
    L = clifford._layers(G)
    if L.gl is not G:
        raise ValueError("find_regular needs the full GL2 table")
    lp = L.spec_lp
    Ml = L.Ml
    cache = clifford._cache(G)
    if "psi_table" not in cache:
        cache["psi_table"] = _psi_exponent_table(L)
    T = cache["psi_table"]
    n = ring.psi_order(L.spec)
    num_A = lp.size**4

    up = Ml.pos_in_ancestor(G)
    cls_m = table.classes.class_id[up]
    zs = np.exp(2j * np.pi * np.arange(table.tensor.shape[2]) / table.n)
    V = (table.tensor @ zs)[:, cls_m]  # [k, M] float values of rho on M^ell
    W = np.exp(-2j * np.pi * T / n)  # [A, M] conjugated psi values
    coef = V @ W.T / Ml.n
    mult = np.rint(coef.real).astype(np.int64)
    if np.max(np.abs(coef - mult)) > 0.25:
        raise AssertionError("float support proposal is ambiguous")

    entries = mat._vunpack(lp, np.arange(num_A, dtype=np.int64))
    cyc = mat.cyclic_mask(lp, entries)
    ccM = chartab.conjugacy_classes_cached(Ml)
    red_n = cyclo.reduction_matrix(n)
    exps_at_reps = T[:, ccM.reps] % n

    out = []
    for i in range(table.k):
        supp = np.flatnonzero(mult[i] > 0)
        vals = np.zeros((ccM.k, red_n.shape[1]), dtype=np.int64)
        for code in supp:
            vals += int(mult[i, code]) * red_n[exps_at_reps[code]]
        comb = ClassFunction(ccM, n, vals)
        if not comb.same(chartab.restrict(table.char(i), Ml)):
            raise AssertionError(f"support reconstruction failed for irreducible {i}")
        if not np.all(cyc[supp]):
            continue  # not regular
        if len(set(mult[i, supp].tolist())) != 1:
            raise AssertionError(f"orbit multiplicities differ for irreducible {i}")
        support = []
        labels = set()
        for code in supp:
            A = Mat2(lp, *(int(t[code]) for t in entries))
            labels.add(_orbit_triple(G, A))
            support.append(A)
        if len(labels) != 1:
            raise AssertionError(f"support of irreducible {i} spans several orbits: {labels}")
        out.append((i, support))
    return out


def _orbit_triple(G: GroupTable, A: Mat2) -> tuple[int, int, int]:
    """Companion triple (a, alpha, beta) codes labeling A's conjugation orbit.

    companion_form validates an explicit conjugator, so two matrices with
    the same triple really are conjugate.
    """
    cache = clifford._cache(G).setdefault("orbit_triple", {})
    if A.codes not in cache:
        cache[A.codes] = mat.companion_form(A).triple
    return cache[A.codes]


# ------------------------------------------------------------------ reports


@dataclass
class RhoRecord:
    """Branching outcome for one regular irreducible of GL2."""

    rho_id: int
    dim: int
    orbit: tuple[int, int, int]  # companion triple codes over o_l'
    orbit_text: str
    trace_class: str
    trace_square: bool | None
    dA: int
    delta: int
    constituent_dims: list
    multiplicities: list
    multiplicity_free: bool
    delta_min: int
    delta_max: int | None
    predicted_dim: int | None
    rules: list
    mackey_checked: bool
    passed: bool
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "rho_id": self.rho_id,
            "dim": self.dim,
            "orbit": list(self.orbit),
            "orbit_text": self.orbit_text,
            "trace_class": self.trace_class,
            "trace_square": self.trace_square,
            "dA": self.dA,
            "delta": self.delta,
            "constituent_dims": list(self.constituent_dims),
            "multiplicities": list(self.multiplicities),
            "multiplicity_free": self.multiplicity_free,
            "delta_min": self.delta_min,
            "delta_max": self.delta_max,
            "predicted_dim": self.predicted_dim,
            "rules": list(self.rules),
            "mackey_checked": self.mackey_checked,
            "passed": self.passed,
            "notes": list(self.notes),
        }


@dataclass
class BranchReport:
    kind: str
    q: int
    r: int
    gl_order: int
    sl_order: int
    num_irreducibles: int
    records: list
    summary: dict
    timing: dict
    passed: bool
    schema: int = SCHEMA

    def to_json(self) -> dict:
        return {
            "schema": self.schema,
            "kind": self.kind,
            "q": self.q,
            "r": self.r,
            "gl_order": self.gl_order,
            "sl_order": self.sl_order,
            "num_irreducibles": self.num_irreducibles,
            "records": [rec.to_json() for rec in self.records],
            "summary": self.summary,
            "timing": self.timing,
            "passed": self.passed,
        }

    def __repr__(self):
        return (
            f"<BranchReport {self.kind} r={self.r}: {len(self.records)} regular "
            f"irreducibles, max delta {self.summary['max_delta']}, "
            f"{'pass' if self.passed else 'FAIL'}>"
        )


def _trace_info(spec: RingSpec, A: Mat2) -> tuple[str, bool | None]:
    tr = mat.trace(A)
    unit = ring.is_unit(tr)
    square = None
    if spec.char_two and unit and spec.r % 2 == 0:
        squares = set(map(int, ring.square_unit_codes(A.spec)))
        square = int(tr.code) in squares
    return ("unit" if unit else "nonunit"), square


def _decompose_to(sl_tab: CharacterTable, res: ClassFunction):
    dec = chartab.decompose(res, sl_tab)
    dims = [int(sl_tab.degrees[j]) for j, _ in dec]
    mults = [m for _, m in dec]
    return dec, dims, mults


def verify_branching(
    spec: RingSpec,
    *,
    budget: int | None = None,
    seed: int = 0,
    jobs: int = 1,
    mackey: bool | None = None,
) -> BranchReport:
    """Restrict every regular irreducible of GL2(o_r) to SL2(o_r) and audit it.

    mackey=None runs the Mackey cross-check automatically for r <= 3; the
    direct route (exact decomposition against the SL2 character table) always
    runs.  Raises grp.BudgetError when the group exceeds the element budget
    and AssertionError on any internal consistency failure.
    """
    budget = grp.DEFAULT_BUDGET if budget is None else budget
    mackey_on = (spec.r <= 3) if mackey is None else mackey
    timing: dict = {}
    t_total = time.perf_counter()

    t = time.perf_counter()
    gl = grp.build_gl2(spec, budget=budget)
    L = clifford._layers(gl)
    sl = L.sl
    timing["build"] = time.perf_counter() - t

    t = time.perf_counter()
    gl_tab = chartab.character_table_cached(gl, seed)
    timing["chartab_gl"] = time.perf_counter() - t
    t = time.perf_counter()
    sl_tab = chartab.character_table_cached(sl, seed)
    timing["chartab_sl"] = time.perf_counter() - t

    t = time.perf_counter()
    regs = find_regular(gl, gl_tab)
    timing["find_regular"] = time.perf_counter() - t

    # decompositions are independent per irreducible; threads help a little
    t = time.perf_counter()
    restrictions = {i: chartab.restrict(gl_tab.char(i), sl) for i, _ in regs}
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futs = {i: pool.submit(_decompose_to, sl_tab, res) for i, res in restrictions.items()}
            decomps = {i: f.result() for i, f in futs.items()}
    else:
        decomps = {i: _decompose_to(sl_tab, res) for i, res in restrictions.items()}
    timing["decompose"] = time.perf_counter() - t

    by_orbit: dict = {}
    for i, supp in regs:
        by_orbit.setdefault(_orbit_triple(gl, supp[0]), []).append((i, supp))

    lp = L.spec_lp
    records = []
    min_dim_checks = []
    witness = None
    mackey_orbits = 0
    timing["mackey"] = 0.0

    for triple in sorted(by_orbit):
        a_code, alpha_code, beta_code = triple
        members = by_orbit[triple]
        a_el = ring.RingElem(lp, a_code)
        alpha_el = ring.RingElem(lp, alpha_code)
        beta_el = ring.RingElem(lp, beta_code)
        top = ring.mul(ring.inv(a_el), alpha_el)
        comp = Mat2(lp, 0, top.code, a_code, beta_code)
        orbit_text = (
            f"({ring.encode_elem(a_el)};{ring.encode_elem(alpha_el)};{ring.encode_elem(beta_el)})"
        )
        psiA = clifford.make_psiA(gl, comp)
        I = clifford.inertia(psiA)
        dA = len(I.dA_reps)
        det_cent = mat.centralizer_units(comp)[1]
        trace_class, trace_square = _trace_info(spec, comp)

        phis, phi_inds = None, None
        if mackey_on:
            t = time.perf_counter()
            phis = clifford.phi_set(psiA, budget=budget)
            phi_inds = [chartab.induce(phi, gl) for phi in phis]
            if len(phis) != len(members):
                raise AssertionError(
                    f"orbit {orbit_text}: {len(phis)} fiber members vs {len(members)} regular irreducibles"
                )
            mackey_orbits += 1
            timing["mackey"] += time.perf_counter() - t

        orbit_max_delta = 0
        for i, supp in sorted(members):
            rho = gl_tab.char(i)
            dim = int(gl_tab.degrees[i])
            dec, dims, mults = decomps[i]
            delta = len(dec)
            orbit_max_delta = max(orbit_max_delta, delta)
            mfree = all(m == 1 for m in mults)
            pred = predict.predict_branching(
                spec, trace_class, det_cent=det_cent, trace_square=trace_square, dim_rho=dim
            )
            notes = []
            ok = mfree
            if pred.dA is not None and pred.dA != dA:
                raise AssertionError(f"predicted |D_A| {pred.dA} != enumerated {dA}")
            if delta < pred.delta_min:
                ok = False
                notes.append(f"delta {delta} below predicted minimum {pred.delta_min}")
            if pred.delta_max is not None and delta > pred.delta_max:
                ok = False
                notes.append(f"delta {delta} above predicted maximum {pred.delta_max}")
            if pred.dims_equal and len(set(dims)) > 1:
                ok = False
                notes.append(f"dimensions {dims} not all equal")
            if pred.dims_equal and len(set(dims)) == 1 and dims[0] * delta != dim:
                ok = False
                notes.append("equal dimensions do not sum to dim(rho)")

            mchecked = False
            if mackey_on:
                t = time.perf_counter()
                matches = [k for k, ind in enumerate(phi_inds) if ind.same(rho)]
                if len(matches) != 1:
                    raise AssertionError(
                        f"irreducible {i} matches {len(matches)} fiber members, expected exactly 1"
                    )
                summands = clifford.mackey_restriction(psiA, phis[matches[0]])
                pieces = []
                for _, ind_d in summands:
                    pieces.extend(chartab.decompose(ind_d, sl_tab))
                acc: dict = {}
                for j, m in pieces:
                    acc[j] = acc.get(j, 0) + m
                if sorted(acc.items()) != sorted(dec):
                    raise AssertionError(
                        f"Mackey route and direct route decompose irreducible {i} differently"
                    )
                mchecked = True
                timing["mackey"] += time.perf_counter() - t

            records.append(
                RhoRecord(
                    rho_id=i,
                    dim=dim,
                    orbit=triple,
                    orbit_text=orbit_text,
                    trace_class=trace_class,
                    trace_square=trace_square,
                    dA=dA,
                    delta=delta,
                    constituent_dims=dims,
                    multiplicities=mults,
                    multiplicity_free=mfree,
                    delta_min=pred.delta_min,
                    delta_max=pred.delta_max,
                    predicted_dim=pred.constituent_dim,
                    rules=[tag for tag, applies, _ in pred.rules if applies],
                    mackey_checked=mchecked,
                    passed=ok,
                    notes=notes,
                )
            )

        # dimension lower bound for constituents over psi_[A] (char 2, odd r > 2)
        if spec.char_two and spec.r == 3 and trace_class == "nonunit":
            bound = predict.min_dim_bound(spec, comp)
            prof = predict.centralizer_profile(spec, comp)
            if prof["c_sl_psi"] != I.c_sl.n or prof["c_gl_psi"] != I.c_gl.n:
                raise AssertionError("ring-level centralizer sizes disagree with the stabilizer scan")
            fiber_dims = []
            for j in range(sl_tab.k):
                chi_res = chartab.restrict(sl_tab.char(j), L.Kl)
                if chartab.inner(chi_res, psiA.psi_K) != 0:
                    fiber_dims.append(int(sl_tab.degrees[j]))
            ok_bound = all(Fraction(d) >= bound for d in fiber_dims)
            min_dim_checks.append(
                {
                    "orbit": orbit_text,
                    "bound": str(bound),
                    "num_characters": len(fiber_dims),
                    "min_dim": min(fiber_dims) if fiber_dims else None,
                    "ok": ok_bound,
                }
            )

        if alpha_code == 0 and beta_code == 0:
            sqrt1 = ring.sqrt1_count(lp)
            nr = predict.n_r(spec)
            witness = {
                "orbit": orbit_text,
                "dA": dA,
                "sqrt1_count": sqrt1,
                "n_r": nr,
                "max_delta": orbit_max_delta,
                "ok": dA == sqrt1 == nr and orbit_max_delta >= nr,
            }

    if witness is None:
        raise AssertionError("the distinguished orbit (alpha = beta = 0) produced no regular irreducible")

    max_delta = max((rec.delta for rec in records), default=0)
    summary = {
        "num_regular": len(records),
        "num_orbits": len(by_orbit),
        "max_delta": max_delta,
        "all_multiplicity_free": all(rec.multiplicity_free for rec in records),
        "witness": witness,
        "min_dim_checks": min_dim_checks,
        "mackey_orbits": mackey_orbits,
    }
    timing["total"] = time.perf_counter() - t_total
    passed = (
        all(rec.passed for rec in records)
        and witness["ok"]
        and all(c["ok"] for c in min_dim_checks)
    )
    return BranchReport(
        kind=spec.short_name,
        q=spec.q,
        r=spec.r,
        gl_order=gl.n,
        sl_order=sl.n,
        num_irreducibles=gl_tab.k,
        records=records,
        summary=summary,
        timing={k: round(v, 6) for k, v in timing.items()},
        passed=passed,
    )


# ---------------------------------------------------------------- formatting


def _fmt_cyclo(x) -> str:
    vec = cyclo.canonical(x)
    if not vec.any():
        return "0"
    n = x.n
    parts = []
    for k, c in enumerate(map(int, vec)):
        if c == 0:
            continue
        if k == 0:
            parts.append(str(c))
            continue
        base = f"z{n}" if k == 1 else f"z{n}^{k}"
        if c == 1:
            parts.append(base)
        elif c == -1:
            parts.append(f"-{base}")
        else:
            parts.append(f"{c}{base}")
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


def report_csv(report: BranchReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(
        [
            "rho_id", "dim", "orbit", "trace_class", "trace_square", "dA",
            "delta", "constituent_dims", "multiplicity_free",
            "delta_min", "delta_max", "mackey_checked", "passed",
        ]
    )
    for rec in report.records:
        w.writerow(
            [
                rec.rho_id, rec.dim, rec.orbit_text, rec.trace_class,
                rec.trace_square, rec.dA, rec.delta,
                "+".join(map(str, rec.constituent_dims)), rec.multiplicity_free,
                rec.delta_min, rec.delta_max if rec.delta_max is not None else "",
                rec.mackey_checked, rec.passed,
            ]
        )
    return buf.getvalue()


def chartab_json(G: GroupTable, table: CharacterTable) -> dict:
    cc = table.classes
    return {
        "group": G.name,
        "kind": G.spec.short_name,
        "r": G.spec.r,
        "order": G.n,
        "num_classes": cc.k,
        "root_order": table.n,
        "degrees": [int(d) for d in table.degrees],
        "classes": [
            {
                "rep": mat.encode_mat(G.matrix(int(cc.reps[j]))),
                "size": int(cc.sizes[j]),
                "element_order": int(G.element_orders[int(cc.reps[j])]),
            }
            for j in range(cc.k)
        ],
        "irreducibles": [
            {
                "degree": int(table.degrees[i]),
                "values": [_fmt_cyclo(table.char(i).value(j)) for j in range(cc.k)],
            }
            for i in range(table.k)
        ],
    }


def chartab_csv(G: GroupTable, table: CharacterTable) -> str:
    cc = table.classes
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["irr", "degree"] + [mat.encode_mat(G.matrix(int(p))) for p in cc.reps])
    w.writerow(["class_size", ""] + [int(s) for s in cc.sizes])
    for i in range(table.k):
        chi = table.char(i)
        w.writerow(
            [f"chi_{i}", int(table.degrees[i])] + [_fmt_cyclo(chi.value(j)) for j in range(cc.k)]
        )
    return buf.getvalue()


# ----------------------------------------------------------------------- CLI


def _add_common(p: argparse.ArgumentParser, need_ring=True):
    p.add_argument("--kind", choices=KINDS, required=need_ring, help="ring family")
    p.add_argument("--q", type=int, default=None, help="residue field size (fixed by the alias)")
    p.add_argument("--r", type=int, required=need_ring, help="quotient level")
    p.add_argument("--budget", type=int, default=None, help="max group order to enumerate")
    p.add_argument("--seed", type=int, default=0, help="seed for the character-table splitting order")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for per-irreducible work")
    p.add_argument("--out", default=None, help="write output to this path instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def _budget_of(args) -> int:
    env = os.environ.get("BRANCHLAB_BUDGET")
    if env is not None:
        return int(env)  # the environment overrides --budget
    if args.budget is not None:
        return args.budget
    return grp.DEFAULT_BUDGET


def _ring_of(args) -> RingSpec:
    return ring.make_ring(args.kind, q=args.q, r=args.r)


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_ring(args) -> int:
    if args.action != "info":
        raise ValueError(f"unknown ring action {args.action!r}")
    spec = _ring_of(args)
    info = {
        "kind": spec.short_name,
        "family": spec.kind,
        "q": spec.q,
        "r": spec.r,
        "size": spec.size,
        "ell": spec.ell,
        "ell_prime": spec.ell_prime,
        "ramification": spec.e,
        "char_two": spec.char_two,
        "psi_order": ring.psi_order(spec),
        "unit_count": ring.unit_count(spec),
    }
    try:
        info["sqrt1_count"] = ring.sqrt1_count(spec)
    except ValueError:
        info["sqrt1_count"] = None  # too large to enumerate, no closed form here
    if spec.r >= 2:
        info["n_r"] = predict.n_r(spec)
        info["n_r_note"] = predict.n_r_note(spec)
        info["gl2_order"] = grp.gl2_order(spec)
        info["sl2_order"] = grp.sl2_order(spec)
    _emit(args, json.dumps(info, indent=2))
    return 0


def _cmd_predict(args) -> int:
    spec = _ring_of(args)
    if args.trace_class:
        pred = predict.predict_branching(
            spec, args.trace_class, det_cent=args.det_cent
        ).to_json()
    else:
        pred = {
            tc: predict.predict_branching(
                spec, tc, det_cent=args.det_cent if tc == "nonunit" else None
            ).to_json()
            for tc in ("unit", "nonunit")
        }
    _emit(args, json.dumps(pred, indent=2))
    return 0


def _cmd_verify(args) -> int:
    spec = _ring_of(args)
    report = verify_branching(
        spec, budget=_budget_of(args), seed=args.seed, jobs=args.jobs
    )
    if args.format == "csv":
        _emit(args, report_csv(report))
    else:
        _emit(args, json.dumps(report.to_json(), indent=2))
    return 0 if report.passed else 1


def _cmd_chartab(args) -> int:
    spec = _ring_of(args)
    budget = _budget_of(args)
    if args.group == "sl2":
        G = grp.build_sl2(spec, budget=budget)
    else:
        G = grp.build_gl2(spec, budget=budget)
    table = chartab.character_table_cached(G, args.seed)
    if args.format == "csv":
        _emit(args, chartab_csv(G, table))
    else:
        _emit(args, json.dumps(chartab_json(G, table), indent=2))
    return 0


def _cmd_selftest(args) -> int:
    budget = _budget_of(args)
    failures = 0

    def check(label, fn):
        nonlocal failures
        t = time.perf_counter()
        try:
            fn()
            print(f"ok   {label} ({time.perf_counter() - t:.2f}s)")
        except Exception as exc:  # noqa: BLE001 - report and keep going
            failures += 1
            print(f"FAIL {label}: {exc}")

    def _orders():
        for kind, want in (("z2", (96, 1536, 24576)), ("f2t", (96, 1536, 24576))):
            for rr, w in zip((2, 3, 4), want):
                spec = ring.make_ring(kind, r=rr)
                assert grp.gl2_order(spec) == w
                assert grp.sl2_order(spec) == w // ring.unit_count(spec)

    def _orth():
        spec = ring.make_ring("z2", r=2)
        G = grp.build_gl2(spec, budget=budget)
        table = chartab.character_table_cached(G)
        chartab.verify_orthogonality_exact(table)

    def _nr():
        for kind, lim in (("z2", 12), ("f2t", 12), ("f4t", 8), ("eis2", 8)):
            for lp in range(1, lim + 1):
                spec = ring.make_ring(kind, r=2 * lp)
                assert predict.n_r(spec) == ring.sqrt1_count(ring.truncate(spec, lp))

    def _verify(kind):
        report = verify_branching(ring.make_ring(kind, r=2), budget=budget)
        assert report.passed, "branch report failed"

    check("group orders r=2..4", _orders)
    check("exact orthogonality GL2, r=2", _orth)
    check("square-root count identity", _nr)
    check("branching z2 r=2", lambda: _verify("z2"))
    check("branching f2t r=2", lambda: _verify("f2t"))
    return 1 if failures else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="branchlab",
        description="Branching of regular representations from GL2 to SL2 over finite chain rings.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("ring", help="ring-level information")
    p.add_argument("action", choices=("info",))
    _add_common(p)
    p.set_defaults(func=_cmd_ring)

    p = sub.add_parser("predict", help="closed-form branching prediction")
    _add_common(p)
    p.add_argument("--trace-class", choices=("unit", "nonunit"), default=None)
    p.add_argument("--det-cent", type=int, default=None, help="|det C(A)| over the level-l' ring")
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("verify", help="brute-force branching verification")
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("chartab", help="exact character table")
    _add_common(p)
    p.add_argument("--group", choices=("gl2", "sl2"), default="gl2")
    p.set_defaults(func=_cmd_chartab)

    p = sub.add_parser("selftest", help="small end-to-end battery")
    _add_common(p, need_ring=False)
    p.set_defaults(func=_cmd_selftest)

    return parser


def cli_main(argv=None) -> int:
    """Entry point; returns the exit code (0 pass, 1 failure, 2 usage/budget)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except grp.BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
