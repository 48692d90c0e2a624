#!/usr/bin/env python3
"""Closed-form branching predictions far beyond enumerable group orders.

Everything printed here is level-50-scale arithmetic: guaranteed constituent
counts with the boundary-level caveat, the exact stable-range split over the
2-adic integers for every possible centralizer determinant size, the bound
windows in characteristic two, and the dimension lower bound computed from a
ring-level pair scan (no group is ever built).
"""

from fractions import Fraction

from branchlab import mat, predict, ring


def growth_table():
    print("guaranteed constituent count for the distinguished orbit, by level")
    print(f"{'r':>4} " + "".join(f"{k:>8}" for k in ("z2", "f2t", "f4t", "eis2")))
    for r in (2, 3, 4, 5, 8, 9, 16, 17, 32, 33, 50):
        row = []
        for kind in ("z2", "f2t", "f4t", "eis2"):
            spec = ring.make_ring(kind, r=r)
            star = "*" if predict.n_r_note(spec) else " "
            row.append(f"{predict.n_r(spec)}{star:>1}".rjust(8))
        print(f"{r:>4} " + "".join(row))
    print("   (* = boundary level l' = 2e; the count follows the square-root-of-1")
    print("      formula q^(l'/2), which brute force confirms at enumerable sizes)")
    print()


def stable_range_splits():
    spec = ring.make_ring("z2", r=50)
    units = 2**24  # unit count of the level-25 coefficient ring
    print("exact split over the 2-adic integers at r = 50 (stable range):")
    print(f"{'|det C(A)|':>12} {'|D_A|':>12} {'delta':>12}  constituents")
    for j in (0, 4, 12, 20, 23, 24):
        det_cent = 2**j
        p = predict.predict_branching(spec, "nonunit", det_cent=det_cent)
        assert p.delta_min == p.delta_max == p.dA == units // det_cent
        assert p.dims_equal
        print(f"{det_cent:>12,} {p.dA:>12,} {p.delta_min:>12,}  equal dimensions")
    p = predict.predict_branching(spec, "unit")
    print(f"{'(unit trace)':>12} {p.dA!s:>12} {p.delta_min:>12}  stays irreducible")
    print()


def char2_windows():
    print("characteristic-two windows (delta is only bounded, not pinned):")
    for r, det_cent in ((48, 1), (48, 2**10), (49, 1), (49, 2**10)):
        spec = ring.make_ring("f2t", r=r)
        p = predict.predict_branching(spec, "nonunit", det_cent=det_cent)
        cap = "4|D_A|" if r % 2 == 0 else "q^3|D_A|"
        print(f"  f2t r={r} |det C(A)|={det_cent:<9,} -> |D_A| = {p.dA:>9,}   "
              f"delta in [{p.delta_min:,}, {p.delta_max:,}]   (cap {cap})")
    for r, sq, label in ((49, None, "unit trace, odd level"),
                         (48, True, "unit square trace, even level"),
                         (48, False, "unit non-square trace, even level")):
        spec = ring.make_ring("f2t", r=r)
        p = predict.predict_branching(spec, "unit", trace_square=sq)
        win = f"[{p.delta_min}, {p.delta_max}]"
        print(f"  f2t r={r} {label:<34} -> delta in {win}")
    print()


def dimension_bounds():
    print("dimension lower bound for SL2 constituents over the nilpotent orbit")
    print("(characteristic two, odd level, from a ring-level centralizer scan):")
    for r in (3, 5, 7, 9, 11):
        spec = ring.make_ring("f2t", r=r)
        lp = ring.truncate(spec, spec.ell_prime)
        A = mat.mat_from_codes(lp, 0, 0, 1, 0)
        b = predict.min_dim_bound(spec, A)
        assert isinstance(b, Fraction) and b > 0
        print(f"  r={r:<3} every chi in Irr(SL2 | psi_[A]) has dim >= {b}")
    print()


def full_record():
    spec = ring.make_ring("z2", r=4)
    p = predict.predict_branching(spec, "nonunit", det_cent=1)
    print("one full prediction record (z2 r=4, nonunit trace, |det C(A)| = 1):")
    for key, val in p.to_json().items():
        print(f"  {key}: {val}")


if __name__ == "__main__":
    growth_table()
    stable_range_splits()
    char2_windows()
    dimension_bounds()
    full_record()
