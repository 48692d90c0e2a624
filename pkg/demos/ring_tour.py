#!/usr/bin/env python3
"""Tour of the four coefficient-ring families.

Prints, for each family at a few levels: size, the split r = ell + ell',
unit counts, square roots of 1, and the additive character's value order.
Then shows element encodings and arithmetic in each family.
"""

from branchlab import predict, ring

FAMILIES = [
    ("z2", "integers mod 2^r"),
    ("f2t", "F_2[t] mod t^r"),
    ("f4t", "F_4[t] mod t^r"),
    ("eis2", "Z_2[pi], pi^2 = 2, mod pi^r"),
]


def overview():
    print(f"{'ring':>10} {'q':>2} {'r':>2} {'size':>6} {'ell':>3} {'ell_prime':>9} "
          f"{'units':>6} {'sqrt1':>5} {'psi order':>9}")
    for kind, _ in FAMILIES:
        for r in (2, 3, 4, 5):
            spec = ring.make_ring(kind, r=r)
            print(f"{spec.short_name:>10} {spec.q:>2} {r:>2} {spec.size:>6} "
                  f"{spec.ell:>3} {spec.ell_prime:>9} {ring.unit_count(spec):>6} "
                  f"{ring.sqrt1_count(spec):>5} {ring.psi_order(spec):>9}")
    print()


def arithmetic_samples():
    for kind, desc in FAMILIES:
        spec = ring.make_ring(kind, r=4)
        pi = ring.uniformizer(spec)
        x = ring.from_integer(spec, 3)
        y = ring.add(x, pi)
        print(f"{spec.short_name}: {desc}")
        print(f"  pi = {ring.encode_elem(pi)}  (val {ring.val(pi)})")
        print(f"  x = 3 -> {ring.encode_elem(x)},  x + pi = {ring.encode_elem(y)},  "
              f"x * (x + pi) = {ring.encode_elem(ring.mul(x, y))}")
        u = ring.units(spec)[1]
        print(f"  a unit: {ring.encode_elem(u)}, inverse {ring.encode_elem(ring.inv(u))}")
        print()


def guaranteed_counts():
    print("guaranteed constituent count for the nilpotent-trace orbit vs "
          "brute-force #{x : x^2 = 1} over o_ell':")
    for kind, _ in FAMILIES:
        row = []
        for r in (2, 4, 6, 8, 10):
            spec = ring.make_ring(kind, r=r)
            n = predict.n_r(spec)
            brute = ring.sqrt1_count(ring.truncate(spec, spec.ell_prime))
            flag = "*" if predict.n_r_note(spec) else ""
            assert n == brute
            row.append(f"r={r}: {n}{flag}")
        print(f"  {kind:>5}  " + "  ".join(row))
    print("  (* marks the ell' = 2e boundary level; the count follows the "
          "square-root formula there)")


if __name__ == "__main__":
    overview()
    arithmetic_samples()
    guaranteed_counts()
