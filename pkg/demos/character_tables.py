#!/usr/bin/env python3
"""Exact character tables of a small GL2 / SL2 pair.

Prints the full table of SL2 over the 4-element base ring, certifies exact
orthogonality, then restricts every GL2 irreducible to SL2 and decomposes the
restriction into SL2 irreducibles — the machinery behind the branching reports.
"""

from branchlab import chartab, grp, ring
from branchlab.verify import _fmt_cyclo


def print_table(G, table):
    cc = table.classes
    print(f"character table of {G.name}  (order {G.n}, {cc.k} classes, "
          f"values in Q(zeta_{table.n}))")
    print()
    head = ["class", "size", "order"]
    rows = []
    for j in range(cc.k):
        rep = int(cc.reps[j])
        rows.append([f"C{j}", str(int(cc.sizes[j])),
                     str(int(G.element_orders[rep]))])
    cells = [[_fmt_cyclo(table.char(i).value(j)) for j in range(cc.k)]
             for i in range(table.k)]

    # legend block, then the value grid with one column per class
    widths = [max(len(h), max(len(r[c]) for r in rows)) for c, h in enumerate(head)]
    for c, h in enumerate(head):
        line = f"{h:>6}: " + " ".join(f"{rows[j][c]:>{max(widths)}}" for j in range(cc.k))
        print(line)
    print()
    col = max(max(len(v) for row in cells for v in row), 4)
    print("        " + " ".join(f"{f'C{j}':>{col}}" for j in range(cc.k)))
    for i in range(table.k):
        print(f"chi_{i:<3} " + " ".join(f"{v:>{col}}" for v in cells[i]))
    print()


def main():
    spec = ring.make_ring("z2", r=2)
    G = grp.build_gl2(spec)
    S = grp.sl2_subgroup(G)
    tabG = chartab.character_table_cached(G)
    tabS = chartab.character_table_cached(S)

    print_table(S, tabS)

    for label, tab in (("GL2", tabG), ("SL2", tabS)):
        chartab.verify_orthogonality_exact(tab, columns=True)
        total = sum(int(d) ** 2 for d in tab.degrees)
        print(f"{label}: rows and columns exactly orthogonal; "
              f"sum of squared degrees = {total} = group order")
    print()

    # the regular character decomposes as sum d_i * chi_i
    reg = chartab.regular_character(tabS.classes)
    parts = chartab.decompose(reg, tabS)
    assert parts == [(i, int(tabS.degrees[i])) for i in range(tabS.k)]
    print("regular character of SL2 = " +
          " + ".join(f"{m}*chi_{i}" if m > 1 else f"chi_{i}" for i, m in parts))
    print()

    print("restriction of each GL2 irreducible to SL2:")
    for i in range(tabG.k):
        res = chartab.restrict(tabG.char(i), S)
        parts = chartab.decompose(res, tabS)
        text = " + ".join(f"{m}*chi_{j}" if m > 1 else f"chi_{j}" for j, m in parts)
        dims = "+".join(str(int(tabS.degrees[j])) for j, m in parts for _ in range(m))
        print(f"  chi_{i:<3} (dim {int(tabG.degrees[i])})  ->  {text:<24} dims {dims}")


if __name__ == "__main__":
    main()
