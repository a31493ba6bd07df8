#!/usr/bin/env python3
"""Directed borders and monotone shifting on the ternary lattice.

Points of {0,1,2}^n stand for the positions a third alternative can take
relative to a fixed pair, one digit per voter (0 above both, 1 between,
2 below).  Along each coordinate line the directed edges run 0->1, 1->2
and 0->2; the border of a set counts edges leaving it.
"""

import numpy as np

from votelab import (
    ScfRule,
    TernarySet,
    border_counts,
    border_total,
    check_border_inequality,
    check_harris,
    is_monotone,
    random_set,
    sets_ab,
    shift_monotone,
)


def from_points(n, points):
    """Build a set from digit tuples; digit of voter v scales 3^v."""
    return TernarySet.from_indices(
        n, [sum(d * 3 ** v for v, d in enumerate(pt)) for pt in points])


def label(s):
    return sorted(int(i) for i in np.flatnonzero(s.membership))


def main():
    n = 2

    # The point with both digits 0 has two outgoing edges per line (0->1
    # and the long edge 0->2), so its border is 2 in each direction.
    origin = from_points(n, [(0, 0)])
    print("border counts of {(0,0)} by direction:",
          border_counts(origin).counts, "total", border_total(origin))

    # Monotone means closed under increasing digits.  The upper cylinder
    # "voter 0 has digit 2" is monotone and its border along its own
    # direction is zero: no edge can leave through a maximal digit.
    cyl = from_points(n, [(2, d) for d in range(3)])
    print("cylinder {d_0 = 2}: monotone =", is_monotone(cyl),
          " border by direction =", border_counts(cyl).counts)

    # Shifting packs each line downward (toward digit 2) without changing
    # the size.  The result is monotone, and no directional border grows.
    s = random_set(n=3, seed=42, p=0.4)
    t = shift_monotone(s)
    print("\nrandom set at n=3: size", s.size, "monotone", is_monotone(s))
    print("after shifting   : size", t.size, "monotone", is_monotone(t))
    print("border before", border_counts(s).counts,
          "after", border_counts(t).counts)
    moved = int((t.membership & ~s.membership).sum())
    print("points moved in:", moved, "<= border before:", border_total(s))

    # The isoperimetric inequality for disjoint sets: 3^n (|dA| + |dB|)
    # >= |A| |B|, in exact integers.
    a = from_points(2, [(0, 0), (0, 1)])
    b = from_points(2, [(2, 2)])
    rep = check_border_inequality(a, b)
    print("\ndisjoint pair A =", label(a), " B =", label(b))
    print(f"3^n (|dA|+|dB|) = {rep.lhs} >= |A||B| = {rep.rhs} : {rep.holds}")

    # Harris correlation for monotone sets: 3^n |A n B| >= |A||B|.
    ma = shift_monotone(random_set(n=3, seed=7, p=0.5))
    mb = shift_monotone(random_set(n=3, seed=8, p=0.5))
    h = check_harris(ma, mb)
    print(f"harris on two monotone sets: {h.lhs} >= {h.rhs} : {h.holds}")

    # Voting rules induce such set pairs.  Fix a pairwise vote split z of
    # the pair (a, b); A(z) collects the third-position vectors where the
    # rule elects a, B(z) those where it elects b.  They are disjoint by
    # construction and obey the border inequality.
    rule = ScfRule("plurality")
    worst = max(
        ((z, *sets_ab(rule, 0, 1, z, 3)) for z in range(8)),
        key=lambda t: t[1].size * t[2].size)
    z, A, B = worst
    rep = check_border_inequality(A, B)
    print(f"\nplurality, pair (0,1), split z={z:03b}: |A|={A.size} |B|={B.size}"
          f"  border check {rep.lhs} >= {rep.rhs} : {rep.holds}")

    # Sweep all splits of all three pairs.
    checks = sum(
        check_border_inequality(*sets_ab(rule, a, b, z, 3)).holds
        for a, b in ((0, 1), (0, 2), (1, 2)) for z in range(8))
    print("all 24 (pair, split) combinations satisfy the inequality:",
          checks == 24)


if __name__ == "__main__":
    main()
