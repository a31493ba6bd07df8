#!/usr/bin/env python3
"""From a voting rule to a pairwise welfare function and back.

The forward construction reads off, for every pairwise vote split, which
alternative the rule favors on the pair; ties inside a split go to a
designated tie-break voter.  Its output is an IIA welfare function whose
transitivity failures bound the rule's manipulability from below, and
the chain report verifies the whole inequality chain in exact rationals.
"""

import math
import tempfile
from pathlib import Path

from votelab import (
    ScfRule,
    check_reduction_chain,
    gswf_from_scf,
    is_neutral_gswf,
    mab,
    ngcw,
    nt,
    read_gswf,
    scf_from_gswf,
    write_gswf,
)


def bits(table):
    return "".join("1" if b else "0" for b in table)


def main():
    n = 3
    rule = ScfRule("borda")

    G = gswf_from_scf(rule, tie_voter=0, n=n)
    print(f"{rule.label} -> pairwise tables over the 2^{n} vote splits")
    for slot, (a, b) in enumerate(((0, 1), (0, 2), (1, 2))):
        print(f"  pair ({a},{b}): {bits(G.tables[slot])}   "
              "(bit z = 1 means the pair vote z favors the first alternative)")
    print("neutral as a welfare function:", is_neutral_gswf(G))

    # The chain: probability of a cyclic output NT(G) is at most the sum
    # of the three minority preferences, which is at most 3 sqrt(eps1)
    # where eps1 is the largest pairwise dependence of the rule; and the
    # distance from G to the always-transitive family is at least
    # eps2 - 3 sqrt(eps1), where eps2 measures how far the rule is from
    # dictatorships, anti-dictatorships and near-constant rules.
    ch = check_reduction_chain(rule, n=n)
    sum_nab = sum(r.fraction for r in ch.nab_reports)
    print(f"\nNT(G) = {ch.nt_report.fraction}")
    print(f"sum of minority preferences = {sum_nab}")
    print(f"eps1 = {ch.eps1}   3 sqrt(eps1) ~ {3 * math.sqrt(ch.eps1):.4f}")
    print(f"eps2 = {ch.eps2} = min(dist_dict {ch.dist_dict}, "
          f"dist_anti {ch.dist_anti}, range_min {ch.range_min})")
    print(f"distance to transitive family = {ch.dist} "
          f"(nearest member: {ch.member})")
    print(f"chain verdicts: NT <= sum {ch.nt_le_sum_nab}, "
          f"sum^2 <= 9 eps1 {ch.sum_nab_sq_le_9eps1}, "
          f"distance bound {ch.dist_bound}, all {ch.holds}")

    # The reverse construction elects the generalized Condorcet winner of
    # a welfare function when one exists and falls back to a designated
    # voter's favorite otherwise.  Its pairwise dependence is controlled
    # by the paradox probability of the welfare function.
    F = scf_from_gswf(G, fallback_voter=0)
    paradox = ngcw(G).fraction
    worst = max(mab(F, a, b, n).fraction for a, b in ((0, 1), (0, 2), (1, 2)))
    print(f"\nround trip: no-winner probability {paradox}, "
          f"worst pairwise dependence of the induced rule {worst}")
    print(f"bound M^ab <= 2 NGCW: {worst} <= {2 * paradox} "
          f"-> {worst <= 2 * paradox}")

    # At m = 3 a welfare function has no generalized Condorcet winner
    # exactly when its output triple is cyclic.
    assert ngcw(G).fraction == nt(G).fraction

    # Welfare functions serialize to a compact bitset format; the round
    # trip is exact.  The CLI exposes the same pipeline as
    # `python3 -m votelab reduce --scf borda --n 3 --gswf-out g.bin` and
    # `python3 -m votelab metrics plurality --n 3 --format json`.
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "borda_pairwise.bin"
        write_gswf(G, path)
        back = read_gswf(path)
        print(f"\nfile round trip ({path.stat().st_size} bytes):",
              "identical" if back == G else "MISMATCH")


if __name__ == "__main__":
    main()
