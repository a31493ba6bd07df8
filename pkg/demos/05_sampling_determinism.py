#!/usr/bin/env python3
"""Sampled estimation: confidence intervals and bit-level reproducibility.

Exact enumeration stops being an option once (m!)^n crosses the budget;
the estimators then draw profiles in fixed-size chunks whose random
streams depend only on (seed, chunk index).  Splitting the chunks over
workers changes nothing about which profiles are drawn, so a sampled
report is a pure function of its arguments.
"""

import time

from votelab import (
    ScfRule,
    exact_feasible,
    majority_g,
    manipulation_power_total,
    nab,
    neutral_tensor,
    ngcw,
    report_to_dict,
)


def main():
    n = 8
    plu = ScfRule("plurality")
    print(f"exact feasible at m=3, n={n}:", exact_feasible(n, 3),
          f"(6^{n} profiles x replacements exceeds the budget at n >= 12;"
          " sampling kicks in automatically in mode='auto')")

    # Same seed, same answer, to the last bit of the float.
    r1 = manipulation_power_total(plu, n, mode="sampled", samples=200_000,
                                  seed=7)
    r2 = manipulation_power_total(plu, n, mode="sampled", samples=200_000,
                                  seed=7)
    print("\ntwo runs, same seed:")
    print("  value", r1.value, "ci95", r1.ci95)
    print("  value", r2.value, "ci95", r2.ci95)
    print("  reports equal:", r1 == r2)

    # Worker count is a throughput knob, not a semantic one.  At desk
    # sizes process startup can eat the speedup; the point here is that
    # the output does not change, byte for byte.
    t0 = time.perf_counter()
    serial = nab(plu, 0, 1, n, mode="sampled", samples=400_000, seed=3,
                 workers=1)
    t1 = time.perf_counter()
    parallel = nab(plu, 0, 1, n, mode="sampled", samples=400_000, seed=3,
                   workers=8)
    t2 = time.perf_counter()
    print(f"\nworkers=1: {t1 - t0:.2f}s   workers=8: {t2 - t1:.2f}s   "
          f"identical: {serial == parallel}")

    # A different seed gives a different estimate inside the same interval.
    other = manipulation_power_total(plu, n, mode="sampled", samples=200_000,
                                     seed=8)
    print("\nseed 7 vs seed 8:", r1.value, "vs", other.value,
          "(both intervals should cover the unknown exact value)")

    # Sampled paradox probability for a 17-voter majority tensor; the
    # exact value 6^17 is far out of reach but the estimate lands near
    # the known small-n exact values (1/18 at n=3, trending up slowly).
    G = neutral_tensor(majority_g(17), 3)
    est = ngcw(G, mode="sampled", samples=200_000, seed=11)
    print(f"\nNGCW of 17-voter majority ~ {est.value:.5f} "
          f"+- {est.ci95:.5f} from {est.samples} samples")

    # Reports serialize with their provenance: mode, seed and sample
    # count travel with the number.
    print("\nserialized report:", report_to_dict(est))


if __name__ == "__main__":
    main()
