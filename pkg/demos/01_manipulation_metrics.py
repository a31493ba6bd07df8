#!/usr/bin/env python3
"""Tour of the exact manipulation metrics for three-alternative rules.

Every quantity here is a Fraction obtained by full enumeration of the
6^n profiles, so the printed values are reproducible to the last digit.
"""

from fractions import Fraction

from votelab import (
    ScfRule,
    anonymity_counts,
    dist_to_antidictatorship,
    dist_to_dictatorship,
    is_anonymous,
    is_neutral,
    mab,
    manipulation_power,
    manipulation_power_total,
    nab,
    neutrality_counts,
    profile_from_index,
    range_min_prob,
    zoo_rules,
)

N = 3
PAIRS = ((0, 1), (0, 2), (1, 2))


def show_rule(rule):
    print(f"--- {rule.label} (m=3, n={N}) ---")

    # Per-voter manipulation power: the chance that replacing voter i's
    # ballot with a fresh uniform one strictly improves the outcome for
    # the voter's true ranking.
    per_voter = [manipulation_power(rule, i, N).fraction for i in range(N)]
    total = manipulation_power_total(rule, N).fraction
    print("  M_i        :", ", ".join(str(v) for v in per_voter))
    print("  M (total)  :", total, f"= {float(total):.6f}")

    # Pairwise dependence and minority preference, one value per
    # unordered pair of alternatives.
    for a, b in PAIRS:
        m_ab = mab(rule, a, b, N).fraction
        n_ab = nab(rule, a, b, N).fraction
        print(f"  pair ({a},{b}) : M^ab = {m_ab}   N^ab = {n_ab}   "
              f"N^2 <= M: {n_ab * n_ab <= m_ab}")

    dd, voter_d = dist_to_dictatorship(rule, N)
    da, voter_a = dist_to_antidictatorship(rule, N)
    rm, alt = range_min_prob(rule, N)
    print(f"  nearest dictatorship      : voter {voter_d}, distance {dd}")
    print(f"  nearest anti-dictatorship : voter {voter_a}, distance {da}")
    print(f"  rarest winner             : alternative {alt}, probability {rm}")
    print(f"  neutral: {is_neutral(rule, N)}   anonymous: {is_anonymous(rule, N)}")
    print()


def main():
    for rule in (ScfRule("plurality"), ScfRule("borda"),
                 ScfRule("pairwise_majority_fallback"),
                 ScfRule("dictatorship", voter=0)):
        show_rule(rule)

    # A dictatorship is immune to manipulation: the dictator already gets
    # the top choice, and nobody else matters.
    dic = ScfRule("dictatorship", voter=0)
    assert manipulation_power_total(dic, N).fraction == 0

    # Symmetry diagnostics count violations rather than just flagging them.
    plu = ScfRule("plurality")
    bad, checks = neutrality_counts(plu, N)
    print(f"plurality neutrality violations: {bad} of {checks} checks "
          "(ties are broken by index, which favors low-numbered alternatives)")
    bad, checks = anonymity_counts(plu, N)
    print(f"plurality anonymity violations: {bad} of {checks} checks")

    # Winners are plain integers; profiles are tuples of strict rankings.
    p = profile_from_index(0, N)
    print("\nunanimous profile", tuple(v.ranking for v in p.voters),
          "-> plurality winner", plu.winner(p))

    # The zoo is the standing corpus of named rules used across the tests.
    print("\nzoo at n=3:", ", ".join(r.label for r in zoo_rules(N)))

    # Spot check against a hand count: plurality with three voters is
    # manipulable exactly when the profile is a three-way tie that the
    # manipulator can break in their own favor, which works out to 2/81
    # per voter.
    assert manipulation_power(plu, 0, N).fraction == Fraction(2, 81)
    print("\nhand-count check passed: plurality M_0 = 2/81")


if __name__ == "__main__":
    main()
