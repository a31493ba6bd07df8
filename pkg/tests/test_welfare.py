"""Pairwise welfare functions, paradox probabilities, distances, and the
identities and reductions connecting them.

Exact engines are cross-checked two independent ways: a slow profile-level
enumeration through the object layer, and a column-distribution sum that
never touches profiles at all.
"""

from fractions import Fraction
from itertools import product
from math import factorial

import numpy as np
import pytest

from votelab.metrics import mab
from votelab.orders import Profile, order_from_index, pairwise_column, profile_from_index
from votelab.rules import BudgetError, ScfRule
from votelab.welfare import (
    GswfIia,
    NeutralGswf,
    anti_dictator_swf,
    check_composition,
    check_identities,
    check_reduction_chain,
    dictator_swf,
    dist_dict2,
    dist_tr3,
    dist_tr3_bruteforce,
    gcw,
    gcw_winner_at,
    gswf_disagreement,
    gswf_from_scf,
    is_neutral_gswf,
    is_odd,
    majority_g,
    neutral_tensor,
    ngcw,
    nt,
    random_iia_gswf,
    random_odd_g,
    restrict_gswf,
    scf_from_gswf,
    tr3_members,
    tr_member_tables,
)

PAIRS = ((0, 1), (0, 2), (1, 2))


def slow_nt(G, n):
    """Count cyclic outputs by walking every profile through the object layer."""
    count = 0
    for idx in range(6 ** n):
        p = profile_from_index(idx, n)
        bits = {}
        for a, b in PAIRS:
            z = pairwise_column(p, a, b).index
            bits[(a, b)] = bool(G.pairwise(a, b)[z])
        t01, t02, t12 = bits[(0, 1)], bits[(0, 2)], bits[(1, 2)]
        count += (t01, t02, t12) in ((True, False, True), (False, True, False))
    return Fraction(count, 6 ** n)


def column_sum_ngcw(G):
    """No-winner probability without enumerating profiles: sum over the
    per-voter sets of alternatives ranked below a candidate winner, using
    the exact weight k!(m-1-k)!/m! for a below-set of size k."""
    m, n = G.m, G.n
    others = {a: [b for b in range(m) if b != a] for a in range(m)}
    win_total = Fraction(0)
    for a in range(m):
        rows = {b: G.pairwise(a, b) for b in others[a]}
        for below_sets in product(range(1 << (m - 1)), repeat=n):
            weight = Fraction(1)
            cols = {b: 0 for b in others[a]}
            for v, mask in enumerate(below_sets):
                k = bin(mask).count("1")
                weight *= Fraction(factorial(k) * factorial(m - 1 - k),
                                   factorial(m))
                for j, b in enumerate(others[a]):
                    if mask >> j & 1:
                        cols[b] |= 1 << v
            if all(rows[b][cols[b]] for b in others[a]):
                win_total += weight
    return 1 - win_total


def test_gswf_table_shape_checked():
    with pytest.raises(ValueError):
        GswfIia(3, 2, np.zeros((2, 4), dtype=bool))
    with pytest.raises(ValueError):
        GswfIia(3, 2, np.zeros((3, 5), dtype=bool))


def test_pairwise_query_orientation():
    G = random_iia_gswf(2, 3, 12)
    comp = 3 ^ np.arange(4)
    for a, b in PAIRS:
        fwd = G.pairwise(a, b)
        rev = G.pairwise(b, a)
        assert (rev == ~fwd[comp]).all()
    with pytest.raises(ValueError):
        G.pairwise(0, 0)


def test_oddness():
    assert is_odd(majority_g(3))
    assert is_odd(np.array([False, True]))
    assert not is_odd(np.ones(4, dtype=bool))
    with pytest.raises(ValueError):
        NeutralGswf(3, np.ones(8, dtype=bool))
    with pytest.raises(ValueError):
        majority_g(4)


def test_random_generators_reproducible():
    assert (random_odd_g(3, 7) == random_odd_g(3, 7)).all()
    assert is_odd(random_odd_g(4, 7))
    assert random_iia_gswf(3, 3, 7) == random_iia_gswf(3, 3, 7)
    assert random_iia_gswf(3, 3, 7) != random_iia_gswf(3, 3, 8)


def test_dictator_swf_tables():
    D = dictator_swf(1, 2)
    # societal preference on every pair copies voter 1's column bit
    for a, b in PAIRS:
        assert (D.pairwise(a, b) == np.array([False, False, True, True])).all()
    A = anti_dictator_swf(0, 2)
    for a, b in PAIRS:
        assert (A.pairwise(a, b) == np.array([True, False, True, False])).all()


def test_nt_matches_slow_enumeration():
    G = neutral_tensor(majority_g(3), 3).to_gswf()
    rep = nt(G)
    assert rep.fraction == slow_nt(G, 3) == Fraction(12, 216)
    H = random_iia_gswf(2, 3, 21)
    assert nt(H).fraction == slow_nt(H, 2)


def test_dictators_never_cycle():
    assert nt(dictator_swf(0, 3)).fraction == 0
    assert nt(anti_dictator_swf(2, 3)).fraction == 0


def test_ngcw_equals_nt_for_three_alternatives():
    for G in (neutral_tensor(majority_g(3), 3).to_gswf(),
              dictator_swf(1, 3),
              random_iia_gswf(3, 3, 5),
              random_iia_gswf(3, 3, 6),
              gswf_from_scf(ScfRule("borda"), n=3)):
        assert ngcw(G).fraction == nt(G).fraction


def test_gcw_complements_ngcw():
    G = neutral_tensor(majority_g(3), 3).to_gswf()
    assert gcw(G).fraction + ngcw(G).fraction == 1


def test_ngcw_matches_column_sum_oracle():
    maj = neutral_tensor(majority_g(3), 3)
    assert ngcw(maj).fraction == column_sum_ngcw(maj.to_gswf())
    four = neutral_tensor(majority_g(3), 4)
    assert ngcw(four).fraction == column_sum_ngcw(four.to_gswf())
    H = random_iia_gswf(2, 3, 31)
    assert ngcw(H).fraction == column_sum_ngcw(H)


def test_gcw_winner_at_examples():
    G = neutral_tensor(majority_g(3), 3).to_gswf()
    cyc = Profile(tuple(order_from_index(k) for k in (0, 3, 4)))
    assert gcw_winner_at(G, cyc) is None
    assert gcw_winner_at(G, Profile(tuple(order_from_index(k)
                                          for k in (0, 0, 3)))) == 0


def test_neutral_tensor_alternative_symmetry():
    """Under a neutral tensor every alternative is the unique winner (and the
    unique loser) equally often."""
    G = neutral_tensor(majority_g(3), 3).to_gswf()
    win = [0, 0, 0]
    lose = [0, 0, 0]
    for idx in range(216):
        p = profile_from_index(idx, 3)
        beats = {a: 0 for a in range(3)}
        for a, b in PAIRS:
            z = pairwise_column(p, a, b).index
            if G.pairwise(a, b)[z]:
                beats[a] += 1
            else:
                beats[b] += 1
        for a in range(3):
            if beats[a] == 2:
                win[a] += 1
            if beats[a] == 0:
                lose[a] += 1
    assert win == [68, 68, 68]
    assert lose == [68, 68, 68]


def test_is_neutral_gswf():
    assert is_neutral_gswf(neutral_tensor(majority_g(3), 3))
    assert is_neutral_gswf(gswf_from_scf(ScfRule("plurality"), n=3))
    # copying one voter's preference commutes with relabeling alternatives
    assert is_neutral_gswf(dictator_swf(0, 3))
    assert not is_neutral_gswf(random_iia_gswf(3, 3, 7))


def test_gswf_from_scf_matches_column_stats():
    from votelab.metrics import column_stats
    scf = ScfRule("borda")
    for tie_voter in (0, 2):
        G = gswf_from_scf(scf, tie_voter=tie_voter, n=3)
        tie = (np.arange(8) >> tie_voter & 1).astype(bool)
        for a, b in PAIRS:
            st = column_stats(scf, a, b, 3)
            want = (st.count_a > st.count_b) | ((st.count_a == st.count_b) & tie)
            assert (G.pairwise(a, b) == want).all()


def test_gswf_from_scf_of_plurality_is_majority():
    G = gswf_from_scf(ScfRule("plurality"), tie_voter=0, n=3)
    maj = neutral_tensor(majority_g(3), 3).to_gswf()
    assert G == maj


def test_scf_from_gswf_winner_semantics():
    G = neutral_tensor(majority_g(3), 3).to_gswf()
    F = scf_from_gswf(G, fallback_voter=1)
    assert F.winner(Profile(tuple(order_from_index(k) for k in (0, 0, 3)))) == 0
    cyc = Profile(tuple(order_from_index(k) for k in (0, 3, 4)))
    assert F.winner(cyc) == 1  # voter 1 ranks (1, 2, 0)
    F0 = scf_from_gswf(G, fallback_voter=0)
    assert F0.winner(cyc) == 0


def test_converse_manipulability_bound():
    G = neutral_tensor(majority_g(3), 3).to_gswf()
    F = scf_from_gswf(G)
    eps = ngcw(G).fraction
    for a, b in PAIRS:
        r = mab(F, a, b, 3).fraction
        assert r == Fraction(8, 729)
        assert r <= 2 * eps
    for seed in range(5):
        H = random_iia_gswf(2, 3, 40 + seed)
        bound = 2 * ngcw(H).fraction
        FH = scf_from_gswf(H)
        for a, b in PAIRS:
            assert mab(FH, a, b, 2).fraction <= bound


def test_dist_dict2_values():
    assert dist_dict2(majority_g(3))[0] == Fraction(1, 4)
    parity2 = np.array([bool(bin(z).count("1") % 2) for z in range(4)])
    assert dist_dict2(parity2)[0] == Fraction(1, 2)
    bit1 = (np.arange(8) >> 1 & 1).astype(bool)
    value, witness = dist_dict2(bit1)
    assert value == 0 and witness == ("dictator", 1)
    value, witness = dist_dict2(~bit1)
    assert value == 0 and witness == ("anti_dictator", 1)


def test_dist_tr3_majority_frozen():
    G = neutral_tensor(majority_g(3), 3)
    value, member = dist_tr3(G)
    assert value == Fraction(19, 36)
    assert member.kind == "dictator" and member.voter == 0
    bvalue, bmember = dist_tr3_bruteforce(G)
    assert bvalue == value


def test_dist_tr3_is_zero_on_family_members():
    for n in (2, 3):
        assert dist_tr3(dictator_swf(1, n))[0] == 0
        assert dist_tr3(anti_dictator_swf(0, n))[0] == 0
    for member in list(tr3_members(2))[:40]:
        G = tr_member_tables(member, 2)
        assert dist_tr3(G)[0] == 0, member.label


def test_dist_tr3_structured_equals_bruteforce():
    for seed in range(30):
        G = random_iia_gswf(2, 3, seed)
        assert dist_tr3(G)[0] == dist_tr3_bruteforce(G)[0], seed
    for seed in (0, 1):
        G = random_iia_gswf(3, 3, seed)
        assert dist_tr3(G)[0] == dist_tr3_bruteforce(G)[0], seed


def test_tr3_family_size():
    assert len(list(tr3_members(2))) == 2 * 2 + 6 * 2 ** 4
    labels = {m.label for m in tr3_members(2)}
    assert "dictator(0)" in labels and "anti_dictator(1)" in labels
    assert any(l.startswith("top_fixed") for l in labels)
    assert any(l.startswith("bottom_fixed") for l in labels)


def test_tr_member_tables_are_transitive():
    for member in tr3_members(2):
        G = tr_member_tables(member, 2)
        assert nt(G).fraction == 0, member.label


def test_gswf_disagreement_granularity():
    G = neutral_tensor(majority_g(3), 3).to_gswf()
    D = dictator_swf(0, 3)
    assert gswf_disagreement(G, G) == 0
    triple = gswf_disagreement(G, D)
    bits = gswf_disagreement(G, D, granularity="bits")
    assert triple == Fraction(19, 36)
    assert 0 < bits <= triple


def test_restrict_gswf():
    G = random_iia_gswf(2, 4, 3)
    R = restrict_gswf(G, (0, 2, 3))
    assert R.m == 3 and R.n == 2
    assert (R.pairwise(0, 1) == G.pairwise(0, 2)).all()
    assert (R.pairwise(1, 2) == G.pairwise(2, 3)).all()
    with pytest.raises(ValueError):
        restrict_gswf(G, (0, 5))
    with pytest.raises(ValueError):
        restrict_gswf(G, (1,))


def test_identity_four_exact_small_sample():
    for g in (majority_g(3), random_odd_g(3, 1), random_odd_g(3, 2)):
        r3 = ngcw(neutral_tensor(g, 3))
        r4 = ngcw(neutral_tensor(g, 4))
        assert r4.fraction == 2 * r3.fraction


def test_identities_all_exact_at_n1_and_n2():
    for g in (np.array([False, True]), np.array([True, False])):
        rep = check_identities(g)
        assert rep.four_exact and rep.four_tol == 0
        assert rep.five_tol == 0
        assert rep.holds
        assert rep.ngcw5.fraction == 0
    rep2 = check_identities(random_odd_g(2, 9))
    assert rep2.four_exact and rep2.five_tol == 0 and rep2.holds


def test_identities_majority_n3():
    rep = check_identities(majority_g(3), samples=150_000, seed=2)
    assert rep.ngcw3.fraction == Fraction(12, 216)
    assert rep.ngcw4.fraction == Fraction(24, 216)
    assert rep.four_exact and rep.four_holds
    assert rep.ngcw5.mode == "exact"
    assert rep.ngcw6.mode == "sampled"
    assert rep.five_holds and rep.holds


def test_composition_exact():
    rep = check_composition(random_odd_g(2, 4))
    assert rep.holds and rep.tol == 0
    assert rep.joint.fraction == rep.left.fraction * rep.right.fraction


def test_composition_sampled_majority():
    rep = check_composition(majority_g(3), samples=200_000, seed=3)
    assert rep.left.fraction == Fraction(1, 18)
    assert rep.right.fraction == Fraction(1, 18)
    assert rep.holds


def test_chain_plurality_frozen():
    rep = check_reduction_chain(ScfRule("plurality"), n=3)
    assert rep.holds
    assert rep.eps1 == Fraction(4, 81)
    assert rep.eps2 == Fraction(7, 27)
    assert rep.dist == Fraction(19, 36)
    assert rep.nt_report.fraction == Fraction(12, 216)
    assert sum(r.fraction for r in rep.nab_reports) == Fraction(2, 9)
    assert rep.g_is_neutral and not rep.scf_is_neutral
    assert rep.member.kind == "dictator"


def test_chain_holds_on_small_corpus():
    for name, params in (("borda", {}), ("pairwise_majority_fallback", {}),
                         ("dictatorship", {"voter": 0}),
                         ("constant", {"alt": 1})):
        assert check_reduction_chain(ScfRule(name, **params), n=3).holds
    for seed in range(10):
        rep = check_reduction_chain(ScfRule("random_table", seed=seed), n=2)
        assert rep.holds, seed


def test_nt_rejects_other_sizes():
    with pytest.raises(ValueError):
        nt(neutral_tensor(majority_g(3), 4))


def test_budget_guards():
    with pytest.raises(BudgetError):
        ngcw(neutral_tensor(majority_g(3), 6), mode="exact")
    with pytest.raises(BudgetError):
        dist_tr3_bruteforce(random_iia_gswf(4, 3, 0))


def test_sampled_nt_deterministic_and_near_exact():
    G = neutral_tensor(majority_g(3), 3).to_gswf()
    r1 = nt(G, mode="sampled", samples=100_000, seed=6, workers=1)
    r2 = nt(G, mode="sampled", samples=100_000, seed=6, workers=8)
    assert r1 == r2
    assert abs(r1.value - 12 / 216) <= 3 * r1.ci95 / 1.96 + 1e-12
