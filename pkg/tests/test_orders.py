"""Ranking, profile, and pair-splitting encodings."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from votelab.orders import (
    LinearOrder,
    PairwiseColumn,
    Profile,
    TernaryVector,
    compose,
    decompose,
    digits_to_profile_index,
    join_pair,
    order_from_index,
    order_to_index,
    pairwise_column,
    profile_chunks,
    profile_digits,
    profile_from_index,
    profile_to_index,
    split_pair,
)

PAIRS = ((0, 1), (0, 2), (1, 2))


def test_order_index_is_top_first_lexicographic():
    assert order_from_index(0).ranking == (0, 1, 2)
    assert order_from_index(1).ranking == (0, 2, 1)
    assert order_from_index(2).ranking == (1, 0, 2)
    assert order_from_index(3).ranking == (1, 2, 0)
    assert order_from_index(4).ranking == (2, 0, 1)
    assert order_from_index(5).ranking == (2, 1, 0)


def test_order_round_trip_all_m():
    from math import factorial
    for m in (3, 4, 5):
        seen = set()
        for k in range(factorial(m)):
            o = order_from_index(k, m)
            assert order_to_index(o) == k
            seen.add(o.ranking)
        assert len(seen) == factorial(m)


def test_order_helpers():
    o = order_from_index(3)  # (1, 2, 0)
    assert o.top == 1 and o.bottom == 0
    assert o.prefers(1, 0) and o.prefers(2, 0) and not o.prefers(0, 2)
    assert o.reverse().ranking == (0, 2, 1)
    # relabeling by pi maps alternative a to pi[a]
    assert o.relabel((2, 0, 1)).ranking == (0, 1, 2)


def test_bad_rankings_rejected():
    with pytest.raises(ValueError):
        LinearOrder((0, 0, 1))
    with pytest.raises(ValueError):
        LinearOrder((0, 1, 3))
    with pytest.raises(ValueError):
        order_from_index(6)


def test_profile_index_voter_zero_least_significant():
    p = profile_from_index(3 + 5 * 6, 2)
    assert order_to_index(p.voters[0]) == 3
    assert order_to_index(p.voters[1]) == 5
    assert profile_to_index(p) == 33


def test_profile_round_trip_n3():
    for idx in range(216):
        assert profile_to_index(profile_from_index(idx, 3)) == idx


def test_profile_replace_and_relabel():
    p = profile_from_index(7, 2)
    q = p.replace(1, order_from_index(0))
    assert q.voters[0] == p.voters[0]
    assert q.voters[1].ranking == (0, 1, 2)
    r = p.relabel((1, 2, 0))
    assert all(rv.ranking == tuple((1, 2, 0)[a] for a in pv.ranking)
               for pv, rv in zip(p.voters, r.voters))


def test_pairwise_column_bits_and_complement():
    p = Profile((order_from_index(0), order_from_index(3), order_from_index(5)))
    col = pairwise_column(p, 0, 1)
    assert col.bits == (True, False, False)
    assert col.index == 1
    assert col.complement().bits == (False, True, True)
    assert PairwiseColumn.from_index(5, 3).bits == (True, False, True)


def test_decompose_compose_round_trip_all_pairs():
    for idx in range(216):
        p = profile_from_index(idx, 3)
        for a, b in PAIRS:
            col, ter = decompose(p, a, b)
            assert compose(col, ter, a, b) == p


def test_decompose_semantics():
    # voter ranks (1, 2, 0): for pair (0, 2), prefers 2; third alt 1 on top
    p = Profile((order_from_index(3),))
    col, ter = decompose(p, 0, 2)
    assert col.bits == (False,)
    assert ter.digits == (0,)
    # third alternative between: (2, 1, 0) for pair (0, 2)
    col2, ter2 = decompose(Profile((order_from_index(5),)), 0, 2)
    assert ter2.digits == (1,)
    # third alternative below both: (0, 2, 1) for pair (0, 2)
    col3, ter3 = decompose(Profile((order_from_index(1),)), 0, 2)
    assert ter3.digits == (2,)


def test_ternary_vector_round_trip():
    for t in range(27):
        assert TernaryVector.from_index(t, 3).index == t


def test_array_kernels_match_object_layer():
    idx = np.arange(216)
    digits = profile_digits(idx, 3)
    assert digits.shape == (3, 216)
    back = digits_to_profile_index(digits)
    assert (back == idx).all()
    for a, b in PAIRS:
        z, t = split_pair(digits, a, b)
        joined = digits_to_profile_index(join_pair(z, t, 3, a, b))
        assert (joined == idx).all()
        for i in (0, 17, 215):
            col, ter = decompose(profile_from_index(i, 3), a, b)
            assert col.index == int(z[i])
            assert ter.index == int(t[i])


def test_profile_chunks_cover_everything():
    seen = []
    for lo, hi, digits in profile_chunks(3, chunk=100):
        assert digits.shape == (3, hi - lo)
        seen.extend(digits_to_profile_index(digits).tolist())
    assert seen == list(range(216))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 6 ** 4 - 1), st.sampled_from(PAIRS))
def test_join_inverts_split_n4(idx, pair):
    digits = profile_digits(np.array([idx]), 4)
    z, t = split_pair(digits, *pair)
    joined = digits_to_profile_index(join_pair(z, t, 4, *pair))
    assert int(joined[0]) == idx


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 23), st.integers(0, 23))
def test_order_round_trip_m4(k1, k2):
    p = Profile((order_from_index(k1, 4), order_from_index(k2, 4)))
    assert profile_to_index(p) == k1 + 24 * k2
    assert profile_from_index(k1 + 24 * k2, 2, 4) == p
