# Cached permutation tables shared across modules.

from functools import lru_cache
from itertools import combinations, permutations
from math import factorial

import numpy as np


def _frozen(a):
    a.setflags(write=False)
    return a


@lru_cache(maxsize=None)
def perms(m):
    """All m! rankings of m alternatives, top choice first, lexicographic order."""
    return _frozen(np.array(list(permutations(range(m))), dtype=np.int8))


@lru_cache(maxsize=None)
def rank_in_order(m):
    """rank_in_order(m)[k, a] = position of alternative a in ranking k (0 = top)."""
    p = perms(m)
    r = np.empty_like(p)
    r[np.arange(len(p))[:, None], p] = np.arange(m, dtype=np.int8)[None, :]
    return _frozen(r)


@lru_cache(maxsize=None)
def prefers(m):
    """prefers(m)[k, a, b] = True iff ranking k places a above b."""
    r = rank_in_order(m)
    return _frozen(r[:, :, None] < r[:, None, :])


@lru_cache(maxsize=None)
def relabel_action(m):
    """relabel_action(m)[q, k] = ranking index obtained by applying alternative
    relabeling perms(m)[q] to ranking k."""
    p = perms(m).tolist()
    index_of = {tuple(row): i for i, row in enumerate(p)}
    act = np.empty((len(p), len(p)), dtype=np.int32)
    for q, pi in enumerate(p):
        for k, row in enumerate(p):
            act[q, k] = index_of[tuple(pi[x] for x in row)]
    return _frozen(act)


@lru_cache(maxsize=None)
def pair_bit(m, a, b):
    """pair_bit(m, a, b)[k] = 1 iff ranking k places a above b."""
    return _frozen(prefers(m)[:, a, b].astype(np.int64))


# m = 3 pair helpers: a ranking splits into (pair bit, position of the third
# alternative), the latter being 0 = above both, 1 = between, 2 = below both.

def pair_bit3(a, b):
    return pair_bit(3, a, b)


@lru_cache(maxsize=None)
def third_digit3(a, b):
    """third_digit3(a, b)[k] = position code of the remaining alternative in ranking k."""
    c = 3 - a - b
    return _frozen(rank_in_order(3)[:, c].astype(np.int64))


@lru_cache(maxsize=None)
def order_of_bit_digit3(a, b):
    """Inverse of (pair_bit3, third_digit3): [bit, digit] -> m=3 ranking index."""
    out = np.empty((2, 3), dtype=np.int64)
    bits, digs = pair_bit3(a, b), third_digit3(a, b)
    for k in range(6):
        out[bits[k], digs[k]] = k
    return _frozen(out)


@lru_cache(maxsize=None)
def pair_list(m):
    """Unordered alternative pairs (a < b) in lexicographic order."""
    return tuple(combinations(range(m), 2))


@lru_cache(maxsize=None)
def pair_slot(m):
    return {p: i for i, p in enumerate(pair_list(m))}


def index_digits(idx, base, n):
    """Mixed-radix digits of each index; shape (n, len(idx)), digit 0 least significant."""
    rem = np.array(idx, dtype=np.int64, copy=True)
    out = np.empty((n, rem.size), dtype=np.int64)
    for v in range(n):
        out[v] = rem % base
        rem //= base
    return out


def digits_index(digits, base):
    """Inverse of index_digits."""
    digits = np.asarray(digits, dtype=np.int64)
    idx = np.zeros(digits.shape[1:], dtype=np.int64)
    for v in range(digits.shape[0] - 1, -1, -1):
        idx *= base
        idx += digits[v]
    return idx


def fact(m):
    return factorial(m)
