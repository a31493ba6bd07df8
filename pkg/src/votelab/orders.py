"""Canonical encodings of rankings, profiles, pairwise columns, and the
ternary decomposition.

Conventions, normative for file formats and profile indices:

* rankings are listed top-first and enumerated lexicographically, so index 0
  is ``(0, 1, ..., m-1)`` and index ``m! - 1`` is its reverse;
* a profile of ``n`` rankings is a mixed-radix number with voter 0 as the
  least significant digit;
* the pairwise column of ``(a, b)`` has bit ``v`` set iff voter ``v`` prefers
  ``a`` to ``b``, packed with voter 0 as bit 0;
* at ``m = 3`` a voter's ranking, given its pair bit, is determined by the
  position of the remaining alternative ``c``: digit 0 puts ``c`` above both,
  1 between, 2 below both (ternary point index packs voter 0 first).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from . import _tables


@dataclass(frozen=True)
class LinearOrder:
    """A strict ranking of ``m`` alternatives, most preferred first."""

    ranking: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranking", tuple(int(x) for x in self.ranking))
        if sorted(self.ranking) != list(range(len(self.ranking))):
            raise ValueError(f"not a permutation of 0..{len(self.ranking) - 1}: {self.ranking}")

    @property
    def m(self) -> int:
        return len(self.ranking)

    @property
    def top(self) -> int:
        return self.ranking[0]

    @property
    def bottom(self) -> int:
        return self.ranking[-1]

    def prefers(self, a: int, b: int) -> bool:
        return self.ranking.index(a) < self.ranking.index(b)

    def relabel(self, pi) -> "LinearOrder":
        """Apply the alternative relabeling a -> pi[a]."""
        return LinearOrder(tuple(pi[x] for x in self.ranking))

    def reverse(self) -> "LinearOrder":
        return LinearOrder(self.ranking[::-1])


@dataclass(frozen=True)
class Profile:
    """One LinearOrder per voter, all over the same alternatives."""

    voters: tuple[LinearOrder, ...]

    def __post_init__(self):
        voters = tuple(v if isinstance(v, LinearOrder) else LinearOrder(tuple(v))
                       for v in self.voters)
        object.__setattr__(self, "voters", voters)
        if not voters:
            raise ValueError("a profile needs at least one voter")
        if len({v.m for v in voters}) != 1:
            raise ValueError("all voters must rank the same alternatives")

    @property
    def n(self) -> int:
        return len(self.voters)

    @property
    def m(self) -> int:
        return self.voters[0].m

    def replace(self, i: int, order: LinearOrder) -> "Profile":
        return Profile(self.voters[:i] + (order,) + self.voters[i + 1:])

    def relabel(self, pi) -> "Profile":
        return Profile(tuple(v.relabel(pi) for v in self.voters))


@dataclass(frozen=True)
class PairwiseColumn:
    """Per-voter preference bits on one ordered pair; bit = 1 means the first
    alternative is preferred."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"bits must be 0/1: {bits}")
        object.__setattr__(self, "bits", bits)

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def index(self) -> int:
        return sum(b << v for v, b in enumerate(self.bits))

    def complement(self) -> "PairwiseColumn":
        return PairwiseColumn(tuple(1 - b for b in self.bits))

    @classmethod
    def from_index(cls, z: int, n: int) -> "PairwiseColumn":
        if not 0 <= z < 1 << n:
            raise ValueError(f"column index {z} out of range for n={n}")
        return cls(tuple(z >> v & 1 for v in range(n)))


@dataclass(frozen=True)
class TernaryVector:
    """Per-voter position codes of the third alternative relative to a pair."""

    digits: tuple[int, ...]

    def __post_init__(self):
        digits = tuple(int(d) for d in self.digits)
        if any(d not in (0, 1, 2) for d in digits):
            raise ValueError(f"digits must be in {{0,1,2}}: {digits}")
        object.__setattr__(self, "digits", digits)

    @property
    def n(self) -> int:
        return len(self.digits)

    @property
    def index(self) -> int:
        return sum(d * 3 ** v for v, d in enumerate(self.digits))

    @classmethod
    def from_index(cls, t: int, n: int) -> "TernaryVector":
        if not 0 <= t < 3 ** n:
            raise ValueError(f"point index {t} out of range for n={n}")
        return cls(tuple(t // 3 ** v % 3 for v in range(n)))


def order_from_index(k: int, m: int = 3) -> LinearOrder:
    """The k-th ranking under lexicographic enumeration of top-first sequences."""
    if not 0 <= k < factorial(m):
        raise ValueError(f"order index {k} out of range for m={m}")
    avail = list(range(m))
    ranking = []
    for v in range(m - 1, -1, -1):
        q, k = divmod(k, factorial(v))
        ranking.append(avail.pop(q))
    return LinearOrder(tuple(ranking))


def order_to_index(order: LinearOrder) -> int:
    """Inverse of order_from_index."""
    ranking = order.ranking if isinstance(order, LinearOrder) else tuple(order)
    avail = sorted(ranking)
    k = 0
    for v, x in enumerate(ranking):
        k += avail.index(x) * factorial(len(ranking) - 1 - v)
        avail.remove(x)
    return k


def profile_to_index(p: Profile) -> int:
    """Mixed-radix profile index, voter 0 least significant."""
    base = factorial(p.m)
    return sum(order_to_index(v) * base ** i for i, v in enumerate(p.voters))


def profile_from_index(idx: int, n: int, m: int = 3) -> Profile:
    base = factorial(m)
    if not 0 <= idx < base ** n:
        raise ValueError(f"profile index {idx} out of range for n={n}, m={m}")
    voters = []
    for _ in range(n):
        idx, k = divmod(idx, base)
        voters.append(order_from_index(k, m))
    return Profile(tuple(voters))


def pairwise_column(p: Profile, a: int, b: int) -> PairwiseColumn:
    """Preference bits of the ordered pair (a, b), one per voter."""
    if a == b:
        raise ValueError("a pairwise column needs two distinct alternatives")
    return PairwiseColumn(tuple(int(v.prefers(a, b)) for v in p.voters))


def decompose(p: Profile, a: int, b: int) -> tuple[PairwiseColumn, TernaryVector]:
    """Split an m=3 profile into its (a, b) column and the third alternative's
    position vector; lossless, see compose."""
    if p.m != 3:
        raise ValueError("the ternary decomposition requires m = 3")
    if a == b:
        raise ValueError("a pairwise column needs two distinct alternatives")
    c = 3 - a - b
    column = pairwise_column(p, a, b)
    ternary = TernaryVector(tuple(v.ranking.index(c) for v in p.voters))
    return column, ternary


def compose(column: PairwiseColumn, ternary: TernaryVector, a: int, b: int) -> Profile:
    """Rebuild the unique m=3 profile with the given (a, b) column and third
    alternative positions."""
    if column.n != ternary.n:
        raise ValueError("column and ternary vector disagree on voter count")
    c = 3 - a - b
    voters = []
    for bit, d in zip(column.bits, ternary.digits):
        pair = [a, b] if bit else [b, a]
        pair.insert(d, c)
        voters.append(LinearOrder(tuple(pair)))
    return Profile(tuple(voters))


# Array kernels used by the metric engines.  Profiles travel as "digit"
# arrays of shape (n, S): one ranking index per voter per profile.

def profile_digits(idx, n: int, m: int = 3) -> np.ndarray:
    """Per-voter ranking indices of each profile index; shape (n, len(idx))."""
    return _tables.index_digits(idx, factorial(m), n)


def digits_to_profile_index(digits, m: int = 3) -> np.ndarray:
    """Inverse of profile_digits."""
    return _tables.digits_index(digits, factorial(m))


def profile_chunks(n: int, m: int = 3, chunk: int = 1 << 18):
    """Yield (lo, hi, digits) blocks covering all (m!)^n profile indices."""
    total = factorial(m) ** n
    for lo in range(0, total, chunk):
        hi = min(lo + chunk, total)
        yield lo, hi, profile_digits(np.arange(lo, hi), n, m)


def split_pair(digits, a: int, b: int) -> tuple[np.ndarray, np.ndarray]:
    """Column indices and ternary point indices of m=3 profiles; both shape (S,)."""
    bits = _tables.pair_bit3(a, b)[digits]
    digs = _tables.third_digit3(a, b)[digits]
    return _tables.digits_index(bits, 2), _tables.digits_index(digs, 3)


def join_pair(z, t, n: int, a: int, b: int) -> np.ndarray:
    """Ranking-digit array of the profiles with column(s) z and ternary points t."""
    t = np.atleast_1d(np.asarray(t, dtype=np.int64))
    z = np.broadcast_to(np.asarray(z, dtype=np.int64), t.shape)
    zbits = _tables.index_digits(z, 2, n)
    tdigs = _tables.index_digits(t, 3, n)
    return _tables.order_of_bit_digit3(a, b)[zbits, tdigs]
