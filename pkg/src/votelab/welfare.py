"""Pairwise social welfare functions with independence of irrelevant
alternatives, the SCF <-> GSWF reductions, transitivity and Condorcet-winner
probabilities, distances to the always-transitive families, neutral tensor
constructions, and the cross-size identities they satisfy."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from . import _tables, sampling
from .metrics import (MetricReport, column_stats, exact_report, mab, nab,
                      sampled_report)
from .orders import Profile, order_to_index, profile_chunks
from .rules import (BudgetError, ScfRule, exact_feasible, range_min_prob,
                    register_rule, resolve_n, _pick_mode,
                    dist_to_antidictatorship, dist_to_dictatorship, is_neutral)

PAIRS3 = ((0, 1), (0, 2), (1, 2))


@dataclass(frozen=True, eq=False)
class GswfIia:
    """A pairwise welfare function: one Boolean table per unordered pair.

    ``tables[slot(a, b)][z] = 1`` means a is socially preferred to b when
    column z (bit v = voter v prefers a to b) describes the electorate.
    Independence of irrelevant alternatives holds by representation.
    """

    m: int
    n: int
    tables: np.ndarray

    def __post_init__(self):
        tabs = np.ascontiguousarray(self.tables, dtype=bool)
        want = (len(_tables.pair_list(self.m)), 1 << self.n)
        if tabs.shape != want:
            raise ValueError(f"need table shape {want}, got {tabs.shape}")
        tabs.setflags(write=False)
        object.__setattr__(self, "tables", tabs)

    def pairwise(self, a: int, b: int) -> np.ndarray:
        """Output bits over all 2^n columns of the ordered pair (a, b); the
        (b, a) query is the complement at the complemented column."""
        if a == b or not (0 <= a < self.m and 0 <= b < self.m):
            raise ValueError(f"bad pair ({a}, {b}) for m={self.m}")
        if a < b:
            return self.tables[_tables.pair_slot(self.m)[(a, b)]]
        comp = (1 << self.n) - 1 ^ np.arange(1 << self.n)
        return ~self.tables[_tables.pair_slot(self.m)[(b, a)]][comp]

    def __eq__(self, other):
        return (isinstance(other, GswfIia) and self.m == other.m
                and self.n == other.n and np.array_equal(self.tables, other.tables))

    def __ne__(self, other):
        return not self.__eq__(other)


def is_odd(g) -> bool:
    """True iff g(complement(z)) = 1 - g(z) for every column z."""
    g = np.asarray(g, dtype=bool)
    size = g.shape[0]
    if g.ndim != 1 or size & (size - 1):
        raise ValueError("g must be a table over 2^n columns")
    comp = (size - 1) ^ np.arange(size)
    return bool((g[comp] == ~g).all())


@dataclass(frozen=True, eq=False)
class NeutralGswf:
    """A fully neutral GSWF: every pair follows one odd Boolean function."""

    m: int
    g: np.ndarray

    def __post_init__(self):
        g = np.ascontiguousarray(self.g, dtype=bool)
        if not is_odd(g):
            raise ValueError("the pairwise rule of a neutral GSWF must be odd")
        g.setflags(write=False)
        object.__setattr__(self, "g", g)

    @property
    def n(self) -> int:
        return self.g.shape[0].bit_length() - 1

    def to_gswf(self) -> GswfIia:
        pairs = len(_tables.pair_list(self.m))
        return GswfIia(self.m, self.n, np.tile(self.g, (pairs, 1)))


def as_gswf(G) -> GswfIia:
    if isinstance(G, NeutralGswf):
        return G.to_gswf()
    if isinstance(G, GswfIia):
        return G
    raise TypeError(f"not a GSWF: {type(G).__name__}")


def neutral_tensor(g, m: int) -> NeutralGswf:
    """All C(m,2) pairwise tables equal to the odd function g."""
    if isinstance(g, NeutralGswf):
        g = g.g
    return NeutralGswf(m, np.asarray(g, dtype=bool))


def majority_g(n: int) -> np.ndarray:
    """Simple-majority bits over all columns; n must be odd."""
    if n % 2 == 0:
        raise ValueError("majority needs an odd voter count")
    z = np.arange(1 << n)
    ones = np.zeros(1 << n, np.int64)
    for v in range(n):
        ones += z >> v & 1
    return 2 * ones > n


def random_odd_g(n: int, seed) -> np.ndarray:
    """A seeded uniform odd Boolean table over 2^n columns."""
    size = 1 << n
    comp = (size - 1) ^ np.arange(size)
    lower = np.arange(size) < comp
    bits = np.random.default_rng(seed).integers(0, 2, size=size).astype(bool)
    return np.where(lower, bits, ~bits[comp])


def random_iia_gswf(n: int, m: int, seed) -> GswfIia:
    """A seeded uniform IIA GSWF (independent random pairwise tables)."""
    pairs = len(_tables.pair_list(m))
    tabs = np.random.default_rng(seed).integers(0, 2, size=(pairs, 1 << n)).astype(bool)
    return GswfIia(m, n, tabs)


def dictator_swf(i: int, n: int, m: int = 3) -> GswfIia:
    """Every pairwise output copies voter i's preference bit."""
    if not 0 <= i < n:
        raise ValueError(f"voter {i} out of range for n={n}")
    bit = (np.arange(1 << n) >> i & 1).astype(bool)
    return neutral_tensor(bit, m).to_gswf()


def anti_dictator_swf(i: int, n: int, m: int = 3) -> GswfIia:
    """Every pairwise output negates voter i's preference bit."""
    if not 0 <= i < n:
        raise ValueError(f"voter {i} out of range for n={n}")
    bit = (np.arange(1 << n) >> i & 1).astype(bool)
    return neutral_tensor(~bit, m).to_gswf()


def is_neutral_gswf(G) -> bool:
    """True iff relabeling alternatives commutes with the output: all pair
    tables equal one odd function."""
    G = as_gswf(G)
    first = G.tables[0]
    if any(not np.array_equal(t, first) for t in G.tables[1:]):
        return False
    return is_odd(first)


def restrict_gswf(G, subset) -> GswfIia:
    """Keep only the pairwise tables inside a subset of alternatives."""
    G = as_gswf(G)
    subset = sorted(set(int(a) for a in subset))
    if len(subset) < 2:
        raise ValueError("a restriction needs at least two alternatives")
    if subset[0] < 0 or subset[-1] >= G.m:
        raise ValueError("alternative out of range")
    slot = _tables.pair_slot(G.m)
    rows = [slot[(subset[i], subset[j])]
            for i in range(len(subset)) for j in range(i + 1, len(subset))]
    return GswfIia(len(subset), G.n, G.tables[rows])


# --- evaluation engines ------------------------------------------------

def _pair_z(digits, a: int, b: int, m: int) -> np.ndarray:
    """Column indices of the (a, b) pair for every profile digit column."""
    return _tables.digits_index(_tables.pair_bit(m, a, b)[digits], 2)


def _triple3(G: GswfIia, digits):
    t01 = G.tables[0][_pair_z(digits, 0, 1, 3)]
    t02 = G.tables[1][_pair_z(digits, 0, 2, 3)]
    t12 = G.tables[2][_pair_z(digits, 1, 2, 3)]
    return t01, t02, t12


def _cyclic_mask(G: GswfIia, digits) -> np.ndarray:
    t01, t02, t12 = _triple3(G, digits)
    return (t01 & ~t02 & t12) | (~t01 & t02 & ~t12)


def _wins(G: GswfIia, digits) -> np.ndarray:
    """Per-alternative counts of pairwise victories; shape (m, S)."""
    wins = np.zeros((G.m, digits.shape[1]), np.int8)
    for slot, (a, b) in enumerate(_tables.pair_list(G.m)):
        bits = G.tables[slot][_pair_z(digits, a, b, G.m)]
        wins[a] += bits
        wins[b] += ~bits
    return wins


def nt(G, *, mode="auto", samples=None, seed=None, workers=1) -> MetricReport:
    """Probability of a cyclic output triple (m = 3 only)."""
    G = as_gswf(G)
    if G.m != 3:
        raise ValueError("cyclicity is a three-alternative notion; use ngcw")
    n = G.n
    mode = _pick_mode(mode, n, 3, samples, seed)

    if mode == "exact":
        count = 0
        for _, _, digits in profile_chunks(n):
            count += int(_cyclic_mask(G, digits).sum())
        return exact_report("nt", (), count, 6 ** n)

    def counter(rng, size):
        digits = rng.integers(0, 6, size=(n, size))
        return np.array([_cyclic_mask(G, digits).sum()], dtype=np.int64)

    count = int(sampling.run_chunks(counter, 1, samples, seed, workers=workers)[0])
    half = sampling.wilson_half_width(count, samples)
    return sampled_report("nt", (), count, samples, half, samples, seed)


def ngcw(G, *, mode="auto", samples=None, seed=None, workers=1) -> MetricReport:
    """Probability that no alternative beats every other."""
    G = as_gswf(G)
    n, m = G.n, G.m
    mode = _pick_mode(mode, n, m, samples, seed)

    if mode == "exact":
        count = 0
        for _, _, digits in profile_chunks(n, m):
            count += int((_wins(G, digits).max(0) < m - 1).sum())
        return exact_report("ngcw", (), count, factorial(m) ** n)

    def counter(rng, size):
        digits = rng.integers(0, factorial(m), size=(n, size))
        return np.array([(_wins(G, digits).max(0) < m - 1).sum()], dtype=np.int64)

    count = int(sampling.run_chunks(counter, 1, samples, seed, workers=workers)[0])
    half = sampling.wilson_half_width(count, samples)
    return sampled_report("ngcw", (), count, samples, half, samples, seed)


def gcw(G, **kw) -> MetricReport:
    """Probability that a generalized Condorcet winner exists (1 - ngcw)."""
    r = ngcw(G, **kw)
    if r.mode == "exact":
        return exact_report("gcw", (), r.den - r.num, r.den)
    return sampled_report("gcw", (), r.samples - r.num, r.samples, r.ci95,
                          r.samples, r.seed)


def gcw_winner_at(G, profile: Profile):
    """The unique alternative beating all others at one profile, or None."""
    G = as_gswf(G)
    digits = np.array([[order_to_index(v)] for v in profile.voters])
    if digits.shape[0] != G.n:
        raise ValueError(f"profile has {digits.shape[0]} voters, G expects {G.n}")
    wins = _wins(G, digits)[:, 0]
    best = int(wins.argmax())
    return best if wins[best] == G.m - 1 else None


# --- the two constructions ---------------------------------------------

def gswf_from_scf(scf, tie_voter: int = 0, n=None) -> GswfIia:
    """Per pair and column, prefer the alternative elected by more
    completions; break exact ties with the tie voter's column bit."""
    n = resolve_n(scf, n)
    if scf.m != 3:
        raise ValueError("the construction is defined for m = 3")
    if not 0 <= tie_voter < n:
        raise ValueError(f"tie voter {tie_voter} out of range for n={n}")
    tie = (np.arange(1 << n) >> tie_voter & 1).astype(bool)
    tabs = np.empty((3, 1 << n), bool)
    for slot, (a, b) in enumerate(PAIRS3):
        st = column_stats(scf, a, b, n)
        tabs[slot] = (st.count_a > st.count_b) | ((st.count_a == st.count_b) & tie)
    return GswfIia(3, n, tabs)


@register_rule("gswf_winner", ("gswf", "fallback_voter"))
def _eval_gswf_winner(rule, digits):
    G = rule.params["gswf"]
    fallback = rule.params["fallback_voter"]
    if digits.shape[0] != G.n:
        raise ValueError(f"G expects n={G.n}, got {digits.shape[0]} voter rows")
    wins = _wins(G, digits)
    best = wins.argmax(0)
    tops = _tables.perms(G.m)[digits[fallback], 0]
    return np.where(wins.max(0) == G.m - 1, best, tops)


def scf_from_gswf(G, fallback_voter: int = 0) -> ScfRule:
    """The SCF electing the generalized Condorcet winner when it exists,
    else the fallback voter's top choice."""
    G = as_gswf(G)
    if G.m != 3:
        raise ValueError("the converse construction is defined for m = 3")
    if not 0 <= fallback_voter < G.n:
        raise ValueError(f"fallback voter {fallback_voter} out of range for n={G.n}")
    return ScfRule("gswf_winner", G.m, gswf=G, fallback_voter=fallback_voter)


# --- distances ---------------------------------------------------------

def dist_dict2(g):
    """Distance of a Boolean table to the nearest (anti-)dictator bit, with
    the witness (kind, voter)."""
    if isinstance(g, NeutralGswf):
        g = g.g
    g = np.asarray(g, dtype=bool)
    size = g.shape[0]
    if g.ndim != 1 or size & (size - 1):
        raise ValueError("g must be a table over 2^n columns")
    n = size.bit_length() - 1
    best = None
    for i in range(n):
        bit = (np.arange(size) >> i & 1).astype(bool)
        for kind, bad in (("dictator", int((g != bit).sum())),
                          ("anti_dictator", int((g == bit).sum()))):
            cand = (Fraction(bad, size), (kind, i))
            if best is None or cand[0] < best[0]:
                best = cand
    return best


@dataclass(frozen=True, eq=False)
class TrMember:
    """A member of the always-transitive family: a dictator, an
    anti-dictator, or a function fixing one alternative at the top or the
    bottom with a free table h on the remaining pair."""

    kind: str
    voter: int | None = None
    alt: int | None = None
    free_pair: tuple[int, int] | None = None
    h: np.ndarray | None = None

    @property
    def label(self) -> str:
        if self.kind in ("dictator", "anti_dictator"):
            return f"{self.kind}({self.voter})"
        return f"{self.kind}({self.alt})"


_TOP_FIXED = {0: (((0, 1), 1), ((0, 2), 1)), 1: (((0, 1), 0), ((1, 2), 1)),
              2: (((0, 2), 0), ((1, 2), 0))}
_BOTTOM_FIXED = {0: (((0, 1), 0), ((0, 2), 0)), 1: (((0, 1), 1), ((1, 2), 0)),
                 2: (((0, 2), 1), ((1, 2), 1))}


def _free_pair(alt: int) -> tuple[int, int]:
    others = [x for x in range(3) if x != alt]
    return (others[0], others[1])


def tr_member_tables(member: TrMember, n: int) -> GswfIia:
    """The explicit pairwise tables of a transitive-family member."""
    size = 1 << n
    if member.kind in ("dictator", "anti_dictator"):
        bit = (np.arange(size) >> member.voter & 1).astype(bool)
        g = bit if member.kind == "dictator" else ~bit
        return neutral_tensor(g, 3).to_gswf()
    fixed = _TOP_FIXED if member.kind == "top_fixed" else _BOTTOM_FIXED
    tabs = np.empty((3, size), bool)
    slot = _tables.pair_slot(3)
    for pair, value in fixed[member.alt]:
        tabs[slot[pair]] = bool(value)
    tabs[slot[member.free_pair]] = np.asarray(member.h, dtype=bool)
    return GswfIia(3, n, tabs)


def _tr3_agreement_masks(G: GswfIia, digits):
    """Per-candidate agreement masks in fixed scan order; the free pair of a
    top/bottom candidate agrees for free by choosing h = G's own table."""
    t01, t02, t12 = _triple3(G, digits)
    n = digits.shape[0]
    cands = []
    for i in range(n):
        b01 = _tables.pair_bit(3, 0, 1)[digits[i]].astype(bool)
        b02 = _tables.pair_bit(3, 0, 2)[digits[i]].astype(bool)
        b12 = _tables.pair_bit(3, 1, 2)[digits[i]].astype(bool)
        cands.append((TrMember("dictator", voter=i),
                      (t01 == b01) & (t02 == b02) & (t12 == b12)))
        cands.append((TrMember("anti_dictator", voter=i),
                      (t01 != b01) & (t02 != b02) & (t12 != b12)))
    top = {0: t01 & t02, 1: ~t01 & t12, 2: ~t02 & ~t12}
    bottom = {0: ~t01 & ~t02, 1: t01 & ~t12, 2: t02 & t12}
    slot = _tables.pair_slot(3)
    for kind, masks in (("top_fixed", top), ("bottom_fixed", bottom)):
        for alt in range(3):
            free = _free_pair(alt)
            member = TrMember(kind, alt=alt, free_pair=free,
                              h=G.tables[slot[free]].copy())
            cands.append((member, masks[alt]))
    return cands


def dist_tr3(G):
    """Distance (triple-level disagreement probability) to the nearest
    always-transitive member, with the minimizer.

    The anti-dictator candidate requires all three output bits flipped; a
    top-fixed (bottom-fixed) candidate requires only its two constrained
    pairs to favor (disfavor) the fixed alternative, because its free-pair
    table may be chosen pointwise equal to G's own."""
    G = as_gswf(G)
    if G.m != 3:
        raise ValueError("the transitive family search is defined for m = 3")
    n = G.n
    if not exact_feasible(n, 3):
        raise BudgetError(f"transitive-family search at n={n} exceeds the budget")
    total = 6 ** n
    members, agrees = None, None
    for _, _, digits in profile_chunks(n):
        cands = _tr3_agreement_masks(G, digits)
        if members is None:
            members = [c[0] for c in cands]
            agrees = np.zeros(len(cands), np.int64)
        agrees += np.array([int(mask.sum()) for _, mask in cands])
    best = int(agrees.argmax())  # first maximum: deterministic scan order
    return Fraction(total - int(agrees[best]), total), members[best]


def tr3_members(n: int):
    """Every member of the transitive family at m = 3: 2n (anti-)dictators
    plus all top/bottom-fixed functions over all 2^(2^n) free tables."""
    for i in range(n):
        yield TrMember("dictator", voter=i)
        yield TrMember("anti_dictator", voter=i)
    size = 1 << n
    for kind in ("top_fixed", "bottom_fixed"):
        for alt in range(3):
            free = _free_pair(alt)
            for code in range(1 << size):
                h = (code >> np.arange(size) & 1).astype(bool)
                yield TrMember(kind, alt=alt, free_pair=free, h=h)


def gswf_disagreement(G, H, granularity: str = "triple") -> Fraction:
    """Disagreement probability of two GSWFs over uniform profiles: the
    chance the full output triple differs, or the mean per-pair bit
    disagreement."""
    G, H = as_gswf(G), as_gswf(H)
    if (G.m, G.n) != (H.m, H.n):
        raise ValueError("GSWFs have different sizes")
    if granularity not in ("triple", "bits"):
        raise ValueError("granularity is 'triple' or 'bits'")
    n, m = G.n, G.m
    if not exact_feasible(n, m):
        raise BudgetError("disagreement enumeration exceeds the budget")
    pairs = _tables.pair_list(m)
    count = 0
    for _, _, digits in profile_chunks(n, m):
        diff = np.zeros(digits.shape[1], np.int64)
        for slot, (a, b) in enumerate(pairs):
            z = _pair_z(digits, a, b, m)
            diff += G.tables[slot][z] != H.tables[slot][z]
        count += int((diff > 0).sum()) if granularity == "triple" else int(diff.sum())
    den = factorial(m) ** n * (1 if granularity == "triple" else len(pairs))
    return Fraction(count, den)


def dist_tr3_bruteforce(G):
    """Full minimization over every transitive-family member; exponential in
    2^n, intended as the n <= 3 cross-check of dist_tr3."""
    G = as_gswf(G)
    if G.m != 3:
        raise ValueError("the transitive family search is defined for m = 3")
    n = G.n
    if n > 3:
        raise BudgetError("brute force enumerates all free tables; n <= 3 only")
    digits = next(profile_chunks(n))[2]
    t01, t02, t12 = (t.copy() for t in _triple3(G, digits))
    z01 = _pair_z(digits, 0, 1, 3)
    z02 = _pair_z(digits, 0, 2, 3)
    z12 = _pair_z(digits, 1, 2, 3)
    total = 6 ** n
    best = None
    for member in tr3_members(n):
        tabs = tr_member_tables(member, n).tables
        agree = int(((tabs[0][z01] == t01) & (tabs[1][z02] == t02)
                     & (tabs[2][z12] == t12)).sum())
        if best is None or agree > best[0]:
            best = (agree, member)
    return Fraction(total - best[0], total), best[1]


# --- identities across alternative counts ------------------------------

def _block_no_gcw(g: np.ndarray, digits, block, m: int) -> np.ndarray:
    """No-GCW mask of the neutral-tensor restriction to one block."""
    wins = np.zeros((len(block), digits.shape[1]), np.int8)
    for i in range(len(block)):
        for j in range(i + 1, len(block)):
            bits = g[_pair_z(digits, block[i], block[j], m)]
            wins[i] += bits
            wins[j] += ~bits
    return wins.max(0) < len(block) - 1


@dataclass(frozen=True)
class CompositionReport:
    """Joint no-GCW probability over two disjoint alternative blocks versus
    the product of the per-block probabilities."""

    m1: int
    m2: int
    joint: MetricReport
    left: MetricReport
    right: MetricReport
    gap: float
    tol: float
    holds: bool


def check_composition(g, m1: int = 3, m2: int = 3, *, mode="auto",
                      samples=None, seed=None, workers=1) -> CompositionReport:
    """Verify independence of the no-GCW events of the first m1 and last m2
    alternatives under the neutral tensor of g."""
    tensor = neutral_tensor(g, m1 + m2)
    n = tensor.n
    m = m1 + m2
    blocks = (tuple(range(m1)), tuple(range(m1, m)))
    left = ngcw(restrict_gswf(tensor, blocks[0]))
    right = ngcw(restrict_gswf(tensor, blocks[1]))
    mode = _pick_mode(mode, n, m, samples, seed)
    gtab = tensor.g

    if mode == "exact":
        count = 0
        for _, _, digits in profile_chunks(n, m):
            both = (_block_no_gcw(gtab, digits, blocks[0], m)
                    & _block_no_gcw(gtab, digits, blocks[1], m))
            count += int(both.sum())
        joint = exact_report("ngcw_joint", (), count, factorial(m) ** n)
        product = left.fraction * right.fraction
        holds = joint.fraction == product
        gap = abs(joint.value - float(product))
        return CompositionReport(m1, m2, joint, left, right, gap, 0.0, holds)

    def counter(rng, size):
        digits = rng.integers(0, factorial(m), size=(n, size))
        both = (_block_no_gcw(gtab, digits, blocks[0], m)
                & _block_no_gcw(gtab, digits, blocks[1], m))
        return np.array([both.sum()], dtype=np.int64)

    count = int(sampling.run_chunks(counter, 1, samples, seed, workers=workers)[0])
    half = sampling.wilson_half_width(count, samples)
    joint = sampled_report("ngcw_joint", (), count, samples, half, samples, seed)
    product = float(left.fraction * right.fraction)
    gap = abs(joint.value - product)
    tol = 3.0 * (half / sampling.Z95)
    return CompositionReport(m1, m2, joint, left, right, gap, tol, gap <= tol)


def _se(report: MetricReport) -> float:
    return 0.0 if report.mode == "exact" else report.ci95 / sampling.Z95


@dataclass(frozen=True)
class IdentityReport:
    """The two cross-size identities of a neutral tensor plus the block
    composition check.

    In GCW form the identities read GCW_4 = 2 GCW_3 - 1 and
    GCW_5 = GCW_6 / 3 + 5 GCW_3 / 3 - 1; both are stated here in the
    equivalent no-GCW form (ngcw_4 = 2 ngcw_3, ngcw_5 = ngcw_6 / 3 +
    5 ngcw_3 / 3)."""

    ngcw3: MetricReport
    ngcw4: MetricReport
    four_gap: float
    four_tol: float
    four_holds: bool
    four_exact: bool
    ngcw5: MetricReport
    ngcw6: MetricReport
    five_gap: float
    five_tol: float
    five_holds: bool
    composition: CompositionReport

    @property
    def holds(self) -> bool:
        return self.four_holds and self.five_holds and self.composition.holds


def check_identities(g, *, mode="auto", samples=None, seed=None,
                     workers=1) -> IdentityReport:
    """Evaluate the tensor of g at m = 3..6 and verify the cross-size
    identities, exactly where the budget allows."""
    reports = {}
    for m in (3, 4, 5, 6):
        reports[m] = ngcw(neutral_tensor(g, m), mode=mode, samples=samples,
                          seed=seed, workers=workers)
    r3, r4, r5, r6 = (reports[m] for m in (3, 4, 5, 6))

    four_exact = r3.mode == "exact" and r4.mode == "exact"
    if four_exact:
        four_holds = r4.fraction == 2 * r3.fraction
        four_gap = abs(r4.value - 2 * r3.value)
        four_tol = 0.0
    else:
        four_gap = abs(r4.value - 2 * r3.value)
        four_tol = 3.0 * (_se(r4) ** 2 + 4 * _se(r3) ** 2) ** 0.5
        four_holds = four_gap <= four_tol

    if all(r.mode == "exact" for r in (r3, r5, r6)):
        five_holds = r5.fraction == r6.fraction / 3 + 5 * r3.fraction / 3
        five_gap = abs(r5.value - (r6.value / 3 + 5 * r3.value / 3))
        five_tol = 0.0
    else:
        five_gap = abs(r5.value - (r6.value / 3 + 5 * r3.value / 3))
        five_tol = 3.0 * (_se(r5) ** 2 + (_se(r6) / 3) ** 2
                          + (5 * _se(r3) / 3) ** 2) ** 0.5
        five_holds = five_gap <= five_tol

    comp = check_composition(g, 3, 3, mode=mode, samples=samples, seed=seed,
                             workers=workers)
    return IdentityReport(r3, r4, four_gap, four_tol, four_holds, four_exact,
                          r5, r6, five_gap, five_tol, five_holds, comp)


# --- the full reduction chain ------------------------------------------

@dataclass(frozen=True)
class ChainReport:
    """Exact verdicts of the manipulation -> transitivity reduction chain
    for one SCF: NT(G) <= sum of minority preferences <= 3 sqrt(eps1), and
    dist(G, transitive family) >= eps2 - 3 sqrt(eps1), with square roots
    compared by squaring."""

    eps1: Fraction
    eps2: Fraction
    dist_dict: Fraction
    dist_anti: Fraction
    range_min: Fraction
    mab_reports: tuple[MetricReport, ...]
    nab_reports: tuple[MetricReport, ...]
    nt_report: MetricReport
    dist: Fraction
    member: TrMember
    g_is_neutral: bool
    scf_is_neutral: bool
    nt_le_sum_nab: bool
    cauchy_each: bool
    sum_nab_sq_le_9eps1: bool
    dist_bound: bool

    @property
    def holds(self) -> bool:
        return (self.nt_le_sum_nab and self.cauchy_each
                and self.sum_nab_sq_le_9eps1 and self.dist_bound)


def check_reduction_chain(scf, tie_voter: int = 0, n=None) -> ChainReport:
    """Build G from the SCF and verify the chain in exact arithmetic."""
    n = resolve_n(scf, n)
    mab_reports = tuple(mab(scf, a, b, n) for a, b in PAIRS3)
    nab_reports = tuple(nab(scf, a, b, n) for a, b in PAIRS3)
    eps1 = max(r.fraction for r in mab_reports)
    dd, _ = dist_to_dictatorship(scf, n)
    da, _ = dist_to_antidictatorship(scf, n)
    rm, _ = range_min_prob(scf, n)
    eps2 = min(dd, da, rm)
    G = gswf_from_scf(scf, tie_voter, n)
    nt_report = nt(G)
    dist, member = dist_tr3(G)
    sum_nab = sum(r.fraction for r in nab_reports)
    nt_le = nt_report.fraction <= sum_nab
    cauchy = all(r_n.fraction ** 2 <= r_m.fraction
                 for r_n, r_m in zip(nab_reports, mab_reports))
    sum_sq = sum_nab ** 2 <= 9 * eps1
    dist_ok = dist >= eps2 or 9 * eps1 >= (eps2 - dist) ** 2
    return ChainReport(eps1, eps2, dd, da, rm, mab_reports, nab_reports,
                       nt_report, dist, member,
                       is_neutral_gswf(G), is_neutral(scf, n),
                       nt_le, cauchy, sum_sq, dist_ok)
