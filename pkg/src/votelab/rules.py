"""Social choice functions: explicit tables, the named rule zoo, and the
distance/structure diagnostics (distance to dictatorships, range spread,
neutrality, anonymity)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from . import _tables, sampling
from .orders import Profile, order_to_index, profile_chunks

EXACT_BUDGET = 10 ** 9


class BudgetError(ValueError):
    """An exact enumeration would exceed the evaluation budget."""


def exact_feasible(n: int, m: int = 3) -> bool:
    """True when full profile enumeration fits the (m!)^n * m! budget."""
    return factorial(m) ** n * factorial(m) <= EXACT_BUDGET


@dataclass(frozen=True, eq=False)
class ScfTable:
    """An explicit SCF: one winning alternative per profile index."""

    n: int
    m: int
    outputs: np.ndarray

    def __post_init__(self):
        out = np.ascontiguousarray(self.outputs, dtype=np.uint8)
        total = factorial(self.m) ** self.n
        if out.shape != (total,):
            raise ValueError(f"need {total} outputs for n={self.n}, m={self.m}, got shape {out.shape}")
        if out.size and int(out.max()) >= self.m:
            raise ValueError("output alternative out of range")
        out.setflags(write=False)
        object.__setattr__(self, "outputs", out)

    @property
    def label(self) -> str:
        return f"table[m={self.m},n={self.n}]"

    def winner(self, profile: Profile) -> int:
        digits = np.array([[order_to_index(v)] for v in profile.voters])
        return int(self.winners_from_digits(digits)[0])

    def winners_from_digits(self, digits) -> np.ndarray:
        digits = np.asarray(digits, dtype=np.int64)
        if digits.shape[0] != self.n:
            raise ValueError(f"table is for n={self.n}, got {digits.shape[0]} voter rows")
        return self.outputs[_tables.digits_index(digits, factorial(self.m))]

    def as_table(self, n: int) -> "ScfTable":
        if n != self.n:
            raise ValueError(f"table is for n={self.n}")
        return self

    def __eq__(self, other):
        return (isinstance(other, ScfTable) and self.n == other.n and self.m == other.m
                and np.array_equal(self.outputs, other.outputs))

    def __ne__(self, other):
        return not self.__eq__(other)


_EVALUATORS = {}
_REQUIRED = {}


def register_rule(name, required=()):
    """Register an evaluator fn(rule, digits) -> winners for ScfRule dispatch."""
    def deco(fn):
        _EVALUATORS[name] = fn
        _REQUIRED[name] = tuple(required)
        return fn
    return deco


class ScfRule:
    """A named rule, evaluable lazily at any voter count.

    Parameters are rule-specific: ``voter`` for dictatorship and
    anti_dictatorship, ``alt`` for constant, ``seed`` for random_table.
    """

    def __init__(self, name: str, m: int = 3, **params):
        if name not in _EVALUATORS:
            raise ValueError(f"unknown rule: {name!r}")
        missing = [k for k in _REQUIRED[name] if k not in params]
        if missing:
            raise ValueError(f"rule {name!r} needs parameters {missing}")
        if name == "constant" and not 0 <= params["alt"] < m:
            raise ValueError(f"constant alternative {params['alt']} out of range for m={m}")
        if name in ("dictatorship", "anti_dictatorship") and params["voter"] < 0:
            raise ValueError("voter index must be nonnegative")
        self.name = name
        self.m = m
        self.params = dict(params)
        self._table_cache = {}

    @property
    def label(self) -> str:
        shown = [f"{k}={v}" for k, v in sorted(self.params.items())
                 if isinstance(v, (int, np.integer))]
        return self.name if not shown else f"{self.name}({','.join(shown)})"

    def __repr__(self):
        return f"ScfRule({self.label}, m={self.m})"

    def winner(self, profile: Profile) -> int:
        digits = np.array([[order_to_index(v)] for v in profile.voters])
        return int(self.winners_from_digits(digits)[0])

    def winners_from_digits(self, digits) -> np.ndarray:
        digits = np.asarray(digits, dtype=np.int64)
        return _EVALUATORS[self.name](self, digits)

    def as_table(self, n: int) -> ScfTable:
        cached = self._table_cache.get(n)
        if cached is None:
            total = factorial(self.m) ** n
            if total * self.m > EXACT_BUDGET:
                raise BudgetError(f"materializing {self.label} at n={n} exceeds the budget")
            if self.name == "random_table":
                rng = np.random.default_rng(self.params["seed"])
                out = rng.integers(0, self.m, size=total, dtype=np.uint8)
            else:
                out = np.empty(total, np.uint8)
                for lo, hi, digits in profile_chunks(n, self.m):
                    out[lo:hi] = self.winners_from_digits(digits)
            cached = self._table_cache[n] = ScfTable(n, self.m, out)
        return cached


@register_rule("dictatorship", ("voter",))
def _eval_dictatorship(rule, digits):
    i = rule.params["voter"]
    if i >= digits.shape[0]:
        raise ValueError(f"dictator index {i} out of range for n={digits.shape[0]}")
    return _tables.perms(rule.m)[digits[i], 0]


@register_rule("anti_dictatorship", ("voter",))
def _eval_anti_dictatorship(rule, digits):
    i = rule.params["voter"]
    if i >= digits.shape[0]:
        raise ValueError(f"dictator index {i} out of range for n={digits.shape[0]}")
    return _tables.perms(rule.m)[digits[i], -1]


@register_rule("constant", ("alt",))
def _eval_constant(rule, digits):
    return np.full(digits.shape[1], rule.params["alt"], dtype=np.uint8)


@register_rule("plurality")
def _eval_plurality(rule, digits):
    m = rule.m
    count = digits.shape[1]
    tops = _tables.perms(m)[:, 0][digits].astype(np.int64)
    offsets = np.arange(count, dtype=np.int64) * m
    counts = np.bincount((tops + offsets).ravel(), minlength=count * m).reshape(count, m)
    return counts.argmax(1)  # argmax takes the first maximum: smallest index wins ties


@register_rule("borda")
def _eval_borda(rule, digits):
    ranks = _tables.rank_in_order(rule.m)
    total = np.zeros((digits.shape[1], rule.m), np.int64)
    for v in range(digits.shape[0]):
        total += ranks[digits[v]]
    # maximal Borda score = minimal rank sum; argmin keeps the smallest index on ties
    return total.argmin(1)


@register_rule("pairwise_majority_fallback")
def _eval_pmf(rule, digits):
    pref = _tables.prefers(rule.m)
    n, count = digits.shape
    wins = np.zeros((count, rule.m, rule.m), np.int32)
    for v in range(n):
        wins += pref[digits[v]]
    beats = 2 * wins > n  # strict majority on each ordered pair
    beats_all = beats.sum(2) == rule.m - 1
    condorcet = beats_all.argmax(1)
    fallback = _tables.perms(rule.m)[digits[0], 0]
    return np.where(beats_all.any(1), condorcet, fallback)


@register_rule("random_table", ("seed",))
def _eval_random_table(rule, digits):
    return rule.as_table(digits.shape[0]).winners_from_digits(digits)


def zoo_make(name: str, m: int = 3, **params) -> ScfRule:
    """Build a zoo rule by name.

    Names: dictatorship(voter), anti_dictatorship(voter), constant(alt),
    plurality, borda, pairwise_majority_fallback, random_table(seed).
    """
    return ScfRule(name, m, **params)


def zoo_rules(n: int, m: int = 3) -> list[ScfRule]:
    """Every parameterized zoo rule instance at the given sizes."""
    rules = [ScfRule("dictatorship", m, voter=i) for i in range(n)]
    rules += [ScfRule("anti_dictatorship", m, voter=i) for i in range(n)]
    rules += [ScfRule("constant", m, alt=a) for a in range(m)]
    rules += [ScfRule("plurality", m), ScfRule("borda", m),
              ScfRule("pairwise_majority_fallback", m)]
    return rules


def resolve_n(scf, n=None) -> int:
    """Voter count of an ScfTable, or the explicit n for a rule."""
    if isinstance(scf, ScfTable):
        if n is not None and n != scf.n:
            raise ValueError(f"table is for n={scf.n}, asked for n={n}")
        return scf.n
    if n is None:
        raise ValueError("n is required when evaluating a rule")
    return int(n)


def _pick_mode(mode: str, n: int, m: int, samples, seed) -> str:
    if mode not in ("auto", "exact", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "auto":
        mode = "exact" if exact_feasible(n, m) else "sampled"
    if mode == "exact" and not exact_feasible(n, m):
        raise BudgetError(f"exact enumeration at n={n}, m={m} exceeds the budget; "
                          f"rerun with samples and a seed")
    if mode == "sampled" and (samples is None or seed is None):
        raise ValueError("sampled mode needs samples and seed")
    return mode


def _diag_counts(scf, which: str, n, mode, samples, seed, workers):
    n = resolve_n(scf, n)
    m = scf.m
    mode = _pick_mode(mode, n, m, samples, seed)
    perms = _tables.perms(m)
    slots = m if which == "elected" else n

    def tally(digits):
        winners = np.asarray(scf.winners_from_digits(digits), dtype=np.int64)
        if which == "elected":
            return np.bincount(winners, minlength=m)
        ref = perms[:, 0] if which == "top" else perms[:, -1]
        return np.array([(winners != ref[digits[i]]).sum() for i in range(n)], dtype=np.int64)

    if mode == "exact":
        counts = np.zeros(slots, np.int64)
        for _, _, digits in profile_chunks(n, m):
            counts += tally(digits)
        return counts, factorial(m) ** n, mode

    def counter(rng, size):
        return tally(rng.integers(0, factorial(m), size=(n, size)))

    counts = sampling.run_chunks(counter, slots, samples, seed, workers=workers)
    return counts, samples, mode


def dist_to_dictatorship(scf, n=None, *, mode="auto", samples=None, seed=None, workers=1):
    """min_i Pr[F(x) != top of voter i] with the argmin voter."""
    counts, total, used = _diag_counts(scf, "top", n, mode, samples, seed, workers)
    i = int(counts.argmin())
    value = Fraction(int(counts[i]), total) if used == "exact" else int(counts[i]) / total
    return value, i


def dist_to_antidictatorship(scf, n=None, *, mode="auto", samples=None, seed=None, workers=1):
    """min_i Pr[F(x) != bottom of voter i] with the argmin voter."""
    counts, total, used = _diag_counts(scf, "bottom", n, mode, samples, seed, workers)
    i = int(counts.argmin())
    value = Fraction(int(counts[i]), total) if used == "exact" else int(counts[i]) / total
    return value, i


def range_min_prob(scf, n=None, *, mode="auto", samples=None, seed=None, workers=1):
    """min_a Pr[F(x) = a] with the argmin alternative."""
    counts, total, used = _diag_counts(scf, "elected", n, mode, samples, seed, workers)
    a = int(counts.argmin())
    value = Fraction(int(counts[a]), total) if used == "exact" else int(counts[a]) / total
    return value, a


def neutrality_counts(scf, n=None, *, mode="auto", samples=None, seed=None, workers=1):
    """(violations, checks) of F(pi o x) = pi(F(x)) over non-identity relabelings."""
    n = resolve_n(scf, n)
    m = scf.m
    mode = _pick_mode(mode, n, m, samples, seed)
    perms = _tables.perms(m).astype(np.int64)
    action = _tables.relabel_action(m)
    nperm = factorial(m)

    def violations(digits):
        winners = np.asarray(scf.winners_from_digits(digits), dtype=np.int64)
        bad = 0
        for q in range(1, nperm):
            relabeled = scf.winners_from_digits(action[q][digits])
            bad += int((np.asarray(relabeled, dtype=np.int64) != perms[q][winners]).sum())
        return np.array([bad], dtype=np.int64)

    if mode == "exact":
        total = factorial(m) ** n
        bad = 0
        for _, _, digits in profile_chunks(n, m):
            bad += int(violations(digits)[0])
        return bad, total * (nperm - 1)

    def counter(rng, size):
        return violations(rng.integers(0, factorial(m), size=(n, size)))

    bad = sampling.run_chunks(counter, 1, samples, seed, workers=workers)
    return int(bad[0]), samples * (nperm - 1)


def anonymity_counts(scf, n=None, *, mode="auto", samples=None, seed=None, workers=1):
    """(violations, checks) of invariance under adjacent voter transpositions."""
    n = resolve_n(scf, n)
    m = scf.m
    mode = _pick_mode(mode, n, m, samples, seed)

    def violations(digits):
        winners = np.asarray(scf.winners_from_digits(digits))
        bad = 0
        for i in range(n - 1):
            swapped = digits.copy()
            swapped[[i, i + 1]] = swapped[[i + 1, i]]
            bad += int((np.asarray(scf.winners_from_digits(swapped)) != winners).sum())
        return np.array([bad], dtype=np.int64)

    if mode == "exact":
        total = factorial(m) ** n
        bad = 0
        for _, _, digits in profile_chunks(n, m):
            bad += int(violations(digits)[0])
        return bad, total * (n - 1)

    def counter(rng, size):
        return violations(rng.integers(0, factorial(m), size=(n, size)))

    bad = sampling.run_chunks(counter, 1, samples, seed, workers=workers)
    return int(bad[0]), samples * (n - 1)


def is_neutral(scf, n=None, **kw) -> bool:
    """True iff no relabeling violation exists (exhaustive or sampled coverage)."""
    bad, _ = neutrality_counts(scf, n, **kw)
    return bad == 0


def is_anonymous(scf, n=None, **kw) -> bool:
    """True iff no voter-swap violation exists (exhaustive or sampled coverage)."""
    bad, _ = anonymity_counts(scf, n, **kw)
    return bad == 0
