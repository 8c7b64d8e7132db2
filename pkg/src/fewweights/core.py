"""Domain types and base-power arithmetic shared by every other module.

The central objects are knapsack items and instances with arbitrary-precision
natural weights and profits, plus the restricted subset-sum universe: numbers
that are sums of exactly three powers of ``3n + 1``.  Everything here is an
exact integer; there is no floating point anywhere in this package.  All
types are immutable after construction and all operations are pure
functions, so values can be shared freely across parallel workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

__all__ = [
    "Error",
    "SchemaError",
    "InvariantError",
    "GuardError",
    "Encoding",
    "Quadratization",
    "Index",
    "Label",
    "Item",
    "KnapsackInstance",
    "SubsetSumInstance",
    "RestrictedSubsetSumInstance",
    "X3CInstance",
    "SolverResult",
    "restricted_target",
    "membership_in_restricted_universe",
    "enumerate_restricted_universe",
    "restricted_universe_size",
    "digit_solutions",
]


class Error(Exception):
    """Base error carrying a stable machine-readable code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class SchemaError(Error):
    """Malformed external input (wrong JSON shape, bad decimal string, ...)."""


class InvariantError(Error):
    """Structurally well-formed value violating a type invariant."""


class GuardError(Error):
    """A desk-scale enumeration or budget guard was exceeded."""


# ---------------------------------------------------------------------------
# Item provenance labels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Encoding:
    """Item carrying one input number: ``instance`` selects which input,
    ``position`` the 0-based slot inside it."""

    instance: int
    position: int


@dataclass(frozen=True)
class Quadratization:
    """Item paying part of the quadratic profit compensation.

    ``bits`` is one of (1,0), (0,1), (1,1) and records which of the two index
    bits ``k <= l`` the item stands for; the diagonal items have k == l and
    bits (1, 1).
    """

    bits: tuple[int, int]
    k: int
    l: int


@dataclass(frozen=True)
class Index:
    """Item selecting the value ``bit`` for binary position ``k`` of the
    chosen input index."""

    bit: int
    k: int


Label = Encoding | Quadratization | Index  # None means a plain, unlabeled item


# ---------------------------------------------------------------------------
# Problem instances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Item:
    weight: int
    profit: int
    label: Label | None = None

    def __post_init__(self):
        if not isinstance(self.weight, int) or isinstance(self.weight, bool):
            raise InvariantError("item.weight", "item weight must be an int")
        if not isinstance(self.profit, int) or isinstance(self.profit, bool):
            raise InvariantError("item.profit", "item profit must be an int")
        if self.weight < 0:
            raise InvariantError("item.weight", f"negative weight {self.weight}")
        if self.profit < 0:
            raise InvariantError("item.profit", f"negative profit {self.profit}")


@dataclass(frozen=True)
class KnapsackInstance:
    """Items plus a capacity bound and a profit target, both inclusive."""

    items: tuple[Item, ...]
    capacity: int
    target: int

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        if self.capacity < 0:
            raise InvariantError("knapsack.capacity", "capacity must be a natural")
        if self.target < 0:
            raise InvariantError("knapsack.target", "target must be a natural")

    def subset_weight(self, indices) -> int:
        return sum(self.items[i].weight for i in indices)

    def subset_profit(self, indices) -> int:
        return sum(self.items[i].profit for i in indices)


@dataclass(frozen=True)
class SubsetSumInstance:
    numbers: tuple[int, ...]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "numbers", tuple(self.numbers))
        if any(a < 0 for a in self.numbers):
            raise InvariantError("subsetsum.numbers", "numbers must be naturals")
        if self.target < 0:
            raise InvariantError("subsetsum.target", "target must be a natural")


@dataclass(frozen=True)
class RestrictedSubsetSumInstance:
    """A multiset of exactly ``3n`` universe members summing to three times the
    size-``n`` target.  Duplicates are allowed; order is preserved."""

    n: int
    numbers: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "numbers", tuple(self.numbers))
        if self.n < 1:
            raise InvariantError("rss.n", "size parameter must be >= 1")
        if len(self.numbers) != 3 * self.n:
            raise InvariantError(
                "rss.count",
                f"expected {3 * self.n} numbers, got {len(self.numbers)}",
            )
        for a in self.numbers:
            ok, _ = membership_in_restricted_universe(a, self.n)
            if not ok:
                raise InvariantError(
                    "rss.member", f"{a} is not in the size-{self.n} universe"
                )
        total = sum(self.numbers)
        expected = 3 * restricted_target(self.n)
        if total != expected:
            raise InvariantError(
                "rss.sum", f"numbers sum to {total}, expected {expected}"
            )


@dataclass(frozen=True)
class X3CInstance:
    """Exact cover by 3-sets, restricted so that each element of ``{1..3n}``
    occurs in exactly three triples (hence exactly ``3n`` triples)."""

    n: int
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvariantError("x3c.n", "size parameter must be >= 1")
        canon = []
        for t in self.triples:
            t = tuple(sorted(t))
            if len(t) != 3 or len(set(t)) != 3:
                raise InvariantError("x3c.triple", f"{t} is not a 3-element set")
            if not all(1 <= j <= 3 * self.n for j in t):
                raise InvariantError(
                    "x3c.element", f"{t} has elements outside 1..{3 * self.n}"
                )
            canon.append(t)
        object.__setattr__(self, "triples", tuple(canon))
        counts = {j: 0 for j in range(1, 3 * self.n + 1)}
        for t in self.triples:
            for j in t:
                counts[j] += 1
        bad = {j: c for j, c in counts.items() if c != 3}
        if bad:
            raise InvariantError(
                "x3c.multiplicity",
                f"elements must occur exactly 3 times, offenders: {bad}",
            )


@dataclass(frozen=True)
class SolverResult:
    """Outcome of an exact decision.  ``chosen`` holds item indices and the
    achieved totals are recomputable from it; ``assignment`` is used by the
    grouped solver instead of item indices."""

    feasible: bool
    chosen: frozenset[int] | None = None
    achieved_weight: int | None = None
    achieved_profit: int | None = None
    assignment: tuple[int, ...] | None = None


# ---------------------------------------------------------------------------
# Restricted universe arithmetic
# ---------------------------------------------------------------------------

_UNIVERSE_GUARD = 10**4


def restricted_target(n: int) -> int:
    """Common target for all size-``n`` restricted instances: the sum of
    ``(3n+1)**j`` over ``j = 1..3n``.  Always even."""
    if n < 1:
        raise InvariantError("universe.n", "size parameter must be >= 1")
    base = 3 * n + 1
    return sum(base**j for j in range(1, 3 * n + 1))


def membership_in_restricted_universe(a: int, n: int):
    """Decide whether ``a`` is a sum of exactly three base powers with
    exponents in ``1..3n`` (repeats allowed).

    Returns ``(True, (j1, j2, j3))`` with ascending witness exponents, or
    ``(False, None)``.  Decided via the base-``3n+1`` digit expansion: member
    iff digit 0 is zero, no digit exceeds 3, digits sum to 3, and no digit
    sits beyond position ``3n``.
    """
    if n < 1:
        raise InvariantError("universe.n", "size parameter must be >= 1")
    if a <= 0:
        return False, None
    base = 3 * n + 1
    digits = []
    v = a
    while v:
        v, d = divmod(v, base)
        digits.append(d)
    if len(digits) > 3 * n + 1 or digits[0] != 0:
        return False, None
    if any(d > 3 for d in digits) or sum(digits) != 3:
        return False, None
    witness = []
    for pos, d in enumerate(digits):
        witness.extend([pos] * d)
    return True, tuple(witness)


def restricted_universe_size(n: int) -> int:
    """Number of distinct universe members: multisets of three exponents out
    of ``3n``, i.e. ``(3n)(3n+1)(3n+2)/6``."""
    m = 3 * n
    return m * (m + 1) * (m + 2) // 6


def enumerate_restricted_universe(n: int) -> list[int]:
    """All distinct universe members for size ``n``, ascending."""
    if n < 1:
        raise InvariantError("universe.n", "size parameter must be >= 1")
    if n > _UNIVERSE_GUARD:
        raise GuardError("universe.enumerate", f"n={n} exceeds guard {_UNIVERSE_GUARD}")
    base = 3 * n + 1
    powers = [base**j for j in range(1, 3 * n + 1)]
    values = {
        p1 + p2 + p3 for p1, p2, p3 in combinations_with_replacement(powers, 3)
    }
    out = sorted(values)
    assert len(out) == restricted_universe_size(n)
    return out


_DIGIT_GUARD = 10**7


def digit_solutions(value: int, base: int, length: int) -> list[tuple[int, ...]]:
    """All vectors ``(x_0..x_{length-1})`` with every ``x_i`` in ``0..base``
    and ``sum x_i * base**i == value``, in lexicographic order.

    The enumeration is complete; pruning only skips prefixes that provably
    cannot reach ``value``.  For ``value = sum_{i<length} base**i`` the unique
    solution is the all-ones vector.
    """
    if base < 2:
        raise InvariantError("digits.base", "base must be >= 2")
    if length < 1:
        raise InvariantError("digits.length", "length must be >= 1")
    if value < 0:
        raise InvariantError("digits.value", "value must be a natural")
    if (base + 1) ** length > _DIGIT_GUARD:
        raise GuardError(
            "digits.space",
            f"(base+1)**length = {(base + 1) ** length} exceeds guard {_DIGIT_GUARD}",
        )
    powers = [base**i for i in range(length)]
    # suffix_max[i] = largest value positions i..length-1 can still contribute
    suffix_max = [0] * (length + 1)
    for i in range(length - 1, -1, -1):
        suffix_max[i] = suffix_max[i + 1] + base * powers[i]

    out: list[tuple[int, ...]] = []
    prefix = [0] * length

    def walk(pos: int, remaining: int) -> None:
        if pos == length:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for digit in range(base + 1):
            rest = remaining - digit * powers[pos]
            if rest < 0:
                break
            if rest > suffix_max[pos + 1]:
                continue
            prefix[pos] = digit
            walk(pos + 1, rest)
        prefix[pos] = 0

    walk(0, value)
    return out
