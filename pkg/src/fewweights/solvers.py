"""Independent exact oracles.

These solvers know nothing about how an instance was built; they enumerate.
All three return a maximum-profit witness so that maximality-based arguments
can be exercised, and all arithmetic is plain Python integers.
"""

from __future__ import annotations

from bisect import bisect_right
from itertools import accumulate

from .core import GuardError, KnapsackInstance, SolverResult

__all__ = [
    "solve_brute_force",
    "solve_meet_in_middle",
    "solve_dp_by_weight",
    "pick_oracle",
    "BRUTE_FORCE_LIMIT",
    "MEET_IN_MIDDLE_LIMIT",
    "DP_CAPACITY_LIMIT",
]

BRUTE_FORCE_LIMIT = 25
MEET_IN_MIDDLE_LIMIT = 48
DP_CAPACITY_LIMIT = 10**7

# chunk size for the brute-force scan; bounds peak memory at ~2**18 entries
_CHUNK_BITS = 18


def _mask_sums(items) -> tuple[list[int], list[int]]:
    """Subset sums indexed by bitmask: entry ``m`` is the sum over set bits of
    ``m``, built by doubling so the index *is* the subset."""
    ws = [0]
    ps = [0]
    for it in items:
        w, p = it.weight, it.profit
        ws += [s + w for s in ws]
        ps += [s + p for s in ps]
    return ws, ps


def _mask_indices(mask: int, offset: int = 0) -> frozenset[int]:
    out = []
    pos = 0
    while mask:
        if mask & 1:
            out.append(pos + offset)
        mask >>= 1
        pos += 1
    return frozenset(out)


def _lex_mask_less(m1: int, m2: int) -> bool:
    """True iff the sorted index tuple of ``m1`` is lexicographically smaller
    than that of ``m2``.  A proper prefix counts as smaller."""
    if m1 == m2:
        return False
    low = (m1 ^ m2) & -(m1 ^ m2)
    if m2 & low:
        # the other set owns the first differing element; we win only by
        # being exhausted there (prefix)
        return (m1 >> low.bit_length()) == 0
    return (m2 >> low.bit_length()) != 0


def solve_brute_force(inst: KnapsackInstance) -> SolverResult:
    """Enumerate all subsets; report the maximum-profit subset that fits the
    capacity, breaking profit ties toward the lexicographically smallest
    index set."""
    n = len(inst.items)
    if n > BRUTE_FORCE_LIMIT:
        raise GuardError("solve.brute", f"{n} items exceed limit {BRUTE_FORCE_LIMIT}")
    low_n = min(n, _CHUNK_BITS)
    low_ws, low_ps = _mask_sums(inst.items[:low_n])
    high_items = inst.items[low_n:]
    capacity = inst.capacity

    best_p = -1
    best_mask = 0
    for high_mask in range(1 << len(high_items)):
        base_w = 0
        base_p = 0
        m = high_mask
        pos = 0
        while m:
            if m & 1:
                base_w += high_items[pos].weight
                base_p += high_items[pos].profit
            m >>= 1
            pos += 1
        if base_w > capacity:
            continue
        rem = capacity - base_w
        shifted = high_mask << low_n
        for low_mask in range(1 << low_n):
            if low_ws[low_mask] <= rem:
                p = base_p + low_ps[low_mask]
                if p > best_p:
                    best_p = p
                    best_mask = shifted | low_mask
                elif p == best_p and _lex_mask_less(shifted | low_mask, best_mask):
                    best_mask = shifted | low_mask

    # the empty subset always fits, so a maximum exists
    if best_p < inst.target:
        return SolverResult(feasible=False)
    return SolverResult(
        feasible=True,
        chosen=_mask_indices(best_mask),
        achieved_weight=inst.subset_weight(_mask_indices(best_mask)),
        achieved_profit=best_p,
    )


def solve_meet_in_middle(inst: KnapsackInstance) -> SolverResult:
    """Split the items into halves, enumerate each, sort the second half by
    weight with running profit maxima, and binary-search it once per subset
    of the first half.

    The verdict and the achieved (maximum) profit agree with brute force.
    Ties between witnesses are broken deterministically: first-half masks are
    visited in ascending order and the earliest sorted second-half entry
    achieving the running maximum is taken.
    """
    n = len(inst.items)
    if n > MEET_IN_MIDDLE_LIMIT:
        raise GuardError("solve.mim", f"{n} items exceed limit {MEET_IN_MIDDLE_LIMIT}")
    capacity = inst.capacity
    h1 = (n + 1) // 2
    ws_a, ps_a = _mask_sums(inst.items[:h1])
    ws_b, ps_b = _mask_sums(inst.items[h1:])

    pairs = sorted(zip(ws_b, range(len(ws_b))))
    sorted_w = [w for w, _ in pairs]
    sorted_mask = [m for _, m in pairs]
    del pairs
    sorted_p = [ps_b[m] for m in sorted_mask]
    del ws_b, ps_b
    prefix_max = list(accumulate(sorted_p, max))

    best_p = -1
    best_a = 0
    best_j = 0
    for mask_a, wa in enumerate(ws_a):
        if wa > capacity:
            continue
        j = bisect_right(sorted_w, capacity - wa) - 1
        # j >= 0: the empty second-half subset has weight 0
        p = ps_a[mask_a] + prefix_max[j]
        if p > best_p:
            best_p = p
            best_a = mask_a
            best_j = j

    if best_p < inst.target:
        return SolverResult(feasible=False)
    want = prefix_max[best_j]
    idx = next(i for i in range(best_j + 1) if sorted_p[i] == want)
    chosen = _mask_indices(best_a) | _mask_indices(sorted_mask[idx], offset=h1)
    return SolverResult(
        feasible=True,
        chosen=chosen,
        achieved_weight=inst.subset_weight(chosen),
        achieved_profit=best_p,
    )


def solve_dp_by_weight(inst: KnapsackInstance) -> SolverResult:
    """Weight-indexed dynamic program with per-item decision bitmasks for
    witness reconstruction.  Ties prefer leaving an item out."""
    capacity = inst.capacity
    if capacity > DP_CAPACITY_LIMIT:
        raise GuardError(
            "solve.dp", f"capacity {capacity} exceeds limit {DP_CAPACITY_LIMIT}"
        )
    n = len(inst.items)
    dp = [-1] * (capacity + 1)
    dp[0] = 0
    taken = [0] * n
    for i, it in enumerate(inst.items):
        wi, pi = it.weight, it.profit
        mark = 0
        for w in range(capacity, wi - 1, -1):
            prev = dp[w - wi]
            if prev >= 0 and prev + pi > dp[w]:
                dp[w] = prev + pi
                mark |= 1 << w
        taken[i] = mark

    best_p = max(dp)
    if best_p < inst.target:
        return SolverResult(feasible=False)
    w = dp.index(best_p)
    chosen = set()
    for i in range(n - 1, -1, -1):
        if (taken[i] >> w) & 1:
            chosen.add(i)
            w -= inst.items[i].weight
    assert w == 0
    chosen = frozenset(chosen)
    achieved_w = inst.subset_weight(chosen)
    achieved_p = inst.subset_profit(chosen)
    assert achieved_p == best_p
    return SolverResult(
        feasible=True,
        chosen=chosen,
        achieved_weight=achieved_w,
        achieved_profit=achieved_p,
    )


def pick_oracle(inst: KnapsackInstance):
    """Strongest admissible oracle for an instance: brute force while cheap
    (it also carries the strict witness tie-break), otherwise
    meet-in-the-middle."""
    if len(inst.items) <= 20:
        return "brute", solve_brute_force
    if len(inst.items) <= MEET_IN_MIDDLE_LIMIT:
        return "mim", solve_meet_in_middle
    raise GuardError("solve.auto", f"no exact oracle for {len(inst.items)} items")
