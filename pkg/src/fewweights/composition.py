"""Merge many restricted subset-sum inputs into one knapsack instance whose
number of distinct weights stays small.

The construction stacks three item families with well-separated magnitudes:

* encoding items carry the input numbers, shifted so that any solution must
  take a fixed count of them, and profit-boosted per input index so picking
  from a later input is always more profitable;
* index items force a one-per-bit selection that spells out, in binary, which
  input the solution claims to solve;
* quadratization items pay back exactly the profit shortfall of that claim,
  which is quadratic in the claimed index and therefore cannot be covered by
  the index items alone.

The magnitudes are chosen so that each family occupies its own "layer" of
every weight and profit: reading a subset modulo the two big scale constants
recovers the per-family contributions without interference.  All arithmetic
is exact; the scale constants overflow fixed-width integers almost
immediately.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .core import (
    Encoding,
    Index,
    InvariantError,
    Item,
    KnapsackInstance,
    Label,
    Quadratization,
    RestrictedSubsetSumInstance,
    restricted_target,
    restricted_universe_size,
)

__all__ = [
    "CompositionConstants",
    "ComposedInstance",
    "pad_to_power_of_two",
    "build_encoding_items",
    "build_quadratization_items",
    "build_index_items",
    "compose",
    "canonical_solution",
    "quadratization_labels",
    "index_labels",
    "layer_weight",
    "layer_profit",
    "count_distinct_weights",
    "count_distinct_profits",
    "composition_metadata",
]


@dataclass(frozen=True)
class CompositionConstants:
    """All gadget magnitudes for composing ``t`` inputs of size ``n``.

    ``shift`` makes every encoding item so heavy that capacity alone pins the
    number of encoding items a solution may carry.  ``block`` is the weight of
    one solved input in shifted units.  ``quad_scale`` and ``index_scale`` are
    the layer separators for the quadratization and index families, and
    ``layer_total`` is the exact quad-layer sum every valid index/quad
    selection must reach.
    """

    t: int
    n: int
    lg_t: int
    rss_target: int
    shift: int
    block: int
    quad_scale: int
    index_scale: int
    layer_total: int
    capacity: int
    target: int

    @classmethod
    def for_size(cls, t: int, n: int) -> "CompositionConstants":
        if t < 2 or t & (t - 1):
            raise InvariantError("compose.t", f"t must be a power of two >= 2, got {t}")
        if n < 1:
            raise InvariantError("compose.n", f"n must be >= 1, got {n}")
        lg_t = t.bit_length() - 1
        rss_target = restricted_target(n)
        shift = 3 * t * n * rss_target
        block = rss_target + n * shift
        # quad_scale must strictly exceed the total profit of all encoding
        # items (3tB + 4.5 t(t-1) nB), or sacrificing one quad-layer unit
        # frees enough weight for encoding profits to cheat the target
        quad_scale = 9 * t * t * n * block
        sq = lg_t * lg_t
        index_scale = sq * quad_scale * quad_scale * 3**sq
        layer_total = (3**sq - 1) // 2
        capacity = (t - 1) * index_scale + layer_total * quad_scale + (3 * t - 2) * block
        target = capacity + comb(t, 2) * 9 * n * block
        # fractional-looking profit coefficients below rely on this parity
        assert (n * block) % 2 == 0
        return cls(
            t=t,
            n=n,
            lg_t=lg_t,
            rss_target=rss_target,
            shift=shift,
            block=block,
            quad_scale=quad_scale,
            index_scale=index_scale,
            layer_total=layer_total,
            capacity=capacity,
            target=target,
        )

    def pair_code(self, k: int, l: int) -> int:
        """Row-major bijection from bit pairs to exponents of 3."""
        return k * self.lg_t + l


@dataclass(frozen=True, eq=False)
class ComposedInstance:
    knapsack: KnapsackInstance
    constants: CompositionConstants
    inputs: tuple[RestrictedSubsetSumInstance, ...]
    label_positions: dict[Label, int] = field(repr=False)

    def position_of(self, label: Label) -> int:
        return self.label_positions[label]


def pad_to_power_of_two(
    instances: list[RestrictedSubsetSumInstance],
) -> list[RestrictedSubsetSumInstance]:
    """Extend the list to the least power of two >= max(2, len) by repeating
    the last instance; the OR of the answers is unchanged."""
    if not instances:
        raise InvariantError("compose.empty", "need at least one input instance")
    sizes = {inst.n for inst in instances}
    if len(sizes) != 1:
        raise InvariantError("compose.mixed-n", f"inputs mix sizes {sorted(sizes)}")
    want = max(2, len(instances))
    t = 1
    while t < want:
        t <<= 1
    return list(instances) + [instances[-1]] * (t - len(instances))


def build_encoding_items(
    instances: list[RestrictedSubsetSumInstance], constants: CompositionConstants
) -> list[Item]:
    """One item per input number: weight ``shift + a``, profit additionally
    boosted by ``3 * block`` per input index."""
    if len(instances) != constants.t:
        raise InvariantError(
            "compose.count", f"expected {constants.t} inputs, got {len(instances)}"
        )
    items = []
    for i, inst in enumerate(instances):
        if inst.n != constants.n:
            raise InvariantError("compose.mixed-n", "input size mismatch")
        boost = i * 3 * constants.block
        for j, a in enumerate(inst.numbers):
            w = constants.shift + a
            items.append(Item(w, w + boost, Encoding(i, j)))
    return items


def build_quadratization_items(constants: CompositionConstants) -> list[Item]:
    """Items standing for the bit products of the claimed index.

    For each bit pair ``k < l`` there are three items: the two mixed-bit ones
    are profit-neutral and exist only to fill the quad layer, while the
    both-bits-set one carries the cross-term profit bonus.  Each diagonal item
    carries the square and linear bonus of a single set bit.
    """
    nb = constants.n * constants.block
    assert nb % 2 == 0
    y = constants.quad_scale
    items = []
    for k in range(constants.lg_t):
        for l in range(k + 1, constants.lg_t):
            c_kl = 3 ** constants.pair_code(k, l) * y
            c_lk = 3 ** constants.pair_code(l, k) * y
            items.append(Item(c_kl, c_kl, Quadratization((1, 0), k, l)))
            items.append(Item(c_lk, c_lk, Quadratization((0, 1), k, l)))
            both = c_kl + c_lk
            bonus = 2 ** (k + l) * 9 * nb
            items.append(Item(both, both + bonus, Quadratization((1, 1), k, l)))
    for k in range(constants.lg_t):
        c = 3 ** constants.pair_code(k, k) * y
        bonus = 2 ** (2 * k) * (9 * nb) // 2 + 2**k * (3 * nb) // 2
        items.append(Item(c, c + bonus, Quadratization((1, 1), k, k)))
    return items


def build_index_items(constants: CompositionConstants) -> list[Item]:
    """Two items per bit position; exactly one of each pair fits in any
    solution.  The zero-bit item pre-pays the quad-layer share its bit would
    otherwise owe; the one-bit item carries the bit's weight in blocks."""
    z = constants.index_scale
    y = constants.quad_scale
    items = []
    for k in range(constants.lg_t):
        quad_share = sum(
            3 ** constants.pair_code(k, l) for l in range(constants.lg_t)
        )
        w0 = 2**k * z + quad_share * y
        items.append(Item(w0, w0, Index(0, k)))
        w1 = 2**k * z + 2**k * 3 * constants.block
        items.append(Item(w1, w1, Index(1, k)))
    return items


def compose(instances: list[RestrictedSubsetSumInstance]) -> ComposedInstance:
    """Pad, build all three item families, and wrap them with the composed
    capacity and target.

    The output is feasible if and only if at least one input is feasible.
    Item order is fixed: encoding items input-major, then quadratization
    items (off-diagonal pairs in (k, l) order with kinds (1,0), (0,1), (1,1),
    then diagonals), then index items (zero-bit before one-bit per position).
    """
    padded = pad_to_power_of_two(instances)
    constants = CompositionConstants.for_size(len(padded), padded[0].n)
    encoding = build_encoding_items(padded, constants)
    quad = build_quadratization_items(constants)
    index = build_index_items(constants)
    items = encoding + quad + index

    t, n, lg_t = constants.t, constants.n, constants.lg_t
    assert len(encoding) == 3 * n * t
    assert len(quad) == 3 * comb(lg_t, 2) + lg_t
    assert len(index) == 2 * lg_t

    z, y = constants.index_scale, constants.quad_scale
    # Layer reads are per-item floors summed; they equal floor-of-sum for
    # every subset because the residues below one layer unit cannot carry,
    # which the whole-instance totals certify.
    assert sum(it.weight % z for it in items) < z
    assert sum(it.profit % z for it in items) < z
    assert sum((it.weight % z) % y for it in items) < y
    assert sum((it.profit % z) % y for it in items) < y
    # Scale dominance: one quad unit outweighs every encoding profit
    # combined, and one index unit outweighs all encoding and quad profits.
    assert sum(it.profit for it in encoding) < y
    assert sum(it.profit for it in encoding) + sum(it.profit for it in quad) < z

    knapsack = KnapsackInstance(tuple(items), constants.capacity, constants.target)
    assert count_distinct_weights(knapsack) <= (
        restricted_universe_size(n) + len(quad) + len(index)
    )

    label_positions = {it.label: pos for pos, it in enumerate(items)}
    return ComposedInstance(knapsack, constants, tuple(padded), label_positions)


def quadratization_labels(i: int, lg_t: int) -> frozenset[Label]:
    """Quadratization items a canonical index-``i`` solution picks; bit pairs
    that are both zero contribute nothing."""
    labels = set()
    for k in range(lg_t):
        for l in range(k + 1, lg_t):
            pair = ((i >> k) & 1, (i >> l) & 1)
            if pair != (0, 0):
                labels.add(Quadratization(pair, k, l))
        if (i >> k) & 1:
            labels.add(Quadratization((1, 1), k, k))
    return frozenset(labels)


def index_labels(i: int, lg_t: int) -> frozenset[Label]:
    """Index items spelling out ``i`` in binary, one per bit position."""
    return frozenset(Index((i >> k) & 1, k) for k in range(lg_t))


def canonical_solution(
    composed: ComposedInstance, which: int, witness
) -> frozenset[int]:
    """Item indices of the textbook solution built from a witness for input
    ``which``: the witness slots of that input, every encoding item of all
    later inputs, and the quad/index selections for ``which``.

    The returned set always has weight exactly the capacity and profit exactly
    the target.  ``witness`` must hold ``n`` distinct 0-based positions whose
    numbers sum to the restricted target.
    """
    constants = composed.constants
    t, n = constants.t, constants.n
    if not 0 <= which < t:
        raise InvariantError("witness.instance", f"instance index {which} out of range")
    witness = list(witness)
    positions = sorted(set(witness))
    if len(witness) != n or len(positions) != n:
        raise InvariantError(
            "witness.cardinality", f"witness must hold {n} distinct positions"
        )
    inst = composed.inputs[which]
    if not all(0 <= p < 3 * n for p in positions):
        raise InvariantError("witness.position", "witness position out of range")
    picked_sum = sum(inst.numbers[p] for p in positions)
    if picked_sum != constants.rss_target:
        raise InvariantError(
            "witness.sum",
            f"witness sums to {picked_sum}, expected {constants.rss_target}",
        )

    chosen = set()
    for p in positions:
        chosen.add(composed.position_of(Encoding(which, p)))
    for i0 in range(which + 1, t):
        for j in range(3 * n):
            chosen.add(composed.position_of(Encoding(i0, j)))
    for label in quadratization_labels(which, constants.lg_t):
        chosen.add(composed.position_of(label))
    for label in index_labels(which, constants.lg_t):
        chosen.add(composed.position_of(label))
    return frozenset(chosen)


def _layer_value(value: int, constants: CompositionConstants, layer: str) -> int:
    if layer == "index":
        return value // constants.index_scale
    if layer == "quad":
        return (value % constants.index_scale) // constants.quad_scale
    raise InvariantError("layer.name", f"unknown layer {layer!r}")


def layer_weight(items, constants: CompositionConstants, layer: str) -> int:
    """Sum of per-item floored layer reads of the weights."""
    return sum(_layer_value(it.weight, constants, layer) for it in items)


def layer_profit(items, constants: CompositionConstants, layer: str) -> int:
    """Sum of per-item floored layer reads of the profits."""
    return sum(_layer_value(it.profit, constants, layer) for it in items)


def count_distinct_weights(inst: KnapsackInstance) -> int:
    return len({it.weight for it in inst.items})


def count_distinct_profits(inst: KnapsackInstance) -> int:
    return len({it.profit for it in inst.items})


def composition_metadata(composed: ComposedInstance) -> dict:
    """Sidecar object describing the gadget magnitudes, big values as decimal
    strings."""
    c = composed.constants
    return {
        "t": c.t,
        "n": c.n,
        "X": str(c.shift),
        "B": str(c.block),
        "Y": str(c.quad_scale),
        "Z": str(c.index_scale),
        "T": str(c.layer_total),
        "W": str(c.capacity),
        "P": str(c.target),
    }
