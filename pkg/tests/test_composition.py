from __future__ import annotations

from itertools import product
from math import comb

import pytest

from fewweights.composition import (
    ComposedInstance,
    CompositionConstants,
    build_encoding_items,
    build_index_items,
    build_quadratization_items,
    canonical_solution,
    compose,
    composition_metadata,
    count_distinct_profits,
    count_distinct_weights,
    index_labels,
    layer_profit,
    layer_weight,
    pad_to_power_of_two,
    quadratization_labels,
)
from fewweights.core import (
    Encoding,
    Index,
    InvariantError,
    KnapsackInstance,
    Quadratization,
    RestrictedSubsetSumInstance,
)
from fewweights.generators import gen_rss
from fewweights.solvers import solve_brute_force


YES1 = RestrictedSubsetSumInstance(1, (84, 84, 84))
NO1 = RestrictedSubsetSumInstance(1, (12, 48, 192))


class TestConstants:
    def test_frozen_values_size_two_one(self):
        c = CompositionConstants.for_size(2, 1)
        assert c.rss_target == 84
        assert c.shift == 504          # 3 * 2 * 1 * 84
        assert c.block == 588          # 84 + 1 * 504
        assert c.quad_scale == 21168   # 9 * 4 * 1 * 588
        assert c.layer_total == 1
        assert c.index_scale == 3 * 21168**2  # lg t = 1
        assert c.capacity == c.index_scale + 21168 + 4 * 588 == 1344276192
        assert c.target == c.capacity + 9 * 588 == 1344281484

    def test_quad_scale_dominates_encoding_profits(self):
        for t, n in product((2, 4, 8, 16), (1, 2)):
            c = CompositionConstants.for_size(t, n)
            total = 3 * t * c.block + 9 * n * c.block * comb(t, 2)
            assert c.quad_scale > total

    def test_rejects_bad_shape(self):
        with pytest.raises(InvariantError):
            CompositionConstants.for_size(3, 1)
        with pytest.raises(InvariantError):
            CompositionConstants.for_size(1, 1)
        with pytest.raises(InvariantError):
            CompositionConstants.for_size(2, 0)

    def test_pair_code_bijective(self):
        c = CompositionConstants.for_size(16, 1)
        codes = {c.pair_code(k, l) for k in range(4) for l in range(4)}
        assert codes == set(range(16))


class TestPadding:
    def test_three_becomes_four(self):
        out = pad_to_power_of_two([YES1, NO1, YES1])
        assert len(out) == 4 and out[3] is out[2]

    def test_one_becomes_two(self):
        out = pad_to_power_of_two([NO1])
        assert len(out) == 2 and out[1] is out[0]

    def test_power_of_two_unchanged(self):
        assert pad_to_power_of_two([YES1] * 4) == [YES1] * 4

    def test_mixed_sizes_rejected(self):
        with pytest.raises(InvariantError):
            pad_to_power_of_two([YES1, gen_rss(2, 0, True)])

    def test_empty_rejected(self):
        with pytest.raises(InvariantError):
            pad_to_power_of_two([])


class TestItemFamilies:
    def test_encoding_items_size_two_one(self):
        c = CompositionConstants.for_size(2, 1)
        items = build_encoding_items([YES1, YES1], c)
        assert [(it.weight, it.profit) for it in items[:3]] == [(588, 588)] * 3
        assert [(it.weight, it.profit) for it in items[3:]] == [(588, 2352)] * 3

    @pytest.mark.parametrize("t,n", [(2, 1), (4, 1), (4, 2)])
    def test_encoding_group_sums(self, t, n):
        c = CompositionConstants.for_size(t, n)
        inputs = [gen_rss(n, 7 + i, True) for i in range(t)]
        items = build_encoding_items(inputs, c)
        for i in range(t):
            block_items = [
                it for it in items if isinstance(it.label, Encoding) and it.label.instance == i
            ]
            assert sum(it.weight for it in block_items) == 3 * c.block
            assert sum(it.profit for it in block_items) == 3 * c.block + 9 * n * c.block * i

    def test_quadratization_single_item(self):
        c = CompositionConstants.for_size(2, 1)
        (item,) = build_quadratization_items(c)
        assert item.label == Quadratization((1, 1), 0, 0)
        assert item.weight == c.quad_scale == 21168
        # bonus is 4.5 nB + 1.5 nB realized exactly
        assert item.profit == 21168 + 2646 + 882 == 24696

    @pytest.mark.parametrize("t,count", [(4, 5), (8, 12), (16, 22)])
    def test_quadratization_counts(self, t, count):
        c = CompositionConstants.for_size(t, 1)
        assert len(build_quadratization_items(c)) == count

    def test_index_items_size_two_one(self):
        c = CompositionConstants.for_size(2, 1)
        zero, one = build_index_items(c)
        assert zero.label == Index(0, 0) and one.label == Index(1, 0)
        assert zero.weight == zero.profit == c.index_scale + c.quad_scale == 1344273840
        assert one.weight == one.profit == c.index_scale + 3 * c.block == 1344254436

    def test_index_item_count(self):
        c = CompositionConstants.for_size(4, 1)
        items = build_index_items(c)
        assert len(items) == 4
        assert all(it.weight == it.profit for it in items)


class TestCompose:
    def test_small_instance_shape(self):
        comp = compose([YES1, YES1])
        assert isinstance(comp, ComposedInstance)
        assert len(comp.knapsack.items) == 9  # 6 encoding + 1 quad + 2 index
        assert count_distinct_weights(comp.knapsack) == 4
        assert comp.knapsack.capacity == comp.constants.capacity

    def test_pads_internally(self):
        comp = compose([YES1, NO1, YES1])
        assert comp.constants.t == 4
        assert len(comp.inputs) == 4

    def test_item_family_counts(self):
        comp = compose([gen_rss(2, i, True) for i in range(4)])
        t, n, lg_t = 4, 2, 2
        labels = [it.label for it in comp.knapsack.items]
        assert sum(isinstance(x, Encoding) for x in labels) == 3 * n * t
        assert sum(isinstance(x, Quadratization) for x in labels) == 3 * comb(lg_t, 2) + lg_t
        assert sum(isinstance(x, Index) for x in labels) == 2 * lg_t

    def test_mixed_sizes_rejected(self):
        with pytest.raises(InvariantError):
            compose([YES1, gen_rss(2, 0, True)])

    def test_metadata(self):
        comp = compose([YES1, YES1])
        meta = composition_metadata(comp)
        assert meta["t"] == 2 and meta["n"] == 1
        assert meta["Y"] == "21168"
        assert int(meta["W"]) == comp.constants.capacity
        assert set(meta) == {"t", "n", "X", "B", "Y", "Z", "T", "W", "P"}


class TestCanonicalSolution:
    def test_frozen_small_solutions(self):
        comp = compose([YES1, YES1])
        # claiming the second input: its first slot, the quad diag, the set bit
        assert canonical_solution(comp, 1, [0]) == frozenset({3, 6, 8})
        # claiming the first input: slot, all later encoding items, the zero bit
        assert canonical_solution(comp, 0, [0]) == frozenset({0, 3, 4, 5, 7})

    @pytest.mark.parametrize("t,n", [(2, 1), (4, 1), (2, 2)])
    def test_exact_equality(self, t, n):
        inputs = [gen_rss(n, 40 + i, True) for i in range(t)]
        comp = compose(inputs)
        for i in range(t):
            sol = canonical_solution(comp, i, range(n))
            assert comp.knapsack.subset_weight(sol) == comp.constants.capacity
            assert comp.knapsack.subset_profit(sol) == comp.constants.target

    def test_rejects_bad_witnesses(self):
        comp = compose([YES1, NO1])
        with pytest.raises(InvariantError):
            canonical_solution(comp, 0, [0, 1])  # wrong cardinality
        with pytest.raises(InvariantError):
            canonical_solution(comp, 0, [5])  # out of range
        with pytest.raises(InvariantError):
            canonical_solution(comp, 1, [0])  # 12 != target
        with pytest.raises(InvariantError):
            canonical_solution(comp, 2, [0])  # no such input


class TestLayers:
    def test_frozen_layer_reads(self):
        comp = compose([YES1, YES1])
        c = comp.constants
        by_label = {it.label: it for it in comp.knapsack.items}
        z1 = [by_label[Index(1, 0)]]
        z0 = [by_label[Index(0, 0)]]
        x = [comp.knapsack.items[0]]
        assert layer_weight(z1, c, "index") == 1
        assert layer_weight(x, c, "index") == 0
        assert layer_weight(z0, c, "quad") == 1
        assert layer_profit(z0, c, "index") == 1

    def test_unknown_layer(self):
        c = CompositionConstants.for_size(2, 1)
        with pytest.raises(InvariantError):
            layer_weight(build_index_items(c), c, "Z")

    @pytest.mark.parametrize("t", [2, 4, 8])
    def test_compatibility_layer_sums(self, t):
        """Index plus quad selections for any index fill the quad layer to
        exactly the layer total, in weight and in profit."""
        c = CompositionConstants.for_size(t, 1)
        items = build_quadratization_items(c) + build_index_items(c)
        by_label = {it.label: it for it in items}
        for i in range(t):
            picked = [by_label[lab] for lab in quadratization_labels(i, c.lg_t)]
            picked += [by_label[lab] for lab in index_labels(i, c.lg_t)]
            assert layer_weight(picked, c, "quad") == c.layer_total
            assert layer_profit(picked, c, "quad") == c.layer_total

    def test_index_extraction_spot(self):
        comp = compose([YES1, NO1])
        c = comp.constants
        items = comp.knapsack.items
        hits = 0
        for mask in range(1 << 9):
            subset = [items[i] for i in range(9) if mask >> i & 1]
            if layer_weight(subset, c, "index") <= 1 and layer_profit(subset, c, "index") >= 1:
                hits += 1
                chosen_index = frozenset(
                    it.label for it in subset if isinstance(it.label, Index)
                )
                assert any(chosen_index == index_labels(i, 1) for i in range(2))
        assert hits > 0


class TestQuadIdentity:
    @pytest.mark.parametrize("t,n", [(2, 1), (4, 1), (4, 2)])
    def test_profit_weight_gap(self, t, n):
        c = CompositionConstants.for_size(t, n)
        by_label = {it.label: it for it in build_quadratization_items(c)}
        for i in range(t):
            picked = [by_label[lab] for lab in quadratization_labels(i, c.lg_t)]
            gap = sum(it.profit for it in picked) - sum(it.weight for it in picked)
            assert gap == (9 * i * (i + 1) // 2 - 3 * i) * n * c.block


class TestReplacementDominance:
    @pytest.mark.parametrize("t", [4, 8])
    def test_merged_pair_wins(self, t):
        c = CompositionConstants.for_size(t, 1)
        by_label = {it.label: it for it in build_quadratization_items(c)}
        for k in range(c.lg_t):
            for l in range(k + 1, c.lg_t):
                one_zero = by_label[Quadratization((1, 0), k, l)]
                zero_one = by_label[Quadratization((0, 1), k, l)]
                both = by_label[Quadratization((1, 1), k, l)]
                assert one_zero.weight + zero_one.weight == both.weight
                assert one_zero.profit + zero_one.profit < both.profit


class TestDistinctCounts:
    def test_empty(self):
        inst = KnapsackInstance((), 0, 0)
        assert count_distinct_weights(inst) == count_distinct_profits(inst) == 0

    @pytest.mark.parametrize("t,n", [(2, 1), (4, 1), (2, 2)])
    def test_family_bound(self, t, n):
        inputs = [gen_rss(n, 60 + i, i % 2 == 0) for i in range(t)]
        comp = compose(inputs)
        lg_t = comp.constants.lg_t
        m = 3 * n
        bound = m * (m + 1) * (m + 2) // 6 + 3 * comb(lg_t, 2) + 3 * lg_t
        assert count_distinct_weights(comp.knapsack) <= bound


def test_or_equivalence_smallest_scale():
    for pattern in product([False, True], repeat=2):
        comp = compose([YES1 if yes else NO1 for yes in pattern])
        assert solve_brute_force(comp.knapsack).feasible == any(pattern)


def test_maximal_witness_spells_out_the_solved_input():
    """With only the first input solvable, the maximal solution's index items
    must spell index 0."""
    comp = compose([YES1, NO1])
    result = solve_brute_force(comp.knapsack)
    assert result.feasible
    picked_index = frozenset(
        comp.knapsack.items[i].label
        for i in result.chosen
        if isinstance(comp.knapsack.items[i].label, Index)
    )
    assert picked_index == index_labels(0, comp.constants.lg_t)
