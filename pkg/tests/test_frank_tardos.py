from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import l1_ball, sign
from fewweights.core import InvariantError
from fewweights.frank_tardos import (
    frank_tardos_reduce,
    lll_reduce,
    simultaneous_approximation,
)


def norm_bound(r: int, n: int) -> int:
    return 2 ** (4 * r**3) * n ** (r**2 + 2 * r)


def assert_signs_preserved(w, reduced, n_bound):
    for b in l1_ball(len(w), n_bound):
        got = sign(sum(x * y for x, y in zip(reduced, b)))
        want = sign(sum(Fraction(x) * y for x, y in zip(w, b)))
        assert got == want, (w, reduced, b)


class TestLLL:
    def test_reduces_a_classic_basis(self):
        basis = [[1, 1, 1], [-1, 0, 2], [3, 5, 6]]
        out = lll_reduce(basis)
        first_norm = sum(x * x for x in out[0])
        assert first_norm <= sum(x * x for x in basis[0])

    def test_span_is_preserved(self):
        basis = [[4, 1], [1, 3]]
        out = lll_reduce(basis)

        def int_coords(target, rows):
            # solve c * rows == target over the rationals, demand integers
            (a, b), (c, d) = rows
            det = a * d - b * c
            x = Fraction(target[0] * d - target[1] * c, det)
            y = Fraction(target[1] * a - target[0] * b, det)
            return x.denominator == 1 and y.denominator == 1

        for row in out:
            assert int_coords(row, basis)
        for row in basis:
            assert int_coords(row, out)

    def test_single_row(self):
        assert lll_reduce([[5, 7]]) == [[5, 7]]


class TestSimultaneousApproximation:
    @pytest.mark.parametrize("seed", range(10))
    def test_quality_and_multiplier_bound(self, seed):
        rng = random.Random(seed)
        r = rng.randrange(1, 5)
        alpha = [Fraction(rng.randrange(-1000, 1001), 1000) for _ in range(r)]
        eps = Fraction(1, rng.randrange(2, 12))
        p, q = simultaneous_approximation(alpha, eps)
        assert q >= 1
        exponent = -((-r * (r + 1)) // 4)
        assert q <= 2**exponent * eps**-r
        for a, pi in zip(alpha, p):
            assert abs(q * a - pi) <= eps

    def test_rejects_big_coordinates(self):
        with pytest.raises(InvariantError):
            simultaneous_approximation([Fraction(2)], Fraction(1, 2))

    def test_rejects_bad_eps(self):
        with pytest.raises(InvariantError):
            simultaneous_approximation([Fraction(1, 2)], Fraction(3, 2))


class TestFrankTardosReduce:
    def test_single_positive(self):
        out = frank_tardos_reduce([5], 2)
        assert len(out) == 1 and out[0] > 0

    def test_order_preserved(self):
        out = frank_tardos_reduce([3, 5], 2)
        assert 0 < out[0] < out[1]
        assert_signs_preserved([3, 5], out, 2)

    def test_equal_stay_equal(self):
        out = frank_tardos_reduce([1, 1], 3)
        assert out[0] == out[1] > 0

    def test_zero_vector(self):
        assert frank_tardos_reduce([0, 0, 0], 2) == [0, 0, 0]

    def test_zeros_stay_zero_signs_hold(self):
        w = [7, 0, -7]
        out = frank_tardos_reduce(w, 3)
        assert out[1] == 0 and out[0] > 0 > out[2] and out[0] == -out[2]
        assert_signs_preserved(w, out, 3)

    def test_rational_inputs(self):
        w = [Fraction(3, 7), Fraction(-2, 5), Fraction(0)]
        out = frank_tardos_reduce(w, 3)
        assert all(isinstance(v, int) for v in out)
        assert_signs_preserved(w, out, 3)

    @pytest.mark.parametrize("seed", range(30))
    def test_exhaustive_small_scale(self, seed):
        rng = random.Random(1000 + seed)
        r = rng.randrange(1, 4)
        n_bound = rng.randrange(1, 5)
        w = [rng.choice([1, -1]) * rng.randrange(1, 10**6) for _ in range(r)]
        out = frank_tardos_reduce(w, n_bound)
        assert max(abs(v) for v in out) <= norm_bound(r, n_bound)
        assert_signs_preserved(w, out, n_bound)

    def test_huge_values_shrink(self):
        w = [2**64 - 1, 2**64 - 1, -(2**70)]
        out = frank_tardos_reduce(w, 13)
        assert out[0] == out[1] > 0 > out[2]
        assert max(abs(v) for v in out) < 2**40
        assert_signs_preserved(w, out, 5)

    def test_rejects_empty(self):
        with pytest.raises(InvariantError):
            frank_tardos_reduce([], 2)

    def test_rejects_zero_budget(self):
        with pytest.raises(InvariantError):
            frank_tardos_reduce([1], 0)
