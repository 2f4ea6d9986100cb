"""Exact scalars, Laurent characters and fraction-free linear algebra."""

import random
from fractions import Fraction

import pytest

from lefschetz.exact import (
    ExactMatrix,
    LaurentCharacter,
    alternating_exterior_sum,
    character_product,
    exterior_power_character,
    rank_and_kernel,
)


def mono(w, m=1, scale=1):
    return LaurentCharacter.monomial(w, m, scale)


class TestLaurentCharacter:
    def test_zero_terms_dropped(self):
        ch = LaurentCharacter(1, {(1,): 0, (2,): 3})
        assert ch.terms == {(2,): 3}

    def test_addition_and_negation(self):
        a = mono((1,)) + mono((-1,))
        assert (a - a).terms == {}
        assert (-a).terms == {(1,): -1, (-1,): -1}

    def test_product_convolution(self):
        a = mono((1,)) + mono((-1,))
        sq = a * a
        assert sq.terms == {(2,): 1, (0,): 2, (-2,): 1}

    def test_product_with_one(self):
        a = mono((2,), 3) + mono((0,), -1)
        assert a * LaurentCharacter.one(1) == a

    def test_virtual_square(self):
        a = mono((1,)) - mono((-1,))
        assert (a * a).terms == {(2,): 1, (0,): -2, (-2,): 1}

    def test_scale_rescaling(self):
        half = mono((1,), scale=2)  # the weight 1/2
        whole = mono((1,))
        prod = half * whole
        assert prod.scale == 2
        assert prod.terms == {(3,): 1}

    def test_normalized(self):
        ch = LaurentCharacter(1, {(2,): 1, (-2,): 1}, scale=2)
        n = ch.normalized()
        assert n.scale == 1 and n.terms == {(1,): 1, (-1,): 1}

    def test_dual_and_dimension(self):
        a = mono((1,), 2) + mono((3,), 1)
        assert a.dual().terms == {(-1,): 2, (-3,): 1}
        assert a.dimension() == 3

    def test_evaluate(self):
        a = mono((2,)) + mono((-1,), 3)
        assert a.evaluate([Fraction(2)]) == Fraction(4) + Fraction(3, 2)

    def test_json_round_trip(self):
        a = mono((1, -2), 4, scale=2) + mono((0, 0), -1, scale=2)
        back = LaurentCharacter.from_json_obj(a.to_json_obj())
        assert back == a

    def test_rank_mismatch_rejected(self):
        with pytest.raises(ValueError):
            mono((1,)) + mono((1, 2))


class TestExteriorPowers:
    def test_zeroth_power_is_one(self):
        ch = mono((1,)) + mono((2,))
        assert exterior_power_character(ch, 0) == LaurentCharacter.one(1)

    def test_first_power_is_identity(self):
        ch = mono((1,), 2) + mono((-3,))
        assert exterior_power_character(ch, 1) == ch

    def test_top_power_is_weight_sum(self):
        ch = mono((1,)) + mono((4,))
        assert exterior_power_character(ch, 2).terms == {(5,): 1}

    def test_rejects_virtual_input(self):
        with pytest.raises(ValueError):
            exterior_power_character(mono((1,), -1), 1)

    def test_alternating_sum_is_product(self):
        rng = random.Random(3)
        for _ in range(30):
            rank = rng.randint(1, 2)
            n = rng.randint(0, 6)
            weights = [
                tuple(rng.randint(-2, 2) for _ in range(rank)) for _ in range(n)
            ]
            ch = LaurentCharacter.from_weights(rank, weights)
            total = LaurentCharacter.zero(rank)
            for p in range(n + 1):
                term = exterior_power_character(ch, p)
                total = total + term if p % 2 == 0 else total - term
            assert total == alternating_exterior_sum(ch)


class TestCharacterProductProperties:
    def test_commutative_associative(self):
        rng = random.Random(11)
        for _ in range(20):
            chars = [
                LaurentCharacter(
                    2,
                    {
                        (rng.randint(-2, 2), rng.randint(-2, 2)): rng.randint(-3, 3)
                        for _ in range(3)
                    },
                )
                for _ in range(3)
            ]
            a, b, c = chars
            assert character_product(a, b) == character_product(b, a)
            assert character_product(character_product(a, b), c) == character_product(
                a, character_product(b, c)
            )


class TestExactMatrix:
    def test_identity_rank(self):
        rank, kernel = rank_and_kernel(ExactMatrix.identity(3))
        assert rank == 3 and kernel == []

    def test_zero_matrix(self):
        rank, kernel = rank_and_kernel(ExactMatrix(2, 2))
        assert rank == 0 and len(kernel) == 2

    def test_proportional_rows(self):
        m = ExactMatrix.from_rows([[1, 2], [2, 4]])
        rank, kernel = rank_and_kernel(m)
        assert rank == 1 and len(kernel) == 1
        v = kernel[0]
        assert v[0] * 1 + v[1] * 2 == 0

    def test_inverse_round_trip(self):
        m = ExactMatrix.from_rows([[2, 1], [7, 4]])
        assert m @ m.inverse() == ExactMatrix.identity(2)

    def test_singular_inverse_raises(self):
        with pytest.raises(ValueError):
            ExactMatrix.from_rows([[1, 2], [2, 4]]).inverse()

    def test_rank_kernel_random_products(self):
        rng = random.Random(0)
        for _ in range(40):
            n, m = rng.randint(1, 6), rng.randint(1, 6)
            r = rng.randint(0, min(n, m))
            if r:
                a = ExactMatrix.from_rows(
                    [
                        [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(r)]
                        for _ in range(n)
                    ]
                )
                b = ExactMatrix.from_rows(
                    [
                        [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(m)]
                        for _ in range(r)
                    ]
                )
                mat = a @ b
            else:
                mat = ExactMatrix(n, m)
            rank, kernel = rank_and_kernel(mat)
            assert rank <= r
            assert rank + len(kernel) == m
            for v in kernel:
                assert all(x == 0 for x in mat.apply(v))

    def test_rank_independent_of_elimination_order(self):
        rng = random.Random(5)
        for _ in range(40):
            n, m = rng.randint(1, 5), rng.randint(1, 5)
            mat = ExactMatrix.from_rows(
                [[rng.randint(-3, 3) for _ in range(m)] for _ in range(n)]
            )
            r1, k1 = rank_and_kernel(mat)
            order = list(range(m))
            rng.shuffle(order)
            r2, k2 = rank_and_kernel(mat, col_order=order)
            assert r1 == r2 and len(k1) == len(k2)
            for v in k2:
                assert all(x == 0 for x in mat.apply(v))
