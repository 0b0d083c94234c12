from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fibk3.fibgen import gen_fib
from fibk3.lattice import (
    EvenLattice2,
    Isometry2,
    ab_power,
    disc_action,
    disc_action_bruteforce,
    enumerate_discriminant_cosets,
    evaluate_word,
    fibonacci_lattice,
    generator_a,
    generator_b,
    in_positive_cone,
    integrality_matrix,
    is_isometry,
    is_plus_isometry,
    word_decompose,
)


class TestLatticeConstruction:
    def test_doubled_gram(self):
        assert fibonacci_lattice(2, 1).gram == ((4, 2), (2, -4))

    def test_unit_gram(self):
        assert fibonacci_lattice(1, 2).gram == ((2, 2), (2, -2))

    def test_discriminant(self):
        assert fibonacci_lattice(3, 1).disc == -45
        assert fibonacci_lattice(5, 2).disc == -25 * 8

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            fibonacci_lattice(0, 1)
        with pytest.raises(ValueError):
            fibonacci_lattice(1, 0)

    def test_rejects_odd_diagonal(self):
        with pytest.raises(ValueError):
            EvenLattice2(((1, 0), (0, 2)))

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            EvenLattice2(((2, 1), (0, -2)))

    def test_gram_inverse_exact(self):
        lat = fibonacci_lattice(3, 1)
        inv = lat.gram_inverse()
        ident = [
            [sum(Fraction(lat.gram[i][k]) * inv[k][j] for k in range(2)) for j in range(2)]
            for i in range(2)
        ]
        assert ident == [[1, 0], [0, 1]]


class TestIsometries:
    def test_generator_is_isometry(self):
        assert is_isometry(generator_a(1), fibonacci_lattice(1, 1))

    def test_identity_is_isometry(self):
        for m, a in ((1, 1), (3, 1), (7, 4)):
            assert is_isometry(Isometry2(((1, 0), (0, 1))), fibonacci_lattice(m, a))

    def test_shear_is_not(self):
        assert not is_isometry(Isometry2(((1, 1), (0, 1))), fibonacci_lattice(1, 1))

    def test_generator_determinants(self):
        for a in range(1, 6):
            assert generator_a(a).det == -1
            assert generator_b(a).det == -1

    def test_ab_power_values(self):
        assert ab_power(1, 1).matrix == ((1, 1), (1, 2))
        assert ab_power(1, 0).matrix == ((1, 0), (0, 1))
        assert ab_power(1, 2).matrix == ((2, 3), (3, 5))

    @given(st.integers(1, 5), st.integers(0, 40))
    def test_ab_power_matches_literal_product(self, a, n):
        step = generator_a(a) @ generator_b(a)
        acc = Isometry2(((1, 0), (0, 1)))
        for _ in range(n):
            acc = acc @ step
        assert ab_power(a, n).matrix == acc.matrix
        assert ab_power(a, n).det == 1

    @given(st.integers(1, 5), st.integers(-20, 40), st.sampled_from([1, 2, 3, 7]))
    def test_ab_power_is_isometry_for_every_m(self, a, n, m):
        assert is_isometry(ab_power(a, n), fibonacci_lattice(m, a))

    @given(st.integers(1, 4), st.integers(-15, 15), st.integers(-15, 15))
    def test_negative_powers_invert(self, a, i, j):
        prod = ab_power(a, i) @ ab_power(a, j)
        assert prod.matrix == ab_power(a, i + j).matrix


class TestDiscriminantAction:
    def test_positive_case_even(self):
        assert disc_action(ab_power(1, 4), fibonacci_lattice(3, 1), 1).holds

    def test_positive_case_odd(self):
        assert disc_action(ab_power(1, 7), fibonacci_lattice(13, 1), -1).holds

    def test_failing_case(self):
        assert not disc_action(ab_power(1, 3), fibonacci_lattice(2, 1), 1).holds

    def test_rejects_non_isometry(self):
        with pytest.raises(ValueError):
            disc_action(Isometry2(((1, 1), (0, 1))), fibonacci_lattice(2, 1), 1)

    def test_integrality_matrix_values(self):
        assert all(
            entry.denominator == 1
            for row in integrality_matrix(4, 3, 1, 1)
            for entry in row
        )
        assert any(
            entry.denominator != 1
            for row in integrality_matrix(2, 5, 1, 1)
            for entry in row
        )

    @given(
        st.integers(1, 12),
        st.integers(2, 20),
        st.integers(1, 3),
        st.sampled_from([1, -1]),
    )
    def test_integrality_closed_form_corner(self, n, m, a, eps):
        matrix = integrality_matrix(n, m, a, eps)
        d = a * a + 4
        fn = gen_fib(a, n)
        expected = Fraction(d * fn * fn + (2 if n % 2 == 0 else -2) - 2 * eps, m * d)
        assert matrix[0][0] == expected

    @given(
        st.integers(1, 3),
        st.integers(2, 25),
        st.integers(1, 15),
        st.sampled_from([1, -1]),
    )
    def test_matches_bruteforce_oracle(self, a, m, n, eps):
        lat = fibonacci_lattice(m, a)
        g = ab_power(a, n)
        assert disc_action(g, lat, eps).holds == disc_action_bruteforce(g, lat, eps)

    def test_coset_count_equals_discriminant(self):
        for m, a in ((2, 1), (3, 1), (5, 2), (4, 3)):
            d, cosets = enumerate_discriminant_cosets(fibonacci_lattice(m, a))
            assert len(cosets) == d == m * m * (a * a + 4)


class TestPositiveCone:
    def test_examples(self):
        lat = fibonacci_lattice(3, 1)
        assert in_positive_cone((1, 0), lat)
        assert not in_positive_cone((0, 1), lat)
        assert not in_positive_cone((-1, 0), lat)

    def test_reduces_to_sign_of_x_on_standard_family(self):
        for m, a in ((1, 1), (3, 1), (2, 3)):
            lat = fibonacci_lattice(m, a)
            for x in range(-6, 7):
                for y in range(-6, 7):
                    expected = lat.square((x, y)) > 0 and x > 0
                    assert in_positive_cone((x, y), lat) == expected

    def test_rejects_definite_lattice(self):
        lat = EvenLattice2(((2, 0), (0, 2)))
        with pytest.raises(ValueError):
            in_positive_cone((1, 0), lat)

    def test_plus_isometries(self):
        assert is_plus_isometry(generator_a(1), fibonacci_lattice(4, 1))
        assert not is_plus_isometry(
            Isometry2(((-1, 0), (0, -1))), fibonacci_lattice(4, 1)
        )
        assert is_plus_isometry(ab_power(1, 5), fibonacci_lattice(2, 1))

    def test_plus_isometry_rejects_non_isometry(self):
        with pytest.raises(ValueError):
            is_plus_isometry(Isometry2(((2, 0), (0, 1))), fibonacci_lattice(2, 1))


word_strategy = st.builds(
    lambda first, length: "".join("AB"[(first + i) % 2] for i in range(length)),
    st.integers(0, 1),
    st.integers(0, 20),
)


class TestWordDecomposition:
    def test_examples(self):
        got = word_decompose(ab_power(1, 2), 1, 1)
        assert (got.sign, got.word) == (1, "ABAB")
        got = word_decompose(Isometry2(((1, 0), (0, 1))), 3, 1)
        assert (got.sign, got.word) == (1, "")
        got = word_decompose(generator_a(1), 1, 1)
        assert (got.sign, got.word) == (1, "A")

    def test_minus_identity(self):
        got = word_decompose(Isometry2(((-1, 0), (0, -1))), 2, 1)
        assert (got.sign, got.word) == (-1, "")

    def test_negated_generator(self):
        minus_a = Isometry2(((-1, 0), (-1, 1)))
        got = word_decompose(minus_a, 1, 1)
        assert (got.sign, got.word) == (-1, "A")

    def test_rejects_non_isometry(self):
        with pytest.raises(ValueError):
            word_decompose(Isometry2(((1, 1), (0, 1))), 1, 1)

    @settings(max_examples=200)
    @given(st.integers(1, 4), st.sampled_from([1, -1]), word_strategy)
    def test_round_trip(self, a, sign, word):
        g = evaluate_word(sign, word, a)
        got = word_decompose(g, 1, a)
        assert got is not None
        assert (got.sign, got.word) == (sign, word)

    def test_ab_powers_decompose(self):
        for n in range(1, 8):
            got = word_decompose(ab_power(2, n), 3, 2)
            assert (got.sign, got.word) == (1, "AB" * n)
