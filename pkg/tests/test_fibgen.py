import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fibk3.fibgen import (
    GenFibParams,
    classify_membership,
    divides_in_sequence,
    entry_point,
    gen_fib,
    gen_fib_iter,
    is_perfect_square,
    salem_trace_of_power,
    shifted_trace,
)


def naive_fib(a, n):
    """Independent oracle: run the recurrence forwards or backwards."""
    x, y = 0, 1
    if n >= 0:
        for _ in range(n):
            x, y = y, a * y + x
        return x
    for _ in range(-n):
        x, y = y - a * x, x
    return x


class TestGenFib:
    def test_known_values(self):
        assert gen_fib(1, 20) == 6765
        assert gen_fib(1, 0) == 0
        assert gen_fib(2, 5) == 29
        assert gen_fib(1, -3) == 2

    def test_rejects_bad_parameter(self):
        with pytest.raises(ValueError):
            gen_fib(0, 3)
        with pytest.raises(ValueError):
            gen_fib(-1, 3)
        with pytest.raises(ValueError):
            GenFibParams(0)

    def test_params_discriminant(self):
        assert GenFibParams(1).d == 5
        assert GenFibParams(3).d == 13

    @given(st.integers(1, 8), st.integers(-120, 120))
    def test_doubling_matches_naive(self, a, n):
        assert gen_fib(a, n) == naive_fib(a, n)
        assert gen_fib_iter(a, n) == naive_fib(a, n)

    @given(st.integers(1, 6), st.integers(-60, 60))
    def test_recurrence_everywhere(self, a, n):
        assert gen_fib(a, n + 2) == a * gen_fib(a, n + 1) + gen_fib(a, n)


class TestTraces:
    def test_known_values(self):
        assert salem_trace_of_power(1, 6) == 322
        assert salem_trace_of_power(1, 1) == 3
        assert salem_trace_of_power(1, 0) == 2
        assert salem_trace_of_power(1, 4) == 47

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            salem_trace_of_power(1, -1)

    @given(st.integers(1, 8), st.integers(0, 120))
    def test_equals_sum_of_odd_neighbors(self, a, n):
        assert salem_trace_of_power(a, n) == gen_fib(a, 2 * n - 1) + gen_fib(a, 2 * n + 1)

    def test_shifted_known_values(self):
        assert shifted_trace(1, 4) == 29
        assert shifted_trace(1, 1) == 1
        assert shifted_trace(2, 2) == 14

    @given(st.integers(1, 8), st.integers(1, 120))
    def test_shifted_equals_direct_sum(self, a, n):
        assert shifted_trace(a, n) == gen_fib(a, 2 * n - 2) + gen_fib(a, 2 * n)

    def test_shifted_requires_positive_index(self):
        with pytest.raises(ValueError):
            shifted_trace(1, 0)


class TestPerfectSquare:
    def test_known_values(self):
        assert is_perfect_square(49) == 7
        assert is_perfect_square(0) == 0
        assert is_perfect_square(20801**2 * 25) == 104005
        assert is_perfect_square(-4) is None
        assert is_perfect_square(2) is None

    @given(st.integers(0, 10**30))
    def test_squares_round_trip(self, k):
        assert is_perfect_square(k * k) == k

    @given(st.integers(2, 10**15))
    def test_strictly_between_squares(self, k):
        assert is_perfect_square(k * k + 1) is None or k == 0


class TestMembership:
    def test_member_with_even_index(self):
        res = classify_membership(1, 3)
        assert res.is_member
        assert [(m.k, m.parity, m.square_witness) for m in res.matches] == [(4, "even", 7)]

    def test_non_member(self):
        assert classify_membership(1, 4).status == "not_member"

    def test_zero(self):
        res = classify_membership(1, 0)
        assert [(m.k, m.parity, m.square_witness) for m in res.matches] == [(0, "even", 2)]

    def test_double_match_at_one(self):
        res = classify_membership(1, 1)
        assert [(m.k, m.parity, m.square_witness) for m in res.matches] == [
            (1, "odd", 1),
            (2, "even", 3),
        ]

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            classify_membership(1, -1)

    @pytest.mark.parametrize("a", [1, 2, 3])
    def test_agrees_with_enumeration(self, a):
        bound = 3000
        expected = {}
        k, x, y = 0, 0, 1
        while x <= bound:
            expected.setdefault(x, []).append(k)
            k, x, y = k + 1, y, a * y + x
        for n in range(bound + 1):
            res = classify_membership(a, n)
            if n in expected:
                assert [m.k for m in res.matches] == expected[n]
            else:
                assert not res.is_member


class TestEntryPoint:
    def test_known_values(self):
        assert entry_point(1, 3) == 4
        assert entry_point(1, 61) == 15
        assert entry_point(1, 13) == 7
        assert entry_point(1, 15) == 20

    def test_rejects_small_modulus(self):
        with pytest.raises(ValueError):
            entry_point(1, 1)

    @pytest.mark.parametrize("a", [1, 2])
    def test_divisibility_structure(self, a):
        for m in range(2, 60):
            e = entry_point(a, m)
            x, y = 0, 1
            for n in range(1, 200):
                x, y = y, (a * y + x) % m
                assert (x == 0) == (n % e == 0)


class TestDivisibility:
    def test_known_values(self):
        assert divides_in_sequence(1, 4, 20) is True
        assert divides_in_sequence(1, 4, 6) is False
        assert divides_in_sequence(2, 1, 7) is True

    def test_iff_index_divides_for_nontrivial_divisors(self):
        # the index equivalence needs a_k > 1; the published unrestricted
        # form fails at a = 1, k = 2 where a_2 = 1 divides everything
        for a in range(1, 5):
            for k in range(1, 61):
                for q in range(1, 61):
                    divides = divides_in_sequence(a, k, q)
                    if gen_fib(a, k) > 1:
                        assert divides == (q % k == 0), (a, k, q)
                    else:
                        assert divides, (a, k, q)

    def test_degenerate_index_counterexample(self):
        # a_2 = 1 for a = 1: divisibility holds at odd q although 2 does not
        assert divides_in_sequence(1, 2, 3) is True
        assert 3 % 2 != 0

    @given(st.integers(1, 5), st.integers(1, 80), st.integers(1, 80))
    def test_strong_divisibility_gcd_form(self, a, k, q):
        assert math.gcd(gen_fib(a, k), gen_fib(a, q)) == gen_fib(a, math.gcd(k, q))

    @given(st.integers(1, 8), st.integers(1, 80))
    def test_neighbors_coprime(self, a, k):
        assert math.gcd(gen_fib(a, k), gen_fib(a, k + 1)) == 1

    @settings(max_examples=60)
    @given(st.integers(1, 4), st.integers(1, 70), st.integers(1, 70))
    def test_divisor_shifts_down(self, a, k, q):
        if q > k and gen_fib(a, q) % gen_fib(a, k) == 0:
            assert gen_fib(a, q - k) % gen_fib(a, k) == 0

    @given(st.integers(1, 6), st.integers(1, 50), st.integers(1, 50))
    def test_addition_formula(self, a, n, k):
        assert gen_fib(a, n + k) == gen_fib(a, k) * gen_fib(a, n + 1) + gen_fib(
            a, k - 1
        ) * gen_fib(a, n)

    @given(st.integers(1, 6), st.integers(1, 100))
    def test_cassini(self, a, n):
        lhs = gen_fib(a, n + 1) * gen_fib(a, n - 1) - gen_fib(a, n) ** 2
        assert lhs == (1 if n % 2 == 0 else -1)
