"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. Each test enumerates its full stated range; everything is exact
integer arithmetic, so the only tolerances are the two floating-point fields
of the Salem data (bounded relatively at 1e-12 elsewhere in the suite).
"""

import json
import math
import random

from fibk3 import engine, lattice, salem
from fibk3._primes import factorize
from fibk3.fibgen import (
    classify_membership,
    divides_in_sequence,
    entry_point,
    gen_fib,
    gen_fib_iter,
    salem_trace_of_power,
    shifted_trace,
)
from fibk3.salem import IntPolynomial, cyclotomic
from fibk3.salem import _resultant_subresultant, _resultant_sylvester


def _report(number: int, label: str) -> None:
    print(f"PASS criterion {number}: {label}")


def test_criterion_01_exact_values_and_factorizations():
    assert gen_fib(1, 20) == 6765
    assert factorize(6765) == {3: 1, 5: 1, 11: 1, 41: 1}
    assert gen_fib(1, 50) == 12586269025
    assert factorize(12586269025) == {5: 2, 11: 1, 101: 1, 151: 1, 3001: 1}
    assert gen_fib(1, 100) == 354224848179261915075
    assert factorize(354224848179261915075) == {
        3: 1,
        5: 2,
        11: 1,
        41: 1,
        101: 1,
        151: 1,
        401: 1,
        3001: 1,
        570601: 1,
    }
    _report(1, "f_20, f_50, f_100 values and factorizations")


def test_criterion_02_membership_matches_enumeration():
    bound = 10**5
    for a in (1, 2, 3, 5):
        expected: dict[int, list[int]] = {}
        k, x, y = 0, 0, 1
        while x <= bound:
            expected.setdefault(x, []).append(k)
            k, x, y = k + 1, y, a * y + x
        for n in range(bound + 1):
            result = classify_membership(a, n)
            want = expected.get(n)
            if want is None:
                assert not result.is_member, (a, n)
            else:
                got = [(m.k, m.parity) for m in result.matches]
                assert got == [
                    (k, "even" if k % 2 == 0 else "odd") for k in want
                ], (a, n)
    _report(2, "membership criterion == enumeration for a in {1,2,3,5}, n <= 1e5")


def test_criterion_03_entry_points_and_structure():
    assert entry_point(1, 3) == 4
    assert entry_point(1, 13) == 7
    assert entry_point(1, 61) == 15
    assert entry_point(1, 15) == 20
    for a in (1, 2):
        for m in range(2, 201):
            e = entry_point(a, m)
            x, y = 0, 1
            for n in range(1, 501):
                x, y = y, (a * y + x) % m
                assert (x == 0) == (n % e == 0), (a, m, n)
    _report(3, "entry points and m | a_n <=> e(m) | n for m <= 200, n <= 500")


def test_criterion_04_divisibility_suite():
    # NOTE: this criterion is implemented exactly as stated and is expected
    # to FAIL. The unrestricted equivalence a_k | a_q <=> k | q is false at
    # the degenerate index a_k = 1: for a = 1, a_2 = 1 divides a_3 = 2 while
    # 2 does not divide 3 (75 such pairs in the stated range, all at
    # a = 1, k = 2, q odd). The equivalence does hold whenever a_k > 1, and
    # the gcd form gcd(a_k, a_q) = a_gcd(k, q) holds everywhere; both are
    # verified green in tests/test_fibgen.py and the divisibility-iff
    # self-test suite. See the README erratum notes.
    for a in range(1, 9):
        prev, cur = 0, 1
        for _ in range(1, 201):
            prev, cur = cur, a * cur + prev
            assert math.gcd(prev, cur) == 1, a
    for a in range(1, 6):
        seq = [0, 1]
        while len(seq) <= 151:
            seq.append(a * seq[-1] + seq[-2])
        for k in range(1, 151):
            for q in range(1, 151):
                divides = seq[q] % seq[k] == 0
                assert divides_in_sequence(a, k, q) == divides, (a, k, q)
                if divides and q > k:
                    assert seq[q - k] % seq[k] == 0, (a, k, q)
                assert divides == (q % k == 0), (
                    f"known defect of the published statement: a={a}, k={k}, "
                    f"q={q} has a_k={seq[k]} | a_q={seq[q]} but k | q is "
                    f"{q % k == 0}; the equivalence requires a_k > 1"
                )
    _report(4, "coprime neighbors, divisor shift, and a_k | a_q <=> k | q")


def test_criterion_05_identity_suite():
    for a in range(1, 9):
        seq = [0, 1]
        while len(seq) <= 602:
            seq.append(a * seq[-1] + seq[-2])
        for n in range(1, 201):
            for k in range(1, n + 1):
                assert seq[n + k] == seq[k] * seq[n + 1] + seq[k - 1] * seq[n], (a, n, k)
        for n in range(1, 301):
            assert seq[n + 1] * seq[n - 1] - seq[n] ** 2 == (1 if n % 2 == 0 else -1)
        for n in range(0, 301):
            assert salem_trace_of_power(a, n) == gen_fib(a, 2 * n - 1) + gen_fib(
                a, 2 * n + 1
            )
        for n in range(1, 301):
            assert shifted_trace(a, n) == seq[2 * n - 2] + seq[2 * n]
        for n in range(-400, 401):
            assert gen_fib(a, n) == gen_fib_iter(a, n)
    _report(5, "addition, Cassini, trace, and shifted-trace identities, a <= 8")


def test_criterion_06_lattice_suite():
    for a in range(1, 6):
        step = lattice.generator_a(a) @ lattice.generator_b(a)
        acc = lattice.Isometry2(((1, 0), (0, 1)))
        for n in range(0, 61):
            closed = lattice.ab_power(a, n)
            assert closed.matrix == acc.matrix, (a, n)
            assert closed.det == 1
            acc = acc @ step
        assert lattice.generator_a(a).det == -1
        assert lattice.generator_b(a).det == -1
        for m in (1, 2, 3, 7):
            lat = lattice.fibonacci_lattice(m, a)
            assert lattice.is_isometry(lattice.generator_a(a), lat)
            assert lattice.is_isometry(lattice.generator_b(a), lat)
            for n in range(0, 41):
                assert lattice.is_isometry(lattice.ab_power(a, n), lat), (a, m, n)
    for a in range(1, 4):
        for m in range(2, 31):
            lat = lattice.fibonacci_lattice(m, a)
            for n in range(1, 21):
                g = lattice.ab_power(a, n)
                for eps in (1, -1):
                    fast = lattice.disc_action(g, lat, eps).holds
                    assert fast == lattice.disc_action_bruteforce(g, lat, eps), (
                        a,
                        m,
                        n,
                        eps,
                    )
    for a in range(1, 4):
        for m in range(2, 51):
            lat = lattice.fibonacci_lattice(m, a)
            for n in range(1, 41):
                g = lattice.ab_power(a, n)
                divides = gen_fib(a, n) % m == 0
                eps = 1 if n % 2 == 0 else -1
                assert lattice.disc_action(g, lat, eps).holds == divides, (a, m, n)
                assert not lattice.disc_action(g, lat, -eps).holds or not divides
    _report(6, "powers, orthogonality, discriminant oracle, integrality both ways")


def test_criterion_07_resultant_suite():
    rng = random.Random(20240530)
    for _ in range(500):
        p = IntPolynomial(
            [rng.randint(-50, 50) for _ in range(rng.randint(1, 8))]
            + [rng.choice([c for c in range(-50, 51) if c])]
        )
        q = IntPolynomial(
            [rng.randint(-50, 50) for _ in range(rng.randint(1, 8))]
            + [rng.choice([c for c in range(-50, 51) if c])]
        )
        assert _resultant_sylvester(p, q) == _resultant_subresultant(p, q), (p, q)
    s = IntPolynomial([1, -3, 1])
    assert salem.resultant(s, cyclotomic(5)) == 121
    assert salem.resultant(s, cyclotomic(10)) == 25
    assert salem.resultant(s, cyclotomic(25)) == 101**2 * 151**2
    assert salem.resultant(s, cyclotomic(50)) == 5**2 * 3001**2
    for l in (5, 10, 25, 50):
        phi = cyclotomic(l)
        for n in range(1, 31):
            tau = salem_trace_of_power(1, n)
            assert salem.closed_form_resultant(l, n) == salem.resultant(
                IntPolynomial([1, -tau, 1]), phi
            ), (l, n)
    _report(7, "two-method agreement, published resultants, closed forms n <= 30")


def test_criterion_08_erratum_detection():
    s = IntPolynomial([1, -322, 1])
    phi5 = cyclotomic(5)
    by_sylvester = _resultant_sylvester(s, phi5)
    by_subresultant = _resultant_subresultant(s, phi5)
    f6 = gen_fib(1, 6)
    closed = 5**2 * (5 * f6**4 + 5 * f6**2 + 1) ** 2
    assert by_sylvester == by_subresultant == closed == 104005**2
    assert closed != 59**2 * 1741**2
    flags = engine.errata_for_resultant(s, phi5)
    assert flags and "59^2*1741^2" in flags[0]
    assert any("published-resultant-322-phi5" in f for f in engine.analyze(61, 1).errata_flags)
    _report(8, "res(x^2-322x+1, Phi_5) recomputed consistently and flagged")


def test_criterion_09_engine_regression():
    rep3 = engine.analyze(3, 1)
    assert rep3.survivors == ((1, 4),)
    assert (rep3.generator.l, rep3.generator.k) == (1, 4)
    rep13 = engine.analyze(13, 1)
    assert rep13.survivors == ((2, 7),)
    rep61 = engine.analyze(61, 1)
    assert set(rep61.survivors) == {(2, 15), (10, 3)}
    assert rep61.errata_flags
    scenario = engine.target_exponent_scenario(15)
    assert scenario.published_survivors == ((1, 100),)
    assert scenario.closure_report.survivors == ((1, 20),)
    assert scenario.errata_flags
    for _ in range(2):
        again = json.dumps(engine.analyze(61, 1).as_dict(), sort_keys=True)
        assert again == json.dumps(rep61.as_dict(), sort_keys=True)
        s_again = json.dumps(engine.target_exponent_scenario(15).as_dict(), sort_keys=True)
        assert s_again == json.dumps(scenario.as_dict(), sort_keys=True)
    _report(9, "m=3, m=13, m=61 survivor sets; m=15 scenario; deterministic reports")


def test_criterion_10_filter_unit_checks():
    passing = [l for l in (1, 2, 5, 10, 25, 50) if salem.cyclotomic_trace_filter(3, l)]
    assert passing == [10, 50]
    assert salem.admissible_trace_root(3, 1) is None
    assert salem.admissible_trace_root(3, -1) is None
    assert {l: salem.char_poly_multiplicity(l) for l in (1, 2, 5, 10, 25, 50)} == {
        1: 20,
        2: 20,
        5: 5,
        10: 5,
        25: 1,
        50: 1,
    }
    _report(10, "trace filter at tau=3, admissible roots, multiplicities")


def test_criterion_11_pell_suite():
    for a in range(1, 4):
        for k in range(1, 13):
            fk = gen_fib(a, k)
            d = (a * a + 4) * fk * fk
            eps = 1 if k % 2 == 0 else -1
            alpha_sq = d + 4 * eps
            alpha = math.isqrt(alpha_sq)
            assert alpha * alpha == alpha_sq, (a, k)
            assert (alpha, 1) in salem.pell_solutions(d, eps, 2), (a, k)
    _report(11, "membership witnesses solve alpha^2 - D beta^2 = 4 eps with beta = 1")
