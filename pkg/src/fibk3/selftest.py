"""Named self-test suites: every module invariant as an executable check.

Each suite enumerates its stated parameter ranges deterministically (random
inputs use a fixed seed) and reports the number of checks, the number of
failures, and the first counterexample. The command-line front end exposes
them through `selftest [--suite NAME]`.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass

from . import engine, lattice, salem
from .fibgen import (
    classify_membership,
    divides_in_sequence,
    entry_point,
    gen_fib,
    gen_fib_iter,
    is_perfect_square,
    salem_trace_of_power,
    shifted_trace,
)

__all__ = ["SuiteResult", "available_suites", "run_suite", "run_suites"]


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checks: int
    failures: int
    first_counterexample: str | None

    @property
    def passed(self) -> bool:
        return self.failures == 0


class _Recorder:
    def __init__(self) -> None:
        self.checks = 0
        self.failures = 0
        self.first: str | None = None

    def check(self, ok: bool, describe) -> None:
        self.checks += 1
        if not ok:
            self.failures += 1
            if self.first is None:
                self.first = describe() if callable(describe) else str(describe)

    def result(self, name: str) -> SuiteResult:
        return SuiteResult(name, self.checks, self.failures, self.first)


def _sequence(a: int, upto: int) -> list[int]:
    vals = [0, 1]
    while len(vals) <= upto:
        vals.append(a * vals[-1] + vals[-2])
    return vals


def _suite_addition_formula() -> SuiteResult:
    rec = _Recorder()
    for a in range(1, 9):
        f = _sequence(a, 401)
        for n in range(1, 201):
            for k in range(1, n + 1):
                ok = f[n + k] == f[k] * f[n + 1] + f[k - 1] * f[n]
                rec.check(ok, lambda a=a, n=n, k=k: f"a={a}, n={n}, k={k}")
    return rec.result("addition-formula")


def _suite_cassini() -> SuiteResult:
    rec = _Recorder()
    for a in range(1, 9):
        f = _sequence(a, 301)
        for n in range(1, 301):
            ok = f[n + 1] * f[n - 1] - f[n] * f[n] == (1 if n % 2 == 0 else -1)
            rec.check(ok, lambda a=a, n=n: f"a={a}, n={n}")
    return rec.result("cassini")


def _suite_trace() -> SuiteResult:
    rec = _Recorder()
    for a in range(1, 9):
        for n in range(0, 301):
            direct = gen_fib(a, 2 * n - 1) + gen_fib(a, 2 * n + 1)
            ok = salem_trace_of_power(a, n) == direct
            rec.check(ok, lambda a=a, n=n: f"a={a}, n={n}")
    return rec.result("trace")


def _suite_shifted_trace() -> SuiteResult:
    rec = _Recorder()
    for a in range(1, 9):
        for n in range(1, 301):
            direct = gen_fib(a, 2 * n - 2) + gen_fib(a, 2 * n)
            ok = shifted_trace(a, n) == direct
            rec.check(ok, lambda a=a, n=n: f"a={a}, n={n}")
    return rec.result("shifted-trace")


def _suite_membership() -> SuiteResult:
    rec = _Recorder()
    bound = 10**5
    for a in (1, 2, 3, 5):
        expected: dict[int, list[int]] = {}
        k, x, y = 0, 0, 1
        while x <= bound:
            expected.setdefault(x, []).append(k)
            k, x, y = k + 1, y, a * y + x
        for n in range(bound + 1):
            res = classify_membership(a, n)
            want = expected.get(n)
            if want is None:
                rec.check(not res.is_member, lambda a=a, n=n: f"a={a}, n={n} spurious")
            else:
                got = [(m.k, m.parity) for m in res.matches]
                exp = [(k, "even" if k % 2 == 0 else "odd") for k in want]
                rec.check(
                    res.is_member and got == exp,
                    lambda a=a, n=n, got=got, exp=exp: f"a={a}, n={n}: {got} != {exp}",
                )
    return rec.result("membership")


def _suite_coprimality() -> SuiteResult:
    rec = _Recorder()
    for a in range(1, 9):
        f = _sequence(a, 201)
        for k in range(1, 201):
            rec.check(
                math.gcd(f[k], f[k + 1]) == 1, lambda a=a, k=k: f"a={a}, k={k}"
            )
    return rec.result("coprimality")


def _suite_divisibility_shift() -> SuiteResult:
    rec = _Recorder()
    for a in range(1, 6):
        f = _sequence(a, 151)
        for k in range(1, 151):
            for q in range(k + 1, 151):
                if f[q] % f[k] == 0:
                    rec.check(
                        f[q - k] % f[k] == 0, lambda a=a, k=k, q=q: f"a={a}, k={k}, q={q}"
                    )
    return rec.result("divisibility-shift")


def _suite_divisibility_iff() -> SuiteResult:
    # corrected statement: the index equivalence holds whenever a_k > 1;
    # the lone degenerate divisor a_2 = 1 (a = 1) divides everything
    rec = _Recorder()
    for a in range(1, 6):
        f = _sequence(a, 151)
        for k in range(1, 151):
            for q in range(1, 151):
                divides = divides_in_sequence(a, k, q)
                if f[k] > 1:
                    ok = divides == (q % k == 0)
                else:
                    ok = divides
                rec.check(ok, lambda a=a, k=k, q=q: f"a={a}, k={k}, q={q}")
    return rec.result("divisibility-iff")


def _suite_entry_point() -> SuiteResult:
    rec = _Recorder()
    for a in (1, 2):
        for m in range(2, 201):
            e = entry_point(a, m)
            x, y = 0, 1
            for n in range(1, 501):
                x, y = y, (a * y + x) % m
                ok = (x == 0) == (n % e == 0)
                rec.check(ok, lambda a=a, m=m, n=n, e=e: f"a={a}, m={m}, n={n}, e={e}")
    return rec.result("entry-point")


def _suite_fast_path() -> SuiteResult:
    rec = _Recorder()
    for a in range(1, 9):
        for n in range(-400, 401):
            ok = gen_fib(a, n) == gen_fib_iter(a, n)
            rec.check(ok, lambda a=a, n=n: f"a={a}, n={n}")
    return rec.result("fast-path")


def _suite_ab_power() -> SuiteResult:
    rec = _Recorder()
    for a in range(1, 6):
        ga = lattice.generator_a(a)
        gb = lattice.generator_b(a)
        rec.check(ga.det == -1 and gb.det == -1, lambda a=a: f"a={a} generator dets")
        step = ga @ gb
        acc = lattice.Isometry2(((1, 0), (0, 1)))
        for n in range(0, 61):
            closed = lattice.ab_power(a, n)
            rec.check(
                closed.matrix == acc.matrix and closed.det == 1,
                lambda a=a, n=n: f"a={a}, n={n} power mismatch",
            )
            acc = acc @ step
        for m in (1, 2, 3, 7):
            lat = lattice.fibonacci_lattice(m, a)
            rec.check(
                lattice.is_isometry(ga, lat) and lattice.is_isometry(gb, lat),
                lambda a=a, m=m: f"a={a}, m={m} generators",
            )
            for n in range(0, 41):
                rec.check(
                    lattice.is_isometry(lattice.ab_power(a, n), lat),
                    lambda a=a, m=m, n=n: f"a={a}, m={m}, n={n}",
                )
    return rec.result("ab-power")


def _suite_integrality() -> SuiteResult:
    rec = _Recorder()
    for a in range(1, 4):
        for m in range(2, 51):
            lat = lattice.fibonacci_lattice(m, a)
            for n in range(1, 41):
                g = lattice.ab_power(a, n)
                divides = gen_fib(a, n) % m == 0
                for eps in (1, -1):
                    holds = lattice.disc_action(g, lat, eps).holds
                    parity_match = (eps == 1) == (n % 2 == 0)
                    ok = holds == (divides and parity_match)
                    rec.check(
                        ok,
                        lambda a=a, m=m, n=n, eps=eps: f"a={a}, m={m}, n={n}, eps={eps}",
                    )
    return rec.result("integrality")


def _suite_disc_oracle() -> SuiteResult:
    rec = _Recorder()
    for a in range(1, 4):
        for m in range(2, 31):
            lat = lattice.fibonacci_lattice(m, a)
            for n in range(1, 21):
                g = lattice.ab_power(a, n)
                for eps in (1, -1):
                    fast = lattice.disc_action(g, lat, eps).holds
                    slow = lattice.disc_action_bruteforce(g, lat, eps)
                    rec.check(
                        fast == slow,
                        lambda a=a, m=m, n=n, eps=eps: f"a={a}, m={m}, n={n}, eps={eps}",
                    )
    return rec.result("disc-oracle")


def _suite_word() -> SuiteResult:
    rec = _Recorder()
    rng = random.Random(20240211)
    for _ in range(500):
        a = rng.randint(1, 4)
        length = rng.randint(0, 20)
        first = rng.choice("AB")
        word = "".join(
            "AB"[("AB".index(first) + i) % 2] for i in range(length)
        )
        sign = rng.choice((1, -1))
        g = lattice.evaluate_word(sign, word, a)
        got = lattice.word_decompose(g, rng.randint(1, 5), a)
        ok = got is not None and (got.sign, got.word) == (sign, word)
        rec.check(ok, lambda a=a, sign=sign, word=word, got=got: f"a={a}, {sign}*{word!r} -> {got}")
    return rec.result("word")


def _rand_poly(rng: random.Random, degree: int, span: int) -> salem.IntPolynomial:
    lead = rng.choice([c for c in range(-span, span + 1) if c != 0])
    return salem.IntPolynomial(
        [rng.randint(-span, span) for _ in range(degree)] + [lead]
    )


def _suite_resultant_agree() -> SuiteResult:
    rec = _Recorder()
    rng = random.Random(987654321)
    for _ in range(500):
        p = _rand_poly(rng, rng.randint(1, 8), 50)
        q = _rand_poly(rng, rng.randint(1, 8), 50)
        try:
            salem.resultant(p, q)  # raises InvariantViolation on disagreement
            rec.check(True, "")
        except Exception as exc:  # noqa: BLE001 - report, do not crash the suite
            rec.check(False, lambda p=p, q=q, exc=exc: f"{p!r}, {q!r}: {exc}")
    return rec.result("resultant-agree")


def _suite_resultant_multiplicative() -> SuiteResult:
    rec = _Recorder()
    rng = random.Random(55555)
    for _ in range(200):
        p = salem.IntPolynomial([rng.randint(-10, 10) for _ in range(rng.randint(1, 4))] + [1])
        q1 = salem.IntPolynomial([rng.randint(-10, 10) for _ in range(rng.randint(1, 4))] + [1])
        q2 = salem.IntPolynomial([rng.randint(-10, 10) for _ in range(rng.randint(1, 4))] + [1])
        ok = salem.resultant(p, q1 * q2) == salem.resultant(p, q1) * salem.resultant(p, q2)
        rec.check(ok, lambda p=p, q1=q1, q2=q2: f"{p!r}, {q1!r}, {q2!r}")
    return rec.result("resultant-multiplicative")


def _suite_closed_form_resultants() -> SuiteResult:
    rec = _Recorder()
    for l in (5, 10, 25, 50):
        phi = salem.cyclotomic(l)
        for n in range(1, 31):
            tau = salem_trace_of_power(1, n)
            generic = salem.resultant(salem.IntPolynomial([1, -tau, 1]), phi)
            ok = salem.closed_form_resultant(l, n) == generic
            rec.check(ok, lambda l=l, n=n: f"l={l}, n={n}")
    return rec.result("closed-form-resultants")


def _poly_gcd_degree_mod_p(p_coeffs, q_coeffs, p: int) -> int:
    def norm(cs):
        out = [c % p for c in cs]
        while out and out[-1] == 0:
            out.pop()
        return out

    A, B = norm(p_coeffs), norm(q_coeffs)
    while B:
        inv = pow(B[-1], -1, p)
        while len(A) >= len(B):
            shift = len(A) - len(B)
            factor = A[-1] * inv % p
            for i, c in enumerate(B):
                A[shift + i] = (A[shift + i] - factor * c) % p
            while A and A[-1] == 0:
                A.pop()
            if not A:
                break
        A, B = B, A
    return len(A) - 1


def _suite_common_factor() -> SuiteResult:
    rec = _Recorder()
    rng = random.Random(424242)
    primes = [p for p in range(2, 98) if all(p % d for d in range(2, p))]
    for _ in range(200):
        p_poly = salem.IntPolynomial([rng.randint(-20, 20) for _ in range(rng.randint(1, 5))] + [1])
        q_poly = salem.IntPolynomial([rng.randint(-20, 20) for _ in range(rng.randint(1, 5))] + [1])
        res = salem.resultant(p_poly, q_poly)
        for p in primes:
            shares = _poly_gcd_degree_mod_p(p_poly.coeffs, q_poly.coeffs, p) >= 1
            ok = (res % p == 0) == shares
            rec.check(ok, lambda p=p, pp=p_poly, qq=q_poly: f"p={p}, {pp!r}, {qq!r}")
    return rec.result("common-factor")


def _suite_palindromic() -> SuiteResult:
    rec = _Recorder()
    for a in range(1, 9):
        for n in range(1, 51):
            tau = salem_trace_of_power(a, n)
            quad = salem.salem_data(tau)
            ok = tau > 2 and salem.is_palindromic(quad.polynomial)
            rec.check(ok, lambda a=a, n=n: f"a={a}, n={n}")
    return rec.result("palindromic")


def _suite_pell() -> SuiteResult:
    rec = _Recorder()
    for d in (5, 8, 13, 45, 320):
        for eps in (1, -1):
            for alpha, beta in salem.pell_solutions(d, eps, 50):
                rec.check(
                    alpha * alpha - d * beta * beta == 4 * eps,
                    lambda d=d, eps=eps, a=alpha, b=beta: f"d={d}, eps={eps}, ({a},{b})",
                )
    for a in range(1, 4):
        for k in range(1, 13):
            fk = gen_fib(a, k)
            d = (a * a + 4) * fk * fk
            eps = 1 if k % 2 == 0 else -1
            alpha = is_perfect_square(d + 4 * eps)
            sols = salem.pell_solutions(d, eps, 2)
            rec.check(
                alpha is not None and (alpha, 1) in sols,
                lambda a=a, k=k, alpha=alpha: f"a={a}, k={k}, alpha={alpha}",
            )
    return rec.result("pell")


def _suite_cyclotomic() -> SuiteResult:
    rec = _Recorder()
    for l in range(1, 51):
        phi = salem.cyclotomic(l)
        rec.check(phi.degree == salem.euler_phi(l), lambda l=l: f"degree at l={l}")
        x_l = salem.IntPolynomial([-1] + [0] * (l - 1) + [1])
        _, rem = x_l.divmod_exact(phi)
        rec.check(rem.is_zero, lambda l=l: f"x^{l}-1 division at l={l}")
        for d in range(1, l):
            if l % d == 0:
                x_d = salem.IntPolynomial([-1] + [0] * (d - 1) + [1])
                _, rem = x_d.divmod_exact(phi)
                rec.check(
                    not rem.is_zero, lambda l=l, d=d: f"Phi_{l} divides x^{d}-1"
                )
    return rec.result("cyclotomic")


def _suite_engine_consistency() -> SuiteResult:
    rec = _Recorder()
    for a in range(1, 4):
        for m in range(2, 101):
            e = entry_point(a, m)
            if e % 5 == 0:
                continue
            rep = engine.analyze(m, a)
            ok = (
                rep.generator is not None
                and rep.survivors == ((rep.generator.l, rep.generator.k),)
                and rep.generator.k == e
                and rep.generator.l == (1 if e % 2 == 0 else 2)
            )
            rec.check(ok, lambda a=a, m=m, e=e: f"a={a}, m={m}, e={e}")
    return rec.result("engine-consistency")


def _suite_realization() -> SuiteResult:
    rec = _Recorder()
    for a in (1, 2):
        for m in range(2, 101):
            e = entry_point(a, m)
            for n in range(1, 201):
                got = engine.verify_realization(m, a, n)
                ok = got.realized == (n % e == 0)
                if got.realized:
                    ok = ok and got.epsilon == (1 if n % 2 == 0 else -1)
                rec.check(ok, lambda a=a, m=m, n=n, e=e: f"a={a}, m={m}, n={n}, e={e}")
    return rec.result("realization")


def _suite_closure_soundness() -> SuiteResult:
    rec = _Recorder()
    for a in (1, 2):
        for m in range(2, 61):
            rep = engine.analyze(m, a)
            e = rep.entry_point
            even_min = e if e % 2 == 0 else 2 * e
            for c in rep.candidates:
                if c.l % 2 == 1:
                    rec.check(
                        c.k * c.l == even_min,
                        lambda m=m, a=a, c=c: f"m={m}, a={a}, ({c.l},{c.k}) even-min",
                    )
                else:
                    rec.check(
                        c.k * (c.l // 2) == e and e % 2 == 1,
                        lambda m=m, a=a, c=c: f"m={m}, a={a}, ({c.l},{c.k}) odd-min",
                    )
                if c.survives:
                    rec.check(
                        salem.cyclotomic_trace_filter(c.tau, c.l),
                        lambda m=m, a=a, c=c: f"m={m}, a={a}, survivor ({c.l},{c.k})",
                    )
            # removing the resultant filter can only widen the survivor set
            wide = {
                (c.l, c.k)
                for c in rep.candidates
                if all(r.passed for r in c.reasons if r.name != "resultant-divisibility")
            }
            rec.check(
                set(rep.survivors) <= wide,
                lambda m=m, a=a: f"m={m}, a={a} monotonicity",
            )
    return rec.result("closure-soundness")


def _suite_report_determinism() -> SuiteResult:
    rec = _Recorder()
    for m, a in ((3, 1), (13, 1), (61, 1), (15, 1), (12, 2)):
        first = json.dumps(engine.analyze(m, a).as_dict(), sort_keys=True)
        second = json.dumps(engine.analyze(m, a).as_dict(), sort_keys=True)
        rec.check(first == second, lambda m=m, a=a: f"analyze({m},{a})")
    for m in (3, 15, 401):
        first = json.dumps(engine.target_exponent_scenario(m).as_dict(), sort_keys=True)
        second = json.dumps(engine.target_exponent_scenario(m).as_dict(), sort_keys=True)
        rec.check(first == second, lambda m=m: f"scenario({m})")
    return rec.result("report-determinism")


_SUITES = {
    "addition-formula": _suite_addition_formula,
    "cassini": _suite_cassini,
    "trace": _suite_trace,
    "shifted-trace": _suite_shifted_trace,
    "membership": _suite_membership,
    "coprimality": _suite_coprimality,
    "divisibility-shift": _suite_divisibility_shift,
    "divisibility-iff": _suite_divisibility_iff,
    "entry-point": _suite_entry_point,
    "fast-path": _suite_fast_path,
    "ab-power": _suite_ab_power,
    "integrality": _suite_integrality,
    "disc-oracle": _suite_disc_oracle,
    "word": _suite_word,
    "resultant-agree": _suite_resultant_agree,
    "resultant-multiplicative": _suite_resultant_multiplicative,
    "closed-form-resultants": _suite_closed_form_resultants,
    "common-factor": _suite_common_factor,
    "palindromic": _suite_palindromic,
    "pell": _suite_pell,
    "cyclotomic": _suite_cyclotomic,
    "engine-consistency": _suite_engine_consistency,
    "realization": _suite_realization,
    "closure-soundness": _suite_closure_soundness,
    "report-determinism": _suite_report_determinism,
}

_ALIASES = {
    "lemma51": "closed-form-resultants",
}


def available_suites() -> tuple[str, ...]:
    return tuple(_SUITES)


def run_suite(name: str) -> SuiteResult:
    key = _ALIASES.get(name, name)
    if key not in _SUITES:
        raise ValueError(
            f"unknown suite {name!r}; available: {', '.join(available_suites())}"
        )
    return _SUITES[key]()


def run_suites(name: str | None = None) -> list[SuiteResult]:
    if name is not None:
        return [run_suite(name)]
    return [fn() for fn in _SUITES.values()]
