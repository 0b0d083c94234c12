"""Decision procedure for automorphism-generator candidates.

Given lattice parameters (m, a), m >= 2, the entry point e = min{n : m | a_n}
controls everything:

* every realized isometry exponent is a multiple of e (realized means the
  power of A*B extends over the discriminant group with the parity-matched
  sign, the exact integrality test of lattice.disc_action);
* when 5 does not divide e the generator is determined directly: it acts as
  (A*B)^e, symplectically for even e and anti-symplectically for odd e;
* otherwise candidates (l, k) are enumerated by the closure rule below and
  each is run through necessary-condition filters with machine-checkable
  reasons. Survivors are candidates, never certified generators: the
  sufficiency direction needs transcendental input that is out of scope here.

Closure rule. A generator with 2-form action of order l has its symplectic
power at exponent k*l (l odd) and its anti-symplectic power at exponent
k*l/2 (l even). Matching those against the minimal realized even and odd
exponents forces: e even -> candidates (l, e/l) for l in {1, 5, 25} dividing
e; e odd -> candidates (l, 2e/l) for l in {2, 10, 50} with l/2 dividing e.

Reports carry errata flags whenever this machinery disagrees with worked
values published for specific (m, a); those discrepancies are recomputed and
surfaced, never silently adopted or discarded.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantViolation
from .fibgen import entry_point, gen_fib, is_perfect_square, salem_trace_of_power
from .lattice import ab_power, disc_action, fibonacci_lattice
from ._primes import prime_divisors
from .salem import (
    ENGINE_CYCLOTOMIC_INDICES,
    IntPolynomial,
    SalemQuadratic,
    admissible_trace_root,
    char_poly_multiplicity,
    closed_form_resultant,
    cyclotomic,
    cyclotomic_trace_filter,
    epsilon_for_index,
    resultant,
    salem_data,
)

__all__ = [
    "FilterCheck",
    "CandidatePair",
    "SurvivorDetail",
    "AnalysisReport",
    "RealizationResult",
    "ScenarioCandidate",
    "TargetExponentReport",
    "analyze",
    "entry_point_generator",
    "generator_candidates",
    "verify_realization",
    "target_exponent_scenario",
    "disc_prime_divisors",
    "errata_for_resultant",
]


@dataclass(frozen=True)
class FilterCheck:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class CandidatePair:
    """A generator hypothesis: 2-form order l, isometry exponent k."""

    l: int
    k: int
    tau: int
    epsilon_class: str  # symplectic / anti_symplectic / order_l
    verdict: str  # survives / excluded
    reasons: tuple[FilterCheck, ...]

    @property
    def survives(self) -> bool:
        return self.verdict == "survives"


@dataclass(frozen=True)
class SurvivorDetail:
    l: int
    k: int
    char_poly_shape: str
    salem: SalemQuadratic


@dataclass(frozen=True)
class AnalysisReport:
    m: int
    a: int
    entry_point: int
    generator_criterion_applies: bool  # true exactly when 5 does not divide e
    generator: CandidatePair | None
    candidates: tuple[CandidatePair, ...]
    survivor_details: tuple[SurvivorDetail, ...]
    resolution: str  # determined / inconclusive
    errata_flags: tuple[str, ...]

    @property
    def survivors(self) -> tuple[tuple[int, int], ...]:
        return tuple((c.l, c.k) for c in self.candidates if c.survives)

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "a": self.a,
            "entry_point": self.entry_point,
            "generator_criterion_applies": self.generator_criterion_applies,
            "generator": _candidate_dict(self.generator) if self.generator else None,
            "candidates": [_candidate_dict(c) for c in self.candidates],
            "survivors": [list(s) for s in self.survivors],
            "survivor_details": [
                {
                    "l": d.l,
                    "k": d.k,
                    "char_poly_shape": d.char_poly_shape,
                    "salem": {
                        "tau": d.salem.tau,
                        "polynomial": str(d.salem.polynomial),
                        "lambda": d.salem.lambda_,
                        "entropy": d.salem.entropy,
                    },
                }
                for d in self.survivor_details
            ],
            "resolution": self.resolution,
            "errata_flags": list(self.errata_flags),
        }


def _candidate_dict(c: CandidatePair) -> dict:
    return {
        "l": c.l,
        "k": c.k,
        "tau": c.tau,
        "epsilon_class": c.epsilon_class,
        "verdict": c.verdict,
        "reasons": [
            {"name": r.name, "passed": r.passed, "detail": r.detail}
            for r in c.reasons
        ],
    }


@dataclass(frozen=True)
class RealizationResult:
    realized: bool
    epsilon: int | None


# ---------------------------------------------------------------------------
# Errata registry: published worked values this machinery recomputes
# differently. Flags are emitted alongside results, never merged into them.
# ---------------------------------------------------------------------------

_RES_322_PHI5_PUBLISHED = 59**2 * 1741**2


def _flag_resultant_322() -> str:
    recomputed = closed_form_resultant(5, 6)
    generic = resultant(IntPolynomial([1, -322, 1]), cyclotomic(5))
    if generic != recomputed:
        raise InvariantViolation(
            f"closed form {recomputed} and generic resultant {generic} disagree"
        )
    return (
        "published-resultant-322-phi5: the published value "
        f"59^2*1741^2 = {_RES_322_PHI5_PUBLISHED} for res(x^2 - 322*x + 1, Phi_5) "
        f"differs from the recomputed {recomputed} = 104005^2 = 5^2*11^2*31^2*61^2; "
        "both independent resultant algorithms and the Fibonacci closed form agree "
        "on the recomputed value, which 61 does divide"
    )


def _flag_generator_m61() -> str:
    return (
        "published-generator-m61: the published analysis of (m, a) = (61, 1) "
        "concludes the anti-symplectic (l, k) = (2, 15) generator alone; the "
        "closure rule also leaves (l, k) = (10, 3) surviving every implemented "
        "filter, and the exclusion argument it relies on uses the flagged "
        "resultant constant"
    )


def _flag_generator_m15() -> str:
    return (
        "published-generator-m15: the published target-exponent analysis of m = 15 "
        "selects exponent 100, but 15 | f_20 = 6765 realizes the symplectic "
        "exponent 20, which cannot be a power of exponent 100; the closure rule "
        "yields (l, k) = (1, 20)"
    )


_CONTEXT_FLAGS: dict[tuple[int, int], tuple] = {
    (61, 1): (_flag_resultant_322, _flag_generator_m61),
    (15, 1): (_flag_generator_m15,),
}


def errata_for_resultant(p: IntPolynomial, q: IntPolynomial) -> tuple[str, ...]:
    """Flags applicable to a directly requested resultant computation."""
    suspect = {IntPolynomial([1, -322, 1]).coeffs, cyclotomic(5).coeffs}
    if {p.coeffs, q.coeffs} == suspect:
        return (_flag_resultant_322(),)
    return ()


# ---------------------------------------------------------------------------
# Filters.
# ---------------------------------------------------------------------------


def disc_prime_divisors(m: int, a: int) -> tuple[int, ...]:
    """Sorted primes dividing the lattice discriminant m^2 (a^2 + 4)."""
    return tuple(sorted(set(prime_divisors(m)) | set(prime_divisors(a * a + 4))))


def _epsilon_class(l: int) -> str:
    if l == 1:
        return "symplectic"
    if l == 2:
        return "anti_symplectic"
    return "order_l"


def _check_trace_squares(tau: int, l: int) -> FilterCheck:
    eps = epsilon_for_index(l)
    passed = cyclotomic_trace_filter(tau, l)
    if l in (1, 2):
        root = admissible_trace_root(tau, eps)
        if root is not None:
            detail = f"tau + ({2 * eps}) = {root}^2 with admissible root"
        else:
            plain = is_perfect_square(tau + 2 * eps)
            if plain is None:
                detail = f"tau + ({2 * eps}) = {tau + 2 * eps} is not a square"
            else:
                detail = f"root {plain} of tau + ({2 * eps}) is not admissible"
    else:
        first = is_perfect_square(tau + 2 * eps)
        second = is_perfect_square(5 * (tau - 2 * eps))
        detail = (
            f"tau + ({2 * eps}) square root: {first}, "
            f"5*(tau - ({2 * eps})) square root: {second}"
        )
    return FilterCheck("cyclotomic-trace-squares", passed, detail)


def _check_trace_root(tau: int, l: int) -> FilterCheck:
    eps = epsilon_for_index(l)
    root = admissible_trace_root(tau, eps)
    if root is not None:
        return FilterCheck(
            "trace-root-admissible", True, f"alpha = {root} admissible for eps = {eps}"
        )
    return FilterCheck(
        "trace-root-admissible",
        False,
        f"no admissible root of tau + ({2 * eps}) = {tau + 2 * eps}",
    )


def _check_resultant(tau: int, l: int, primes: tuple[int, ...]) -> FilterCheck:
    value = resultant(IntPolynomial([1, -tau, 1]), cyclotomic(l))
    magnitude = abs(value)
    for p in primes:
        if magnitude % p != 0:
            return FilterCheck(
                "resultant-divisibility",
                False,
                f"prime {p} of the discriminant does not divide res = {value}",
            )
    return FilterCheck(
        "resultant-divisibility",
        True,
        f"all discriminant primes {list(primes)} divide res = {value}",
    )


def _check_integrality(m: int, a: int, l: int, k: int) -> FilterCheck:
    eps = epsilon_for_index(l)
    divides = gen_fib(a, k) % m == 0
    action = disc_action(ab_power(a, k), fibonacci_lattice(m, a), eps)
    if divides != action.holds:
        raise InvariantViolation(
            f"divisibility m | a_k and the integrality test disagree at "
            f"m={m}, a={a}, k={k}, eps={eps}"
        )
    if action.holds:
        detail = f"m | a_{k} and (g - ({eps})I)Q^-1 is integral"
    else:
        detail = f"m does not divide a_{k} (integrality test fails alike)"
    return FilterCheck("discriminant-integrality", action.holds, detail)


def _char_poly_shape(l: int, tau: int) -> str:
    s = str(IntPolynomial([1, -tau, 1]))
    if l == 1:
        return f"({s})*(x - 1)^20"
    if l == 2:
        return f"({s})*(x + 1)^20"
    return f"({s})*(Phi_{l}(x))^{char_poly_multiplicity(l)}"


def _build_candidate(
    m: int, a: int, l: int, k: int, primes: tuple[int, ...]
) -> CandidatePair:
    tau = salem_trace_of_power(a, k)
    checks = [_check_trace_squares(tau, l)]
    if l in (1, 2):
        checks.append(_check_trace_root(tau, l))
    checks.append(_check_resultant(tau, l, primes))
    if l in (1, 2):
        checks.append(_check_integrality(m, a, l, k))
    verdict = "survives" if all(c.passed for c in checks) else "excluded"
    return CandidatePair(l, k, tau, _epsilon_class(l), verdict, tuple(checks))


# ---------------------------------------------------------------------------
# Main analysis.
# ---------------------------------------------------------------------------


def analyze(m: int, a: int) -> AnalysisReport:
    """Full generator analysis for the lattice with parameters (m, a), m >= 2.

    Computes the entry point e, the directly determined generator when 5 does
    not divide e, and the filtered closure-rule candidate list either way.
    Candidate order and every detail string are deterministic, so identical
    inputs serialize identically.
    """
    if m < 2:
        raise ValueError("analysis requires m >= 2")
    if a < 1:
        raise ValueError("a must be >= 1")
    e = entry_point(a, m)
    primes = disc_prime_divisors(m, a)

    if e % 2 == 0:
        pairs = [(l, e // l) for l in (1, 5, 25) if e % l == 0]
    else:
        pairs = [(l, 2 * e // l) for l in (2, 10, 50) if e % (l // 2) == 0]
    pairs.sort()
    candidates = tuple(_build_candidate(m, a, l, k, primes) for l, k in pairs)

    applies = e % 5 != 0
    generator = None
    if applies:
        want_l = 1 if e % 2 == 0 else 2
        for c in candidates:
            if c.l == want_l and c.k == e:
                generator = c
                break
        if generator is None or not generator.survives:
            raise InvariantViolation(
                f"expected determined generator (l={want_l}, k={e}) to survive"
            )

    survivors = [c for c in candidates if c.survives]
    details = tuple(
        SurvivorDetail(c.l, c.k, _char_poly_shape(c.l, c.tau), salem_data(c.tau))
        for c in survivors
    )
    resolution = "determined" if len(survivors) == 1 else "inconclusive"
    flags = tuple(build() for build in _CONTEXT_FLAGS.get((m, a), ()))
    return AnalysisReport(
        m=m,
        a=a,
        entry_point=e,
        generator_criterion_applies=applies,
        generator=generator,
        candidates=candidates,
        survivor_details=details,
        resolution=resolution,
        errata_flags=flags,
    )


def entry_point_generator(m: int, a: int) -> AnalysisReport:
    """Analysis emphasizing the directly determined generator.

    When 5 does not divide the entry point e, the report's generator field
    holds the (l, k) = (1_or_2, e) candidate; otherwise the criterion does not
    apply and the filtered candidate list is the answer.
    """
    return analyze(m, a)


def generator_candidates(m: int, a: int) -> AnalysisReport:
    """Closure-rule candidate enumeration and filtering (full report)."""
    return analyze(m, a)


def verify_realization(m: int, a: int, n: int) -> RealizationResult:
    """Whether (A*B)^n extends across the discriminant group for L(m, a).

    Realized with epsilon = +1 for even n and epsilon = -1 for odd n, decided
    by the exact integrality test.
    """
    if m < 2:
        raise ValueError("realization requires m >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    eps = 1 if n % 2 == 0 else -1
    holds = disc_action(ab_power(a, n), fibonacci_lattice(m, a), eps).holds
    return RealizationResult(holds, eps if holds else None)


# ---------------------------------------------------------------------------
# Target-exponent scenario (the published 100-exponent enumeration).
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScenarioCandidate:
    l: int
    k: int
    required_index: int  # exponent whose divisibility by m the pair needs
    verdict: str
    reasons: tuple[str, ...]

    @property
    def survives(self) -> bool:
        return self.verdict == "survives"


@dataclass(frozen=True)
class TargetExponentReport:
    m: int
    n_target: int
    published_candidates: tuple[ScenarioCandidate, ...]
    published_survivors: tuple[tuple[int, int], ...]
    closure_report: AnalysisReport
    errata_flags: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "n_target": self.n_target,
            "published_style_candidates": [
                {
                    "l": c.l,
                    "k": c.k,
                    "required_index": c.required_index,
                    "verdict": c.verdict,
                    "reasons": list(c.reasons),
                }
                for c in self.published_candidates
            ],
            "published_style_survivors": [list(s) for s in self.published_survivors],
            "closure_rule": self.closure_report.as_dict(),
            "errata_flags": list(self.errata_flags),
        }


# pairs the published enumeration discards on grounds no implemented
# criterion reproduces; each is re-checked concretely and flagged when the
# concrete filters would have kept it
_LITERAL_EXCLUSIONS = {
    (1, 20): "published-exclusion-k20: discarded citing non-divisibility of f_50",
    (25, 4): "published-exclusion-l25k4: discarded by a resultant argument assuming m | f_20",
    (5, 20): "published-exclusion-l5k20: discarded by a resultant argument assuming m | f_20",
}


def _required_index(l: int, k: int) -> int:
    # exponent of the first symplectic (odd l) or anti-symplectic (even l)
    # power of the hypothesized generator
    return k if l in (1, 2) else (k * l if l % 2 == 1 else k * (l // 2))


def _scenario_concrete_ok(m: int, l: int, k: int, primes: tuple[int, ...]) -> bool:
    if gen_fib(1, _required_index(l, k)) % m != 0:
        return False
    tau = salem_trace_of_power(1, k)
    value = abs(resultant(IntPolynomial([1, -tau, 1]), cyclotomic(l)))
    return all(value % p == 0 for p in primes)


def target_exponent_scenario(m: int, n_target: int = 100) -> TargetExponentReport:
    """Reproduce the published enumeration for generators under exponent 100.

    Hypothesis: m | f_100 and m does not divide f_50 (checked). Candidates
    (l, k) run over k*l | 100 with the parity constraint (even k for odd l,
    odd k for even l). The published pipeline then discards pairs whose
    required exponent divides 50 (sound under the hypothesis), applies three
    literal published exclusions that no implemented criterion reproduces
    (flagged when they matter for this m), and finally checks concrete
    divisibility and resultant conditions. The closure-rule analysis is
    reported alongside for comparison.
    """
    if n_target != 100:
        raise ValueError("the published scenario is specific to target exponent 100")
    if m < 2:
        raise ValueError("scenario requires m >= 2")
    if gen_fib(1, 100) % m != 0:
        raise ValueError(f"precondition failed: {m} does not divide f_100")
    if gen_fib(1, 50) % m == 0:
        raise ValueError(f"precondition failed: {m} divides f_50")

    primes = disc_prime_divisors(m, 1)
    flags: list[str] = []
    candidates: list[ScenarioCandidate] = []

    divisors_100 = [d for d in range(1, 101) if 100 % d == 0]
    for l in ENGINE_CYCLOTOMIC_INDICES:
        for k in divisors_100:
            if 100 % (k * l) != 0:
                continue
            r = _required_index(l, k)
            reasons: list[str] = []
            verdict = "survives"

            needs_even = l in (1, 5, 25)
            if needs_even != (k % 2 == 0):
                verdict = "excluded"
                reasons.append(
                    f"parity: order {l} requires {'even' if needs_even else 'odd'} k"
                )
            elif 50 % r == 0:
                verdict = "excluded"
                reasons.append(
                    f"forces-f50: m | f_{r} would force m | f_50, "
                    "contradicting the hypothesis"
                )
            elif (l, k) in _LITERAL_EXCLUSIONS:
                verdict = "excluded"
                reasons.append(_LITERAL_EXCLUSIONS[(l, k)])
                if _scenario_concrete_ok(m, l, k, primes):
                    flags.append(
                        f"{_LITERAL_EXCLUSIONS[(l, k)].split(':')[0]}: the concrete "
                        f"filters would keep (l, k) = ({l}, {k}) for m = {m}; the "
                        "published exclusion is not reproduced"
                    )
            else:
                if gen_fib(1, r) % m != 0:
                    verdict = "excluded"
                    reasons.append(f"divisibility: m does not divide f_{r}")
                else:
                    reasons.append(f"divisibility: m | f_{r}")
                    tau = salem_trace_of_power(1, k)
                    value = resultant(IntPolynomial([1, -tau, 1]), cyclotomic(l))
                    failing = [p for p in primes if abs(value) % p != 0]
                    if failing:
                        verdict = "excluded"
                        reasons.append(
                            f"resultant-divisibility: prime {failing[0]} does not "
                            f"divide res = {value}"
                        )
                    else:
                        reasons.append(
                            f"resultant-divisibility: all of {list(primes)} divide "
                            f"res = {value}"
                        )
            candidates.append(ScenarioCandidate(l, k, r, verdict, tuple(reasons)))

    candidates.sort(key=lambda c: (c.l, c.k))
    published_survivors = tuple((c.l, c.k) for c in candidates if c.survives)
    closure = analyze(m, 1)
    if set(published_survivors) != set(closure.survivors):
        flags.append(
            "scenario-vs-closure: published-style survivors "
            f"{sorted(published_survivors)} differ from closure-rule survivors "
            f"{sorted(closure.survivors)}"
        )
    return TargetExponentReport(
        m=m,
        n_target=100,
        published_candidates=tuple(candidates),
        published_survivors=published_survivors,
        closure_report=closure,
        errata_flags=tuple(flags),
    )
