"""Generalized Fibonacci sequences and their arithmetic.

For a fixed integer a >= 1 the sequence is

    a_0 = 0,  a_1 = 1,  a_{n+2} = a * a_{n+1} + a_n,

the Lucas sequence U_n(a, -1). a = 1 gives the ordinary Fibonacci numbers,
a = 2 the Pell numbers. Everything here is exact integer arithmetic; the
module exposes the sequence itself, trace identities for powers of the
standard isometry product, the perfect-square membership criterion, entry
points (rank of apparition), and divisibility structure.

Indices extend to all of Z via a_{-n} = (-1)^{n+1} * a_n, which is the unique
extension satisfying the recurrence backwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvariantViolation

__all__ = [
    "GenFibParams",
    "MembershipMatch",
    "MembershipResult",
    "gen_fib",
    "gen_fib_iter",
    "salem_trace_of_power",
    "shifted_trace",
    "is_perfect_square",
    "classify_membership",
    "entry_point",
    "divides_in_sequence",
]


def _check_a(a: int) -> None:
    if not isinstance(a, int) or isinstance(a, bool) or a < 1:
        raise ValueError(f"sequence parameter a must be an integer >= 1, got {a!r}")


@dataclass(frozen=True)
class GenFibParams:
    """Sequence parameter a together with the discriminant-like constant a^2 + 4."""

    a: int

    def __post_init__(self) -> None:
        _check_a(self.a)

    @property
    def d(self) -> int:
        return self.a * self.a + 4


def _fib_pair(a: int, n: int) -> tuple[int, int]:
    """Return (a_n, a_{n+1}) for n >= 0 by recursive doubling.

    Uses a_{2k} = a_k * (2*a_{k+1} - a*a_k) and a_{2k+1} = a_{k+1}^2 + a_k^2,
    both consequences of the index-addition identity.
    """
    if n == 0:
        return (0, 1)
    p, q = _fib_pair(a, n >> 1)
    u = p * (2 * q - a * p)
    v = q * q + p * p
    if n & 1:
        return (v, a * v + u)
    return (u, v)


def gen_fib(a: int, n: int) -> int:
    """n-th generalized Fibonacci number, any integer n, O(log n) doubling."""
    _check_a(a)
    if n >= 0:
        return _fib_pair(a, n)[0]
    m = -n
    value = _fib_pair(a, m)[0]
    return value if m % 2 == 1 else -value


def gen_fib_iter(a: int, n: int) -> int:
    """Naive iterative evaluation, kept as the independent slow path."""
    _check_a(a)
    m = abs(n)
    x, y = 0, 1
    for _ in range(m):
        x, y = y, a * y + x
    if n >= 0:
        return x
    return x if m % 2 == 1 else -x


def salem_trace_of_power(a: int, n: int) -> int:
    """Trace of the n-th power of the standard isometry product (n >= 0).

    Equals (a^2 + 4) * a_n^2 + (-1)^n * 2, and also a_{2n-1} + a_{2n+1}.
    The value is a Salem trace (> 2) for every n >= 1.
    """
    _check_a(a)
    if n < 0:
        raise ValueError("trace is defined here for n >= 0")
    f = gen_fib(a, n)
    return (a * a + 4) * f * f + (2 if n % 2 == 0 else -2)


def shifted_trace(a: int, n: int) -> int:
    """a_{2n-2} + a_{2n} via the closed form with exact division by a (n >= 1)."""
    _check_a(a)
    if n < 1:
        raise ValueError("shifted trace requires n >= 1")
    fn = gen_fib(a, n)
    fn1 = gen_fib(a, n - 1)
    numerator = (a * a + 4) * (fn * fn - fn1 * fn1) + (4 if n % 2 == 0 else -4)
    quotient, remainder = divmod(numerator, a)
    if remainder != 0:
        raise InvariantViolation(
            f"shifted trace numerator {numerator} not divisible by a={a}"
        )
    return quotient


def is_perfect_square(n: int) -> int | None:
    """Exact square test: the nonnegative root when n is a perfect square, else None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


@dataclass(frozen=True)
class MembershipMatch:
    k: int
    parity: str  # "even" or "odd"
    square_witness: int


@dataclass(frozen=True)
class MembershipResult:
    status: str  # "member" or "not_member"
    matches: tuple[MembershipMatch, ...]

    @property
    def is_member(self) -> bool:
        return self.status == "member"


def classify_membership(a: int, n: int) -> MembershipResult:
    """Decide whether n occurs in the sequence, via the square criterion.

    n >= 0 is the k-th member with k even (resp. odd) exactly when
    (a^2+4)*n^2 + 4 (resp. - 4) is a perfect square. Every matching index is
    recovered by forward iteration; for a = 1, n = 1 both parities fire
    (indices 1 and 2) and both matches are reported.
    """
    _check_a(a)
    if n < 0:
        raise ValueError("membership is defined for n >= 0")
    d = a * a + 4
    root_even = is_perfect_square(d * n * n + 4)
    root_odd = is_perfect_square(d * n * n - 4)
    if root_even is None and root_odd is None:
        return MembershipResult("not_member", ())

    matches: list[MembershipMatch] = []
    k, value, nxt = 0, 0, 1
    while value <= n:
        if value == n:
            if k % 2 == 0:
                if root_even is None:
                    raise InvariantViolation(
                        f"index {k} found for n={n} but the even-branch square is absent"
                    )
                matches.append(MembershipMatch(k, "even", root_even))
            else:
                if root_odd is None:
                    raise InvariantViolation(
                        f"index {k} found for n={n} but the odd-branch square is absent"
                    )
                matches.append(MembershipMatch(k, "odd", root_odd))
        k, value, nxt = k + 1, nxt, a * nxt + value
    if root_even is not None and not any(m.parity == "even" for m in matches):
        raise InvariantViolation(f"even-branch square fired for n={n} with no index")
    if root_odd is not None and not any(m.parity == "odd" for m in matches):
        raise InvariantViolation(f"odd-branch square fired for n={n} with no index")
    return MembershipResult("member", tuple(matches))


def entry_point(a: int, m: int) -> int:
    """Smallest e >= 1 with m | a_e (rank of apparition), computed mod m.

    Exists for every m >= 2 because the pair sequence (a_n, a_{n+1}) mod m is
    purely periodic: the transition matrix has determinant -1, a unit mod m.
    """
    _check_a(a)
    if m < 2:
        raise ValueError("entry point requires m >= 2")
    x, y = 0, 1
    n = 0
    while True:
        x, y = y, (a * y + x) % m
        n += 1
        if x == 0:
            return n


def divides_in_sequence(a: int, k: int, q: int) -> bool:
    """Whether a_k divides a_q (k, q >= 1), by exact division.

    For a_k > 1 this is equivalent to k | q. The published equivalence is
    stated without that restriction, but it fails at the one degenerate
    index with a_k = 1 beyond k = 1: for a = 1, a_2 = 1 divides every a_q
    while 2 divides only even q. Callers wanting the index criterion should
    use q % k == 0 directly.
    """
    _check_a(a)
    if k < 1 or q < 1:
        raise ValueError("indices must be >= 1")
    return gen_fib(a, q) % gen_fib(a, k) == 0
