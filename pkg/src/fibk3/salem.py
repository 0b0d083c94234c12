"""Integer polynomials, cyclotomic polynomials, resultants, and Salem data.

The resultant of P and Q is normalized as the product of root differences
prod (u - v) over roots u of P and v of Q, which for monic inputs equals the
Sylvester determinant with the rows of P on top. Every resultant is computed
by two independent exact algorithms (fraction-free Sylvester elimination and
a subresultant remainder sequence); a disagreement raises InvariantViolation
rather than returning either value.

Floating point appears in exactly one place: the Salem number lambda and its
logarithm (the entropy) attached to a Salem trace tau > 2. Everything else is
arbitrary-precision integer arithmetic.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from .errors import InvariantViolation
from .fibgen import gen_fib, is_perfect_square
from ._primes import factorize

__all__ = [
    "IntPolynomial",
    "SalemQuadratic",
    "ENGINE_CYCLOTOMIC_INDICES",
    "epsilon_for_index",
    "cyclotomic",
    "resultant",
    "closed_form_resultant",
    "salem_data",
    "is_palindromic",
    "admissible_trace_root",
    "cyclotomic_trace_filter",
    "pell_solutions",
    "char_poly_multiplicity",
    "euler_phi",
]

# Cyclotomic indices that can accompany a degree-2 Salem factor on rank-22
# cohomology, with the sign of the induced action on the 2-form.
ENGINE_CYCLOTOMIC_INDICES = (1, 2, 5, 10, 25, 50)
_EPSILON_BY_INDEX = {1: 1, 2: -1, 5: 1, 10: -1, 25: 1, 50: -1}

# Allowed square roots alpha of tau + 2*eps for an order-infinity automorphism
# acting on the 2-form by eps: alpha >= 4, and for eps = -1 additionally
# alpha not in {5, 7, 13, 17}.
_EXCLUDED_ANTI_ROOTS = frozenset({5, 7, 13, 17})


def epsilon_for_index(l: int) -> int:
    """Sign of the 2-form action for cyclotomic index l in the allowed six."""
    try:
        return _EPSILON_BY_INDEX[l]
    except KeyError:
        raise ValueError(
            f"cyclotomic index must be one of {ENGINE_CYCLOTOMIC_INDICES}, got {l}"
        ) from None


class IntPolynomial:
    """Immutable integer polynomial, coefficients stored ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs) -> None:
        cs = list(coeffs)
        for c in cs:
            if not isinstance(c, int) or isinstance(c, bool):
                raise ValueError(f"integer coefficients required, got {c!r}")
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("IntPolynomial is immutable")

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-c for c in self.coeffs])

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero or other.is_zero:
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if ci == 0:
                continue
            for j, cj in enumerate(other.coeffs):
                out[i + j] += ci * cj
        return IntPolynomial(out)

    def scale(self, c: int) -> "IntPolynomial":
        return IntPolynomial([c * x for x in self.coeffs])

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by x^k."""
        if self.is_zero:
            return self
        return IntPolynomial([0] * k + list(self.coeffs))

    def divmod_exact(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Long division when the divisor's leading coefficient is a unit."""
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        lead = divisor.leading_coefficient
        if lead not in (1, -1):
            raise ValueError("division implemented for unit leading coefficients only")
        rem = list(self.coeffs)
        dd = divisor.degree
        q = [0] * max(len(rem) - dd, 0)
        while len(rem) > dd and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < dd:
                break
            shift = len(rem) - 1 - dd
            factor = rem[-1] * lead  # lead is +-1 so this is exact
            q[shift] = factor
            for i, c in enumerate(divisor.coeffs):
                rem[shift + i] -= factor * c
        return IntPolynomial(q), IntPolynomial(rem)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for exp in range(self.degree, -1, -1):
            c = self.coeffs[exp]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if exp == 0:
                body = f"{mag}"
            elif exp == 1:
                body = "x" if mag == 1 else f"{mag}*x"
            else:
                body = f"x^{exp}" if mag == 1 else f"{mag}*x^{exp}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)!r})"


def is_palindromic(p: IntPolynomial) -> bool:
    """True when the coefficient list reads the same in both directions."""
    return p.coeffs == tuple(reversed(p.coeffs))


def _divisors(n: int) -> list[int]:
    out = []
    for d in range(1, int(math.isqrt(n)) + 1):
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
    return sorted(out)


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi requires n >= 1")
    result = n
    for p in factorize(n):
        result -= result // p
    return result


@functools.lru_cache(maxsize=None)
def cyclotomic(l: int) -> IntPolynomial:
    """l-th cyclotomic polynomial by exact division of x^l - 1.

    Divides out every lower cyclotomic factor indexed by a proper divisor and
    checks that all intermediate remainders vanish; the result has degree
    euler_phi(l).
    """
    if l < 1:
        raise ValueError("cyclotomic index must be >= 1")
    poly = IntPolynomial([-1] + [0] * (l - 1) + [1])
    for d in _divisors(l):
        if d == l:
            continue
        poly, rem = poly.divmod_exact(cyclotomic(d))
        if not rem.is_zero:
            raise InvariantViolation(f"inexact cyclotomic division at l={l}, d={d}")
    if poly.degree != euler_phi(l):
        raise InvariantViolation(f"cyclotomic degree mismatch at l={l}")
    return poly


# ---------------------------------------------------------------------------
# Resultants: two independent exact algorithms that must agree.
# ---------------------------------------------------------------------------


def _sylvester_matrix(p: IntPolynomial, q: IntPolynomial) -> list[list[int]]:
    dp, dq = p.degree, q.degree
    size = dp + dq
    pc = list(reversed(p.coeffs))  # descending
    qc = list(reversed(q.coeffs))
    rows = []
    for i in range(dq):
        rows.append([0] * i + pc + [0] * (size - dp - 1 - i))
    for i in range(dp):
        rows.append([0] * i + qc + [0] * (size - dq - 1 - i))
    return rows


def _bareiss_determinant(matrix: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; exact for integer matrices."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def _resultant_sylvester(p: IntPolynomial, q: IntPolynomial) -> int:
    return _bareiss_determinant(_sylvester_matrix(p, q))


def _content(p: IntPolynomial) -> int:
    return math.gcd(*p.coeffs) if p.coeffs else 0


def _exact_div_poly(p: IntPolynomial, c: int) -> IntPolynomial:
    out = []
    for coeff in p.coeffs:
        q, r = divmod(coeff, c)
        if r != 0:
            raise InvariantViolation("inexact scalar division in remainder sequence")
        out.append(q)
    return IntPolynomial(out)


def _pseudo_rem(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Pseudo-remainder of lc(q)^(deg p - deg q + 1) * p modulo q."""
    d = q.leading_coefficient
    dq = q.degree
    r = p
    e = p.degree - dq + 1
    while not r.is_zero and r.degree >= dq:
        s = q.scale(r.leading_coefficient).shift(r.degree - dq)
        r = r.scale(d) - s
        e -= 1
    if e > 0:
        r = r.scale(d**e)
    return r


def _resultant_subresultant(p: IntPolynomial, q: IntPolynomial) -> int:
    """Resultant via the subresultant polynomial remainder sequence."""
    a, b = p, q
    s = 1
    if a.degree < b.degree:
        if a.degree % 2 == 1 and b.degree % 2 == 1:
            s = -1
        a, b = b, a
    if b.degree == 0:
        return s * b.leading_coefficient ** a.degree
    ca, cb = _content(a), _content(b)
    t = s * ca**b.degree * cb**a.degree
    a = _exact_div_poly(a, ca)
    b = _exact_div_poly(b, cb)
    sign = 1
    g = 1
    h = 1
    while True:
        delta = a.degree - b.degree
        if a.degree % 2 == 1 and b.degree % 2 == 1:
            sign = -sign
        r = _pseudo_rem(a, b)
        a = b
        b = _exact_div_poly(r, g * h**delta)
        g = a.leading_coefficient
        if delta > 0:
            numerator = g**delta
            qh, rh = divmod(numerator, h ** (delta - 1)) if delta > 1 else (numerator, 0)
            if rh != 0:
                raise InvariantViolation("inexact h update in remainder sequence")
            h = qh
        if b.is_zero:
            return 0
        if b.degree == 0:
            break
    numerator = b.leading_coefficient ** a.degree
    if a.degree > 1:
        qh, rh = divmod(numerator, h ** (a.degree - 1))
        if rh != 0:
            raise InvariantViolation("inexact final division in remainder sequence")
        h = qh
    else:
        h = numerator if a.degree == 1 else h
    return t * sign * h


def resultant(p: IntPolynomial, q: IntPolynomial) -> int:
    """Exact resultant (root-difference product for monic inputs).

    Computed by fraction-free Sylvester elimination and independently by the
    subresultant remainder sequence; the two values must agree.
    """
    if p.is_zero or q.is_zero:
        raise ValueError("resultant of the zero polynomial is undefined")
    if p.degree == 0:
        return p.leading_coefficient ** q.degree
    if q.degree == 0:
        return q.leading_coefficient ** p.degree
    by_sylvester = _resultant_sylvester(p, q)
    by_subresultant = _resultant_subresultant(p, q)
    if by_sylvester != by_subresultant:
        raise InvariantViolation(
            "resultant algorithms disagree: "
            f"sylvester={by_sylvester}, subresultant={by_subresultant} "
            f"for {p!r}, {q!r}"
        )
    return by_sylvester


def closed_form_resultant(l: int, n: int) -> int:
    """res(x^2 - tau(n)x + 1, Phi_l) for l in {5,10,25,50} via Fibonacci values.

    Valid for the a = 1 sequence, where tau(n) = 5*f_n^2 + (-1)^n * 2. With
    f = f_n for l in {5,10} and f = f_{5n} for l in {25,50}:

        l = 5, 25:  n even -> 25*(5f^4 + 5f^2 + 1)^2
                    n odd  -> (25f^4 - 15f^2 + 1)^2
        l = 10, 50: n even -> (25f^4 + 15f^2 + 1)^2
                    n odd  -> 25*(5f^4 - 5f^2 + 1)^2
    """
    if l not in (5, 10, 25, 50):
        raise ValueError(f"closed form available for l in (5, 10, 25, 50), got {l}")
    if n < 1:
        raise ValueError("closed form requires n >= 1")
    f = gen_fib(1, n if l in (5, 10) else 5 * n)
    f2 = f * f
    f4 = f2 * f2
    even = n % 2 == 0
    if l in (5, 25):
        if even:
            return 25 * (5 * f4 + 5 * f2 + 1) ** 2
        return (25 * f4 - 15 * f2 + 1) ** 2
    if even:
        return (25 * f4 + 15 * f2 + 1) ** 2
    return 25 * (5 * f4 - 5 * f2 + 1) ** 2


# ---------------------------------------------------------------------------
# Salem quadratics.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SalemQuadratic:
    """Salem trace tau > 2 with its quadratic x^2 - tau*x + 1.

    lambda_ and entropy are the package's only floating-point outputs. For
    tau <= 10^7 they come from an exact-double sqrt path; beyond that the
    expansion lambda = tau - 1/tau (error O(tau^-3)) is used. Relative error
    stays below 1e-15 up to tau ~ 1.7e308; past the double range lambda_
    degrades to inf while entropy remains finite via integer log.
    """

    tau: int

    def __post_init__(self) -> None:
        if not isinstance(self.tau, int) or isinstance(self.tau, bool) or self.tau <= 2:
            raise ValueError(f"a Salem trace must be an integer > 2, got {self.tau!r}")

    @property
    def polynomial(self) -> IntPolynomial:
        return IntPolynomial([1, -self.tau, 1])

    @property
    def lambda_(self) -> float:
        if self.tau <= 10**7:
            return (self.tau + math.sqrt(self.tau * self.tau - 4)) / 2.0
        try:
            t = float(self.tau)
        except OverflowError:
            return math.inf
        return t - 1.0 / t

    @property
    def entropy(self) -> float:
        if self.tau <= 10**7:
            return math.log(self.lambda_)
        # log((tau + sqrt(tau^2-4))/2) = log(tau) - 1/tau^2 + O(tau^-4);
        # the correction is below double precision for tau > 10^7
        return math.log(self.tau)


def salem_data(tau: int) -> SalemQuadratic:
    """Salem quadratic, Salem number approximation, and entropy for tau > 2."""
    return SalemQuadratic(tau)


def admissible_trace_root(tau: int, epsilon: int) -> int | None:
    """Root alpha of tau + 2*epsilon when it is a square in the allowed set.

    An order-infinity automorphism of a rank-2 Picard lattice acting on the
    2-form by epsilon forces tau = alpha^2 - 2*epsilon with alpha >= 4, and
    alpha not in {5, 7, 13, 17} when epsilon = -1. Returns None when no such
    alpha exists.
    """
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    root = is_perfect_square(tau + 2 * epsilon)
    if root is None or root < 4:
        return None
    if epsilon == -1 and root in _EXCLUDED_ANTI_ROOTS:
        return None
    return root


def cyclotomic_trace_filter(tau: int, l: int) -> bool:
    """Necessary condition on a Salem trace for 2-form action of order l.

    With epsilon determined by l: for l in {1, 2} the root of tau + 2*epsilon
    must exist and be admissible (see admissible_trace_root); for the other
    four indices both tau + 2*epsilon and 5*(tau - 2*epsilon) must be perfect
    squares.
    """
    eps = epsilon_for_index(l)
    if l in (1, 2):
        return admissible_trace_root(tau, eps) is not None
    return (
        is_perfect_square(tau + 2 * eps) is not None
        and is_perfect_square(5 * (tau - 2 * eps)) is not None
    )


def pell_solutions(
    d: int, epsilon: int, beta_bound: int
) -> list[tuple[int, int]]:
    """Nonnegative solutions of alpha^2 - d*beta^2 = 4*epsilon with beta <= bound.

    Bounded brute force with an exact square test per beta; the bound makes
    the search's incompleteness explicit. d must be positive and nonsquare
    (square d degenerates to a difference-of-squares factorization).
    """
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    if d <= 0:
        raise ValueError("d must be positive")
    if is_perfect_square(d) is not None:
        raise ValueError(f"d={d} is a perfect square; the equation degenerates")
    if beta_bound < 1:
        raise ValueError("beta bound must be >= 1")
    solutions = []
    for beta in range(beta_bound + 1):
        target = d * beta * beta + 4 * epsilon
        if target < 0:
            continue
        alpha = is_perfect_square(target)
        if alpha is not None:
            solutions.append((alpha, beta))
    return solutions


def char_poly_multiplicity(l: int) -> int:
    """Cyclotomic multiplicity filling rank-22 cohomology next to a quadratic.

    The complement of a degree-2 factor has dimension 20, so the multiplicity
    is 20 / phi(l): indices 1 and 2 give 20, 5 and 10 give 5, 25 and 50 give 1.
    """
    epsilon_for_index(l)  # validates l
    phi = euler_phi(l)
    mult, rem = divmod(20, phi)
    if rem != 0:
        raise InvariantViolation(f"phi({l}) does not divide 20")
    return mult


