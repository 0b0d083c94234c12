"""Integer factorization support: trial division plus a Miller-Rabin check.

Only the engine's discriminant-prime computations need this; the strategy is
deliberately simple (trial division to 10^6, then a primality test on the
cofactor) and fails loudly instead of silently returning partial factors.
"""

from __future__ import annotations

import math

from .errors import FactorizationError

TRIAL_BOUND = 10**6

# Deterministic Miller-Rabin witness set for n < 3_317_044_064_679_887_385_961_981.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin primality test, deterministic below ~3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Factor n >= 1 into {prime: exponent}.

    Trial divides up to TRIAL_BOUND, then requires the cofactor to be prime
    (or a prime square). Raises FactorizationError when the cofactor is a
    composite this strategy cannot split, or when n is too large for the
    Miller-Rabin witness set to be deterministic.
    """
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    factors: dict[int, int] = {}
    rem = n
    for p in range(2, TRIAL_BOUND + 1):
        if p * p > rem:
            break
        while rem % p == 0:
            factors[p] = factors.get(p, 0) + 1
            rem //= p
    if rem > 1:
        if rem <= TRIAL_BOUND * TRIAL_BOUND:
            # no divisor up to 10^6, so the cofactor below 10^12 is prime
            factors[rem] = factors.get(rem, 0) + 1
        elif rem >= _MR_DETERMINISTIC_LIMIT:
            raise FactorizationError(
                f"cofactor {rem} exceeds the deterministic primality range"
            )
        elif is_probable_prime(rem):
            factors[rem] = factors.get(rem, 0) + 1
        else:
            root = math.isqrt(rem)
            if root * root == rem and is_probable_prime(root):
                factors[root] = factors.get(root, 0) + 2
            else:
                raise FactorizationError(
                    f"composite cofactor {rem} resists trial division to {TRIAL_BOUND}"
                )
    return factors


def prime_divisors(n: int) -> tuple[int, ...]:
    """Sorted distinct prime divisors of |n| (n must be nonzero)."""
    if n == 0:
        raise ValueError("0 has no prime divisor set")
    return tuple(sorted(factorize(abs(n))))
