"""Exact modular arithmetic on small integers.

Everything here works on plain Python ints and returns canonical
representatives in ``[0, P-1]``.
"""

from __future__ import annotations

import math

DIRICHLET_SEARCH_CAP = 10**6

# Deterministic for n < 3.3e24, which covers every 64-bit input.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class SearchFailure(RuntimeError):
    """A bounded search ran out of budget without finding a solution."""


def gcd(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise ValueError(f"gcd expects non-negative integers, got ({a}, {b})")
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


def _check_modulus(P: int) -> None:
    if P < 2:
        raise ValueError(f"modulus must be >= 2, got {P}")


def _check_unit(x: int, P: int) -> int:
    _check_modulus(P)
    x %= P
    if math.gcd(x, P) != 1:
        raise ValueError(f"{x} is not a unit modulo {P}")
    return x


def mod_inverse(x: int, P: int) -> int:
    """Return ``y`` in ``[1, P-1]`` with ``x*y = 1 (mod P)``."""
    x = _check_unit(x, P)
    return pow(x, -1, P)


def mult_order(x: int, P: int) -> int:
    """Multiplicative order of the unit ``x`` modulo ``P``."""
    x = _check_unit(x, P)
    t, acc = 1, x
    while acc != 1 % P:
        acc = acc * x % P
        t += 1
    return t


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        y = pow(a, d, n)
        if y in (1, n - 1):
            continue
        for _ in range(s - 1):
            y = y * y % n
            if y == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def find_generator(P: int) -> int:
    """Smallest primitive root modulo the prime ``P``."""
    _check_modulus(P)
    if not is_prime(P):
        raise ValueError(f"find_generator requires a prime modulus, got {P}")
    if P == 2:
        return 1
    factors = _prime_factors(P - 1)
    for z in range(2, P):
        if all(pow(z, (P - 1) // q, P) != 1 for q in factors):
            return z
    raise AssertionError("unreachable: every prime has a primitive root")


def dirichlet_prime(
    half_L: int, start_n: int = 1, cap: int = DIRICHLET_SEARCH_CAP
) -> tuple[int, int]:
    """Smallest ``n >= start_n`` making ``1 + half_L*n`` prime.

    Returns ``(P, n)``. Raises :class:`SearchFailure` once ``n`` exceeds ``cap``.
    """
    if half_L < 1:
        raise ValueError(f"half_L must be >= 1, got {half_L}")
    if start_n < 1:
        raise ValueError(f"start_n must be >= 1, got {start_n}")
    for n in range(start_n, cap + 1):
        P = 1 + half_L * n
        if is_prime(P):
            return P, n
    raise SearchFailure(f"no prime of the form 1 + {half_L}*n with {start_n} <= n <= {cap}")
