"""Fulfillments and perfumes: the number-theoretic input to the construction.

``sigma`` is a fulfillment to ``P`` when it is a unit and every
``sigma**i - 1`` (``1 <= i < ord``) is also a unit.  A perfume adds a unit
``tau`` outside the cyclic group generated by ``sigma``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .numtheory import dirichlet_prime, find_generator, is_prime, mult_order


class PerfumeError(ValueError):
    """A triple fails one of the perfume conditions."""


def is_affine_coprime(sigma: int, x: int, P: int) -> bool:
    return math.gcd((x - sigma) % P, P) == 1


def fulfillment_order(sigma: int, P: int) -> int | None:
    """``ord_P(sigma)`` when ``sigma`` is a fulfillment to ``P``, else None."""
    if P < 2 or math.gcd(sigma % P, P) != 1:
        return None
    s = sigma % P
    acc, i = s, 1
    while acc != 1 % P:
        if math.gcd((acc - 1) % P, P) != 1:
            return None
        acc = acc * s % P
        i += 1
    return i


def is_fulfillment(sigma: int, P: int) -> bool:
    return fulfillment_order(sigma, P) is not None


def _totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def enumerate_fulfillments(
    P_max: int, ord_min: int, ord_max: int, perfume_ready: bool = True
) -> list[tuple[int, int, list[int]]]:
    """All fulfillments ``sigma < P <= P_max`` with order in ``[ord_min, ord_max]``.

    With ``perfume_ready`` (the default) a ``sigma`` generating the whole unit
    group is skipped, since no ``tau`` can complete it to a perfume.
    Returns ``(order, P, sigmas)`` rows sorted by order then ``P``; rows with
    no fulfillment are omitted.
    """
    if not 2 <= ord_min <= ord_max:
        raise ValueError(f"need 2 <= ord_min <= ord_max, got {ord_min}, {ord_max}")
    found: dict[tuple[int, int], list[int]] = {}
    for P in range(2, P_max + 1):
        units = _totient(P)
        for s in range(1, P):
            t = fulfillment_order(s, P)
            if t is None or not ord_min <= t <= ord_max:
                continue
            if perfume_ready and t == units:
                continue
            found.setdefault((t, P), []).append(s)
    return [(t, P, sigmas) for (t, P), sigmas in sorted(found.items())]


def fulfillments_csv(table: list[tuple[int, int, list[int]]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["order", "P", "sigma"])
    for t, P, sigmas in table:
        for s in sigmas:
            w.writerow([t, P, s])
    return buf.getvalue()


@dataclass(frozen=True)
class Perfume:
    P: int
    sigma: int
    tau: int
    order: int

    @property
    def L(self) -> int:
        return 2 * self.order

    def powers(self) -> list[int]:
        """``sigma**0, ..., sigma**(order-1)`` modulo ``P``."""
        return [pow(self.sigma, i, self.P) for i in range(self.order)]

    def as_tuple(self) -> tuple[int, int, int]:
        return self.P, self.sigma, self.tau


def perfume_failure(P: int, sigma: int, tau: int) -> str | None:
    """Human-readable reason the triple is not a perfume, or None."""
    if P < 2:
        return f"P must be >= 2, got {P}"
    order = fulfillment_order(sigma, P)
    if order is None:
        return f"sigma={sigma} is not a fulfillment to P={P}"
    if math.gcd(tau % P, P) != 1:
        return f"tau={tau} is not coprime to P={P}"
    if any(pow(sigma, i, P) == tau % P for i in range(1, order + 1)):
        return f"tau={tau} is a power of sigma={sigma} modulo P={P}"
    return None


def is_perfume(P: int, sigma: int, tau: int) -> bool:
    return perfume_failure(P, sigma, tau) is None


def make_perfume(P: int, sigma: int, tau: int) -> Perfume:
    """Validate and normalize a triple; raises :class:`PerfumeError` naming the failed condition."""
    reason = perfume_failure(P, sigma, tau)
    if reason is not None:
        raise PerfumeError(reason)
    return Perfume(P, sigma % P, tau % P, mult_order(sigma, P))


def smallest_tau(P: int, sigma: int) -> int:
    group = {pow(sigma, i, P) for i in range(mult_order(sigma, P))}
    for tau in range(1, P):
        if math.gcd(tau, P) == 1 and tau not in group:
            return tau
    raise PerfumeError(f"sigma={sigma} generates all units modulo {P}; no tau exists")


def find_perfume(half_L: int, start_n: int = 1) -> Perfume:
    """A perfume with ``ord(sigma) == half_L`` built from a prime ``1 + half_L*n``.

    Deterministic: smallest ``n``, smallest primitive root ``z``,
    ``sigma = z**n`` and the smallest admissible ``tau``.
    """
    if half_L < 1:
        raise ValueError(f"half_L must be >= 1, got {half_L}")
    if half_L == 1:
        return make_perfume(3, 1, 2)
    # n = 1 makes sigma a primitive root, leaving no unit outside its powers for tau
    P, n = dirichlet_prime(half_L, max(start_n, 2))
    z = find_generator(P)
    sigma = pow(z, n, P)
    return make_perfume(P, sigma, smallest_tau(P, sigma))


def tight_bound_perfume(L: int) -> Perfume:
    """``(L+1, g**2, g)`` for the smallest primitive root ``g`` of the prime ``L+1``."""
    if L < 2 or L % 2:
        raise ValueError(f"L must be a positive even integer, got {L}")
    P = L + 1
    if not is_prime(P):
        raise ValueError(f"L+1 = {P} is not prime")
    g = find_generator(P)
    return make_perfume(P, g * g % P, g)
