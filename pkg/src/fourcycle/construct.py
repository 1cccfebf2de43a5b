"""Four-cycle CSS pairs built from a perfume, row masks, and rate estimates."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .model import ModelMatrix, Tire, check_girth6, check_twisted, four_cycle_pair
from .perfume import Perfume


@dataclass(frozen=True)
class CssCandidate:
    """A model-level CSS pair ``(mc, md)`` together with its provenance."""

    perfume: Perfume
    mc: ModelMatrix
    md: ModelMatrix
    mask_C: tuple[int, ...] | None = None
    mask_D: tuple[int, ...] | None = None

    @property
    def J(self) -> int:
        return self.mc.J

    @property
    def K(self) -> int:
        return self.md.J

    @property
    def L(self) -> int:
        return self.mc.L

    @property
    def P(self) -> int:
        return self.mc.P

    @property
    def n(self) -> int:
        return self.L * self.P


def theorem2_build(pf: Perfume, J: int, K: int) -> CssCandidate:
    """Rows ``0..J-1`` of ``[sigma^(l-j) | tau sigma^(l-j)]`` and rows ``0..K-1`` of
    ``[-tau sigma^(k-l) | -sigma^(k-l)]``, exponents taken mod ``ord(sigma)``."""
    t, P = pf.order, pf.P
    if not (1 <= J <= t and 1 <= K <= t):
        raise ValueError(f"need 1 <= J, K <= ord(sigma) = {t}, got J={J}, K={K}")
    pw = pf.powers()
    mc = ModelMatrix.from_rows(
        ([pw[(l - j) % t] for l in range(t)] + [pf.tau * pw[(l - j) % t] for l in range(t)] for j in range(J)),
        P,
    )
    md = ModelMatrix.from_rows(
        ([-pf.tau * pw[(k - l) % t] for l in range(t)] + [-pw[(k - l) % t] for l in range(t)] for k in range(K)),
        P,
    )
    return CssCandidate(pf, mc, md)


def perfume_tires(pf: Perfume) -> tuple[Tire, Tire]:
    """The two tires ``(1, sigma, ...)`` and ``tau*(1, sigma, ...)`` behind :func:`theorem2_build`."""
    pw = pf.powers()
    return Tire(pf.P, tuple(pw)), Tire(pf.P, tuple(pf.tau * x for x in pw))


def four_cycle_from_perfume(pf: Perfume) -> tuple[ModelMatrix, ModelMatrix]:
    return four_cycle_pair(*perfume_tires(pf))


def _mask(bits: Sequence[int], length: int, name: str) -> tuple[int, ...]:
    bits = tuple(int(b) for b in bits)
    if len(bits) != length:
        raise ValueError(f"{name} has length {len(bits)}, expected ord(sigma) = {length}")
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"{name} must be binary, got {bits}")
    if not any(bits):
        raise ValueError(f"{name} has zero weight")
    return bits


def apply_masks(cand: CssCandidate, mask_C: Sequence[int], mask_D: Sequence[int]) -> CssCandidate:
    """Keep row ``i`` of ``mc`` (``md``) iff bit ``i`` of ``mask_C`` (``mask_D``) is set."""
    t = cand.perfume.order
    if cand.J != t or cand.K != t:
        raise ValueError("masks apply to the full J = K = ord(sigma) construction")
    mC, mD = _mask(mask_C, t, "mask_C"), _mask(mask_D, t, "mask_D")
    return CssCandidate(
        cand.perfume,
        cand.mc.select_rows([i for i, b in enumerate(mC) if b]),
        cand.md.select_rows([i for i, b in enumerate(mD) if b]),
        mC,
        mD,
    )


def build(pf: Perfume, J: int | None = None, K: int | None = None, mask_C=None, mask_D=None) -> CssCandidate:
    """Full construction; masks (both or neither) take precedence over ``J``/``K``."""
    if (mask_C is None) != (mask_D is None):
        raise ValueError("give both masks or neither")
    if mask_C is not None:
        return apply_masks(theorem2_build(pf, pf.order, pf.order), mask_C, mask_D)
    return theorem2_build(pf, J or pf.order, K or pf.order)


def verify_candidate(cand: CssCandidate) -> bool:
    return check_twisted(cand.mc, cand.md) and check_girth6(cand.mc) and check_girth6(cand.md)


def approx_rate(J: int, K: int, L: int, P: int) -> Fraction:
    """Rate estimate assuming ``rank H_C = JP - J + 1`` and likewise for ``H_D``."""
    return 1 - Fraction(J * P + K * P - J - K + 2, L * P)


def rate_menu(n: int, k: int) -> tuple[int, int, int, int]:
    """``(m, L, J, K)`` targeting quantum rate ``k/n``: smallest ``m`` with ``2m(n-k) >= 4``."""
    if not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got n={n}, k={k}")
    m = math.ceil(2 / (n - k))
    return m, 2 * m * n, m * (n - k), m * (n - k)
