from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fourcycle.construct import (
    apply_masks,
    approx_rate,
    build,
    four_cycle_from_perfume,
    perfume_tires,
    rate_menu,
    theorem2_build,
    verify_candidate,
)
from fourcycle.model import check_girth6, check_twisted, regularity, tire_to_circulant
from fourcycle.perfume import enumerate_fulfillments, make_perfume, smallest_tau

from .conftest import EXAMPLE_723_C, EXAMPLE_723_D

# Reference rows for the (101, 95, 2) example.
EX101_ROW0 = (1, 95, 36, 87, 84, 2, 89, 72, 73, 67)
EX101_MASKED_C = [
    (1, 95, 36, 87, 84, 2, 89, 72, 73, 67),
    (84, 1, 95, 36, 87, 67, 2, 89, 72, 73),
    (87, 84, 1, 95, 36, 73, 67, 2, 89, 72),
    (95, 36, 87, 84, 1, 89, 72, 73, 67, 2),
]
EX101_MASKED_D = [
    (12, 99, 34, 28, 29, 6, 100, 17, 14, 65),
    (28, 29, 12, 99, 34, 14, 65, 6, 100, 17),
    (34, 28, 29, 12, 99, 17, 14, 65, 6, 100),
]


def test_theorem2_example_723():
    cand = theorem2_build(make_perfume(7, 2, 3), 3, 3)
    assert cand.mc.entries == tuple(EXAMPLE_723_C)
    assert cand.md.entries == tuple(EXAMPLE_723_D)
    assert (cand.J, cand.K, cand.L, cand.P, cand.n) == (3, 3, 6, 7, 42)


def test_theorem2_example_101():
    cand = theorem2_build(make_perfume(101, 95, 2), 5, 5)
    assert cand.mc.row(0) == EX101_ROW0


def test_theorem2_example_312():
    cand = theorem2_build(make_perfume(3, 1, 2), 1, 1)
    assert cand.mc.entries == ((1, 2),)
    assert cand.md.entries == ((1, 2),)  # (-2, -1) mod 3
    assert verify_candidate(cand)


def test_theorem2_rejects_bad_sizes():
    pf = make_perfume(7, 2, 3)
    for J, K in ((0, 1), (1, 0), (4, 3), (3, 4)):
        with pytest.raises(ValueError):
            theorem2_build(pf, J, K)


def test_masks_example_101():
    cand = build(make_perfume(101, 95, 2), mask_C=(1, 1, 1, 0, 1), mask_D=(0, 1, 0, 1, 1))
    assert cand.mc.entries == tuple(EX101_MASKED_C)
    assert cand.md.entries == tuple(EX101_MASKED_D)
    assert regularity(cand.mc) == (4, 10) and regularity(cand.md) == (3, 10)


def test_all_ones_masks_are_identity():
    pf = make_perfume(101, 95, 2)
    full = theorem2_build(pf, 5, 5)
    masked = apply_masks(full, [1] * 5, [1] * 5)
    assert (masked.mc, masked.md) == (full.mc, full.md)


def test_mask_validation():
    full = theorem2_build(make_perfume(7, 2, 3), 3, 3)
    with pytest.raises(ValueError, match="zero weight"):
        apply_masks(full, (0, 0, 0), (1, 1, 1))
    with pytest.raises(ValueError, match="length"):
        apply_masks(full, (1, 1), (1, 1, 1))
    with pytest.raises(ValueError):
        apply_masks(full, (1, 2, 1), (1, 1, 1))
    with pytest.raises(ValueError):
        apply_masks(theorem2_build(make_perfume(7, 2, 3), 2, 3), (1, 1, 1), (1, 1, 1))
    with pytest.raises(ValueError):
        build(make_perfume(7, 2, 3), mask_C=(1, 1, 1))


def test_tire_structure():
    pf = make_perfume(101, 95, 2)
    tA, tB = perfume_tires(pf)
    cand = theorem2_build(pf, 5, 5)
    left = [r[:5] for r in cand.mc.entries]
    right = [r[5:] for r in cand.mc.entries]
    assert tuple(map(tuple, left)) == tire_to_circulant(tA).entries
    assert [tuple(2 * x % 101 for x in row) for row in left] == right
    assert four_cycle_from_perfume(pf) == (cand.mc, cand.md)


table_perfumes = [
    (P, s, smallest_tau(P, s)) for t, P, ss in enumerate_fulfillments(200, 3, 20) for s in ss
]


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(table_perfumes), st.data())
def test_masks_preserve_conditions(triple, data):
    pf = make_perfume(*triple)
    t = pf.order
    bits = st.lists(st.integers(0, 1), min_size=t, max_size=t).filter(any)
    cand = build(pf, mask_C=data.draw(bits), mask_D=data.draw(bits))
    assert check_twisted(cand.mc, cand.md)
    assert check_girth6(cand.mc) and check_girth6(cand.md)


def test_approx_rate_examples():
    # 1 - (505 + 505 - 5 - 5 + 2) / 1010 = 8 / 1010
    assert approx_rate(5, 5, 10, 101) == Fraction(8, 1010)
    # formula values agree with the quoted "about 0.78975" and "about 0.6671"
    assert abs(float(approx_rate(4, 4, 38, 571)) - 0.78975) < 1e-5
    assert abs(float(approx_rate(4, 4, 24, 577)) - 0.6671) < 1e-5


@pytest.mark.parametrize("J,K,L", [(2, 3, 10), (4, 4, 38), (1, 1, 4)])
def test_approx_rate_limit(J, K, L):
    assert abs(float(approx_rate(J, K, L, 10**6)) - (L - J - K) / L) < 1e-5


def test_rate_menu_examples():
    assert rate_menu(2, 1) == (2, 8, 2, 2)
    assert rate_menu(5, 4) == (2, 20, 2, 2)
    assert rate_menu(3, 0) == (1, 6, 3, 3)
    with pytest.raises(ValueError):
        rate_menu(3, 3)


@given(st.integers(1, 40).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n - 1))))
def test_rate_menu_property(nk):
    n, k = nk
    m, L, J, K = rate_menu(n, k)
    assert 2 * m * (n - k) >= 4 and (m == 1 or 2 * (m - 1) * (n - k) < 4)
    assert Fraction(L - J - K, L) == Fraction(k, n)
