"""Model matrices over ``Z_P`` extended by the zero-block symbol ``INF``.

A model matrix is the compact description of a quasi-cyclic parity-check
matrix: entry ``c`` stands for the ``P x P`` circulant permutation matrix
shifted by ``c``, and ``INF`` for the all-zero block.  The predicates here
decide the CSS orthogonality condition and the girth-6 condition directly
on model matrices, without expanding them.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations
from typing import Union

INF = float("inf")

IndexValue = Union[int, float]


def _canon(x, P: int) -> IndexValue:
    if x == INF:
        return INF
    if isinstance(x, str):
        raise TypeError(f"index values must be integers or INF, got {x!r}")
    if int(x) != x:
        raise ValueError(f"index values must be integers or INF, got {x!r}")
    return int(x) % P


def index_minus(x: IndexValue, y: IndexValue, P: int) -> IndexValue:
    """``x - y`` in ``Z_P``, with ``INF`` absorbing."""
    if x == INF or y == INF:
        return INF
    return (x - y) % P


def index_neg(x: IndexValue, P: int) -> IndexValue:
    return INF if x == INF else (-x) % P


def row_minus(c: Sequence[IndexValue], d: Sequence[IndexValue], P: int) -> tuple:
    if len(c) != len(d):
        raise ValueError(f"row lengths differ: {len(c)} != {len(d)}")
    return tuple(index_minus(x, y, P) for x, y in zip(c, d))


def is_multiplicity_even(row: Iterable[IndexValue]) -> bool:
    """Every finite value occurs an even number of times."""
    counts = Counter(x for x in row if x != INF)
    return all(n % 2 == 0 for n in counts.values())


def is_multiplicity_free(row: Iterable[IndexValue]) -> bool:
    """No finite value repeats.  Any number of ``INF`` entries is allowed,
    since zero blocks contribute no Tanner-graph edges."""
    finite = [x for x in row if x != INF]
    return len(finite) == len(set(finite))


@dataclass(frozen=True)
class ModelMatrix:
    """Immutable ``J x L`` grid of index values with circulant size ``P``."""

    P: int
    entries: tuple[tuple[IndexValue, ...], ...]

    def __post_init__(self):
        if self.P < 1:
            raise ValueError(f"circulant size must be >= 1, got {self.P}")
        if not self.entries or not self.entries[0]:
            raise ValueError("model matrix needs at least one row and one column")
        width = len(self.entries[0])
        if any(len(r) != width for r in self.entries):
            raise ValueError("ragged model matrix")
        for row in self.entries:
            for x in row:
                if x != INF and not (isinstance(x, int) and 0 <= x < self.P):
                    raise ValueError(f"entry {x!r} is not canonical modulo {self.P}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], P: int) -> ModelMatrix:
        """Build from arbitrary integers (reduced mod ``P``) and ``INF``."""
        return cls(P, tuple(tuple(_canon(x, P) for x in row) for row in rows))

    @property
    def J(self) -> int:
        return len(self.entries)

    @property
    def L(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.J, self.L

    def __getitem__(self, jl):
        j, l = jl
        return self.entries[j][l]

    def row(self, j: int) -> tuple:
        return self.entries[j]

    def has_inf(self) -> bool:
        return any(x == INF for row in self.entries for x in row)

    def negated(self) -> ModelMatrix:
        return ModelMatrix(self.P, tuple(tuple(index_neg(x, self.P) for x in r) for r in self.entries))

    def transposed(self) -> ModelMatrix:
        return ModelMatrix(self.P, tuple(zip(*self.entries)))

    def hstack(self, other: ModelMatrix) -> ModelMatrix:
        if self.P != other.P or self.J != other.J:
            raise ValueError("hstack needs equal P and row count")
        return ModelMatrix(self.P, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def select_rows(self, keep: Sequence[int]) -> ModelMatrix:
        return ModelMatrix(self.P, tuple(self.entries[j] for j in keep))

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.entries]

    def __str__(self) -> str:
        return "\n".join(" ".join("inf" if x == INF else str(x) for x in r) for r in self.entries)


def _check_same(mc: ModelMatrix, md: ModelMatrix) -> None:
    if mc.P != md.P:
        raise ValueError(f"circulant sizes differ: {mc.P} != {md.P}")
    if mc.L != md.L:
        raise ValueError(f"column counts differ: {mc.L} != {md.L}")


def twisted_violations(mc: ModelMatrix, md: ModelMatrix) -> list[tuple[int, int]]:
    """Row pairs ``(j, k)`` whose difference is not multiplicity even."""
    _check_same(mc, md)
    return [
        (j, k)
        for j, c in enumerate(mc.entries)
        for k, d in enumerate(md.entries)
        if not is_multiplicity_even(row_minus(c, d, mc.P))
    ]


def check_twisted(mc: ModelMatrix, md: ModelMatrix) -> bool:
    """Expanded ``H_C H_D^T = 0`` over GF(2), decided on the model matrices."""
    return not twisted_violations(mc, md)


def girth6_violations(mc: ModelMatrix) -> list[tuple[int, int]]:
    return [
        (a, b)
        for a, b in combinations(range(mc.J), 2)
        if not is_multiplicity_free(row_minus(mc.row(a), mc.row(b), mc.P))
    ]


def check_girth6(mc: ModelMatrix) -> bool:
    """Tanner graph of the expansion has no 4-cycles."""
    return not girth6_violations(mc)


def regularity(mc: ModelMatrix) -> tuple[int, int] | None:
    """``(column weight, row weight)`` of the expansion, or None when it contains zero blocks."""
    if mc.has_inf():
        return None
    return mc.J, mc.L


def is_cdm(mc: ModelMatrix) -> bool:
    """Cyclic difference matrix test: ``P == L`` and all row differences distinct."""
    if mc.has_inf():
        raise ValueError("a difference matrix cannot contain INF entries")
    return mc.P == mc.L and check_girth6(mc)


@dataclass(frozen=True)
class Tire:
    """Circulant ``m x m`` model block given by its first row.

    Row ``r`` is the first row rotated right by ``r`` places, so
    ``entry(r, c) = first_row[(c - r) mod m]``.
    """

    P: int
    first_row: tuple[IndexValue, ...]

    def __post_init__(self):
        object.__setattr__(self, "first_row", tuple(_canon(x, self.P) for x in self.first_row))
        if not self.first_row:
            raise ValueError("tire needs at least one entry")

    @property
    def m(self) -> int:
        return len(self.first_row)

    def transposed(self) -> Tire:
        t = self.first_row
        return Tire(self.P, tuple(t[-k % self.m] for k in range(self.m)))

    def negated(self) -> Tire:
        return Tire(self.P, tuple(index_neg(x, self.P) for x in self.first_row))


def tire_to_circulant(t: Tire) -> ModelMatrix:
    m, row = t.m, t.first_row
    return ModelMatrix(t.P, tuple(tuple(row[(c - r) % m] for c in range(m)) for r in range(m)))


def four_cycle_pair(tA: Tire, tB: Tire) -> tuple[ModelMatrix, ModelMatrix]:
    """``([T_A | T_B], [-T_B^T | -T_A^T])``; always satisfies the twisted condition."""
    if tA.P != tB.P or tA.m != tB.m:
        raise ValueError(f"tires must share P and size, got ({tA.P}, {tA.m}) and ({tB.P}, {tB.m})")
    mc = tire_to_circulant(tA).hstack(tire_to_circulant(tB))
    md = tire_to_circulant(tB.transposed().negated()).hstack(tire_to_circulant(tA.transposed().negated()))
    return mc, md


def bicycle_model(tA: Tire) -> ModelMatrix:
    """MacKay's bicycle matrix ``[A | A^T]`` as a ``P = 1`` model matrix."""
    if tA.P != 1:
        raise ValueError(f"bicycle tires live over P = 1, got P = {tA.P}")
    return tire_to_circulant(tA).hstack(tire_to_circulant(tA.transposed()))


def equivalence_permutations(P: int, m: int) -> tuple[list[int], list[int]]:
    """Row and column index maps taking the expanded ``H_D`` of a four-cycle
    pair (with ``m x m`` tires) onto the expanded ``H_C``:
    ``H_C[i, j] == H_D[row_perm[i], col_perm[j]]``.

    Both maps reverse the index order.
    """
    n_rows, n_cols = P * m, 2 * P * m
    return [n_rows - 1 - i for i in range(n_rows)], [n_cols - 1 - j for j in range(n_cols)]
