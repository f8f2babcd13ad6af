"""Additive sets and the sumset quantities built on them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence, Union

from .fgab import DirectSum, FgaGroup, GroupElement, GroupMismatchError, direct_sum

__all__ = [
    "AdditiveSet",
    "SumFibers",
    "DoublingReport",
    "aset",
    "sumset",
    "signed_sumset",
    "iterated_sumset",
    "doubling",
    "sigma",
    "ksum_fibers",
    "product_set",
    "union_disjoint",
]

ElementLike = Union[GroupElement, int, Sequence[int]]


class AdditiveSet:
    """Finite non-empty subset of an ambient :class:`FgaGroup`.

    Elements are canonical, deduplicated and sorted by coordinates.
    """

    __slots__ = ("ambient", "elements", "_index", "_hash")

    def __init__(self, ambient: FgaGroup, elements: Iterable[ElementLike]):
        elems = set()
        for x in elements:
            if isinstance(x, GroupElement):
                if x.group != ambient:
                    raise GroupMismatchError(f"{x!r} is not an element of {ambient}")
                elems.add(x)
            elif isinstance(x, int):
                elems.add(ambient(x))
            else:
                elems.add(ambient(tuple(x)))
        if not elems:
            raise ValueError("an additive set must be non-empty")
        self.ambient = ambient
        self.elements: tuple[GroupElement, ...] = tuple(sorted(elems, key=lambda e: e.coords))
        self._index = {x: i for i, x in enumerate(self.elements)}
        self._hash = hash((ambient, tuple(x.coords for x in self.elements)))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, GroupElement) and x.group == self.ambient and x in self._index

    def index(self, x: GroupElement) -> int:
        return self._index[x]

    @property
    def is_normalized(self) -> bool:
        return self.ambient.zero() in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AdditiveSet):
            return NotImplemented
        return self.ambient == other.ambient and self.elements == other.elements

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return "{" + ", ".join(map(repr, self.elements)) + "} in " + str(self.ambient)

    def isdisjoint(self, other: "AdditiveSet") -> bool:
        _same_ambient(self, other)
        return not any(x in other._index for x in self.elements)


def aset(ambient: FgaGroup, *items: ElementLike) -> AdditiveSet:
    """Shorthand: ``aset(Z, 1, 2, 3)`` or ``aset(G, (0, 1), (1, 0))``."""
    return AdditiveSet(ambient, items)


def _same_ambient(*sets: AdditiveSet) -> FgaGroup:
    g = sets[0].ambient
    for s in sets[1:]:
        if s.ambient != g:
            raise GroupMismatchError(f"ambients {g} and {s.ambient} differ")
    return g


def sumset(a: AdditiveSet, b: AdditiveSet) -> AdditiveSet:
    g = _same_ambient(a, b)
    return AdditiveSet(g, (x + y for x in a for y in b))


def signed_sumset(terms: Sequence[tuple[int, AdditiveSet]]) -> AdditiveSet:
    """All sums ``e1 x1 + ... + ek xk`` with ``xi`` drawn from the i-th set."""
    if not terms:
        raise ValueError("signed_sumset needs at least one term")
    for sign, _ in terms:
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign}")
    g = _same_ambient(*(s for _, s in terms))
    acc = {g.zero()}
    for sign, s in terms:
        parts = [x if sign == 1 else -x for x in s]
        acc = {u + v for u in acc for v in parts}
    return AdditiveSet(g, acc)


def iterated_sumset(a: AdditiveSet, plus: int, minus: int) -> AdditiveSet:
    """``plus*A - minus*A``; needs plus + minus >= 1."""
    return signed_sumset([(1, a)] * plus + [(-1, a)] * minus)


@dataclass(frozen=True)
class DoublingReport:
    sigma: Fraction
    sumset_size: int
    set_size: int


def doubling(a: AdditiveSet) -> DoublingReport:
    """Exact doubling constant ``|A+A| / |A|``."""
    n2 = len(sumset(a, a))
    return DoublingReport(Fraction(n2, len(a)), n2, len(a))


def sigma(a: AdditiveSet) -> Fraction:
    return doubling(a).sigma


Multiset = tuple[GroupElement, ...]


@dataclass(frozen=True)
class SumFibers:
    """k-multisets of a set grouped by their sum.

    ``fibers`` is ordered by the canonical coordinates of the sum and each
    fiber lists its multisets in lexicographic order (as sorted tuples).
    """

    order: int
    fibers: dict[GroupElement, list[Multiset]]

    @property
    def multiset_count(self) -> int:
        return sum(len(v) for v in self.fibers.values())

    def nontrivial(self) -> Iterator[tuple[GroupElement, list[Multiset]]]:
        return ((s, ms) for s, ms in self.fibers.items() if len(ms) > 1)

    def expected_count(self, set_size: int) -> int:
        return comb(set_size + self.order - 1, self.order)


@lru_cache(maxsize=4096)
def ksum_fibers(a: AdditiveSet, k: int) -> SumFibers:
    """Partition all k-multisets of ``a`` by their sum in the ambient group."""
    if k < 1:
        raise ValueError("order k must be at least 1")
    g = a.ambient
    mods = g.moduli
    n = g.ngens
    buckets: dict[tuple[int, ...], list[Multiset]] = {}
    for ms in itertools.combinations_with_replacement(a.elements, k):
        acc = [0] * n
        for x in ms:
            for i, c in enumerate(x.coords):
                acc[i] += c
        key = tuple(v % d if d else v for v, d in zip(acc, mods))
        buckets.setdefault(key, []).append(ms)
    fibers = {GroupElement(g, key): buckets[key] for key in sorted(buckets)}
    return SumFibers(k, fibers)


@lru_cache(maxsize=4096)
def _product_embedding(g: FgaGroup, h: FgaGroup) -> DirectSum:
    return direct_sum(g, h)


def product_set(a: AdditiveSet, b: AdditiveSet) -> tuple[AdditiveSet, DirectSum]:
    """``A x B`` inside the canonical direct sum of the two ambients.

    Also returns the :class:`DirectSum` so callers can pair and split
    coordinates.
    """
    ds = _product_embedding(a.ambient, b.ambient)
    return AdditiveSet(ds.group, (ds.pair(x, y) for x in a for y in b)), ds


def union_disjoint(a: AdditiveSet, b: AdditiveSet) -> AdditiveSet:
    g = _same_ambient(a, b)
    if not a.isdisjoint(b):
        common = sorted(set(a.elements) & set(b.elements), key=lambda e: e.coords)
        raise ValueError(f"sets are not disjoint: both contain {common}")
    return AdditiveSet(g, a.elements + b.elements)
