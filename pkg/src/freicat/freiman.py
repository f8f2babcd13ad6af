"""Freiman homomorphisms of order k between additive sets.

A map ``f: A -> B`` is a k-homomorphism when every pair of k-multisets of A
with equal sums has equal image sums.  Grouping the k-multisets of A into
fibers by their sum turns this into a finite list of linear conditions
``sum(f(m_j)) - sum(f(m_0)) = 0`` (one per non-base multiset of each fiber),
which is what :func:`relation_rows` produces and everything here consumes.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Mapping, Optional, Sequence

from .addset import AdditiveSet, Multiset, ksum_fibers
from .fgab import GroupElement, GroupHom, group_sum

__all__ = [
    "BudgetExceeded",
    "FreimanMap",
    "HomViolation",
    "Relation",
    "DEFAULT_BUDGET",
    "relation_rows",
    "is_freiman_hom",
    "hom_violation",
    "check_hom",
    "is_freiman_iso",
    "enumerate_homs",
    "iter_homs",
    "is_mono",
    "is_epi",
    "compose",
    "identity_map",
    "constant_map",
    "inclusion",
    "restrict_group_hom",
]

DEFAULT_BUDGET = int(os.environ.get("FREICAT_BUDGET", 10**6))


class BudgetExceeded(RuntimeError):
    """A homset search would visit more candidate maps than allowed."""


class FreimanMap:
    """Total map between the elements of two additive sets, tagged with k.

    ``images[i]`` is the image of ``source.elements[i]``.
    """

    __slots__ = ("source", "target", "images", "order", "_hash")

    def __init__(
        self,
        source: AdditiveSet,
        target: AdditiveSet,
        images: Sequence[GroupElement],
        order: int,
    ):
        if order < 1:
            raise ValueError("order k must be at least 1")
        images = tuple(images)
        if len(images) != len(source):
            raise ValueError(f"{len(images)} images for a source of size {len(source)}")
        for y in images:
            if y not in target:
                raise ValueError(f"image {y!r} is not in the target set {target}")
        self.source = source
        self.target = target
        self.images = images
        self.order = order
        self._hash = hash((source, target, order, tuple(y.coords for y in images)))

    @classmethod
    def from_mapping(
        cls, source: AdditiveSet, target: AdditiveSet, table: Mapping, order: int
    ) -> "FreimanMap":
        """``table`` may be keyed by elements, ints or coordinate tuples."""
        norm = {}
        for x, y in table.items():
            xe = x if isinstance(x, GroupElement) else source.ambient(x)
            ye = y if isinstance(y, GroupElement) else target.ambient(y)
            norm[xe] = ye
        missing = [x for x in source if x not in norm]
        if missing or len(norm) != len(source):
            raise ValueError(f"table must be defined on exactly the source elements (missing {missing})")
        return cls(source, target, [norm[x] for x in source], order)

    @classmethod
    def from_function(
        cls, source: AdditiveSet, target: AdditiveSet, fn: Callable[[GroupElement], GroupElement], order: int
    ) -> "FreimanMap":
        return cls(source, target, [fn(x) for x in source], order)

    def __call__(self, x: GroupElement) -> GroupElement:
        return self.images[self.source.index(x)]

    @property
    def table(self) -> dict[GroupElement, GroupElement]:
        return dict(zip(self.source.elements, self.images))

    def pairs(self) -> list[tuple[GroupElement, GroupElement]]:
        return list(zip(self.source.elements, self.images))

    def with_order(self, k: int) -> "FreimanMap":
        return FreimanMap(self.source, self.target, self.images, k)

    @property
    def is_bijective(self) -> bool:
        return len(set(self.images)) == len(self.images) == len(self.target)

    def inverse(self) -> "FreimanMap":
        if not self.is_bijective:
            raise ValueError("map is not a bijection")
        back = {y: x for x, y in zip(self.source.elements, self.images)}
        return FreimanMap(self.target, self.source, [back[y] for y in self.target], self.order)

    def preserves_zero(self) -> bool:
        z = self.source.ambient.zero()
        return z not in self.source or self(z) == self.target.ambient.zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreimanMap):
            return NotImplemented
        return (
            self.order == other.order
            and self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{x!r}->{y!r}" for x, y in self.pairs())
        return f"FreimanMap[k={self.order}]({body})"


@dataclass(frozen=True)
class HomViolation:
    """Two k-multisets with equal sums whose images sum differently."""

    left: Multiset
    right: Multiset
    common_sum: GroupElement
    image_sums: tuple[GroupElement, GroupElement]

    def __str__(self) -> str:
        lhs = "+".join(map(repr, self.left))
        rhs = "+".join(map(repr, self.right))
        return f"{lhs} = {rhs} = {self.common_sum!r}, but images sum to {self.image_sums[0]!r} != {self.image_sums[1]!r}"


@dataclass(frozen=True)
class Relation:
    """``indicator(right) - indicator(left)`` for one pair inside a fiber.

    ``terms`` is the sparse row as (source index, coefficient) pairs.
    """

    common_sum: GroupElement
    left: Multiset
    right: Multiset
    terms: tuple[tuple[int, int], ...]

    def dense(self, n: int) -> list[int]:
        row = [0] * n
        for i, c in self.terms:
            row[i] = c
        return row


@lru_cache(maxsize=4096)
def relation_rows(a: AdditiveSet, k: int) -> tuple[Relation, ...]:
    """Base-point relations: for each fiber ``m_0, ..., m_t`` the rows
    ``m_j - m_0``, fibers in canonical sum order.

    These rows span every difference of equal-sum k-multisets.
    """
    rows = []
    for s, ms in ksum_fibers(a, k).nontrivial():
        base = ms[0]
        for other in ms[1:]:
            coeff: dict[int, int] = {}
            for x in other:
                i = a.index(x)
                coeff[i] = coeff.get(i, 0) + 1
            for x in base:
                i = a.index(x)
                coeff[i] = coeff.get(i, 0) - 1
            terms = tuple(sorted((i, c) for i, c in coeff.items() if c))
            rows.append(Relation(s, base, other, terms))
    return tuple(rows)


def _row_vanishes(terms, image_coords, mods) -> bool:
    for j, d in enumerate(mods):
        s = 0
        for i, c in terms:
            s += c * image_coords[i][j]
        if (s % d if d else s) != 0:
            return False
    return True


def hom_violation(f: FreimanMap) -> Optional[HomViolation]:
    """First violating pair, or None when ``f`` is a k-homomorphism.

    Fibers are scanned in canonical sum order; inside a fiber the witness is
    the base multiset paired with the first multiset whose image sum differs.
    """
    coords = [y.coords for y in f.images]
    mods = f.target.ambient.moduli
    for rel in relation_rows(f.source, f.order):
        if not _row_vanishes(rel.terms, coords, mods):
            w = f.target.ambient
            s0 = group_sum((f(x) for x in rel.left), w)
            s1 = group_sum((f(x) for x in rel.right), w)
            return HomViolation(rel.left, rel.right, rel.common_sum, (s0, s1))
    return None


def is_freiman_hom(f: FreimanMap) -> bool:
    return hom_violation(f) is None


def check_hom(f: FreimanMap) -> tuple[bool, Optional[HomViolation]]:
    v = hom_violation(f)
    return v is None, v


def is_freiman_iso(f: FreimanMap) -> bool:
    """Bijective k-homomorphism whose inverse is also a k-homomorphism."""
    return f.is_bijective and is_freiman_hom(f) and is_freiman_hom(f.inverse())


def is_mono(f: FreimanMap) -> bool:
    return len(set(f.images)) == len(f.images)


def is_epi(f: FreimanMap) -> bool:
    return set(f.images) == set(f.target.elements)


def compose(g: FreimanMap, f: FreimanMap) -> FreimanMap:
    """``g after f``."""
    if f.target != g.source:
        raise ValueError("cannot compose: target of f is not the source of g")
    if f.order != g.order:
        raise ValueError(f"cannot compose maps of orders {f.order} and {g.order}")
    return FreimanMap(f.source, g.target, [g(y) for y in f.images], f.order)


def identity_map(a: AdditiveSet, k: int) -> FreimanMap:
    return FreimanMap(a, a, a.elements, k)


def constant_map(a: AdditiveSet, b: AdditiveSet, value: GroupElement, k: int) -> FreimanMap:
    return FreimanMap(a, b, [value] * len(a), k)


def inclusion(a: AdditiveSet, b: AdditiveSet, k: int) -> FreimanMap:
    return FreimanMap(a, b, a.elements, k)


def restrict_group_hom(h: GroupHom, a: AdditiveSet, k: int, target: Optional[AdditiveSet] = None) -> FreimanMap:
    """Restriction of a group hom to ``a``; the target defaults to the image."""
    images = [h(x) for x in a]
    if target is None:
        target = AdditiveSet(h.target, images)
    return FreimanMap(a, target, images, k)


def iter_homs(
    a: AdditiveSet,
    b: AdditiveSet,
    k: int,
    preserve_zero: bool = False,
    budget: Optional[int] = None,
    fixed: Optional[Mapping[int, GroupElement]] = None,
) -> Iterator[FreimanMap]:
    """Lazily yield the k-homs ``a -> b`` in lexicographic order of images.

    Source elements are assigned in sorted order; after each assignment the
    relation rows whose support is now fully assigned are checked, so a
    partial map is abandoned as soon as one fiber disagrees.  ``fixed`` pins
    the images of some source indices (used for commuting-triangle search).
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    n, m = len(a), len(b)
    if m**n > budget:
        raise BudgetExceeded(f"|B|^|A| = {m}^{n} exceeds the budget of {budget} candidate maps")

    pinned: dict[int, GroupElement] = dict(fixed or {})
    if preserve_zero and a.is_normalized:
        z = b.ambient.zero()
        if z not in b:
            return
        zi = a.index(a.ambient.zero())
        if zi in pinned and pinned[zi] != z:
            return
        pinned[zi] = z

    rows_at: list[list[tuple[tuple[int, int], ...]]] = [[] for _ in range(n)]
    for rel in relation_rows(a, k):
        rows_at[max(i for i, _ in rel.terms)].append(rel.terms)

    targets = b.elements
    tcoords = [y.coords for y in targets]
    mods = b.ambient.moduli
    choices = []
    for i in range(n):
        if i in pinned:
            choices.append([b.index(pinned[i])])
        else:
            choices.append(range(m))
    assign: list[tuple[int, ...]] = [()] * n
    picked = [0] * n

    def rec(i: int) -> Iterator[FreimanMap]:
        if i == n:
            yield FreimanMap(a, b, [targets[j] for j in picked], k)
            return
        for t in choices[i]:
            assign[i] = tcoords[t]
            picked[i] = t
            if all(_row_vanishes(terms, assign, mods) for terms in rows_at[i]):
                yield from rec(i + 1)

    yield from rec(0)


def enumerate_homs(
    a: AdditiveSet,
    b: AdditiveSet,
    k: int,
    preserve_zero: bool = False,
    budget: Optional[int] = None,
) -> list[FreimanMap]:
    """All Freiman k-homs ``a -> b`` (0-preserving when flagged)."""
    return list(iter_homs(a, b, k, preserve_zero=preserve_zero, budget=budget))
