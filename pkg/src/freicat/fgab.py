"""Finitely generated abelian groups in invariant-factor form.

A group ``Z^r + Z/d1 + ... + Z/dm`` (with d1 | d2 | ... | dm, all >= 2) is an
:class:`FgaGroup`; its elements are coordinate vectors with the torsion
coordinates reduced into ``[0, d_i)``.  Because every group is kept in this
canonical form, two groups are isomorphic exactly when they compare equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

from .intlat import snf

__all__ = [
    "GroupMismatchError",
    "InfiniteGroupError",
    "FgaGroup",
    "GroupElement",
    "GroupHom",
    "QuotientResult",
    "DirectSum",
    "Z",
    "cyclic",
    "canonical_group",
    "free",
    "elem_add",
    "elem_neg",
    "direct_sum",
    "quotient",
    "hom_is_well_defined",
    "subgroup_generated_equals",
    "enumerate_elements",
]


class GroupMismatchError(ValueError):
    """Two elements (or a map and an element) live in different groups."""


class InfiniteGroupError(ValueError):
    pass


@dataclass(frozen=True)
class FgaGroup:
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        prev = 1
        for d in self.torsion:
            if d < 2 or d % prev:
                raise ValueError(f"torsion {list(self.torsion)} is not an invariant-factor chain")
            prev = d

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @cached_property
    def moduli(self) -> tuple[int, ...]:
        """Per-coordinate modulus, 0 for a free coordinate."""
        return (0,) * self.free_rank + self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int:
        if self.free_rank:
            raise InfiniteGroupError(f"{self} is infinite")
        n = 1
        for d in self.torsion:
            n *= d
        return n

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    def reduce(self, coords: Iterable[int]) -> tuple[int, ...]:
        c = tuple(int(x) for x in coords)
        if len(c) != self.ngens:
            raise ValueError(f"{len(c)} coordinates for a group with {self.ngens} generators")
        return tuple(x % d if d else x for x, d in zip(c, self.moduli))

    def __call__(self, *coords: Union[int, Sequence[int]]) -> "GroupElement":
        """``G(1, 2)`` or ``G((1, 2))`` builds the canonical element."""
        if len(coords) == 1 and not isinstance(coords[0], int):
            coords = tuple(coords[0])
        return GroupElement(self, self.reduce(coords))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.ngens)

    def gen(self, i: int) -> "GroupElement":
        return GroupElement(self, tuple(int(i == j) for j in range(self.ngens)))

    def gens(self) -> list["GroupElement"]:
        return [self.gen(i) for i in range(self.ngens)]

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


Z = FgaGroup(1)


def cyclic(n: int) -> FgaGroup:
    """Z/n in canonical form (n = 0 gives Z, n = 1 the trivial group)."""
    if n == 0:
        return Z
    if n == 1:
        return FgaGroup()
    return FgaGroup(0, (abs(n),))


def free(rank: int) -> FgaGroup:
    return FgaGroup(rank)


class GroupElement:
    """Canonical coordinate vector of an element of ``group``."""

    __slots__ = ("group", "coords", "_hash")

    def __init__(self, group: FgaGroup, coords: tuple[int, ...]):
        self.group = group
        self.coords = coords
        self._hash = hash(coords)

    def _check(self, other: "GroupElement") -> None:
        if other.group != self.group:
            raise GroupMismatchError(f"elements of {self.group} and {other.group} do not mix")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        self._check(other)
        mods = self.group.moduli
        return GroupElement(
            self.group,
            tuple((x + y) % d if d else x + y for x, y, d in zip(self.coords, other.coords, mods)),
        )

    def __neg__(self) -> "GroupElement":
        mods = self.group.moduli
        return GroupElement(self.group, tuple((-x) % d if d else -x for x, d in zip(self.coords, mods)))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __mul__(self, n: int) -> "GroupElement":
        if not isinstance(n, int):
            return NotImplemented
        return GroupElement(self.group, self.group.reduce(n * x for x in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        self._check(other)
        return self.coords == other.coords

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "GroupElement") -> bool:
        self._check(other)
        return self.coords < other.coords

    def __le__(self, other: "GroupElement") -> bool:
        self._check(other)
        return self.coords <= other.coords

    def __repr__(self) -> str:
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ",".join(map(str, self.coords)) + ")"

    def __reduce__(self):
        return (GroupElement, (self.group, self.coords))


def elem_add(x: GroupElement, y: GroupElement) -> GroupElement:
    return x + y


def elem_neg(x: GroupElement) -> GroupElement:
    return -x


def group_sum(items: Iterable[GroupElement], group: FgaGroup) -> GroupElement:
    acc = [0] * group.ngens
    for x in items:
        for i, c in enumerate(x.coords):
            acc[i] += c
    return GroupElement(group, group.reduce(acc))


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by the images of the source generators."""

    source: FgaGroup
    target: FgaGroup
    images: tuple[GroupElement, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.source.ngens:
            raise ValueError(f"{len(self.images)} generator images for a source with {self.source.ngens} generators")
        for y in self.images:
            if y.group != self.target:
                raise GroupMismatchError("generator image outside the target group")

    @classmethod
    def from_matrix(cls, source: FgaGroup, target: FgaGroup, columns: Sequence[Sequence[int]]) -> "GroupHom":
        return cls(source, target, tuple(target(c) for c in columns))

    @classmethod
    def identity(cls, group: FgaGroup) -> "GroupHom":
        return cls(group, group, tuple(group.gens()))

    @classmethod
    def zero(cls, source: FgaGroup, target: FgaGroup) -> "GroupHom":
        return cls(source, target, (target.zero(),) * source.ngens)

    @property
    def matrix(self) -> list[list[int]]:
        """Generator-image columns, one per source generator."""
        return [list(y.coords) for y in self.images]

    def __call__(self, x: GroupElement) -> GroupElement:
        if x.group != self.source:
            raise GroupMismatchError(f"{x!r} is not in the source {self.source}")
        acc = [0] * self.target.ngens
        for c, y in zip(x.coords, self.images):
            if c:
                for i, v in enumerate(y.coords):
                    acc[i] += c * v
        return GroupElement(self.target, self.target.reduce(acc))

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """``self after inner``."""
        if inner.target != self.source:
            raise GroupMismatchError("composition boundary mismatch")
        return GroupHom(inner.source, self.target, tuple(self(y) for y in inner.images))

    def is_well_defined(self) -> bool:
        return hom_is_well_defined(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupHom):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and tuple(y.coords for y in self.images) == tuple(y.coords for y in other.images)
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, tuple(y.coords for y in self.images)))


def hom_is_well_defined(h: GroupHom) -> bool:
    """Each torsion generator's image is killed by that generator's order."""
    return all(d == 0 or (d * y).is_zero() for d, y in zip(h.source.moduli, h.images))


@dataclass(frozen=True)
class QuotientResult:
    """``quotient = source / <gens>`` together with the projection.

    ``sections[j]`` is a source element projecting onto generator ``j`` of
    the quotient, so homs out of the quotient can be defined by their values
    on these preimages.
    """

    quotient: FgaGroup
    projection: GroupHom
    sections: tuple[GroupElement, ...] = field(default=())

    @property
    def source(self) -> FgaGroup:
        return self.projection.source


def _present(moduli: Sequence[int], relations: Sequence[Sequence[int]]):
    """Canonical presentation of ``(Z/m1 + ... + Z/mn) / <relations>``.

    Works in the free cover ``Z^n``: relation rows are ``m_i e_i`` for the
    nonzero moduli plus ``relations``; the Smith form of the stacked rows
    gives the new invariant factors.  Returns the group, the image coords of
    each cover generator, and a cover preimage of each new generator.
    """
    n = len(moduli)
    rows: list[list[int]] = []
    for i, d in enumerate(moduli):
        if d:
            rows.append([d if j == i else 0 for j in range(n)])
    rows.extend([int(x) for x in r] for r in relations)

    dec = snf(rows, cols=n)
    diag = [dec.s[i][i] if i < len(rows) else 0 for i in range(n)]
    tors_idx = [j for j in range(n) if diag[j] >= 2]
    free_idx = [j for j in range(n) if diag[j] == 0]
    kept = free_idx + tors_idx
    qg = FgaGroup(len(free_idx), tuple(diag[j] for j in tors_idx))
    # a cover row vector x maps to (x @ v) restricted to the kept columns
    images = [qg.reduce(dec.v[i][j] for j in kept) for i in range(n)]
    sections = [dec.v_inv[j] for j in kept]
    return qg, images, sections


def canonical_group(moduli: Sequence[int]) -> FgaGroup:
    """Invariant-factor form of ``Z/m1 + Z/m2 + ...`` (0 meaning Z)."""
    return _present(moduli, [])[0]


def quotient(g: FgaGroup, gens: Sequence[GroupElement]) -> QuotientResult:
    """Quotient of ``g`` by the subgroup generated by ``gens``."""
    for x in gens:
        if x.group != g:
            raise GroupMismatchError(f"{x!r} is not in {g}")
    qg, images, sections = _present(g.moduli, [x.coords for x in gens])
    proj = GroupHom(g, qg, tuple(GroupElement(qg, c) for c in images))
    return QuotientResult(qg, proj, tuple(g(sec) for sec in sections))


@dataclass(frozen=True)
class DirectSum:
    """``group`` is the canonical form of ``left + right`` with its structure maps."""

    left: FgaGroup
    right: FgaGroup
    group: FgaGroup
    inj1: GroupHom
    inj2: GroupHom
    pr1: GroupHom
    pr2: GroupHom

    def pair(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return self.inj1(x) + self.inj2(y)

    def split(self, z: GroupElement) -> tuple[GroupElement, GroupElement]:
        return self.pr1(z), self.pr2(z)


def direct_sum(g: FgaGroup, h: FgaGroup) -> DirectSum:
    """Direct sum renormalized to invariant-factor form.

    When the concatenated torsion is already a divisibility chain the
    coordinates are just permuted (free parts first); otherwise the raw
    product is re-presented through its Smith form.
    """
    rg, rh = g.free_rank, h.free_rank
    tg, th = len(g.torsion), len(h.torsion)
    chain = g.torsion + h.torsion
    if all(b % a == 0 for a, b in zip(chain, chain[1:])):
        s = FgaGroup(rg + rh, chain)
        # raw order (g.free, g.tors, h.free, h.tors) -> canonical positions
        pos = list(range(rg)) + list(range(rg + rh, rg + rh + tg)) + list(range(rg, rg + rh)) + list(
            range(rg + rh + tg, rg + rh + tg + th)
        )
        raw_sections = [[int(pos[i] == j) for i in range(g.ngens + h.ngens)] for j in range(s.ngens)]
        raw_images = [s.gen(p) for p in pos]
    else:
        s, coords, raw_sections = _present(g.moduli + h.moduli, [])
        raw_images = [GroupElement(s, c) for c in coords]

    ng = g.ngens
    inj1 = GroupHom(g, s, tuple(raw_images[:ng]))
    inj2 = GroupHom(h, s, tuple(raw_images[ng:]))
    pr1 = GroupHom(s, g, tuple(g(sec[:ng]) for sec in raw_sections))
    pr2 = GroupHom(s, h, tuple(h(sec[ng:]) for sec in raw_sections))
    return DirectSum(g, h, s, inj1, inj2, pr1, pr2)


def subgroup_generated_equals(g: FgaGroup, gens: Sequence[GroupElement]) -> bool:
    """True iff ``gens`` generate all of ``g``."""
    return quotient(g, gens).quotient.is_trivial


def enumerate_elements(g: FgaGroup) -> Iterator[GroupElement]:
    """All elements of a finite group in lexicographic coordinate order."""
    if not g.is_finite:
        raise InfiniteGroupError(f"cannot enumerate the infinite group {g}")
    for coords in itertools.product(*(range(d) for d in g.moduli)):
        yield GroupElement(g, coords)
