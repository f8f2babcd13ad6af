"""Universal ambient group of an additive set and the adjunction it gives.

For ``A`` and ``k >= 2``, the group ``Z' = Z^A / <X>`` is the free abelian
group on the symbols ``e_a`` modulo every relation
``e_a1 + ... + e_ak - e_b1 - ... - e_bk`` with ``a1 + ... + ak = b1 + ... + bk``
in the original ambient group.  The classes of the ``e_a`` form a copy
``A'`` of ``A``; every k-hom out of ``A`` extends uniquely to a group hom
out of ``Z'``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .addset import AdditiveSet
from .fgab import FgaGroup, GroupHom, QuotientResult, free, group_sum, quotient
from .freiman import FreimanMap, HomViolation, compose, hom_violation, relation_rows

__all__ = [
    "NotAHomError",
    "UniversalResult",
    "build_universal",
    "extend_hom",
    "adjunction_theta",
    "adjunction_eta",
    "functor_map",
]


class NotAHomError(ValueError):
    def __init__(self, message: str, violation: HomViolation):
        super().__init__(message)
        self.violation = violation


@dataclass(frozen=True)
class UniversalResult:
    original: AdditiveSet
    embedded: AdditiveSet
    unit: FreimanMap
    relation_matrix: list[list[int]]
    presentation: QuotientResult
    order: int

    @property
    def group(self) -> FgaGroup:
        return self.presentation.quotient

    @property
    def counit_inverse(self) -> FreimanMap:
        """``A' -> A``, inverse of the unit."""
        return self.unit.inverse()


def build_universal(a: AdditiveSet, k: int) -> UniversalResult:
    if k < 2:
        raise ValueError(f"the universal ambient group needs k >= 2, got {k}")
    n = len(a)
    cover = free(n)
    rows = [rel.dense(n) for rel in relation_rows(a, k)]
    pres = quotient(cover, [cover(r) for r in rows])
    images = [pres.projection.images[i] for i in range(n)]
    embedded = AdditiveSet(pres.quotient, images)
    unit = FreimanMap(a, embedded, images, k)
    return UniversalResult(a, embedded, unit, rows, pres, k)


def extend_hom(u: UniversalResult, g: FreimanMap) -> GroupHom:
    """The group hom ``Z' -> W`` with ``[e_a] -> g(a)``.

    Raises :class:`NotAHomError` (carrying a witness) if ``g`` is not a
    k-hom, since then some relation row has a nonzero image.
    """
    if g.source != u.original:
        raise ValueError("map does not start at the original set")
    if g.order != u.order:
        g = g.with_order(u.order)
    v = hom_violation(g)
    if v is not None:
        raise NotAHomError(f"not a Freiman {u.order}-homomorphism: {v}", v)
    w = g.target.ambient
    # value of the free hom e_a -> g(a) on each section of a Z' generator
    images = tuple(
        group_sum((c * g.images[i] for i, c in enumerate(sec.coords) if c), w) for sec in u.presentation.sections
    )
    return GroupHom(u.group, w, images)


def adjunction_theta(u: UniversalResult, f: FreimanMap) -> FreimanMap:
    """Maps out of ``A'`` to maps out of ``A``: precompose with the unit."""
    if f.source != u.embedded:
        raise ValueError("map does not start at the embedded set")
    return compose(f, u.unit.with_order(f.order))


def adjunction_eta(u: UniversalResult, g: FreimanMap) -> FreimanMap:
    """Maps out of ``A`` to maps out of ``A'``: ``unit(a) -> g(a)``."""
    if g.source != u.original:
        raise ValueError("map does not start at the original set")
    return compose(g, u.counit_inverse.with_order(g.order))


def functor_map(ua: UniversalResult, ub: UniversalResult, f: FreimanMap) -> FreimanMap:
    """Image of ``f: A -> B`` as the map ``A' -> B'``, ``unit_A(a) -> unit_B(f(a))``."""
    if f.source != ua.original or f.target != ub.original:
        raise ValueError("map does not run between the two original sets")
    return compose(ub.unit.with_order(f.order), adjunction_eta(ua, f))
