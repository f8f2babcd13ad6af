"""Limits and colimits of additive sets under Freiman k-homomorphisms.

Each builder returns a :class:`ConeResult`: the apex, its legs, and a
procedure producing the mediating map for a competing (co)cone.  The claim
that this mediator is the unique one is checked, not assumed, by
:func:`verify_universal_property`, which searches the whole homset.

Constructions marked ``0`` live among normalized sets (containing 0) and
0-preserving maps; :func:`product` also works without normalization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .addset import AdditiveSet, product_set, sigma, sumset, union_disjoint
from .fgab import FgaGroup, GroupElement, QuotientResult, Z, direct_sum, quotient
from .freiman import (
    DEFAULT_BUDGET,
    FreimanMap,
    compose,
    constant_map,
    is_freiman_hom,
    iter_homs,
)

__all__ = [
    "NotNormalizedError",
    "MediatorError",
    "Cone",
    "ConeResult",
    "QuotientObject",
    "TerminalInitial",
    "StructureCheck",
    "product",
    "coproduct0",
    "pullback0",
    "pushout0",
    "equalizer0",
    "coequalizer0",
    "terminal_initial",
    "disjoint_copair",
    "validate_competitor",
    "commuting_maps",
    "verify_universal_property",
    "structure_report",
    "disjoint_union_check",
]

LIMITS = frozenset({"product", "pullback", "equalizer", "terminal"})
COLIMITS = frozenset({"coproduct", "pushout", "coequalizer", "initial"})


class NotNormalizedError(ValueError):
    pass


class MediatorError(ValueError):
    """The prescribed mediating formula does not give a map into the competitor."""


@dataclass(frozen=True)
class Cone:
    """A competing (co)cone: an object plus one leg per diagram object."""

    apex: AdditiveSet
    legs: tuple[FreimanMap, ...]


@dataclass(frozen=True)
class QuotientObject:
    """Carrier of a pushout or coequalizer.

    ``classes`` is the partition of the underlying finite set produced by
    the generating relation; ``class_images`` gives each class's value in
    the quotient group.  Distinct classes may share a value, in which case
    the additive set keeps one element and ``collapsed`` lists them.
    """

    classes: tuple[tuple, ...]
    ambient_quotient: QuotientResult
    class_images: tuple[GroupElement, ...]
    collapsed: tuple[tuple[int, ...], ...]


@dataclass
class ConeResult:
    kind: str
    apex: AdditiveSet
    legs: tuple[FreimanMap, ...]
    order: int
    normalized: bool
    diagram: tuple
    mediator_builder: Callable[[Cone], FreimanMap] = field(repr=False)
    quotient: Optional[QuotientObject] = None

    @property
    def is_limit(self) -> bool:
        return self.kind in LIMITS

    def mediator(self, competitor: Cone) -> FreimanMap:
        return self.mediator_builder(competitor)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # smaller index wins so class roots are deterministic
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx

    def classes(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            out.setdefault(self.find(i), []).append(i)
        return [out[r] for r in sorted(out)]


def _require_normalized(*sets: AdditiveSet) -> None:
    for s in sets:
        if not s.is_normalized:
            raise NotNormalizedError(f"{s} does not contain 0")


def _require_normalized_maps(*maps: FreimanMap) -> None:
    for f in maps:
        _require_normalized(f.source, f.target)
        if not f.preserves_zero():
            raise NotNormalizedError(f"{f} does not preserve 0")


def _same_order(*maps: FreimanMap) -> int:
    ks = {f.order for f in maps}
    if len(ks) != 1:
        raise ValueError(f"maps have different orders {sorted(ks)}")
    return ks.pop()


def _into(comp: Cone, values: Sequence[GroupElement], source: AdditiveSet, order: int) -> FreimanMap:
    for v in values:
        if v not in comp.apex:
            raise MediatorError(f"mediating value {v!r} is not in {comp.apex}")
    return FreimanMap(source, comp.apex, values, order)


def product(a: AdditiveSet, b: AdditiveSet, k: int) -> ConeResult:
    """``A x B`` in the direct sum, legs the coordinate projections."""
    apex, ds = product_set(a, b)
    pr1 = FreimanMap(apex, a, [ds.pr1(z) for z in apex], k)
    pr2 = FreimanMap(apex, b, [ds.pr2(z) for z in apex], k)

    def mediate(comp: Cone) -> FreimanMap:
        f, g = comp.legs
        return FreimanMap(comp.apex, apex, [ds.pair(f(c), g(c)) for c in comp.apex], k)

    # a product in all of FR_k, so the homset search must not insist on 0
    return ConeResult("product", apex, (pr1, pr2), k, False, (a, b), mediate)


def coproduct0(a: AdditiveSet, b: AdditiveSet, k: int) -> ConeResult:
    """Coproduct of normalized sets: ``A x B`` with ``a -> (a,0)``, ``b -> (0,b)``.

    The mediator is ``(a,b) -> f(a) + g(b)``; it raises
    :class:`MediatorError` when that sum leaves the competitor's set.
    """
    _require_normalized(a, b)
    apex, ds = product_set(a, b)
    za, zb = a.ambient.zero(), b.ambient.zero()
    in1 = FreimanMap(a, apex, [ds.pair(x, zb) for x in a], k)
    in2 = FreimanMap(b, apex, [ds.pair(za, y) for y in b], k)

    def mediate(comp: Cone) -> FreimanMap:
        f, g = comp.legs
        vals = []
        for z in apex:
            x, y = ds.split(z)
            vals.append(f(x) + g(y))
        return _into(comp, vals, apex, k)

    return ConeResult("coproduct", apex, (in1, in2), k, True, (a, b), mediate)


def pullback0(f: FreimanMap, g: FreimanMap) -> ConeResult:
    """Fiber product ``{(a,b) : f(a) = g(b)}`` of ``f: A -> C`` and ``g: B -> C``."""
    if f.target != g.target:
        raise ValueError("pullback needs maps with a common target")
    k = _same_order(f, g)
    _require_normalized_maps(f, g)
    a, b = f.source, g.source
    ds = direct_sum(a.ambient, b.ambient)
    apex = AdditiveSet(ds.group, (ds.pair(x, y) for x in a for y in b if f(x) == g(y)))
    p1 = FreimanMap(apex, a, [ds.pr1(z) for z in apex], k)
    p2 = FreimanMap(apex, b, [ds.pr2(z) for z in apex], k)

    def mediate(comp: Cone) -> FreimanMap:
        d1, d2 = comp.legs
        return _into(Cone(apex, ()), [ds.pair(d1(x), d2(x)) for x in comp.apex], comp.apex, k)

    return ConeResult("pullback", apex, (p1, p2), k, True, (f, g), mediate)


def _classes_to_object(
    members: Sequence, uf: _UnionFind, image_of: Callable[[object], GroupElement], q: QuotientResult
) -> tuple[AdditiveSet, QuotientObject]:
    classes = []
    images = []
    for cls in uf.classes():
        pts = [members[i] for i in cls]
        vals = {image_of(p) for p in pts}
        # generating steps differ by elements of the divisor subgroup
        assert len(vals) == 1, f"class {pts} has images {vals}"
        classes.append(tuple(pts))
        images.append(vals.pop())
    by_image: dict[GroupElement, list[int]] = {}
    for i, v in enumerate(images):
        by_image.setdefault(v, []).append(i)
    collapsed = tuple(tuple(ix) for ix in by_image.values() if len(ix) > 1)
    apex = AdditiveSet(q.quotient, images)
    return apex, QuotientObject(tuple(classes), q, tuple(images), collapsed)


def pushout0(f: FreimanMap, g: FreimanMap) -> ConeResult:
    """Pushout of ``f: C -> A`` and ``g: C -> B``.

    Ambient ``(Z + W) / N`` with N generated by ``(f(c), -g(c))``; carrier
    the classes of ``A x B`` under the equivalence generated by
    ``(a,b) ~ (a - f(c), b + g(c))``, each valued in the quotient group.
    """
    if f.source != g.source:
        raise ValueError("pushout needs maps with a common source")
    k = _same_order(f, g)
    _require_normalized_maps(f, g)
    a, b, c = f.target, g.target, f.source
    ds = direct_sum(a.ambient, b.ambient)
    q = quotient(ds.group, [ds.pair(f(x), -g(x)) for x in c])
    pairs = [(x, y) for x in a for y in b]
    pos = {p: i for i, p in enumerate(pairs)}
    uf = _UnionFind(len(pairs))
    for (x, y), i in pos.items():
        for z in c:
            j = pos.get((x - f(z), y + g(z)))
            if j is not None:
                uf.union(i, j)

    def image(p):
        return q.projection(ds.pair(*p))

    apex, qobj = _classes_to_object(pairs, uf, image, q)
    za, zb = a.ambient.zero(), b.ambient.zero()
    i1 = FreimanMap(a, apex, [image((x, zb)) for x in a], k)
    i2 = FreimanMap(b, apex, [image((za, y)) for y in b], k)
    reps: dict[GroupElement, tuple] = {}
    for cls, v in zip(qobj.classes, qobj.class_images):
        reps.setdefault(v, cls[0])

    def mediate(comp: Cone) -> FreimanMap:
        d1, d2 = comp.legs
        return _into(comp, [d1(reps[p][0]) + d2(reps[p][1]) for p in apex], apex, k)

    return ConeResult("pushout", apex, (i1, i2), k, True, (f, g), mediate, qobj)


def equalizer0(f: FreimanMap, g: FreimanMap) -> ConeResult:
    """``E = {a : f(a) = g(a)}`` with its inclusion into A."""
    if f.source != g.source or f.target != g.target:
        raise ValueError("equalizer needs parallel maps")
    k = _same_order(f, g)
    _require_normalized_maps(f, g)
    a = f.source
    apex = AdditiveSet(a.ambient, (x for x in a if f(x) == g(x)))
    e = FreimanMap(apex, a, apex.elements, k)

    def mediate(comp: Cone) -> FreimanMap:
        (h,) = comp.legs
        return _into(Cone(apex, ()), h.images, comp.apex, k)

    return ConeResult("equalizer", apex, (e,), k, True, (f, g), mediate)


def coequalizer0(f: FreimanMap, g: FreimanMap) -> ConeResult:
    """Classes of B under the equivalence generated by ``f(a) ~ g(a)``,
    valued in ``W / <f(a) - g(a)>``."""
    if f.source != g.source or f.target != g.target:
        raise ValueError("coequalizer needs parallel maps")
    k = _same_order(f, g)
    _require_normalized_maps(f, g)
    a, b = f.source, f.target
    q = quotient(b.ambient, [f(x) - g(x) for x in a])
    uf = _UnionFind(len(b))
    for x in a:
        uf.union(b.index(f(x)), b.index(g(x)))
    apex, qobj = _classes_to_object(b.elements, uf, q.projection, q)
    c = FreimanMap(b, apex, [q.projection(y) for y in b], k)
    reps: dict[GroupElement, GroupElement] = {}
    for cls, v in zip(qobj.classes, qobj.class_images):
        reps.setdefault(v, cls[0])

    def mediate(comp: Cone) -> FreimanMap:
        (h,) = comp.legs
        return _into(comp, [h(reps[p]) for p in apex], apex, k)

    return ConeResult("coequalizer", apex, (c,), k, True, (f, g), mediate, qobj)


@dataclass(frozen=True)
class TerminalInitial:
    """``({0}, G)``: terminal everywhere, initial among normalized sets."""

    obj: AdditiveSet
    order: int
    terminal: ConeResult
    initial: ConeResult

    def to_terminal(self, a: AdditiveSet) -> FreimanMap:
        return constant_map(a, self.obj, self.obj.ambient.zero(), self.order)

    def from_initial(self, b: AdditiveSet) -> FreimanMap:
        _require_normalized(b)
        return FreimanMap(self.obj, b, [b.ambient.zero()], self.order)

    def weak_initial_maps(self, point: AdditiveSet, b: AdditiveSet) -> list[FreimanMap]:
        """From a one-point set every value in B gives a map; none is canonical."""
        if len(point) != 1:
            raise ValueError("weak initial objects are singletons")
        return [FreimanMap(point, b, [y], self.order) for y in b]


def terminal_initial(k: int, ambient: FgaGroup = Z) -> TerminalInitial:
    obj = AdditiveSet(ambient, [ambient.zero()])

    def to_term(comp: Cone) -> FreimanMap:
        return constant_map(comp.apex, obj, ambient.zero(), k)

    def from_init(comp: Cone) -> FreimanMap:
        _require_normalized(comp.apex)
        return FreimanMap(obj, comp.apex, [comp.apex.ambient.zero()], k)

    term = ConeResult("terminal", obj, (), k, True, (), to_term)
    init = ConeResult("initial", obj, (), k, True, (), from_init)
    return TerminalInitial(obj, k, term, init)


def disjoint_copair(f: FreimanMap, g: FreimanMap) -> FreimanMap:
    """``[f, g]`` on ``A (+) B`` for disjoint A, B sharing an ambient."""
    if f.target != g.target:
        raise ValueError("copair needs a common target")
    k = _same_order(f, g)
    u = union_disjoint(f.source, g.source)
    return FreimanMap(u, f.target, [f(x) if x in f.source else g(x) for x in u], k)


def validate_competitor(cone: ConeResult, comp: Cone) -> None:
    """Raise ValueError unless ``comp`` is a legitimate competing (co)cone."""
    k = cone.order
    expected = len(cone.legs)
    if cone.kind in ("equalizer", "coequalizer"):
        expected = 1
    if len(comp.legs) != expected:
        raise ValueError(f"{cone.kind} competitor needs {expected} legs, got {len(comp.legs)}")
    if cone.normalized:
        _require_normalized(comp.apex)
    for leg in comp.legs:
        if leg.order != k:
            raise ValueError("competitor leg has the wrong order")
        if not is_freiman_hom(leg):
            raise ValueError(f"competitor leg {leg} is not a Freiman {k}-homomorphism")
        if cone.normalized and not leg.preserves_zero():
            raise ValueError(f"competitor leg {leg} does not preserve 0")

    if cone.kind in ("product", "pullback", "equalizer"):
        sources_ok = all(leg.source == comp.apex for leg in comp.legs)
    else:
        sources_ok = all(leg.target == comp.apex for leg in comp.legs)
    if not sources_ok:
        raise ValueError("competitor legs do not start (or end) at its object")

    if cone.kind in ("product", "coproduct"):
        objs = cone.diagram
    elif cone.kind == "pullback":
        objs = (cone.diagram[0].source, cone.diagram[1].source)
    elif cone.kind == "pushout":
        objs = (cone.diagram[0].target, cone.diagram[1].target)
    elif cone.kind == "equalizer":
        objs = (cone.diagram[0].source,)
    elif cone.kind == "coequalizer":
        objs = (cone.diagram[0].target,)
    else:
        objs = ()
    for leg, obj in zip(comp.legs, objs):
        end = leg.target if cone.is_limit else leg.source
        if end != obj:
            raise ValueError(f"competitor leg {leg} does not meet diagram object {obj}")

    f_g = cone.diagram
    if cone.kind == "pullback" and compose(f_g[0], comp.legs[0]) != compose(f_g[1], comp.legs[1]):
        raise ValueError("competitor does not commute over the pullback diagram")
    if cone.kind == "pushout" and compose(comp.legs[0], f_g[0]) != compose(comp.legs[1], f_g[1]):
        raise ValueError("competitor does not commute under the pushout diagram")
    if cone.kind == "equalizer" and compose(f_g[0], comp.legs[0]) != compose(f_g[1], comp.legs[0]):
        raise ValueError("competitor does not equalize the pair")
    if cone.kind == "coequalizer" and compose(comp.legs[0], f_g[0]) != compose(comp.legs[0], f_g[1]):
        raise ValueError("competitor does not coequalize the pair")


def _commutes(cone: ConeResult, comp: Cone, h: FreimanMap) -> bool:
    if cone.is_limit:
        return all(compose(leg, h) == c for leg, c in zip(cone.legs, comp.legs))
    return all(compose(h, leg) == c for leg, c in zip(cone.legs, comp.legs))


def commuting_maps(cone: ConeResult, comp: Cone, budget: Optional[int] = None) -> list[FreimanMap]:
    """Every map in the relevant homset that makes all triangles commute."""
    budget = DEFAULT_BUDGET if budget is None else budget
    if cone.is_limit:
        src, dst = comp.apex, cone.apex
    else:
        src, dst = cone.apex, comp.apex
    homs = iter_homs(src, dst, cone.order, preserve_zero=cone.normalized, budget=budget)
    return [h for h in homs if _commutes(cone, comp, h)]


def verify_universal_property(
    cone: ConeResult, competitor: Cone, k: Optional[int] = None, budget: Optional[int] = None
) -> bool:
    """Exactly one map in the homset commutes, and it is the built mediator.

    Raises :class:`BudgetExceeded` when the homset is too large to search.
    """
    if k is not None and k != cone.order:
        raise ValueError(f"cone was built at order {cone.order}, not {k}")
    validate_competitor(cone, competitor)
    found = commuting_maps(cone, competitor, budget)
    if len(found) != 1:
        return False
    try:
        built = cone.mediator(competitor)
    except MediatorError:
        return False
    return built == found[0]


@dataclass(frozen=True)
class StructureCheck:
    name: str
    lower: Optional[Fraction]
    value: Fraction
    upper: Optional[Fraction]
    exact: bool = False

    @property
    def holds(self) -> bool:
        if self.exact:
            return self.value == self.upper
        lo = self.lower is None or self.lower <= self.value
        hi = self.upper is None or self.value <= self.upper
        return lo and hi


def structure_report(cone: ConeResult) -> list[StructureCheck]:
    """Doubling-constant bounds for the object a construction produced."""
    s = sigma(cone.apex)
    one = Fraction(1)
    if cone.kind in ("product", "coproduct"):
        a, b = cone.diagram
        return [StructureCheck("product_doubling_multiplicative", None, s, sigma(a) * sigma(b), exact=True)]
    if cone.kind == "pullback":
        f, g = cone.diagram
        full, _ = product_set(f.source, g.source)
        return [StructureCheck("fiber_product_between_one_and_product", one, s, sigma(full))]
    if cone.kind == "pushout":
        f, g = cone.diagram
        full, _ = product_set(f.target, g.target)
        return [StructureCheck("quotient_between_one_and_source", one, s, sigma(full))]
    if cone.kind == "equalizer":
        return [StructureCheck("equalizer_between_one_and_source", one, s, sigma(cone.diagram[0].source))]
    if cone.kind == "coequalizer":
        return [StructureCheck("quotient_between_one_and_source", one, s, sigma(cone.diagram[0].target))]
    return [StructureCheck("zero_set_doubling_is_one", None, s, one, exact=True)]


def disjoint_union_check(a: AdditiveSet, b: AdditiveSet) -> StructureCheck:
    """``sigma(A (+) B) <= sigma(A) + sigma(B) + |A+B| / (|A|+|B|)``."""
    u = union_disjoint(a, b)
    bound = sigma(a) + sigma(b) + Fraction(len(sumset(a, b)), len(a) + len(b))
    return StructureCheck("disjoint_union_bound", None, sigma(u), bound)
