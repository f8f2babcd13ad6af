"""Brute-force reference implementations for cross-checking.

Nothing in the library proper imports this module; the checks here avoid
the fiber/relation machinery and the Smith form on purpose.
"""

from __future__ import annotations

import itertools
from math import gcd
from typing import Sequence

from .addset import AdditiveSet
from .fgab import FgaGroup, GroupElement, InfiniteGroupError
from .freiman import BudgetExceeded, FreimanMap

__all__ = [
    "naive_is_hom",
    "naive_subgroup_closure",
    "naive_minor_gcd_factors",
    "naive_mediator_search",
    "naive_all_maps",
    "naive_homs",
]


def _tuple_sum(items, group: FgaGroup) -> GroupElement:
    acc = group.zero()
    for x in items:
        acc = acc + x
    return acc


def naive_is_hom(f: FreimanMap, budget: int = 10**7) -> bool:
    """The defining condition over all ordered pairs of k-tuples."""
    a = f.source.elements
    k = f.order
    if len(a) ** (2 * k) > budget:
        raise BudgetExceeded(f"{len(a)}^{2 * k} tuple pairs exceed the budget")
    src, dst = f.source.ambient, f.target.ambient
    table = dict(zip(a, f.images))
    sums: dict[GroupElement, GroupElement] = {}
    # equal source sums must give equal image sums; recording the first
    # image sum per source sum is the same as checking all pairs
    for t in itertools.product(a, repeat=k):
        s = _tuple_sum(t, src)
        img = _tuple_sum((table[x] for x in t), dst)
        if sums.setdefault(s, img) != img:
            return False
    return True


def naive_subgroup_closure(g: FgaGroup, gens: Sequence[GroupElement]) -> set[GroupElement]:
    """Fixpoint closure of ``{0} + gens`` under addition and negation."""
    if not g.is_finite:
        raise InfiniteGroupError("closure only terminates in finite groups")
    closed = {g.zero()}
    frontier = [g.zero()]
    steps = list(gens) + [-x for x in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for s in steps:
                y = x + s
                if y not in closed:
                    closed.add(y)
                    nxt.append(y)
        frontier = nxt
    return closed


def _det(m: list[list[int]]) -> int:
    # Laplace expansion; only used on tiny minors
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1 :] for row in m[1:]]) for j in range(n) if m[0][j])


def naive_minor_gcd_factors(m: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors from ``d1 * ... * di = gcd of all i x i minors``."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    factors: list[int] = []
    prev = 1
    for i in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), i):
            for cs in itertools.combinations(range(cols), i):
                g = gcd(g, _det([[m[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors


def naive_all_maps(a: AdditiveSet, b: AdditiveSet, k: int, budget: int = 10**6):
    if len(b) ** len(a) > budget:
        raise BudgetExceeded(f"{len(b)}^{len(a)} maps exceed the budget")
    for images in itertools.product(b.elements, repeat=len(a)):
        yield FreimanMap(a, b, images, k)


def naive_homs(a: AdditiveSet, b: AdditiveSet, k: int, preserve_zero: bool = False, budget: int = 10**6):
    """Filter every total map through :func:`naive_is_hom`."""
    out = []
    for f in naive_all_maps(a, b, k, budget):
        if preserve_zero and not f.preserves_zero():
            continue
        if naive_is_hom(f):
            out.append(f)
    return out


def naive_mediator_search(cone, competitor, k: int, budget: int = 10**6) -> list[FreimanMap]:
    """All maps making the (co)cone triangles commute, by brute force."""
    if cone.is_limit:
        src, dst = competitor.apex, cone.apex
    else:
        src, dst = cone.apex, competitor.apex
    found = []
    for h in naive_homs(src, dst, k, preserve_zero=cone.normalized, budget=budget):
        ok = True
        for leg, c in zip(cone.legs, competitor.legs):
            if cone.is_limit:
                # leg after h
                ok = all(leg(h(x)) == c(x) for x in src)
            else:
                ok = all(h(leg(x)) == c(x) for x in leg.source)
            if not ok:
                break
        if ok:
            found.append(h)
    return found
