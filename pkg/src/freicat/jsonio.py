"""JSON encodings for groups, elements, sets, maps and reports.

Groups are ``{"rank": r, "torsion": [...]}``, elements are integer arrays,
sets are ``{"ambient": <group>, "elements": [...]}`` and maps carry their
``source``/``target`` sets, ``order`` and a list of ``[x, f(x)]`` pairs.
Rationals are ``{"num": n, "den": d}`` in lowest terms.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Union

from .addset import AdditiveSet
from .fgab import FgaGroup, GroupElement, GroupHom
from .freiman import FreimanMap, HomViolation

__all__ = [
    "group_to_json",
    "group_from_json",
    "element_to_json",
    "element_from_json",
    "set_to_json",
    "set_from_json",
    "map_to_json",
    "map_from_json",
    "hom_to_json",
    "hom_from_json",
    "fraction_to_json",
    "fraction_from_json",
    "violation_to_json",
    "dumps",
]


def group_to_json(g: FgaGroup) -> dict:
    return {"rank": g.free_rank, "torsion": list(g.torsion)}


def group_from_json(data: dict) -> FgaGroup:
    if not isinstance(data, dict) or set(data) - {"rank", "torsion"}:
        raise ValueError(f"bad group encoding {data!r}")
    return FgaGroup(int(data.get("rank", 0)), tuple(int(d) for d in data.get("torsion", [])))


def element_to_json(x: GroupElement) -> list[int]:
    return list(x.coords)


def element_from_json(g: FgaGroup, data: Union[int, list]) -> GroupElement:
    if isinstance(data, bool):
        raise ValueError(f"bad element encoding {data!r}")
    if isinstance(data, int):
        return g(data)
    if not isinstance(data, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in data):
        raise ValueError(f"bad element encoding {data!r}")
    return g(tuple(data))


def set_to_json(a: AdditiveSet) -> dict:
    return {"ambient": group_to_json(a.ambient), "elements": [element_to_json(x) for x in a]}


def set_from_json(data: dict) -> AdditiveSet:
    g = group_from_json(data["ambient"])
    return AdditiveSet(g, [element_from_json(g, x) for x in data["elements"]])


def map_to_json(f: FreimanMap) -> dict:
    return {
        "source": set_to_json(f.source),
        "target": set_to_json(f.target),
        "order": f.order,
        "pairs": [[element_to_json(x), element_to_json(y)] for x, y in f.pairs()],
    }


def map_from_json(data: dict) -> FreimanMap:
    a = set_from_json(data["source"])
    b = set_from_json(data["target"])
    table = {
        element_from_json(a.ambient, x): element_from_json(b.ambient, y) for x, y in data["pairs"]
    }
    return FreimanMap.from_mapping(a, b, table, int(data["order"]))


def hom_to_json(h: GroupHom) -> dict:
    return {"source": group_to_json(h.source), "target": group_to_json(h.target), "matrix": h.matrix}


def hom_from_json(data: dict) -> GroupHom:
    return GroupHom.from_matrix(group_from_json(data["source"]), group_from_json(data["target"]), data["matrix"])


def fraction_to_json(q: Fraction) -> dict:
    return {"num": q.numerator, "den": q.denominator}


def fraction_from_json(data: dict) -> Fraction:
    return Fraction(int(data["num"]), int(data["den"]))


def violation_to_json(v: HomViolation) -> dict:
    return {
        "left": [element_to_json(x) for x in v.left],
        "right": [element_to_json(x) for x in v.right],
        "common_sum": element_to_json(v.common_sum),
        "image_sums": [element_to_json(v.image_sums[0]), element_to_json(v.image_sums[1])],
    }


def dumps(obj: Any) -> str:
    """Canonical text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
