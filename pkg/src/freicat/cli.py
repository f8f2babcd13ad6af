"""Batch front end: read a problem document, run one computation, print a report.

A problem document is one JSON file::

    {
      "order": 2,
      "groups": {"Z": {"rank": 1, "torsion": []}},
      "sets":   {"A": {"ambient": "Z", "elements": [0, 1, 2]}},
      "maps":   {"f": {"source": "A", "target": "B", "pairs": [[0, 0], [1, 3]]}}
    }

Elements are integers (one-generator groups) or integer arrays.  A set's
ambient is a group name or an inline group.  Maps may carry their own
``order``; ``--k`` overrides both it and the document default.

Exit codes: 0 success, 1 property violated, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import cat
from .addset import AdditiveSet, doubling, sumset
from .fgab import FgaGroup, GroupMismatchError, subgroup_generated_equals
from .freiman import (
    BudgetExceeded,
    FreimanMap,
    hom_violation,
    is_freiman_hom,
    is_freiman_iso,
    iter_homs,
)
from .jsonio import (
    dumps,
    element_from_json,
    element_to_json,
    fraction_to_json,
    group_from_json,
    group_to_json,
    set_to_json,
    violation_to_json,
)
from .universal import build_universal

__all__ = ["ProblemDocument", "DocumentError", "load_document", "validate", "run", "emit_report", "main"]

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_ORDER = 2

# operand kinds per subcommand: "set" or "map"
OPERANDS = {
    "doubling": ("set",),
    "sumset": ("set", "set?"),
    "check-hom": ("map",),
    "iso-check": ("map",),
    "enumerate-homs": ("set", "set"),
    "product": ("set", "set"),
    "coproduct": ("set", "set"),
    "pullback": ("map", "map"),
    "pushout": ("map", "map"),
    "equalizer": ("map", "map"),
    "coequalizer": ("map", "map"),
    "universal": ("set",),
}
CONSTRUCTIONS = ("product", "coproduct", "pullback", "pushout", "equalizer", "coequalizer")
# constructions that only exist among normalized sets and 0-preserving maps
NORMALIZED_ONLY = frozenset(CONSTRUCTIONS) - {"product"}


class DocumentError(ValueError):
    """Malformed or inconsistent problem document."""


@dataclass
class ProblemDocument:
    groups: dict[str, FgaGroup] = field(default_factory=dict)
    sets: dict[str, AdditiveSet] = field(default_factory=dict)
    maps: dict[str, FreimanMap] = field(default_factory=dict)
    order: int = DEFAULT_ORDER
    map_orders: dict[str, Optional[int]] = field(default_factory=dict)

    def get_set(self, name: str) -> AdditiveSet:
        if name not in self.sets:
            raise DocumentError(f"unknown set name {name!r}")
        return self.sets[name]

    def get_map(self, name: str, k: Optional[int] = None) -> FreimanMap:
        if name not in self.maps:
            raise DocumentError(f"unknown map name {name!r}")
        f = self.maps[name]
        return f if k is None else f.with_order(k)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _load(raw: dict, diags: list[str]) -> ProblemDocument:
    """Build what can be built, appending a diagnostic for everything else."""
    doc = ProblemDocument()
    if not isinstance(raw, dict):
        diags.append("document must be a JSON object")
        return doc
    for key in raw:
        if key not in ("order", "groups", "sets", "maps"):
            diags.append(f"unknown top-level key {key!r}")
    for key in ("groups", "sets", "maps"):
        if not isinstance(raw.get(key) or {}, dict):
            diags.append(f"{key!r} must map names to definitions")
            return doc
    order = raw.get("order", DEFAULT_ORDER)
    if not _is_int(order) or order < 1:
        diags.append(f"order must be an integer k >= 1, got {order!r}")
    else:
        doc.order = order

    for name, g in (raw.get("groups") or {}).items():
        try:
            doc.groups[name] = group_from_json(g)
        except (ValueError, TypeError) as e:
            diags.append(f"group {name!r}: {e}")

    for name, s in (raw.get("sets") or {}).items():
        if not isinstance(s, dict) or "ambient" not in s or "elements" not in s:
            diags.append(f"set {name!r} needs 'ambient' and 'elements'")
            continue
        amb = s["ambient"]
        if isinstance(amb, str):
            if amb not in doc.groups:
                diags.append(f"set {name!r}: unknown group name {amb!r}")
                continue
            g = doc.groups[amb]
        else:
            try:
                g = group_from_json(amb)
            except (ValueError, TypeError) as e:
                diags.append(f"set {name!r}: {e}")
                continue
        try:
            elems = [element_from_json(g, x) for x in s["elements"]]
            doc.sets[name] = AdditiveSet(g, elems)
        except (ValueError, TypeError) as e:
            diags.append(f"set {name!r}: {e}")

    for name, m in (raw.get("maps") or {}).items():
        if not isinstance(m, dict) or not {"source", "target", "pairs"} <= set(m):
            diags.append(f"map {name!r} needs 'source', 'target' and 'pairs'")
            continue
        missing = [m[e] for e in ("source", "target") if m[e] not in doc.sets]
        if missing:
            diags.append(f"map {name!r}: unknown set name {missing[0]!r}")
            continue
        k = m.get("order")
        if k is not None and (not _is_int(k) or k < 1):
            diags.append(f"map {name!r}: order must be an integer k >= 1, got {k!r}")
            continue
        a, b = doc.sets[m["source"]], doc.sets[m["target"]]
        try:
            table = {}
            for pair in m["pairs"]:
                if not isinstance(pair, list) or len(pair) != 2:
                    raise ValueError(f"pair {pair!r} is not [x, f(x)]")
                x = element_from_json(a.ambient, pair[0])
                if x in table:
                    raise ValueError(f"{x!r} is assigned twice")
                table[x] = element_from_json(b.ambient, pair[1])
            doc.maps[name] = FreimanMap.from_mapping(a, b, table, k or doc.order)
            doc.map_orders[name] = k
        except (ValueError, TypeError) as e:
            diags.append(f"map {name!r}: {e}")
    return doc


def load_document(raw: dict) -> ProblemDocument:
    diags: list[str] = []
    doc = _load(raw, diags)
    if diags:
        raise DocumentError("; ".join(diags))
    return doc


def _effective_order(doc: ProblemDocument, k: Optional[int]) -> int:
    return doc.order if k is None else k


def validate(
    raw: dict, command: Optional[str] = None, operands: Sequence[str] = (), k: Optional[int] = None
) -> list[str]:
    """Structural problems with a document, optionally for one command.

    Never raises; an empty list means the document (and command) is usable.
    """
    diags: list[str] = []
    doc = _load(raw, diags)
    if k is not None and k < 1:
        diags.append(f"order must be k >= 1, got {k}")
    if command is None:
        return diags
    if command == "structure-report":
        if not operands:
            diags.append("structure-report needs a construction name")
            return diags
        if operands[0] not in CONSTRUCTIONS:
            diags.append(f"unknown construction {operands[0]!r}")
            return diags
        command, operands = operands[0], operands[1:]
    if command not in OPERANDS:
        diags.append(f"unknown command {command!r}")
        return diags
    kinds = OPERANDS[command]
    required = [t for t in kinds if not t.endswith("?")]
    if not len(required) <= len(operands) <= len(kinds):
        diags.append(f"{command} takes {len(required)} to {len(kinds)} operands, got {len(operands)}")
        return diags
    order = _effective_order(doc, k)
    for kind, name in zip(kinds, operands):
        kind = kind.rstrip("?")
        table = doc.sets if kind == "set" else doc.maps
        if name not in table:
            diags.append(f"unknown {kind} name {name!r}")
            continue
        if command in NORMALIZED_ONLY:
            objs = [table[name]] if kind == "set" else [table[name].source, table[name].target]
            for s in objs:
                if not s.is_normalized:
                    diags.append(f"{command} works among normalized sets, but {s} does not contain 0")
            if kind == "map" and not table[name].preserves_zero():
                diags.append(f"{command} needs 0-preserving maps, {name!r} moves 0")
    if command == "universal" and order < 2:
        diags.append(f"universal needs k >= 2 (relations come from k-fold sums with k >= 2), got k={order}")
    return diags


def _pairs(f: FreimanMap) -> list:
    return [[element_to_json(x), element_to_json(y)] for x, y in f.pairs()]


def _map_report(f: FreimanMap) -> dict:
    return {"order": f.order, "pairs": _pairs(f)}


def _construct(kind: str, doc: ProblemDocument, ops: Sequence[str], k: int) -> cat.ConeResult:
    if kind in ("product", "coproduct"):
        a, b = doc.get_set(ops[0]), doc.get_set(ops[1])
        return cat.product(a, b, k) if kind == "product" else cat.coproduct0(a, b, k)
    f, g = doc.get_map(ops[0], k), doc.get_map(ops[1], k)
    builder = {
        "pullback": cat.pullback0,
        "pushout": cat.pushout0,
        "equalizer": cat.equalizer0,
        "coequalizer": cat.coequalizer0,
    }[kind]
    return builder(f, g)


def _construction_report(
    cone: cat.ConeResult, doc: ProblemDocument, competitor: Optional[Sequence[str]], budget: Optional[int]
) -> tuple[dict, int]:
    k = cone.order
    legs_ok = all(is_freiman_hom(leg) for leg in cone.legs)
    has_zero = cone.apex.is_normalized
    report = {
        "construction": cone.kind,
        "order": k,
        "object": set_to_json(cone.apex),
        "legs": [_map_report(leg) for leg in cone.legs],
        "legs_are_homs": legs_ok,
        "contains_zero": has_zero,
    }
    if cone.quotient is not None:
        q = cone.quotient
        report["classes"] = [[_point_json(p) for p in cls] for cls in q.classes]
        report["class_images"] = [element_to_json(v) for v in q.class_images]
        report["collapsed_classes"] = [list(ix) for ix in q.collapsed]
    verdict = legs_ok and (has_zero or not cone.normalized)
    if competitor:
        apex = doc.get_set(competitor[0])
        comp = cat.Cone(apex, tuple(doc.get_map(n, k) for n in competitor[1:]))
        try:
            cat.validate_competitor(cone, comp)
        except ValueError as e:
            raise DocumentError(f"competitor: {e}") from e
        found = cat.commuting_maps(cone, comp, budget)
        try:
            built = cone.mediator(comp)
            mediator = _map_report(built)
            built_ok = len(found) == 1 and built == found[0]
        except cat.MediatorError as e:
            mediator = {"error": str(e)}
            built_ok = False
        report["competitor"] = {
            "object": competitor[0],
            "legs": list(competitor[1:]),
            "mediator": mediator,
            "commuting_maps": len(found),
            "universal_property": built_ok,
        }
        verdict = verdict and built_ok
    report["verdict"] = verdict
    return report, EXIT_OK if verdict else EXIT_VIOLATED


def _point_json(p) -> list:
    # pushout classes hold (a, b) pairs; coequalizer classes hold elements
    if isinstance(p, tuple):
        return [element_to_json(p[0]), element_to_json(p[1])]
    return element_to_json(p)


def run(
    command: str,
    raw: dict,
    operands: Sequence[str] = (),
    k: Optional[int] = None,
    budget: Optional[int] = None,
    preserve_zero: bool = False,
    competitor: Optional[Sequence[str]] = None,
) -> tuple[dict, int]:
    """Execute one command.  Raises :class:`DocumentError` on bad input and
    :class:`BudgetExceeded` when a search is too large."""
    if command == "validate":
        target = operands[0] if operands else None
        diags = validate(raw, target, operands[1:], k)
        return {"command": "validate", "diagnostics": diags, "verdict": not diags}, (
            EXIT_OK if not diags else EXIT_INPUT
        )
    diags = validate(raw, command, operands, k)
    if diags:
        raise DocumentError("; ".join(diags))
    doc = load_document(raw)
    order = _effective_order(doc, k)
    ops = list(operands)
    report: dict
    code = EXIT_OK

    if command == "doubling":
        a = doc.get_set(ops[0])
        d = doubling(a)
        report = {
            "set": set_to_json(a),
            "set_size": d.set_size,
            "sumset_size": d.sumset_size,
            "sigma": fraction_to_json(d.sigma),
            "verdict": True,
        }
    elif command == "sumset":
        a = doc.get_set(ops[0])
        b = doc.get_set(ops[1] if len(ops) > 1 else ops[0])
        try:
            s = sumset(a, b)
        except (ValueError, GroupMismatchError) as e:
            raise DocumentError(str(e)) from e
        report = {"sumset": set_to_json(s), "size": len(s), "verdict": True}
    elif command == "check-hom":
        f = _order_for(doc, ops[0], k)
        v = hom_violation(f)
        report = {
            "map": ops[0],
            "order": f.order,
            "is_hom": v is None,
            "witness": None if v is None else violation_to_json(v),
            "witness_text": None if v is None else str(v),
            "verdict": v is None,
        }
        code = EXIT_OK if v is None else EXIT_VIOLATED
    elif command == "iso-check":
        f = _order_for(doc, ops[0], k)
        fwd = hom_violation(f)
        back = hom_violation(f.inverse()) if f.is_bijective else None
        iso = is_freiman_iso(f)
        report = {
            "map": ops[0],
            "order": f.order,
            "is_bijective": f.is_bijective,
            "forward_is_hom": fwd is None,
            "forward_witness": None if fwd is None else violation_to_json(fwd),
            "inverse_is_hom": f.is_bijective and back is None,
            "inverse_witness": None if back is None else violation_to_json(back),
            "is_iso": iso,
            "verdict": iso,
        }
        code = EXIT_OK if iso else EXIT_VIOLATED
    elif command == "enumerate-homs":
        a, b = doc.get_set(ops[0]), doc.get_set(ops[1])
        homs = list(iter_homs(a, b, order, preserve_zero=preserve_zero, budget=budget))
        report = {
            "source": ops[0],
            "target": ops[1],
            "order": order,
            "preserve_zero": preserve_zero,
            "count": len(homs),
            "maps": [_pairs(h) for h in homs],
            "verdict": True,
        }
    elif command in CONSTRUCTIONS:
        cone = _construct(command, doc, ops, order)
        report, code = _construction_report(cone, doc, competitor, budget)
    elif command == "universal":
        a = doc.get_set(ops[0])
        u = build_universal(a, order)
        unit_iso = is_freiman_iso(u.unit)
        generated = subgroup_generated_equals(u.group, list(u.embedded))
        report = {
            "order": order,
            "set": set_to_json(a),
            "presentation": group_to_json(u.group),
            "relation_rows": u.relation_matrix,
            "embedded": set_to_json(u.embedded),
            "unit": _pairs(u.unit),
            "unit_is_iso": unit_iso,
            "generated_by_embedded": generated,
            "verdict": unit_iso and generated,
        }
        code = EXIT_OK if report["verdict"] else EXIT_VIOLATED
    elif command == "structure-report":
        kind = ops[0]
        cone = _construct(kind, doc, ops[1:], order)
        checks = cat.structure_report(cone)
        report = {
            "construction": kind,
            "order": order,
            "object": set_to_json(cone.apex),
            "checks": [
                {
                    "name": c.name,
                    "lower": None if c.lower is None else fraction_to_json(c.lower),
                    "value": fraction_to_json(c.value),
                    "upper": None if c.upper is None else fraction_to_json(c.upper),
                    "exact": c.exact,
                    "holds": c.holds,
                }
                for c in checks
            ],
            "verdict": all(c.holds for c in checks),
        }
        code = EXIT_OK if report["verdict"] else EXIT_VIOLATED
    else:
        raise DocumentError(f"unknown command {command!r}")
    report["command"] = command
    return report, code


def _order_for(doc: ProblemDocument, name: str, k: Optional[int]) -> FreimanMap:
    # flag beats the map's own order, which beats the document default
    f = doc.get_map(name)
    return f.with_order(k) if k is not None else f


def _text(value) -> str:
    if isinstance(value, dict):
        if set(value) == {"num", "den"}:
            return f"{value['num']}/{value['den']}"
        if set(value) == {"rank", "torsion"}:
            parts = ["Z"] * value["rank"] + [f"Z/{d}" for d in value["torsion"]]
            return " + ".join(parts) or "0"
        if set(value) == {"ambient", "elements"}:
            return "{" + ", ".join(_text(x) for x in value["elements"]) + "} in " + _text(value["ambient"])
        return "; ".join(f"{key}={_text(v)}" for key, v in sorted(value.items()))
    if isinstance(value, list):
        if len(value) == 1 and isinstance(value[0], int):
            return str(value[0])
        if value and all(isinstance(x, int) for x in value):
            return "(" + ", ".join(map(str, value)) + ")"
        return "[" + ", ".join(_text(x) for x in value) + "]"
    if value is None:
        return "-"
    return str(value)


def emit_report(report: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return dumps(report)
    lines = [f"{report.get('command', '?')}: {'ok' if report.get('verdict') else 'FAILED'}"]
    for key in sorted(report):
        if key in ("command", "verdict"):
            continue
        lines.append(f"  {key}: {_text(report[key])}")
    return "\n".join(lines) + "\n"


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="canonical JSON (default)")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="human summary")
    common.add_argument("--k", type=int, default=None, help="Freiman order, overrides the document")
    common.add_argument(
        "--budget", type=int, default=None, help="max candidate maps in a homset search (env FREICAT_BUDGET)"
    )
    p = argparse.ArgumentParser(prog="freicat", description="Additive sets and Freiman homomorphisms.")
    sub = p.add_subparsers(dest="command", required=True)
    helps = {
        "doubling": "doubling constant of a set",
        "sumset": "A+B (or A+A)",
        "check-hom": "is the map a Freiman k-hom; witness if not",
        "iso-check": "is the map a Freiman k-isomorphism",
        "enumerate-homs": "all k-homs between two sets",
        "universal": "universal ambient group of a set",
        "structure-report": "doubling-constant bounds for a constructed object",
        "validate": "structural diagnostics for a document",
    }
    for name in list(OPERANDS) + ["structure-report", "validate"]:
        sp = sub.add_parser(name, parents=[common], help=helps.get(name, f"{name} with mediator check"))
        sp.add_argument("document", help="problem document (JSON file, '-' for stdin)")
        sp.add_argument("operands", nargs="*", help="set or map names from the document")
        if name == "enumerate-homs":
            sp.add_argument("--preserve-zero", action="store_true", help="only 0-preserving maps")
        if name in CONSTRUCTIONS:
            sp.add_argument(
                "--competitor",
                nargs="+",
                metavar="NAME",
                help="competing (co)cone: object set name followed by its leg map names",
            )
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    fmt = args.fmt or "json"
    budget = args.budget
    if budget is None and os.environ.get("FREICAT_BUDGET"):
        budget = int(os.environ["FREICAT_BUDGET"])
    try:
        if args.document == "-":
            raw = json.load(sys.stdin)
        else:
            with open(args.document, encoding="utf-8") as fh:
                raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        print(f"freicat: cannot read document: {e}", file=sys.stderr)
        return EXIT_INPUT
    try:
        report, code = run(
            args.command,
            raw,
            args.operands,
            k=args.k,
            budget=budget,
            preserve_zero=getattr(args, "preserve_zero", False),
            competitor=getattr(args, "competitor", None),
        )
    except DocumentError as e:
        print(f"freicat: {e}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as e:
        print(f"freicat: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    if args.command == "validate":
        for d in report["diagnostics"]:
            print(f"freicat: {d}", file=sys.stderr)
    sys.stdout.write(emit_report(report, fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
