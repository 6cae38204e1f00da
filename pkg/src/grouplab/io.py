"""JSON formats for groups, measures and harmonic bases.

Rationals are always written as ``"p/q"`` strings; real coefficients use
the shortest round-trip float rendering of :func:`json.dumps`.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import ParseError, PreconditionError, GroupLabError
from .groups import Group, group_from_spec
from .harmonic import HarmonicBasis
from .measures import RATIONAL, REAL, Measure, normalize_mode


def format_rational(v) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def parse_rational(text, where: str = "value") -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ParseError(f"{where}: expected a rational string 'p/q', got {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError(f"{where}: zero denominator in {text!r}") from None
    except ValueError:
        raise ParseError(f"{where}: {text!r} is not a rational 'p/q'") from None


def read_json(path) -> object:
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def write_json(path, obj):
    Path(path).write_text(dumps(obj))


def group_from_json(data) -> Group:
    try:
        return group_from_spec(data)
    except GroupLabError as exc:
        raise ParseError(f"group spec: {exc}") from None


def measure_to_json(m: Measure) -> dict:
    if m.mode == RATIONAL:
        entries = [[m.group.serialize(x), format_rational(v)] for x, v in m.sorted_items()]
    else:
        entries = [[m.group.serialize(x), float(v)] for x, v in m.sorted_items()]
    return {"group": m.group.spec(), "mode": m.mode, "entries": entries}


def measure_from_json(data, group: Group | None = None) -> Measure:
    if not isinstance(data, dict) or "entries" not in data:
        raise ParseError("measure file must be an object with 'entries'")
    if group is None:
        if "group" not in data:
            raise ParseError("measure file has no 'group' and none was supplied")
        group = group_from_json(data["group"])
    elif "group" in data and group_from_json(data["group"]) != group:
        raise ParseError(f"measure declares group {data['group']} but {group.spec()} was supplied")
    try:
        mode = normalize_mode(data.get("mode", RATIONAL))
    except GroupLabError as exc:
        raise ParseError(str(exc)) from None
    coeffs = {}
    for i, entry in enumerate(data["entries"]):
        where = f"entries[{i}]"
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise ParseError(f"{where}: expected [element, coefficient], got {entry!r}")
        try:
            x = group.deserialize(entry[0])
        except GroupLabError as exc:
            raise ParseError(f"{where}: {exc}") from None
        if mode == RATIONAL:
            v = parse_rational(entry[1], where)
        else:
            if isinstance(entry[1], bool) or not isinstance(entry[1], (int, float)):
                raise ParseError(f"{where}: expected a number, got {entry[1]!r}")
            v = float(entry[1])
        if x in coeffs:
            raise ParseError(f"{where}: element {entry[0]} listed twice")
        coeffs[x] = v
    return Measure(group, coeffs, mode)


def element_from_json(group: Group, data, where="element"):
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError:
            raise ParseError(f"{where}: {data!r} is not JSON") from None
    try:
        return group.deserialize(data)
    except GroupLabError as exc:
        raise ParseError(f"{where}: {exc}") from None


def function_to_json(group: Group, f) -> dict:
    return {
        "group": group.spec(),
        "elements": [group.serialize(x) for x in group.elements()],
        "values": [format_rational(v) for v in f],
    }


def basis_to_json(B: HarmonicBasis) -> dict:
    g = B.group
    return {
        "group": g.spec(),
        "dim": B.dim,
        "elements": [g.serialize(x) for x in g.elements()],
        "vectors": [[format_rational(v) for v in vec] for vec in B.vectors],
    }


def basis_from_json(data) -> HarmonicBasis:
    g = group_from_json(data["group"])
    vecs = tuple(
        tuple(parse_rational(v, f"vectors[{i}][{j}]") for j, v in enumerate(vec))
        for i, vec in enumerate(data["vectors"])
    )
    if any(len(v) != g.order for v in vecs):
        raise ParseError(f"basis vectors must have length {g.order}")
    return HarmonicBasis(g, vecs)
