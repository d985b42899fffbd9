"""Family files and JSON reports.

A family file is one JSON object::

    {"sets": [{"id": "a", "vertices": [[0, 0], [1, 0], ["1/2", 1]]}, ...],
     "colors": {"a": 1, ...}}

Coordinates are JSON numbers or exact ``"p/q"`` strings; ``colors`` is optional.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .geometry import ConvexSet, Family, GeometryError, Line2, Point2, convex_set, get_mode, num


class SchemaError(ValueError):
    pass


def encode_number(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, int):
        return v
    return float(v)


def encode_point(p: Point2) -> list:
    return [encode_number(p.x), encode_number(p.y)]


def encode_line(line: Line2) -> dict:
    return {"a": encode_point(line.a), "b": encode_point(line.b)}


def family_to_dict(fam: Family) -> dict:
    out: dict = {"sets": [{"id": s.id, "vertices": [encode_point(p) for p in s.vertices]} for s in fam.sets]}
    if fam.colors is not None:
        out["colors"] = {sid: fam.colors[sid] for sid in fam.ids}
    return out


def family_from_dict(data, mode: str | None = None) -> Family:
    mode = mode or get_mode()
    if not isinstance(data, dict):
        raise SchemaError("top level must be an object with a 'sets' list")
    unknown = set(data) - {"sets", "colors"}
    if unknown:
        raise SchemaError(f"unknown top-level fields: {sorted(unknown)}")
    sets_raw = data.get("sets")
    if not isinstance(sets_raw, list):
        raise SchemaError("'sets' must be a list")
    sets: list[ConvexSet] = []
    seen: set[str] = set()
    for i, entry in enumerate(sets_raw):
        where = f"sets[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError(f"{where}: expected an object")
        if "id" not in entry or not isinstance(entry["id"], (str, int)) or isinstance(entry["id"], bool):
            raise SchemaError(f"{where}.id: expected a string")
        sid = str(entry["id"])
        if sid in seen:
            raise SchemaError(f"{where}.id: duplicate id {sid!r}")
        seen.add(sid)
        verts = entry.get("vertices")
        if not isinstance(verts, list) or not verts:
            raise SchemaError(f"{where}.vertices: expected a nonempty list of [x, y] pairs")
        pts = []
        for j, v in enumerate(verts):
            if not isinstance(v, list) or len(v) != 2:
                raise SchemaError(f"{where}.vertices[{j}]: expected [x, y]")
            try:
                pts.append(Point2(num(v[0], mode), num(v[1], mode)))
            except (TypeError, ValueError, ZeroDivisionError) as exc:
                raise SchemaError(f"{where}.vertices[{j}]: bad coordinate ({exc})") from None
        try:
            sets.append(convex_set(sid, pts))
        except GeometryError as exc:
            raise SchemaError(f"{where}: {exc}") from None
    colors = data.get("colors")
    if colors is not None:
        if not isinstance(colors, dict):
            raise SchemaError("'colors' must map set ids to integers")
        for k, v in colors.items():
            if not isinstance(v, int) or isinstance(v, bool):
                raise SchemaError(f"colors[{k!r}]: expected an integer colour index")
    try:
        return Family(tuple(sets), dict(colors) if colors is not None else None)
    except GeometryError as exc:
        raise SchemaError(str(exc)) from None


def load_family(path, mode: str | None = None) -> Family:
    text = Path(path).read_text()
    try:
        data = json.loads(text, parse_float=Fraction if (mode or get_mode()) == "exact" else float)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return family_from_dict(data, mode)
    except SchemaError as exc:
        raise SchemaError(f"{path}: {exc}") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, default=_default) + "\n"


def _default(o):
    if isinstance(o, (Fraction,)):
        return encode_number(o)
    if isinstance(o, Point2):
        return encode_point(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def save_family(fam: Family, path) -> None:
    Path(path).write_text(dumps(family_to_dict(fam)))


def save_report(report: dict, path) -> None:
    Path(path).write_text(dumps(report))
