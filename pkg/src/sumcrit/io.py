"""JSON point-set files with exact rational coordinates.

A file looks like ``{"dim": 2, "points": [["0", "1/2"], ["1", "1"]]}``.
Coordinates are integer or ``p/q`` strings so nothing passes through
floating point.
"""

from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction
from typing import IO, Union

from .errors import InputError
from .geometry import PointSet

_RATIONAL = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


class ParseError(InputError):
    pass


def parse_rational(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(f"coordinate {x!r} must be an integer or a 'p/q' string")
    if isinstance(x, int):
        return Fraction(x)
    if not isinstance(x, str) or not _RATIONAL.match(x):
        raise ParseError(f"coordinate {x!r} is not an integer or 'p/q' string")
    try:
        return Fraction(x.replace(" ", ""))
    except ZeroDivisionError:
        raise ParseError(f"coordinate {x!r} has a zero denominator") from None


def format_rational(c: Fraction) -> str:
    return str(c)


def pointset_from_doc(doc) -> PointSet:
    if not isinstance(doc, dict) or "dim" not in doc or "points" not in doc:
        raise ParseError("expected an object with 'dim' and 'points'")
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError("'dim' must be a positive integer")
    pts = doc["points"]
    if not isinstance(pts, list):
        raise ParseError("'points' must be an array")
    out = []
    for row in pts:
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"point {row!r} does not have {dim} coordinates")
        out.append(tuple(parse_rational(c) for c in row))
    if len(set(out)) != len(out):
        raise ParseError("duplicate points")
    return PointSet(out, dim)


def pointset_to_doc(P: PointSet) -> dict:
    return {"dim": P.ambient_dim, "points": [[format_rational(c) for c in p] for p in P]}


def loads(text: str) -> PointSet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    return pointset_from_doc(doc)


def dumps(P: PointSet) -> str:
    return json.dumps(pointset_to_doc(P), indent=None, separators=(",", ":"))


def load(src: Union[str, IO]) -> PointSet:
    if hasattr(src, "read"):
        return loads(src.read())
    try:
        with open(src, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as e:
        raise ParseError(f"cannot read {src}: {e}") from None


def save(P: PointSet, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(P) + "\n")


def digest(P: PointSet) -> str:
    """Stable content hash of a point set (its canonical serialization)."""
    return hashlib.sha256(dumps(P).encode()).hexdigest()[:16]


def to_jsonable(obj):
    """Convert verdict data (Fractions, tuples, enums, point sets) into
    plain JSON values."""
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, PointSet):
        return pointset_to_doc(obj)["points"]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(x) for x in items]
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj
