"""JSON formats.  Every rational is written as the exact string ``"p/q"`` (or ``"p"``)."""

from __future__ import annotations

import dataclasses
import hashlib
import json
from fractions import Fraction

from .exact import DimensionError, Q, qstr
from .polytope import MAX_DIM, HalfSpace, HRep, Polytope, Simplex


class InputError(ValueError):
    pass


def jsonable(obj):
    """Recursively convert exact values and result objects into JSON-ready data."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return qstr(obj)
    if isinstance(obj, HalfSpace):
        return {"a": [qstr(x) for x in obj.normal], "b": qstr(obj.offset)}
    if isinstance(obj, (Polytope, Simplex)):
        return body_to_json(obj)
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    if dataclasses.is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, tuple) and hasattr(obj, "_asdict"):
        return {k: jsonable(v) for k, v in obj._asdict().items()}
    if isinstance(obj, dict):
        return {str(jsonable(k)) if not isinstance(k, str) else k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, float):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def body_to_json(body) -> dict:
    if isinstance(body, Simplex):
        body = body.polytope
    if isinstance(body, HRep):
        return {"dim": body.dim, "hrep": [jsonable(h) for h in body.halfspaces]}
    return {"dim": body.dim, "vrep": [[qstr(x) for x in v] for v in body.vertices]}


def _rational(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError(f"rationals must be ints or 'p/q' strings, got {x!r}")
    try:
        return Q(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {x!r}") from exc


def parse_point(data, dim=None) -> tuple:
    if isinstance(data, str):
        data = data.split(",")
    if not isinstance(data, list):
        raise InputError(f"point must be a list, got {data!r}")
    p = tuple(_rational(x.strip() if isinstance(x, str) else x) for x in data)
    if dim is not None and len(p) != dim:
        raise InputError(f"point has {len(p)} coordinates, expected {dim}")
    return p


def body_from_json(data) -> Polytope:
    """Load ``{"dim": n, "vrep": [...]}`` or ``{"dim": n, "hrep": [{"a": [...], "b": ...}]}``.

    A V-rep is reduced to its extreme points.  Bodies must be bounded and
    full-dimensional with ``dim <= 4``.
    """
    if not isinstance(data, dict) or "dim" not in data:
        raise InputError("body JSON needs a 'dim' field")
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InputError(f"bad dimension {dim!r}")
    if dim > MAX_DIM:
        raise InputError(f"dimension {dim} exceeds {MAX_DIM}")
    from .polytope import GeometryError

    try:
        if "vrep" in data:
            pts = [parse_point(p, dim) for p in data["vrep"]]
            if not pts:
                raise InputError("empty vertex list")
            body = Polytope.hull(pts, dim)
        elif "hrep" in data:
            hs = []
            for h in data["hrep"]:
                if not isinstance(h, dict) or "a" not in h or "b" not in h:
                    raise InputError(f"halfspace must be {{'a': [...], 'b': ...}}, got {h!r}")
                hs.append(HalfSpace(parse_point(h["a"], dim), _rational(h["b"])))
            body = HRep(dim, hs).to_polytope()
        else:
            raise InputError("body JSON needs 'vrep' or 'hrep'")
    except (GeometryError, DimensionError) as exc:
        raise InputError(str(exc)) from exc
    if not body.is_full:
        raise InputError("body is not full-dimensional")
    return body


def load_body(path) -> Polytope:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON in {path}: {exc}") from exc
    return body_from_json(data)


def digest(data) -> str:
    blob = json.dumps(data, sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(blob).hexdigest()
