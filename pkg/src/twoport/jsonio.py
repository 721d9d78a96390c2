"""JSON documents for networks, solutions, polygons, tilings and move logs.

Every number is written in the exact text form of :mod:`twoport.scalars`.
"""
from __future__ import annotations

import json
from typing import Any

from .network import Network, NetworkError, TwoPortNetwork
from .scalars import FieldMismatchError, Scalar, ScalarParseError, get_field, parse_scalar, set_field
from .solver import Solution
from .tiling.geometry import GeometryError, OrthoPolygon, Rect, Tiling
from .transforms import Move


class SchemaError(ValueError):
    """A document does not match its schema; the message names the offending field."""


def _scalar(value, path: str) -> Scalar:
    if isinstance(value, bool) or isinstance(value, float):
        raise SchemaError(f"{path}: expected an exact number as a string or integer, got {value!r}")
    try:
        if isinstance(value, int):
            return Scalar(value)
        if isinstance(value, str):
            return parse_scalar(value)
    except (ScalarParseError, FieldMismatchError) as exc:
        raise SchemaError(f"{path}: {exc}") from exc
    raise SchemaError(f"{path}: expected a number, got {type(value).__name__}")


def _int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{path}: expected an integer, got {value!r}")
    return value


def apply_field(doc: dict, path: str = "d", *, current: int | None = None) -> int:
    """Activate the document's field; a second document with a different d is an error."""
    d = doc.get("d", 2 if current is None else current)
    d = _int(d, path)
    if current is not None and d != current:
        raise SchemaError(f"{path}: field d={d} differs from d={current} used by another input")
    try:
        set_field(d)
    except ValueError as exc:
        raise SchemaError(f"{path}: {exc}") from exc
    return d


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def load_file(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), path)


def _flat(x) -> bool:
    items = x.values() if isinstance(x, dict) else x
    return not any(isinstance(v, (list, dict)) for v in items)


def _encode(x, indent: int) -> str:
    if not isinstance(x, (list, dict)) or not x or _flat(x):
        return json.dumps(x, separators=(", ", ": "))
    pad = " " * (indent + 2)
    if isinstance(x, dict):
        body = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent + 2)}" for k, v in x.items()]
        return "{\n" + ",\n".join(body) + "\n" + " " * indent + "}"
    body = [pad + _encode(v, indent + 2) for v in x]
    return "[\n" + ",\n".join(body) + "\n" + " " * indent + "]"


def dumps(doc: Any) -> str:
    """Indented JSON with lists and objects of plain values kept on one line."""
    return _encode(doc, 0) + "\n"


# -- networks -------------------------------------------------------------------------

def network_from_json(doc: dict, *, two_port: bool | None = None) -> Network:
    if not isinstance(doc, dict):
        raise SchemaError("network: expected a JSON object")
    n = _int(doc.get("n"), "n")
    terms = doc.get("terminals")
    if not isinstance(terms, list):
        raise SchemaError("terminals: expected a list")
    t = len(terms)
    if [(_int(x, f"terminals[{i}]")) for i, x in enumerate(terms)] != list(range(1, t + 1)):
        raise SchemaError("terminals: must be [1, 2, ..., t] in counterclockwise order")
    raw = doc.get("edges")
    if not isinstance(raw, list):
        raise SchemaError("edges: expected a list")
    edges = []
    for i, e in enumerate(raw):
        if not isinstance(e, dict):
            raise SchemaError(f"edges[{i}]: expected an object with u, v, R")
        edges.append((_int(e.get("u"), f"edges[{i}].u"), _int(e.get("v"), f"edges[{i}].v"),
                      _scalar(e.get("R"), f"edges[{i}].R")))
    rot = doc.get("rotation")
    if rot is not None:
        if not isinstance(rot, dict):
            raise SchemaError("rotation: expected an object mapping vertices to neighbour lists")
        try:
            rot = {int(k): [_int(w, f"rotation.{k}[{j}]") for j, w in enumerate(v)] for k, v in rot.items()}
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"rotation: {exc}") from exc
    by = "neighbor"
    if rot is None and doc.get("rotation_edges") is not None:
        # edge-id rotation, used for multigraphs where neighbour lists are ambiguous
        re_ = doc["rotation_edges"]
        if not isinstance(re_, dict):
            raise SchemaError("rotation_edges: expected an object")
        rot = {int(k): [_int(w, f"rotation_edges.{k}[{j}]") for j, w in enumerate(v)] for k, v in re_.items()}
        by = "edge"
    keep = bool(doc.get("keep_parallel", False))
    two_port = (t == 4) if two_port is None else two_port
    try:
        if two_port:
            if t != 4:
                raise SchemaError("terminals: a two-port network needs exactly 4 terminals")
            return TwoPortNetwork(n, edges, rot, rotation_by=by, merge_parallel=not keep)
        return Network(n, t, edges, rot, rotation_by=by, merge_parallel=not keep)
    except NetworkError as exc:
        raise SchemaError(str(exc)) from exc


def network_to_json(net: Network) -> dict:
    doc = {
        "d": get_field(),
        "n": net.n,
        "terminals": list(net.terminals),
        "edges": [{"u": e.u, "v": e.v, "R": str(e.R)} for e in net.edges],
    }
    if not net.is_simple():
        doc["keep_parallel"] = True
    if net.rotation is not None:
        if net.is_simple():
            doc["rotation"] = {str(v): nb for v, nb in net.neighbor_rotation().items()}
        else:
            doc["rotation_edges"] = {str(v): list(seq) for v, seq in sorted(net.rotation.items())}
    return doc


def solution_to_json(sol: Solution) -> dict:
    net = sol.network
    return {
        "d": get_field(),
        "U": {str(v): str(sol.U[v]) for v in sorted(sol.U)},
        "I": [{"u": e.u, "v": e.v, "value": str(I)} for e, I in zip(net.edges, sol.edge_currents)],
        "incoming": [str(x) for x in sol.incoming],
    }


# -- geometry ---------------------------------------------------------------------------

def polygon_from_json(doc, path: str = "vertices") -> OrthoPolygon:
    verts = doc.get("vertices") if isinstance(doc, dict) else doc
    if not isinstance(verts, list):
        raise SchemaError(f"{path}: expected a list of [x, y] pairs")
    pts = []
    for i, p in enumerate(verts):
        if not isinstance(p, list) or len(p) != 2:
            raise SchemaError(f"{path}[{i}]: expected [x, y]")
        pts.append((_scalar(p[0], f"{path}[{i}][0]"), _scalar(p[1], f"{path}[{i}][1]")))
    try:
        return OrthoPolygon(pts)
    except GeometryError as exc:
        raise SchemaError(f"{path}: {exc}") from exc


def polygon_to_json(poly: OrthoPolygon) -> dict:
    return {"d": get_field(), "vertices": [[str(x), str(y)] for x, y in poly.vertices]}


def tiling_from_json(doc: dict) -> tuple[Tiling, OrthoPolygon | None]:
    if not isinstance(doc, dict):
        raise SchemaError("tiling: expected a JSON object")
    rects = doc.get("rects")
    if not isinstance(rects, list):
        raise SchemaError("rects: expected a list")
    out = []
    for i, r in enumerate(rects):
        if not isinstance(r, dict):
            raise SchemaError(f"rects[{i}]: expected an object with x0, x1, y0, y1")
        vals = [_scalar(r.get(k), f"rects[{i}].{k}") for k in ("x0", "x1", "y0", "y1")]
        try:
            out.append(Rect.make(*vals))
        except GeometryError as exc:
            raise SchemaError(f"rects[{i}]: {exc}") from exc
    poly = None
    if doc.get("polygon") is not None:
        poly = polygon_from_json(doc["polygon"], "polygon.vertices")
    return Tiling(out), poly


def tiling_to_json(tiling: Tiling, poly: OrthoPolygon | None = None) -> dict:
    doc = {
        "d": get_field(),
        "rects": [{"x0": str(r.x0), "x1": str(r.x1), "y0": str(r.y0), "y1": str(r.y1)} for r in tiling],
    }
    if poly is not None:
        doc["polygon"] = {"vertices": [[str(x), str(y)] for x, y in poly.vertices]}
    return doc


# -- moves ----------------------------------------------------------------------------------

def move_from_json(doc: dict, path: str = "move") -> Move:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SchemaError(f"{path}: expected an object with kind and at")
    at = doc.get("at", [])
    if not isinstance(at, list):
        raise SchemaError(f"{path}.at: expected a list of integers")
    rs = tuple(_scalar(r, f"{path}.resistances[{i}]") for i, r in enumerate(doc.get("resistances", [])))
    return Move(str(doc["kind"]), tuple(_int(a, f"{path}.at") for a in at), rs, str(doc.get("note", "")))


def moves_from_json(items) -> list[Move]:
    if not isinstance(items, list):
        raise SchemaError("moves: expected a list")
    return [move_from_json(m, f"moves[{i}]") for i, m in enumerate(items)]
