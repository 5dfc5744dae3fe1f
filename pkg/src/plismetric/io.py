"""JSON body records and small text serializers used by the command line."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .bodies import Ball, ConvexBody, LinearImage, MinkowskiSum, Polytope, Translate
from .strongconv import Arc2D, ArcBody2D, MalformedArcBody


class MalformedBody(ValueError):
    pass


def _array(value, name: str, ndim: int) -> np.ndarray:
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise MalformedBody(f"{name}: not numeric") from exc
    if arr.ndim != ndim or arr.size == 0 or not np.all(np.isfinite(arr)):
        raise MalformedBody(f"{name}: expected a finite {ndim}-d array")
    return arr


def body_from_dict(rec) -> ConvexBody:
    if not isinstance(rec, dict) or "type" not in rec:
        raise MalformedBody("body record must be an object with a 'type' field")
    kind = rec["type"]
    try:
        if kind == "polytope":
            return Polytope(_array(rec["vertices"], "vertices", 2))
        if kind == "ball":
            return Ball(_array(rec["center"], "center", 1), float(rec["radius"]))
        if kind == "linimage":
            return LinearImage(_array(rec["matrix"], "matrix", 2), body_from_dict(rec["inner"]))
        if kind == "minksum":
            return MinkowskiSum(body_from_dict(rec["left"]), body_from_dict(rec["right"]))
        if kind == "translate":
            return Translate(body_from_dict(rec["inner"]), _array(rec["offset"], "offset", 1))
        if kind == "arcbody":
            R = float(rec["radius"])
            arcs = [Arc2D(_array(a["center"], "center", 1), float(a.get("r", R)),
                          float(a["from"]), float(a["to"])) for a in rec["arcs"]]
            return ArcBody2D(arcs, R)
    except KeyError as exc:
        raise MalformedBody(f"{kind}: missing field {exc}") from exc
    except MalformedArcBody as exc:
        raise MalformedBody(str(exc)) from exc
    except (TypeError, AttributeError) as exc:
        raise MalformedBody(f"{kind}: {exc}") from exc
    raise MalformedBody(f"unknown body type {kind!r}")


def body_to_dict(body: ConvexBody) -> dict:
    if isinstance(body, Polytope):
        return {"type": "polytope", "vertices": body.vertices.tolist()}
    if isinstance(body, Ball):
        return {"type": "ball", "center": body.center.tolist(), "radius": body.radius}
    if isinstance(body, LinearImage):
        return {"type": "linimage", "matrix": body.matrix.tolist(), "inner": body_to_dict(body.inner)}
    if isinstance(body, MinkowskiSum):
        return {"type": "minksum", "left": body_to_dict(body.left), "right": body_to_dict(body.right)}
    if isinstance(body, Translate):
        return {"type": "translate", "inner": body_to_dict(body.inner), "offset": body.offset.tolist()}
    if isinstance(body, ArcBody2D):
        arcs = []
        for a in body.arcs:
            rec = {"center": np.asarray(a.center).tolist(), "from": a.angle_start, "to": a.angle_end}
            if a.radius != body.radius:
                rec["r"] = a.radius
            arcs.append(rec)
        return {"type": "arcbody", "radius": body.radius, "arcs": arcs}
    raise TypeError(f"cannot serialize {type(body).__name__}")


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedBody(f"{path}: {exc}") from exc


def load_body(path) -> ConvexBody:
    return body_from_dict(_read_json(path))


def load_points(path):
    """Point list for hulls: a bare array, or {"points": [...], "radii": [...]}."""
    rec = _read_json(path)
    radii = None
    if isinstance(rec, dict):
        if rec.get("type") == "polytope":
            rec = {"points": rec.get("vertices")}
        if "points" not in rec:
            raise MalformedBody("point file needs a 'points' field")
        radii = rec.get("radii")
        rec = rec["points"]
    pts = _array(rec, "points", 2)
    if pts.shape[1] != 2:
        raise MalformedBody("points must be planar")
    if radii is not None:
        radii = _array(radii, "radii", 1)
        if len(radii) != len(pts):
            raise MalformedBody("radii and points differ in length")
    return pts, radii


def dump_body(body: ConvexBody) -> str:
    return json.dumps(body_to_dict(body), indent=1) + "\n"
