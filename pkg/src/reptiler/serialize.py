"""Exact JSON encoding of numbers, polygons, regions and tilings.

Rationals are strings ``"p/q"`` (``"p"`` when q = 1); quadratic-field numbers
are objects ``{"x": ..., "y": ..., "m": m}`` whose coefficients use the same
encoding recursively.  Nothing is ever written as a decimal.
"""
from __future__ import annotations

import json
from pathlib import Path

from .exactfield import QF, parse_num, rat
from .geom import Face, Isometry, Point, Polygon, Region, Rotor
from .tileengine import Placement, Tiling

__all__ = [
    "encode_num",
    "decode_num",
    "polygon_to_json",
    "polygon_from_json",
    "region_to_json",
    "region_from_json",
    "tiling_to_json",
    "tiling_from_json",
    "dumps_tiling",
    "loads_tiling",
    "save_tiling",
    "load_tiling",
]


def encode_num(u):
    if isinstance(u, QF):
        out = {"x": encode_num(u.x), "y": encode_num(u.y), "m": int(u.m)}
        if u.base:
            # tower fields: coefficients may be rational yet belong to Q(sqrt base)
            out["base"] = list(u.base)
        return out
    r = rat(u)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def decode_num(obj):
    """Inverse of :func:`encode_num`; a QF's coefficients are read in its base field."""
    if isinstance(obj, dict):
        base = tuple(int(m) for m in obj.get("base", ()))
        return QF(decode_num(obj["x"]), decode_num(obj["y"]), int(obj["m"]), base)
    if isinstance(obj, bool) or not isinstance(obj, (str, int)):
        raise ValueError(f"not an exact number: {obj!r}")
    text = str(obj).strip().replace("−", "-")
    if "sqrt" in text or "√" in text:
        raise ValueError(f"rationals are encoded as 'p/q', got {obj!r}")
    return rat(parse_num(text))


def _pt_json(p):
    return [encode_num(p[0]), encode_num(p[1])]


def _pt_from(obj) -> Point:
    return Point(decode_num(obj[0]), decode_num(obj[1]))


def polygon_to_json(p: Polygon) -> dict:
    return {"vertices": [_pt_json(v) for v in p.vertices]}


def polygon_from_json(obj) -> Polygon:
    return Polygon(tuple(_pt_from(v) for v in obj["vertices"]))


def region_to_json(r: Region) -> dict:
    return {
        "faces": [
            {"outer": polygon_to_json(f.outer), "holes": [polygon_to_json(h) for h in f.holes]}
            for f in r.faces
        ]
    }


def region_from_json(obj) -> Region:
    faces = []
    for f in obj["faces"]:
        holes = tuple(polygon_from_json(h) for h in f.get("holes", []))
        faces.append(Face(polygon_from_json(f["outer"]), holes))
    return Region(tuple(faces))


def tiling_to_json(t: Tiling) -> dict:
    return {
        "prototile": polygon_to_json(t.prototile),
        "region": region_to_json(t.region),
        "placements": [
            {
                "reflect": bool(p.iso.reflect),
                "cos": encode_num(p.iso.rot.c),
                "sin": encode_num(p.iso.rot.s),
                "tx": encode_num(p.iso.translate.x),
                "ty": encode_num(p.iso.translate.y),
            }
            for p in t.placements
        ],
    }


def tiling_from_json(obj) -> Tiling:
    """Rebuild a tiling; each placed polygon is recomputed from its isometry."""
    from .geom import apply_isometry

    proto = polygon_from_json(obj["prototile"])
    region = region_from_json(obj["region"])
    pls = []
    for p in obj["placements"]:
        iso = Isometry(
            Rotor(decode_num(p["cos"]), decode_num(p["sin"])),
            Point(decode_num(p["tx"]), decode_num(p["ty"])),
            bool(p["reflect"]),
        )
        pls.append(Placement(iso, apply_isometry(iso, proto)))
    return Tiling(proto, region, tuple(pls))


def dumps_tiling(t: Tiling) -> str:
    return json.dumps(tiling_to_json(t), indent=1, sort_keys=True) + "\n"


def loads_tiling(text: str) -> Tiling:
    return tiling_from_json(json.loads(text))


def save_tiling(t: Tiling, path) -> None:
    Path(path).write_text(dumps_tiling(t))


def load_tiling(path) -> Tiling:
    return loads_tiling(Path(path).read_text())
