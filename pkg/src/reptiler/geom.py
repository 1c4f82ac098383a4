"""Exact plane geometry over rationals and quadratic fields.

Everything here works on whatever number type the coordinates carry
(``mpq`` or :class:`~reptiler.exactfield.QF`); no floating point is used
except for display.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import NamedTuple, Optional, Sequence

from .exactfield import qf_sign, qf_sqrt, rat

__all__ = [
    "Point",
    "Rotor",
    "Isometry",
    "Polygon",
    "Face",
    "Region",
    "Relation",
    "SegmentRelation",
    "Location",
    "ContainmentViolation",
    "NormalizationError",
    "IDENTITY_ROTOR",
    "IDENTITY",
    "rotor_compose",
    "rotor_invert",
    "rotor_between",
    "apply_isometry",
    "compose_isometries",
    "invert_isometry",
    "rotation_about",
    "segment_relation",
    "polygon_area",
    "signed_area",
    "point_location",
    "region_location",
    "region_area",
    "region_difference",
    "congruence",
    "polygon",
    "rectangle",
    "square",
    "region_of",
    "compare_angles",
]


class NormalizationError(ValueError):
    """A vector length needed for an exact rotation is not in the field."""


class ContainmentViolation(ValueError):
    """The polygon being subtracted is not contained in the region."""


class Point(NamedTuple):
    x: object
    y: object

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def scale(self, k):
        return Point(self.x * k, self.y * k)

    def __repr__(self):
        return f"Point({self.x}, {self.y})"


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def orient(a, b, c) -> int:
    """Sign of the turn a -> b -> c (+1 left, -1 right, 0 collinear)."""
    return qf_sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def _half(v) -> int:
    sy = qf_sign(v[1])
    return 0 if sy > 0 or (sy == 0 and qf_sign(v[0]) > 0) else 1


def compare_angles(u, v) -> int:
    """Compare the CCW angles of nonzero vectors ``u`` and ``v`` from the +x axis."""
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    return -qf_sign(cross(u, v))


# -- rotors and isometries ---------------------------------------------------

class Rotor(NamedTuple):
    """Exact rotation given by its cosine and sine (``c**2 + s**2 == 1``)."""

    c: object
    s: object

    def apply(self, p):
        return Point(self.c * p[0] - self.s * p[1], self.s * p[0] + self.c * p[1])

    def __repr__(self):
        return f"Rotor({self.c}, {self.s})"


IDENTITY_ROTOR = Rotor(rat(1), rat(0))


def rotor_compose(r1: Rotor, r2: Rotor) -> Rotor:
    """Rotor for the sum of the two angles."""
    return Rotor(r1.c * r2.c - r1.s * r2.s, r1.s * r2.c + r1.c * r2.s)


def rotor_invert(r: Rotor) -> Rotor:
    return Rotor(r.c, -r.s)


def rotor_between(u, v) -> Rotor:
    """The rotor turning the direction of ``u`` onto the direction of ``v``."""
    nn = dot(u, u) * dot(v, v)
    n = qf_sqrt(nn)
    if n is None:
        raise NormalizationError(f"|u||v| = sqrt({nn}) is not in the field")
    return Rotor(dot(u, v) / n, cross(u, v) / n)


@dataclass(frozen=True)
class Isometry:
    """``p -> rot(F(p)) + translate`` where F reflects across the x-axis if ``reflect``."""

    rot: Rotor = IDENTITY_ROTOR
    translate: Point = Point(rat(0), rat(0))
    reflect: bool = False

    def __call__(self, p) -> Point:
        if self.reflect:
            p = (p[0], -p[1])
        return self.rot.apply(p) + self.translate


IDENTITY = Isometry()


def compose_isometries(g2: Isometry, g1: Isometry) -> Isometry:
    """The isometry ``g2 o g1``."""
    r1 = rotor_invert(g1.rot) if g2.reflect else g1.rot
    t1 = g1.translate
    if g2.reflect:
        t1 = Point(t1.x, -t1.y)
    return Isometry(
        rotor_compose(g2.rot, r1),
        g2.rot.apply(t1) + g2.translate,
        g1.reflect != g2.reflect,
    )


def invert_isometry(g: Isometry) -> Isometry:
    rot = g.rot if g.reflect else rotor_invert(g.rot)
    lin = Isometry(rot, Point(rat(0), rat(0)), g.reflect)
    t = lin(g.translate)
    return Isometry(rot, Point(-t.x, -t.y), g.reflect)


def rotation_about(center, r: Rotor) -> Isometry:
    c = Point(*center)
    return Isometry(r, c - r.apply(c), False)


# -- polygons and regions ----------------------------------------------------

@dataclass(frozen=True)
class Polygon:
    """Simple CCW polygon with no three consecutive collinear vertices."""

    vertices: tuple

    def __post_init__(self):
        vs = tuple(Point(*v) for v in self.vertices)
        if len(vs) < 3:
            raise ValueError("a polygon needs at least 3 vertices")
        object.__setattr__(self, "vertices", vs)

    def __len__(self):
        return len(self.vertices)

    def edges(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def bbox(self):
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)


@dataclass(frozen=True)
class Face:
    outer: Polygon
    holes: tuple = ()

    def loops(self):
        return (self.outer,) + tuple(self.holes)


@dataclass(frozen=True)
class Region:
    faces: tuple = field(default_factory=tuple)

    def is_empty(self) -> bool:
        return not self.faces

    def loops(self):
        return [loop for f in self.faces for loop in f.loops()]

    def edges(self):
        return [e for loop in self.loops() for e in loop.edges()]

    def vertices(self):
        return [v for loop in self.loops() for v in loop.vertices]


def _num(v):
    return rat(v) if isinstance(v, (int, str, Fraction)) else v


def _pt(p) -> Point:
    return Point(_num(p[0]), _num(p[1]))


def polygon(*pts, orient_ccw: bool = True) -> Polygon:
    """Polygon from coordinate pairs; reorders to CCW unless told not to."""
    vs = [Point(_num(x), _num(y)) for x, y in pts]
    if orient_ccw and qf_sign(signed_area(vs)) < 0:
        vs.reverse()
    return Polygon(tuple(vs))


def rectangle(w, h, origin=(0, 0)) -> Polygon:
    x0, y0 = _num(origin[0]), _num(origin[1])
    return Polygon((Point(x0, y0), Point(x0 + w, y0), Point(x0 + w, y0 + h), Point(x0, y0 + h)))


def square(side, origin=(0, 0)) -> Polygon:
    return rectangle(side, side, origin)


def region_of(*polys: Polygon) -> Region:
    """Region whose faces are the given interior-disjoint CCW polygons."""
    return Region(tuple(Face(p) for p in polys))


def signed_area(vertices: Sequence) -> object:
    n = len(vertices)
    s = rat(0)
    for i in range(n):
        s = s + cross(vertices[i], vertices[(i + 1) % n])
    return s / 2


def polygon_area(p: Polygon):
    """Exact (positive) shoelace area."""
    a = signed_area(p.vertices)
    return -a if qf_sign(a) < 0 else a


def region_area(r: Region):
    total = rat(0)
    for f in r.faces:
        total = total + polygon_area(f.outer)
        for h in f.holes:
            total = total - polygon_area(h)
    return total


def apply_isometry(g: Isometry, p: Polygon) -> Polygon:
    """Image of ``p``; a reflecting ``g`` reverses vertex order to stay CCW."""
    image = [g(v) for v in p.vertices]
    if g.reflect:
        image.reverse()
    return Polygon(tuple(image))


# -- segments ----------------------------------------------------------------

class Relation(enum.Enum):
    DISJOINT = "DISJOINT"
    TOUCH_POINT = "TOUCH_POINT"
    OVERLAP = "OVERLAP"
    CROSS = "CROSS"


@dataclass(frozen=True)
class SegmentRelation:
    kind: Relation
    point: Optional[Point] = None
    segment: Optional[tuple] = None


_DISJOINT = SegmentRelation(Relation.DISJOINT)


def _on_segment(p, a, b) -> bool:
    """``p`` on closed segment ab, given that the three are collinear."""
    return qf_sign(dot(p - a, p - b)) <= 0


def segment_relation(s1, s2) -> SegmentRelation:
    """Classify how two nondegenerate closed segments meet."""
    p1, q1 = _pt(s1[0]), _pt(s1[1])
    p2, q2 = _pt(s2[0]), _pt(s2[1])
    d1, d2 = q1 - p1, q2 - p2
    o1, o2 = orient(p1, q1, p2), orient(p1, q1, q2)
    if qf_sign(cross(d1, d2)) == 0:
        if o1 != 0:
            return _DISJOINT
        # collinear: intersect parameter intervals along d1
        t2, t3 = dot(p2 - p1, d1), dot(q2 - p1, d1)
        lo2, hi2 = (p2, t2), (q2, t3)
        if qf_sign(t3 - t2) < 0:
            lo2, hi2 = hi2, lo2
        lo = lo2 if qf_sign(lo2[1]) > 0 else (p1, 0)
        t1 = dot(d1, d1)
        hi = hi2 if qf_sign(hi2[1] - t1) < 0 else (q1, t1)
        c = qf_sign(hi[1] - lo[1])
        if c < 0:
            return _DISJOINT
        if c == 0:
            return SegmentRelation(Relation.TOUCH_POINT, point=lo[0])
        return SegmentRelation(Relation.OVERLAP, segment=(lo[0], hi[0]))
    if o1 * o2 > 0:
        return _DISJOINT
    o3, o4 = orient(p2, q2, p1), orient(p2, q2, q1)
    if o3 * o4 > 0:
        return _DISJOINT
    if o1 == 0:
        return SegmentRelation(Relation.TOUCH_POINT, point=p2)
    if o2 == 0:
        return SegmentRelation(Relation.TOUCH_POINT, point=q2)
    if o3 == 0:
        return SegmentRelation(Relation.TOUCH_POINT, point=p1)
    if o4 == 0:
        return SegmentRelation(Relation.TOUCH_POINT, point=q1)
    t = cross(p2 - p1, d2) / cross(d1, d2)
    return SegmentRelation(Relation.CROSS, point=p1 + d1.scale(t))


# -- point location ----------------------------------------------------------

class Location(enum.Enum):
    INSIDE = "INSIDE"
    BOUNDARY = "BOUNDARY"
    OUTSIDE = "OUTSIDE"


def point_location(p, poly: Polygon) -> Location:
    """Even-odd ray casting toward +x; boundary hits take precedence."""
    p = _pt(p)
    inside = False
    vs = poly.vertices
    n = len(vs)
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        o = orient(a, b, p)
        if o == 0 and _on_segment(p, a, b):
            return Location.BOUNDARY
        ay, by = qf_sign(a.y - p.y) > 0, qf_sign(b.y - p.y) > 0
        if ay != by:
            # crossing lies right of p iff p is on the left of the upward edge
            if (o > 0) == (qf_sign(b.y - a.y) > 0):
                inside = not inside
    return Location.INSIDE if inside else Location.OUTSIDE


def region_location(p, r: Region) -> Location:
    for f in r.faces:
        loc = point_location(p, f.outer)
        if loc is Location.OUTSIDE:
            continue
        if loc is Location.BOUNDARY:
            return loc
        for h in f.holes:
            hl = point_location(p, h)
            if hl is Location.BOUNDARY:
                return hl
            if hl is Location.INSIDE:
                break
        else:
            return Location.INSIDE
    return Location.OUTSIDE


# -- boolean difference ------------------------------------------------------

def _seg_key(a, b):
    return (a, b) if a < b else (b, a)


def _split_edges(edges: list) -> dict:
    """Split every edge at all vertices/crossings of every other edge.

    Returns ``{(U, V): [(owner, same_direction), ...]}`` over the undirected
    pieces of the arrangement.
    """
    cuts = [set(e[1]) for e in edges]
    for i in range(len(edges)):
        ai, bi = edges[i][1]
        for j in range(i + 1, len(edges)):
            aj, bj = edges[j][1]
            rel = segment_relation((ai, bi), (aj, bj))
            if rel.kind is Relation.DISJOINT:
                continue
            pts = rel.segment if rel.kind is Relation.OVERLAP else (rel.point,)
            cuts[i].update(pts)
            cuts[j].update(pts)
    pieces: dict = {}
    for (owner, (a, b)), pts in zip(edges, cuts):
        d = b - a
        ordered = sorted(pts, key=cmp_to_key(lambda u, v: qf_sign(dot(u - v, d))))
        for u, v in zip(ordered, ordered[1:]):
            key = _seg_key(u, v)
            pieces.setdefault(key, []).append((owner, key[0] == u))
    return pieces


def _trace_cycles(directed: list) -> list:
    """Walk kept directed edges into closed loops, keeping the region on the left."""
    out: dict = {}
    for a, b in directed:
        out.setdefault(a, []).append(b)
    used = set()
    cycles = []
    for start in directed:
        if start in used:
            continue
        cyc = []
        a, b = start
        while True:
            used.add((a, b))
            cyc.append(a)
            back = a - b
            # next edge: the outgoing edge reached first when turning clockwise from `back`
            cands = out.get(b)
            if not cands:
                raise RuntimeError("open boundary while tracing region")
            best = cands[0]
            for c in cands[1:]:
                if _ccw_from(back, c - b, best - b) > 0:
                    best = c
            if (b, best) == start:
                break
            if (b, best) in used:
                raise RuntimeError("inconsistent boundary while tracing region")
            a, b = b, best
        cycles.append(cyc)
    return cycles


def _ccw_from(ref, u, v) -> int:
    """+1 if ``u`` makes a larger CCW angle from ``ref`` than ``v`` does."""
    ru = Point(dot(ref, u), cross(ref, u))
    rv = Point(dot(ref, v), cross(ref, v))
    # angle 0 (pointing back along ref) counts as the full turn
    zu = qf_sign(ru.y) == 0 and qf_sign(ru.x) > 0
    zv = qf_sign(rv.y) == 0 and qf_sign(rv.x) > 0
    if zu or zv:
        return (1 if zu else 0) - (1 if zv else 0)
    return compare_angles(ru, rv)


def _simplify(cycle: list) -> list:
    """Drop vertices where the boundary continues straight on."""
    vs = list(cycle)
    changed = True
    while changed and len(vs) >= 3:
        changed = False
        for i in range(len(vs)):
            a, b, c = vs[i - 1], vs[i], vs[(i + 1) % len(vs)]
            if orient(a, b, c) == 0 and qf_sign(dot(b - a, c - b)) > 0:
                del vs[i]
                changed = True
                break
    return vs


def _assemble(cycles: list) -> Region:
    outers, holes = [], []
    for cyc in cycles:
        vs = _simplify(cyc)
        if len(vs) < 3:
            continue
        a = signed_area(vs)
        (outers if qf_sign(a) > 0 else holes).append(vs)
    outer_polys = [Polygon(tuple(v)) for v in outers]
    owned: list = [[] for _ in outer_polys]
    for h in holes:
        hp = Polygon(tuple(h))
        best = None
        for idx, op in enumerate(outer_polys):
            if any(point_location(v, op) is Location.INSIDE for v in h):
                if best is None or qf_sign(polygon_area(op) - polygon_area(outer_polys[best])) < 0:
                    best = idx
        if best is None:
            raise RuntimeError("hole without enclosing boundary")
        owned[best].append(hp)
    faces = [Face(op, tuple(hs)) for op, hs in zip(outer_polys, owned)]
    faces.sort(key=lambda f: min(f.outer.vertices))
    return Region(tuple(faces))


def region_difference(r: Region, p: Polygon) -> Region:
    """Exact ``r \\ p`` for a polygon ``p`` contained in ``r`` (boundary contact allowed).

    Raises :class:`ContainmentViolation` if any part of ``p`` lies outside ``r``.
    """
    edges = [("r", e) for e in r.edges()] + [("p", e) for e in p.edges()]
    pieces = _split_edges(edges)
    kept = []
    for (u, v), owners in pieces.items():
        sides = {}
        for who, shape in (("r", r), ("p", p)):
            mine = [same for o, same in owners if o == who]
            if mine:
                left, right = any(mine), not all(mine)
            else:
                mid = Point((u.x + v.x) / 2, (u.y + v.y) / 2)
                if who == "r":
                    inside = region_location(mid, shape) is Location.INSIDE
                else:
                    inside = point_location(mid, shape) is Location.INSIDE
                left = right = inside
            sides[who] = (left, right)
        (rl, rr), (pl, pr) = sides["r"], sides["p"]
        if (pl and not rl) or (pr and not rr):
            raise ContainmentViolation(f"polygon leaves the region near {u}-{v}")
        in_l, in_r = rl and not pl, rr and not pr
        if in_l and not in_r:
            kept.append((u, v))
        elif in_r and not in_l:
            kept.append((v, u))
    if not kept:
        return Region(())
    return _assemble(_trace_cycles(kept))


# -- congruence --------------------------------------------------------------

def congruence(p: Polygon, proto: Polygon, allow_reflection: bool = True) -> Optional[Isometry]:
    """An isometry mapping ``proto`` exactly onto ``p`` (as cyclic sequences), or None."""
    n = len(proto)
    if len(p) != n:
        return None
    target = p.vertices
    for reflect in ((False, True) if allow_reflection else (False,)):
        src = list(proto.vertices)
        if reflect:
            src = [Point(v.x, -v.y) for v in src]
            src.reverse()
        u = src[1] - src[0]
        uu = dot(u, u)
        for k in range(n):
            w = target[(k + 1) % n] - target[k]
            if dot(w, w) != uu:
                continue
            rot = Rotor(dot(u, w) / uu, cross(u, w) / uu)
            t = target[k] - rot.apply(src[0])
            if all(rot.apply(src[i]) + t == target[(k + i) % n] for i in range(n)):
                if reflect:
                    return Isometry(rot, t, True)
                return Isometry(rot, t, False)
    return None
