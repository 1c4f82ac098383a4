"""Exhaustive tiling search, tiling verification and canonical constructions.

The search always works at the canonical corner of the untiled region: its
lexicographically smallest vertex, with the boundary edge leaving it
counterclockwise as the ray.  Because that corner is convex, every tiling
has a tile with a vertex there and a side flush with the ray, so trying all
such placements at each step is complete.
"""
from __future__ import annotations

import enum
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

from .exactfield import field_of, is_rational, qf_sign, qf_sqrt, to_rat
from .geom import (
    ContainmentViolation,
    Isometry,
    Location,
    NormalizationError,
    Point,
    Polygon,
    Region,
    Relation,
    Rotor,
    apply_isometry,
    compare_angles,
    compose_isometries,
    congruence,
    cross,
    dot,
    point_location,
    polygon_area,
    region_area,
    region_difference,
    region_location,
    region_of,
    rotation_about,
    rotor_between,
    segment_relation,
    square,
)
from .quadmodel import QuadSpec

log = logging.getLogger(__name__)

__all__ = [
    "Mode",
    "SearchConfig",
    "Placement",
    "Tiling",
    "SearchResult",
    "VerifyReport",
    "ReptileResult",
    "NodeBudgetExceeded",
    "WrongFamily",
    "ScaleOutOfField",
    "canonical_corner",
    "enumerate_corner_placements",
    "tile_region",
    "verify_tiling",
    "f0_square_tiling",
    "trivial_quadrant_tiling",
    "reptile_search",
    "make_placement",
]


class Mode(enum.Enum):
    FIRST = "first"
    ALL = "all"
    COUNT = "count"


class NodeBudgetExceeded(RuntimeError):
    def __init__(self, nodes: int, partial: Optional["SearchResult"] = None):
        super().__init__(f"search budget of {nodes} nodes exceeded")
        self.nodes = nodes
        self.partial = partial


class WrongFamily(ValueError):
    pass


class ScaleOutOfField(ValueError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    mode: Mode = Mode.ALL
    max_tiles: int = 10_000
    max_nodes: int = 10_000_000
    allow_reflection: bool = True
    workers: int = 1

    def __post_init__(self):
        if self.max_tiles <= 0 or self.max_nodes <= 0:
            raise ValueError("search bounds must be positive")
        env = os.environ.get("REPTILER_MAX_NODES")
        if env:
            object.__setattr__(self, "max_nodes", int(env))


@dataclass(frozen=True)
class Placement:
    iso: Isometry
    polygon: Polygon


def make_placement(iso: Isometry, proto: Polygon) -> Placement:
    return Placement(iso, apply_isometry(iso, proto))


@dataclass(frozen=True)
class Tiling:
    prototile: Polygon
    region: Region
    placements: tuple = ()

    def __len__(self):
        return len(self.placements)


@dataclass
class SearchResult:
    tilings: list = field(default_factory=list)
    count: int = 0
    nodes: int = 0
    exhausted: bool = True


# -- canonical corner --------------------------------------------------------

def canonical_corner(region: Region):
    """``(corner, ray_end, prev)`` at the lexicographically smallest outer vertex.

    The ray runs along the boundary edge leaving the corner with the region
    on its left; ``prev`` is the other neighbour.  Ties between faces meeting
    at the same point go to the ray with the smallest direction angle.
    """
    best = None
    for f in region.faces:
        vs = f.outer.vertices
        n = len(vs)
        for i, v in enumerate(vs):
            cand = (v, vs[(i + 1) % n], vs[i - 1])
            if best is None:
                best = cand
                continue
            if v < best[0] or (v == best[0] and compare_angles(cand[1] - v, best[1] - v) < 0):
                best = cand
    return best


def _oriented_protos(proto: Polygon, allow_reflection: bool):
    yield False, list(proto.vertices)
    if allow_reflection:
        ref = [Point(v.x, -v.y) for v in proto.vertices]
        ref.reverse()
        yield True, ref


def _wedge_fits(u1, w1, u2, w2) -> bool:
    """Is the CCW wedge (u1 -> w1) no wider than the wedge (u2 -> w2)?"""
    a1 = Point(dot(u1, w1), cross(u1, w1))
    a2 = Point(dot(u2, w2), cross(u2, w2))
    return compare_angles(a1, a2) <= 0


def _placement_key(p: Placement):
    return tuple(sorted(p.polygon.vertices))


def _candidate_placements(region: Region, proto: Polygon, allow_reflection: bool):
    corner, ray_end, prev = canonical_corner(region)
    ray = ray_end - corner
    back = prev - corner
    seen = set()
    out = []
    for reflect, vs in _oriented_protos(proto, allow_reflection):
        n = len(vs)
        for i in range(n):
            u = vs[(i + 1) % n] - vs[i]
            w = vs[i - 1] - vs[i]
            if not _wedge_fits(u, w, ray, back):
                continue
            try:
                rot = rotor_between(u, ray)
            except NormalizationError:
                # the rotated tile would leave the coordinate field
                continue
            t = corner - rot.apply(vs[i])
            iso = Isometry(rot, t, reflect)
            poly = apply_isometry(iso, proto)
            key = poly.vertex_set()
            if key in seen:
                continue
            seen.add(key)
            out.append(Placement(iso, poly))
    return out


def enumerate_corner_placements(region: Region, proto: Polygon, cfg: SearchConfig = SearchConfig()) -> list[Placement]:
    """Placements at the canonical corner that fit inside ``region``, in canonical order.

    Each prototile vertex (both mirror images if allowed) is put on the corner
    with its CCW-leading edge along the ray; the other incident-edge choice
    would put the tile on the outer side of the ray and is never inside.
    """
    if region.is_empty():
        return []
    fits = []
    for pl in _candidate_placements(region, proto, cfg.allow_reflection):
        try:
            region_difference(region, pl.polygon)
        except ContainmentViolation:
            continue
        fits.append(pl)
    fits.sort(key=_placement_key)
    return fits


# -- search ------------------------------------------------------------------

def _tile_count(region: Region, proto: Polygon) -> Optional[int]:
    ratio = region_area(region) / polygon_area(proto)
    if not is_rational(ratio):
        return None
    ratio = to_rat(ratio)
    if ratio.denominator != 1 or ratio <= 0:
        return None
    return int(ratio)


class _Search:
    def __init__(self, proto: Polygon, cfg: SearchConfig, node_limit: int):
        self.proto = proto
        self.cfg = cfg
        self.limit = node_limit
        self.nodes = 0
        self.count = 0
        self.tilings: list = []
        self.stop = False

    def run(self, region: Region, placed: list, depth_left: int):
        self.nodes += 1
        if self.nodes > self.limit:
            raise NodeBudgetExceeded(self.limit)
        if region.is_empty():
            self.count += 1
            if self.cfg.mode is not Mode.COUNT:
                self.tilings.append(tuple(placed))
            if self.cfg.mode is Mode.FIRST:
                self.stop = True
            return
        if depth_left == 0:
            return
        cands = _candidate_placements(region, self.proto, self.cfg.allow_reflection)
        nexts = []
        for pl in cands:
            try:
                rest = region_difference(region, pl.polygon)
            except ContainmentViolation:
                continue
            nexts.append((_placement_key(pl), pl, rest))
        nexts.sort(key=lambda t: t[0])
        for _, pl, rest in nexts:
            placed.append(pl)
            self.run(rest, placed, depth_left - 1)
            placed.pop()
            if self.stop:
                return


def _run_branch(args):
    region, proto, cfg, first, limit = args
    s = _Search(proto, cfg, limit)
    s.nodes = 1
    rest = region_difference(region, first.polygon)
    s.run(rest, [first], cfg.max_tiles - 1)
    return s.tilings, s.count, s.nodes


def tile_region(region: Region, proto: Polygon, cfg: SearchConfig = SearchConfig()) -> SearchResult:
    """Enumerate tilings of ``region`` by congruent copies of ``proto`` depth-first.

    Raises :class:`NodeBudgetExceeded` if ``cfg.max_nodes`` search nodes do
    not suffice, which is distinct from an exhausted search with no tiling.
    """
    n = _tile_count(region, proto)
    if n is None:
        return SearchResult()
    depth = min(n, cfg.max_tiles)
    if cfg.workers > 1 and cfg.mode is not Mode.FIRST:
        return _tile_parallel(region, proto, cfg, depth)
    s = _Search(proto, cfg, cfg.max_nodes)
    s.run(region, [], depth)
    tilings = [Tiling(proto, region, pls) for pls in s.tilings]
    log.debug("tile_region: %d tilings, %d nodes", s.count, s.nodes)
    return SearchResult(tilings, s.count, s.nodes, not s.stop)


def _tile_parallel(region, proto, cfg, depth) -> SearchResult:
    firsts = enumerate_corner_placements(region, proto, cfg)
    local = SearchConfig(cfg.mode, depth, cfg.max_nodes, cfg.allow_reflection, 1)
    jobs = [(region, proto, local, pl, cfg.max_nodes) for pl in firsts]
    result = SearchResult(nodes=1)
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        for tilings, count, nodes in pool.map(_run_branch, jobs):
            result.tilings.extend(Tiling(proto, region, pls) for pls in tilings)
            result.count += count
            result.nodes += nodes
    if result.nodes > cfg.max_nodes:
        raise NodeBudgetExceeded(cfg.max_nodes)
    return result


# -- verification ------------------------------------------------------------

@dataclass
class VerifyReport:
    ok: bool
    failures: list = field(default_factory=list)


def _bbox_disjoint(p: Polygon, q: Polygon) -> bool:
    ax0, ay0, ax1, ay1 = p.bbox()
    bx0, by0, bx1, by1 = q.bbox()
    return ax1 < bx0 or bx1 < ax0 or ay1 < by0 or by1 < ay0


def _split_points(a, b, others) -> list:
    d = b - a
    pts = {a, b}
    for v in others:
        if qf_sign(cross(v - a, d)) == 0 and qf_sign(dot(v - a, v - b)) < 0:
            pts.add(v)
    return sorted(pts, key=lambda v: dot(v - a, d))


def _interiors_overlap(p: Polygon, q: Polygon) -> Optional[str]:
    if _bbox_disjoint(p, q):
        return None
    for e in p.edges():
        for f in q.edges():
            rel = segment_relation(e, f)
            if rel.kind is Relation.CROSS:
                return f"edges cross at {rel.point}"
            if rel.kind is Relation.OVERLAP and qf_sign(dot(e[1] - e[0], f[1] - f[0])) > 0:
                return "tiles share an edge with both interiors on the same side"
    for a, b in ((p, q), (q, p)):
        for v in a.vertices:
            if point_location(v, b) is Location.INSIDE:
                return f"vertex {v} lies inside another tile"
        for e in a.edges():
            pts = _split_points(e[0], e[1], b.vertices)
            for u, v in zip(pts, pts[1:]):
                mid = Point((u.x + v.x) / 2, (u.y + v.y) / 2)
                if point_location(mid, b) is Location.INSIDE:
                    return f"edge piece {u}-{v} lies inside another tile"
    return None


def _containment_problem(p: Polygon, region: Region) -> Optional[str]:
    redges = region.edges()
    rverts = region.vertices()
    for v in p.vertices:
        if region_location(v, region) is Location.OUTSIDE:
            return f"vertex {v} outside the region"
    for e in p.edges():
        for f in redges:
            if segment_relation(e, f).kind is Relation.CROSS:
                return "tile edge crosses the region boundary"
        pts = _split_points(e[0], e[1], rverts)
        for u, v in zip(pts, pts[1:]):
            mid = Point((u.x + v.x) / 2, (u.y + v.y) / 2)
            if region_location(mid, region) is Location.OUTSIDE:
                return f"tile edge piece {u}-{v} outside the region"
    for v in rverts:
        if point_location(v, p) is Location.INSIDE:
            return f"region boundary point {v} inside the tile"
    return None


def verify_tiling(t: Tiling, allow_reflection: bool = True) -> VerifyReport:
    """Independent check that ``t`` is an exact tiling of its region."""
    failures = []
    try:
        polys = [pl.polygon for pl in t.placements]
        for i, pl in enumerate(t.placements):
            if congruence(pl.polygon, t.prototile, allow_reflection) is None:
                failures.append(f"tile {i}: not congruent to the prototile")
            if apply_isometry(pl.iso, t.prototile).vertex_set() != pl.polygon.vertex_set():
                failures.append(f"tile {i}: polygon does not match its isometry")
            why = _containment_problem(pl.polygon, t.region)
            if why:
                failures.append(f"tile {i}: {why}")
        for i in range(len(polys)):
            for j in range(i + 1, len(polys)):
                why = _interiors_overlap(polys[i], polys[j])
                if why:
                    failures.append(f"tiles {i},{j} overlap: {why}")
        total = sum((polygon_area(p) for p in polys), 0)
        if total != region_area(t.region):
            failures.append(f"area mismatch: tiles {total} vs region {region_area(t.region)}")
    except Exception as exc:  # garbage input must yield a report, not a crash
        failures.append(f"malformed tiling: {exc!r}")
    return VerifyReport(not failures, failures)


# -- constructions -----------------------------------------------------------

def _is_family3(q: QuadSpec) -> bool:
    zero = 0
    return q.c == q.d and q.beta.c == zero and q.delta.c == zero


def f0_square_tiling(q: QuadSpec) -> Tiling:
    """The four-tile pinwheel tiling of the square of side a+b."""
    if not _is_family3(q):
        raise WrongFamily("the square construction needs c = d and right angles at B and D")
    a, b = q.a, q.b
    h = (a + b) / 2
    zero = a - a
    proto = q.polygon()
    # reflected copy of the prototile: (a,0), (0,0), (0,b), (h,h), listed CCW
    base = Polygon((Point(h, h), Point(zero, b), Point(zero, zero), Point(a, zero)))
    g0 = congruence(base, proto, allow_reflection=True)
    assert g0 is not None
    quarter = Rotor(zero, zero + 1)
    rot = Rotor(zero + 1, zero)
    placements = []
    for _ in range(4):
        g = compose_isometries(rotation_about((h, h), rot), g0)
        placements.append(make_placement(g, proto))
        rot = Rotor(rot.c * quarter.c - rot.s * quarter.s, rot.s * quarter.c + rot.c * quarter.s)
    return Tiling(proto, region_of(square(a + b, (zero, zero))), tuple(placements))


def trivial_quadrant_tiling(q: QuadSpec, n: int) -> Tiling:
    """The n-by-n block of (a+b)-squares, each tiled by the pinwheel."""
    if n < 1:
        raise ValueError("n must be >= 1")
    base = f0_square_tiling(q)
    side = q.a + q.b
    placements = []
    for i in range(n):
        for j in range(n):
            shift = Isometry(translate=Point(side * i, side * j))
            for pl in base.placements:
                placements.append(make_placement(compose_isometries(shift, pl.iso), base.prototile))
    zero = side - side
    return Tiling(base.prototile, region_of(square(side * n, (zero, zero))), tuple(placements))


class ReptileStatus(enum.Enum):
    FOUND = "FOUND"
    EXHAUSTED = "EXHAUSTED"
    BUDGET = "BUDGET"


@dataclass
class ReptileResult:
    status: ReptileStatus
    tiling: Optional[Tiling] = None
    nodes: int = 0


def reptile_search(shape: Union[QuadSpec, Polygon], k: int, cfg: SearchConfig = SearchConfig(mode=Mode.FIRST)) -> ReptileResult:
    """Look for a dissection of ``shape`` scaled by sqrt(k) into k copies of ``shape``."""
    proto = shape.polygon() if isinstance(shape, QuadSpec) else shape
    # k as an element of the prototile's field, so its root may use the radicand
    k_num = max((c for v in proto.vertices for c in v), key=lambda c: len(field_of(c))) * 0 + k
    scale = qf_sqrt(k_num)
    if scale is None:
        raise ScaleOutOfField(f"sqrt({k}) is not in the prototile's field")
    big = Polygon(tuple(v.scale(scale) for v in proto.vertices))
    first = SearchConfig(Mode.FIRST, cfg.max_tiles, cfg.max_nodes, cfg.allow_reflection, 1)
    try:
        res = tile_region(region_of(big), proto, first)
    except NodeBudgetExceeded as exc:
        return ReptileResult(ReptileStatus.BUDGET, None, exc.nodes)
    if res.tilings:
        return ReptileResult(ReptileStatus.FOUND, res.tilings[0], res.nodes)
    return ReptileResult(ReptileStatus.EXHAUSTED, None, res.nodes)
