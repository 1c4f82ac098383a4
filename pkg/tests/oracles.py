"""Independent reference computations used by the tests.

Nothing here calls the exact predicates under test: numbers are evaluated
with 100-digit decimals, polygons are handed to shapely in floating point,
and point location uses a winding number instead of ray casting.
"""
from __future__ import annotations

import itertools
import math
from decimal import Decimal, getcontext

import mpmath
from shapely.geometry import Polygon as ShPolygon
from shapely.ops import unary_union

from reptiler.exactfield import QF

getcontext().prec = 110
mpmath.mp.dps = 50


def dec(u) -> Decimal:
    """``u`` as a 110-digit decimal, recursing through tower coefficients."""
    if isinstance(u, QF):
        return dec(u.x) + dec(u.y) * Decimal(u.m).sqrt()
    return Decimal(int(u.numerator)) / Decimal(int(u.denominator))


def dec_sign(u) -> int:
    d = dec(u)
    if abs(d) < Decimal(10) ** -100:
        return 0
    return 1 if d > 0 else -1


def fl(u) -> float:
    return float(dec(u))


def sh(poly) -> ShPolygon:
    return ShPolygon([(fl(v[0]), fl(v[1])) for v in poly.vertices])


def sh_region(region):
    parts = []
    for f in region.faces:
        parts.append(ShPolygon([(fl(v.x), fl(v.y)) for v in f.outer.vertices],
                               [[(fl(v.x), fl(v.y)) for v in h.vertices] for h in f.holes]))
    return unary_union(parts) if parts else ShPolygon()


def winding_number(p, vertices) -> int:
    """Exact winding number by summing signed quadrant changes (rational inputs)."""
    def quad(v):
        x, y = v[0] - p[0], v[1] - p[1]
        if x > 0 and y >= 0:
            return 0
        if x <= 0 and y > 0:
            return 1
        if x < 0 and y <= 0:
            return 2
        return 3

    total = 0
    n = len(vertices)
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        qa, qb = quad(a), quad(b)
        d = (qb - qa) % 4
        if d == 1:
            total += 1
        elif d == 3:
            total -= 1
        elif d == 2:
            cr = (a[0] - p[0]) * (b[1] - p[1]) - (a[1] - p[1]) * (b[0] - p[0])
            total += 2 if cr > 0 else -2
    return total // 4


def on_boundary(p, vertices) -> bool:
    n = len(vertices)
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        cr = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
        if cr == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
            return True
    return False


def tiling_float_check(tiling, tol=1e-9) -> list[str]:
    """Coverage/overlap audit of a tiling in floating point (shapely)."""
    problems = []
    region = sh_region(tiling.region)
    tiles = [sh(p.polygon) for p in tiling.placements]
    for i, j in itertools.combinations(range(len(tiles)), 2):
        if tiles[i].intersection(tiles[j]).area > tol:
            problems.append(f"tiles {i},{j} overlap")
    union = unary_union(tiles) if tiles else ShPolygon()
    if union.symmetric_difference(region).area > tol:
        problems.append("union of tiles differs from region")
    return problems


def angle_value(rotor) -> mpmath.mpf:
    """Angle of an exact rotor in [0, 2pi) at 50 digits (set module-wide above)."""
    a = mpmath.atan2(mpmath.mpf(str(dec(rotor.s))), mpmath.mpf(str(dec(rotor.c))))
    return a if a >= 0 else a + 2 * mpmath.pi


def float_fills(angles: dict, target, tol=1e-30) -> set:
    """Brute-force multisets of named angles summing to ``target`` (mpmath)."""
    names = sorted(angles)
    bounds = [int(target / angles[n]) + 1 for n in names]
    out = set()
    for counts in itertools.product(*(range(b + 1) for b in bounds)):
        if not any(counts):
            continue
        total = sum(c * angles[n] for c, n in zip(counts, names))
        if abs(total - target) < tol:
            out.add(tuple((n, c) for n, c in zip(names, counts) if c))
    return out


def float_edge_fills(sides, L, bound, tol=1e-40) -> set:
    a, b, c, d = (dec(s) for s in sides)
    Lv = dec(L)
    out = set()
    for p, q, r, s in itertools.product(range(bound + 1), repeat=4):
        if abs(p * a + q * b + r * c + s * d - Lv) < Decimal(tol):
            out.add((p, q, r, s))
    return out


def isometries_at_corner(proto_vertices, corner, ray_dirs):
    """All float placements of a prototile vertex at ``corner`` with an edge along a ray.

    Yields float vertex lists for every vertex, both incident edges, both
    mirror images and every ray direction.
    """
    n = len(proto_vertices)
    pv = [(fl(x), fl(y)) for x, y in proto_vertices]
    cx, cy = fl(corner[0]), fl(corner[1])
    for reflect in (False, True):
        vs = [(x, -y) for x, y in pv] if reflect else pv
        for i in range(n):
            for j in ((i + 1) % n, (i - 1) % n):
                ex, ey = vs[j][0] - vs[i][0], vs[j][1] - vs[i][1]
                for rx, ry in ray_dirs:
                    th = math.atan2(ry, rx) - math.atan2(ey, ex)
                    c, s = math.cos(th), math.sin(th)
                    placed = []
                    for x, y in vs:
                        dx, dy = x - vs[i][0], y - vs[i][1]
                        placed.append((cx + c * dx - s * dy, cy + s * dx + c * dy))
                    yield placed
