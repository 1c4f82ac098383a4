"""Exact cyclic quadrilaterals from the three one-parameter families.

Vertices are labelled A, B, C, D counterclockwise with side lengths
``a=|AB|, b=|BC|, c=|CD|, d=|DA|`` and interior angles alpha..delta at
A..D.  Angles are carried as exact rotors (cosine, sine).
"""
from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass

from .exactfield import QF, qf_sign, qf_sqrt, rat, sqrt_rational
from .geom import NormalizationError, Point, Polygon, Rotor, cross, dot, signed_area

__all__ = [
    "Family",
    "QuadSpec",
    "ParameterOutOfRange",
    "NoValidRoot",
    "build_family1",
    "build_family2",
    "build_family3",
    "build_family3_ab",
    "classify",
    "lemma1_holds",
    "lemma2_holds",
    "angle_at",
    "quad_from_vertices",
    "parse_instance",
    "check_invariants",
]


class Family(enum.Enum):
    TRAPEZOID = "TRAPEZOID"
    FAMILY_I = "FAMILY_I"
    FAMILY_II = "FAMILY_II"
    FAMILY_III = "FAMILY_III"
    OTHER = "OTHER"


class ParameterOutOfRange(ValueError):
    pass


class NoValidRoot(ValueError):
    pass


@dataclass(frozen=True)
class QuadSpec:
    A: Point
    B: Point
    C: Point
    D: Point
    a: object
    b: object
    c: object
    d: object
    alpha: Rotor
    beta: Rotor
    gamma: Rotor
    delta: Rotor
    family: Family = Family.OTHER

    @property
    def vertices(self):
        return (self.A, self.B, self.C, self.D)

    @property
    def sides(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}

    @property
    def angles(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma, "delta": self.delta}

    def polygon(self) -> Polygon:
        return Polygon(self.vertices)


_VERTEX_INDEX = {"A": 0, "B": 1, "C": 2, "D": 3}


def _length(u):
    n = qf_sqrt(dot(u, u))
    if n is None:
        raise NormalizationError(f"edge length sqrt({dot(u, u)}) is not in the field")
    return n


def angle_at(q: QuadSpec, vertex: str) -> Rotor:
    """Exact (cos, sin) of the interior angle at ``vertex`` in {A, B, C, D}."""
    vs = q.vertices
    i = _VERTEX_INDEX[vertex]
    p = vs[i]
    u = vs[(i + 1) % 4] - p
    w = vs[i - 1] - p
    n = _length(u) * _length(w)
    return Rotor(dot(u, w) / n, cross(u, w) / n)


def quad_from_vertices(A, B, C, D, family: Family = Family.OTHER) -> QuadSpec:
    """QuadSpec with sides and angle rotors derived from four CCW vertices."""
    A, B, C, D = (Point(*p) for p in (A, B, C, D))
    sides = [_length(v - u) for u, v in ((A, B), (B, C), (C, D), (D, A))]
    stub = QuadSpec(A, B, C, D, *sides, *([Rotor(rat(1), rat(0))] * 4), family=family)
    rotors = [angle_at(stub, v) for v in "ABCD"]
    return dataclasses.replace(stub, alpha=rotors[0], beta=rotors[1], gamma=rotors[2], delta=rotors[3])


def _radical(r):
    """``sqrt(r)`` for rational ``r > 0`` as an mpq or a QF over the rationals."""
    c, m = sqrt_rational(r)
    return c if m == 1 else QF(0, c, m)


def build_family1(d_param) -> QuadSpec:
    """Family (i): alpha = pi/3, beta = delta = pi/2, c = 1, in Q(sqrt 3)."""
    d = rat(d_param)
    s3 = QF(0, 1, 3)
    b = d * s3 / 2 - rat(1) / 2
    a = d / 2 + s3 / 2
    if qf_sign(b) <= 0:
        raise ParameterOutOfRange(f"d={d} gives b <= 0 (need d > 1/sqrt(3))")
    if qf_sign(a - d) < 0:
        raise ParameterOutOfRange(f"d={d} gives a < d (need d <= sqrt(3))")
    A = Point(rat(0), rat(0))
    B = Point(a, rat(0))
    C = Point(a, b)
    D = Point(d / 2, d * s3 / 2)
    q = quad_from_vertices(A, B, C, D, Family.FAMILY_I)
    return dataclasses.replace(q, a=a, b=b, c=rat(1), d=d)


def build_family2(a_param) -> QuadSpec:
    """Family (ii): b = c = 1, alpha = pi/3, gamma = 2pi/3.

    ``d`` is the root of ``a^2 - a*d + d^2 = 3`` in ``(1, a]``.  Coordinates
    need sqrt(3) on top of the field of ``d``, so unless that field is
    already Q(sqrt 3) the result lives in the tower Q(sqrt m)(sqrt 3).
    """
    a = rat(a_param)
    disc = 12 - 3 * a * a
    if disc < 0:
        raise NoValidRoot(f"a={a}: a^2 - a d + d^2 = 3 has no real root")
    c, m = sqrt_rational(disc)
    if m == 1 or c == 0:
        root, field = c, (3,)
    elif m == 3:
        root, field = QF(0, c, 3), (3,)
    else:
        root, field = QF(0, c, m), (m, 3)
    d = None
    for cand in ((a + root) / 2, (a - root) / 2):
        if qf_sign(cand - 1) > 0 and qf_sign(cand - a) <= 0:
            d = cand
            break
    if d is None:
        raise NoValidRoot(f"a={a}: no root d with 1 < d <= a")
    s3 = QF(0, 1, 3) if field == (3,) else QF(0, 1, 3, (m,))
    A = Point(rat(0), rat(0))
    B = Point(a, rat(0))
    D = Point(d / 2, d * s3 / 2)
    # apex of the isosceles triangle BCD (legs 1, apex angle 2pi/3), away from A
    M = Point((B.x + D.x) / 2, (B.y + D.y) / 2)
    C = Point(M.x + (D.y - B.y) * s3 / 6, M.y - (D.x - B.x) * s3 / 6)
    q = quad_from_vertices(A, B, C, D, Family.FAMILY_II)
    return dataclasses.replace(q, a=a, b=rat(1), c=rat(1), d=d)


def build_family3_ab(a, b) -> QuadSpec:
    """Family (iii) from an exact pair with ``a^2 + b^2 = 2`` and ``0 < b < 1``."""
    if a * a + b * b != 2:
        raise ParameterOutOfRange("need a^2 + b^2 = 2 exactly")
    if not (qf_sign(b) > 0 and qf_sign(b - 1) < 0 and qf_sign(a) > 0):
        raise ParameterOutOfRange("need 0 < b < 1 and a > 0")
    zero = rat(0)
    A = Point(zero, zero)
    B = Point(a, zero)
    C = Point(a, b)
    D = Point((a - b) / 2, (a + b) / 2)
    one = rat(1)
    return QuadSpec(
        A, B, C, D, a, b, one, one,
        alpha=Rotor((a - b) / 2, (a + b) / 2),
        beta=Rotor(zero, one),
        gamma=Rotor((b - a) / 2, (a + b) / 2),
        delta=Rotor(zero, one),
        family=Family.FAMILY_III,
    )


def build_family3(b_param) -> QuadSpec:
    """Family (iii): c = d = 1, beta = delta = pi/2, a = sqrt(2 - b^2)."""
    b = rat(b_param)
    if not (0 < b < 1):
        raise ParameterOutOfRange(f"b={b} not in (0, 1)")
    return build_family3_ab(_radical(2 - b * b), b)


def classify(q: QuadSpec) -> Family:
    A, B, C, D = q.vertices
    if qf_sign(cross(B - A, C - D)) == 0 or qf_sign(cross(C - B, D - A)) == 0:
        return Family.TRAPEZOID
    half, zero = rat(1) / 2, rat(0)
    if q.alpha.c == half and q.beta.c == zero and q.delta.c == zero:
        return Family.FAMILY_I
    if q.b == q.c and q.alpha.c == half:
        return Family.FAMILY_II
    if q.c == q.d and q.beta.c == zero and q.delta.c == zero:
        return Family.FAMILY_III
    return Family.OTHER


def lemma1_holds(q: QuadSpec) -> bool:
    """a >= d > b and a > c."""
    return qf_sign(q.a - q.d) >= 0 and qf_sign(q.d - q.b) > 0 and qf_sign(q.a - q.c) > 0


def lemma2_holds(q: QuadSpec) -> bool:
    """c >= d implies beta < 2*alpha (compared via cosines on (0, pi))."""
    if qf_sign(q.c - q.d) < 0:
        return True
    cos_2alpha = 2 * q.alpha.c * q.alpha.c - 1
    return qf_sign(q.beta.c - cos_2alpha) > 0


def check_invariants(q: QuadSpec) -> list[str]:
    """Return the QuadSpec invariants that fail (empty list means all hold)."""
    bad = []
    vs = q.vertices
    if qf_sign(signed_area(vs)) <= 0:
        bad.append("vertices not counterclockwise")
    for name, (u, v) in zip("abcd", ((0, 1), (1, 2), (2, 3), (3, 0))):
        e = vs[v] - vs[u]
        s = getattr(q, name)
        if dot(e, e) != s * s or qf_sign(s) <= 0:
            bad.append(f"side {name} does not match |{'ABCD'[u]}{'ABCD'[v]}|")
    for name, vert in zip(("alpha", "beta", "gamma", "delta"), "ABCD"):
        r = getattr(q, name)
        if r.c * r.c + r.s * r.s != 1:
            bad.append(f"rotor {name} not unit")
        try:
            if angle_at(q, vert) != r:
                bad.append(f"rotor {name} does not match the angle at {vert}")
        except NormalizationError as exc:
            bad.append(str(exc))
    if not (q.gamma.c == -q.alpha.c and q.gamma.s == q.alpha.s):
        bad.append("alpha + gamma != pi")
    if not (q.delta.c == -q.beta.c and q.delta.s == q.beta.s):
        bad.append("beta + delta != pi")
    cos_min = max(r.c for r in (q.alpha, q.beta, q.gamma, q.delta))
    if q.alpha.c != cos_min:
        bad.append("alpha is not a smallest angle")
    if qf_sign(q.a - q.d) < 0:
        bad.append("a < d")
    return bad


def parse_instance(text: str) -> QuadSpec:
    """Instance strings ``f1:<d>``, ``f2:<a>``, ``f3:<b>``, ``f3ab:<a>,<b>``."""
    from .exactfield import parse_num

    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    if kind == "f1":
        return build_family1(rat(arg))
    if kind == "f2":
        return build_family2(rat(arg))
    if kind == "f3":
        return build_family3(rat(arg))
    if kind == "f3ab":
        sa, _, sb = arg.partition(",")
        return build_family3_ab(parse_num(sa), parse_num(sb))
    raise ValueError(f"unknown instance syntax {text!r}; expected f1:<d>, f2:<a>, f3:<b> or f3ab:<a>,<b>")
