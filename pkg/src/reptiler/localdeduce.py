"""Local counting arguments, evaluated exactly for one concrete prototile.

Angles are combined as exact rotors; a rational enclosure of each measure
(in radians) rides along so that the number of full turns in a sum is never
ambiguous.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import mpmath
from gmpy2 import mpq

from .exactfield import is_rational, parse_num, qf_sign, rational_enclosure, rat, to_rat
from .geom import IDENTITY_ROTOR, Rotor, rotor_compose, rotor_invert
from .quadmodel import QuadSpec

__all__ = [
    "Angle",
    "AngleToken",
    "FillSolution",
    "EdgeFill",
    "PatchProblem",
    "PatchCandidate",
    "PI",
    "TWO_PI",
    "HALF_PI",
    "angle_of",
    "angle_tokens",
    "named_angle",
    "enumerate_vertex_fills",
    "edge_fill_solutions",
    "gamma_not_combination",
    "gamma_combinations",
    "enumerate_patches",
    "side_length",
]

_DIGITS = 60
_SLACK = mpq(1, 10**40)


def _mpf_to_rat(x) -> mpq:
    man, exp = x.man_exp
    man, exp = int(man), int(exp)
    return mpq(man * 2**exp) if exp >= 0 else mpq(man, 2 ** (-exp))


@dataclass(frozen=True)
class Angle:
    """An angle measure: exact rotor plus a rational enclosure in radians."""

    rotor: Rotor
    lo: mpq
    hi: mpq

    def __add__(self, other: "Angle") -> "Angle":
        return Angle(rotor_compose(self.rotor, other.rotor), self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Angle") -> "Angle":
        return Angle(rotor_compose(self.rotor, rotor_invert(other.rotor)), self.lo - other.hi, self.hi - other.lo)

    def __mul__(self, n: int) -> "Angle":
        if n == 0:
            return ZERO
        r = self.rotor
        for _ in range(n - 1):
            r = rotor_compose(r, self.rotor)
        return Angle(r, self.lo * n, self.hi * n)

    __rmul__ = __mul__

    def same_measure(self, other: "Angle") -> bool:
        # equal rotors differ by whole turns; the enclosures then tell which
        return self.rotor == other.rotor and self.lo <= other.hi and other.lo <= self.hi

    def is_zero(self) -> bool:
        return self.rotor == IDENTITY_ROTOR and self.lo <= 0 <= self.hi

    def is_negative(self) -> bool:
        return self.hi < 0

    def __float__(self):
        return float((self.lo + self.hi) / 2)


def _pi_enclosure(k: int = 1):
    with mpmath.workdps(_DIGITS):
        v = _mpf_to_rat(mpmath.pi * k)
    return v - _SLACK, v + _SLACK


@lru_cache(maxsize=None)
def _measure(rotor: Rotor) -> tuple:
    eps = mpq(1, 10**50)
    c_lo, c_hi = rational_enclosure(rotor.c, eps)
    s_lo, s_hi = rational_enclosure(rotor.s, eps)
    with mpmath.workdps(_DIGITS):
        c = mpmath.mpf(int(((c_lo + c_hi) / 2).numerator)) / int(((c_lo + c_hi) / 2).denominator)
        s = mpmath.mpf(int(((s_lo + s_hi) / 2).numerator)) / int(((s_lo + s_hi) / 2).denominator)
        theta = mpmath.atan2(s, c)
        if theta < 0:
            theta += 2 * mpmath.pi
        v = _mpf_to_rat(theta)
    return v - _SLACK, v + _SLACK


def angle_of(rotor: Rotor) -> Angle:
    """The angle in [0, 2pi) with the given rotor."""
    if rotor == IDENTITY_ROTOR:
        return ZERO
    lo, hi = _measure(rotor)
    return Angle(rotor, lo, hi)


ZERO = Angle(IDENTITY_ROTOR, mpq(0), mpq(0))
PI = Angle(Rotor(rat(-1), rat(0)), *_pi_enclosure(1))
TWO_PI = Angle(IDENTITY_ROTOR, *_pi_enclosure(2))
HALF_PI = Angle(Rotor(rat(0), rat(1)), _pi_enclosure(1)[0] / 2, _pi_enclosure(1)[1] / 2)


@dataclass(frozen=True)
class AngleToken:
    tag: str  # ALPHA, BETA, GAMMA, DELTA or HALF_PI
    angle: Angle

    @property
    def rotor(self) -> Rotor:
        return self.angle.rotor

    @property
    def enclosure(self) -> tuple:
        return self.angle.lo, self.angle.hi


_TAG_ORDER = ("ALPHA", "BETA", "GAMMA", "DELTA", "HALF_PI")
_ANGLE_NAMES = {"alpha": "ALPHA", "beta": "BETA", "gamma": "GAMMA", "delta": "DELTA"}


def _tag_for(q: QuadSpec, name: str) -> str:
    r = getattr(q, name)
    if r == HALF_PI.rotor:
        return "HALF_PI"
    return _ANGLE_NAMES[name]


def angle_tokens(q: QuadSpec) -> list[AngleToken]:
    """Distinct interior angles of ``q``; equal right angles collapse to HALF_PI."""
    seen: dict = {}
    for name in ("alpha", "beta", "gamma", "delta"):
        tag = _tag_for(q, name)
        r = getattr(q, name)
        if any(t.rotor == r for t in seen.values()):
            continue
        seen[tag] = AngleToken(tag, HALF_PI if tag == "HALF_PI" else angle_of(r))
    return sorted(seen.values(), key=lambda t: _TAG_ORDER.index(t.tag))


def named_angle(q: QuadSpec, name: str) -> Angle:
    """Angle by name: pi, 2pi, hpi, alpha, beta, gamma, delta."""
    key = name.strip().lower()
    fixed = {"pi": PI, "2pi": TWO_PI, "twopi": TWO_PI, "two_pi": TWO_PI, "hpi": HALF_PI, "half_pi": HALF_PI}
    if key in fixed:
        return fixed[key]
    if key in _ANGLE_NAMES:
        r = getattr(q, key)
        return HALF_PI if r == HALF_PI.rotor else angle_of(r)
    raise ValueError(f"unknown angle name {name!r}")


@dataclass(frozen=True)
class FillSolution:
    """A multiset of angle tokens, as sorted ``(tag, multiplicity)`` pairs."""

    counts: tuple

    def as_dict(self) -> dict:
        return dict(self.counts)

    def total(self, tokens: Sequence[AngleToken]) -> Angle:
        by_tag = {t.tag: t.angle for t in tokens}
        s = ZERO
        for tag, n in self.counts:
            s = s + by_tag[tag] * n
        return s

    def __len__(self):
        return sum(n for _, n in self.counts)


def _fills(tokens: Sequence[AngleToken], target: Angle, allow_empty: bool) -> list[FillSolution]:
    if target.is_negative():
        return []
    out = []
    n = len(tokens)

    def rec(i, acc: Angle, counts):
        if i == n:
            if (counts or allow_empty) and acc.same_measure(target):
                out.append(FillSolution(tuple((tokens[j].tag, k) for j, k in counts)))
            return
        tok = tokens[i].angle
        k, cur = 0, acc
        while cur.lo <= target.hi:
            rec(i + 1, cur, counts + [(i, k)] if k else counts)
            k += 1
            cur = cur + tok

    rec(0, ZERO, [])
    out.sort(key=lambda f: f.counts)
    return out


def _target(q: QuadSpec, target) -> Angle:
    if isinstance(target, Angle):
        return target
    if isinstance(target, Rotor):
        return angle_of(target)
    name = str(target).strip().lower().replace("π", "pi")
    if name in ("pi", "2pi", "two_pi", "twopi"):
        return PI if name == "pi" else TWO_PI
    return named_angle(q, name)


def enumerate_vertex_fills(q: QuadSpec, target="TWO_PI") -> list[FillSolution]:
    """All multisets of the tile's angles summing exactly to ``target``.

    ``target`` is ``"PI"``, ``"TWO_PI"``, an angle name, a rotor (taken in
    [0, 2pi)) or an :class:`Angle`.
    """
    return _fills(angle_tokens(q), _target(q, target), allow_empty=False)


# -- edge partitions ---------------------------------------------------------

@dataclass(frozen=True)
class EdgeFill:
    p: int
    q: int
    r: int
    s: int

    def as_tuple(self) -> tuple:
        return (self.p, self.q, self.r, self.s)


def _ceil_ratio(L, unit) -> int:
    n = 0
    while qf_sign(unit * n - L) < 0:
        n += 1
    return n


def edge_fill_solutions(q: QuadSpec, L, bound: Optional[int] = None) -> list[EdgeFill]:
    """Every ``(p, q, r, s) >= 0`` with ``p*a + q*b + r*c + s*d == L`` exactly."""
    sides = (q.a, q.b, q.c, q.d)
    if bound is None:
        bound = _ceil_ratio(L, min(sides))
    out = []
    a, b, c, d = sides
    for p in range(bound + 1):
        rp = L - a * p
        if qf_sign(rp) < 0:
            break
        for qq in range(bound + 1):
            rq = rp - b * qq
            if qf_sign(rq) < 0:
                break
            for r in range(bound + 1):
                rr = rq - c * r
                if qf_sign(rr) < 0:
                    break
                s = rr / d
                if not is_rational(s):
                    continue
                s = to_rat(s)
                if s.denominator == 1 and 0 <= s <= bound:
                    out.append(EdgeFill(p, qq, r, int(s)))
    return out


def gamma_combinations(q: QuadSpec, bound: Optional[int] = None) -> list[tuple[int, int]]:
    """All ``(p, k)`` with ``p*alpha + k*(pi/2) == gamma``."""
    alpha, gamma = angle_of(q.alpha), angle_of(q.gamma)
    hits = []
    p = 0
    while (alpha * p).lo <= TWO_PI.hi and (bound is None or p <= bound):
        k = 0
        while (alpha * p + HALF_PI * k).lo <= gamma.hi:
            if (p or k) and (alpha * p + HALF_PI * k).same_measure(gamma):
                hits.append((p, k))
            k += 1
        p += 1
    return hits


def gamma_not_combination(q: QuadSpec) -> bool:
    """True iff gamma is not a nonnegative integer combination of alpha and pi/2."""
    return not gamma_combinations(q)


# -- barrier patches ---------------------------------------------------------

# endpoint angles of each side in CCW traversal order A->B->C->D->A
_SIDE_ENDS = {"a": ("alpha", "beta"), "b": ("beta", "gamma"), "c": ("gamma", "delta"), "d": ("delta", "alpha")}


def side_length(q: QuadSpec, expr: str):
    """Evaluate a base-length expression such as ``a``, ``a+b``, ``1+2b`` or ``3/2``."""
    return parse_num(expr, names=q.sides)


@dataclass(frozen=True)
class PatchProblem:
    length: object
    left: Angle
    right: Angle


@dataclass(frozen=True)
class PatchCandidate:
    """First-layer tiles along a barrier base, left to right.

    ``sides`` holds ``(label, reversed)`` pairs; a non-reversed side has the
    first angle of its CCW traversal at its left end.  ``joints`` lists, for
    each partition point, every multiset of extra tile angles that closes it.
    """

    sides: tuple
    lengths: tuple
    end_angles: tuple
    joints: tuple

    @property
    def labels(self) -> tuple:
        return tuple(label for label, _ in self.sides)


def enumerate_patches(q: QuadSpec, prob: PatchProblem, max_tiles: Optional[int] = None) -> list[PatchCandidate]:
    """All first-layer tilings of a barrier base meeting the exact angle-sum conditions.

    The conditions are necessary, not sufficient: an empty result rules the
    barrier out, a nonempty one only fails to.
    """
    tokens = angle_tokens(q)
    named = {n: named_angle(q, n) for n in ("alpha", "beta", "gamma", "delta")}
    L = prob.length
    lengths = q.sides
    if max_tiles is None:
        max_tiles = _ceil_ratio(L, min(lengths.values()))
    cache: dict = {}

    def closers(gap: Angle) -> list:
        key = (gap.rotor, gap.lo, gap.hi)
        if key not in cache:
            cache[key] = tuple(_fills(tokens, gap, allow_empty=True))
        return cache[key]

    pieces = []
    for label in "abcd":
        first, second = _SIDE_ENDS[label]
        pieces.append((label, False, named[first], named[second]))
        pieces.append((label, True, named[second], named[first]))

    out: list[PatchCandidate] = []

    def rec(pos, seq, joints, prev_right):
        if len(seq) >= max_tiles:
            return
        for label, rev, left_ang, right_ang in pieces:
            new_pos = pos + lengths[label]
            c = qf_sign(new_pos - L)
            if c > 0:
                continue
            gap = (prob.left if prev_right is None else PI - prev_right) - left_ang
            fills = closers(gap)
            if not fills:
                continue
            step = seq + [(label, rev)]
            js = joints + [fills]
            if c == 0:
                end_fills = closers(prob.right - right_ang)
                if end_fills:
                    out.append(_candidate(step, js + [end_fills], lengths, named))
            else:
                rec(new_pos, step, js, right_ang)

    rec(0, [], [], None)
    out.sort(key=lambda c: c.sides)
    return out


def _candidate(seq, joints, lengths, named) -> PatchCandidate:
    ends = []
    for label, rev in seq:
        first, second = _SIDE_ENDS[label]
        ends.append((second, first) if rev else (first, second))
    return PatchCandidate(
        sides=tuple(seq),
        lengths=tuple(lengths[label] for label, _ in seq),
        end_angles=tuple(ends),
        joints=tuple(tuple(j) for j in joints),
    )
