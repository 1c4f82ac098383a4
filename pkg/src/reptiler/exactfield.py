"""Exact rationals and real quadratic-field numbers.

Rationals are ``gmpy2.mpq``.  Irrational numbers are :class:`QF` values
``x + y*sqrt(m)`` whose coefficients live in a base field, which is either
the rationals or (for the rare tower case) another quadratic field.  Plain
rationals mix freely with any :class:`QF`; two :class:`QF` values mix only if
one field is a prefix of the other's radicand chain.
"""
from __future__ import annotations

import ast
import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

import gmpy2
from gmpy2 import mpq

__all__ = [
    "Rat",
    "QF",
    "Num",
    "RadicandMismatch",
    "rat",
    "qf",
    "lift",
    "qf_add",
    "qf_sub",
    "qf_mul",
    "qf_div",
    "qf_sign",
    "qf_cmp",
    "qf_sqrt",
    "sqrt_rational",
    "rational_enclosure",
    "is_rational",
    "field_of",
    "to_float",
    "parse_num",
    "format_num",
]

Rat = type(mpq(0))
_RATIONAL_TYPES = (int, Rat, Fraction)


class RadicandMismatch(ValueError):
    """Raised when numbers from incompatible quadratic fields are combined."""


def rat(value) -> Rat:
    """Coerce ints, Fractions, mpq and ``"p/q"`` strings to an exact rational."""
    if isinstance(value, Rat):
        return value
    if isinstance(value, str):
        return mpq(value.strip().replace("−", "-"))
    if isinstance(value, (int, Fraction)) or isinstance(value, Rational):
        return mpq(value.numerator, value.denominator)
    raise TypeError(f"not an exact rational: {value!r}")


def field_of(u) -> tuple:
    """Radicand chain of the field ``u`` was declared in (``()`` = rationals)."""
    if isinstance(u, QF):
        return u.field
    return ()


class QF:
    """The real number ``x + y*sqrt(m)``.

    ``x`` and ``y`` belong to the field with radicand chain ``base``; ``m`` is a
    square-free integer > 1 that is not a square in that base field.
    """

    __slots__ = ("x", "y", "m", "base", "_hash")

    def __init__(self, x, y, m: int, base: tuple = ()):
        if m < 2:
            raise ValueError("radicand must be >= 2; use plain rationals for m=0")
        if not base:
            x, y = rat(x), rat(y)
        else:
            x = rat(x) if isinstance(x, (int, Fraction)) else x
            y = rat(y) if isinstance(y, (int, Fraction)) else y
        self.x = x
        self.y = y
        self.m = int(m)
        self.base = tuple(base)
        self._hash = None

    @property
    def field(self) -> tuple:
        return self.base + (self.m,)

    # -- coercion --------------------------------------------------------

    def _coerce(self, other):
        """Return ``other`` as (x, y) coefficients in this field, or None to defer."""
        if isinstance(other, _RATIONAL_TYPES):
            return other, 0
        if isinstance(other, QF):
            f, g = self.field, other.field
            if f == g:
                return other.x, other.y
            if f[: len(g)] == g:
                return other, 0
            if g[: len(f)] == f:
                return None
            raise RadicandMismatch(f"cannot combine Q(sqrt{f}) with Q(sqrt{g})")
        return NotImplemented

    def _new(self, x, y):
        return QF(x, y, self.m, self.base)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return other.__radd__(self)
        if c is NotImplemented:
            return c
        return self._new(self.x + c[0], self.y + c[1])

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self.x, -self.y)

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return other.__rsub__(self)
        if c is NotImplemented:
            return c
        return self._new(self.x - c[0], self.y - c[1])

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return other.__sub__(self)
        if c is NotImplemented:
            return c
        return self._new(c[0] - self.x, c[1] - self.y)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return other.__rmul__(self)
        if c is NotImplemented:
            return c
        ox, oy = c
        if isinstance(oy, int) and oy == 0:
            return self._new(self.x * ox, self.y * ox)
        return self._new(
            self.x * ox + self.m * self.y * oy, self.x * oy + self.y * ox
        )

    __rmul__ = __mul__

    def norm(self):
        """Field norm ``x^2 - m*y^2`` (an element of the base field)."""
        return self.x * self.x - self.m * self.y * self.y

    def conj(self):
        return self._new(self.x, -self.y)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return self._new(self.x / n, -self.y / n)

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return other.__rtruediv__(self)
        if c is NotImplemented:
            return c
        ox, oy = c
        if isinstance(oy, int) and oy == 0:
            if ox == 0:
                raise ZeroDivisionError("division by zero in quadratic field")
            return self._new(self.x / ox, self.y / ox)
        return self * self._new(ox, oy).inverse()

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return other.__truediv__(self)
        if c is NotImplemented:
            return c
        return self._new(c[0], c[1]) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self._new(1, 0), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- ordering --------------------------------------------------------

    def sign(self) -> int:
        sx, sy = qf_sign(self.x), qf_sign(self.y)
        if sy == 0:
            return sx
        if sx == 0 or sx == sy:
            return sy
        # opposite signs: compare x^2 with m*y^2
        d = qf_sign(self.x * self.x - self.m * self.y * self.y)
        return sx if d > 0 else sy

    def __eq__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            return self.y == 0 and self.x == other
        if isinstance(other, QF):
            f, g = self.field, other.field
            if f == g:
                return self.x == other.x and self.y == other.y
            if f[: len(g)] == g:
                return self.y == 0 and self.x == other
            if g[: len(f)] == f:
                return other == self
            return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.y == 0:
                self._hash = hash(self.x)
            else:
                self._hash = hash((self.field, self.x, self.y))
        return self._hash

    def _cmp(self, other) -> int:
        diff = self - other
        if diff is NotImplemented:
            raise TypeError(f"cannot compare QF with {type(other).__name__}")
        return qf_sign(diff)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return not (self.x == 0 and self.y == 0)

    def __float__(self):
        return float(self.x) + float(self.y) * math.sqrt(self.m)

    def __repr__(self):
        return f"QF({self.x!r}, {self.y!r}, {self.m}{', ' + repr(self.base) if self.base else ''})"

    def __str__(self):
        return format_num(self)


Num = Union[Rat, QF]


def qf(x, y=0, m: int = 0):
    """Build ``x + y*sqrt(m)`` over the rationals; ``m=0`` gives a plain rational."""
    if m == 0:
        if rat(y) != 0:
            raise ValueError("m=0 is the rational field; y must be 0")
        return rat(x)
    return QF(rat(x), rat(y), m)


def lift(u, field: tuple):
    """Re-declare ``u`` as an element of the larger field ``field``."""
    f = field_of(u)
    if f == tuple(field):
        return u
    if tuple(field)[: len(f)] != f:
        raise RadicandMismatch(f"Q(sqrt{f}) is not a subfield of Q(sqrt{tuple(field)})")
    return QF(lift(u, field[:-1]), 0, field[-1], tuple(field[:-1]))


def qf_add(u, v):
    return u + v


def qf_sub(u, v):
    return u - v


def qf_mul(u, v):
    return u * v


def qf_div(u, v):
    if v == 0:
        raise ZeroDivisionError("division by zero")
    return u / v


def qf_sign(u) -> int:
    """Exact sign of ``u`` as -1, 0 or +1."""
    if isinstance(u, QF):
        return u.sign()
    return (u > 0) - (u < 0)


def qf_cmp(u, v) -> int:
    """-1, 0, +1 as ``u`` is less than, equal to, or greater than ``v``."""
    return qf_sign(u - v)


def is_rational(u) -> bool:
    if isinstance(u, QF):
        return u.y == 0 and is_rational(u.x)
    return True


def to_rat(u) -> Rat:
    while isinstance(u, QF):
        if u.y != 0:
            raise ValueError(f"{u} is irrational")
        u = u.x
    return rat(u)


def to_float(u) -> float:
    return float(u)


@lru_cache(maxsize=4096)
def _squarefree_split(n: int) -> tuple[int, int]:
    """Write ``n = s**2 * m`` with ``m`` square-free; returns ``(s, m)``."""
    if n == 0:
        return 0, 0
    from sympy import factorint

    s, m = 1, 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            m *= p
    return s, m


def sqrt_rational(r) -> tuple[Rat, int]:
    """Return ``(c, m)`` with ``sqrt(r) = c*sqrt(m)``, c rational, m square-free."""
    r = rat(r)
    if r < 0:
        raise ValueError("square root of a negative rational")
    p, q = int(r.numerator), int(r.denominator)
    s, m = _squarefree_split(p * q)
    return mpq(s, q), m


def _sqrt_rat(r) -> Rat | None:
    if r < 0:
        return None
    p, q = r.numerator, r.denominator
    if gmpy2.is_square(p) and gmpy2.is_square(q):
        return mpq(gmpy2.isqrt(p), gmpy2.isqrt(q))
    return None


def qf_sqrt(u):
    """Nonnegative square root of ``u`` inside ``u``'s own field, or None."""
    if not isinstance(u, QF):
        return _sqrt_rat(rat(u))
    if u.sign() < 0:
        return None
    if u.y == 0:
        p = qf_sqrt(u.x)
        if p is not None:
            return u._new(p, 0)
        q = qf_sqrt(u.x / u.m)
        if q is not None:
            return u._new(0, q)
        return None
    r = qf_sqrt(u.norm())
    if r is None:
        return None
    for t in ((u.x + r) / 2, (u.x - r) / 2):
        p = qf_sqrt(t)
        if p is None or p == 0:
            continue
        w = u._new(p, u.y / (2 * p))
        if w * w == u:
            return abs(w)
    return None


def _abs_bound(u) -> Rat:
    if isinstance(u, QF):
        return _abs_bound(u.x) + _abs_bound(u.y) * (gmpy2.isqrt(u.m) + 1)
    return abs(rat(u))


def rational_enclosure(u, eps) -> tuple[Rat, Rat]:
    """Rational ``[lo, hi]`` with ``lo <= u <= hi`` and ``hi - lo <= eps``.

    Bisects over the decimal grid of spacing ``10**-j`` (the coarsest one not
    wider than ``eps``), so the bounds are short decimals.
    """
    eps = rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if is_rational(u):
        v = to_rat(u)
        return v, v
    j = 0
    while mpq(1, 10**j) > eps:
        j += 1
    grid = mpq(1, 10**j)
    bound = _abs_bound(u) + 1
    lo_k, hi_k = -int(gmpy2.ceil(bound / grid)), int(gmpy2.ceil(bound / grid))
    # invariant: lo_k*grid < u < hi_k*grid
    while hi_k - lo_k > 1:
        mid = (lo_k + hi_k) // 2
        c = qf_cmp(u, mid * grid)
        if c == 0:
            return mid * grid, mid * grid
        if c < 0:
            hi_k = mid
        else:
            lo_k = mid
    return lo_k * grid, hi_k * grid


# -- text form ---------------------------------------------------------------

def format_num(u) -> str:
    """Human-readable exact form, e.g. ``2/5+2/5*sqrt(6)``."""
    if not isinstance(u, QF):
        return str(rat(u))
    xs = format_num(u.x)
    if u.y == 0:
        return xs
    ys = format_num(u.y)
    nested = isinstance(u.y, QF) and u.y.y != 0
    ys = f"({ys})" if nested else ys
    term = f"sqrt({u.m})" if ys == "1" else f"-sqrt({u.m})" if ys == "-1" else f"{ys}*sqrt({u.m})"
    if u.x == 0:
        return term
    return f"{xs}{term}" if term.startswith("-") else f"{xs}+{term}"


_SQRT_SYM = re.compile("√\\s*(\\d+)")
_IMPLICIT_MUL = re.compile(r"(\d|\))\s*(?=[A-Za-z_(])")


def parse_num(text: str, names: dict | None = None):
    """Parse exact expressions such as ``7/5``, ``(2+2√6)/5`` or ``1/2*sqrt(7)``.

    Only integer literals, ``+ - * /``, parentheses, ``sqrt(<rational>)`` and
    the identifiers in ``names`` are accepted; implicit products like ``2b``
    are allowed.
    """
    names = names or {}
    s = text.strip().replace("−", "-").replace("·", "*")
    s = _SQRT_SYM.sub(r"sqrt(\1)", s)
    s = _IMPLICIT_MUL.sub(r"\1*", s)
    try:
        tree = ast.parse(s, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse number {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return mpq(node.value)
        if isinstance(node, ast.Name) and node.id in names:
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return qf_div(left, right)
        if (
            isinstance(node, ast.Call)
            and isinstance(node.func, ast.Name)
            and node.func.id == "sqrt"
            and len(node.args) == 1
        ):
            arg = ev(node.args[0])
            if not is_rational(arg) or arg < 0:
                raise ValueError("sqrt() takes a nonnegative rational")
            c, m = sqrt_rational(to_rat(arg))
            return c if m == 1 or c == 0 else QF(0, c, m)
        raise ValueError(f"unsupported syntax in {text!r}")

    return ev(tree)
