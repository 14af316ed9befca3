"""Exact plane geometry over Q(i).

Points, edge vectors and gluing derivatives are Gaussian rationals.  All
predicates here are sign tests on cross and dot products; nothing calls a
trigonometric function except :func:`arg`.
"""

import math
from dataclasses import dataclass
from fractions import Fraction


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (list, tuple)):
        num, den = x
        return Fraction(int(num), int(den))
    if isinstance(x, float):
        return Fraction(x)
    return Fraction(x)


@dataclass(frozen=True)
class Qi:
    """Gaussian rational ``re + i*im``."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_fraction(self.re))
        object.__setattr__(self, "im", as_fraction(self.im))

    @classmethod
    def coerce(cls, z):
        if isinstance(z, Qi):
            return z
        if isinstance(z, (tuple, list)) and len(z) == 2:
            return cls(z[0], z[1])
        return cls(z)

    def __add__(self, other):
        other = Qi.coerce(other)
        return Qi(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = Qi.coerce(other)
        return Qi(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return Qi.coerce(other) - self

    def __neg__(self):
        return Qi(-self.re, -self.im)

    def __mul__(self, other):
        other = Qi.coerce(other)
        return Qi(self.re * other.re - self.im * other.im,
                  self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Qi.coerce(other)
        n = other.norm2()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        num = self * other.conj()
        return Qi(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        return Qi.coerce(other) / self

    def conj(self):
        return Qi(self.re, -self.im)

    def norm2(self):
        return self.re * self.re + self.im * self.im

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def is_positive_real(self):
        return self.im == 0 and self.re > 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return math.sqrt(float(self.norm2()))

    def __repr__(self):
        if self.im == 0:
            return f"Qi({self.re})"
        return f"Qi({self.re}, {self.im})"


ONE = Qi(1)
ZERO = Qi(0)


def cross(u, v):
    return u.re * v.im - u.im * v.re


def dot(u, v):
    return u.re * v.re + u.im * v.im


def left_normal(v):
    return Qi(-v.im, v.re)


def half(v):
    """0 for directions with argument in [0, pi), 1 for [pi, 2*pi)."""
    if v.im > 0 or (v.im == 0 and v.re > 0):
        return 0
    return 1


def arg_less(u, v):
    """True iff arg(u) < arg(v), both normalised to [0, 2*pi)."""
    hu, hv = half(u), half(v)
    if hu != hv:
        return hu < hv
    return cross(u, v) > 0


def same_direction(u, v):
    return cross(u, v) == 0 and dot(u, v) > 0


def ccw_passes_reference(u, w):
    """Whether rotating counterclockwise from ``u`` to ``w`` (through an
    angle in (0, 2*pi)) sweeps onto the positive real axis."""
    return arg_less(w, u)


def signed_turn_crossings(u, w):
    """Signed count of passages over the positive real axis when the tangent
    turns from ``u`` to ``w`` along the shorter arc.

    Counterclockwise turns count arrivals on the axis, clockwise turns count
    departures from it, so the counts telescope to the degree on closed
    loops.  Raises ValueError on an exact reversal.
    """
    c = cross(u, w)
    if c > 0:
        return 1 if arg_less(w, u) else 0
    if c < 0:
        return -1 if arg_less(u, w) else 0
    if dot(u, w) > 0:
        return 0
    raise ValueError("reversal")


def arg(v):
    """Argument in [0, 2*pi) as a float."""
    a = math.atan2(float(v.im), float(v.re))
    return a + 2 * math.pi if a < 0 else a


def signed_area2(pts):
    n = len(pts)
    return sum(cross(pts[i], pts[(i + 1) % n]) for i in range(n))


def orient(a, b, c):
    s = cross(b - a, c - a)
    return (s > 0) - (s < 0)


def on_segment(p, a, b):
    """p on the closed segment [a, b]."""
    if orient(a, b, p) != 0:
        return False
    return (min(a.re, b.re) <= p.re <= max(a.re, b.re)
            and min(a.im, b.im) <= p.im <= max(a.im, b.im))


def in_open_segment(p, a, b):
    return on_segment(p, a, b) and p != a and p != b


def segments_intersect(a, b, c, d):
    """Closed segments [a, b] and [c, d] share at least one point."""
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (on_segment(c, a, b) or on_segment(d, a, b)
            or on_segment(a, c, d) or on_segment(b, c, d))


def proper_crossing(a, b, c, d):
    """Open segments cross transversally at a single interior point."""
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def is_simple(pts):
    n = len(pts)
    if n < 3:
        return False
    edges = [(pts[i], pts[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a, b = edges[i]
            c, d = edges[j]
            if j == i + 1 or (i == 0 and j == n - 1):
                # adjacent edges may only share their common vertex
                shared = b if j == i + 1 else a
                other = d if j == i + 1 else c
                mine = a if j == i + 1 else b
                if on_segment(other, mine, shared) or on_segment(mine, other, shared):
                    return False
                continue
            if segments_intersect(a, b, c, d):
                return False
    return True


def is_convex(pts):
    n = len(pts)
    for i in range(n):
        if cross(pts[(i + 1) % n] - pts[i], pts[(i + 2) % n] - pts[(i + 1) % n]) < 0:
            return False
    return True


def point_in_polygon(p, pts):
    """Strictly inside a simple counterclockwise polygon (ray casting)."""
    n = len(pts)
    for i in range(n):
        if on_segment(p, pts[i], pts[(i + 1) % n]):
            return False
    inside = False
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        if (a.im > p.im) != (b.im > p.im):
            x = a.re + (p.im - a.im) * (b.re - a.re) / (b.im - a.im)
            if x > p.re:
                inside = not inside
    return inside
