r"""Polygon-gluing presentations of affine and dilation surfaces.

A surface is a list of counterclockwise polygons with exact rational
vertices together with a perfect matching of their edges.  The gluing map
of a pairing ``(p, e) <-> (q, f)`` is the unique ``z -> a*z + b`` carrying
edge ``e`` of ``p`` traversed forward onto edge ``f`` of ``q`` traversed
backward, so it is always derived, never supplied.

Corners are indexed ``(polygon, i)`` with ``i`` the vertex index; corner
``(p, i)`` is the wedge between edge ``i`` (outgoing) and edge ``i - 1``
(incoming).  Sides are indexed ``(polygon, edge)``.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import errors
from .geometry import (
    ONE, Qi, arg, ccw_passes_reference, is_simple, signed_area2,
)

TOL = 1e-9
EXACT = "exact"
FLOAT = "float"


@dataclass(frozen=True)
class SurfaceSpec:
    polygons: tuple
    pairings: tuple
    forget_removable: bool = False
    mode: str = EXACT

    def __post_init__(self):
        polys = tuple(tuple(Qi.coerce(v) for v in poly) for poly in self.polygons)
        pairs = tuple(
            ((int(a[0]), int(a[1])), (int(b[0]), int(b[1]))) for a, b in self.pairings
        )
        object.__setattr__(self, "polygons", polys)
        object.__setattr__(self, "pairings", pairs)
        if self.mode not in (EXACT, FLOAT):
            raise errors.ParseError(f"unknown mode {self.mode!r}")

    def with_options(self, forget_removable=None, mode=None):
        return SurfaceSpec(
            self.polygons, self.pairings,
            self.forget_removable if forget_removable is None else forget_removable,
            self.mode if mode is None else mode,
        )

    def edge_vector(self, side):
        p, e = side
        poly = self.polygons[p]
        return poly[(e + 1) % len(poly)] - poly[e]


@dataclass(frozen=True)
class ConePoint:
    """Cone data of one vertex class.

    ``angle_turns`` is the total angle divided by 2*pi; ``factor`` is the
    holonomy of a small positive loop around the point (a positive rational
    in exact mode).  The complex order is ``angle_turns - 1 - i*ln(factor)/2pi``.
    """

    vertex_class: int
    angle_turns: object
    factor: object
    holonomy: object = field(default=None, compare=False, repr=False)

    @property
    def log_factor(self):
        return math.log(float(self.factor))

    @property
    def order_real(self):
        return self.angle_turns - 1

    @property
    def order(self):
        return complex(float(self.order_real), -self.log_factor / (2 * math.pi))

    @property
    def exact(self):
        return isinstance(self.angle_turns, Fraction)

    def is_removable(self):
        if self.exact:
            return self.angle_turns == 1 and self.factor == 1
        return abs(self.angle_turns - 1) < TOL and abs(self.log_factor) < TOL


@dataclass(frozen=True)
class GluingMap:
    a: Qi
    b: Qi

    def __call__(self, z):
        return self.a * z + self.b

    def inverse(self, z):
        return (z - self.b) / self.a


@dataclass(frozen=True, eq=False)
class DilationSurface:
    spec: SurfaceSpec
    gluing_maps: tuple
    vertex_classes: tuple
    cones: tuple
    genus: int
    marked: tuple

    @property
    def mode(self):
        return self.spec.mode

    @property
    def exact(self):
        return self.spec.mode == EXACT

    @property
    def n(self):
        return len(self.marked)

    @property
    def polygons(self):
        return self.spec.polygons

    @property
    def pairings(self):
        return self.spec.pairings

    @cached_property
    def side_index(self):
        """side -> (pairing index, True if it is the first side)."""
        out = {}
        for k, (s1, s2) in enumerate(self.spec.pairings):
            out[s1] = (k, True)
            out[s2] = (k, False)
        return out

    @cached_property
    def corner_class(self):
        out = {}
        for c, corners in enumerate(self.vertex_classes):
            for corner in corners:
                out[corner] = c
        return out

    def partner(self, side):
        k, first = self.side_index[side]
        s1, s2 = self.spec.pairings[k]
        return s2 if first else s1

    def cross_side(self, side, z):
        """Image of a point ``z`` of ``side`` in the partner polygon."""
        k, first = self.side_index[side]
        g = self.gluing_maps[k]
        return g(z) if first else g.inverse(z)

    def crossing_factor(self, side):
        """Multiplier applied to developed directions when leaving through
        ``side``; the product along a loop is its holonomy."""
        k, first = self.side_index[side]
        a = self.gluing_maps[k].a
        return ONE / a if first else a

    def step_of_side(self, side):
        """Dual-graph step (pairing, sign) for leaving a polygon through side."""
        k, first = self.side_index[side]
        return (k, 1 if first else -1)

    def side_of_step(self, step):
        """Side through which a step leaves its polygon."""
        k, s = step
        s1, s2 = self.spec.pairings[k]
        return s1 if s > 0 else s2

    def next_corner(self, corner):
        p, i = corner
        m = len(self.spec.polygons[p])
        return self.partner((p, (i - 1) % m))

    @property
    def marked_cones(self):
        return tuple(self.cones[c] for c in self.marked)


# -- validation --------------------------------------------------------------

def _side_repr(spec, side):
    p, e = side
    poly = spec.polygons[p]
    a, b = poly[e], poly[(e + 1) % len(poly)]
    return {"side": [p, e], "from": [str(a.re), str(a.im)], "to": [str(b.re), str(b.im)]}


def diagnose(spec):
    """Every violated invariant of ``spec``, as a list of exceptions."""
    problems = []
    for p, poly in enumerate(spec.polygons):
        if len(poly) < 3:
            problems.append(errors.NonSimplePolygon(
                f"polygon {p} has fewer than three vertices", polygon=p))
            continue
        bad = False
        for e in range(len(poly)):
            if spec.edge_vector((p, e)).is_zero():
                problems.append(errors.DegenerateEdge(
                    f"edge {e} of polygon {p} has zero length", **_side_repr(spec, (p, e))))
                bad = True
        if bad:
            continue
        if not is_simple(poly):
            problems.append(errors.NonSimplePolygon(f"polygon {p} is not simple", polygon=p))
        elif signed_area2(poly) <= 0:
            problems.append(errors.OrientationMismatch(
                f"polygon {p} is not counterclockwise", polygon=p))

    all_sides = {(p, e) for p, poly in enumerate(spec.polygons) for e in range(len(poly))}
    seen = {}
    for k, (s1, s2) in enumerate(spec.pairings):
        for s in (s1, s2):
            if s not in all_sides:
                problems.append(errors.UnmatchedEdge(
                    f"pairing {k} refers to nonexistent edge {list(s)}", pairing=k, side=list(s)))
                continue
            if s in seen:
                problems.append(errors.UnmatchedEdge(
                    f"edge {list(s)} appears in pairings {seen[s]} and {k}",
                    **_side_repr(spec, s)))
            else:
                seen[s] = k
        if s1 == s2:
            problems.append(errors.OrientationMismatch(
                f"pairing {k} glues edge {list(s1)} to itself", pairing=k))
    for s in sorted(all_sides - set(seen)):
        problems.append(errors.UnmatchedEdge(
            f"edge {list(s)} is not paired", **_side_repr(spec, s)))
    if problems:
        return problems

    for k, (s1, s2) in enumerate(spec.pairings):
        src, dst = spec.edge_vector(s1), spec.edge_vector(s2)
        a = -dst / src
        if spec.mode == EXACT and not a.is_positive_real():
            problems.append(errors.NotDilation(
                f"pairing {k} has derivative {a} which is not a positive real",
                pairing=k, derivative=[str(a.re), str(a.im)]))

    if not _connected(spec):
        problems.append(errors.NotConnected("the gluing graph is disconnected"))
    return problems


def _connected(spec):
    nf = len(spec.polygons)
    adj = {p: set() for p in range(nf)}
    for (p, _), (q, _) in spec.pairings:
        adj[p].add(q)
        adj[q].add(p)
    seen, stack = {0}, [0]
    while stack:
        for q in adj[stack.pop()]:
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return len(seen) == nf


def _gluing_map(spec, s1, s2):
    p, e = s1
    q, f = s2
    P, Q = spec.polygons[p], spec.polygons[q]
    start, end = P[e], P[(e + 1) % len(P)]
    tgt_start, tgt_end = Q[(f + 1) % len(Q)], Q[f]
    a = (tgt_end - tgt_start) / (end - start)
    b = tgt_start - a * start
    return GluingMap(a, b)


def build_surface(spec):
    """Validate ``spec`` and compute gluing maps, vertex classes, genus and
    cone data.  Raises the first violated invariant."""
    problems = diagnose(spec)
    if problems:
        raise problems[0]
    maps = tuple(_gluing_map(spec, s1, s2) for s1, s2 in spec.pairings)
    proto = DilationSurface(spec, maps, (), (), 0, ())

    corners = sorted((p, i) for p, poly in enumerate(spec.polygons) for i in range(len(poly)))
    classes, visited = [], set()
    for c0 in corners:
        if c0 in visited:
            continue
        cyc, c = [], c0
        while c not in visited:
            visited.add(c)
            cyc.append(c)
            c = proto.next_corner(c)
        if c != c0:
            raise errors.InternalInvariantError("corner cycle did not close", corner=list(c0))
        classes.append(tuple(cyc))

    V, E, F = len(classes), len(spec.pairings), len(spec.polygons)
    chi = V - E + F
    if chi > 2 or chi % 2:
        raise errors.InternalInvariantError(f"Euler characteristic {chi} is impossible")
    genus = (2 - chi) // 2

    cones = tuple(_cone_point(proto, c, cyc) for c, cyc in enumerate(classes))
    marked = tuple(c for c, cone in enumerate(cones)
                   if not (spec.forget_removable and cone.is_removable()))
    return DilationSurface(spec, maps, tuple(classes), cones, genus, marked)


def corner_directions(surface, corner):
    """(outgoing edge, reversed incoming edge) of a corner, in its polygon."""
    p, i = corner
    poly = surface.spec.polygons[p]
    v = poly[i]
    return poly[(i + 1) % len(poly)] - v, poly[(i - 1) % len(poly)] - v


def _cone_point(surface, index, cycle):
    # Rotate counterclockwise through each wedge, developing every corner
    # into the frame of the first one, and count passes over the positive
    # real axis.
    F = ONE
    passes = 0
    d0 = None
    for corner in cycle:
        d_out, d_in = corner_directions(surface, corner)
        u, w = F * d_out, F * d_in
        if d0 is None:
            d0 = u
        if ccw_passes_reference(u, w):
            passes += 1
        p, i = corner
        F = F * surface.crossing_factor((p, (i - 1) % len(surface.spec.polygons[p])))
    end = F * d0
    if surface.exact:
        if not F.is_positive_real():
            raise errors.InternalInvariantError(
                "vertex holonomy of a dilation surface is not positive", vertex_class=index)
        return ConePoint(index, Fraction(passes), F.re, holonomy=F)
    turns = passes + (arg(end) - arg(d0)) / (2 * math.pi)
    return ConePoint(index, turns, abs(F), holonomy=F)


# -- queries -----------------------------------------------------------------

def euler_data(s):
    V, E, F = len(s.vertex_classes), len(s.spec.pairings), len(s.spec.polygons)
    return V, E, F, s.genus


def cone_points(s):
    """Cone data of the marked points in canonical order."""
    return list(s.marked_cones)


def check_gauss_bonnet(s):
    """Orders of all cone points sum to 2g - 2.

    Exact mode compares integers and the product of link factors with 1;
    float mode uses the tolerance.
    """
    target = 2 * s.genus - 2
    if s.exact:
        total = sum(c.order_real for c in s.cones)
        prod = Fraction(1)
        for c in s.cones:
            prod *= c.factor
        return total == target and prod == 1
    total = sum(c.order for c in s.cones)
    return abs(total - target) < TOL


def require_gauss_bonnet(s):
    if not check_gauss_bonnet(s):
        raise errors.InternalInvariantError(
            "cone orders do not sum to 2g - 2; this is a bug", genus=s.genus)
    return True


def angle_total_turns(s):
    """Sum over polygons of (corners - 2)/2, the total angle in turns."""
    return sum(Fraction(len(poly) - 2, 2) for poly in s.spec.polygons)
