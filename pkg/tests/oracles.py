"""Independent reference computations used by the tests.

Nothing here calls the library's corner-cycle, intersection-form or
crossing-count code; each oracle recomputes its quantity another way
(union-find on vertices, floating angle sums, brute force over vectors).
"""

import cmath
import math
from fractions import Fraction
from itertools import product

from dilatkit.curves import CurvePath, Segment
from dilatkit.geometry import Qi


# -- topology and cone angles -----------------------------------------------

def vertex_classes_union_find(spec):
    """Vertex identification by following gluings of edge endpoints."""
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    for p, poly in enumerate(spec.polygons):
        for i in range(len(poly)):
            find((p, i))
    for (p, e), (q, f) in spec.pairings:
        m, k = len(spec.polygons[p]), len(spec.polygons[q])
        union((p, e), (q, (f + 1) % k))
        union((p, (e + 1) % m), (q, f))
    classes = {}
    for x in list(parent):
        classes.setdefault(find(x), []).append(x)
    return sorted(sorted(v) for v in classes.values())


def interior_angle(poly, i):
    v = complex(poly[i])
    a = complex(poly[(i + 1) % len(poly)]) - v
    b = complex(poly[(i - 1) % len(poly)]) - v
    ang = cmath.phase(b / a)
    return ang if ang > 0 else ang + 2 * math.pi


def angle_turns_float(spec):
    """Total angle / 2pi per vertex class, by summing interior angles."""
    out = []
    for cls in vertex_classes_union_find(spec):
        total = sum(interior_angle(spec.polygons[p], i) for p, i in cls)
        out.append((cls[0], total / (2 * math.pi)))
    return out


def genus_oracle(spec):
    V = len(vertex_classes_union_find(spec))
    chi = V - len(spec.pairings) + len(spec.polygons)
    return (2 - chi) // 2


def float_gluing_derivatives(spec):
    out = []
    for (p, e), (q, f) in spec.pairings:
        P, Q = spec.polygons[p], spec.polygons[q]
        src = complex(P[(e + 1) % len(P)]) - complex(P[e])
        dst = complex(Q[f]) - complex(Q[(f + 1) % len(Q)])
        out.append(dst / src)
    return out


def link_factor_float(spec, cls):
    """Holonomy of a small loop around a vertex class, developed in floats
    by walking around the vertex through the identified corners."""
    a = float_gluing_derivatives(spec)
    side_of = {}
    for k, (s1, s2) in enumerate(spec.pairings):
        side_of[s1] = (k, True, s2)
        side_of[s2] = (k, False, s1)
    start = cls[0]
    corner = start
    z = 1 + 0j
    for _ in range(4 * len(spec.pairings) + 4):
        p, i = corner
        side = (p, (i - 1) % len(spec.polygons[p]))
        k, first, partner = side_of[side]
        z *= (1 / a[k]) if first else a[k]
        corner = partner
        if corner == start:
            return z
    raise AssertionError("corner walk did not close")


# -- turning numbers ---------------------------------------------------------

def turning_float(spec, path):
    """Turning number as a floating sum of corner angles, developing the
    chart with float gluing derivatives."""
    a = float_gluing_derivatives(spec)
    side_of = {}
    for k, (s1, s2) in enumerate(spec.pairings):
        side_of[s1] = (k, True)
        side_of[s2] = (k, False)
    F = 1 + 0j
    dirs = []
    for seg in path.segments:
        dirs.append(F * (complex(seg.end) - complex(seg.start)))
        if seg.exit is not None:
            k, first = side_of[tuple(seg.exit)]
            F *= (1 / a[k]) if first else a[k]
    total = 0.0
    for j in range(1, len(dirs)):
        total += cmath.phase(dirs[j] / dirs[j - 1])
    total += cmath.phase((F * dirs[0]) / dirs[-1])
    return total / (2 * math.pi)


def with_kinks(path, index, kinks, eps=Fraction(1, 8)):
    """Insert ``|kinks|`` small square loops into segment ``index``; each
    adds one full turn of the tangent, counterclockwise for positive
    ``kinks``.  The homotopy class of the path is unchanged."""
    if kinks == 0:
        return path
    segs = list(path.segments)
    seg = segs[index]
    d = seg.end - seg.start
    n = Qi(-d.im, d.re) if kinks > 0 else Qi(d.im, -d.re)
    e = Qi(eps)
    count = abs(kinks)
    pieces = []
    cur = seg.start
    for j in range(count):
        centre = seg.start + d * Qi(Fraction(2 * j + 1, 2 * count))
        step = e / Qi(count)
        A = centre + d * step
        B = A + n * step
        C = B - d * step * Qi(2)
        D = C - n * step
        pieces += [Segment(seg.polygon, cur, A), Segment(seg.polygon, A, B),
                   Segment(seg.polygon, B, C), Segment(seg.polygon, C, D)]
        cur = D
    pieces.append(Segment(seg.polygon, cur, seg.end, seg.exit))
    return CurvePath(segs[:index] + pieces + segs[index + 1:], path.closed)


# -- square torus curves -----------------------------------------------------

HALF = Fraction(1, 2)


def horizontal_core():
    return CurvePath([Segment(0, Qi(0, HALF), Qi(1, HALF), (0, 1))])


def vertical_core():
    return CurvePath([Segment(0, Qi(HALF, 0), Qi(HALF, 1), (0, 2))])


def resolved_curve(tau_a, tau_b, delta=Fraction(1, 8)):
    """Oriented smoothing, at their single crossing, of the horizontal and
    vertical core curves of the unit square torus carrying ``tau_a`` and
    ``tau_b`` extra tangent turns.

    Follows a eastwards to just before the crossing, cuts the corner onto
    b northwards, goes once around b, cuts the corner back onto a and
    finishes a.
    """
    h, q = HALF, delta
    segs = [
        Segment(0, Qi(0, h), Qi(h - q, h)),             # a, western half
        Segment(0, Qi(h - q, h), Qi(h, h + q)),         # corner onto b
        Segment(0, Qi(h, h + q), Qi(h, 1), (0, 2)),     # b to the top
        Segment(0, Qi(h, 0), Qi(h, h - q)),             # b from the bottom
        Segment(0, Qi(h, h - q), Qi(h + q, h)),         # corner back onto a
        Segment(0, Qi(h + q, h), Qi(1, h), (0, 1)),     # a, eastern half
    ]
    path = CurvePath(segs)
    path = with_kinks(path, 5, tau_a)
    path = with_kinks(path, 3, tau_b)
    return path


def kinked_core(which, tau):
    base = horizontal_core() if which == "a" else vertical_core()
    return with_kinks(base, 0, tau)


# -- algebra -----------------------------------------------------------------

def totient_bruteforce(N):
    return sum(1 for k in range(1, N + 1) if math.gcd(k, N) == 1)


def arf_majority(tau):
    """Arf invariant as the majority value of q = tau + 1, extended to all
    of (Z/2)^{2g} by q(x + y) = q(x) + q(y) + x.y."""
    g = len(tau) // 2
    q_basis = [(t + 1) % 2 for t in tau]

    def form(i, j):
        if i // 2 != j // 2 or i == j:
            return 0
        return 1

    counts = [0, 0]
    for x in product((0, 1), repeat=2 * g):
        val = sum(x[i] * q_basis[i] for i in range(2 * g))
        for i in range(2 * g):
            for j in range(i + 1, 2 * g):
                val += x[i] * x[j] * form(i, j)
        counts[val % 2] += 1
    return 0 if counts[0] > counts[1] else 1


def segment_crossings(path1, path2):
    """Signed transverse crossings of two chord paths, from direct segment
    intersection tests in each polygon."""
    total = 0
    for s in path1.segments:
        for t in path2.segments:
            if s.polygon != t.polygon:
                continue
            a, b, c, d = s.start, s.end, t.start, t.end

            def orient(p, q, r):
                v = (q.re - p.re) * (r.im - p.im) - (q.im - p.im) * (r.re - p.re)
                return (v > 0) - (v < 0)
            if orient(a, b, c) * orient(a, b, d) < 0 and orient(c, d, a) * orient(c, d, b) < 0:
                u, w = b - a, d - c
                total += 1 if u.re * w.im - u.im * w.re > 0 else -1
    return total
