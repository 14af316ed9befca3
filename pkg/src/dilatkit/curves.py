"""Polygonal curves on a glued surface.

A :class:`CurvePath` is a chain of straight chords, each inside a single
polygon.  A chord either ends on a side, in which case the path continues
from the glued image of its endpoint in the partner polygon, or ends at an
interior point where the next chord of the same polygon begins.

Closed walks in the dual graph (sequences of steps ``(pairing, sign)``,
sign +1 for leaving through the first side of the pairing) are realised
as chord paths by :func:`embedded_realisation`.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from . import errors
from .geometry import (
    Qi, cross, dot, in_open_segment, is_convex, left_normal, on_segment, orient,
    point_in_polygon,
)

_MAX_SLOT_ASSIGNMENTS = 20000


@dataclass(frozen=True)
class Segment:
    polygon: int
    start: Qi
    end: Qi
    exit: tuple = None

    @property
    def direction(self):
        return self.end - self.start


@dataclass(frozen=True)
class CurvePath:
    segments: tuple
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))

    def __len__(self):
        return len(self.segments)


def _side_points(surface, side):
    p, e = side
    poly = surface.polygons[p]
    return poly[e], poly[(e + 1) % len(poly)]


@lru_cache(maxsize=256)
def _convex(poly):
    return is_convex(poly)


def _in_closed_polygon(pt, poly):
    n = len(poly)
    if _convex(poly):
        return all(orient(poly[i], poly[(i + 1) % n], pt) >= 0 for i in range(n))
    if any(on_segment(pt, poly[i], poly[(i + 1) % n]) for i in range(n)):
        return True
    return point_in_polygon(pt, poly)


def check_path(surface, path):
    """Raise if ``path`` is not a valid chord path on ``surface``."""
    segs = path.segments
    if not segs:
        raise errors.PathError("path has no segments")
    nf = len(surface.polygons)
    for j, seg in enumerate(segs):
        if not 0 <= seg.polygon < nf:
            raise errors.PathError(f"segment {j} names polygon {seg.polygon}", segment=j)
        poly = surface.polygons[seg.polygon]
        if seg.start == seg.end:
            raise errors.PathError(f"segment {j} has zero length", segment=j)
        for v in poly:
            if v == seg.start or v == seg.end or in_open_segment(v, seg.start, seg.end):
                raise errors.PathThroughVertex(
                    f"segment {j} meets a vertex of polygon {seg.polygon}", segment=j)
        # a convex polygon contains the chord once it contains both ends
        probes = (seg.start, seg.end) if _convex(poly) else \
            (seg.start, seg.end, (seg.start + seg.end) / 2)
        for pt in probes:
            if not _in_closed_polygon(pt, poly):
                raise errors.PathError(f"segment {j} leaves polygon {seg.polygon}", segment=j)
        last = j == len(segs) - 1
        if last and not path.closed:
            if seg.exit is not None:
                a, b = _side_points(surface, seg.exit)
                if not in_open_segment(seg.end, a, b):
                    raise errors.PathError(f"segment {j} does not end on its exit side")
            continue
        nxt = segs[(j + 1) % len(segs)]
        if seg.exit is None:
            if nxt.polygon != seg.polygon or nxt.start != seg.end:
                raise errors.PathError(f"segments {j} and {j + 1} do not join", segment=j)
            continue
        side = tuple(seg.exit)
        if side not in surface.side_index or side[0] != seg.polygon:
            raise errors.PathError(f"segment {j} exits through a side of another polygon")
        a, b = _side_points(surface, side)
        if not in_open_segment(seg.end, a, b):
            raise errors.PathError(f"segment {j} does not end on its exit side", segment=j)
        image = surface.cross_side(side, seg.end)
        if nxt.polygon != surface.partner(side)[0] or nxt.start != image:
            raise errors.PathError(
                f"segment {j} exit does not match the next segment under the gluing", segment=j)
    return True


def path_steps(surface, path):
    """Dual-graph walk traced by the path."""
    return tuple(surface.step_of_side(tuple(s.exit)) for s in path.segments
                 if s.exit is not None)


def crossing_vector(surface, steps):
    c = [0] * len(surface.pairings)
    for k, s in steps:
        c[k] += s
    return tuple(c)


def reverse_path(surface, path):
    segs = path.segments
    out = []
    n = len(segs)
    for j in range(n - 1, -1, -1):
        seg = segs[j]
        if j > 0 or path.closed:
            prev = segs[(j - 1) % n]
            exit_ = surface.partner(tuple(prev.exit)) if prev.exit is not None else None
        else:
            exit_ = None
        out.append(Segment(seg.polygon, seg.end, seg.start, exit_))
    return CurvePath(out, path.closed)


def rotate_path(path, k):
    """Same closed path started at segment ``k``."""
    segs = path.segments
    k %= len(segs)
    return CurvePath(segs[k:] + segs[:k], path.closed)


def subdivide_path(path, parts=2):
    """Split every segment into ``parts`` collinear pieces."""
    out = []
    for seg in path.segments:
        d = seg.end - seg.start
        pts = [seg.start + d * Qi(Fraction(i, parts)) for i in range(parts + 1)]
        for i in range(parts):
            last = i == parts - 1
            out.append(Segment(seg.polygon, pts[i], pts[i + 1], seg.exit if last else None))
    return CurvePath(out, path.closed)


# -- walks -------------------------------------------------------------------

def walk_polygons(surface, walk):
    """Polygon in which each step starts."""
    return [surface.side_of_step(st)[0] for st in walk]


def is_closed_walk(surface, walk):
    if not walk:
        return False
    for st, nxt in zip(walk, walk[1:] + walk[:1]):
        side = surface.side_of_step(st)
        if surface.partner(side)[0] != surface.side_of_step(nxt)[0]:
            return False
    return True


def inverse_walk(walk):
    return tuple((k, -s) for k, s in reversed(walk))


def canonical_rotation(walk):
    n = len(walk)
    return min(tuple(walk[i:] + walk[:i]) for i in range(n))


def _point_on_first_side(surface, k, t):
    s1 = surface.pairings[k][0]
    a, b = _side_points(surface, s1)
    return a + (b - a) * Qi(t)


def _side_param(surface, side, pt):
    a, b = _side_points(surface, side)
    d = b - a
    return dot(pt - a, d) / d.norm2()


def _chords_cross(x1, y1, x2, y2):
    def between(z):
        if x1 < y1:
            return x1 < z < y1
        return z > x1 or z < y1
    return between(x2) != between(y2)


def _slot_params(m, offset):
    return [Fraction(2 * i + 1, 2 * m) + offset for i in range(m)]


def _walk_chords(surface, walk, params):
    """Chord endpoints per polygon for a slot assignment.

    ``params[j]`` is the first-side parameter of crossing j.  Returns a
    list of (polygon, entry point, exit point, exit side).
    """
    n = len(walk)
    exits, entries = [], []
    for j, (k, s) in enumerate(walk):
        p1 = _point_on_first_side(surface, k, params[j])
        side = surface.side_of_step((k, s))
        if s > 0:
            exit_pt = p1
        else:
            exit_pt = surface.cross_side(surface.pairings[k][0], p1)
        exits.append((side, exit_pt))
        entries.append(surface.cross_side(side, exit_pt))
    chords = []
    for j in range(n):
        side, exit_pt = exits[j]
        chords.append((side[0], entries[j - 1], exit_pt, side))
    return chords


def _boundary_key(surface, polygon, pt):
    poly = surface.polygons[polygon]
    for e in range(len(poly)):
        a, b = poly[e], poly[(e + 1) % len(poly)]
        if in_open_segment(pt, a, b):
            return (e, _side_param(surface, (polygon, e), pt))
    return None


def _chord_keys(surface, chords):
    out = []
    for p, a, b, _ in chords:
        out.append((p, _boundary_key(surface, p, a), _boundary_key(surface, p, b)))
    return out


def _crossings_between(surface, chords1, chords2, same=False):
    """Signed transverse crossings between two chord lists."""
    keys1 = _chord_keys(surface, chords1)
    keys2 = keys1 if same else _chord_keys(surface, chords2)
    total, count = 0, 0
    for i, (p, x1, y1) in enumerate(keys1):
        for j, (q, x2, y2) in enumerate(keys2):
            if p != q or (same and j <= i):
                continue
            if len({x1, y1, x2, y2}) < 4:
                if same:
                    count += 1
                    continue
                raise errors.InternalInvariantError("chords share an endpoint")
            if _chords_cross(x1, y1, x2, y2):
                c1, c2 = chords1[i], chords2[j]
                sgn = cross(c1[2] - c1[1], c2[2] - c2[1])
                total += 1 if sgn > 0 else -1
                count += 1
    return total, count


def _slot_assignments(walk, offset):
    by_pairing = {}
    for j, (k, _) in enumerate(walk):
        by_pairing.setdefault(k, []).append(j)
    keys = sorted(by_pairing)
    perms = [itertools.permutations(range(len(by_pairing[k]))) for k in keys]
    for choice in itertools.product(*perms):
        params = [None] * len(walk)
        for k, perm in zip(keys, choice):
            slots = _slot_params(len(by_pairing[k]), offset)
            for j, slot in zip(by_pairing[k], perm):
                params[j] = slots[slot]
        yield params


def all_convex(surface):
    return all(is_convex(poly) for poly in surface.polygons)


def embedded_realisation(surface, walk, offset=Fraction(0)):
    """Simple chord path realising a closed walk, or None.

    Crossing points sit at parameters (2i+1)/2m (shifted by ``offset``)
    along the first side of each pairing; the search runs over the order
    in which the crossings of each pairing use these slots.  Only convex
    polygons are supported, where chords cross iff their endpoints
    interleave along the boundary.
    """
    if not all_convex(surface):
        return None
    walk = tuple(walk)
    for tries, params in enumerate(_slot_assignments(walk, offset)):
        if tries >= _MAX_SLOT_ASSIGNMENTS:
            break
        chords = _walk_chords(surface, walk, params)
        if any(a == b for _, a, b, _ in chords):
            continue
        _, count = _crossings_between(surface, chords, chords, same=True)
        if count == 0:
            return chords_to_path(chords)
    return None


def chords_to_path(chords):
    return CurvePath([Segment(p, a, b, side) for p, a, b, side in chords], True)


def path_chords(path):
    """Chords of a path made only of side-to-side segments."""
    out = []
    for seg in path.segments:
        out.append((seg.polygon, seg.start, seg.end, seg.exit))
    return out


def max_multiplicity(walks):
    best = 1
    for w in walks:
        counts = {}
        for k, _ in w:
            counts[k] = counts.get(k, 0) + 1
        if counts:
            best = max(best, max(counts.values()))
    return best


def geometric_intersection(surface, walk1, walk2):
    """Signed count of transverse crossings between simple realisations of
    two closed walks, the second shifted off the first."""
    n = max_multiplicity([walk1, walk2])
    delta = Fraction(1, 8 * n * n)
    c1 = embedded_realisation(surface, walk1)
    c2 = embedded_realisation(surface, walk2, offset=delta)
    if c1 is None or c2 is None:
        raise errors.BasisNotFound("walk has no embedded realisation")
    total, _ = _crossings_between(surface, path_chords(c1), path_chords(c2))
    return total


# -- puncture loops ----------------------------------------------------------

PUNCTURE_EPS = Fraction(1, 4)


def puncture_path(surface, vertex_class, eps=PUNCTURE_EPS):
    """Small positively oriented loop around a vertex class.

    In each corner it joins the point at parameter ``eps`` on the
    outgoing edge to the point at ``1 - eps`` on the incoming edge; these
    points match across every gluing, so the loop closes up exactly.
    """
    segs = []
    eps = Qi(eps)
    for p, i in surface.vertex_classes[vertex_class]:
        poly = surface.polygons[p]
        m = len(poly)
        v = poly[i]
        d_out = poly[(i + 1) % m] - v
        d_in = poly[(i - 1) % m] - v
        a = v + d_out * eps
        b = v + d_in * eps
        side = (p, (i - 1) % m)
        c = cross(d_out, d_in)
        if c > 0:
            segs.append(Segment(p, a, b, side))
            continue
        if c < 0:
            w = v - (d_out + d_in) * eps * Qi(Fraction(1, 4))
        else:
            w = v + left_normal(d_out) * eps * Qi(Fraction(1, 4))
        segs.append(Segment(p, a, w, None))
        segs.append(Segment(p, w, b, side))
    return CurvePath(segs, True)


def puncture_walk(surface, vertex_class):
    return tuple(surface.step_of_side((p, (i - 1) % len(surface.polygons[p])))
                 for p, i in surface.vertex_classes[vertex_class])
