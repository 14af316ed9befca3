"""Named surface families and random perturbations of them."""

import math
import random
from fractions import Fraction

from . import errors
from .geometry import Qi, cross
from .surface import EXACT, FLOAT, SurfaceSpec


def _F(x):
    return Fraction(x)


def _rect(w, h, x0=0, y0=0):
    return [Qi(x0, y0), Qi(x0 + w, y0), Qi(x0 + w, y0 + h), Qi(x0, y0 + h)]


def square_torus(forget_removable=False):
    """Unit square, left/right and top/bottom glued by translations."""
    return SurfaceSpec([_rect(1, 1)], [((0, 0), (0, 2)), ((0, 1), (0, 3))],
                       forget_removable=forget_removable)


def _rational_unit(theta, max_den=64):
    # Point on the unit circle from the tangent half-angle substitution.
    if abs(theta - math.pi / 2) < 1e-15:
        return Qi(0, 1)
    t = Fraction(math.tan(theta / 2)).limit_denominator(max_den)
    d = 1 + t * t
    return Qi((1 - t * t) / d, 2 * t / d)


def regular_2n_gon(k, forget_removable=False):
    """Centrally symmetric equilateral 2k-gon with opposite sides glued by
    translations.  Side directions are rational points of the unit circle
    near angle pi*j/k, so the polygon is only approximately regular."""
    k = int(k)
    if k < 2:
        raise errors.ParameterOutOfRange("regular_2n_gon needs k >= 2", k=k)
    dirs = [_rational_unit(math.pi * j / k) for j in range(k)]
    for u, v in zip(dirs, dirs[1:]):
        if cross(u, v) <= 0:
            raise errors.ParameterOutOfRange("k too large for the rational direction grid", k=k)
    edges = dirs + [-u for u in dirs]
    pts, z = [], Qi(0)
    for e in edges:
        pts.append(z)
        z = z + e
    pairings = [((0, j), (0, j + k)) for j in range(k)]
    return SurfaceSpec([pts], pairings, forget_removable=forget_removable)


def octagon(forget_removable=False):
    return regular_2n_gon(4, forget_removable)


def chamber_surface(lam=2, forget_removable=False):
    """Two chambers: the unit square and a ``lam`` by 1 rectangle.

    The vertical sides are glued by translations; the top of each chamber
    is glued to the bottom of the other, which forces derivatives ``lam``
    and ``1/lam``.  The result is a torus with two marked points of
    dilation factors ``lam**2`` and ``lam**-2``.
    """
    lam = _F(lam)
    if lam <= 0:
        raise errors.ParameterOutOfRange("lambda must be positive", lam=str(lam))
    polys = [_rect(1, 1), _rect(lam, 1)]
    pairings = [((0, 1), (1, 3)), ((1, 1), (0, 3)), ((0, 2), (1, 0)), ((1, 2), (0, 0))]
    return SurfaceSpec(polys, pairings, forget_removable=forget_removable)


def _exactish(x):
    return Fraction(x).limit_denominator(10 ** 15)


def troyanov_family(t):
    """Equilateral triangle with a congruent isosceles triangle of apex
    angle ``2*pi*t`` on each side; outer legs glued by rotations.

    Genus one with two cone points: the common apex class (angle 3t turns)
    and the class of the equilateral triangle's vertices.  Needs
    ``0 < t < 1/2`` so the isosceles triangles are nondegenerate.
    Float mode, since the coordinates are only rational approximations.
    """
    t = _F(t)
    if not 0 < t < Fraction(1, 2):
        raise errors.ParameterOutOfRange("t must lie in (0, 1/2)", t=str(t))
    h = 0.5 / math.tan(math.pi * float(t))
    s3 = math.sqrt(3)
    A, B, C = Qi(0), Qi(1), Qi(Fraction(1, 2), _exactish(s3 / 2))

    def apex(p, q):
        # outward from the counterclockwise triangle A B C, i.e. to the right of p->q
        mid = (p + q) / 2
        d = q - p
        right = Qi(d.im, -d.re)
        return mid + right * Qi(_exactish(h))

    polys = [
        [A, B, C],
        [A, apex(A, B), B],
        [B, apex(B, C), C],
        [C, apex(C, A), A],
    ]
    pairings = [
        ((0, 0), (1, 2)), ((0, 1), (2, 2)), ((0, 2), (3, 2)),
        ((1, 0), (2, 1)), ((1, 1), (3, 0)), ((2, 0), (3, 1)),
    ]
    return SurfaceSpec(polys, pairings, mode=FLOAT)


GENERATORS = {
    "square_torus": square_torus,
    "regular_2n_gon": regular_2n_gon,
    "octagon": octagon,
    "chamber": chamber_surface,
    "chamber_surface": chamber_surface,
    "troyanov": troyanov_family,
    "troyanov_family": troyanov_family,
}


def generate(name, *params):
    try:
        gen = GENERATORS[name]
    except KeyError:
        raise errors.UnknownGenerator(f"unknown generator {name!r}",
                                      known=sorted(GENERATORS)) from None
    return gen(*params)


def default_corpus():
    """(label, spec) pairs used by reports and the acceptance suite."""
    out = [("square_torus", square_torus()),
           ("hexagon", regular_2n_gon(3)),
           ("octagon", octagon()),
           ("decagon", regular_2n_gon(5))]
    for lam in ("3/2", "2", "3"):
        out.append((f"chamber_{lam.replace('/', '_')}", chamber_surface(Fraction(lam))))
    for t in ("1/6", "1/4", "1/3"):
        out.append((f"troyanov_{t.replace('/', '_')}", troyanov_family(Fraction(t))))
    return out


def _rand_positive(rng, lo=1, hi=9):
    return Fraction(rng.randint(lo, hi), rng.randint(lo, hi))


def perturb(spec, rng):
    """A random gluing-compatible deformation of ``spec``.

    A global orientation-preserving rational linear map is applied to every
    polygon, then each polygon is scaled and translated independently.
    Derivatives of pairings between different polygons pick up the ratio
    of scales, so translation surfaces become genuine dilation surfaces.
    """
    if isinstance(rng, int):
        rng = random.Random(rng)
    while True:
        m = [Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(4)]
        m[0] += 2
        m[3] += 2
        if m[0] * m[3] - m[1] * m[2] > 0:
            break

    def lin(z):
        return Qi(m[0] * z.re + m[1] * z.im, m[2] * z.re + m[3] * z.im)

    polys = []
    for poly in spec.polygons:
        s = _rand_positive(rng)
        shift = Qi(rng.randint(-5, 5), rng.randint(-5, 5))
        polys.append([lin(v) * Qi(s) + shift for v in poly])
    return SurfaceSpec(polys, spec.pairings, spec.forget_removable, spec.mode)


def random_dilation_surfaces(count, seed=0):
    """``count`` perturbations of the exact corpus surfaces, round robin."""
    rng = random.Random(seed)
    base = [s for _, s in default_corpus() if s.mode == EXACT]
    return [perturb(base[i % len(base)], rng) for i in range(count)]
