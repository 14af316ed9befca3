"""Turning numbers of polygonal curves and framing vectors.

Directions are tracked in the developed picture: after leaving through a
side the chart is multiplied by that side's crossing factor, so on a
dilation surface a straight chord keeps its direction across every
gluing.  The turning number of a closed path counts, with sign, how often
its tangent passes the direction (1, 0) while turning along the shorter
arc at each corner; it uses only sign tests on rational vectors.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import curves, errors, linalg
from .geometry import ONE, cross, dot, signed_turn_crossings
from .holonomy import Period, basis_size, solve_cochain
from .surface import TOL


@dataclass(frozen=True)
class DevelopedSegment:
    direction: object
    crossings: int


def _closing_target(surface, chi, u0):
    if chi.is_positive_real():
        return u0
    if not surface.exact:
        ang = math.atan2(float(chi.im), float(chi.re))
        if abs(ang) < TOL:
            return u0
    raise errors.NotDilation("holonomy around the path is not a positive real",
                             holonomy=[str(chi.re), str(chi.im)])


def _developed_directions(surface, path):
    F = ONE
    dirs = []
    for seg in path.segments:
        dirs.append(F * seg.direction)
        if seg.exit is not None:
            F = F * surface.crossing_factor(tuple(seg.exit))
    return dirs, F


def _turn(u, w, j):
    try:
        return signed_turn_crossings(u, w)
    except ValueError:
        raise errors.CuspAtCorner(f"path reverses direction before segment {j}",
                                  segment=j) from None


def develop_path(surface, path):
    """Developed direction of each segment, and the signed number of
    passes over the reference direction on the turn into it.

    For a closed path the entry of segment 0 is the turn from the last
    segment around the loop back into the first.
    """
    curves.check_path(surface, path)
    dirs, chi = _developed_directions(surface, path)
    out = []
    for j, u in enumerate(dirs):
        if j == 0:
            if path.closed:
                target = _closing_target(surface, chi, u)
                c = _turn(dirs[-1], target, 0)
            else:
                c = 0
        else:
            c = _turn(dirs[j - 1], u, j)
        out.append(DevelopedSegment(u, c))
    return out


def turning_number(surface, path):
    if not path.closed:
        raise errors.NotClosed("turning number needs a closed path")
    return sum(d.crossings for d in develop_path(surface, path))


def _angle(u, w):
    return math.atan2(float(cross(u, w)), float(dot(u, w)))


def twisted_turning(surface, path, theta):
    """Turning number, as a float angle sum, for the structure whose charts
    are additionally rotated by ``theta[k]`` turns on crossing pairing k.

    Corners contribute their shorter-arc angle; crossings contribute
    their full rotation.  This is an independent floating-point route to
    the turning number and is not used for any exact output.
    """
    curves.check_path(surface, path)
    if not path.closed:
        raise errors.NotClosed("turning number needs a closed path")
    dirs, chi = _developed_directions(surface, path)
    total = 0.0
    for j in range(1, len(dirs)):
        total += _angle(dirs[j - 1], dirs[j])
    total += _angle(dirs[-1], _closing_target(surface, chi, dirs[0]))
    total /= 2 * math.pi
    for k, s in curves.path_steps(surface, path):
        total += s * float(theta[k])
    return total


def boundary_turning(surface, basis=None):
    """Turning numbers r_i of small positive loops around the marked points.

    Computed from the loops themselves and checked against Re(m_i) + 1.
    """
    out = []
    for c in surface.marked:
        cone = surface.cones[c]
        if surface.exact:
            expected = cone.angle_turns
        else:
            expected = round(cone.angle_turns)
            if abs(cone.angle_turns - expected) > TOL:
                raise errors.NotDilation("cone angle is not a multiple of 2*pi",
                                         vertex_class=c)
        r = turning_number(surface, curves.puncture_path(surface, c))
        if r != expected:
            raise errors.InternalInvariantError(
                "turning of a puncture loop disagrees with its cone angle", vertex_class=c)
        out.append(int(r))
    return tuple(out)


@dataclass(frozen=True)
class Framing:
    genus: int
    n: int
    tau: tuple
    r: tuple

    def __post_init__(self):
        object.__setattr__(self, "tau", tuple(int(x) for x in self.tau))
        object.__setattr__(self, "r", tuple(int(x) for x in self.r))
        if len(self.tau) != 2 * self.genus or len(self.r) != self.n:
            raise errors.BasisMismatch("framing vector has the wrong shape")

    def satisfies_poincare_hopf(self):
        return sum(self.r) == 2 * self.genus + self.n - 2

    @property
    def kappa(self):
        return tuple(x - 1 for x in self.r)


def _same_class(surface, path_walk, basis_walk):
    d = [a - b for a, b in zip(curves.crossing_vector(surface, path_walk),
                               curves.crossing_vector(surface, basis_walk))]
    if not any(d):
        return True
    marked = set(surface.marked)
    links = [curves.crossing_vector(surface, curves.puncture_walk(surface, c))
             for c in range(len(surface.vertex_classes)) if c not in marked]
    if not links:
        return False
    x = linalg.solve(linalg.transpose(links), d)
    return x is not None and all(v.denominator == 1 for v in x)


def framing_vector(surface, basis, representatives=None):
    """Turning numbers of curves representing the symplectic basis, with
    the boundary turning numbers."""
    reps = basis.representatives if representatives is None else tuple(representatives)
    if len(reps) != len(basis.symplectic):
        raise errors.RepresentativeClassMismatch("one representative per symplectic loop")
    tau = []
    for j, (rep, walk) in enumerate(zip(reps, basis.symplectic)):
        curves.check_path(surface, rep)
        if not _same_class(surface, curves.path_steps(surface, rep), walk):
            raise errors.RepresentativeClassMismatch(
                f"representative {j} is not in the class of basis loop {j}", loop=j)
        tau.append(turning_number(surface, rep))
    return Framing(surface.genus, surface.n, tau, boundary_turning(surface))


def integral_action(f, c):
    """Add an integral cocycle, given by its values on the basis loops
    (or on the symplectic loops only), to the framing."""
    c = list(c)
    g2 = 2 * f.genus
    if len(c) not in (g2, basis_size(f.genus, f.n)):
        raise errors.BasisMismatch("cocycle does not fit the basis")
    if any(Fraction(x).denominator != 1 for x in c):
        raise errors.NonIntegralPeriods("cocycle values must be integers")
    if any(c[g2:]):
        raise errors.CocycleMovesBoundary("cocycle is nonzero on a puncture loop")
    return Framing(f.genus, f.n, [t + int(x) for t, x in zip(f.tau, c)], f.r)


def framing_difference(f1, f2):
    """The unique cocycle ``c`` with ``integral_action(f2, c) == f1``."""
    if (f1.genus, f1.n, f1.r) != (f2.genus, f2.n, f2.r):
        raise errors.SignatureMismatch("framings have different boundary data")
    return tuple(a - b for a, b in zip(f1.tau, f2.tau)) + (0,) * max(f1.n - 1, 0)


@dataclass(frozen=True)
class TwistOffset:
    """Change of turning number on each basis loop under an exponential
    action whose periods have imaginary parts in 2*pi*Z."""

    genus: int
    n: int
    offsets: tuple

    def __call__(self, loop):
        return self.offsets[loop]

    def __add__(self, other):
        return TwistOffset(self.genus, self.n,
                           tuple(a + b for a, b in zip(self.offsets, other.offsets)))

    def apply(self, f):
        g2 = 2 * f.genus
        tau = [t + o for t, o in zip(f.tau, self.offsets[:g2])]
        punct = self.offsets[g2:]
        r = list(f.r)
        for j, o in enumerate(punct):
            r[j] += o
        if r:
            r[-1] -= sum(punct)
        return Framing(f.genus, f.n, tau, r)


def _turns_of(v):
    if isinstance(v, Period):
        t = v.turn
        if isinstance(t, (Fraction, int)):
            return Fraction(t) / 2
        return float(t) / 2
    return float(v) / (2 * math.pi)


def twist_framing(surface, im_periods):
    """Offsets ``loop -> im_period(loop) / 2pi`` for a dilation-preserving
    exponential action.  ``im_periods`` is a :class:`PeriodVector`, a list
    of :class:`Period`, or a list of real imaginary parts."""
    vals = getattr(im_periods, "values", im_periods)
    size = basis_size(surface.genus, surface.n)
    if len(vals) != size:
        raise errors.BasisMismatch(f"expected {size} periods, got {len(vals)}")
    offsets = []
    for j, v in enumerate(vals):
        t = _turns_of(v)
        if isinstance(t, Fraction):
            if t.denominator != 1:
                raise errors.NonIntegralPeriods(f"period {j} is not in 2*pi*i*Z", loop=j)
            offsets.append(int(t))
        else:
            k = round(t)
            if abs(t - k) > TOL:
                raise errors.NonIntegralPeriods(f"period {j} is not in 2*pi*i*Z", loop=j)
            offsets.append(int(k))
    return TwistOffset(surface.genus, surface.n, tuple(offsets))


def twist_cochain(surface, basis, offset):
    """Rotation per pairing, in turns, realising a twist offset."""
    return solve_cochain(surface, basis, offset.offsets)


def twisted_framing(surface, basis, offset):
    """Float turning numbers of the basis representatives on the twisted
    structure."""
    theta = twist_cochain(surface, basis, offset)
    reps = list(basis.representatives) + list(basis.puncture_paths[:max(surface.n - 1, 0)])
    return [twisted_turning(surface, rep, theta) for rep in reps]


def concat_turning(tau_a, tau_b):
    """Turning number of the oriented resolution of two simple closed
    curves meeting once transversally.

    Smoothing the crossing adds one left and one right quarter turn, so
    the result is additive; see the resolution oracle in the tests.
    """
    return tau_a + tau_b


def arf(f):
    """Arf invariant of the mod 2 quadratic form ``q = tau + 1``."""
    if any(x % 2 == 0 for x in f.r):
        raise errors.ArfUndefined("some boundary turning number is even")
    total = 0
    for i in range(f.genus):
        total += (f.tau[2 * i] + 1) * (f.tau[2 * i + 1] + 1)
    return total % 2
