r"""Homology bases, holonomy characters and the exponential action.

Loops are closed walks in the dual graph of the presentation: a step
``(k, +1)`` leaves a polygon through the first side of pairing ``k`` and
``(k, -1)`` through the second.  Since every vertex class is removed, the
cycle space of the dual graph is :math:`H_1(X \setminus V)` and a loop's
class is its crossing vector.

Intersection numbers in :math:`H_1(X)` are computed from primal cycles
(cycles of polygon edges through the vertices).  A dual cycle ``c`` and a
primal cycle ``z`` pair by :math:`\langle c, z \rangle = \sum_k c_k z_k`,
where ``z_k`` counts the edge of pairing ``k`` oriented along its first
side.  Leaving a polygon through a side means crossing that edge from its
left to its right, which is +1 with the convention that the x axis meets
the y axis positively.

Holonomy bookkeeping is exact in dilation mode:

* :class:`CharValue` is ``modulus * exp(i*pi*angle)`` with the angle
  normalised to (-1, 1];
* :class:`Period` is ``log(base) + i*pi*turn``;
* :class:`Order` is ``re - i*log(rho)/(2*pi)``, so that
  ``exp(2*pi*i*m) = rho * exp(2*pi*i*re)``.

In float mode the same types hold floats and comparisons use ``TOL``.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import curves, errors, linalg
from .geometry import ONE
from .surface import TOL

MAX_WALK_LENGTH = 8
_SEARCH_BUDGET = 200000


def _is_exact(*xs):
    return all(isinstance(x, (Fraction, int)) for x in xs)


def _eq(a, b):
    if _is_exact(a, b):
        return a == b
    return abs(float(a) - float(b)) < TOL


def _log_eq(a, b):
    if _is_exact(a, b):
        return a == b
    return abs(math.log(float(a)) - math.log(float(b))) < TOL


def normalise_angle(a):
    """Representative of ``a`` modulo 2 in (-1, 1]."""
    return a - 2 * math.ceil((a - 1) / 2)


# -- value types -------------------------------------------------------------

@dataclass(frozen=True)
class CharValue:
    modulus: object
    angle: object = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "angle", normalise_angle(self.angle))

    @classmethod
    def from_qi(cls, z, exact):
        if exact:
            if not z.is_positive_real():
                raise errors.NotDilation(f"character value {z} is not a positive real")
            return cls(z.re, Fraction(0))
        w = complex(z)
        return cls(abs(w), math.atan2(w.imag, w.real) / math.pi)

    def __mul__(self, other):
        return CharValue(self.modulus * other.modulus, self.angle + other.angle)

    def close(self, other):
        if _is_exact(self.angle, other.angle):
            ang = self.angle == other.angle
        else:
            d = normalise_angle(float(self.angle) - float(other.angle))
            ang = abs(d) < TOL
        return _log_eq(self.modulus, other.modulus) and ang

    def is_one(self):
        return self.close(CharValue(Fraction(1)))

    def is_positive(self):
        if _is_exact(self.angle):
            return self.angle == 0
        return abs(self.angle) < TOL

    def is_unitary(self):
        return _log_eq(self.modulus, Fraction(1))

    @property
    def complex(self):
        return float(self.modulus) * complex(math.cos(math.pi * float(self.angle)),
                                             math.sin(math.pi * float(self.angle)))


@dataclass(frozen=True)
class Period:
    """``log(base) + i*pi*turn``; the turn is not reduced."""

    base: object = Fraction(1)
    turn: object = Fraction(0)

    def __add__(self, other):
        return Period(self.base * other.base, self.turn + other.turn)

    def __neg__(self):
        return Period(1 / Fraction(self.base) if _is_exact(self.base) else 1 / self.base,
                      -self.turn)

    def __sub__(self, other):
        return self + (-other)

    def exp(self):
        return CharValue(self.base, self.turn)

    def close(self, other):
        return _log_eq(self.base, other.base) and _eq(self.turn, other.turn)

    @property
    def complex(self):
        return complex(math.log(float(self.base)), math.pi * float(self.turn))

    @property
    def imag_over_2pi(self):
        return self.turn / 2


@dataclass(frozen=True)
class Order:
    """Complex order ``re - i*log(rho)/(2*pi)``; also used for residues."""

    re: object = Fraction(0)
    rho: object = Fraction(1)

    @classmethod
    def from_complex(cls, z):
        return cls(z.real, math.exp(-2 * math.pi * z.imag))

    @classmethod
    def from_cone(cls, cone):
        return cls(cone.order_real, cone.factor)

    def __add__(self, other):
        return Order(self.re + other.re, self.rho * other.rho)

    def __neg__(self):
        return Order(-self.re, 1 / Fraction(self.rho) if _is_exact(self.rho) else 1 / self.rho)

    def __sub__(self, other):
        return self + (-other)

    @property
    def imag(self):
        return -math.log(float(self.rho)) / (2 * math.pi)

    @property
    def complex(self):
        return complex(float(self.re), self.imag)

    def is_real(self):
        return _log_eq(self.rho, Fraction(1))

    def exp_2pi_i(self):
        return CharValue(self.rho, 2 * self.re)

    def as_period(self):
        """The period ``2*pi*i*self`` of a puncture loop."""
        return Period(self.rho, 2 * self.re)

    def close(self, other):
        return _eq(self.re, other.re) and _log_eq(self.rho, other.rho)


def _order_sum(orders):
    total = Order()
    for o in orders:
        total = total + o
    return total


# -- holonomy data -----------------------------------------------------------

@dataclass(frozen=True)
class HolonomyData:
    """Character values on a basis of 2g symplectic loops followed by the
    first n-1 puncture loops, together with the n cone orders."""

    genus: int
    chi: tuple
    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "chi", tuple(self.chi))
        object.__setattr__(self, "m", tuple(self.m))
        if len(self.chi) != basis_size(self.genus, len(self.m)):
            raise errors.BasisMismatch(
                f"{len(self.chi)} character values for genus {self.genus} with "
                f"{len(self.m)} points")

    @property
    def n(self):
        return len(self.m)

    def compatible(self):
        """Puncture values match the orders and the orders sum to 2g-2."""
        g2 = 2 * self.genus
        for j in range(max(self.n - 1, 0)):
            if not self.chi[g2 + j].close(self.m[j].exp_2pi_i()):
                return False
        if self.n == 0:
            return self.genus == 1
        total = _order_sum(self.m)
        return total.close(Order(Fraction(2 * self.genus - 2), Fraction(1)))

    def close(self, other):
        return (self.genus == other.genus and len(self.chi) == len(other.chi)
                and self.n == other.n
                and all(a.close(b) for a, b in zip(self.chi, other.chi))
                and all(a.close(b) for a, b in zip(self.m, other.m)))

    def kind(self):
        if all(c.is_one() for c in self.chi):
            return "translation"
        if all(c.is_positive() for c in self.chi):
            return "dilation"
        if all(c.is_unitary() for c in self.chi) and all(o.is_real() for o in self.m):
            return "flat"
        return "affine"


def basis_size(genus, n):
    return 2 * genus + max(n - 1, 0)


@dataclass(frozen=True)
class PeriodVector:
    """Periods of a closed form on the basis loops and its residues at the
    marked points.  Zero residues model the holomorphic forms."""

    values: tuple
    residues: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "residues", tuple(self.residues))

    @classmethod
    def zero(cls, genus, n):
        return cls([Period()] * basis_size(genus, n), [Order()] * n)

    @classmethod
    def from_symplectic(cls, values, residues):
        """Complete symplectic periods with the puncture periods forced by
        the residues."""
        residues = list(residues)
        punct = [r.as_period() for r in residues[:max(len(residues) - 1, 0)]]
        return cls(list(values) + punct, residues)

    def validate(self, genus, n):
        if len(self.residues) != n or len(self.values) != basis_size(genus, n):
            raise errors.BasisMismatch("period vector does not fit the basis")
        if n and not _order_sum(self.residues).close(Order()):
            raise errors.IncompatiblePeriods("residues do not sum to zero")
        for j in range(max(n - 1, 0)):
            if not self.values[2 * genus + j].close(self.residues[j].as_period()):
                raise errors.IncompatiblePeriods(
                    f"period on puncture loop {j} is not 2*pi*i times its residue")
        return True

    def __add__(self, other):
        return PeriodVector([a + b for a, b in zip(self.values, other.values)],
                            [a + b for a, b in zip(self.residues, other.residues)])

    def __neg__(self):
        return PeriodVector([-a for a in self.values], [-r for r in self.residues])

    def close(self, other):
        return (len(self.values) == len(other.values)
                and all(a.close(b) for a, b in zip(self.values, other.values))
                and all(a.close(b) for a, b in zip(self.residues, other.residues)))


def exponential_action(h, alpha):
    """Multiply the character by ``exp(alpha)`` and shift orders by the
    residues."""
    alpha.validate(h.genus, h.n)
    chi = [c * p.exp() for c, p in zip(h.chi, alpha.values)]
    m = [a + b for a, b in zip(h.m, alpha.residues)]
    return HolonomyData(h.genus, chi, m)


def torsor_difference(h1, h2):
    """The period vector ``alpha`` with ``exponential_action(h2, alpha) == h1``.

    Symplectic periods use the principal logarithm (imaginary part in
    (-pi, pi]); puncture periods are forced by the residues ``m1 - m2``.
    """
    if h1.genus != h2.genus or h1.n != h2.n or len(h1.chi) != len(h2.chi):
        raise errors.BasisMismatch("holonomy data live on different bases")
    if not _order_sum(h1.m).close(_order_sum(h2.m)):
        raise errors.BasisMismatch("orders have different sums")
    g2 = 2 * h1.genus
    res = [a - b for a, b in zip(h1.m, h2.m)]
    sym = []
    for a, b in zip(h1.chi[:g2], h2.chi[:g2]):
        base = a.modulus / b.modulus
        sym.append(Period(base, normalise_angle(a.angle - b.angle)))
    return PeriodVector.from_symplectic(sym, res)


def flat_projection(h):
    """Divide every character value by its modulus."""
    for j, o in enumerate(h.m):
        if not o.is_real():
            raise errors.NonRealOrders(f"order {j} has nonzero imaginary part", point=j)
    one = Fraction(1)
    return HolonomyData(h.genus, [CharValue(one, c.angle) for c in h.chi], h.m)


# -- intersection form -------------------------------------------------------

def _spanning_tree(nodes, edges):
    """BFS tree; ``edges`` is a list of (index, u, v).  Returns the set of
    tree edge indices and parent links."""
    adj = {u: [] for u in nodes}
    for k, u, v in edges:
        adj[u].append((k, v))
        adj[v].append((k, u))
    root = nodes[0]
    parent = {root: None}
    tree = set()
    queue = [root]
    for u in queue:
        for k, v in sorted(adj[u]):
            if v not in parent:
                parent[v] = (k, u)
                tree.add(k)
                queue.append(v)
    return tree, parent


class IntersectionForm:
    """Algebraic intersection numbers of dual cycles, via tree-cotree."""

    def __init__(self, surface):
        self.surface = surface
        E = len(surface.pairings)
        dual_edges = []
        for k, (s1, s2) in enumerate(surface.pairings):
            dual_edges.append((k, s1[0], s2[0]))
        self.dual_tree, self.dual_parent = _spanning_tree(
            list(range(len(surface.polygons))), dual_edges)

        cc = surface.corner_class
        self.edge_ends = []
        for k, (s1, _) in enumerate(surface.pairings):
            p, e = s1
            m = len(surface.polygons[p])
            self.edge_ends.append((cc[(p, e)], cc[(p, (e + 1) % m)]))
        primal_edges = [(k, *self.edge_ends[k]) for k in range(E) if k not in self.dual_tree]
        V = len(surface.vertex_classes)
        self.primal_tree, self.primal_parent = _spanning_tree(list(range(V)), primal_edges)
        self.leftover = [k for k in range(E)
                         if k not in self.dual_tree and k not in self.primal_tree]
        if len(self.leftover) != 2 * surface.genus:
            raise errors.InternalInvariantError("tree-cotree leftover has the wrong size")

        self.cycles = [self._primal_cycle(k) for k in self.leftover]
        self.cycle_vectors = [self._primal_vector(z) for z in self.cycles]
        self.gram = [[self.pair(curves.crossing_vector(surface, self.pushoff(zh)), zk)
                      for zk in self.cycle_vectors] for zh in self.cycles]
        g2 = len(self.cycles)
        for i in range(g2):
            for j in range(g2):
                if self.gram[i][j] != -self.gram[j][i]:
                    raise errors.InternalInvariantError("intersection form is not alternating")
        if g2 and abs(linalg.det(self.gram)) != 1:
            raise errors.InternalInvariantError("intersection form is not unimodular")
        self._gram_t = linalg.transpose(self.gram)

    def _path_to_root(self, v):
        out = []
        while self.primal_parent[v] is not None:
            k, u = self.primal_parent[v]
            # edge k joins u (closer to the root) and v
            d = 1 if self.edge_ends[k] == (v, u) else -1
            out.append((k, d))
            v = u
        return out

    def _primal_cycle(self, k):
        u, v = self.edge_ends[k]
        down = self._path_to_root(v)
        up = [(kk, -d) for kk, d in reversed(self._path_to_root(u))]
        cycle = [(k, 1)] + down + up
        # cancel backtracking through the common ancestor
        changed = True
        while changed:
            changed = False
            for i in range(len(cycle) - 1):
                if cycle[i][0] == cycle[i + 1][0] and cycle[i][1] == -cycle[i + 1][1]:
                    del cycle[i:i + 2]
                    changed = True
                    break
        return cycle

    def _primal_vector(self, cycle):
        z = [0] * len(self.surface.pairings)
        for k, d in cycle:
            z[k] += d
        return z

    def _directed_side(self, k, d):
        s1, s2 = self.surface.pairings[k]
        return s1 if d > 0 else s2

    def pushoff(self, cycle):
        """Dual walk running just to the left of a primal cycle."""
        s = self.surface
        walk = []
        n = len(cycle)
        for j in range(n):
            p_in, e_in = self._directed_side(*cycle[j])
            out_corner = self._directed_side(*cycle[(j + 1) % n])
            c = (p_in, (e_in + 1) % len(s.polygons[p_in]))
            guard = 0
            while c != out_corner:
                walk.append(s.step_of_side(c))
                q, f = s.partner(c)
                c = (q, (f + 1) % len(s.polygons[q]))
                guard += 1
                if guard > 4 * len(s.pairings) + 4:
                    raise errors.InternalInvariantError("push-off did not reach the next edge")
        return walk

    @staticmethod
    def pair(c, z):
        return sum(a * b for a, b in zip(c, z))

    def coordinates(self, c):
        """Coordinates in H_1(X) with respect to the primal basis cycles."""
        if not self.cycles:
            return ()
        y = [self.pair(c, z) for z in self.cycle_vectors]
        w = linalg.solve(self._gram_t, y)
        if w is None or any(x.denominator != 1 for x in w):
            raise errors.InternalInvariantError("dual cycle has non-integral coordinates")
        return tuple(int(x) for x in w)

    def intersect_coords(self, w1, w2):
        return sum(w1[i] * self.gram[i][j] * w2[j]
                   for i in range(len(w1)) for j in range(len(w2)))

    def intersect(self, c1, c2):
        return int(self.intersect_coords(self.coordinates(c1), self.coordinates(c2)))


# -- basis -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HomologyBasis:
    genus: int
    symplectic: tuple
    puncture_loops: tuple
    representatives: tuple
    puncture_paths: tuple
    intersection_matrix: tuple
    form: object = field(default=None, repr=False)

    @property
    def n(self):
        return len(self.puncture_loops)

    @property
    def loops(self):
        return self.symplectic + self.puncture_loops[:max(self.n - 1, 0)]

    def __len__(self):
        return len(self.loops)


def closed_walks(surface, length):
    """Cyclically reduced closed dual walks of the given length, one per
    rotation class, in lexicographic order."""
    E = len(surface.pairings)
    steps_from = {}
    for k in range(E):
        for sgn in (1, -1):
            p = surface.side_of_step((k, sgn))[0]
            steps_from.setdefault(p, []).append((k, sgn))
    for p in steps_from:
        steps_from[p].sort()
    out = set()

    def target(step):
        return surface.partner(surface.side_of_step(step))[0]

    def extend(walk, start):
        if len(walk) == length:
            if target(walk[-1]) == start and walk[0] != (walk[-1][0], -walk[-1][1]):
                out.add(curves.canonical_rotation(walk))
            return
        here = target(walk[-1])
        for st in steps_from.get(here, ()):
            if st == (walk[-1][0], -walk[-1][1]):
                continue
            walk.append(st)
            extend(walk, start)
            walk.pop()

    for p in sorted(steps_from):
        for st in steps_from[p]:
            extend([st], p)
    return sorted(out)


def _search_symplectic(surface, form, pool, genus, embedded):
    """Backtracking search for a_1, b_1, ..., a_g, b_g among ``pool``
    entries (walk, coordinates, gram times coordinates), using only walks with simple
    representatives."""
    budget = [_SEARCH_BUDGET]
    chosen = []

    def ok(cand):
        idx = len(chosen)
        gw = cand[2]
        for j, (_, wj, _) in enumerate(chosen):
            want = 1 if (idx % 2 == 1 and j == idx - 1) else 0
            if sum(a * b for a, b in zip(wj, gw)) != want:
                return False
        w = cand[0]
        if w not in embedded:
            embedded[w] = curves.embedded_realisation(surface, w) is not None
        return embedded[w]

    def rec():
        if len(chosen) == 2 * genus:
            return True
        for cand in pool:
            budget[0] -= 1
            if budget[0] < 0:
                return False
            if ok(cand):
                chosen.append(cand)
                if rec():
                    return True
                chosen.pop()
        return False

    return [w for w, _, _ in chosen] if rec() else None


def homology_basis(surface, max_length=MAX_WALK_LENGTH):
    """Symplectic loops with simple chord representatives, then small loops
    around the marked points.

    Candidates are closed dual walks ordered by length and then
    lexicographically; the first simple representative of each homology
    class in H_1(X) is kept, so the result is deterministic.
    """
    form = IntersectionForm(surface)
    g = surface.genus
    sym = ()
    if g:
        pool, seen, embedded = [], set(), {}
        found = None
        for length in range(1, max_length + 1):
            new = False
            for walk in closed_walks(surface, length):
                for w in (walk, curves.canonical_rotation(curves.inverse_walk(walk))):
                    coords = form.coordinates(curves.crossing_vector(surface, w))
                    if not any(coords) or coords in seen:
                        continue
                    seen.add(coords)
                    gw = tuple(sum(form.gram[i][j] * coords[j] for j in range(len(coords)))
                               for i in range(len(coords)))
                    pool.append((w, coords, gw))
                    new = True
            if new and len(pool) >= 2 * g:
                found = _search_symplectic(surface, form, pool, g, embedded)
                if found:
                    break
        if not found:
            raise errors.BasisNotFound(
                f"no symplectic basis among walks of length <= {max_length}")
        sym = tuple(tuple(w) for w in found)
    reps = tuple(curves.embedded_realisation(surface, w) for w in sym)
    punct = tuple(curves.puncture_walk(surface, c) for c in surface.marked)
    ppaths = tuple(curves.puncture_path(surface, c) for c in surface.marked)
    coords = [form.coordinates(curves.crossing_vector(surface, w)) for w in sym]
    mat = tuple(tuple(int(form.intersect_coords(a, b)) for b in coords) for a in coords)
    return HomologyBasis(g, sym, punct, reps, ppaths, mat, form)


def standard_symplectic(g):
    out = [[0] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        out[2 * i][2 * i + 1] = 1
        out[2 * i + 1][2 * i] = -1
    return tuple(tuple(r) for r in out)


def walk_holonomy(surface, walk):
    z = ONE
    for st in walk:
        z = z * surface.crossing_factor(surface.side_of_step(st))
    return z


def character(surface, basis):
    chi = [CharValue.from_qi(walk_holonomy(surface, w), surface.exact) for w in basis.loops]
    m = [Order.from_cone(c) for c in surface.marked_cones]
    return HolonomyData(surface.genus, chi, m)


def fundamental_cycles(surface):
    """One dual cycle per pairing outside a dual spanning tree."""
    form_tree, parent = _spanning_tree(
        list(range(len(surface.polygons))),
        [(k, s1[0], s2[0]) for k, (s1, s2) in enumerate(surface.pairings)])

    def to_root(p):
        out = []
        while parent[p] is not None:
            k, q = parent[p]
            s1, _ = surface.pairings[k]
            # step from p towards q
            out.append((k, 1) if s1[0] == p and surface.pairings[k][1][0] == q else (k, -1))
            p = q
        return out

    cycles = []
    for k, (s1, s2) in enumerate(surface.pairings):
        if k in form_tree:
            continue
        walk = [(k, 1)] + to_root(s2[0])
        back = curves.inverse_walk(to_root(s1[0]))
        cycles.append(tuple(walk) + tuple(back))
    return cycles


def holonomy_kind(surface):
    """translation, dilation, flat or affine, from the character on a
    generating set of loops and the cone orders."""
    vals = [CharValue.from_qi(walk_holonomy(surface, w), surface.exact)
            for w in fundamental_cycles(surface)]
    orders = [Order.from_cone(c) for c in surface.cones]
    if all(v.is_one() for v in vals):
        return "translation"
    if all(v.is_positive() for v in vals):
        return "dilation"
    if all(v.is_unitary() for v in vals) and all(o.is_real() for o in orders):
        return "flat"
    return "affine"


def solve_cochain(surface, basis, values):
    """Rational cochain on pairings taking ``values`` on the basis loops and
    vanishing on the links of unmarked vertices."""
    rows, rhs = [], []
    for w, v in zip(basis.loops, values):
        rows.append(list(curves.crossing_vector(surface, w)))
        rhs.append(Fraction(v))
    marked = set(surface.marked)
    for c in range(len(surface.vertex_classes)):
        if c not in marked:
            rows.append(list(curves.crossing_vector(surface, curves.puncture_walk(surface, c))))
            rhs.append(Fraction(0))
    if not rows:
        return [Fraction(0)] * len(surface.pairings)
    x = linalg.solve(rows, rhs)
    if x is None:
        raise errors.IncompatiblePeriods("no cochain has the requested periods")
    return x
