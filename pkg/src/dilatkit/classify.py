"""Component counts of dilation strata and orbit questions for framings.

Framings are acted on by a finite move system standing in for the
mapping class group:

* Dehn twists about the basis curves, about resolutions ``a_i + b_i`` and
  about the chain curves ``a_i - a_{i+1}``, acting by
  ``tau(x) -> tau(x) + <x, c> tau(c)``;
* point pushes of a marked point ``p_j`` along a basis curve, shifting the
  turning number of every curve crossing it by ``kappa_j``.

Twists change ``tau`` on a curve only through intersection numbers, so the
system preserves every ``r_j``.  For genus one the state is ``(tau(a),
tau(b))`` reduced modulo ``gcd(kappa)``; pushes generate exactly the
multiples of that gcd, so orbits of reduced states are orbits of integral
framings.  For genus at least two the state is reduced modulo 2.
"""

import math
from dataclasses import dataclass, field
from functools import reduce

from . import errors
from .framing import Framing, arf, concat_turning

INFINITE = "Infinite"
DEFAULT_BOUND = 10 ** 6

EQUIVALENT = "Equivalent"
DISTINCT = "Distinct"
UNKNOWN = "UnknownWithinBound"


@dataclass(frozen=True)
class StratumSignature:
    genus: int
    kappa: tuple

    def __post_init__(self):
        object.__setattr__(self, "kappa", tuple(int(k) for k in self.kappa))
        if self.genus < 0:
            raise errors.InvalidSignature("genus must be nonnegative")
        if sum(self.kappa) != 2 * self.genus - 2:
            raise errors.InvalidSignature(
                f"kappa sums to {sum(self.kappa)}, expected {2 * self.genus - 2}",
                genus=self.genus, kappa=list(self.kappa))

    @property
    def n(self):
        return len(self.kappa)

    @property
    def gcd(self):
        return reduce(math.gcd, (abs(k) for k in self.kappa), 0)

    @classmethod
    def of_framing(cls, f):
        return cls(f.genus, f.kappa)


@dataclass(frozen=True)
class OrbitClass:
    kind: str
    count: object
    arf: object = None
    normal_forms: tuple = ()

    def as_dict(self):
        return {"kind": self.kind, "count": self.count, "arf": self.arf,
                "normal_forms": [list(x) for x in self.normal_forms]}


def phi(N):
    """Euler's totient."""
    N = int(N)
    if N < 1:
        raise ValueError("phi needs a positive integer")
    out, m, p = N, N, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


def _kind(sig):
    if sig.genus == 0:
        return "genus0"
    if sig.genus == 1:
        return "genus1-nu"
    if any(k % 2 for k in sig.kappa):
        return "oddPresent"
    return "evenArf"


def component_count(sig):
    """Number of components of the dilation stratum with signature ``sig``."""
    g = sig.genus
    if g == 0:
        return 1
    if g == 1:
        if sig.n == 0:
            return INFINITE
        N = sig.gcd
        if N == 0:
            raise errors.InvalidSignature(
                "gcd of the all-zero kappa is 0; the orbit oracle finds no finite "
                "count to confirm", genus=g, kappa=list(sig.kappa))
        return phi(N)
    return 1 if any(k % 2 for k in sig.kappa) else 2


def classify(sig, bound=None):
    count = component_count(sig)
    normal_forms, arfs = (), None
    if bound is not None:
        res = enumerate_orbits_bfs(sig, bound)
        normal_forms = res.normal_forms
        arfs = res.arfs
    return OrbitClass(_kind(sig), count, arfs, normal_forms)


# -- move system -------------------------------------------------------------

def _twist(tau, c_coeffs, tau_c):
    """Apply ``tau(x) += <x, c> tau(c)`` to every basis curve.

    ``c_coeffs`` gives c in the symplectic basis; ``<a_i, b_i> = 1``.
    """
    out = list(tau)
    g = len(tau) // 2
    for i in range(g):
        ca, cb = c_coeffs[2 * i], c_coeffs[2 * i + 1]
        # <a_i, c> = cb, <b_i, c> = -ca
        out[2 * i] += cb * tau_c
        out[2 * i + 1] += -ca * tau_c
    return out


def _basis_vec(g, j, sign=1):
    v = [0] * (2 * g)
    v[j] = sign
    return v


def move_generators(genus, kappa, modulus):
    """Generators of the move system as functions on framing states.

    Each function returns the new tau vector reduced modulo ``modulus``
    (``0`` for no reduction).  Inverses are included.
    """
    g = genus
    gens = []

    def red(v):
        return tuple(x % modulus for x in v) if modulus else tuple(v)

    for j in range(2 * g):
        for e in (1, -1):
            vec = _basis_vec(g, j)

            def move(tau, vec=vec, e=e, j=j):
                return red(_twist(tau, vec, e * tau[j]))
            gens.append(("twist", j, e, move))
    for i in range(g):
        vec = [0] * (2 * g)
        vec[2 * i] = vec[2 * i + 1] = 1
        for e in (1, -1):
            def move(tau, vec=vec, e=e, i=i):
                tc = concat_turning(tau[2 * i], tau[2 * i + 1])
                return red(_twist(tau, vec, e * tc))
            gens.append(("twist-resolution", i, e, move))
    for i in range(g - 1):
        vec = [0] * (2 * g)
        vec[2 * i], vec[2 * i + 2] = 1, -1
        for e in (1, -1):
            def move(tau, vec=vec, e=e, i=i):
                # q(x + y) = q(x) + q(y) + x.y with q = tau + 1, for disjoint a_i, a_{i+1}
                tc = tau[2 * i] + tau[2 * i + 2] + 1
                return red(_twist(tau, vec, e * tc))
            gens.append(("twist-chain", i, e, move))
    for p, k in enumerate(kappa):
        if k == 0:
            continue
        for j in range(2 * g):
            partner = j + 1 if j % 2 == 0 else j - 1
            for e in (1, -1):
                def move(tau, partner=partner, e=e, k=k):
                    out = list(tau)
                    out[partner] += e * k
                    return red(out)
                gens.append(("push", (p, j), e, move))
    return gens


def apply_move(f, generator):
    """Act on an integral framing by one generator; ``r`` is unchanged."""
    _, _, _, fn = generator
    return Framing(f.genus, f.n, fn(list(f.tau)), f.r)


def integral_generators(f):
    return move_generators(f.genus, f.kappa, 0)


# -- orbit enumeration -------------------------------------------------------

@dataclass(frozen=True)
class OrbitEnumeration:
    count: object
    normal_forms: tuple
    modulus: int
    states: int
    arfs: tuple = None
    window_counts: tuple = field(default=())


def _orbits(states, gens, bound):
    """Orbits of a finite state set, scanned in lexicographic order so the
    first state of each orbit is its least element."""
    seen = {}
    normal_forms = []
    for s in states:
        if s in seen:
            continue
        label = len(normal_forms)
        normal_forms.append(s)
        seen[s] = label
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for gen in gens:
                    v = gen[3](list(u))
                    if v not in seen:
                        seen[v] = label
                        nxt.append(v)
                        if len(seen) > bound:
                            raise errors.BoundExhausted(
                                f"more than {bound} states", bound=bound)
            nxt.sort()
            frontier = nxt
    return normal_forms, seen


def _state_space(g, modulus):
    def rec(prefix):
        if len(prefix) == 2 * g:
            yield tuple(prefix)
            return
        for x in range(modulus):
            yield from rec(prefix + [x])
    return rec([])


def _window_orbit_counts(gens, windows):
    """Orbit counts of framings with entries in [-W, W], moves restricted
    to the window."""
    out = []
    for W in windows:
        pts = [(x, y) for x in range(-W, W + 1) for y in range(-W, W + 1)]
        inside = set(pts)
        seen = set()
        count = 0
        for s in pts:
            if s in seen:
                continue
            count += 1
            seen.add(s)
            stack = [s]
            while stack:
                u = stack.pop()
                for gen in gens:
                    v = gen[3](list(u))
                    if v in inside and v not in seen:
                        seen.add(v)
                        stack.append(v)
        out.append(count)
    return tuple(out)


def enumerate_orbits_bfs(sig, bound=DEFAULT_BOUND):
    g = sig.genus
    if g == 0:
        return OrbitEnumeration(1, ((),), 1, 1)
    if g == 1:
        N = sig.gcd
        if N == 0:
            gens = move_generators(1, sig.kappa, 0)
            counts = _window_orbit_counts(gens, (1, 2, 3, 4, 5))
            return OrbitEnumeration(INFINITE, (), 0, 0, window_counts=counts)
        if N * N > bound:
            raise errors.BoundExhausted(f"{N * N} states exceed the bound {bound}", bound=bound)
        gens = move_generators(1, sig.kappa, N)
        nfs, seen = _orbits(_state_space(1, N), gens, bound)
        return OrbitEnumeration(len(nfs), tuple(nfs), N, len(seen))
    if 4 ** g > bound:
        raise errors.BoundExhausted(f"{4 ** g} states exceed the bound {bound}", bound=bound)
    gens = move_generators(g, sig.kappa, 2)
    nfs, seen = _orbits(_state_space(g, 2), gens, bound)
    arfs = None
    if all(k % 2 == 0 for k in sig.kappa):
        r = tuple(k + 1 for k in sig.kappa)
        per_orbit = [set() for _ in nfs]
        for s, label in seen.items():
            per_orbit[label].add(arf(Framing(g, sig.n, s, r)))
        arfs = tuple(sorted(a) if len(a) > 1 else next(iter(a)) for a in per_orbit)
    return OrbitEnumeration(len(nfs), tuple(nfs), 2, len(seen), arfs)


def orbit_normal_form(f, bound=DEFAULT_BOUND):
    """Least state in the orbit of ``f``'s reduced state, or None if the
    state space is infinite."""
    sig = StratumSignature.of_framing(f)
    g = f.genus
    if g == 0:
        return ()
    modulus = sig.gcd if g == 1 else 2
    if modulus == 0:
        return None
    state = tuple(x % modulus for x in f.tau)
    gens = move_generators(g, sig.kappa, modulus)
    seen = {state}
    frontier = [state]
    while frontier:
        nxt = []
        for u in frontier:
            for gen in gens:
                v = gen[3](list(u))
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
                    if len(seen) > bound:
                        raise errors.BoundExhausted(f"more than {bound} states", bound=bound)
        frontier = nxt
    return min(seen)


def _integral_search(f1, f2, bound):
    gens = integral_generators(f1)
    target = tuple(f2.tau)
    start = tuple(f1.tau)
    if start == target:
        return True
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            for gen in gens:
                v = gen[3](list(u))
                if v == target:
                    return True
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
                    if len(seen) >= bound:
                        return None
        frontier = nxt
    return False


def same_orbit(f1, f2, bound=DEFAULT_BOUND):
    if (f1.genus, f1.n, f1.r) != (f2.genus, f2.n, f2.r):
        raise errors.SignatureMismatch("framings have different genus or boundary data")
    if f1 == f2 or f1.genus == 0:
        return EQUIVALENT
    if f1.genus >= 2:
        if any(x % 2 == 0 for x in f1.r):
            return EQUIVALENT
        return EQUIVALENT if arf(f1) == arf(f2) else DISTINCT
    sig = StratumSignature.of_framing(f1)
    if sig.gcd == 0:
        found = _integral_search(f1, f2, bound)
        if found is None:
            return UNKNOWN
        return EQUIVALENT if found else DISTINCT
    try:
        n1 = orbit_normal_form(f1, bound)
        n2 = orbit_normal_form(f2, bound)
    except errors.BoundExhausted:
        return UNKNOWN
    return EQUIVALENT if n1 == n2 else DISTINCT


def framing_orbit_class(f, bound=DEFAULT_BOUND):
    """Orbit data of a single framing: the stratum verdict plus its own
    Arf invariant or genus-one normal form."""
    sig = StratumSignature.of_framing(f)
    kind = _kind(sig)
    try:
        count = component_count(sig)
    except errors.InvalidSignature:
        count = None
    a = None
    if f.genus >= 1 and all(x % 2 for x in f.r):
        a = arf(f)
    nf = ()
    if f.genus == 1:
        form = orbit_normal_form(f, bound)
        nf = (form,) if form is not None else ()
    return OrbitClass(kind, count, a, nf)
