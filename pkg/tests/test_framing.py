from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import CORPUS, basis_of, built
from dilatkit import curves, errors
from dilatkit.corpus import perturb
from dilatkit.curves import CurvePath, Segment
from dilatkit.framing import (
    Framing, arf, boundary_turning, concat_turning, develop_path, framing_difference,
    framing_vector, integral_action, turning_number, twist_framing, twisted_framing,
)
from dilatkit.geometry import Qi
from dilatkit.holonomy import Period, PeriodVector, homology_basis
from dilatkit.surface import build_surface
from generators import random_closed_path, seeded
from oracles import (
    arf_majority, horizontal_core, kinked_core, turning_float, vertical_core, with_kinks,
)

DILATION = ["square_torus", "hexagon", "octagon", "decagon", "chamber_3_2", "chamber_2"]


def test_core_curves_turn_zero():
    s = built("square_torus")
    assert turning_number(s, horizontal_core()) == 0
    assert turning_number(s, vertical_core()) == 0


@pytest.mark.parametrize("k", [-3, -1, 1, 2, 4])
def test_loop_de_loop_adds_full_turns(k):
    s = built("square_torus")
    p = kinked_core("a", k)
    assert turning_number(s, p) == k
    assert turning_float(s.spec, p) == pytest.approx(k)


def test_small_square_loop_inside_polygon():
    s = built("square_torus")
    h = Fraction(1, 4)
    loop = CurvePath([Segment(0, Qi(h, h), Qi(3 * h, h)), Segment(0, Qi(3 * h, h), Qi(3 * h, 3 * h)),
                      Segment(0, Qi(3 * h, 3 * h), Qi(h, 3 * h)), Segment(0, Qi(h, 3 * h), Qi(h, h))])
    assert turning_number(s, loop) == 1
    assert turning_number(s, curves.reverse_path(s, loop)) == -1


def test_developed_directions_are_constant_on_straight_loops():
    s = built("chamber_2")
    for rep in basis_of("chamber_2").representatives:
        segs = develop_path(s, rep)
        assert all(d.crossings in (-1, 0, 1) for d in segs)


def test_cusp_detected():
    s = built("square_torus")
    a, b = Qi(Fraction(1, 4), Fraction(1, 2)), Qi(Fraction(3, 4), Fraction(1, 2))
    back = CurvePath([Segment(0, a, b), Segment(0, b, a)])
    with pytest.raises(errors.CuspAtCorner):
        turning_number(s, back)


def test_open_path_has_no_turning_number():
    s = built("square_torus")
    p = CurvePath([Segment(0, Qi(Fraction(1, 4)), Qi(Fraction(1, 2), Fraction(1, 2)))], closed=False)
    with pytest.raises(errors.NotClosed):
        turning_number(s, p)


def test_rotation_holonomy_rejected():
    s = built("troyanov_1_4")
    b = basis_of("troyanov_1_4")
    rotating = [rep for rep, c in zip(b.representatives,
                                      [x for x in __import__("dilatkit").character(s, b).chi])
                if not c.is_positive()]
    assert rotating
    with pytest.raises(errors.NotDilation):
        turning_number(s, rotating[0])


@pytest.mark.parametrize("name", DILATION)
def test_boundary_turning_is_cone_angle(name):
    s = built(name)
    r = boundary_turning(s)
    assert r == tuple(int(c.angle_turns) for c in s.marked_cones)
    assert sum(r) == 2 * s.genus + s.n - 2


@pytest.mark.parametrize("name", DILATION)
def test_framing_vector_poincare_hopf(name):
    f = framing_vector(built(name), basis_of(name))
    assert f.satisfies_poincare_hopf()
    assert f.kappa == tuple(c.angle_turns - 1 for c in built(name).marked_cones)


@pytest.mark.parametrize("name", DILATION)
def test_basis_representatives_match_float_oracle(name):
    s = built(name)
    for rep in basis_of(name).representatives:
        assert turning_number(s, rep) == pytest.approx(turning_float(s.spec, rep), abs=1e-9)


@pytest.mark.parametrize("name", ["square_torus", "octagon", "chamber_2"])
def test_kinked_representatives_shift_the_framing(name):
    s, b = built(name), basis_of(name)
    base = framing_vector(s, b)
    reps = list(b.representatives)
    reps[0] = with_kinks(reps[0], 0, 2, eps=Fraction(1, 64))
    reps[-1] = with_kinks(reps[-1], 0, -1, eps=Fraction(1, 64))
    f = framing_vector(s, b, reps)
    diff = framing_difference(f, base)
    assert diff[0] == 2 and diff[len(reps) - 1] == -1
    assert integral_action(base, diff) == f


def test_wrong_class_rejected():
    s, b = built("square_torus"), basis_of("square_torus")
    with pytest.raises(errors.RepresentativeClassMismatch):
        framing_vector(s, b, list(reversed(b.representatives)))


@given(st.integers(0, 10 ** 6))
def test_random_paths_match_float_oracle(seed):
    rng = seeded(seed)
    name = DILATION[seed % len(DILATION)]
    s = built(name)
    p = random_closed_path(s, rng)
    assert turning_number(s, p) == pytest.approx(turning_float(s.spec, p), abs=1e-9)


@given(st.integers(0, 10 ** 6), st.integers(0, 50))
def test_perturbed_surfaces(seed, k):
    s = build_surface(perturb(CORPUS["chamber_2"], seed))
    p = random_closed_path(s, seeded(seed + k))
    t = turning_number(s, p)
    assert t == pytest.approx(turning_float(s.spec, p), abs=1e-9)
    assert turning_number(s, curves.reverse_path(s, p)) == -t


# -- integral action -----------------------------------------------------------

def test_integral_action_rules():
    f = Framing(2, 1, (0, 0, 0, -1), (3,))
    assert integral_action(f, [1, 2, 3, 4]).tau == (1, 2, 3, 3)
    with pytest.raises(errors.NonIntegralPeriods):
        integral_action(f, [Fraction(1, 2), 0, 0, 0])
    g = Framing(1, 2, (0, 0), (1, 1))
    with pytest.raises(errors.CocycleMovesBoundary):
        integral_action(g, [0, 0, 1])
    with pytest.raises(errors.BasisMismatch):
        integral_action(g, [0])


def test_framing_difference_checks_boundary():
    with pytest.raises(errors.SignatureMismatch):
        framing_difference(Framing(1, 2, (0, 0), (1, 1)), Framing(1, 2, (0, 0), (0, 2)))


@given(st.lists(st.integers(-9, 9), min_size=4, max_size=4),
       st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_integral_action_is_free_and_transitive(t1, t2):
    f1, f2 = Framing(2, 2, t1, (1, 3)), Framing(2, 2, t2, (1, 3))
    c = framing_difference(f1, f2)
    assert integral_action(f2, c) == f1
    assert integral_action(f1, [0] * 5) == f1


# -- twists --------------------------------------------------------------------

def test_twist_offsets_from_periods():
    s = built("chamber_2")
    alpha = PeriodVector.from_symplectic([Period(2, 2), Period(1, -4)], [])
    alpha = PeriodVector(list(alpha.values) + [Period(1, 0)], alpha.residues)
    off = twist_framing(s, alpha)
    assert off.offsets == (1, -2, 0)
    with pytest.raises(errors.NonIntegralPeriods):
        twist_framing(s, [Period(1, 1), Period(), Period()])
    with pytest.raises(errors.BasisMismatch):
        twist_framing(s, [0.0])


@pytest.mark.parametrize("name", ["square_torus", "chamber_3_2", "octagon"])
def test_twisted_framing_moves_by_offsets(name):
    s, b = built(name), basis_of(name)
    base = framing_vector(s, b)
    rng = seeded(len(name))
    size = len(b.loops)
    vals = [2 * rng.randint(-3, 3) * 3.141592653589793 for _ in range(2 * s.genus)]
    vals += [0.0] * (size - 2 * s.genus)
    off = twist_framing(s, vals)
    got = twisted_framing(s, b, off)
    expect = off.apply(base)
    assert [round(x) for x in got[:2 * s.genus]] == list(expect.tau)
    assert got[:2 * s.genus] == pytest.approx(list(expect.tau), abs=1e-9)


# -- concat and Arf ------------------------------------------------------------

def test_concat_is_additive():
    assert concat_turning(2, -3) == -1


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=8).filter(lambda x: len(x) % 2 == 0))
def test_arf_matches_majority_oracle(tau):
    g = len(tau) // 2
    f = Framing(g, 1, tau, (2 * g - 1,))
    assert arf(f) == arf_majority(tau)


def test_arf_needs_odd_boundary():
    with pytest.raises(errors.ArfUndefined):
        arf(Framing(2, 2, (0, 0, 0, 0), (2, 2)))


def test_octagon_framing():
    f = framing_vector(built("octagon"), basis_of("octagon"))
    assert f.r == (3,)
    assert arf(f) == arf_majority(f.tau)


def test_homology_basis_of_perturbed_octagon_framing():
    s = build_surface(perturb(CORPUS["octagon"], 5))
    f = framing_vector(s, homology_basis(s))
    assert f.satisfies_poincare_hopf()


# -- worked examples -----------------------------------------------------------

def test_arf_examples():
    assert arf(Framing(2, 1, (1, 1, 1, 1), (3,))) == 0
    assert arf(Framing(2, 1, (0, 0, 1, 1), (3,))) == 1


@given(st.lists(st.integers(-5, 5), min_size=4, max_size=4),
       st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_arf_invariant_under_even_cocycles(tau, c):
    f = Framing(2, 1, tau, (3,))
    assert arf(integral_action(f, [2 * x for x in c])) == arf(f)


def test_square_torus_framing_and_boundary():
    f = framing_vector(built("square_torus"), basis_of("square_torus"))
    assert f.tau == (0, 0) and f.r == (1,)


def test_torus_twist_example():
    off = twist_framing(built("square_torus"), [2 * 3.141592653589793, 0.0])
    assert off.offsets == (1, 0)
    assert (off + off).offsets == (2, 0)
    assert twist_framing(built("square_torus"), [0.0, 0.0]).offsets == (0, 0)


def test_direction_preserved_across_dilation_gluing():
    s = built("chamber_2")
    # a horizontal chord from the unit square into the 2 by 1 chamber
    (p, e), (q, f) = s.pairings[0]
    src = s.polygons[p]
    a, b = src[e], src[(e + 1) % len(src)]
    mid = (a + b) / Qi(2)
    start = mid - Qi(Fraction(1, 2))
    image = s.cross_side((p, e), mid)
    path = CurvePath([Segment(p, start, mid, (p, e)), Segment(q, image, image + Qi(Fraction(1, 2)))],
                     closed=False)
    d = develop_path(s, path)
    u, w = d[0].direction, d[1].direction
    assert u.re * w.im - u.im * w.re == 0 and u.re * w.re + u.im * w.im > 0
