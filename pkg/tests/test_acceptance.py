"""Acceptance criteria, one test each; every test records a PASS/FAIL line
with the tolerance it was checked at."""

import json
import math
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from conftest import CORPUS, basis_of, built, record
from dilatkit import curves
from dilatkit.classify import (
    INFINITE, StratumSignature, classify, enumerate_orbits_bfs,
)
from dilatkit.corpus import random_dilation_surfaces
from dilatkit.framing import (
    Framing, boundary_turning, concat_turning, framing_difference, framing_vector,
    integral_action, turning_number, twist_framing, twisted_framing,
)
from dilatkit.holonomy import (
    Order, Period, PeriodVector, exponential_action, homology_basis, torsor_difference,
)
from dilatkit.surface import build_surface
from generators import random_closed_path, random_holonomy, random_periods, seeded
from oracles import kinked_core, resolved_curve, totient_bruteforce

TABLE = [
    ((0, (-2,)), 1),
    ((1, ()), INFINITE),
    ((1, (1, -1)), 1), ((1, (2, -2)), 1), ((1, (3, -3)), 2),
    ((1, (4, -4)), 2), ((1, (5, -5)), 4), ((1, (6, -6)), 2),
    ((2, (1, 1)), 1), ((2, (2,)), 2),
    ((3, (4,)), 2), ((3, (2, 1, 1)), 1),
]


def test_criterion_1_component_table():
    t0 = time.perf_counter()
    got = [classify(StratumSignature(*sig)).count for sig, _ in TABLE]
    elapsed = time.perf_counter() - t0
    want = [c for _, c in TABLE]
    # the genus-one entries are the totients of k, checked by brute force
    assert want[2:8] == [totient_bruteforce(k) for k in range(1, 7)]
    ok = got == want and elapsed < 1.0
    record(1, ok, f"component table exact match {got == want}, {elapsed:.3f}s (limit 1s)")
    assert ok


def _bfs(sig):
    t0 = time.perf_counter()
    res = enumerate_orbits_bfs(StratumSignature(*sig), bound=10 ** 6)
    return res, time.perf_counter() - t0


def test_criterion_2_genus_two_subset():
    """The part of criterion 2 that holds: genus-two counts and Arf values."""
    rows = []
    for sig, count in (((2, (1, 1)), 1), ((2, (2,)), 2)):
        res, dt = _bfs(sig)
        rows.append((sig, res.count, count, dt, res.arfs))
    ok = all(c == w and dt < 60 for _, c, w, dt, _ in rows)
    arfs = rows[1][4]
    ok = ok and sorted(arfs) == [0, 1]
    detail = "; ".join(f"g={s[0]} kappa={s[1]}: {c} orbits (want {w}, {dt:.2f}s)"
                       for s, c, w, dt, _ in rows)
    record("2 (g=2 subset)", ok, f"{detail}; all-even Arf values {list(arfs)}")
    assert ok


@pytest.mark.xfail(strict=True, reason="genus-one BFS orbits are gcd classes: d(k), not phi(k)")
def test_criterion_2_bfs_matches_table():
    mismatches, slow = [], []
    for sig, count in TABLE:
        if sig[0] not in (1, 2) or sig == (1, ()):
            continue
        res, dt = _bfs(sig)
        if dt >= 60:
            slow.append(sig)
        if res.count != count:
            mismatches.append(f"kappa={sig[1]}: bfs {res.count} vs {count}")
    arfs = enumerate_orbits_bfs(StratumSignature(2, (2,))).arfs
    ok = not mismatches and not slow and sorted(arfs) == [0, 1]
    record(2, ok, "exact match required; " + ("all agree" if ok else "; ".join(mismatches)))
    assert ok


def _exact_corpus():
    return [(n, s) for n, s in CORPUS.items() if s.mode == "exact"]


def test_criterion_3_gauss_bonnet_poincare_hopf():
    specs = [s for _, s in _exact_corpus()] + random_dilation_surfaces(100, seed=2024)
    bad = []
    for j, spec in enumerate(specs):
        s = build_surface(spec)
        total_re = sum(c.order_real for c in s.marked_cones)
        total_factor = Fraction(1)
        for c in s.marked_cones:
            total_factor *= c.factor
        r = boundary_turning(s)
        if total_re != 2 * s.genus - 2 or total_factor != 1 or sum(r) != 2 * s.genus + s.n - 2:
            bad.append(j)
    # float-mode corpus surfaces: Gauss-Bonnet only, at the float tolerance;
    # their cone angles are not whole turns, so boundary turning is undefined
    float_err = 0.0
    for name, spec in CORPUS.items():
        if spec.mode == "exact":
            continue
        s = built(name)
        float_err = max(float_err, abs(sum(c.order_real for c in s.marked_cones)
                                       - (2 * s.genus - 2)))
    ok = not bad and float_err < 1e-9
    record(3, ok, f"{len(specs)} surfaces ({len(specs) - 100} corpus + 100 perturbed), "
                  f"exact rational sums, zero tolerance, failures {bad}; float corpus "
                  f"Gauss-Bonnet error {float_err:.1e} (tolerance 1e-9)")
    assert ok


def test_criterion_4_torsor_laws():
    rng = random.Random(4)
    failures = 0
    for _ in range(1000):
        g, n = rng.randint(1, 3), rng.randint(1, 3)
        h1 = random_holonomy(rng, g, n)
        h2 = random_holonomy(rng, g, n)
        a, b = random_periods(rng, g, n), random_periods(rng, g, n)
        zero = PeriodVector.zero(g, n)
        d = torsor_difference(h1, h2)
        if exponential_action(h2, d) != h1:
            failures += 1
        if exponential_action(h1, zero) != h1:
            failures += 1
        if exponential_action(exponential_action(h1, a), b) != exponential_action(h1, a + b):
            failures += 1
    framing_failures = 0
    for _ in range(300):
        g = rng.randint(1, 3)
        n = rng.randint(1, 3)
        r = [rng.randint(-3, 5) for _ in range(n - 1)]
        r.append(2 * g + n - 2 - sum(r))
        f1 = Framing(g, n, [rng.randint(-9, 9) for _ in range(2 * g)], r)
        f2 = Framing(g, n, [rng.randint(-9, 9) for _ in range(2 * g)], r)
        c = framing_difference(f1, f2)
        if integral_action(f2, c) != f1:
            framing_failures += 1
        # free: a nonzero cocycle moves every framing
        nz = [0] * (2 * g)
        nz[rng.randrange(2 * g)] = rng.choice([-2, -1, 1, 2])
        if integral_action(f1, nz) == f1:
            framing_failures += 1
        # unique: the only cocycle from f2 to f1 is c
        alt = list(c)
        alt[0] += 1
        if integral_action(f2, alt[:2 * g]) == f1:
            framing_failures += 1
    ok = failures == 0 and framing_failures == 0
    record(4, ok, f"1000 exact round trips and group-law checks ({failures} failures), "
                  f"300 framing torsor checks ({framing_failures} failures), exact equality")
    assert ok


def test_criterion_5_twist_offsets():
    names = ["square_torus", "hexagon", "chamber_3_2", "chamber_2", "chamber_3",
             "octagon", "decagon"]
    rng = random.Random(5)
    bad, checked = 0, 0
    for j in range(50):
        name = names[j % len(names)]
        s, basis = built(name), basis_of(name)
        base = framing_vector(s, basis)
        g, n = s.genus, s.n
        vals = [Period(Fraction(rng.randint(1, 30), rng.randint(1, 30)), 2 * rng.randint(-4, 4))
                for _ in range(2 * g)]
        re = [rng.randint(-3, 3) for _ in range(n - 1)]
        re.append(-sum(re))
        rho = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(n - 1)]
        prod = Fraction(1)
        for x in rho:
            prod *= x
        rho.append(1 / prod)
        alpha = PeriodVector.from_symplectic(vals, [Order(Fraction(a), b) for a, b in zip(re, rho)])
        alpha.validate(g, n)
        off = twist_framing(s, alpha)
        twisted = twisted_framing(s, basis, off)
        untwisted = [turning_number(s, p) for p in basis.representatives]
        untwisted += list(base.r[:max(n - 1, 0)])
        want = [int(p.turn) // 2 for p in alpha.values]
        for t, u, w in zip(twisted, untwisted, want):
            checked += 1
            k = round(t)
            if abs(t - k) > 1e-9 or k - u != w:
                bad += 1
    ok = bad == 0
    record(5, ok, f"50 period vectors on {len(names)} surfaces, {checked} basis curves, "
                  f"integer differences equal Im/2pi ({bad} failures)")
    assert ok


@pytest.mark.xfail(strict=True, reason="resolved curves turn by ta + tb, not ta + tb + 1")
def test_criterion_6_concat_calibration():
    s = built("square_torus")
    formula_bad, geometry_bad = [], []
    for ta in range(-2, 3):
        for tb in range(-2, 3):
            assert turning_number(s, kinked_core("a", ta)) == ta
            assert turning_number(s, kinked_core("b", tb)) == tb
            geo = turning_number(s, resolved_curve(ta, tb))
            if concat_turning(ta, tb) != ta + tb + 1:
                formula_bad.append((ta, tb))
            if concat_turning(ta, tb) != geo:
                geometry_bad.append((ta, tb, geo))
    ok = not formula_bad and not geometry_bad
    record(6, ok, f"25 pairs, exact; concat != ta+tb+1 on {len(formula_bad)}, "
                  f"concat != geometric resolution on {len(geometry_bad)} "
                  f"(geometry gives ta+tb)")
    assert ok


def test_concat_matches_geometric_resolution():
    s = built("square_torus")
    for ta in range(-2, 3):
        for tb in range(-2, 3):
            assert concat_turning(ta, tb) == turning_number(s, resolved_curve(ta, tb))


def test_criterion_7_reversal_and_subdivision():
    rng = random.Random(7)
    names = ["square_torus", "hexagon", "octagon", "chamber_2", "chamber_3_2"]
    extra = [build_surface(spec) for spec in random_dilation_surfaces(5, seed=77)]
    surfaces = [built(n) for n in names] + extra
    bad = 0
    values = set()
    for j in range(200):
        s = surfaces[j % len(surfaces)]
        p = random_closed_path(s, rng)
        t = turning_number(s, p)
        values.add(t)
        if turning_number(s, curves.reverse_path(s, p)) != -t:
            bad += 1
        if turning_number(s, curves.subdivide_path(p, rng.randint(2, 4))) != t:
            bad += 1
        if turning_number(s, curves.rotate_path(p, rng.randrange(len(p)))) != t:
            bad += 1
    ok = bad == 0
    record(7, ok, f"200 random closed paths (turning numbers {sorted(values)}), "
                  f"exact integers, {bad} failures")
    assert ok


_DUMP = """
import sys
from dilatkit.corpus import default_corpus
from dilatkit import io as dio
from dilatkit.report import analyse
for name, spec in default_corpus():
    sys.stdout.write(dio.surface_dumps(spec) + "\\n")
    sys.stdout.write(dio.dumps(analyse(spec)[2]) + "\\n")
"""


def test_criterion_8_determinism(tmp_path):
    outs = []
    for seed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        res = subprocess.run([sys.executable, "-c", _DUMP], capture_output=True, env=env,
                             check=True)
        outs.append(res.stdout)
    cli_outs = []
    for run in ("a", "b"):
        d = tmp_path / run
        subprocess.run([sys.executable, "-m", "dilatkit", "corpus", "all", "--out", str(d)],
                       check=True, capture_output=True)
        blobs = []
        for name in sorted(os.listdir(d)):
            blobs.append((name, (d / name).read_bytes()))
        rep = subprocess.run([sys.executable, "-m", "dilatkit", "report", "--json",
                              str(d / "octagon.json")], check=True, capture_output=True)
        cli_outs.append((blobs, rep.stdout))
    lines = outs[0].decode().splitlines()
    ok = outs[0] == outs[1] and cli_outs[0] == cli_outs[1] and len(lines) == 2 * len(CORPUS)
    json.loads(lines[1])
    record(8, ok, f"{len(CORPUS)} surfaces: serialization and reports byte-identical across "
                  f"two processes with different hash seeds; CLI corpus files identical")
    assert ok
