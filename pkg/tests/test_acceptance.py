"""Acceptance criteria, one test each; the terminal summary prints a PASS/FAIL line per criterion."""

import itertools
import math
import random
import time
from fractions import Fraction

import pytest

from oracles import chordal_log, simplex_grid_min

from berkpot.equilibrium import (
    CompactSetDescription,
    candidate_support,
    equilibrium,
    is_capacity_zero,
    kernel_matrix,
    minimize_on_simplex,
)
from berkpot.green import (
    ball_green_closed_form,
    brelot_cartan_family_check,
    green_eval,
    green_function,
    green_properties_report,
    nested_limit_check,
    verify_main_theorem,
)
from berkpot.plane import PlaneCompact, classical_green, leja_extremal
from berkpot.sampling import random_ball_scene, random_point, random_type_i, random_type_ii, sample_points
from berkpot.tree import DiscreteMeasure, add_retractions, convex_hull, laplacian, restrict_kernel, retraction
from berkpot.ultrametric import (
    GAUSS,
    INFINITY,
    PrimeContext,
    ball_contains,
    ball_root,
    diameter_log,
    hsia_kernel_log,
    same_point,
    spherical_kernel_log,
    type_i,
    type_ii,
)

PRIMES = [PrimeContext(p) for p in (2, 3, 5)]
POLES = [INFINITY, type_i(0), GAUSS, type_ii(3, -2), type_i(Fraction(1, 3))]


def scenes(seed, count, sizes):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        ctx = rng.choice(PRIMES)
        out.append((ctx, random_ball_scene(rng, ctx, rng.choice(sizes), rng.choice(POLES))))
    return out


@pytest.mark.acceptance(1, "ball Green function equals its closed form")
def test_ball_green_closed_form():
    start = time.perf_counter()
    rng = random.Random(101)
    checked = 0
    for ctx in PRIMES:
        for _ in range(10):
            E = random_ball_scene(rng, ctx, 1, rng.choice(POLES))
            (a, L), = E.balls
            G = green_function(E, ctx)
            for z in sample_points(rng, ctx, E, 100):
                assert green_eval(G, z, ctx) == ball_green_closed_form(a, L, z, E.zeta, ctx)
                checked += 1
    assert checked >= 3000
    assert time.perf_counter() - start < 5


@pytest.mark.acceptance(2, "capacity of a type II point is its diameter")
def test_point_capacity():
    rng = random.Random(202)
    done = 0
    while done < 50:
        ctx, x, zeta = rng.choice(PRIMES), random_type_ii(rng), rng.choice(POLES)
        if same_point(x, zeta, ctx):
            continue
        eq = equilibrium(CompactSetDescription((), (x,), zeta), ctx)
        assert eq.robin == diameter_log(x, zeta, ctx)
        assert eq.capacity_log == -eq.robin
        done += 1


@pytest.mark.acceptance(3, "Laplacian of the restricted kernel is a unit dipole")
def test_laplacian_identity():
    rng = random.Random(303)
    done = 0
    while done < 25:
        ctx = rng.choice(PRIMES)
        hull = [type_ii(Fraction(rng.randint(-12, 12), rng.choice([1, 2, 3])), rng.randint(-3, 5))
                for _ in range(rng.randint(1, 6))]
        y, zeta = random_point(rng), random_point(rng)
        if same_point(y, zeta, ctx):
            continue
        g = add_retractions(convex_hull(hull, ctx), [y, zeta], ctx)
        mu = laplacian(restrict_kernel(g, y, zeta, ctx))
        expected = DiscreteMeasure.from_pairs([(retraction(g, y, ctx), 1), (retraction(g, zeta, ctx), -1)], ctx)
        assert mu.same_as(expected, ctx)
        assert mu.total_mass == 0
        done += 1


@pytest.mark.acceptance(4, "envelope of normalized candidates equals the Green function")
def test_main_theorem():
    rng = random.Random(404)
    for ctx, E in scenes(404, 20, [1, 2, 3, 4]):
        rep = verify_main_theorem(E, sample_points(rng, ctx, E, 200), ctx, seed=rng.randrange(10 ** 6))
        assert rep.passed, rep.to_dict()
        assert rep.max_gap == 0


@pytest.mark.acceptance(5, "Green functions decrease as the set grows")
def test_monotonicity():
    rng = random.Random(505)
    pairs = exterior_hits = 0
    for ctx, E in scenes(505, 12, [1]):
        (a, L1), = E.balls
        try:
            root2 = ball_root(a, L1 - 1, E.zeta, ctx)
        except ValueError:
            continue
        L2 = L1 - Fraction(rng.randint(1, 4), rng.choice([1, 2]))
        if diameter_log(root2, E.zeta, ctx) != L1 - 1 or L2 <= diameter_log(E.zeta, E.zeta, ctx):
            continue
        E2 = CompactSetDescription(((a, L2),), (), E.zeta)
        G1, G2 = green_function(E, ctx), green_function(E2, ctx)
        samples = sample_points(rng, ctx, E2, 80) + [random_type_i(rng) for _ in range(40)]
        rep = green_properties_report(G1, samples, ctx, larger=G2)
        assert rep.passed, rep.to_dict()
        exterior = [z for z in samples if z.is_type_i and not same_point(z, E.zeta, ctx)
                    and not ball_contains(z, a, L2, E.zeta, ctx)]
        for z in exterior:
            assert green_eval(G1, z, ctx) - green_eval(G2, z, ctx) == L1 - L2
        pairs += 1
        exterior_hits += len(exterior)
    assert pairs >= 6 and exterior_hits >= 100, (pairs, exterior_hits)


@pytest.mark.acceptance(6, "shrinking balls give Green values rising to the limit")
def test_nested_limits():
    a, L = type_i(0), Fraction(2)
    radii = [L - Fraction(1, n) for n in range(1, 65)]
    witness = ball_root(a, L - 2, INFINITY, PrimeContext(2))
    for ctx in PRIMES:
        samples = [witness] + sample_points(random.Random(6), ctx, CompactSetDescription(((a, L),), (), INFINITY), 60)
        rep = nested_limit_check(a, radii, L, INFINITY, samples, ctx)
        assert rep.passed, rep.to_dict()
        devs = next(c for c in rep.checks if c.name == "witness-deviation").witness["deviations"]
        assert devs == [Fraction(1, n) for n in range(1, 65)]
        assert devs[-1] == Fraction(1, 64) == rep.max_gap


@pytest.mark.acceptance(7, "regularization deficiency sets of the kernel family")
def test_brelot_cartan():
    rng = random.Random(707)
    ctx = PrimeContext(2)
    samples = [random_point(rng) for _ in range(40)]
    for _ in range(10):
        a = random_type_i(rng)
        rep = brelot_cartan_family_check(a, 64, samples, ctx)
        assert rep.passed, rep.to_dict()
        deficient = rep.checks[0].witness["deficient"]
        assert len(deficient) == 1 and same_point(deficient[0], a, ctx)
        assert any(c.name == "deficiency-capacity-zero" and c.passed for c in rep.checks)
        assert is_capacity_zero(CompactSetDescription((), (a,), GAUSS), ctx)
    done = 0
    while done < 10:
        a = random_type_ii(rng)
        if same_point(a, GAUSS, ctx):
            continue
        rep = brelot_cartan_family_check(a, 64, samples, ctx)
        assert rep.passed and rep.checks[0].witness["deficient"] == []
        done += 1


@pytest.mark.acceptance(8, "exact simplex minimizer beats a 1e-3 grid and balances")
def test_equilibrium_qp_oracle():
    subsets = 0
    for ctx, E in scenes(808, 12, [2, 3, 4]):
        support = candidate_support(E, ctx)
        for k in (2, 3):
            for atoms in itertools.combinations(support, k):
                m = kernel_matrix(list(atoms), E.zeta, ctx)
                w, lam = minimize_on_simplex(m)
                assert sum(w) == 1 and all(x >= 0 for x in w)
                assert lam == sum(w[i] * m[i][j] * w[j] for i in range(k) for j in range(k))
                pot = [sum(m[i][j] * w[j] for j in range(k)) for i in range(k)]
                assert all(pot[i] == lam if w[i] > 0 else pot[i] >= lam for i in range(k))
                assert float(lam) <= simplex_grid_min([[float(x) for x in row] for row in m]) + 1e-12
                subsets += 1
    assert subsets >= 20


@pytest.mark.acceptance(9, "Leja extremal function approaches the classical Green function")
def test_classical_comparison():
    start = time.perf_counter()
    circle, interval = PlaneCompact.circle(), PlaneCompact.interval()
    errs_c = [abs(leja_extremal(circle, 2, n) - math.log(2)) for n in (16, 32, 64)]
    vals_i = [leja_extremal(interval, 2, n) for n in (16, 32, 64)]
    target = classical_green(interval, 2)
    assert abs(target - 1.316958) < 1e-6
    errs_i = [abs(v - target) for v in vals_i]
    assert errs_c[-1] <= 0.09
    assert abs(vals_i[-1] - 1.316958) <= 0.1
    assert errs_c[0] > errs_c[1] > errs_c[2]
    assert errs_i[0] > errs_i[1] > errs_i[2]
    assert time.perf_counter() - start < 10


@pytest.mark.acceptance(10, "strong triangle inequality and kernel bounds")
def test_kernel_bounds():
    rng = random.Random(1010)
    for ctx in PRIMES:
        for _ in range(1000):
            x, y, z, zeta = (random_point(rng) for _ in range(4))
            k = lambda u, v: hsia_kernel_log(u, v, zeta, ctx)  # noqa: E731
            assert k(x, y) >= min(k(x, z), k(z, y))
            assert spherical_kernel_log(x, y, ctx) >= 0
        for _ in range(200):
            x, y = (random_type_i(rng, allow_infinity=rng.random() < 0.1) for _ in range(2))
            expected = chordal_log(x.center, y.center, ctx.p)
            assert spherical_kernel_log(x, y, ctx) == expected
