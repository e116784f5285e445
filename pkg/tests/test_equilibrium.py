import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import contexts
from oracles import simplex_grid_min

from berkpot.equilibrium import (
    CompactSetDescription,
    PreconditionError,
    candidate_support,
    energy,
    equilibrium,
    is_capacity_zero,
    kernel_matrix,
    minimize_on_simplex,
    normalize_set,
    potential,
)
from berkpot.sampling import random_ball_scene, random_type_ii
from berkpot.tree import DiscreteMeasure
from berkpot.ultrametric import (
    GAUSS,
    INF,
    INFINITY,
    PrimeContext,
    ball_root,
    diameter_log,
    same_point,
    type_i,
    type_ii,
)

P2 = PrimeContext(2)
TWO_BALLS = CompactSetDescription(((type_i(0), 1), (type_i(1), 1)), (), INFINITY)


def delta(x):
    return DiscreteMeasure(((x, Fraction(1)),))


def test_potential_examples():
    assert potential(delta(type_ii(0, 1)), type_i(Fraction(1, 2)), INFINITY, P2) == -1
    assert potential(delta(type_i(3)), type_i(3), INFINITY, P2) == INF
    half = DiscreteMeasure(((type_ii(0, 1), Fraction(1, 2)), (type_ii(1, 1), Fraction(1, 2))))
    assert potential(half, type_i(4), INFINITY, P2) == Fraction(1, 2)


def test_energy_examples():
    assert energy(delta(type_ii(0, 1)), INFINITY, P2) == 1
    assert energy(delta(type_i(0)), INFINITY, P2) == INF
    half = DiscreteMeasure(((type_ii(0, 1), Fraction(1, 2)), (type_ii(1, 1), Fraction(1, 2))))
    assert energy(half, INFINITY, P2) == Fraction(1, 2)


def test_normalize_examples():
    nested = CompactSetDescription(((type_i(0), 1), (type_i(0), 2)), (), INFINITY)
    assert normalize_set(nested, P2).balls == ((type_i(0), 1),)
    assert normalize_set(TWO_BALLS, P2).balls == TWO_BALLS.balls
    with_point = CompactSetDescription(((type_i(0), 1),), (type_i(4),), INFINITY)
    assert normalize_set(with_point, P2).points == ()


def test_normalize_rejects_pole_inside():
    # a ball of log-radius at most the pole's own diameter swallows the pole
    E = CompactSetDescription(((type_i(0), -6),), (), type_ii(4, 5))
    with pytest.raises(PreconditionError):
        normalize_set(E, P2)
    with pytest.raises(PreconditionError):
        normalize_set(CompactSetDescription((), (type_i(4),), type_i(4)), P2)


@given(st.integers(0, 10 ** 6), contexts, st.integers(1, 4))
def test_normalize_is_idempotent(seed, ctx, k):
    rng = random.Random(seed)
    E = random_ball_scene(rng, ctx, k, normalized=False)
    once = normalize_set(E, ctx)
    assert normalize_set(once, ctx) == once


def test_candidate_support_examples():
    single = CompactSetDescription(((type_i(0), 2),), (), INFINITY)
    assert candidate_support(single, P2) == [type_ii(0, 2)]
    roots = candidate_support(TWO_BALLS, P2)
    assert len(roots) == 2 and same_point(roots[1], type_ii(1, 1), P2)
    points = CompactSetDescription((), (type_i(0), type_i(1)), INFINITY)
    assert candidate_support(points, P2) == []


def test_equilibrium_of_a_ball():
    eq = equilibrium(CompactSetDescription(((type_i(0), 2),), (), INFINITY), P2)
    assert eq.robin == 2 and eq.capacity_log == -2
    assert eq.measure.same_as(delta(type_ii(0, 2)), P2)


def test_equilibrium_of_a_type_ii_point():
    eq = equilibrium(CompactSetDescription((), (type_ii(0, 1),), INFINITY), P2)
    assert eq.robin == 1 == diameter_log(type_ii(0, 1), INFINITY, P2)


def test_equilibrium_of_two_balls():
    eq = equilibrium(TWO_BALLS, P2)
    m = kernel_matrix(candidate_support(TWO_BALLS, P2), INFINITY, P2)
    assert m == [[1, 0], [0, 1]]
    assert eq.robin == Fraction(1, 2)
    assert sorted(w for _, w in eq.measure.atoms) == [Fraction(1, 2)] * 2
    assert abs(simplex_grid_min(m) - 0.5) < 1e-9


def test_capacity_zero_examples():
    assert is_capacity_zero(CompactSetDescription((), (type_i(0), type_i(1)), INFINITY), P2)
    assert not is_capacity_zero(CompactSetDescription((), (type_ii(0, 1),), INFINITY), P2)
    assert is_capacity_zero(CompactSetDescription((), (type_i(7),), INFINITY), P2)
    eq = equilibrium(CompactSetDescription((), (type_i(0), type_i(1)), INFINITY), P2)
    assert eq.robin == INF and eq.capacity_log == -INF and not eq.measure.atoms


def test_minimize_on_simplex_handles_negative_entries():
    m = [[Fraction(-3), Fraction(-5)], [Fraction(-5), Fraction(-2)]]
    w, lam = minimize_on_simplex(m)
    assert lam <= min(m[0][0], m[1][1]) and sum(w) == 1


def test_minimize_on_simplex_many_atoms():
    # block structure: the first three atoms share a subtree
    rng = random.Random(3)
    n = 9
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = Fraction(rng.randint(1, 6))
    for i, j in itertools.combinations(range(3), 2):
        m[i][j] = m[j][i] = Fraction(1, 2)
    w, lam = minimize_on_simplex(m)
    pot = [sum(m[i][j] * w[j] for j in range(n)) for i in range(n)]
    assert all(wi >= 0 for wi in w) and sum(w) == 1
    assert all(pot[i] == lam if w[i] > 0 else pot[i] >= lam for i in range(n))


@given(st.integers(0, 10 ** 6), contexts, st.integers(1, 5), st.sampled_from(["inf", "I0", "gauss", "II"]))
def test_kkt_balance(seed, ctx, k, pole):
    zeta = {"inf": INFINITY, "I0": type_i(0), "gauss": GAUSS, "II": type_ii(3, -2)}[pole]
    rng = random.Random(seed)
    E = random_ball_scene(rng, ctx, k, zeta)
    eq = equilibrium(E, ctx)
    assert eq.measure.is_nonnegative() and eq.measure.total_mass == 1
    for x in candidate_support(E, ctx):
        u = potential(eq.measure, x, zeta, ctx)
        if eq.measure.weight_at(x, ctx) > 0:
            assert u == eq.robin
        else:
            assert u >= eq.robin


@given(st.integers(0, 10 ** 6), contexts, st.integers(1, 3))
def test_robin_decreases_when_the_set_grows(seed, ctx, k):
    rng = random.Random(seed)
    E = random_ball_scene(rng, ctx, k)
    a, L = E.balls[0]
    bigger = CompactSetDescription(((a, L - 1),) + E.balls[1:], (), E.zeta)
    assert equilibrium(bigger, ctx).robin <= equilibrium(E, ctx).robin


@given(st.integers(0, 10 ** 6), contexts, st.integers(1, 3))
def test_mass_stays_on_roots_when_inner_points_are_offered(seed, ctx, k):
    rng = random.Random(seed)
    E = random_ball_scene(rng, ctx, k)
    roots = candidate_support(E, ctx)
    inner = [ball_root(a, L + Fraction(1, 2), E.zeta, ctx) for a, L in E.balls]
    w, lam = minimize_on_simplex(kernel_matrix(roots + inner, E.zeta, ctx))
    assert lam == equilibrium(E, ctx).robin
    assert all(wi == 0 for wi in w[len(roots):])


@given(st.integers(0, 10 ** 6), contexts)
def test_point_capacity_is_its_diameter(seed, ctx):
    rng = random.Random(seed)
    x = random_type_ii(rng)
    for zeta in (INFINITY, type_i(0), GAUSS):
        if same_point(x, zeta, ctx):
            continue
        eq = equilibrium(CompactSetDescription((), (x,), zeta), ctx)
        assert eq.robin == diameter_log(x, zeta, ctx)
