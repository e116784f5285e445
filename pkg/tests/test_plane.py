import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_vandermonde_log

from berkpot.equilibrium import PreconditionError
from berkpot.plane import (
    CombinatorialBudgetError,
    PlaneCompact,
    classical_green,
    discrete_equilibrium_energy,
    fekete_points,
    lagrange_log_abs,
    leja_extremal,
    leja_order,
    vandermonde_log,
)

ROOTS3 = [cmath.exp(2j * math.pi * k / 3) for k in range(3)]


def test_vandermonde_examples():
    assert abs(vandermonde_log(ROOTS3) - 3 * math.log(math.sqrt(3))) < 1e-9
    assert vandermonde_log([0, 1]) == 0
    assert abs(vandermonde_log([0, 1, 2]) - math.log(2)) < 1e-12
    with pytest.raises(ValueError):
        vandermonde_log([1, 1])
    with pytest.raises(ValueError):
        vandermonde_log([1])


points = st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
                  min_size=2, max_size=8, unique=True).filter(
    lambda zs: min(abs(a - b) for i, a in enumerate(zs) for b in zs[i + 1:]) > 1e-3)


@given(points, st.floats(0, 2 * math.pi), st.complex_numbers(max_magnitude=10, allow_nan=False,
                                                             allow_infinity=False))
def test_vandermonde_is_rigid_motion_invariant(zs, angle, shift):
    moved = [cmath.exp(1j * angle) * z + shift for z in zs]
    assert abs(vandermonde_log(moved) - vandermonde_log(zs)) < 1e-9
    assert abs(vandermonde_log(zs) - brute_vandermonde_log(zs)) < 1e-9


def test_fekete_square_diameter_pair():
    E = PlaneCompact.points([1, 1j, -1, -1j])
    arr = fekete_points(E, 1, "exhaustive")
    assert abs(arr.points[0] + arr.points[1]) < 1e-12
    assert abs(math.exp(arr.log_vandermonde) - 2) < 1e-12


def test_fekete_on_the_circle_is_a_rotated_square():
    arr = fekete_points(PlaneCompact.circle(64), 3, "exhaustive")
    assert abs(arr.log_vandermonde - vandermonde_log([1, 1j, -1, -1j])) < 1e-6


def test_exhaustive_budget_is_enforced():
    with pytest.raises(CombinatorialBudgetError, match="greedy"):
        fekete_points(PlaneCompact.circle(256), 10, "exhaustive")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_greedy_never_beats_exhaustive(n):
    for E in (PlaneCompact.circle(24), PlaneCompact.interval(m=24), PlaneCompact.disk(1 + 1j, 2, 20)):
        g = fekete_points(E, n, "greedy")
        x = fekete_points(E, n, "exhaustive")
        assert g.log_vandermonde <= x.log_vandermonde + 1e-12


def test_greedy_circle_is_close_to_equal_spacing():
    arr = fekete_points(PlaneCompact.circle(256), 15, "greedy")
    best = 16 * math.log(16) / 2  # sixteenth roots of unity
    assert abs(arr.log_vandermonde - best) / best < 0.02


def test_leja_order_examples():
    out = leja_order([1, -1, 1j])
    assert out[0] == 1j and list(out[1:]) == [1, -1]
    assert list(leja_order([0, 1])) == [0, 1]
    again = leja_order(out)
    assert list(again) == list(out)


@given(points)
def test_leja_order_puts_the_smallest_product_first(zs):
    out = leja_order(zs)
    deltas = [math.fsum(math.log(abs(a - b)) for b in out if b != a) for a in out]
    assert deltas[0] <= min(deltas) + 1e-9
    assert sorted(out, key=lambda z: (z.real, z.imag)) == sorted(zs, key=lambda z: (z.real, z.imag))


def test_lagrange_examples():
    assert lagrange_log_abs([0, 1], 2) == 0
    nodes = leja_order(np.exp(2j * np.pi * np.arange(64) / 64))
    b0 = nodes[0]
    expected = math.log(2 ** 64 - 1) - math.log(abs(2 - b0)) - math.log(64)
    assert abs(lagrange_log_abs(nodes, 2) - expected) < 1e-9
    assert abs(lagrange_log_abs(nodes, b0)) < 1e-9


def test_leja_extremal_on_the_circle():
    E = PlaneCompact.circle()
    assert abs(leja_extremal(E, 2, 64) - math.log(2)) <= math.log(3 * 64) / 64


def test_leja_extremal_on_the_circle_itself():
    E = PlaneCompact.circle(256)
    z = cmath.exp(1j * 0.001)
    assert leja_extremal(E, z, 64) <= math.log(256) / 64


def test_leja_extremal_on_a_scaled_disk():
    assert abs(leja_extremal(PlaneCompact.disk(0, 2), 4, 64) - math.log(2)) < 0.1


def test_leja_extremal_ignores_the_order_of_later_nodes():
    E = PlaneCompact.circle(128)
    arr = fekete_points(E, 32, "greedy")
    rng = np.random.default_rng(0)
    tail = arr.points[1:].copy()
    rng.shuffle(tail)
    shuffled = np.concatenate([arr.points[:1], tail])
    for z in (2, 1.5j, -3 + 1j):
        diff = abs(lagrange_log_abs(shuffled, z) - lagrange_log_abs(arr.points, z)) / 32
        assert diff <= 2 * math.log(128) / 32


def test_leja_extremal_rejects_nodes():
    E = PlaneCompact.points([0, 1, 2, 3])
    arr = fekete_points(E, 3, "greedy")
    with pytest.raises(PreconditionError):
        leja_extremal(E, arr.points[1], 3)


def test_classical_green_examples():
    assert abs(classical_green(PlaneCompact.disk(0, 1), 2) - math.log(2)) < 1e-15
    assert abs(classical_green(PlaneCompact.interval(), 2) - 1.316958) < 1e-6
    assert classical_green(PlaneCompact.circle(), 1j) == 0
    assert classical_green(PlaneCompact.interval(), 1) == 0
    with pytest.raises(PreconditionError):
        classical_green(PlaneCompact.disk(0, 1), 0.5)
    with pytest.raises(PreconditionError):
        classical_green(PlaneCompact.interval(), 0.25)


@given(st.complex_numbers(min_magnitude=1.1, max_magnitude=50, allow_nan=False, allow_infinity=False))
def test_interval_green_uses_the_outer_branch(z):
    g = classical_green(PlaneCompact.interval(), z)
    assert g > 0
    assert abs(g - abs(cmath.log(z + cmath.sqrt(z - 1) * cmath.sqrt(z + 1)).real)) < 1e-9


@pytest.mark.parametrize("n", [16, 32, 64])
def test_circle_error_is_within_the_log_n_over_n_rate(n):
    err = abs(leja_extremal(PlaneCompact.circle(), 2, n) - math.log(2))
    assert err <= 3 * math.log(n) / n


def test_discrete_energy_examples():
    assert abs(discrete_equilibrium_energy(PlaneCompact.circle(), 8)) < 0.3
    assert abs(discrete_equilibrium_energy(PlaneCompact.interval(), 32) - math.log(2)) < 0.15
    with pytest.raises(ValueError):
        discrete_equilibrium_energy(PlaneCompact.circle(), 1)


def test_discrete_energy_rises_to_the_robin_constant():
    # transfinite diameters shrink with n, so their negative logs grow
    for E, robin in ((PlaneCompact.circle(512), 0.0), (PlaneCompact.interval(m=512), math.log(2))):
        vals = [discrete_equilibrium_energy(E, n) for n in (4, 8, 16, 32, 64)]
        assert all(b > a for a, b in zip(vals, vals[1:]))
        assert vals[-1] < robin + 1e-12


def test_exhaustive_energy_of_roots_of_unity():
    E = PlaneCompact.circle(24)
    for n in (2, 3, 5):
        got = discrete_equilibrium_energy(E, n, "exhaustive")
        assert abs(got + math.log(n + 1) / n) < 1e-9


def test_compact_validation():
    with pytest.raises(ValueError):
        PlaneCompact.circle(4)
    with pytest.raises(ValueError):
        PlaneCompact("triangle")
    square = PlaneCompact("polygon", 16, vertices=(1, 1j, -1, -1j))
    b = square.boundary()
    assert len(b) == 16 and np.allclose(np.abs(b.real) + np.abs(b.imag), 1)


@settings(max_examples=20)
@given(st.integers(8, 64))
def test_boundary_samples_lie_on_the_boundary(m):
    assert np.allclose(np.abs(PlaneCompact.circle(m).boundary()), 1)
    d = PlaneCompact.disk(2 - 1j, 3, m).boundary()
    assert np.allclose(np.abs(d - (2 - 1j)), 3)
    iv = PlaneCompact.interval(-2, 5, m).boundary()
    assert np.all(iv.imag == 0) and iv.real.min() == -2 and iv.real.max() == 5
