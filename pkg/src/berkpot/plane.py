"""Leja and Fekete points in the complex plane, compared with Green functions.

Floating point throughout, natural logarithms. Products of distances are
always handled as sums of logs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .equilibrium import PreconditionError

__all__ = [
    "PlaneCompact",
    "FeketeArray",
    "CombinatorialBudgetError",
    "vandermonde_log",
    "fekete_points",
    "leja_order",
    "lagrange_log_abs",
    "leja_extremal",
    "classical_green",
    "discrete_equilibrium_energy",
]

EXHAUSTIVE_BUDGET = 10 ** 6


class CombinatorialBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class PlaneCompact:
    """A compact in C sampled at ``m`` boundary points.

    ``kind`` is one of ``circle``, ``disk``, ``interval``, ``points`` or
    ``polygon``. Disks use ``center``/``radius``; intervals use ``a``/``b``
    on the real line; ``points`` and ``polygon`` use ``vertices``.
    """

    kind: str
    m: int = 256
    center: complex = 0j
    radius: float = 1.0
    a: float = -1.0
    b: float = 1.0
    vertices: Optional[Sequence[complex]] = field(default=None)

    def __post_init__(self):
        if self.kind not in ("circle", "disk", "interval", "points", "polygon"):
            raise ValueError(f"unknown compact kind {self.kind!r}")
        if self.kind != "points" and self.m < 8:
            raise ValueError("discretization needs m >= 8")
        if self.kind in ("points", "polygon") and not self.vertices:
            raise ValueError(f"{self.kind} needs vertices")

    @classmethod
    def circle(cls, m=256):
        return cls("circle", m)

    @classmethod
    def disk(cls, center=0j, radius=1.0, m=256):
        return cls("disk", m, center=complex(center), radius=float(radius))

    @classmethod
    def interval(cls, a=-1.0, b=1.0, m=256):
        return cls("interval", m, a=float(a), b=float(b))

    @classmethod
    def points(cls, pts):
        pts = tuple(complex(z) for z in pts)
        return cls("points", len(pts), vertices=pts)

    def boundary(self) -> np.ndarray:
        m = self.m
        if self.kind in ("circle", "disk"):
            c, r = (0j, 1.0) if self.kind == "circle" else (self.center, self.radius)
            return c + r * np.exp(2j * np.pi * np.arange(m) / m)
        if self.kind == "interval":
            # Chebyshev-Lobatto grid: dense near the endpoints where Fekete points cluster
            x = np.cos(np.pi * np.arange(m) / (m - 1))[::-1]
            return (self.a + self.b) / 2 + (self.b - self.a) / 2 * x + 0j
        if self.kind == "points":
            return np.asarray(self.vertices, dtype=complex)
        vs = np.asarray(self.vertices, dtype=complex)
        edges = np.roll(vs, -1) - vs
        lengths = np.abs(edges)
        s = np.arange(m) * lengths.sum() / m
        cum = np.concatenate([[0.0], np.cumsum(lengths)])
        k = np.searchsorted(cum, s, side="right") - 1
        return vs[k] + edges[k] * ((s - cum[k]) / lengths[k])


@dataclass(frozen=True)
class FeketeArray:
    points: np.ndarray
    log_vandermonde: float

    @property
    def order(self) -> int:
        return len(self.points) - 1


def _check_distinct(pts: np.ndarray) -> None:
    d = np.abs(pts[:, None] - pts[None, :])
    np.fill_diagonal(d, np.inf)
    if len(pts) > 1 and d.min() == 0.0:
        raise ValueError("points must be pairwise distinct")


def vandermonde_log(points) -> float:
    """``sum_{j<k} log|a_j - a_k|``."""
    pts = np.asarray(points, dtype=complex)
    if len(pts) < 2:
        raise ValueError("need at least two points")
    _check_distinct(pts)
    j, k = np.triu_indices(len(pts), 1)
    return math.fsum(np.log(np.abs(pts[j] - pts[k])))


def _log_delta(pts: np.ndarray) -> np.ndarray:
    d = np.abs(pts[:, None] - pts[None, :])
    np.fill_diagonal(d, 1.0)
    return np.log(d).sum(axis=1)


def leja_order(points) -> np.ndarray:
    """Move the point with the smallest ``|Delta_j|`` to the front.

    Ties go to the lowest original index; the others keep their order.
    """
    pts = np.asarray(points, dtype=complex)
    _check_distinct(pts)
    ld = _log_delta(pts)
    j = int(np.flatnonzero(ld <= ld.min() + 1e-12 * max(1.0, abs(ld.min())))[0])
    return np.concatenate([pts[j:j + 1], pts[:j], pts[j + 1:]])


def _greedy_leja(cand: np.ndarray, count: int) -> np.ndarray:
    chosen = [int(np.argmax(np.abs(cand)))]
    with np.errstate(divide="ignore"):
        score = np.log(np.abs(cand - cand[chosen[0]]))
        for _ in range(count - 1):
            score[chosen] = -np.inf
            i = int(np.argmax(score))
            chosen.append(i)
            score = score + np.log(np.abs(cand - cand[i]))
    return cand[chosen]


def _exhaustive(cand: np.ndarray, count: int) -> np.ndarray:
    m = len(cand)
    if math.comb(m, count) > EXHAUSTIVE_BUDGET:
        raise CombinatorialBudgetError(
            f"C({m}, {count}) subsets exceed the exhaustive budget; use mode='greedy'")
    with np.errstate(divide="ignore"):
        logd = np.log(np.abs(cand[:, None] - cand[None, :]))
    combos = np.array(list(combinations(range(m), count)), dtype=np.int64)
    total = np.zeros(len(combos))
    for j, k in combinations(range(count), 2):
        total += logd[combos[:, j], combos[:, k]]
    return cand[combos[int(np.argmax(total))]]


def fekete_points(E: PlaneCompact, n: int, mode: str = "greedy") -> FeketeArray:
    """``n + 1`` points of ``E``'s discretization with (nearly) maximal Vandermonde.

    ``exhaustive`` is the true discrete maximizer; ``greedy`` is the Leja
    sequence started at the point of largest modulus, a lower bound.
    """
    cand = E.boundary()
    if n + 1 > len(cand):
        raise ValueError(f"order {n} needs more than {len(cand)} discretization points")
    if mode == "exhaustive":
        pts = _exhaustive(cand, n + 1)
    elif mode == "greedy":
        pts = _greedy_leja(cand, n + 1)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    pts = leja_order(pts)
    return FeketeArray(pts, vandermonde_log(pts))


def lagrange_log_abs(nodes, z: complex) -> float:
    """``log |L_n(z)|`` for the cardinal polynomial of the first node."""
    b = np.asarray(nodes, dtype=complex)
    num = np.log(np.abs(z - b[1:]))
    den = np.log(np.abs(b[0] - b[1:]))
    terms = np.concatenate([num, -den])
    return math.fsum(terms[np.argsort(np.abs(terms))])


def leja_extremal(E: PlaneCompact, z: complex, n: int, mode: str = "greedy") -> float:
    """``(1/n) log |L_n(z)|`` over order-``n`` extremal nodes."""
    arr = fekete_points(E, n, mode)
    if np.any(np.abs(arr.points[1:] - z) == 0):
        raise PreconditionError("z coincides with a node; it must lie off the discretization")
    return lagrange_log_abs(arr.points, z) / n


def classical_green(E: PlaneCompact, z: complex) -> float:
    """Green function with pole at infinity, in closed form."""
    z = complex(z)
    if E.kind in ("circle", "disk"):
        c, r = (0j, 1.0) if E.kind == "circle" else (E.center, E.radius)
        d = abs(z - c)
        if d < r * (1 - 1e-12):
            raise PreconditionError("z lies inside the disk; the comparison needs z outside E")
        return max(math.log(d / r), 0.0)
    if E.kind == "interval":
        if z.imag == 0 and E.a < z.real < E.b:
            raise PreconditionError("z lies inside the interval; the comparison needs z outside E")
        w = (2 * z - E.a - E.b) / (E.b - E.a)
        s = np.sqrt(w * w - 1 + 0j)
        return max(math.log(max(abs(w + s), abs(w - s))), 0.0)
    raise ValueError(f"no closed-form Green function for {E.kind!r}")


def discrete_equilibrium_energy(E: PlaneCompact, n: int, mode: str = "greedy") -> float:
    """``-(2 / (n (n+1))) log M`` over order-``n`` nodes: a Robin-constant proxy."""
    if n < 2:
        raise ValueError("n must be at least 2")
    arr = fekete_points(E, n, mode)
    return -2.0 * arr.log_vandermonde / (n * (n + 1))
