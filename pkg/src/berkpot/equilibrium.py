"""Potentials, energies and equilibrium measures of ball-union compacts.

A compact is a finite union of closed balls ``{z : -log[z, a]_zeta >= L}``
plus finitely many isolated points. Each ball is cut off from the pole by
a single type II root, and the equilibrium measure lives on the roots and
the isolated type II points, so the Robin constant is the minimum of a
finite quadratic form over the probability simplex. The minimizer is found
exactly: an active-set solve over the rationals, certified by the KKT
conditions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .tree import DiscreteMeasure, solve_exact
from .ultrametric import (
    INF,
    BerkPoint,
    LogScalar,
    PrimeContext,
    ball_contains,
    ball_root,
    canonical_key,
    format_point,
    hsia_kernel_log,
    lies_between,
    same_point,
)

__all__ = [
    "PreconditionError",
    "CompactSetDescription",
    "EquilibriumResult",
    "potential",
    "energy",
    "kernel_matrix",
    "normalize_set",
    "candidate_support",
    "minimize_on_simplex",
    "equilibrium",
    "is_capacity_zero",
    "in_shadow",
    "in_zeta_component",
]


class PreconditionError(ValueError):
    """An operation was called outside its domain (e.g. zero capacity)."""


Ball = Tuple[BerkPoint, Fraction]


@dataclass(frozen=True)
class CompactSetDescription:
    balls: Tuple[Ball, ...]
    points: Tuple[BerkPoint, ...]
    zeta: BerkPoint

    def __post_init__(self):
        object.__setattr__(self, "balls", tuple((a, Fraction(L)) for a, L in self.balls))
        object.__setattr__(self, "points", tuple(self.points))

    def check(self, ctx: PrimeContext) -> None:
        for a, L in self.balls:
            if ball_contains(self.zeta, a, L, self.zeta, ctx):
                raise PreconditionError(f"the pole lies in the ball around {format_point(a)}")
        for x in self.points:
            if same_point(x, self.zeta, ctx):
                raise PreconditionError("the pole is one of the points of E")

    @property
    def is_empty(self) -> bool:
        return not self.balls and not self.points

    def roots(self, ctx: PrimeContext) -> List[BerkPoint]:
        return [ball_root(a, L, self.zeta, ctx) for a, L in self.balls]


@dataclass(frozen=True)
class EquilibriumResult:
    robin: LogScalar
    capacity_log: LogScalar
    measure: DiscreteMeasure

    @property
    def positive_capacity(self) -> bool:
        return self.robin != INF


def potential(nu: DiscreteMeasure, x: BerkPoint, zeta: BerkPoint, ctx: PrimeContext) -> LogScalar:
    """``sum_i w_i * -log[x, y_i]_zeta``."""
    total, plus, minus = Fraction(0), False, False
    for y, w in nu.atoms:
        if w == 0:
            continue
        k = hsia_kernel_log(x, y, zeta, ctx)
        if k in (INF, -INF):
            if (k == INF) == (w > 0):
                plus = True
            else:
                minus = True
        else:
            total += w * k
    if plus and minus:
        raise ArithmeticError("potential is undefined (inf - inf)")
    return INF if plus else -INF if minus else total


def kernel_matrix(points: Sequence[BerkPoint], zeta: BerkPoint, ctx: PrimeContext) -> List[List[LogScalar]]:
    n = len(points)
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = hsia_kernel_log(points[i], points[j], zeta, ctx)
    return m


def energy(nu: DiscreteMeasure, zeta: BerkPoint, ctx: PrimeContext) -> LogScalar:
    pts = nu.points
    w = [wt for _, wt in nu.atoms]
    m = kernel_matrix(pts, zeta, ctx)
    if any(w[i] > 0 and m[i][i] == INF for i in range(len(w))):
        return INF
    return sum((w[i] * w[j] * m[i][j] for i in range(len(w)) for j in range(len(w))), Fraction(0))


def _shadow_contains(item, z: BerkPoint, zeta: BerkPoint, ctx: PrimeContext) -> bool:
    kind, x = item[0], item[1]
    if kind == "ball":
        return ball_contains(z, x, item[2], zeta, ctx)
    if x.is_type_ii:
        return lies_between(x, z, zeta, ctx)
    return same_point(x, z, ctx)


def _items(E: CompactSetDescription, ctx: PrimeContext):
    items = [("ball", a, L, ball_root(a, L, E.zeta, ctx)) for a, L in E.balls]
    items += [("point", x, None, x) for x in E.points]
    return items


def in_shadow(E: CompactSetDescription, z: BerkPoint, ctx: PrimeContext) -> bool:
    """True iff ``z`` is cut off from the pole by ``E`` (or lies in ``E``)."""
    return any(_shadow_contains(it, z, E.zeta, ctx) for it in _items(E, ctx))


def in_zeta_component(E: CompactSetDescription, z: BerkPoint, ctx: PrimeContext) -> bool:
    return not in_shadow(E, z, ctx)


def normalize_set(E: CompactSetDescription, ctx: PrimeContext) -> CompactSetDescription:
    """Drop every ball or point cut off from the pole by another member.

    Balls are nested or disjoint, so the survivors are pairwise disjoint and
    bound the same pole component. A ball whose root coincides with an
    isolated type II point wins over the point.
    """
    E.check(ctx)
    items = _items(E, ctx)
    keep = []
    for j, item_j in enumerate(items):
        dominated = False
        for i, item_i in enumerate(items):
            if i == j or not _shadow_contains(item_i, item_j[3], E.zeta, ctx):
                continue
            mutual = _shadow_contains(item_j, item_i[3], E.zeta, ctx)
            if not mutual:
                dominated = True
            elif item_i[0] == "ball" and item_j[0] == "point":
                dominated = True
            elif item_i[0] == item_j[0] and i < j:
                dominated = True
            if dominated:
                break
        if not dominated:
            keep.append(item_j)
    return CompactSetDescription(
        balls=tuple((it[1], it[2]) for it in keep if it[0] == "ball"),
        points=tuple(it[1] for it in keep if it[0] == "point"),
        zeta=E.zeta,
    )


def candidate_support(E: CompactSetDescription, ctx: PrimeContext) -> List[BerkPoint]:
    """Ball roots toward the pole, then the isolated type II points."""
    support = E.roots(ctx) + [x for x in E.points if x.is_type_ii]
    seen, out = set(), []
    for x in support:
        key = canonical_key(x, ctx)
        if key not in seen:
            seen.add(key)
            out.append(x)
    return out


# -- simplex-constrained quadratic minimization ------------------------------


def _solve_on_support(m, support) -> Optional[Tuple[List[Fraction], Fraction]]:
    """Weights on ``support`` with equal potentials there and total mass 1."""
    k = len(support)
    a = [[m[i][j] for j in support] + [Fraction(-1)] for i in support]
    a.append([Fraction(1)] * k + [Fraction(0)])
    sol = solve_exact(a, [Fraction(0)] * k + [Fraction(1)])
    if sol is None:
        return None
    return sol[:k], sol[k]


def _kkt_check(m, w: List[Fraction], lam: Fraction) -> Tuple[bool, List[Fraction]]:
    n = len(m)
    pot = [sum((m[i][j] * w[j] for j in range(n) if w[j]), Fraction(0)) for i in range(n)]
    ok = all(wi >= 0 for wi in w) and sum(w) == 1
    ok = ok and all((pot[i] == lam) if w[i] > 0 else (pot[i] >= lam) for i in range(n))
    return ok, pot


def _expand(n, support, ws) -> List[Fraction]:
    w = [Fraction(0)] * n
    for i, wi in zip(support, ws):
        w[i] = wi
    return w


def _try_support(m, support):
    got = _solve_on_support(m, support)
    if got is None:
        return None
    ws, lam = got
    w = _expand(len(m), support, ws)
    ok, _ = _kkt_check(m, w, lam)
    if ok and all(wi > 0 for wi in ws):
        return w, lam
    return None


def _frank_wolfe(m, iters: int = 5000) -> np.ndarray:
    a = np.array([[float(v) for v in row] for row in m])
    n = len(a)
    x = np.full(n, 1.0 / n)
    for _ in range(iters):
        grad = 2 * a @ x
        s = int(np.argmin(grad))
        d = -x.copy()
        d[s] += 1.0
        gd = grad @ d
        if gd > -1e-15:
            break
        curv = d @ a @ d
        gamma = 1.0 if curv <= 0 else min(1.0, -gd / (2 * curv))
        x = x + gamma * d
    return x


def minimize_on_simplex(m: List[List[Fraction]], max_enum: int = 16) -> Tuple[List[Fraction], Fraction]:
    """Exact minimizer of ``w^T M w`` over the probability simplex.

    Returns ``(w, lam)`` where ``lam`` is the minimum value and ``(M w)_i ==
    lam`` on the support, ``>= lam`` elsewhere. Up to three atoms every
    support is tried in closed form; beyond that a float Frank-Wolfe run
    proposes the support and an exact active-set loop certifies it.
    """
    n = len(m)
    if n == 0:
        raise ValueError("empty support")
    if n > 3:
        guess = _frank_wolfe(m)
        support = sorted(i for i in range(n) if guess[i] > 1e-9) or [int(np.argmax(guess))]
        seen = set()
        while tuple(support) not in seen:
            seen.add(tuple(support))
            got = _solve_on_support(m, support)
            if got is None:
                break
            ws, lam = got
            w = _expand(n, support, ws)
            if any(wi <= 0 for wi in ws):
                worst = min(support, key=lambda i: w[i])
                support = [i for i in support if i != worst]
                if not support:
                    break
                continue
            ok, pot = _kkt_check(m, w, lam)
            if ok:
                return w, lam
            support = sorted(support + [min(range(n), key=lambda i: pot[i])])
    if n > max_enum:
        raise ArithmeticError(f"active-set search failed on {n} atoms")
    for size in range(1, n + 1):
        for support in itertools.combinations(range(n), size):
            got = _try_support(m, list(support))
            if got is not None:
                return got
    raise ArithmeticError("no KKT point found; kernel matrix is degenerate")


def equilibrium(E: CompactSetDescription, ctx: PrimeContext) -> EquilibriumResult:
    E = normalize_set(E, ctx)
    support = candidate_support(E, ctx)
    if not support:
        return EquilibriumResult(robin=INF, capacity_log=-INF, measure=DiscreteMeasure())
    m = kernel_matrix(support, E.zeta, ctx)
    w, lam = minimize_on_simplex(m)
    mu = DiscreteMeasure(tuple((x, wi) for x, wi in zip(support, w) if wi != 0))
    return EquilibriumResult(robin=lam, capacity_log=-lam, measure=mu)


def is_capacity_zero(E: CompactSetDescription, ctx: PrimeContext) -> bool:
    return not candidate_support(normalize_set(E, ctx), ctx)


def capacity_float(result: EquilibriumResult, ctx: PrimeContext) -> float:
    """Decimal capacity ``p ** -robin`` (presentation only)."""
    if result.robin == INF:
        return 0.0
    return math.pow(ctx.p, -float(result.robin))
