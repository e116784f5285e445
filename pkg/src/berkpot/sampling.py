"""Seeded generators for points, scenes and sample sets.

Everything takes a ``random.Random`` so sweeps are reproducible from one seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional

from .equilibrium import CompactSetDescription, PreconditionError, candidate_support, normalize_set
from .ultrametric import INFINITY, BerkPoint, PrimeContext, ball_root, canonical_key

__all__ = [
    "random_rational",
    "random_type_i",
    "random_type_ii",
    "random_point",
    "random_ball_scene",
    "sample_points",
]

_DENOMS = (1, 1, 1, 2, 3, 4, 5, 7, 8, 9, 25, 27)


def random_rational(rng: random.Random, spread: int = 40) -> Fraction:
    return Fraction(rng.randint(-spread, spread), rng.choice(_DENOMS))


def random_type_i(rng: random.Random, allow_infinity: bool = False) -> BerkPoint:
    if allow_infinity and rng.random() < 0.1:
        return INFINITY
    return BerkPoint(random_rational(rng))


def random_type_ii(rng: random.Random) -> BerkPoint:
    return BerkPoint(random_rational(rng), Fraction(rng.randint(-8, 12), rng.choice((1, 1, 2, 3))))


def random_point(rng: random.Random, allow_infinity: bool = True) -> BerkPoint:
    if rng.random() < 0.5:
        return random_type_i(rng, allow_infinity)
    return random_type_ii(rng)


def random_ball_scene(rng: random.Random, ctx: PrimeContext, n_balls: int,
                      zeta: Optional[BerkPoint] = None, normalized: bool = True,
                      tries: int = 500) -> CompactSetDescription:
    """A union of ``n_balls`` closed balls that keeps ``zeta`` outside.

    With ``normalized`` the scene is redrawn until no ball shadows another,
    so it has exactly ``n_balls`` support roots.
    """
    zeta = INFINITY if zeta is None else zeta
    for _ in range(tries):
        balls, draws = [], 0
        while len(balls) < n_balls and draws < 50 * n_balls:
            draws += 1
            a = random_type_i(rng)
            L = Fraction(rng.randint(-6, 10), rng.choice((1, 1, 2, 3)))
            try:
                ball_root(a, L, zeta, ctx)
                E = CompactSetDescription(((a, L),), (), zeta)
                E.check(ctx)
            except (ValueError, PreconditionError):
                continue
            balls.append((a, L))
        if len(balls) < n_balls:
            continue
        E = CompactSetDescription(tuple(balls), (), zeta)
        try:
            E.check(ctx)
        except PreconditionError:
            continue
        if not normalized:
            return E
        N = normalize_set(E, ctx)
        if len(N.balls) == n_balls and len(candidate_support(N, ctx)) == n_balls:
            return N
    raise RuntimeError(f"no valid {n_balls}-ball scene after {tries} draws")


def sample_points(rng: random.Random, ctx: PrimeContext, E: CompactSetDescription,
                  count: int) -> List[BerkPoint]:
    """Random points mixed with points near the structure of ``E``.

    Includes ball centres and roots plus disks just above and below each
    root, where kinks of the Green function sit.
    """
    special: List[BerkPoint] = []
    for (a, L), r in zip(E.balls, E.roots(ctx)):
        special.append(a)
        special.append(r)
        if r.is_type_ii:
            special.append(BerkPoint(r.center, r.log_radius + Fraction(1, 2)))
            special.append(BerkPoint(r.center, r.log_radius - Fraction(1, 2)))
            special.append(BerkPoint(r.center + ctx.p ** 8, r.log_radius + 1))
    special += list(E.points)
    seen, unique = set(), []

    def offer(z: BerkPoint) -> None:
        key = canonical_key(z, ctx)
        if key not in seen:
            seen.add(key)
            unique.append(z)

    for z in special:
        offer(z)
    tries = 0
    while len(unique) < count and tries < 50 * count:
        offer(random_point(rng))
        tries += 1
    return unique
