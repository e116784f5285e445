"""Exact geometry of the Berkovich projective line over Q with a p-adic norm.

Points are closed disks ``D(c, p^-s)`` with a rational center ``c`` and a
rational log-radius ``s`` (type II), classical points ``c`` (type I), or the
point at infinity. Every quantity that would be a kernel or a diameter is
stored as ``-log_p`` of the value, so larger means closer. Those log values
are exact :class:`fractions.Fraction` objects, with ``math.inf`` standing for
a zero kernel and ``-math.inf`` for a pole.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple, Union

__all__ = [
    "INF",
    "LogScalar",
    "PointFormatError",
    "PrimeContext",
    "BerkPoint",
    "type_i",
    "type_ii",
    "INFINITY",
    "GAUSS",
    "vp",
    "same_point",
    "canonical_key",
    "join_wrt_infinity",
    "small_kernel_log",
    "spherical_kernel_log",
    "hsia_kernel_log",
    "diameter_log",
    "path_distance",
    "contains_disk",
    "lies_between",
    "path_legs",
    "ball_root",
    "ball_contains",
    "format_rational",
    "parse_rational",
    "format_point",
    "parse_point",
    "format_log",
]

INF = math.inf

#: ``-log_p`` of a nonnegative value: a Fraction, ``INF`` (value 0) or
#: ``-INF`` (value +infinity, only at poles of the generalized kernel).
LogScalar = Union[Fraction, float]


class PointFormatError(ValueError):
    """Raised when a point or rational string cannot be parsed."""


@dataclass(frozen=True)
class PrimeContext:
    """The residue characteristic ``p``; also the base of every logarithm."""

    p: int

    def __post_init__(self):
        p = self.p
        if not isinstance(p, int) or p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
            raise ValueError(f"p must be a prime integer, got {p!r}")


@dataclass(frozen=True)
class BerkPoint:
    """A type I, type II or infinite point.

    ``center is None`` encodes the point at infinity; ``log_radius is None``
    encodes a type I point. Dataclass equality is structural; the tree
    equality of two disks depends on ``p`` and is :func:`same_point`.
    """

    center: Optional[Fraction]
    log_radius: Optional[Fraction] = None

    def __post_init__(self):
        if self.center is None and self.log_radius is not None:
            raise ValueError("the point at infinity has no radius")
        if self.center is not None and not isinstance(self.center, Fraction):
            object.__setattr__(self, "center", Fraction(self.center))
        if self.log_radius is not None and not isinstance(self.log_radius, Fraction):
            object.__setattr__(self, "log_radius", Fraction(self.log_radius))

    @property
    def is_infinity(self) -> bool:
        return self.center is None

    @property
    def is_type_i(self) -> bool:
        return self.log_radius is None

    @property
    def is_type_ii(self) -> bool:
        return self.log_radius is not None

    @property
    def s(self) -> LogScalar:
        """Log-radius with type I points at ``+inf``."""
        return INF if self.log_radius is None else self.log_radius

    def __str__(self):
        return format_point(self)


def type_i(c) -> BerkPoint:
    return BerkPoint(Fraction(c))


def type_ii(c, s) -> BerkPoint:
    return BerkPoint(Fraction(c), Fraction(s))


INFINITY = BerkPoint(None)
GAUSS = BerkPoint(Fraction(0), Fraction(0))


def _ival(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@functools.lru_cache(maxsize=1 << 16)
def vp(x, ctx: PrimeContext) -> LogScalar:
    """p-adic valuation of a rational; ``vp(0) = inf``."""
    x = Fraction(x)
    if x == 0:
        return INF
    return Fraction(_ival(abs(x.numerator), ctx.p) - _ival(x.denominator, ctx.p))


def same_point(x: BerkPoint, y: BerkPoint, ctx: PrimeContext) -> bool:
    if x.is_infinity or y.is_infinity:
        return x.is_infinity and y.is_infinity
    if x.is_type_i or y.is_type_i:
        return x.is_type_i and y.is_type_i and x.center == y.center
    return x.log_radius == y.log_radius and vp(x.center - y.center, ctx) >= x.log_radius


def canonical_key(x: BerkPoint, ctx: PrimeContext) -> tuple:
    """Hashable key with ``key(x) == key(y)`` iff ``same_point(x, y)``.

    The center of a disk is replaced by its p-adic expansion truncated below
    digit ``ceil(s)``, which is the same for every center of the disk.
    """
    if x.is_infinity:
        return ("inf",)
    if x.is_type_i:
        return ("I", x.center)
    p, c, k = ctx.p, x.center, math.ceil(x.log_radius)
    v = vp(c, ctx)
    if v >= k:
        rep = Fraction(0)
    else:
        unit = c / Fraction(p) ** int(v)
        mod = p ** (k - int(v))
        rep = Fraction(p) ** int(v) * (unit.numerator * pow(unit.denominator, -1, mod) % mod)
    return ("II", rep, x.log_radius)


def _reject_infinity(*points: BerkPoint) -> None:
    for x in points:
        if x.is_infinity:
            raise ValueError("the point at infinity is not allowed here")


def join_wrt_infinity(x: BerkPoint, y: BerkPoint, ctx: PrimeContext) -> BerkPoint:
    """Smallest disk containing both points."""
    _reject_infinity(x, y)
    if x.is_type_i and y.is_type_i and x.center == y.center:
        return x
    return BerkPoint(x.center, min(vp(x.center - y.center, ctx), x.s, y.s))


def small_kernel_log(x: BerkPoint, y: BerkPoint, ctx: PrimeContext) -> LogScalar:
    _reject_infinity(x, y)
    return min(vp(x.center - y.center, ctx), x.s, y.s)


@functools.lru_cache(maxsize=1 << 16)
def spherical_kernel_log(x: BerkPoint, y: BerkPoint, ctx: PrimeContext) -> LogScalar:
    """``-log_p`` of the spherical kernel normalized at the Gauss point."""
    if x.is_infinity and y.is_infinity:
        return INF
    if x.is_infinity or y.is_infinity:
        z = y if x.is_infinity else x
        return -small_kernel_log(z, GAUSS, ctx)
    return (
        small_kernel_log(x, y, ctx)
        - small_kernel_log(x, GAUSS, ctx)
        - small_kernel_log(y, GAUSS, ctx)
    )


def hsia_kernel_log(x: BerkPoint, y: BerkPoint, zeta: BerkPoint, ctx: PrimeContext) -> LogScalar:
    """``-log_p [x, y]_zeta``; ``-inf`` at the pole when ``zeta`` is type I."""
    if zeta.is_type_i and (same_point(x, zeta, ctx) or same_point(y, zeta, ctx)):
        return -INF
    # both correction terms are finite once the pole case is excluded
    return (
        spherical_kernel_log(x, y, ctx)
        - spherical_kernel_log(x, zeta, ctx)
        - spherical_kernel_log(y, zeta, ctx)
    )


def diameter_log(x: BerkPoint, zeta: BerkPoint, ctx: PrimeContext) -> LogScalar:
    return hsia_kernel_log(x, x, zeta, ctx)


def path_distance(x: BerkPoint, y: BerkPoint, ctx: PrimeContext) -> Fraction:
    if not (x.is_type_ii and y.is_type_ii):
        raise ValueError("path distance is only finite between type II points")
    m = small_kernel_log(x, y, ctx)
    return (x.log_radius - m) + (y.log_radius - m)


def contains_disk(y: BerkPoint, x: BerkPoint, ctx: PrimeContext) -> bool:
    """True iff ``y`` lies on the path from ``x`` to infinity (``x`` inside ``y``)."""
    if y.is_infinity:
        return True
    if x.is_infinity:
        return False
    if y.is_type_i:
        return same_point(x, y, ctx)
    return x.s >= y.log_radius and vp(x.center - y.center, ctx) >= y.log_radius


def lies_between(y: BerkPoint, x: BerkPoint, z: BerkPoint, ctx: PrimeContext) -> bool:
    """True iff ``y`` is on the (closed) tree path from ``x`` to ``z``."""
    if x.is_infinity:
        x, z = z, x
    if z.is_infinity:
        return contains_disk(y, x, ctx)
    m = join_wrt_infinity(x, z, ctx)
    return contains_disk(m, y, ctx) and (contains_disk(y, x, ctx) or contains_disk(y, z, ctx))


# A leg is (center, t_start, t_end): the points D(center, t) for t running
# monotonically from t_start to t_end; +inf ends at a type I point and -inf
# ends at infinity.
Leg = Tuple[Fraction, LogScalar, LogScalar]


def path_legs(a: BerkPoint, b: BerkPoint, ctx: PrimeContext) -> List[Leg]:
    """Decompose the path from ``a`` to ``b`` into at most two monotone legs."""
    if a.is_infinity and b.is_infinity:
        return []
    if b.is_infinity:
        return [(a.center, a.s, -INF)]
    if a.is_infinity:
        return [(b.center, -INF, b.s)]
    m = join_wrt_infinity(a, b, ctx)
    legs = []
    if not same_point(m, a, ctx):
        legs.append((a.center, a.s, m.s))
    if not same_point(m, b, ctx):
        legs.append((b.center, m.s, b.s))
    if not legs:
        legs.append((a.center, a.s, a.s))
    return legs


def _leg_breakpoints(center: Fraction, zeta: BerkPoint, ctx: PrimeContext) -> List[Fraction]:
    pts = [Fraction(0)]
    v = vp(center, ctx)
    if v != INF:
        pts.append(v)
    if not zeta.is_infinity:
        d = vp(center - zeta.center, ctx)
        if d != INF:
            pts.append(d)
        if zeta.is_type_ii:
            pts.append(zeta.log_radius)
    return pts


def _leg_samples(leg: Leg, extra: List[Fraction]) -> Iterator[Fraction]:
    """Finite sample parameters along a leg covering every affine piece."""
    _, t0, t1 = leg
    lo, hi = min(t0, t1), max(t0, t1)
    ts = {t for t in extra if lo < t < hi}
    ts.update(t for t in (t0, t1) if t not in (INF, -INF))
    if not ts:
        ts.add(Fraction(0))
    if hi == INF:
        top = max(ts)
        ts.update({top + 1, top + 2})
    if lo == -INF:
        bottom = min(ts)
        ts.update({bottom - 1, bottom - 2})
    return iter(sorted(ts, reverse=t0 > t1))


def ball_root(a: BerkPoint, log_radius, zeta: BerkPoint, ctx: PrimeContext) -> BerkPoint:
    """The point on the path from ``a`` to ``zeta`` with ``diameter_log == log_radius``.

    The ball ``{z : -log[z, a]_zeta >= log_radius}`` is the closed set cut off
    from ``zeta`` by this point.
    """
    L = Fraction(log_radius)
    if same_point(a, zeta, ctx):
        raise ValueError("ball center coincides with the pole")
    lo = diameter_log(zeta, zeta, ctx)
    hi = diameter_log(a, zeta, ctx)
    if not L > lo:
        raise ValueError(f"log-radius {L} must exceed the pole's diameter_log {format_log(lo)}")
    if a.is_type_ii and L == hi:
        return a
    if not L < hi:
        raise ValueError(f"log-radius {L} must be below the center's diameter_log {format_log(hi)}")
    for leg in path_legs(a, zeta, ctx):
        center = leg[0]
        ts = list(_leg_samples(leg, _leg_breakpoints(center, zeta, ctx)))
        vals = [diameter_log(BerkPoint(center, t), zeta, ctx) for t in ts]
        # diameter_log strictly decreases from a toward zeta
        for i in range(len(ts) - 1):
            (t_a, f_a), (t_b, f_b) = (ts[i], vals[i]), (ts[i + 1], vals[i + 1])
            first, last = i == 0, i == len(ts) - 2
            hit = f_b <= L <= f_a or (first and leg[1] in (INF, -INF) and L >= f_a) \
                or (last and leg[2] in (INF, -INF) and L <= f_b)
            if hit and f_a != f_b:
                t = t_a + (L - f_a) * (t_b - t_a) / (f_b - f_a)
                return BerkPoint(center, t)
    raise AssertionError("no point on the path attains the requested diameter")


def ball_contains(z: BerkPoint, a: BerkPoint, log_radius, zeta: BerkPoint, ctx: PrimeContext) -> bool:
    L = log_radius if log_radius in (INF, -INF) else Fraction(log_radius)
    return hsia_kernel_log(z, a, zeta, ctx) >= L


# -- text form ---------------------------------------------------------------


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise PointFormatError(f"bad rational {text!r}") from exc


def format_log(x: LogScalar) -> str:
    if x == INF:
        return "+inf"
    if x == -INF:
        return "-inf"
    return format_rational(x)


def format_point(x: BerkPoint) -> str:
    if x.is_infinity:
        return "I:inf"
    if x.is_type_i:
        return f"I:{format_rational(x.center)}"
    return f"II:{format_rational(x.center)}:{format_rational(x.log_radius)}"


def parse_point(text: str) -> BerkPoint:
    parts = text.strip().split(":")
    if parts[0] == "I" and len(parts) == 2:
        if parts[1] == "inf":
            return INFINITY
        return BerkPoint(parse_rational(parts[1]))
    if parts[0] == "II" and len(parts) == 3:
        return BerkPoint(parse_rational(parts[1]), parse_rational(parts[2]))
    raise PointFormatError(f"bad point {text!r}; expected I:<q>, I:inf or II:<q>:<q>")
