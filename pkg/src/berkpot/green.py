"""Green functions, the extremal envelope and executable checks of its theory.

Competitors for the envelope are log-kernel combinations

    u(z) = c + sum_i w_i log_p [z, a_i]_zeta,      w_i >= 0, sum w_i = 1,

which are subharmonic off the pole and have the right logarithmic growth
there. The equilibrium candidate (``c`` = Robin constant, atoms = equilibrium
measure) *is* the Green function, so on ball-union compacts the envelope
attains the Green function exactly and every other normalized candidate is
bounded by it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .equilibrium import (
    CompactSetDescription,
    PreconditionError,
    candidate_support,
    equilibrium,
    in_shadow,
    is_capacity_zero,
    normalize_set,
)
from .tree import DiscreteMeasure, add_retractions, convex_hull, laplacian, restrict_kernel
from .ultrametric import (
    GAUSS,
    INF,
    BerkPoint,
    LogScalar,
    PrimeContext,
    ball_contains,
    ball_root,
    canonical_key,
    format_log,
    format_point,
    hsia_kernel_log,
    join_wrt_infinity,
    same_point,
    spherical_kernel_log,
    vp,
)

__all__ = [
    "LCandidate",
    "GreenFunction",
    "Check",
    "Report",
    "green_function",
    "green_eval",
    "ball_green_closed_form",
    "green_properties_report",
    "candidate_sup_over_E",
    "normalize_candidate",
    "extremal_envelope",
    "default_candidates",
    "verify_main_theorem",
    "nested_limit_check",
    "exhaustion_check",
    "evans_potential",
    "path_limit",
    "usc_regularize_along_path",
    "brelot_cartan_family_check",
    "r_class_coincidence_check",
]


@dataclass(frozen=True)
class LCandidate:
    """``constant + sum w_i log_p [z, a_i]_zeta`` with nonnegative weights."""

    constant: Fraction
    atoms: Tuple[Tuple[BerkPoint, Fraction], ...]

    def __post_init__(self):
        object.__setattr__(self, "constant", Fraction(self.constant))
        object.__setattr__(self, "atoms", tuple((a, Fraction(w)) for a, w in self.atoms))
        if any(w < 0 for _, w in self.atoms):
            raise ValueError("candidate weights must be nonnegative")

    @property
    def total_weight(self) -> Fraction:
        return sum((w for _, w in self.atoms), Fraction(0))

    def value(self, z: BerkPoint, zeta: BerkPoint, ctx: PrimeContext) -> LogScalar:
        total, pole, zero = self.constant, False, False
        for a, w in self.atoms:
            if w == 0:
                continue
            k = hsia_kernel_log(z, a, zeta, ctx)
            if k == INF:
                zero = True
            elif k == -INF:
                pole = True
            else:
                total -= w * k
        if zero and pole:
            raise ArithmeticError("candidate undefined (inf - inf)")
        return -INF if zero else INF if pole else total

    def shifted(self, c) -> "LCandidate":
        return LCandidate(self.constant + Fraction(c), self.atoms)


@dataclass(frozen=True)
class GreenFunction:
    E: CompactSetDescription
    zeta: BerkPoint
    robin: Fraction
    measure: DiscreteMeasure

    @property
    def candidate(self) -> LCandidate:
        return LCandidate(self.robin, self.measure.atoms)


@dataclass
class Check:
    name: str
    passed: bool
    witness: Dict[str, object] = field(default_factory=dict)

    def to_dict(self):
        return {"name": self.name, "status": "pass" if self.passed else "fail",
                "witness": {k: _render(v) for k, v in self.witness.items()}}


@dataclass
class Report:
    name: str
    checks: List[Check] = field(default_factory=list)
    max_gap: Optional[Fraction] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, **witness) -> Check:
        check = Check(name, bool(passed), witness)
        self.checks.append(check)
        return check

    def to_dict(self):
        out = {"suite": self.name, "passed": self.passed}
        if self.max_gap is not None:
            out["maxGap"] = _render(self.max_gap)
        out["checks"] = [c.to_dict() for c in self.checks]
        return out


def _render(v):
    if isinstance(v, BerkPoint):
        return format_point(v)
    if isinstance(v, Fraction) or v in (INF, -INF):
        return format_log(v)
    if isinstance(v, (list, tuple)):
        return [_render(x) for x in v]
    return v


def green_function(E: CompactSetDescription, ctx: PrimeContext) -> GreenFunction:
    E = normalize_set(E, ctx)
    eq = equilibrium(E, ctx)
    if not eq.positive_capacity:
        raise PreconditionError("the Green function needs a compact of positive capacity")
    return GreenFunction(E, E.zeta, eq.robin, eq.measure)


def green_eval(G: GreenFunction, z: BerkPoint, ctx: PrimeContext) -> LogScalar:
    """``robin - potential(mu, z)``: finite off the pole, ``+inf`` at a type I pole."""
    return G.candidate.value(z, G.zeta, ctx)


def ball_green_closed_form(a: BerkPoint, log_radius, z: BerkPoint, zeta: BerkPoint,
                           ctx: PrimeContext) -> LogScalar:
    """``max(log[z, a]_zeta - log r, 0)`` with ``log r = -log_radius``."""
    k = hsia_kernel_log(z, a, zeta, ctx)
    if k == -INF:
        return INF
    if k == INF:
        return Fraction(0)
    return max(Fraction(log_radius) - k, Fraction(0))


def green_properties_report(G: GreenFunction, samples: Sequence[BerkPoint], ctx: PrimeContext,
                            larger: Optional[GreenFunction] = None) -> Report:
    """Finiteness, sign, vanishing and monotonicity of a Green function at samples.

    ``larger`` is the Green function of a superset of ``G.E``; when given,
    ``G >= larger`` is checked pointwise.
    """
    rep = Report("green-props")
    pts = [z for z in samples if not same_point(z, G.zeta, ctx)]
    vals = [green_eval(G, z, ctx) for z in pts]
    bad = [z for z, v in zip(pts, vals) if v in (INF, -INF)]
    rep.add("finite", not bad, samples=len(pts), witness=bad[:1])

    neg = [z for z, v in zip(pts, vals) if v < 0]
    rep.add("nonnegative", not neg, witness=neg[:1])
    outside = [(z, v) for z, v in zip(pts, vals) if not in_shadow(G.E, z, ctx)]
    nonpos = [z for z, v in outside if v <= 0]
    rep.add("positive-on-pole-component", not nonpos, count=len(outside), witness=nonpos[:1])

    support = candidate_support(G.E, ctx)
    nz = [x for x in support if green_eval(G, x, ctx) != 0]
    rep.add("vanishes-on-roots", not nz, roots=support, witness=nz[:1])
    # off isolated type I points of E, the complement of the pole component is a zero set
    iso = [x for x in G.E.points if x.is_type_i]
    shadow = [(z, v) for z, v in zip(pts, vals) if in_shadow(G.E, z, ctx)
              and not any(same_point(z, x, ctx) for x in iso)]
    nz = [z for z, v in shadow if v != 0]
    rep.add("vanishes-off-pole-component", not nz, count=len(shadow), witness=nz[:1])
    # distance from vanishing where G must vanish
    must_vanish = [green_eval(G, x, ctx) for x in support] + [v for _, v in shadow]
    rep.max_gap = max((abs(v) for v in must_vanish), default=Fraction(0))
    exceptional = [x for x in iso if green_eval(G, x, ctx) != 0]
    rep.add("exceptional-set-capacity-zero",
            not exceptional or is_capacity_zero(CompactSetDescription((), tuple(exceptional), G.zeta), ctx),
            exceptional=exceptional)

    if larger is not None:
        contained = _is_subset(G.E, larger.E, ctx)
        gaps = [(z, v - green_eval(larger, z, ctx)) for z, v in zip(pts, vals)]
        worse = [z for z, g in gaps if g < 0]
        rep.add("monotone-in-set", contained and not worse, subset=contained,
                min_gap=min((g for _, g in gaps), default=Fraction(0)), witness=worse[:1])
    return rep


def _is_subset(small: CompactSetDescription, big: CompactSetDescription, ctx: PrimeContext) -> bool:
    def inside(x: BerkPoint) -> bool:
        return any(ball_contains(x, a, L, big.zeta, ctx) for a, L in big.balls) or \
            any(same_point(x, y, ctx) for y in big.points)
    return all(inside(r) for r in small.roots(ctx)) and all(inside(x) for x in small.points)


# -- the envelope -------------------------------------------------------------


def candidate_sup_over_E(u: LCandidate, E: CompactSetDescription, ctx: PrimeContext) -> LogScalar:
    """Exact ``sup_E u``, attained at ball roots and isolated points."""
    if not u.atoms or u.total_weight != 1:
        raise PreconditionError("a candidate needs atoms with weights summing to 1")
    roots = E.roots(ctx)
    for a, _ in u.atoms:
        if same_point(a, E.zeta, ctx):
            raise PreconditionError("candidate atom at the pole")
        for (c, L), r in zip(E.balls, roots):
            if ball_contains(a, c, L, E.zeta, ctx) and not same_point(a, r, ctx):
                raise PreconditionError(f"atom {format_point(a)} lies strictly inside a ball of E")
    where = roots + list(E.points)
    if not where:
        raise PreconditionError("E is empty")
    return max(u.value(x, E.zeta, ctx) for x in where)


def normalize_candidate(u: LCandidate, E: CompactSetDescription, ctx: PrimeContext) -> LCandidate:
    s = candidate_sup_over_E(u, E, ctx)
    if s in (INF, -INF):
        raise PreconditionError("candidate cannot be normalized on E")
    return u.shifted(-s)


def extremal_envelope(E: CompactSetDescription, zeta: BerkPoint, candidates: Sequence[LCandidate],
                      z: BerkPoint, ctx: PrimeContext) -> LogScalar:
    """Max of normalized candidates at ``z``: a certified lower bound for the envelope."""
    best = -INF
    for u in candidates:
        if candidate_sup_over_E(u, E, ctx) != 0:
            raise PreconditionError("candidate is not normalized (sup over E must be 0)")
        best = max(best, u.value(z, zeta, ctx))
    return best


def default_candidates(E: CompactSetDescription, ctx: PrimeContext, seed: int = 0,
                       n_random: int = 8) -> List[LCandidate]:
    """Normalized competitors: the equilibrium candidate, one per support point,
    random mixtures over the support and random exterior atoms."""
    E = normalize_set(E, ctx)
    G = green_function(E, ctx)
    support = candidate_support(E, ctx)
    rng = random.Random(seed)
    raw = [G.candidate]
    raw += [LCandidate(0, ((x, Fraction(1)),)) for x in support]
    for _ in range(n_random):
        ws = [Fraction(rng.randint(0, 5)) for _ in support]
        if sum(ws) == 0:
            ws[0] = Fraction(1)
        raw.append(LCandidate(0, tuple((x, w / sum(ws)) for x, w in zip(support, ws) if w)))
    def outside(x: BerkPoint) -> bool:
        return not same_point(x, E.zeta, ctx) and not in_shadow(E, x, ctx)

    exterior, tries = [], 0
    while len(exterior) < n_random and tries < 50 * n_random:
        x = _random_point(rng)
        tries += 1
        if outside(x):
            exterior.append(x)
    if len(exterior) < n_random:
        # E swallows the sampling window: climb from the roots toward the pole
        exterior += [x for x in _points_above_roots(E, ctx) if outside(x)][:n_random - len(exterior)]
    for x in exterior:
        mix = [(x, Fraction(1, 2)), (rng.choice(support), Fraction(1, 2))]
        raw.append(LCandidate(0, ((x, Fraction(1)),)))
        raw.append(LCandidate(0, tuple(DiscreteMeasure.from_pairs(mix, ctx).atoms)))
    return [normalize_candidate(u, E, ctx) for u in raw]


def _points_above_roots(E: CompactSetDescription, ctx: PrimeContext) -> List[BerkPoint]:
    lo = hsia_kernel_log(E.zeta, E.zeta, E.zeta, ctx)
    out = []
    for a, L in E.balls:
        steps = [L - k for k in (1, 2, 4, 8)] if lo == -INF else [lo + (L - lo) / k for k in (2, 4, 8, 16)]
        for t in steps:
            if t > lo:
                out.append(ball_root(a, t, E.zeta, ctx))
    return out


def _random_point(rng: random.Random) -> BerkPoint:
    c = Fraction(rng.randint(-40, 40), rng.choice([1, 1, 1, 2, 3, 4, 5, 9]))
    if rng.random() < 0.5:
        return BerkPoint(c)
    return BerkPoint(c, Fraction(rng.randint(-6, 12), rng.choice([1, 1, 2, 3])))


def verify_main_theorem(E: CompactSetDescription, samples: Sequence[BerkPoint], ctx: PrimeContext,
                        candidates: Optional[Sequence[LCandidate]] = None, seed: int = 0) -> Report:
    """Exact instance of ``G = Q_E^*`` on a ball-union compact.

    Upper direction: every normalized candidate is ``<= G`` at every sample.
    Lower direction: the equilibrium candidate is normalized and equals ``G``
    at every sample, so the envelope attains ``G``; ``max_gap`` must be 0.
    """
    E = normalize_set(E, ctx)
    if is_capacity_zero(E, ctx):
        raise PreconditionError("the main theorem needs a compact of positive capacity")
    G = green_function(E, ctx)
    eq = G.candidate
    cands = list(candidates) if candidates is not None else default_candidates(E, ctx, seed)
    rep = Report("main")
    rep.add("equilibrium-candidate-normalized", candidate_sup_over_E(eq, E, ctx) == 0,
            sup=candidate_sup_over_E(eq, E, ctx))
    pts = [z for z in samples if not same_point(z, E.zeta, ctx)]
    violations, mismatch, max_gap = [], [], Fraction(0)
    for z in pts:
        g = green_eval(G, z, ctx)
        values = [u.value(z, E.zeta, ctx) for u in cands]
        violations += [(z, v - g) for v in values if v > g]
        if eq.value(z, E.zeta, ctx) != g:
            mismatch.append(z)
        env = max(values + [eq.value(z, E.zeta, ctx)])
        max_gap = max(max_gap, g - env)
    rep.add("candidates-below-green", not violations, candidates=len(cands), samples=len(pts),
            witness=[v[0] for v in violations[:1]])
    rep.add("envelope-attains-green", not mismatch and max_gap == 0, witness=mismatch[:1])
    rep.add("pole-normalization", all(_pole_limit_finite(u, E.zeta, ctx) for u in cands + [eq]))
    rep.max_gap = max_gap
    return rep


def _pole_limit_finite(u: LCandidate, zeta: BerkPoint, ctx: PrimeContext) -> bool:
    """``u - log[., a]_zeta`` has a finite limit along the path into a type I pole."""
    if not zeta.is_type_i:
        return True
    a = u.atoms[0][0]
    lim = path_limit(lambda z: u.value(z, zeta, ctx) + hsia_kernel_log(z, a, zeta, ctx),
                     zeta, _candidate_breakpoints([u], zeta, zeta, ctx), ctx)
    return lim not in (INF, -INF)


# -- limits along paths ---------------------------------------------------------


def _candidate_breakpoints(cands: Iterable[LCandidate], target: Optional[BerkPoint],
                           zeta: BerkPoint, ctx: PrimeContext) -> List[Fraction]:
    """Parameters ``t`` where ``t -> u(D(c, t))`` can change slope."""
    c = Fraction(0) if target is None or target.is_infinity else target.center
    pts = [a for u in cands for a, _ in u.atoms] + [zeta]
    out = [min(vp(c, ctx), Fraction(0))]
    for y in pts:
        if y.is_infinity:
            continue
        b = min(vp(c - y.center, ctx), y.s)
        if b != INF:
            out.append(b)
        b = min(vp(y.center, ctx), y.s, Fraction(0))
        out.append(b)
    return out


def path_limit(f: Callable[[BerkPoint], LogScalar], a: BerkPoint, breakpoints: Sequence[Fraction],
               ctx: PrimeContext) -> LogScalar:
    """Limit of ``f(D(c, t))`` along the path into the type I point ``a``.

    ``f`` must be affine in ``t`` beyond every breakpoint (``t -> +inf`` for a
    finite ``a``, ``t -> -inf`` for infinity); two evaluations fix the line.
    """
    if not a.is_type_i:
        raise ValueError("path limits are taken into type I points")
    if a.is_infinity:
        t0 = min(breakpoints, default=Fraction(0)) - 1
        pts = [BerkPoint(Fraction(0), t0), BerkPoint(Fraction(0), t0 - 1)]
    else:
        t0 = max(breakpoints, default=Fraction(0)) + 1
        pts = [BerkPoint(a.center, t0), BerkPoint(a.center, t0 + 1)]
    v0, v1 = f(pts[0]), f(pts[1])
    if v0 in (INF, -INF) or v1 in (INF, -INF):
        return v1
    slope = v1 - v0
    return v0 if slope == 0 else INF if slope > 0 else -INF


def usc_regularize_along_path(candidates: Sequence[LCandidate], a: BerkPoint, zeta: BerkPoint,
                              ctx: PrimeContext) -> LogScalar:
    """Limit of ``max_k u_k`` along the path into the type I point ``a``."""
    if not candidates:
        return -INF
    bps = _candidate_breakpoints(candidates, a, zeta, ctx)
    return max(path_limit(lambda z, u=u: u.value(z, zeta, ctx), a, bps, ctx) for u in candidates)


# -- convergence checks ------------------------------------------------------------


def nested_limit_check(a: BerkPoint, log_radii: Sequence, log_radius_limit, zeta: BerkPoint,
                       samples: Sequence[BerkPoint], ctx: PrimeContext) -> Report:
    """Balls ``B(a, r_n)`` shrinking to ``B(a, r)``: values rise monotonically to the limit.

    The first sample is the witness whose deviations are reported per ``n``.
    """
    rep = Report("nested")
    L = Fraction(log_radius_limit)
    radii = [Fraction(x) for x in log_radii]
    if any(x > L for x in radii) or any(y < x for x, y in zip(radii, radii[1:])):
        rep.add("decreasing-family", False, log_radii=radii)
        return rep
    pts = [z for z in samples if not same_point(z, zeta, ctx)]
    table = [[ball_green_closed_form(a, Ln, z, zeta, ctx) for z in pts] for Ln in radii]
    limit = [ball_green_closed_form(a, L, z, zeta, ctx) for z in pts]
    monotone = all(table[n][k] <= table[n + 1][k] for n in range(len(radii) - 1) for k in range(len(pts)))
    rep.add("monotone", monotone)
    rep.add("below-limit", all(row[k] <= limit[k] for row in table for k in range(len(pts))))
    devs = [limit[0] - row[0] for row in table] if pts else []
    final = max((limit[k] - table[-1][k] for k in range(len(pts))), default=Fraction(0))
    rep.add("witness-deviation", True, witness=pts[0] if pts else None, deviations=devs)
    # the closed forms agree with the equilibrium machinery
    E = CompactSetDescription(((a, L),), (), zeta)
    G = green_function(E, ctx)
    rep.add("closed-form-matches-green", all(green_eval(G, z, ctx) == v for z, v in zip(pts, limit)))
    rep.max_gap = final
    return rep


def exhaustion_check(E: CompactSetDescription, n_max: int, samples: Sequence[BerkPoint],
                     ctx: PrimeContext) -> Report:
    """Supersets ``F_n`` (every ball enlarged by ``p^(1/n)``) give ``G_n`` rising to ``G_E``."""
    E = normalize_set(E, ctx)
    rep = Report("exhaustion")
    G = green_function(E, ctx)
    pts = [z for z in samples if not same_point(z, E.zeta, ctx)]
    target = [green_eval(G, z, ctx) for z in pts]
    prev, monotone, devs = None, True, []
    for n in range(1, n_max + 1):
        F = CompactSetDescription(
            tuple((a, L - Fraction(1, n)) for a, L in E.balls)
            + tuple((x, hsia_kernel_log(x, x, E.zeta, ctx) - Fraction(1, n)) for x in E.points if x.is_type_ii),
            tuple(x for x in E.points if x.is_type_i), E.zeta)
        Gn = green_function(F, ctx)
        vals = [green_eval(Gn, z, ctx) for z in pts]
        if prev is not None and any(v < w for v, w in zip(vals, prev)):
            monotone = False
        if any(v > t for v, t in zip(vals, target)):
            monotone = False
        devs.append(max((t - v for t, v in zip(target, vals)), default=Fraction(0)))
        prev = vals
    rep.add("monotone-below-limit", monotone)
    rep.add("deviation-decreasing", all(b <= a for a, b in zip(devs, devs[1:])), deviations=devs)
    rep.max_gap = devs[-1] if devs else Fraction(0)
    return rep


# -- polar sets ------------------------------------------------------------------


def evans_potential(F: Sequence[BerkPoint], stages: Sequence[Tuple[Fraction, Sequence[BerkPoint]]],
                    zeta: BerkPoint, ctx: PrimeContext) -> LCandidate:
    """Finite stage of ``sum_k p_k (1/N_k) log P_{N_k}`` with nodes drawn from ``F``."""
    weights = [Fraction(pk) for pk, _ in stages]
    if any(w < 0 for w in weights) or sum(weights) != 1:
        raise ValueError("stage weights must be nonnegative and sum to 1")
    keys = {canonical_key(x, ctx) for x in F}
    pairs = []
    for pk, nodes in stages:
        nodes = list(nodes)
        if not nodes:
            raise ValueError("each stage needs at least one node")
        for a in nodes:
            if canonical_key(a, ctx) not in keys:
                raise ValueError(f"node {format_point(a)} is not in F")
            if same_point(a, zeta, ctx):
                raise ValueError("node at the pole")
            pairs.append((a, Fraction(pk) / len(nodes)))
    return LCandidate(0, DiscreteMeasure.from_pairs(pairs, ctx).atoms)


def brelot_cartan_family_check(a: BerkPoint, n_max: int, samples: Sequence[BerkPoint],
                               ctx: PrimeContext) -> Report:
    """The family ``u_n = (1/n) log_p [., a]_g``: where does ``sup_n u_n`` fall below its regularization?

    ``sup_n u_n`` is ``0`` wherever the spherical kernel is positive and
    ``-inf`` at ``a`` when ``a`` is type I; its regularization is ``0``
    everywhere, so the deficiency set is ``{a}`` or empty.
    """
    if same_point(a, GAUSS, ctx):
        raise PreconditionError("a must differ from the Gauss point")
    rep = Report("brelot")

    def u_sup(z: BerkPoint) -> LogScalar:
        return -INF if spherical_kernel_log(z, a, ctx) == INF else Fraction(0)

    def u_trunc(z: BerkPoint) -> LogScalar:
        k = spherical_kernel_log(z, a, ctx)
        return -INF if k == INF else max(-k / n for n in range(1, n_max + 1))

    pts = [z for z in list(samples) + [a] if not same_point(z, GAUSS, ctx)]
    deficient, seen = [], set()
    for z in pts:
        if z.is_type_i:
            # u_sup is constant on type II points, so any breakpoint set works
            reg = path_limit(u_sup, z, [Fraction(0)], ctx)
        else:
            reg = u_sup(z)
        if u_sup(z) < reg and canonical_key(z, ctx) not in seen:
            seen.add(canonical_key(z, ctx))
            deficient.append(z)
    expected = [a] if a.is_type_i else []
    ok = len(deficient) == len(expected) and all(same_point(x, y, ctx) for x, y in zip(deficient, expected))
    rep.add("deficiency-set", ok, deficient=deficient, expected=expected)
    rep.add("truncations-nonpositive", all(u_trunc(z) <= 0 for z in pts))
    if deficient:
        cz = is_capacity_zero(CompactSetDescription((), tuple(deficient), GAUSS), ctx)
        rep.add("deficiency-capacity-zero", cz)
    return rep


def r_class_coincidence_check(E: CompactSetDescription, samples: Sequence[BerkPoint], ctx: PrimeContext,
                              seed: int = 0) -> Report:
    """Every implemented candidate has the harmonic single-pole form near the pole,
    and the envelope over them still attains ``G``."""
    E = normalize_set(E, ctx)
    cands = default_candidates(E, ctx, seed)
    rep = Report("r-class")
    rep.add("unit-pole-weight", all(u.total_weight == 1 for u in cands))
    if E.zeta.is_type_i:
        rep.add("harmonic-at-pole", all(_pole_limit_finite(u, E.zeta, ctx) for u in cands))
    else:
        rep.add("harmonic-at-pole", all(_laplacian_at_pole_zero(u, E.zeta, ctx) for u in cands))
    main = verify_main_theorem(E, samples, ctx, candidates=cands)
    rep.checks.extend(main.checks)
    rep.max_gap = main.max_gap
    return rep


def _laplacian_at_pole_zero(u: LCandidate, zeta: BerkPoint, ctx: PrimeContext) -> bool:
    """For a type II pole: ``u - log[., a]_zeta`` has zero Laplacian weight at ``zeta``."""
    ref = u.atoms[0][0]

    def proxy(x: BerkPoint) -> BerkPoint:
        if x.is_type_ii:
            return x
        if x.is_infinity:
            return BerkPoint(zeta.center, zeta.log_radius - 1)
        return BerkPoint(x.center, join_wrt_infinity(x, zeta, ctx).log_radius + 1)

    graph = convex_hull([zeta] + [proxy(a) for a, _ in u.atoms], ctx)
    graph = add_retractions(graph, [a for a, _ in u.atoms], ctx)
    f = restrict_kernel(graph, ref, zeta, ctx)
    for a, w in u.atoms:
        f = f - w * restrict_kernel(graph, a, zeta, ctx)
    return laplacian(f).weight_at(zeta, ctx) == 0
