"""Command-line front end.

Exit codes: 0 all checks passed, 1 a check failed, 2 parse or usage error,
3 an operation was called outside its domain.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import List, Optional, Sequence

from .equilibrium import CompactSetDescription, PreconditionError, equilibrium, normalize_set
from .green import (
    Report,
    brelot_cartan_family_check,
    green_eval,
    green_function,
    green_properties_report,
    nested_limit_check,
    verify_main_theorem,
)
from .plane import CombinatorialBudgetError, PlaneCompact, classical_green, leja_extremal
from .sampling import sample_points
from .ultrametric import (
    INF,
    BerkPoint,
    PointFormatError,
    PrimeContext,
    ball_root,
    format_log,
    format_point,
    hsia_kernel_log,
    parse_point,
    parse_rational,
    same_point,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def format_decimal(x, places: int = 12) -> str:
    """Fixed-point rendering with round-half-even; infinities as ``+inf``/``-inf``."""
    if x in (INF, -INF):
        return format_log(x)
    x = Fraction(x)
    with localcontext() as dctx:
        dctx.prec = 80
        d = Decimal(x.numerator) / Decimal(x.denominator)
        out = d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN)
    return "0." + "0" * places if out.is_zero() else f"{out:f}"


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _emit_csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    sys.stdout.write(buf.getvalue())


# -- scenes ------------------------------------------------------------------------


class Scene:
    def __init__(self, ctx: PrimeContext, E: CompactSetDescription, samples: Optional[List[BerkPoint]],
                 seed: int):
        self.ctx, self.E, self.seed = ctx, E, seed
        self._samples = samples

    def samples(self, count: int = 60) -> List[BerkPoint]:
        if self._samples is not None:
            return self._samples
        return sample_points(random.Random(self.seed), self.ctx, self.E, count)


def load_scene(path: str) -> Scene:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read scene {path}: {exc}") from exc
    return parse_scene(raw)


def parse_scene(raw) -> Scene:
    if not isinstance(raw, dict):
        raise UsageError("scene must be a JSON object")
    unknown = set(raw) - {"p", "zeta", "balls", "points", "samples", "seed"}
    if unknown:
        raise UsageError(f"unknown scene keys: {sorted(unknown)}")
    try:
        ctx = PrimeContext(int(raw["p"]))
        zeta = parse_point(raw.get("zeta", "I:inf"))
        balls = []
        for item in raw.get("balls", []):
            if not isinstance(item, list) or len(item) != 2:
                raise UsageError(f"ball must be [center, logRadius], got {item!r}")
            balls.append((parse_point(item[0]), parse_rational(str(item[1]))))
        points = tuple(parse_point(x) for x in raw.get("points", []))
        samples = [parse_point(x) for x in raw["samples"]] if "samples" in raw else None
        seed = int(raw.get("seed", 0))
    except KeyError as exc:
        raise UsageError(f"scene is missing {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad scene: {exc}") from exc
    E = CompactSetDescription(tuple(balls), points, zeta)
    E.check(ctx)
    return Scene(ctx, E, samples, seed)


# -- subcommands -------------------------------------------------------------------------


def cmd_kernel(args) -> int:
    ctx = PrimeContext(args.p)
    zeta, x, y = parse_point(args.zeta), parse_point(args.x), parse_point(args.y)
    k = hsia_kernel_log(x, y, zeta, ctx)
    if k in (INF, -INF):
        print(format_log(k))
    else:
        print(format_log(k))
        print(f"decimal: {format_decimal(k)}")
    return EXIT_OK


def cmd_capacity(args) -> int:
    scene = load_scene(args.scene)
    eq = equilibrium(scene.E, scene.ctx)
    if not eq.positive_capacity:
        print("capacity: 0")
        return EXIT_OK
    print(f"robin: {format_log(eq.robin)}")
    print(f"capacity_log: {format_log(eq.capacity_log)}")
    print(f"capacity: {format_decimal(_pow_decimal(scene.ctx.p, -eq.robin))}")
    print("atoms:")
    for x, w in eq.measure.atoms:
        print(f"  {format_point(x)} {format_log(w)}")
    return EXIT_OK


def _pow_decimal(p: int, e: Fraction) -> Fraction:
    with localcontext() as dctx:
        dctx.prec = 40
        v = Decimal(p) ** (Decimal(e.numerator) / Decimal(e.denominator))
    return Fraction(v)


def cmd_green(args) -> int:
    scene = load_scene(args.scene)
    G = green_function(scene.E, scene.ctx)
    samples = scene.samples()
    rep = green_properties_report(G, samples, scene.ctx)
    out = {"command": "green", "robin": format_log(G.robin),
           "values": [{"z": format_point(z), "G": format_log(green_eval(G, z, scene.ctx))}
                      for z in samples if not _is_pole(z, scene)]}
    out.update(rep.to_dict())
    _emit_json(out)
    return EXIT_OK if rep.passed else EXIT_FAILED


def _is_pole(z: BerkPoint, scene: Scene) -> bool:
    return same_point(z, scene.E.zeta, scene.ctx)


def cmd_verify(args) -> int:
    suite = args.suite
    if suite == "brelot":
        if args.scene:
            scene = load_scene(args.scene)
            ctx, samples = scene.ctx, scene.samples()
        else:
            ctx = PrimeContext(args.p)
            samples = sample_points(random.Random(args.seed), ctx, CompactSetDescription((), (), BerkPoint(None)), 40)
        a = parse_point(args.point or "I:0/1")
        rep = brelot_cartan_family_check(a, args.n, samples, ctx)
        deficient = rep.checks[0].witness["deficient"]
        extra = {"deficiencySet": "{" + ", ".join(format_point(x) for x in deficient) + "}"}
    else:
        if not args.scene:
            raise UsageError(f"suite {suite} needs a scene file")
        scene = load_scene(args.scene)
        extra = {}
        if suite == "main":
            rep = verify_main_theorem(scene.E, scene.samples(), scene.ctx, seed=scene.seed)
        elif suite == "green-props":
            G = green_function(scene.E, scene.ctx)
            rep = green_properties_report(G, scene.samples(), scene.ctx)
        else:
            rep = _nested(scene, args.n)
    out = {"command": f"verify --suite {suite}"}
    out.update(extra)
    out.update(rep.to_dict())
    _emit_json(out)
    return EXIT_OK if rep.passed else EXIT_FAILED


def _nested(scene: Scene, n_max: int) -> Report:
    E = normalize_set(scene.E, scene.ctx)
    if len(E.balls) != 1 or E.points:
        raise PreconditionError("the nested suite needs a scene with exactly one ball")
    a, L = E.balls[0]
    radii = [L - Fraction(1, n) for n in range(1, n_max + 1)]
    samples = scene.samples()
    # witness: a point two log-units outside the ball, so every B(a, r_n) misses it
    try:
        witness = ball_root(a, L - 2, E.zeta, scene.ctx)
    except ValueError:
        witness = samples[0]
    return nested_limit_check(a, radii, L, E.zeta, [witness] + samples, scene.ctx)


def _parse_range(text: str):
    parts = text.replace(":", ",").split(",")
    if len(parts) != 3:
        raise UsageError("--t-range takes start,stop,step")
    start, stop, step = (parse_rational(x.strip()) for x in parts)
    if step <= 0 or stop < start:
        raise UsageError("--t-range needs start <= stop and a positive step")
    return start, stop, step


def cmd_profile(args) -> int:
    scene = load_scene(args.scene)
    if scene.E.is_empty:
        raise UsageError("profile needs a nonempty scene")
    a = parse_point(args.path)
    if not a.is_type_i or a.is_infinity:
        raise UsageError("--path takes a finite type I point such as I:0/1")
    start, stop, step = _parse_range(args.t_range)
    G = green_function(scene.E, scene.ctx)
    rows, t = [], start
    while t <= stop:
        z = BerkPoint(a.center, t)
        rows.append([format_decimal(t), format_decimal(green_eval(G, z, scene.ctx))])
        t += step
    _emit_csv(["t", "G"], rows)
    return EXIT_OK


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"cannot parse complex number {text!r}; use re,im")


def cmd_leja(args) -> int:
    z = _parse_complex(args.z)
    if args.set == "circle":
        E = PlaneCompact.circle(args.grid)
    elif args.set == "disk":
        E = PlaneCompact.disk(_parse_complex(args.center), args.radius, args.grid)
    else:
        E = PlaneCompact.interval(args.a, args.b, args.grid)
    target = classical_green(E, z)
    orders, n = [], 2
    while n < args.n:
        orders.append(n)
        n *= 2
    orders.append(args.n)
    rows = []
    for n in orders:
        try:
            v = leja_extremal(E, z, n, args.mode)
        except CombinatorialBudgetError as exc:
            raise UsageError(str(exc)) from exc
        rows.append([str(n), format_decimal(v), format_decimal(target), format_decimal(abs(v - target))])
    _emit_csv(["n", "leja_value", "green_value", "abs_error"], rows)
    return EXIT_OK


# -- argument parsing --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="berkpot", description="Exact potential theory on the Berkovich line.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    k = sub.add_parser("kernel", help="-log_p of the kernel [x, y]_zeta")
    k.add_argument("-p", type=int, required=True)
    k.add_argument("--zeta", default="I:inf")
    k.add_argument("x")
    k.add_argument("y")
    k.set_defaults(func=cmd_kernel)

    c = sub.add_parser("capacity", help="Robin constant and equilibrium measure")
    c.add_argument("scene")
    c.set_defaults(func=cmd_capacity)

    g = sub.add_parser("green", help="Green function values and property checks")
    g.add_argument("scene")
    g.set_defaults(func=cmd_green)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("scene", nargs="?")
    v.add_argument("--suite", choices=["main", "brelot", "nested", "green-props"], required=True)
    v.add_argument("--point", help="the point a of the brelot family")
    v.add_argument("-p", type=int, default=2, help="prime for brelot without a scene")
    v.add_argument("--n", type=int, default=64, help="family size for brelot and nested")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    pr = sub.add_parser("profile", help="CSV of G along the path D(a, t)")
    pr.add_argument("scene")
    pr.add_argument("--path", required=True, help="type I point a")
    pr.add_argument("--t-range", required=True, help="start,stop,step as rationals")
    pr.set_defaults(func=cmd_profile)

    lj = sub.add_parser("leja", help="Leja extremal function against the classical Green function")
    lj.add_argument("--set", choices=["circle", "disk", "interval"], default="circle")
    lj.add_argument("--n", type=int, default=64)
    lj.add_argument("--z", default="2,0")
    lj.add_argument("--mode", choices=["greedy", "exhaustive"], default="greedy")
    lj.add_argument("--grid", type=int, default=256)
    lj.add_argument("--center", default="0,0")
    lj.add_argument("--radius", type=float, default=1.0)
    lj.add_argument("--a", type=float, default=-1.0)
    lj.add_argument("--b", type=float, default=1.0)
    lj.set_defaults(func=cmd_leja)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, PointFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
