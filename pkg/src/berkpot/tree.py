"""Finite subtrees of the Berkovich line and calculus of CPA functions on them.

A :class:`FiniteSubgraph` is the convex hull of finitely many type II points;
its vertex set is closed under joins, so every branch point is a vertex and
each edge is a segment of the tree with an exact rational length. A
:class:`CPAFunction` stores one rational per vertex and is affine in arclength
along each edge. The Laplacian follows the sign convention
``Delta(f) = -sum_p (sum of outgoing slopes at p) delta_p``, so subharmonic
means nonpositive Laplacian weight at interior vertices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .ultrametric import (
    BerkPoint,
    PrimeContext,
    canonical_key,
    contains_disk,
    format_point,
    format_rational,
    hsia_kernel_log,
    join_wrt_infinity,
    parse_point,
    parse_rational,
    path_distance,
    same_point,
)

__all__ = [
    "FiniteSubgraph",
    "CPAFunction",
    "DiscreteMeasure",
    "NotSubharmonicError",
    "convex_hull",
    "retraction",
    "add_retractions",
    "restrict_kernel",
    "directional_derivative",
    "laplacian",
    "is_subharmonic_on",
    "dirichlet_harmonic",
    "riesz_decompose",
    "solve_exact",
    "subgraph_to_json",
    "subgraph_from_json",
    "measure_to_json",
    "measure_from_json",
]


class NotSubharmonicError(ValueError):
    pass


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finitely many weighted atoms at distinct points; weights may be signed."""

    atoms: Tuple[Tuple[BerkPoint, Fraction], ...] = ()

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[BerkPoint, Fraction]], ctx: PrimeContext):
        """Merge atoms at equal points and drop zero weights."""
        merged: Dict[tuple, List] = {}
        for x, w in pairs:
            key = canonical_key(x, ctx)
            if key in merged:
                merged[key][1] += Fraction(w)
            else:
                merged[key] = [x, Fraction(w)]
        return cls(tuple((x, w) for x, w in merged.values() if w != 0))

    @property
    def total_mass(self) -> Fraction:
        return sum((w for _, w in self.atoms), Fraction(0))

    @property
    def points(self) -> List[BerkPoint]:
        return [x for x, _ in self.atoms]

    def weight_at(self, x: BerkPoint, ctx: PrimeContext) -> Fraction:
        return sum((w for y, w in self.atoms if same_point(x, y, ctx)), Fraction(0))

    def __len__(self):
        return len(self.atoms)

    def is_nonnegative(self) -> bool:
        return all(w >= 0 for _, w in self.atoms)

    def scaled(self, c) -> "DiscreteMeasure":
        c = Fraction(c)
        return DiscreteMeasure(tuple((x, c * w) for x, w in self.atoms if c * w != 0))

    def same_as(self, other: "DiscreteMeasure", ctx: PrimeContext) -> bool:
        """Equality as measures (order of atoms and center choice ignored)."""
        a = {canonical_key(x, ctx): w for x, w in DiscreteMeasure.from_pairs(self.atoms, ctx).atoms}
        b = {canonical_key(x, ctx): w for x, w in DiscreteMeasure.from_pairs(other.atoms, ctx).atoms}
        return a == b


@dataclass(frozen=True)
class FiniteSubgraph:
    """A finite metric subtree spanned by type II vertices.

    ``edges`` holds ``(i, j, length)`` with ``vertices[j]`` the endpoint
    farther from infinity.
    """

    vertices: Tuple[BerkPoint, ...]
    edges: Tuple[Tuple[int, int, Fraction], ...]
    ctx: PrimeContext
    _adj: Dict[int, List[Tuple[int, Fraction]]] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        adj: Dict[int, List[Tuple[int, Fraction]]] = {i: [] for i in range(len(self.vertices))}
        for i, j, length in self.edges:
            adj[i].append((j, length))
            adj[j].append((i, length))
        object.__setattr__(self, "_adj", adj)

    def neighbors(self, i: int) -> List[Tuple[int, Fraction]]:
        return self._adj[i]

    def degree(self, i: int) -> int:
        return len(self._adj[i])

    @property
    def leaves(self) -> List[int]:
        if len(self.vertices) == 1:
            return [0]
        return [i for i in self._adj if len(self._adj[i]) == 1]

    def index_of(self, x: BerkPoint) -> Optional[int]:
        for i, v in enumerate(self.vertices):
            if same_point(v, x, self.ctx):
                return i
        return None

    @property
    def top(self) -> int:
        """Index of the vertex closest to infinity (the join of all vertices)."""
        children = {j for _, j, _ in self.edges}
        return next(i for i in range(len(self.vertices)) if i not in children)

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class CPAFunction:
    host: FiniteSubgraph
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != len(self.host.vertices):
            raise ValueError("one value per vertex is required")
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def __call__(self, i: int) -> Fraction:
        return self.values[i]

    def __add__(self, other: "CPAFunction") -> "CPAFunction":
        return CPAFunction(self.host, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "CPAFunction") -> "CPAFunction":
        return CPAFunction(self.host, tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, c) -> "CPAFunction":
        return CPAFunction(self.host, tuple(Fraction(c) * a for a in self.values))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1


def _dedupe(points: Iterable[BerkPoint], ctx: PrimeContext) -> List[BerkPoint]:
    seen, out = set(), []
    for x in points:
        key = canonical_key(x, ctx)
        if key not in seen:
            seen.add(key)
            out.append(x)
    return out


def convex_hull(points: Sequence[BerkPoint], ctx: PrimeContext) -> FiniteSubgraph:
    """The smallest subtree containing the given type II points."""
    if not points:
        raise ValueError("convex hull of an empty set")
    for x in points:
        if not x.is_type_ii:
            raise ValueError(f"convex hull needs type II points, got {format_point(x)}")
    base = _dedupe(points, ctx)
    joins = [join_wrt_infinity(x, y, ctx) for a, x in enumerate(base) for y in base[a + 1:]]
    verts = _dedupe(base + joins, ctx)
    edges = []
    for j, x in enumerate(verts):
        # parent = the smallest strictly larger vertex disk
        parent = None
        for i, y in enumerate(verts):
            if i != j and contains_disk(y, x, ctx) and not same_point(x, y, ctx):
                if parent is None or y.log_radius > verts[parent].log_radius:
                    parent = i
        if parent is not None:
            edges.append((parent, j, path_distance(verts[parent], x, ctx)))
    return FiniteSubgraph(tuple(verts), tuple(edges), ctx)


def retraction(graph: FiniteSubgraph, x: BerkPoint, ctx: PrimeContext) -> BerkPoint:
    """The point where the path from ``x`` first meets ``graph``."""
    verts = graph.vertices
    top = graph.top
    if x.is_infinity or not contains_disk(verts[top], x, ctx):
        return verts[top]
    v = max(
        (i for i, y in enumerate(verts) if contains_disk(y, x, ctx)),
        key=lambda i: verts[i].log_radius,
    )
    for c, _ in graph.neighbors(v):
        child = verts[c]
        if child.log_radius <= verts[v].log_radius:
            continue
        m = join_wrt_infinity(x, child, ctx)
        if not same_point(m, verts[v], ctx):
            return m
    return verts[v]


def add_retractions(graph: FiniteSubgraph, points: Iterable[BerkPoint], ctx: PrimeContext) -> FiniteSubgraph:
    """Same subtree, subdivided so the retraction of every given point is a vertex."""
    extra = [retraction(graph, x, ctx) for x in points]
    return convex_hull(list(graph.vertices) + extra, ctx)


def restrict_kernel(graph: FiniteSubgraph, y: BerkPoint, zeta: BerkPoint, ctx: PrimeContext) -> CPAFunction:
    """Vertex values of ``-log [., y]_zeta``, affine along every edge."""
    for name, pt in (("y", y), ("zeta", zeta)):
        r = retraction(graph, pt, ctx)
        if graph.index_of(r) is None:
            raise ValueError(f"retraction of {name} ({format_point(r)}) is not a vertex of the subgraph")
    return CPAFunction(graph, tuple(hsia_kernel_log(v, y, zeta, ctx) for v in graph.vertices))


def directional_derivative(f: CPAFunction, p: int, q: int) -> Fraction:
    """Slope of ``f`` leaving vertex ``p`` along the edge toward vertex ``q``."""
    for other, length in f.host.neighbors(p):
        if other == q:
            return (f.values[q] - f.values[p]) / length
    raise ValueError(f"vertices {p} and {q} are not adjacent")


def laplacian(f: CPAFunction) -> DiscreteMeasure:
    g = f.host
    atoms = []
    for p, x in enumerate(g.vertices):
        w = -sum((directional_derivative(f, p, q) for q, _ in g.neighbors(p)), Fraction(0))
        if w != 0:
            atoms.append((x, w))
    return DiscreteMeasure(tuple(atoms))


def _weights_by_vertex(f: CPAFunction) -> List[Fraction]:
    g = f.host
    return [
        -sum((directional_derivative(f, p, q) for q, _ in g.neighbors(p)), Fraction(0))
        for p in range(len(g))
    ]


def is_subharmonic_on(f: CPAFunction, interior: Iterable[int]) -> bool:
    w = _weights_by_vertex(f)
    return all(w[i] <= 0 for i in interior)


def solve_exact(a: List[List[Fraction]], b: List[Fraction]) -> Optional[List[Fraction]]:
    """Gauss-Jordan elimination over the rationals; ``None`` if singular."""
    n = len(a)
    m = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [vr - factor * vc for vr, vc in zip(m[r], m[col])]
    return [row[n] for row in m]


def dirichlet_harmonic(graph: FiniteSubgraph, boundary: Iterable[int], g: Dict[int, Fraction]) -> CPAFunction:
    """The CPA function equal to ``g`` on ``boundary`` and harmonic elsewhere."""
    boundary = sorted(set(boundary))
    if not boundary:
        raise ValueError("boundary must be nonempty")
    for leaf in graph.leaves:
        if leaf not in boundary:
            raise ValueError(f"leaf vertex {format_point(graph.vertices[leaf])} is not a boundary vertex")
    interior = [i for i in range(len(graph)) if i not in boundary]
    pos = {v: k for k, v in enumerate(interior)}
    a = [[Fraction(0)] * len(interior) for _ in interior]
    rhs = [Fraction(0)] * len(interior)
    # balance of slopes: sum_q (f(q) - f(p)) / len(pq) = 0
    for p in interior:
        row = pos[p]
        for q, length in graph.neighbors(p):
            a[row][row] -= 1 / length
            if q in pos:
                a[row][pos[q]] += 1 / length
            else:
                rhs[row] -= Fraction(g[q]) / length
    sol = solve_exact(a, rhs) if interior else []
    if sol is None:
        raise ArithmeticError("singular Dirichlet system")
    values = [Fraction(g[i]) if i in g and i not in pos else sol[pos[i]] for i in range(len(graph))]
    return CPAFunction(graph, tuple(values))


def riesz_decompose(graph: FiniteSubgraph, interior: Iterable[int], f: CPAFunction,
                    zeta: BerkPoint, ctx: PrimeContext) -> Tuple[CPAFunction, DiscreteMeasure]:
    """Split a subharmonic ``f`` as ``h - u_nu`` with ``h`` harmonic on ``interior``.

    ``nu`` is minus the Laplacian of ``f`` on the interior and ``u_nu`` its
    potential with pole ``zeta``, which must retract to a boundary vertex.
    """
    interior = sorted(set(interior))
    weights = _weights_by_vertex(f)
    for i in interior:
        if weights[i] > 0:
            raise NotSubharmonicError(
                f"f is not subharmonic at {format_point(graph.vertices[i])} (weight {weights[i]})")
    r = graph.index_of(retraction(graph, zeta, ctx))
    if r is None or r in interior:
        raise ValueError("zeta must retract to a boundary vertex")
    nu = DiscreteMeasure(tuple((graph.vertices[i], -weights[i]) for i in interior if weights[i] != 0))
    pot = [sum((w * hsia_kernel_log(v, y, zeta, ctx) for y, w in nu.atoms), Fraction(0))
           for v in graph.vertices]
    h = CPAFunction(graph, tuple(fv + pv for fv, pv in zip(f.values, pot)))
    hw = _weights_by_vertex(h)
    bad = [i for i in interior if hw[i] != 0]
    if bad:
        raise AssertionError(f"Riesz remainder not harmonic at vertex {bad[0]}")
    return h, nu


# -- JSON forms ----------------------------------------------------------------


def subgraph_to_json(graph: FiniteSubgraph) -> str:
    return json.dumps({
        "vertices": [format_point(v) for v in graph.vertices],
        "edges": [[i, j] for i, j, _ in graph.edges],
    })


def subgraph_from_json(text: str, ctx: PrimeContext) -> FiniteSubgraph:
    data = json.loads(text)
    verts = tuple(parse_point(s) for s in data["vertices"])
    if len(data["edges"]) != len(verts) - 1:
        raise ValueError("a tree on n vertices needs n - 1 edges")
    edges = []
    for entry in data["edges"]:
        i, j = entry[0], entry[1]
        a, b = verts[i], verts[j]
        if contains_disk(b, a, ctx):
            i, j, a, b = j, i, b, a
        if not contains_disk(a, b, ctx):
            raise ValueError(f"edge {i}-{j} joins incomparable disks")
        length = path_distance(a, b, ctx)
        if len(entry) > 2 and parse_rational(str(entry[2])) != length:
            raise ValueError(f"edge {i}-{j} declares length {entry[2]}, tree distance is {length}")
        for k, v in enumerate(verts):
            if (k not in (i, j) and contains_disk(a, v, ctx) and contains_disk(v, b, ctx)
                    and not same_point(v, a, ctx) and not same_point(v, b, ctx)):
                raise ValueError(f"edge {i}-{j} length mismatch: vertex {k} lies strictly inside it")
        edges.append((i, j, length))
    graph = FiniteSubgraph(verts, tuple(edges), ctx)
    seen, stack = {0}, [0]
    while stack:
        for q, _ in graph.neighbors(stack.pop()):
            if q not in seen:
                seen.add(q)
                stack.append(q)
    if len(seen) != len(verts):
        raise ValueError("subgraph is not connected")
    return graph


def measure_to_json(mu: DiscreteMeasure) -> str:
    return json.dumps([[format_point(x), format_rational(w)] for x, w in mu.atoms])


def measure_from_json(text: str) -> DiscreteMeasure:
    return DiscreteMeasure(tuple((parse_point(x), parse_rational(w)) for x, w in json.loads(text)))
