"""A kernel restricted to a finite subtree has a two-atom Laplacian.

We build the convex hull of three type II points, restrict log[., y]_zeta to
it and read off the Laplacian: +1 where y retracts, -1 where zeta retracts.
"""
from berkpot import INFINITY, PrimeContext, format_point, type_i, type_ii
from berkpot.tree import add_retractions, convex_hull, laplacian, restrict_kernel, retraction

ctx = PrimeContext(2)
g = convex_hull([type_ii(0, 2), type_ii(1, 2), type_ii(0, -2)], ctx)
print("vertices:", [format_point(v) for v in g.vertices])

y, zeta = type_i(4), INFINITY
g = add_retractions(g, [y, zeta], ctx)
f = restrict_kernel(g, y, zeta, ctx)
for v, val in zip(g.vertices, f.values):
    print(f"  f({format_point(v)}) = {val}")

mu = laplacian(f)
print("laplacian atoms:", [(format_point(x), str(w)) for x, w in mu.atoms])
print("retraction of y:", format_point(retraction(g, y, ctx)))
print("total mass:", mu.total_mass)
