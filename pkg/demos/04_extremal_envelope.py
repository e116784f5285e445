"""The Green function as an upper envelope.

Normalized competitors (log-potentials that stay <= 0 on E) never exceed the
Green function, and the equilibrium potential reaches it. We watch this on a
three-ball compact for p = 3.
"""
import random

from berkpot import INFINITY, PrimeContext, format_point, type_i
from berkpot.equilibrium import CompactSetDescription
from berkpot.green import default_candidates, green_eval, green_function, verify_main_theorem
from berkpot.sampling import sample_points

ctx = PrimeContext(3)
E = CompactSetDescription(((type_i(0), 1), (type_i(1), 2), (type_i(5), 1)), (), INFINITY)
G = green_function(E, ctx)
cands = default_candidates(E, ctx, seed=1)
print("robin constant:", G.robin, "| competitors:", len(cands))

for z in sample_points(random.Random(1), ctx, E, 12):
    g = green_eval(G, z, ctx)
    best = max(u.value(z, INFINITY, ctx) for u in cands)
    print(f"  {format_point(z):>18}  G = {str(g):>5}   best competitor = {best}")

rep = verify_main_theorem(E, sample_points(random.Random(2), ctx, E, 200), ctx, candidates=cands)
print("envelope check passed:", rep.passed, "| max gap:", rep.max_gap)
