"""Equilibrium measures of finite unions of balls.

The energy minimizer over probability measures sits on the roots of the
balls, so the problem collapses to an exact quadratic program on a simplex.
"""
from berkpot import INFINITY, PrimeContext, format_point, type_i, type_ii
from berkpot.equilibrium import CompactSetDescription, capacity_float, candidate_support, equilibrium, kernel_matrix

ctx = PrimeContext(2)

scenes = {
    "one ball B(0, 2^-2)": CompactSetDescription(((type_i(0), 2),), (), INFINITY),
    "two disjoint balls": CompactSetDescription(((type_i(0), 1), (type_i(1), 1)), (), INFINITY),
    "a type II point": CompactSetDescription((), (type_ii(0, 1),), INFINITY),
    "two type I points": CompactSetDescription((), (type_i(0), type_i(1)), INFINITY),
}
for name, E in scenes.items():
    eq = equilibrium(E, ctx)
    print(f"{name}: robin = {eq.robin}, capacity ~ {capacity_float(eq, ctx):.6f}")
    for x, w in eq.measure.atoms:
        print(f"    {format_point(x)} carries {w}")

# the two-ball kernel matrix is the identity, hence weights 1/2 and robin 1/2
E = scenes["two disjoint balls"]
print("kernel matrix:", [[str(v) for v in row] for row in kernel_matrix(candidate_support(E, ctx), INFINITY, ctx)])
