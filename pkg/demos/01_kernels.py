"""Distances on the Berkovich line, computed exactly.

Every point is a disk D(c, p^-s). Kernels are stored as -log_p values, so an
ultrametric statement such as the strong triangle inequality becomes a
comparison of rationals.
"""
import random
from fractions import Fraction

from berkpot import GAUSS, INFINITY, PrimeContext, format_point, hsia_kernel_log, spherical_kernel_log
from berkpot import type_i, type_ii
from berkpot.sampling import random_point

ctx = PrimeContext(2)

# 0 and 8 share the disk of radius 2^-3, so their kernel with pole at infinity is 3
print("[0, 8]_inf      ->", hsia_kernel_log(type_i(0), type_i(8), INFINITY, ctx))

# the spherical kernel never exceeds 1, i.e. its -log is never negative
for x, y in [(type_i(2), type_i(Fraction(1, 2))), (GAUSS, GAUSS), (type_i(0), INFINITY)]:
    print(f"[{format_point(x)}, {format_point(y)}]_g ->", spherical_kernel_log(x, y, ctx))

# moving the pole to a type II point changes which pairs look close
zeta = type_ii(0, 1)
for x in (type_i(4), type_i(1), type_ii(1, 3)):
    print(f"[{format_point(x)}, I:0/1]_zeta ->", hsia_kernel_log(x, type_i(0), zeta, ctx))

# a quick sweep of the strong triangle inequality
rng = random.Random(0)
worst = None
for _ in range(2000):
    x, y, z, pole = (random_point(rng) for _ in range(4))
    k = lambda u, v: hsia_kernel_log(u, v, pole, ctx)  # noqa: E731
    slack = k(x, y) - min(k(x, z), k(z, y))
    worst = slack if worst is None else min(worst, slack)
print("smallest slack over 2000 random triples:", worst)
