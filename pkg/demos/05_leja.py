"""Leja points in the complex plane.

Greedy Leja nodes on a compact E give (1/n) log|Lagrange polynomial| values
that approach the classical Green function of E with pole at infinity.
"""
import math

import numpy as np

from berkpot.plane import PlaneCompact, classical_green, fekete_points, leja_extremal

z = 2.0
for name, E in [("unit circle", PlaneCompact.circle()), ("[-1, 1]", PlaneCompact.interval())]:
    target = classical_green(E, z)
    print(f"{name}: G(2) = {target:.6f}")
    for n in (8, 16, 32, 64):
        v = leja_extremal(E, z, n)
        print(f"  n={n:3d}  value={v:.6f}  error={abs(v - target):.4f}   log(n)/n={math.log(n) / n:.4f}")

# on the circle, greedy nodes spread out almost evenly
nodes = fekete_points(PlaneCompact.circle(256), 15, "greedy").points
angles = np.sort(np.mod(np.angle(nodes), 2 * np.pi))
gaps = np.diff(np.append(angles, angles[0] + 2 * np.pi))
print("angular gaps of 16 greedy nodes: min %.3f max %.3f (even spacing %.3f)"
      % (gaps.min(), gaps.max(), 2 * np.pi / 16))
