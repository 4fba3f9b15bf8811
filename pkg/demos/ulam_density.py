"""
Densities under the Ulam operator
=================================

The transfer operator of the Lasota-Yorke map is discretized on a partition
refined geometrically towards 0.  Pushing the indicator of A forward, the
density W_n T^n g, divided by the invariant density shape, flattens on A:
the set is uniformly returning.
"""

import numpy as np

from erglab import dynamics as dyn
from erglab import transfer as tr
from erglab.processes import estimate_tail

ly = dyn.lasota_yorke()
A = (0.5, 1.0)

part = tr.Partition.geometric(4096)
op = tr.build_ulam(ly, part)
print(f"{part.M} cells, smallest width {part.widths.min():.1e}, {op.matrix.nnz} nonzeros")

tail = estimate_tail(ly, A, 200_000, 12_000, np.random.default_rng(1))
a = tr.aaronson_scale(tail.W, 1.0)

# the invariant density shape from a Cesaro sum that starts after a burn-in
h = tr.estimate_density_shape(op, a, 8000, A=A, burn_in=4000)
for x in (0.06, 0.1, 0.25, 0.5, 0.75, 1.0):
    i = min(np.searchsorted(part.edges, x) - 1, part.M - 1)
    print(f"h({x:.2f}) ~ {h[i]:.3f}")

grid = [250, 500, 1000, 2000]
ur = tr.check_uniformly_returning(op, A, None, tail, grid, h=h, A_mass=tail.A_mass)
un = tr.check_uniform(op, A, None, a, grid, h=h, A_mass=tail.A_mass)
print(" n     sup/inf (pointwise)  sup/inf (Cesaro)")
for n, s1, s2 in zip(grid, ur.spread, un.spread):
    print(f"{n:>5}  {s1:.6f}            {s2:.5f}")
print("r_2n / r_n at n=1000:", round(tr.doubling_ratio(op, A, None, tail, 1000, h=h), 4))
