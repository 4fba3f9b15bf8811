"""
Intermittent interval maps
==========================

The Lasota-Yorke map x/(1-x) on [0, 1/2], 2x-1 on (1/2, 1] has an
indifferent fixed point at 0 and an infinite invariant measure.  Returns to
A = [1/2, 1] are heavy tailed and the wandering rate grows like log n.
"""

import numpy as np

from erglab import dynamics as dyn
from erglab.processes import estimate_tail, wandering_slope

ly = dyn.lasota_yorke()
A = (0.5, 1.0)

# an orbit lingers near the fixed point before it is thrown back
# (a generic start: dyadic points collapse onto 0 or 1 in floating point)
x0 = 0.0100731
k = dyn.return_time(ly, A, x0, 10**4)
orb = dyn.orbit(ly, x0, k)
print(f"first visit to A from x={x0} after {k} steps")
print("orbit samples:", np.round(orb[::16], 4))

# one long induced-map trajectory gives the tail mu_A(phi > k)
tail = estimate_tail(ly, A, 200_000, 10_000, np.random.default_rng(0))
for k in (1, 10, 100, 1000):
    print(f"t_{k:<5d} = {tail.values[k]:.5f}   (k * t_k = {k * tail.values[k]:.3f})")
print(f"slope of W_n against log n on [1e2, 1e4]: {wandering_slope(tail, 100, 10_000):.3f}")
print(f"mu(A) with the window convention mu([y, 2y]) = log 2: {tail.A_mass:.4f}")

# the Thaler map has the same features with a much flatter fixed point
th = dyn.thaler()
print(f"Thaler branch point a = {th.a:.15f}")
