"""
The normalized Kac pair
=======================

With W_n the wandering rate, the pair Phi_n = W_{Z_n}/W_n and
Psi_n = W_{n-Z_n}/W_n converges jointly.  For a tail of index 1/2 both
coordinates have the density (2/pi)(1-x^2)^(-1/2).  For a slowly varying
wandering rate (harmonic tail) Psi_n becomes uniform instead.
"""

import numpy as np

from erglab import AlphaLaw, Harmonic, PurePower, RenewalShift, TailTable, kac_values, sample_Zn
from erglab.stats import ks_distance

n, paths = 100_000, 20_000

# index 1/2: both coordinates follow the arc-sine shaped Kac laws
tail = PurePower(0.5)
table = TailTable.exact(tail, n)
z, _, _ = sample_Zn(RenewalShift(tail), None, None, n, paths, seed=2)
phi, psi = kac_values(z, n, table)
print("power tail, alpha=1/2")
print(f"  KS(Phi, KacX) = {ks_distance(phi, AlphaLaw.kacx(0.5)):.4f}")
print(f"  KS(Psi, KacY) = {ks_distance(psi, AlphaLaw.kacy(0.5)):.4f}")

# harmonic tail: W_n ~ log n is slowly varying, and Psi_n drifts to U[0,1]
tail = Harmonic()
table = TailTable.exact(tail, n)
z, _, _ = sample_Zn(RenewalShift(tail), None, None, n, paths, seed=3)
_, psi = kac_values(z, n, table)
print("harmonic tail")
print(f"  KS(Psi, U) = {ks_distance(psi, AlphaLaw.uniform()):.4f}")
# the convergence is slow: Psi >= W_0/W_n, so the KS cannot drop below 1/W_n
print(f"  floor 1/W_n = {1 / table.W[n]:.4f}")
