"""
The arc-sine law for the last renewal
=====================================

A renewal chain returns to its marked state after i.i.d. times with tail
P(phi > n) = (n+1)^(-1/2).  The time Z_n of the last return before n,
rescaled by n, approaches the Beta(1/2, 1/2) law.  Here the exact law of
Z_n from the renewal recursion is compared with Monte-Carlo paths.
"""

import numpy as np

from erglab import AlphaLaw, RenewalShift, PurePower, exact_Zn_pmf, sample_Zn
from erglab.stats import dkw_bound, ks_distance, ks_distance_weighted

tail = PurePower(0.5)
xi = AlphaLaw.xi(0.5)

# exact KS distance between Z_n/n and the limit, no sampling noise at all
for n in (100, 1000, 10000):
    pmf = exact_Zn_pmf(tail, n)
    ks = ks_distance_weighted(np.arange(n + 1) / n, pmf, xi)
    print(f"n={n:>6}  exact KS = {ks:.4f}")

# the same law from simulated paths; the gap stays inside the DKW band
n, paths = 1000, 50_000
z, _, _ = sample_Zn(RenewalShift(tail), None, None, n, paths, seed=1)
print(f"Monte-Carlo KS at n={n}: {ks_distance(z / n, xi):.4f}  (DKW 95%: {dkw_bound(paths):.4f})")

# a crude text histogram of Z_n/n: mass piles up at both ends
counts, _ = np.histogram(z / n, bins=10, range=(0, 1))
for i, c in enumerate(counts):
    print(f"[{i / 10:.1f}, {(i + 1) / 10:.1f})  " + "#" * int(60 * c / counts.max()))
