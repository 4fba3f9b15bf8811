"""
Regularly varying scales
========================

Small checks of the regular-variation toolkit: asymptotic inverses, the
Erickson scale a_n(x) = L^{-1}(x L(n)) of a slowly varying L, and the two
sides of Karamata's Tauberian theorem for b_k = (k+1)^(-1/2).
"""

import math

from erglab import regvar as rv

F = rv.power_log(1, -1)  # x / log x
x = rv.asymptotic_inverse(F, 100.0)
print(f"x / log x = 100 at x = {x:.4f}")

L = rv.power_log(0, 1)  # log
for n in (1e4, 1e8, 1e12):
    print(f"a_n(1/2) for L = log, n = {n:.0e}: {rv.erickson_scale(L, n, 0.5):.1f}")

ll = rv.log_loglog()
a = rv.erickson_scale(ll, 1e6, 0.5)
print(f"L = log * loglog, n = 1e6: a_n(1/2)/n = {a / 1e6:.5f}")

partial, laplace = rv.karamata_tauberian_ratio(lambda k: (k + 1.0) ** -0.5, 0.5, None,
                                               [10**3, 10**5], [1e-2, 1e-4])
print("partial-sum ratios:", [round(r, 4) for _, r in partial])
print("Laplace ratios:    ", [round(r, 4) for _, r in laplace])
print("both tend to Gamma(1/2) =", round(math.sqrt(math.pi), 4))
