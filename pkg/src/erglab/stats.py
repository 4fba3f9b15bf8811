"""Empirical distributions, Kolmogorov-Smirnov distances and DKW bands."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .limits import AlphaLaw, cdf

MAX_CONFIDENCE = 0.9999


@dataclass(frozen=True)
class EmpiricalCDF:
    values: np.ndarray

    def __post_init__(self):
        v = np.sort(np.asarray(self.values, dtype=float).ravel())
        if v.size == 0:
            raise ValueError("EmpiricalCDF needs at least one sample")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.size

    def __call__(self, x):
        return np.searchsorted(self.values, x, side="right") / self.n

    @classmethod
    def merge(cls, parts) -> "EmpiricalCDF":
        return cls(np.concatenate([p.values for p in parts]))


def ks_distance(ecdf, law) -> float:
    """sup |F_n - F| for a continuous or Dirac law.

    ``law`` is an :class:`AlphaLaw`, any vectorized CDF callable, or
    another :class:`EmpiricalCDF` (two-sample distance).
    """
    if not isinstance(ecdf, EmpiricalCDF):
        ecdf = EmpiricalCDF(ecdf)
    if isinstance(law, EmpiricalCDF):
        return ks_two_sample(ecdf.values, law.values)
    F = _cdf_of(law)(ecdf.values)
    n = ecdf.n
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - F), np.max(F - (i - 1) / n), 0.0))


def ks_distance_weighted(values, weights, law) -> float:
    """KS distance between a discrete law (atoms ``values`` with masses
    ``weights``) and a continuous law; used with exact pmf oracles."""
    values = np.asarray(values, dtype=float)
    weights = np.asarray(weights, dtype=float)
    order = np.argsort(values, kind="stable")
    v, w = values[order], weights[order]
    # merge coincident atoms
    uniq, start = np.unique(v, return_index=True)
    mass = np.add.reduceat(w, start)
    upper = np.cumsum(mass) / weights.sum()
    lower = upper - mass / weights.sum()
    F = _cdf_of(law)(uniq)
    return float(max(np.max(np.abs(upper - F)), np.max(np.abs(lower - F))))


def ks_two_sample(a, b) -> float:
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    grid = np.concatenate([a, b])
    fa = np.searchsorted(a, grid, side="right") / a.size
    fb = np.searchsorted(b, grid, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))


def _cdf_of(law):
    if isinstance(law, AlphaLaw):
        return lambda x: cdf(law, x)
    return law


def dkw_bound(n: int, confidence: float = 0.95) -> float:
    """Half-width of the DKW band: sqrt(ln(2/(1-confidence)) / (2n))."""
    if n < 1:
        raise ValueError("dkw_bound needs n >= 1")
    if not 0 < confidence <= MAX_CONFIDENCE:
        raise ValueError(f"confidence must lie in (0, {MAX_CONFIDENCE}]")
    return math.sqrt(math.log(2.0 / (1.0 - confidence)) / (2.0 * n))


@dataclass
class SweepVerdict:
    n_list: list
    samples: list
    ks: list
    dkw95: list
    threshold: float
    censored: list = field(default_factory=list)

    @property
    def trend_flags(self) -> list[bool]:
        flags = [True]
        for i in range(1, len(self.ks)):
            allowance = self.dkw95[i - 1] + self.dkw95[i]
            flags.append(self.ks[i] <= self.ks[i - 1] + allowance)
        return flags

    @property
    def monotone_trend(self) -> bool:
        return all(self.trend_flags)

    @property
    def strictly_decreasing(self) -> bool:
        return all(b < a for a, b in zip(self.ks, self.ks[1:]))

    @property
    def final_gate(self) -> bool:
        return self.ks[-1] <= self.threshold

    @property
    def passed(self) -> bool:
        return self.monotone_trend and self.final_gate

    def rows(self):
        """(n, samples, ks, dkw95, pass_trend, pass_gate) per swept n."""
        last = len(self.ks) - 1
        for i, n in enumerate(self.n_list):
            gate = self.ks[i] <= self.threshold if i == last else ""
            yield (n, self.samples[i], self.ks[i], self.dkw95[i], self.trend_flags[i], gate)


def convergence_sweep(generator, law, n_list, samples_per_n, threshold, rng=None):
    """KS of a statistic against ``law`` along increasing ``n``.

    ``generator(n, size, rng)`` returns the statistic's samples, or a pair
    ``(samples, censored_count)``.  ``rng`` is a Generator handed to the
    generator as-is, or an int seed (one stream per n is then derived).
    """
    n_list = list(n_list)
    if len(n_list) < 3 or any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("n_list must be increasing with at least 3 entries")
    from .rng import stream

    ks, dkw, sizes, cens = [], [], [], []
    for j, n in enumerate(n_list):
        r = stream(rng, j) if isinstance(rng, (int, np.integer)) else rng
        out = generator(n, samples_per_n, r)
        c = 0
        if isinstance(out, tuple):
            out, c = out
        out = np.asarray(out, dtype=float)
        ks.append(ks_distance(EmpiricalCDF(out), law))
        dkw.append(dkw_bound(out.size, 0.95))
        sizes.append(out.size)
        cens.append(int(c))
    return SweepVerdict(n_list, sizes, ks, dkw, float(threshold), cens)
