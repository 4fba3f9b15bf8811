"""Statistics of Z_n wired to samplers, shared by the CLI and the acceptance suite."""

from __future__ import annotations

import math

import numpy as np

from . import dynamics as dyn
from .processes import TailTable, estimate_tail, exact_Zn_pmf, kac_values, sample_Zn
from .rng import as_seed, stream

STATISTICS = ("zn_over_n", "phi", "psi", "log_zn", "log_age")


def transform(stat: str, z, n: int, tail: TailTable | None = None):
    """Map Z_n values (or atoms) to the statistic ``stat``."""
    z = np.asarray(z)
    if stat == "zn_over_n":
        return z / n
    if stat == "log_zn":
        return np.log(np.maximum(z, 1)) / math.log(n)
    if stat == "log_age":
        return np.log(np.maximum(n - z, 1)) / math.log(n)
    if stat in ("phi", "psi"):
        if tail is None:
            raise ValueError(f"statistic {stat!r} needs a tail table")
        phi, psi = kac_values(z, n, tail)
        return phi if stat == "phi" else psi
    raise ValueError(f"unknown statistic {stat!r}")


def reference_tail(model, A, K: int, seed: int, tail_samples: int = 10**6) -> TailTable:
    """Exact table for renewal shifts, induced-map estimate for interval maps."""
    if isinstance(model, dyn.RenewalShift):
        return TailTable.exact(model.tail, K)
    return estimate_tail(model, A, tail_samples, K, stream(seed, 0xA11))


def statistic_sampler(model, stat: str, *, A=None, init=None, tail: TailTable | None = None, threads: int = 1):
    """generator(n, size, rng) -> samples of ``stat`` at horizon n."""
    init = init if init is not None else dyn.UniformOnA()

    def generate(n, size, rng):
        z, entered, _ = sample_Zn(model, A, init, n, size, as_seed(rng), threads=threads)
        return transform(stat, z, n, tail), int(np.count_nonzero(~entered))

    return generate


def exact_statistic(tail_kind, stat: str, n: int, tail: TailTable | None = None):
    """Atoms and masses of ``stat`` under the exact renewal law of Z_n."""
    p = exact_Zn_pmf(tail_kind, n)
    return transform(stat, np.arange(n + 1), n, tail), p


def exact_resampler(tail_kind, stat: str, tail: TailTable | None = None):
    """generator drawing ``stat`` from the exact pmf of Z_n (no path simulation)."""

    def generate(n, size, rng):
        p = exact_Zn_pmf(tail_kind, n)
        z = rng.choice(n + 1, size=size, p=p / p.sum())
        return transform(stat, z, n, tail)

    return generate
