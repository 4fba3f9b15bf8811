"""Return-time processes: Z_n, wandering rates and the normalized Kac pair.

For renewal models the exact law of Z_n (at-renewal start) is available via
P(Z_n = k) = u_k * P(phi > n - k); it is the noise-free oracle the Monte-Carlo
paths are checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dynamics as dyn
from .regvar import RegVarSpec, distort
from .rng import DEFAULT_BLOCK, as_seed, run_blocks, stream

PMF_MAX_N = 100_000
CENSOR_LIMIT = 0.01


@dataclass(frozen=True)
class TailTable:
    """t_k ~ mu_A(phi > k) for k = 0..K (t_0 = 1)."""

    values: np.ndarray
    source: str
    A_mass: float = 1.0
    sample_count: int | None = None
    censored_rate: float = 0.0

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.size == 0 or v[0] != 1.0:
            raise ValueError("tail table must start with t_0 = 1")
        if np.any(np.diff(v) > 0) or np.any((v < 0) | (v > 1)):
            raise ValueError("tail table must be nonincreasing in [0, 1]")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "_W", self.A_mass * np.cumsum(v))

    @classmethod
    def exact(cls, tail, K: int, A_mass: float = 1.0) -> "TailTable":
        return cls(tail.tail(np.arange(K + 1)), f"exact:{tail}", A_mass)

    @property
    def K(self) -> int:
        return self.values.size - 1

    @property
    def W(self) -> np.ndarray:
        return self._W

    def rows(self):
        for k, (t, w) in enumerate(zip(self.values, self._W)):
            yield k, t, w


def wandering_rate(tail: TailTable, n) -> float:
    """W_n = mu(A) * sum_{k<=n} t_k."""
    n_arr = np.asarray(n)
    if np.any(n_arr > tail.K) or np.any(n_arr < 0):
        raise IndexError(f"wandering_rate: n outside 0..{tail.K}")
    out = tail.W[n_arr]
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class PathSample:
    n: int
    Z_n: int
    started_in_A: bool
    phi_first: int | None
    entered: bool = True


@dataclass(frozen=True)
class KacPair:
    phi_n: float
    psi_n: float


def kac_values(z, n: int, tail: TailTable):
    """Vectorized (Phi_n, Psi_n) = (W_{Z_n}/W_n, W_{n-Z_n}/W_n)."""
    if n > tail.K:
        raise IndexError(f"tail table covers k <= {tail.K}, need n = {n}")
    z = np.asarray(z, dtype=np.int64)
    W = tail.W
    return W[z] / W[n], W[n - z] / W[n]


def kac_pair(sample: PathSample, tail: TailTable) -> KacPair:
    phi, psi = kac_values(sample.Z_n, sample.n, tail)
    return KacPair(float(phi), float(psi))


# ------------------------------------------------------------------ sampling Z_n

def _renewal_block(model: dyn.RenewalShift, n: int, size: int, rng: np.random.Generator):
    pos = model.sample_delay(rng, size, n)
    kind, alpha = dyn.tail_code(model.tail)
    z, first = dyn._renewal_paths(kind, alpha, n, pos, rng)
    return z, pos <= n, first


def _map_block(m: dyn.IntervalMap, A, init, n: int, size: int, rng: np.random.Generator):
    lo, hi = dyn._interval(A)
    xs = dyn.sample_initial(init, A, rng, size)
    z, entered, first = dyn._last_visits(m.code, m.a, lo, hi, xs, n)
    return z, entered, first


def sample_Zn(model, A, init, n: int, size: int, seed, *, threads: int = 1, block: int = DEFAULT_BLOCK):
    """Z_n for ``size`` independent paths: returns (z, entered, phi_first).

    Paths come in fixed blocks with their own streams derived from ``seed``,
    so the result is independent of ``threads``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    seed = as_seed(seed)
    if isinstance(model, dyn.RenewalShift):
        fn = lambda sz, r: _renewal_block(model, n, sz, r)
    else:
        if A is None:
            raise ValueError("interval maps need a reference set A")
        fn = lambda sz, r: _map_block(model, A, init, n, sz, r)
    return run_blocks(fn, size, seed, block=block, threads=threads, key=(n,))


def simulate_Zn(model, A, init, n: int, rng) -> PathSample:
    """One path of Z_n (0 when A is not visited by time n, flagged)."""
    if isinstance(model, dyn.RenewalShift):
        pos = model.sample_delay(rng, 1, n)
        rest = dyn.RenewalShift(model.tail)
        z, entered, first = _renewal_block(rest, max(n - int(pos[0]), 0), 1, rng)
        if pos[0] > n:
            return PathSample(n, 0, False, None, False)
        phi = int(first[0]) if first[0] > 0 else None
        return PathSample(n, int(pos[0] + z[0]), bool(pos[0] == 0), phi, True)
    lo, hi = dyn._interval(A)
    x = dyn.sample_initial(init, A, rng, 1)
    z, entered, first = dyn._last_visits(model.code, model.a, lo, hi, x, n)
    phi = int(first[0]) if first[0] > 0 else None
    return PathSample(n, int(z[0]), bool(lo <= x[0] <= hi), phi, bool(entered[0]))


def renewal_Zn_from_draws(phis, n: int, start: int = 0) -> int:
    """Z_n given explicit return times (the last partial sum <= n)."""
    z = start
    if z == n:
        return z
    for phi in phis:
        if z + phi > n:
            return z
        z += phi
        if z == n:  # the next renewal is at least n + 1
            return z
    raise ValueError("draws exhausted before passing n")


# ------------------------------------------------------------------ tails


def estimate_tail(m, A, sample_size: int, K: int, rng, *, cap: int | None = None,
                  window=(0.05, 0.1)) -> TailTable:
    """Empirical mu_A(phi > k), k <= K.

    For an interval map the return times are read off one induced-map
    trajectory started uniformly in A, and ``A_mass`` is fixed by the
    convention mu([y, 2y]) = log 2 for the reference window near the
    indifferent fixed point: by Kac's formula the visits to the window per
    return estimate mu(window)/mu(A).  For a renewal shift the return times
    are i.i.d. draws, ``A`` is ignored and ``A_mass`` is 1.
    """
    if sample_size < 10_000:
        raise ValueError("estimate_tail needs sample_size >= 1e4")
    cap = int(cap if cap is not None else max(100 * K, 10**6))
    if cap <= K:
        raise ValueError("cap must exceed K")
    gen = rng if isinstance(rng, np.random.Generator) else stream(as_seed(rng))
    if isinstance(m, dyn.RenewalShift):
        phis = dyn.renewal_sample_phi(m.tail, 1.0 - gen.random(sample_size), horizon=cap)
        visits = 0
    else:
        lo, hi = dyn._interval(A)
        redraws = gen.random(4096)
        x_start = lo + (hi - lo) * gen.random()
        phis, visits, _ = dyn._induced_run(m.code, m.a, lo, hi, x_start, sample_size, cap, *window, redraws)
    censored = int(np.count_nonzero(phis > cap))
    rate = censored / sample_size
    if rate > CENSOR_LIMIT:
        raise RuntimeError(f"censoring rate {rate:.3%} exceeds {CENSOR_LIMIT:.0%}")
    # t_k = fraction with phi > k; censored draws count as > K since cap > K
    counts = np.bincount(np.minimum(phis, K + 1), minlength=K + 2)
    t = 1.0 - np.cumsum(counts)[: K + 1] / sample_size
    t[0] = 1.0
    t = np.clip(t, 0.0, 1.0)
    wlo, whi = window
    A_mass = math.log(whi / wlo) * sample_size / visits if visits else 1.0
    return TailTable(t, "empirical", A_mass, sample_size, rate)


def wandering_slope(tail: TailTable, n_lo: int, n_hi: int, points: int = 200) -> float:
    """Least-squares slope of W_n against log n on a log-spaced grid."""
    ns = np.unique(np.geomspace(n_lo, n_hi, points).astype(int))
    return float(np.polyfit(np.log(ns), tail.W[ns], 1)[0])


def exact_Zn_pmf(tail, n: int) -> np.ndarray:
    """P(Z_n = k), k = 0..n, for the renewal shift started at a renewal."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > PMF_MAX_N:
        raise ValueError(f"exact_Zn_pmf limited to n <= {PMF_MAX_N} (O(n^2) recursion)")
    u = dyn.renewal_u_sequence(tail, n)
    t = tail.tail(np.arange(n + 1))
    return u * t[::-1]


# ------------------------------------------------------------------ pathwise checks


@dataclass(frozen=True)
class ShiftReport:
    x: float
    n: int
    z: int
    z_shift: int
    case: str  # "returns_at_n+1", "entered", "not_entered"
    holds: bool
    psi_jump: float | None
    distortion_jump: float | None


def _z_from_orbit(hits: np.ndarray) -> int:
    idx = np.flatnonzero(hits)
    return int(idx[-1]) if idx.size else 0


def shift_identity_check(m: dyn.IntervalMap, A, x: float, n: int, *, tail: TailTable | None = None,
                         F: RegVarSpec | None = None) -> ShiftReport:
    """Check Z_n(Tx) against Z_n(x) along one orbit.

    Z_n(Tx) = n when T^{n+1}x is in A, and Z_n(x) - 1 when the orbit returns
    by time n without T^{n+1}x in A.  Optionally reports |Psi_n(Tx) - Psi_n(x)|
    and |F(Z_n(Tx)) - F(Z_n(x))| / F(n).
    """
    lo, hi = dyn._interval(A)
    orb = dyn.orbit(m, x, n + 1)
    hits = (orb >= lo) & (orb <= hi)
    z = _z_from_orbit(hits[: n + 1])
    z_shift = _z_from_orbit(hits[1 : n + 2])
    returned = bool(hits[1 : n + 1].any())
    if hits[n + 1]:
        case, holds = "returns_at_n+1", z_shift == n
    elif returned:
        case, holds = "entered", z_shift == z - 1
    else:
        case, holds = "not_entered", z_shift == 0
    psi_jump = None
    if tail is not None:
        _, psi = kac_values([z, z_shift], n, tail)
        psi_jump = float(abs(psi[1] - psi[0]))
    dist_jump = None
    if F is not None:
        scale = distort(F, n)
        dist_jump = float(abs(distort(F, z_shift) - distort(F, z)) / scale) if scale > 0 else math.nan
    return ShiftReport(float(x), int(n), z, z_shift, case, bool(holds), psi_jump, dist_jump)


def psi_jumps(m: dyn.IntervalMap, A, n: int, size: int, tail: TailTable, seed, init=None):
    """|Psi_n(Tx) - Psi_n(x)| for ``size`` points drawn from ``init``."""
    init = init if init is not None else dyn.LebesgueOn()
    lo, hi = dyn._interval(A)
    rng = stream(as_seed(seed), n)
    xs = dyn.sample_initial(init, A, rng, size)
    z, _, _ = dyn._last_visits(m.code, m.a, lo, hi, xs, n)
    tx = dyn.map_eval(m, xs)
    zs, _, _ = dyn._last_visits(m.code, m.a, lo, hi, tx, n)
    _, psi = kac_values(z, n, tail)
    _, psi_s = kac_values(zs, n, tail)
    return np.abs(psi_s - psi)


# ------------------------------------------------------------------ Laplace identity


def laplace_product(tail, s: float, n_truncate: int | None = None) -> float:
    """s U(s) Q(s) with U the renewal sequence and Q the tail, both Laplace-summed."""
    if not s > 0:
        raise ValueError("s must be positive")
    if n_truncate is None:
        n_truncate = int(math.ceil(12 * math.log(10) / s))
    if math.exp(-n_truncate * s) >= 1e-12:
        raise ValueError("n_truncate too small: e^{-n s} must fall below 1e-12")
    if n_truncate > 4 * PMF_MAX_N:
        raise ValueError("u-sequence too long for the O(n^2) recursion")
    k = np.arange(n_truncate + 1)
    w = np.exp(-k * s)
    u = dyn.renewal_u_sequence(tail, n_truncate)
    return float(s * np.dot(u, w) * np.dot(tail.tail(k), w))
