"""Regularly and slowly varying functions.

Two parametric forms are supported: ``x**beta * log(x)**gamma`` and the
Karamata representation ``x**beta * psi(x) * exp(int_B^x zeta(t)/t dt)``
with user-supplied ``psi`` and ``zeta``.  Nothing here tries to discover
such a representation for an arbitrary function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

INVERSE_RTOL = 1e-12
LAPLACE_RTOL = 1e-15
_BRACKET_LIMIT = 1e300


@dataclass(frozen=True)
class PowerLog:
    beta: float
    gamma: float = 0.0


@dataclass(frozen=True)
class KaramataForm:
    beta: float
    psi: Callable[[float], float]
    zeta: Callable[[float], float]
    B: float

    def __post_init__(self):
        if not self.B > 0:
            raise ValueError("Karamata threshold B must be positive")


@dataclass(frozen=True)
class RegVarSpec:
    form: PowerLog | KaramataForm
    x0: float = math.e

    def __post_init__(self):
        if not self.x0 > 0:
            raise ValueError("x0 must be positive")
        if isinstance(self.form, PowerLog) and self.form.gamma != 0 and self.x0 <= 1:
            raise ValueError("PowerLog with a log factor needs x0 > 1")
        if isinstance(self.form, KaramataForm) and self.x0 < self.form.B:
            raise ValueError("Karamata form is only defined for x >= B")

    @property
    def beta(self) -> float:
        return self.form.beta

    def __call__(self, x):
        return evaluate(self, x)


def power_log(beta: float, gamma: float = 0.0, x0: float = math.e) -> RegVarSpec:
    return RegVarSpec(PowerLog(float(beta), float(gamma)), x0)


def karamata(beta, psi, zeta, B, x0=None) -> RegVarSpec:
    return RegVarSpec(KaramataForm(float(beta), psi, zeta, float(B)), float(B if x0 is None else x0))


def log_loglog(x0: float = 16.0) -> RegVarSpec:
    """``log(x) * log(log(x))`` written in Karamata form (psi constant)."""
    B = float(x0)
    lb = math.log(B)
    return karamata(
        0.0,
        psi=lambda x: lb * math.log(lb),
        zeta=lambda t: 1.0 / math.log(t) + 1.0 / (math.log(t) * math.log(math.log(t))),
        B=B,
    )


def evaluate(spec: RegVarSpec, x):
    """F(x) for x >= spec.x0; PowerLog is computed in log-space."""
    xa = np.asarray(x, dtype=float)
    if np.any(xa < spec.x0):
        raise ValueError(f"evaluate: x below domain floor x0={spec.x0}")
    form = spec.form
    if isinstance(form, PowerLog):
        logv = form.beta * np.log(xa)
        if form.gamma:
            logv = logv + form.gamma * np.log(np.log(xa))
        out = np.exp(logv)
        return float(out) if out.ndim == 0 else out
    vec = np.vectorize(lambda t: _karamata_scalar(form, t), otypes=[float])
    out = vec(xa)
    return float(out) if out.ndim == 0 else out


def _karamata_scalar(form: KaramataForm, x: float) -> float:
    # integrate zeta(e^s) ds over s in [log B, log x]
    lo, hi = math.log(form.B), math.log(x)
    integral = 0.0
    if hi > lo:
        integral = integrate.quad(lambda s: form.zeta(math.exp(s)), lo, hi, epsabs=0, epsrel=1e-13, limit=200)[0]
    return x**form.beta * form.psi(x) * math.exp(integral)


def distort(spec: RegVarSpec, y):
    """F(y) with F set to 0 below the domain floor (F is only locally bounded there)."""
    ya = np.asarray(y, dtype=float)
    safe = np.maximum(ya, spec.x0)
    out = np.where(ya >= spec.x0, evaluate(spec, safe), 0.0)
    return float(out) if out.ndim == 0 else out


def asymptotic_inverse(spec: RegVarSpec, y: float, rtol: float = INVERSE_RTOL) -> float:
    """inf{t >= x0 : F(t) > y} by bracket doubling from x0, then bisection."""
    f = lambda t: evaluate(spec, t)
    lo = spec.x0
    if f(lo) > y:
        return lo
    hi = 2.0 * lo
    while not f(hi) > y:
        lo = hi
        hi *= 2.0
        if hi > _BRACKET_LIMIT:
            raise ValueError(f"asymptotic_inverse: range exhausted, F stays <= {y}")
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if f(mid) > y:
            hi = mid
        else:
            lo = mid
    return hi


def erickson_scale(L: RegVarSpec, n: float, x: float) -> float:
    """a_n(x) = L^{-1}(x L(n)) for slowly varying, increasing L."""
    if L.beta != 0:
        raise ValueError("erickson_scale needs a slowly varying L (beta = 0)")
    if not 0 < x < 1:
        raise ValueError("x must lie in (0, 1)")
    return asymptotic_inverse(L, x * evaluate(L, n))


def variation_ratio(spec: RegVarSpec, lam: float, xs):
    """F(lam x)/F(x) along ``xs``; tends to lam**beta."""
    xs = np.asarray(xs, dtype=float)
    return evaluate(spec, lam * xs) / evaluate(spec, xs)


def uniform_asymptotic_ratio(L: RegVarSpec, p, q, k: float):
    """L(p_n)/L(q_n) for sequences with p_n/q_n in [1/k, k]."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    r = p / q
    if np.any((r < 1 / k) | (r > k)):
        raise ValueError(f"p/q leaves [1/{k}, {k}]")
    return evaluate(L, p) / evaluate(L, q)


def _as_sequence(seq, start: int, upto: int) -> np.ndarray:
    """Values of a sequence on indices start..upto (callable or array from ``start``)."""
    if callable(seq):
        return np.asarray(seq(np.arange(start, upto + 1)), dtype=float)
    arr = np.asarray(seq, dtype=float)
    if arr.size < upto - start + 1:
        raise IndexError("sequence too short for the requested grid")
    return arr[: upto - start + 1]


def laplace_sum(b, s: float, chunk: int = 1 << 16, max_terms: int = 1 << 28) -> float:
    """sum_n b_n e^{-ns}; stops once e^{-ns} b_n < 1e-15 * partial sum.

    ``b`` is a callable of index arrays or a finite array indexed from 0.
    """
    total = 0.0
    start = 0
    limit = max_terms if callable(b) else len(b)
    while start < limit:
        stop = min(start + chunk, limit)
        k = np.arange(start, stop)
        terms = _as_sequence(b, 0, stop - 1)[start:] if not callable(b) else np.asarray(b(k), dtype=float)
        terms = terms * np.exp(-k * s)
        running = total + np.cumsum(terms)
        small = np.flatnonzero((terms < LAPLACE_RTOL * running) & (running > 0))
        if small.size:
            return float(running[small[0]])
        total = float(running[-1])
        start = stop
    return total


def karamata_tauberian_ratio(b, rho: float, L: RegVarSpec | None, n_grid, s_grid):
    """Both sides of Karamata's Tauberian theorem as ratios tending to 1.

    Returns ``(partial, laplace)``: lists of ``(n, ratio)`` with
    ratio = sum_{k<n} b_k / (n^rho L(n) / Gamma(rho+1)), and of ``(s, ratio)``
    with ratio = B(s) / (s^-rho L(1/s)).  ``L=None`` means L == 1.
    """
    Lf = (lambda t: 1.0) if L is None else (lambda t: evaluate(L, t))
    n_grid = [int(n) for n in n_grid]
    partial = []
    if n_grid:
        vals = _as_sequence(b, 0, max(n_grid) - 1)
        csum = np.concatenate([[0.0], np.cumsum(vals)])
        g = math.gamma(rho + 1)
        for n in n_grid:
            partial.append((n, float(csum[n] / (n**rho * Lf(n) / g))))
    laplace = [(s, laplace_sum(b, s) / (s**-rho * Lf(1.0 / s))) for s in s_grid]
    return partial, laplace


def karamata_lemma_ratio(a, p: float, rho: float, n_grid):
    """n^{p+1} a_n / sum_{k<=n} k^p a_k; tends to p + rho + 1.

    ``a`` is a callable or an array with ``a[0]`` holding a_1.
    """
    if p < -rho - 1:
        raise ValueError("Karamata's lemma needs p >= -rho - 1")
    n_grid = [int(n) for n in n_grid]
    top = max(n_grid)
    vals = _as_sequence(a, 1, top)
    k = np.arange(1, top + 1, dtype=float)
    csum = np.cumsum(k**p * vals)
    out = []
    for n in n_grid:
        denom = csum[n - 1]
        if denom == 0:
            raise ZeroDivisionError(f"partial sum vanishes at n={n}")
        out.append((n, float(n ** (p + 1) * vals[n - 1] / denom)))
    return out
