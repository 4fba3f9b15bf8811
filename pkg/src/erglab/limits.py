"""Closed-form limit laws: generalized arc-sine, Kac-process limits, uniform.

All CDFs reduce to the regularized incomplete beta function, which is
evaluated here by a modified-Lentz continued fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

_CF_TINY = 1e-300
_CF_EPS = 1e-16
_CF_MAXIT = 20000


@numba.njit(cache=True)
def _betacf(a, b, x):
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    return np.nan


@numba.njit(cache=True)
def _ibeta_scalar(a, b, x):
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    lbeta = math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
    front = math.exp(lbeta + a * math.log(x) + b * math.log1p(-x))
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


@numba.njit(cache=True)
def _ibeta_array(a, b, xs):
    out = np.empty(xs.size)
    for i in range(xs.size):
        out[i] = _ibeta_scalar(a, b, xs[i])
    return out


def reg_inc_beta(a: float, b: float, x):
    """Regularized incomplete beta ``I_x(a, b)``; ``x`` may be an array."""
    if not (a > 0 and b > 0):
        raise ValueError(f"reg_inc_beta needs a, b > 0, got a={a}, b={b}")
    xa = np.asarray(x, dtype=float)
    if np.any((xa < 0) | (xa > 1)) or np.any(np.isnan(xa)):
        raise ValueError("reg_inc_beta: x must lie in [0, 1]")
    out = _ibeta_array(float(a), float(b), np.ascontiguousarray(xa).ravel()).reshape(xa.shape)
    return float(out) if out.ndim == 0 else out


KINDS = ("xi", "kacx", "kacy", "uniform", "dirac")


@dataclass(frozen=True)
class AlphaLaw:
    """One of the limit laws.  Build through the classmethods, which fold the
    boundary parameters into :meth:`dirac` or :meth:`uniform`."""

    kind: str
    param: float = 0.0

    @classmethod
    def xi(cls, alpha: float) -> "AlphaLaw":
        _check_alpha(alpha, 0.0, 1.0)
        if alpha == 0:
            return cls.dirac(0.0)
        if alpha == 1:
            return cls.dirac(1.0)
        return cls("xi", float(alpha))

    @classmethod
    def kacx(cls, alpha: float) -> "AlphaLaw":
        _check_alpha(alpha, 0.0, 1.0)
        if alpha == 0:
            return cls.dirac(0.0)
        if alpha == 1:
            return cls.dirac(1.0)
        return cls("kacx", float(alpha))

    @classmethod
    def kacy(cls, alpha: float) -> "AlphaLaw":
        if not 0.0 <= alpha < 1.0:
            raise ValueError(f"KacY needs alpha in [0, 1), got {alpha}")
        if alpha == 0:
            return cls.dirac(1.0)
        return cls("kacy", float(alpha))

    @classmethod
    def uniform(cls) -> "AlphaLaw":
        return cls("uniform", 0.0)

    @classmethod
    def dirac(cls, c: float) -> "AlphaLaw":
        _check_alpha(c, 0.0, 1.0)
        return cls("dirac", float(c))

    @classmethod
    def parse(cls, text: str) -> "AlphaLaw":
        """Parse ``xi:0.5``, ``kacx:0.3``, ``kacy:0.7``, ``uniform`` or ``dirac:0``."""
        name, _, arg = text.strip().lower().partition(":")
        if name in ("uniform", "u", "uniform01"):
            return cls.uniform()
        if name not in ("xi", "kacx", "kacy", "dirac") or not arg:
            raise ValueError(f"cannot parse law {text!r}")
        return getattr(cls, name)(float(arg))

    @property
    def alpha(self) -> float:
        return self.param

    @property
    def is_dirac(self) -> bool:
        return self.kind == "dirac"

    def __str__(self) -> str:
        return "uniform" if self.kind == "uniform" else f"{self.kind}:{self.param:g}"


def _check_alpha(v, lo, hi):
    if not lo <= v <= hi:
        raise ValueError(f"parameter {v} outside [{lo}, {hi}]")


def pdf(law: AlphaLaw, x):
    """Density of ``law`` in closed form; endpoint values are the formula's
    limits (possibly inf), and 0 outside [0, 1]."""
    if law.is_dirac:
        raise ValueError("Dirac laws have no density")
    xa = np.asarray(x, dtype=float)
    if law.kind == "uniform":
        out = np.where((xa >= 0) & (xa <= 1), 1.0, 0.0)
        return float(out) if out.ndim == 0 else out
    a = law.param
    c = math.sin(math.pi * a) / math.pi
    with np.errstate(divide="ignore", invalid="ignore"):
        if law.kind == "xi":
            out = c / (xa ** (1 - a) * (1 - xa) ** a)
        else:
            p = 1.0 / (1.0 - a)
            one_minus_y = -np.expm1(p * np.log(xa))  # 1 - x^p without cancellation
            if law.kind == "kacx":
                out = p * c / (xa ** ((1 - 2 * a) / (1 - a)) * one_minus_y**a)
            else:
                out = p * c / one_minus_y ** (1 - a)
    out = np.where((xa >= 0) & (xa <= 1), out, 0.0)
    return float(out) if out.ndim == 0 else out


def cdf(law: AlphaLaw, x):
    """Distribution function; works for every kind including Dirac."""
    xa = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    if law.kind == "uniform":
        out = xa
    elif law.kind == "dirac":
        out = np.where(np.asarray(x, dtype=float) >= law.param, 1.0, 0.0)
    elif law.kind == "xi":
        out = reg_inc_beta(law.param, 1 - law.param, xa)
    else:
        a = law.param
        y = xa ** (1.0 / (1.0 - a))
        if law.kind == "kacx":
            out = reg_inc_beta(a, 1 - a, y)
        else:
            out = reg_inc_beta(1 - a, a, y)
    out = np.asarray(out, dtype=float)
    return float(out) if out.ndim == 0 else out


def sample(law: AlphaLaw, rng: np.random.Generator, size=None):
    """Draw from ``law``: Beta via a two-gamma ratio, Kac laws by transforming it."""
    if law.is_dirac:
        raise ValueError("sampling a Dirac law is not supported")
    if law.kind == "uniform":
        return rng.random(size)
    a = law.param
    g1 = rng.standard_gamma(a, size)
    g2 = rng.standard_gamma(1 - a, size)
    xi = g1 / (g1 + g2)
    if law.kind == "xi":
        return xi
    if law.kind == "kacx":
        return xi ** (1 - a)
    return (1 - xi) ** (1 - a)
