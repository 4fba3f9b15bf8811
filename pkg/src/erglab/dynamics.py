"""Interval maps with an indifferent fixed point at 0, and the renewal shift.

Orbits are iterated plainly in double precision; there is no escape-time
shortcut near the fixed point.  The left branch owns the branch boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numba
import numpy as np

LASOTA_YORKE, THALER, DOUBLING = 0, 1, 2


def _thaler_f(x: float) -> float:
    return 0.0 if x <= 0 else x + x * x * math.exp(-1.0 / x)


def thaler_branch_point(tol: float = 1e-14) -> float:
    """The a in (0, 1) with f(a) = 1, by bisection on [0.5, 1]."""
    lo, hi = 0.5, 1.0
    while True:
        mid = 0.5 * (lo + hi)
        fm = _thaler_f(mid)
        if abs(fm - 1.0) <= tol or mid in (lo, hi):
            return mid
        if fm < 1.0:
            lo = mid
        else:
            hi = mid


THALER_A = thaler_branch_point()


@numba.njit(cache=True, nogil=True)
def _step(code, a, x):
    if code == LASOTA_YORKE:
        if x <= 0.5:
            return x / (1.0 - x)
        return 2.0 * x - 1.0
    if code == THALER:
        if x <= a:
            if x <= 0.0:
                return 0.0
            return x + x * x * math.exp(-1.0 / x)
        return (x - a) / (1.0 - a)
    if x <= 0.5:
        return 2.0 * x
    return 2.0 * x - 1.0


@dataclass(frozen=True)
class IntervalMap:
    """A piecewise increasing full-branch map of [0, 1]."""

    name: str
    code: int
    a: float  # right end of the first branch

    def __call__(self, x):
        return map_eval(self, x)

    @property
    def branches(self):
        """(domain_lo, domain_hi) per branch, left branch closed on the right."""
        return [(0.0, self.a), (self.a, 1.0)]

    def branch_inverse(self, b: int, y):
        """Inverse of branch ``b`` evaluated at ``y`` in [0, 1]."""
        y = np.asarray(y, dtype=float)
        if self.code == LASOTA_YORKE:
            return y / (1.0 + y) if b == 0 else (y + 1.0) / 2.0
        if self.code == DOUBLING:
            return y / 2.0 if b == 0 else (y + 1.0) / 2.0
        if b == 1:
            return self.a + y * (1.0 - self.a)
        return _thaler_f_inverse(y, self.a)


def _thaler_f_inverse(y, a):
    lo = np.zeros_like(y)
    hi = np.full_like(y, a)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        with np.errstate(divide="ignore", over="ignore"):
            fm = np.where(mid > 0, mid + mid * mid * np.exp(-1.0 / np.maximum(mid, 1e-300)), 0.0)
        below = fm < y
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return np.where(y <= 0, 0.0, 0.5 * (lo + hi))


def lasota_yorke() -> IntervalMap:
    return IntervalMap("lasota_yorke", LASOTA_YORKE, 0.5)


def thaler() -> IntervalMap:
    return IntervalMap("thaler", THALER, THALER_A)


def doubling() -> IntervalMap:
    """x -> 2x mod 1; the sanity map with Lebesgue as invariant density."""
    return IntervalMap("doubling", DOUBLING, 0.5)


def make_map(name: str) -> IntervalMap:
    try:
        return {"lasota_yorke": lasota_yorke, "ly": lasota_yorke, "thaler": thaler, "doubling": doubling}[name]()
    except KeyError:
        raise ValueError(f"unknown map {name!r}") from None


@numba.njit(cache=True, nogil=True)
def _eval_array(code, a, xs):
    out = np.empty(xs.size)
    for i in range(xs.size):
        out[i] = _step(code, a, xs[i])
    return out


def map_eval(m: IntervalMap, x):
    xa = np.asarray(x, dtype=float)
    if np.any((xa < 0) | (xa > 1)) or np.any(np.isnan(xa)):
        raise ValueError("map_eval: x must lie in [0, 1]")
    out = _eval_array(m.code, m.a, np.ascontiguousarray(xa).ravel()).reshape(xa.shape)
    return float(out) if out.ndim == 0 else out


def orbit(m: IntervalMap, x: float, n: int) -> np.ndarray:
    """x, T x, ..., T^n x."""
    out = np.empty(n + 1)
    out[0] = x
    for k in range(n):
        out[k + 1] = _step(m.code, m.a, out[k])
    return out


@dataclass(frozen=True)
class Exceeded:
    """No return within ``cap`` iterations."""

    cap: int


@numba.njit(cache=True, nogil=True)
def _first_hit(code, a, lo, hi, x, cap):
    for k in range(1, cap + 1):
        x = _step(code, a, x)
        if lo <= x <= hi:
            return k, x
    return -1, x


def return_time(m: IntervalMap, A, x: float, cap: int):
    """Least n >= 1 with T^n x in A, or :class:`Exceeded`."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if not 0 <= x <= 1:
        raise ValueError("x must lie in [0, 1]")
    lo, hi = _interval(A)
    k, _ = _first_hit(m.code, m.a, lo, hi, float(x), int(cap))
    return Exceeded(int(cap)) if k < 0 else int(k)


def _interval(A):
    lo, hi = float(A[0]), float(A[1])
    if not 0 <= lo < hi <= 1:
        raise ValueError(f"A must be an interval of positive length in [0, 1], got {A}")
    return lo, hi


@numba.njit(cache=True, nogil=True)
def _induced_run(code, a, lo, hi, x, count, cap, wlo, whi, redraws):
    """Return times along an induced orbit started at x in A.

    Censored excursions are recorded as cap + 1 and the orbit restarts from
    the next value in ``redraws``; so does an orbit that lands exactly on a
    fixed point (floating-point collapse).  Also counts visits to [wlo, whi].
    """
    phis = np.empty(count, dtype=np.int64)
    visits = 0
    r = 0
    restarts = 0
    for i in range(count):
        k = 0
        while True:
            x = _step(code, a, x)
            k += 1
            if wlo <= x <= whi:
                visits += 1
            if lo <= x <= hi:
                break
            if k > cap:
                break
        phis[i] = k
        if k > cap or x == 0.0 or x == 1.0:
            x = lo + redraws[r % redraws.size] * (hi - lo)
            r += 1
            restarts += 1
    return phis, visits, restarts


@numba.njit(cache=True, nogil=True)
def _last_visits(code, a, lo, hi, xs, n):
    z = np.zeros(xs.size, dtype=np.int64)
    entered = np.zeros(xs.size, dtype=np.bool_)
    first = np.full(xs.size, -1, dtype=np.int64)
    for i in range(xs.size):
        x = xs[i]
        if lo <= x <= hi:
            entered[i] = True
        for k in range(1, n + 1):
            x = _step(code, a, x)
            if lo <= x <= hi:
                z[i] = k
                entered[i] = True
                if first[i] < 0:
                    first[i] = k
    return z, entered, first


# ---------------------------------------------------------------- renewal shift


@dataclass(frozen=True)
class PurePower:
    """P(phi > n) = (n+1)^-alpha."""

    alpha: float

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError("PurePower needs alpha in (0, 1)")

    def tail(self, k):
        return (np.asarray(k, dtype=float) + 1.0) ** -self.alpha


    def __str__(self):
        return f"power:{self.alpha:g}"


@dataclass(frozen=True)
class Harmonic:
    """P(phi > n) = 1/(n+1)."""

    def tail(self, k):
        return 1.0 / (np.asarray(k, dtype=float) + 1.0)


    def __str__(self):
        return "harmonic"


@dataclass(frozen=True)
class InverseLog:
    """P(phi > n) = 1/log(n + e)."""

    def tail(self, k):
        return 1.0 / np.log(np.asarray(k, dtype=float) + math.e)


    def __str__(self):
        return "invlog"



def renewal_sample_phi(tail, u, horizon: int = 2**62):
    """Inverse-transform draw: min{n >= 1 : tail(n) < u}, capped at horizon + 1.

    ``u`` must lie in (0, 1); arrays are accepted.
    """
    ua = np.asarray(u, dtype=float)
    if np.any((ua <= 0) | (ua >= 1)):
        raise ValueError("u must lie in (0, 1)")
    out = _exact_phi(tail, ua, horizon)
    return int(out) if out.ndim == 0 else out


def _exact_phi(tail, u, horizon):
    """Closed-form draw, then a one-step correction against the tail itself."""
    if isinstance(tail, InverseLog):
        inv = 1.0 / u
        big = inv > math.log(horizon + math.e + 1.0)
        with np.errstate(over="ignore"):
            t = np.where(big, np.inf, np.exp(np.where(big, 0.0, inv)) - math.e)
    elif isinstance(tail, PurePower):
        with np.errstate(over="ignore"):
            t = u ** (-1.0 / tail.alpha) - 1.0
    else:
        t = 1.0 / u - 1.0
    cap = float(horizon) + 1.0
    phi = np.where(t >= cap, cap, np.floor(np.minimum(t, cap)) + 1.0)
    phi = np.maximum(phi, 1.0)
    # guard rounding at exact boundaries: enforce tail(phi) < u <= tail(phi-1)
    ok = phi >= cap
    tl = tail.tail(phi)
    phi = np.where(~ok & (tl >= u), phi + 1.0, phi)
    prev = tail.tail(phi - 1.0)
    phi = np.where(~ok & (phi > 1) & (prev < u), phi - 1.0, phi)
    return np.minimum(phi, cap).astype(np.int64)


_POWER, _HARMONIC, _INVLOG = 0, 1, 2


def tail_code(tail) -> tuple[int, float]:
    if isinstance(tail, PurePower):
        return _POWER, tail.alpha
    if isinstance(tail, Harmonic):
        return _HARMONIC, 0.0
    return _INVLOG, 0.0


@numba.njit(cache=True, nogil=True, inline="always")
def _tail_value(kind, alpha, k):
    if kind == _POWER:
        return (k + 1.0) ** -alpha
    if kind == _HARMONIC:
        return 1.0 / (k + 1.0)
    return 1.0 / math.log(k + math.e)


@numba.njit(cache=True, nogil=True, inline="always")
def _phi_draw(kind, alpha, u, horizon):
    cap = horizon + 1.0
    if kind == _POWER:
        t = u ** (-1.0 / alpha) - 1.0
    elif kind == _HARMONIC:
        t = 1.0 / u - 1.0
    else:
        inv = 1.0 / u
        if inv > math.log(horizon + math.e + 1.0):
            return int(cap)
        t = math.exp(inv) - math.e
    if t >= cap:
        return int(cap)
    phi = max(math.floor(t) + 1.0, 1.0)
    # branch-free rounding fix: tail(phi) < u <= tail(phi - 1); tail(0) = 1 > u
    up = 1.0 if _tail_value(kind, alpha, phi) >= u else 0.0
    down = 1.0 if _tail_value(kind, alpha, phi - 1.0) < u else 0.0
    return int(min(phi + up - down, cap))


@numba.njit(cache=True)
def _renewal_paths(kind, alpha, n, pos, gen):
    """Last renewal <= n per path, starting from the first entries ``pos``."""
    size = pos.size
    z = np.zeros(size, dtype=np.int64)
    first = np.full(size, -1, dtype=np.int64)
    for i in range(size):
        p = pos[i]
        if p > n:
            continue
        k = 0
        while True:
            u = 1.0 - gen.random()
            if u >= 1.0:
                u = 1.0 - 2.0**-53
            phi = _phi_draw(kind, alpha, u, n)
            if k == 0:
                first[i] = phi
            k += 1
            if p + phi > n:
                break
            p += phi
        z[i] = p
    return z, first


@dataclass(frozen=True)
class AtRenewal:
    def __str__(self):
        return "at_renewal"


@dataclass(frozen=True)
class DelayTail:
    """First entry D with P(D = d) proportional to tail(d), d = 0..m-1."""

    m: int

    def __str__(self):
        return f"delay:{self.m}"


@dataclass(frozen=True)
class RenewalShift:
    tail: PurePower | Harmonic | InverseLog
    delay: AtRenewal | DelayTail = field(default_factory=AtRenewal)

    def sample_delay(self, rng, size, horizon):
        if isinstance(self.delay, AtRenewal):
            return np.zeros(size, dtype=np.int64)
        w = np.cumsum(self.tail.tail(np.arange(self.delay.m)))
        d = np.searchsorted(w, rng.random(size) * w[-1], side="right")
        return np.minimum(d, horizon + 1).astype(np.int64)


def parse_tail(text: str):
    name, _, arg = text.strip().lower().partition(":")
    if name == "power":
        return PurePower(float(arg))
    if name == "harmonic":
        return Harmonic()
    if name in ("invlog", "inverselog"):
        return InverseLog()
    raise ValueError(f"unknown tail {text!r}")


def renewal_probabilities(tail, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """(tail(0..n_max), p) with p_k = tail(k-1) - tail(k) and p_0 = 0."""
    t = tail.tail(np.arange(n_max + 1))
    p = np.zeros(n_max + 1)
    p[1:] = t[:-1] - t[1:]
    return t, p


@numba.njit(cache=True, nogil=True)
def _renewal_recursion(p):
    n = p.size - 1
    u = np.zeros(n + 1)
    u[0] = 1.0
    for m in range(1, n + 1):
        s = 0.0
        for k in range(1, m + 1):
            s += p[k] * u[m - k]
        u[m] = s
    return u


def renewal_u_sequence(tail, n_max: int) -> np.ndarray:
    """u_0..u_{n_max}: probability of being in A at time n after a renewal at 0."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    _, p = renewal_probabilities(tail, n_max)
    return _renewal_recursion(p)


# ---------------------------------------------------------------- initial laws


@dataclass(frozen=True)
class LebesgueOn:
    lo: float = 0.0
    hi: float = 1.0


@dataclass(frozen=True)
class UniformOnA:
    pass


@dataclass(frozen=True)
class PointMass:
    """Deterministic start; not an admissible (absolutely continuous) law."""

    x: float


def admissible(init) -> bool:
    return not isinstance(init, PointMass)


def sample_initial(init, A, rng, size) -> np.ndarray:
    if isinstance(init, PointMass):
        return np.full(size, float(init.x))
    lo, hi = _interval(A) if isinstance(init, UniformOnA) else (init.lo, init.hi)
    if not 0 <= lo < hi <= 1:
        raise ValueError("initial interval must have positive length inside [0, 1]")
    return lo + (hi - lo) * rng.random(size)
