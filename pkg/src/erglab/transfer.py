"""Ulam discretization of the transfer operator and uniform-set diagnostics.

Densities are taken with respect to Lebesgue measure.  Statements about the
invariant measure are tested through the conjugated form T_mu f = T(f h)/h,
with h replaced by the Cesaro shape estimate from :func:`estimate_density_shape`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from . import dynamics as dyn

DENSITY_FLOOR = 1e-12


@dataclass(frozen=True)
class Partition:
    edges: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.edges, dtype=float)
        if e[0] != 0.0 or e[-1] != 1.0 or np.any(np.diff(e) <= 1e-14):
            raise ValueError("partition must run 0 = c_0 < ... < c_M = 1 with widths > 1e-14")
        object.__setattr__(self, "edges", e)

    @classmethod
    def uniform(cls, M: int) -> "Partition":
        return cls(np.linspace(0.0, 1.0, M + 1))

    @classmethod
    def geometric(cls, M: int, pivot: float = 0.05, ratio: float = 0.9, floor: float = 1e-9) -> "Partition":
        """Uniform cells on [pivot, 1] and cells pivot * ratio**j below it,
        down to ``floor``; the bottom cell is [0, pivot * ratio**G]."""
        G = int(math.ceil(math.log(floor / pivot) / math.log(ratio)))
        upper = M - G - 1
        if upper < 1:
            raise ValueError("M too small for the geometric refinement")
        low = pivot * ratio ** np.arange(G, 0, -1)
        return cls(np.concatenate([[0.0], low, np.linspace(pivot, 1.0, upper + 1)]))

    @property
    def M(self) -> int:
        return self.edges.size - 1

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def midpoints(self) -> np.ndarray:
        return 0.5 * (self.edges[1:] + self.edges[:-1])

    def cells_in(self, lo: float, hi: float) -> np.ndarray:
        """Mask of cells lying inside [lo, hi] (up to half a cell at the ends)."""
        mid = self.midpoints
        return (mid >= lo) & (mid <= hi)


@dataclass(frozen=True)
class UlamOperator:
    matrix: sparse.csr_matrix  # row i -> column j, row-stochastic
    partition: Partition
    tag: str

    @property
    def M(self) -> int:
        return self.partition.M


def build_ulam(m: dyn.IntervalMap, partition: Partition, samples_per_cell: int | None = None, rng=None,
               *, exact: bool | None = None) -> UlamOperator:
    """Transition fractions between cells.

    Exact mode intersects cells with the branch preimages of the cell edges;
    Monte-Carlo mode maps ``samples_per_cell`` stratified points per cell.
    """
    if exact is None:
        exact = samples_per_cell is None
    if exact:
        P = _ulam_exact(m, partition)
        tag = f"{m.name}:exact"
    else:
        if samples_per_cell is None or samples_per_cell < 100:
            raise ValueError("Monte-Carlo Ulam needs samples_per_cell >= 100")
        P = _ulam_mc(m, partition, samples_per_cell, rng)
        tag = f"{m.name}:mc{samples_per_cell}"
    rows = np.asarray(P.sum(axis=1)).ravel()
    if np.any(rows == 0):
        raise ValueError("degenerate cell: empty row in the Ulam matrix")
    return UlamOperator(P, partition, tag)


def _ulam_exact(m: dyn.IntervalMap, part: Partition) -> sparse.csr_matrix:
    c = part.edges
    w = part.widths
    rows, cols, vals = [], [], []
    for b, (d0, d1) in enumerate(m.branches):
        q = np.asarray(m.branch_inverse(b, c), dtype=float)
        q[0], q[-1] = d0, d1
        q = np.maximum.accumulate(np.clip(q, d0, d1))
        inner = c[(c > d0) & (c < d1)]
        pts = np.unique(np.concatenate([q, inner, [d0, d1]]))
        seg_lo, seg_hi = pts[:-1], pts[1:]
        length = seg_hi - seg_lo
        keep = length > 0
        seg_lo, seg_hi, length = seg_lo[keep], seg_hi[keep], length[keep]
        mid = 0.5 * (seg_lo + seg_hi)
        i = np.clip(np.searchsorted(c, mid, side="right") - 1, 0, part.M - 1)
        j = np.clip(np.searchsorted(q, mid, side="right") - 1, 0, part.M - 1)
        rows.append(i)
        cols.append(j)
        vals.append(length / w[i])
    P = sparse.coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                          shape=(part.M, part.M)).tocsr()
    P.sum_duplicates()
    # renormalize away rounding in the segment lengths
    s = np.asarray(P.sum(axis=1)).ravel()
    return sparse.diags(1.0 / s) @ P


def _ulam_mc(m, part, S, rng) -> sparse.csr_matrix:
    M = part.M
    gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    strata = (np.arange(S)[None, :] + gen.random((M, S))) / S
    x = part.edges[:-1, None] + strata * part.widths[:, None]
    y = dyn.map_eval(m, np.clip(x, 0.0, 1.0))
    j = np.clip(np.searchsorted(part.edges, y, side="right") - 1, 0, M - 1)
    i = np.repeat(np.arange(M), S)
    P = sparse.coo_matrix((np.full(M * S, 1.0 / S), (i, j.ravel())), shape=(M, M)).tocsr()
    P.sum_duplicates()
    return P


def _as_density(op: UlamOperator, g) -> np.ndarray:
    g = np.asarray(g, dtype=float)
    if g.shape != (op.M,) or np.any(g < 0):
        raise ValueError("density must be a nonnegative vector with one entry per cell")
    mass = float(g @ op.partition.widths)
    if not math.isclose(mass, 1.0, rel_tol=0, abs_tol=1e-10):
        raise ValueError(f"density must integrate to 1, got {mass}")
    return g


def push_density(op: UlamOperator, g, steps, checkpoints=None):
    """Iterate the density ``g`` forward; returns {step: density} at ``checkpoints``
    (default: every step 0..steps)."""
    g = _as_density(op, g)
    w = op.partition.widths
    PT = op.matrix.T.tocsr()
    want = set(range(steps + 1)) if checkpoints is None else {int(k) for k in checkpoints}
    out = {}
    mass = g * w
    for k in range(steps + 1):
        if k in want:
            out[k] = mass / w
        if k < steps:
            mass = PT @ mass
    return out


def _cesaro(op: UlamOperator, mass0: np.ndarray, n_grid):
    """Cell masses of T^n and of sum_{k<n} T^k for each n in ``n_grid``."""
    PT = op.matrix.T.tocsr()
    n_grid = sorted(int(n) for n in n_grid)
    mass = mass0.copy()
    acc = np.zeros_like(mass)
    point, sums = {}, {}
    for k in range(n_grid[-1] + 1):
        if k in n_grid:
            point[k] = mass.copy()
            sums[k] = acc.copy()
        acc += mass
        mass = PT @ mass
    return point, sums


def estimate_density_shape(op: UlamOperator, a_table, n_cesaro: int, *, cut: float = 0.05, A=(0.5, 1.0), g=None,
                           burn_in: int = 0):
    """Shape of the invariant density on [cut, 1] from a normalized Cesaro sum.

    The sum runs over T^k g for burn_in <= k < burn_in + n_cesaro, i.e. it
    starts from T^burn_in g, which is again an admissible density.  Returns a
    vector over all cells (NaN below ``cut``) scaled so that its Lebesgue
    average over A equals 1.  ``a_table`` only rescales.
    """
    part = op.partition
    w = part.widths
    g = np.ones(op.M) if g is None else _as_density(op, g)
    mass = g * w
    if burn_in:
        PT = op.matrix.T.tocsr()
        for _ in range(burn_in):
            mass = PT @ mass
    _, sums = _cesaro(op, mass, [n_cesaro])
    dens = sums[n_cesaro] / w / _a_value(a_table, n_cesaro)
    keep = part.cells_in(cut, 1.0)
    h = np.full(op.M, np.nan)
    h[keep] = dens[keep]
    inA = part.cells_in(*A)
    h = h / (np.sum(h[inA] * w[inA]) / np.sum(w[inA]))
    if np.any(h[keep] < DENSITY_FLOOR):
        warnings.warn("density shape has cells below the numerical floor", RuntimeWarning, stacklevel=2)
    return h


def _a_value(a_table, n):
    if a_table is None:
        return 1.0
    if callable(a_table):
        return float(a_table(n))
    return float(np.asarray(a_table)[n])


def aaronson_scale(W, alpha: float):
    """a_n = n / (W_n Gamma(1+alpha) Gamma(2-alpha)) for n >= 1 (a_0 := 1)."""
    W = np.asarray(W, dtype=float)
    n = np.arange(W.size, dtype=float)
    a = n / (W * math.gamma(1 + alpha) * math.gamma(2 - alpha))
    a[0] = 1.0
    return a


@dataclass
class RatioCurve:
    n: list
    sup: list
    inf: list
    median: list
    integrated: list

    @property
    def spread(self) -> list:
        return [s / i for s, i in zip(self.sup, self.inf)]

    def flattening(self) -> bool:
        sp = self.spread
        return all(b < a for a, b in zip(sp, sp[1:]))

    def rows(self):
        for row in zip(self.n, self.sup, self.inf, self.median, self.integrated):
            yield row


def _initial_mass(op, A, g, h):
    """Cell masses of the probability nu with mu-density g, i.e. lambda-density g h."""
    part = op.partition
    inA = part.cells_in(*A)
    if g is None:
        g = inA.astype(float)
    dens = np.where(np.isnan(h), 0.0, h) * np.asarray(g, dtype=float)
    mass = dens * part.widths
    return mass / mass.sum(), inA


def check_uniformly_returning(op: UlamOperator, A, g, W, n_grid, *, h, beta: float = 0.0, A_mass: float = 1.0):
    """sup/inf/median over A-cells of W_n Gamma(1-b)Gamma(1+b) (T^n g)/h.

    ``g`` is the mu-density of the start law (None: indicator of A);
    ``integrated`` reports W_n Gamma Gamma nu(T^{-n} A) / mu(A).
    """
    part = op.partition
    mass0, inA = _initial_mass(op, A, g, h)
    if np.any(h[inA] < DENSITY_FLOOR) or np.any(np.isnan(h[inA])):
        warnings.warn("density shape below the numerical floor on A", RuntimeWarning, stacklevel=2)
    point, _ = _cesaro(op, mass0, n_grid)
    Wv = _W_values(W)
    gg = math.gamma(1 - beta) * math.gamma(1 + beta)
    curve = RatioCurve([], [], [], [], [])
    for n in sorted(point):
        r = Wv[n] * gg * (point[n] / part.widths)[inA] / h[inA]
        curve.n.append(n)
        curve.sup.append(float(r.max()))
        curve.inf.append(float(r.min()))
        curve.median.append(float(np.median(r)))
        curve.integrated.append(float(Wv[n] * gg * point[n][inA].sum() / A_mass))
    return curve


def doubling_ratio(op: UlamOperator, A, g, W, n: int, *, h, beta: float = 0.0) -> float:
    """Cell-wise median over A of r_{2n}/r_n, r_n = W_n (T^n g)/h.

    A Cauchy-type surrogate for convergence of r_n when the limit constant
    is unknown; tends to 1.  The Gamma factor cancels.
    """
    mass0, inA = _initial_mass(op, A, g, h)
    point, _ = _cesaro(op, mass0, [n, 2 * n])
    Wv = _W_values(W)
    r = (Wv[2 * n] * point[2 * n][inA]) / (Wv[n] * point[n][inA])
    return float(np.median(r))


def check_uniform(op: UlamOperator, A, g, a_table, n_grid, *, h, A_mass: float = 1.0):
    """sup/inf/median over A-cells of (1/a_n) sum_{k<n} (T^k g)/h."""
    part = op.partition
    mass0, inA = _initial_mass(op, A, g, h)
    _, sums = _cesaro(op, mass0, n_grid)
    curve = RatioCurve([], [], [], [], [])
    for n in sorted(sums):
        a = _a_value(a_table, n)
        r = (sums[n] / part.widths)[inA] / h[inA] / a
        curve.n.append(n)
        curve.sup.append(float(r.max()))
        curve.inf.append(float(r.min()))
        curve.median.append(float(np.median(r)))
        curve.integrated.append(float(sums[n][inA].sum() / a / A_mass))
    return curve


def _W_values(W):
    return W.W if hasattr(W, "W") else np.asarray(W, dtype=float)
