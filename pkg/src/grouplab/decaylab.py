"""Coefficient combinatorics for mu = (zeta + eta)/2 with commuting zeta, eta.

With zeta and eta commuting, ``sum_{j<=n} mu^j`` is a combination of the
monomials ``zeta^k eta^l`` (k + l <= n) with coefficient

    c[k][l] = 2^-(k+l) * C(k+l, k).

The free-commuting model realizes zeta = delta_(1,0), eta = delta_(0,1) on
Z^2; there ``G_n = (1/(n+1)) sum_{j<=n} mu^j`` and

    ||G_n * (delta_e - eta)||_1 = (1/(n+1)) sum_{k,l} |c[k][l] - c[k][l-1]|

with c[k][-1] = c[k][n-k+1] = 0.  Any actual commuting pair can only do
better (cancellations), so this is the worst case.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import PreconditionError, ResourceCapExceeded
from .measures import RATIONAL, REAL, normalize_mode

EXACT_GRID_CAP = 400
REAL_GRID_CAP = 5000


@dataclass(frozen=True)
class CoefficientGrid:
    n: int
    mode: str
    rows: tuple  # rows[k][l] = c_{k,l}, l = 0 .. n-k

    def row(self, k: int):
        return self.rows[k]

    def __getitem__(self, kl):
        k, l = kl
        if k < 0 or l < 0 or k + l > self.n:
            raise IndexError(f"({k}, {l}) outside the triangle k + l <= {self.n}")
        return self.rows[k][l]


@dataclass(frozen=True)
class Block:
    """``weight * eta^start * (1 + eta + ... + eta^length)``."""

    start: int
    length: int
    weight: object


@dataclass(frozen=True)
class StaircaseDecomposition:
    k: int
    blocks: tuple

    def expand(self, size: int | None = None) -> list:
        if size is None:
            size = max((b.start + b.length + 1 for b in self.blocks), default=0)
        zero = Fraction(0) if not self.blocks or isinstance(self.blocks[0].weight, Fraction) else 0.0
        out = [zero] * size
        for b in self.blocks:
            for i in range(b.start, b.start + b.length + 1):
                out[i] += b.weight
        return out


@dataclass
class DecayReport:
    n: list
    decay_norm: list
    coarse_bound: list
    refined_bound: list
    runtime_ms: list = field(default_factory=list)
    f_exponent: float = 0.25
    exponent: float | None = None
    residual: float | None = None

    def coarse_violations(self) -> list:
        return [n for n, d, c in zip(self.n, self.decay_norm, self.coarse_bound) if d > c]

    def ratio_trend(self, exponent: float = 3 / 8) -> list:
        """decay_norm(n) * n^exponent at each sample point."""
        return [float(d) * n ** exponent for n, d in zip(self.n, self.decay_norm)]


def _check_n(n: int, mode: str):
    if not isinstance(n, int) or n < 0:
        raise PreconditionError(f"horizon must be a nonnegative integer, got {n!r}")
    cap = EXACT_GRID_CAP if mode == RATIONAL else REAL_GRID_CAP
    if n > cap:
        raise ResourceCapExceeded(f"{mode} grid capped at n = {cap}, got {n}")


def grid(n: int, mode: str = RATIONAL) -> CoefficientGrid:
    mode = normalize_mode(mode)
    _check_n(n, mode)
    if n < 1:
        raise PreconditionError("grid needs n >= 1")
    if mode == RATIONAL:
        rows = tuple(
            tuple(Fraction(math.comb(k + l, k), 2 ** (k + l)) for l in range(n - k + 1))
            for k in range(n + 1)
        )
        return CoefficientGrid(n, mode, rows)
    # diagonal recurrence d_{s+1}[k] = (d_s[k] + d_s[k-1]) / 2, d_s[k] = c_{k, s-k}
    rows = [np.zeros(n - k + 1) for k in range(n + 1)]
    d = np.ones(1)
    rows[0][0] = 1.0
    for s in range(1, n + 1):
        nd = np.zeros(s + 1)
        nd[:s] += 0.5 * d
        nd[1:] += 0.5 * d
        for k in range(s + 1):
            rows[k][s - k] = nd[k]
        d = nd
    return CoefficientGrid(n, mode, tuple(rows))


def staircase(g: CoefficientGrid, k: int) -> StaircaseDecomposition:
    """Layer-cake decomposition of row k into weighted runs of consecutive powers.

    Each distinct level lambda_i of the row contributes the maximal runs of
    the superlevel set {l : c_{k,l} >= lambda_i} with weight
    lambda_i - lambda_{i-1}.  For the unimodal rows of the grid each
    superlevel set is one run.
    """
    if not 0 <= k <= g.n:
        raise PreconditionError(f"row index {k} outside 0..{g.n}")
    row = list(g.row(k))
    levels = sorted(set(v for v in row if v > 0))
    blocks = []
    prev = Fraction(0) if g.mode == RATIONAL else 0.0
    for lam in levels:
        w = lam - prev
        prev = lam
        l = 0
        while l < len(row):
            if row[l] >= lam:
                start = l
                while l < len(row) and row[l] >= lam:
                    l += 1
                blocks.append(Block(start, l - start - 1, w))
            else:
                l += 1
    return StaircaseDecomposition(k, tuple(blocks))


def decay_norm(n: int, mode: str = REAL):
    """||G_n * (delta_e - eta)||_1 in the free-commuting model on Z^2."""
    mode = normalize_mode(mode)
    _check_n(n, mode)
    if mode == RATIONAL:
        # scaled by 2^n (n+1): entries C(k+l, k) 2^(n-k-l) are integers
        total = 0
        for k in range(n + 1):
            prev = 0
            for l in range(n - k + 1):
                cur = math.comb(k + l, k) << (n - k - l)
                total += abs(cur - prev)
                prev = cur
            total += prev
        return Fraction(total, (n + 1) << n)
    # stream diagonals: O(n) memory
    d = np.ones(1)
    total = 1.0
    for s in range(1, n + 1):
        nd = np.zeros(s + 1)
        nd[:s] += 0.5 * d
        nd[1:] += 0.5 * d
        # cell (k, s-k) minus cell (k, s-k-1) = d_{s-1}[k] (absent for k = s)
        total += float(np.abs(nd[:s] - d).sum()) + float(nd[s])
        d = nd
    total += float(d.sum())  # cells (k, n-k+1) are zero
    return total / (n + 1)


def f_value(i: float, f_exponent) -> float:
    return float(i) ** float(f_exponent)


def coarse_bound(n: int, f_exponent=0.25) -> float:
    """f(n) sqrt(n) / n + 2 / f(n) with f(n) = n^f_exponent."""
    _check_f(f_exponent)
    if n < 1:
        raise PreconditionError("coarse bound needs n >= 1")
    f = f_value(n, f_exponent)
    return f * math.sqrt(n) / n + 2 / f


def refined_bound(n: int, f_exponent=0.25) -> float:
    """sum_{i=1}^{n} 8 f(i)^3 / (sqrt(pi) i^(3/2)); the i = 0 term is empty."""
    _check_f(f_exponent)
    c = 8 / math.sqrt(math.pi)
    return math.fsum(c * f_value(i, f_exponent) ** 3 / i ** 1.5 for i in range(1, n + 1))


def _check_f(f_exponent):
    if not 0 < float(f_exponent) < 0.5:
        raise PreconditionError(f"f exponent must lie in (0, 1/2), got {f_exponent}")


def window_radius(i: int, f_exponent) -> int:
    """Integer window half-width floor(i^f_exponent)."""
    r = int(math.floor(f_value(i, f_exponent) + 1e-12)) if i > 0 else 0
    return r


def difference_sum(n: int, f_exponent=0.25, mode: str = RATIONAL):
    """sum_i sum_{|j - i| <= f(i)} (c_{i,j} - min(c_{i,i-f(i)}, c_{i,i+f(i)})).

    The central coefficients of row i minus the smaller window-boundary
    value; every term is nonnegative because rows are unimodal.  Values are
    read from a grid large enough to contain all windows.
    """
    mode = normalize_mode(mode)
    _check_f(f_exponent)
    horizon = 2 * n + window_radius(n, f_exponent)
    g = grid(max(horizon, 1), mode)
    total = Fraction(0) if mode == RATIONAL else 0.0
    for i in range(n + 1):
        r = window_radius(i, f_exponent)
        lo, hi = max(i - r, 0), i + r
        floor = min(g[i, lo], g[i, hi])
        for j in range(lo, hi + 1):
            total += g[i, j] - floor
    return total


def fit_exponent(points: Sequence) -> tuple[float, float]:
    """Least-squares fit value ~ K n^-a on log-log axes.

    Returns ``(a, residual)`` where residual is the root-mean-square of the
    log-space fit errors.
    """
    pts = list(points)
    if len(pts) < 4:
        raise PreconditionError(f"exponent fit needs at least 4 points, got {len(pts)}")
    ns = np.array([float(n) for n, _ in pts])
    vs = np.array([float(v) for _, v in pts])
    if np.any(vs <= 0) or np.any(ns <= 0):
        raise PreconditionError("exponent fit needs positive n and values")
    x, y = np.log(ns), np.log(vs)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return float(-slope), float(np.sqrt(np.mean(resid ** 2)))


def decay_report(ns: Sequence[int], f_exponent=0.25, mode: str = REAL) -> DecayReport:
    """Decay norm and both bounds at each n (sorted), plus the exponent fit."""
    ns = sorted(set(int(n) for n in ns))
    if not ns or ns[0] < 1:
        raise PreconditionError("sample points must be positive integers")
    report = DecayReport([], [], [], [], f_exponent=float(f_exponent))
    t0 = time.perf_counter()
    for n in ns:
        report.n.append(n)
        report.decay_norm.append(decay_norm(n, mode))
        report.coarse_bound.append(coarse_bound(n, f_exponent))
        report.refined_bound.append(refined_bound(n, f_exponent))
        report.runtime_ms.append((time.perf_counter() - t0) * 1000)
    if len(ns) >= 4:
        report.exponent, report.residual = fit_exponent(zip(report.n, report.decay_norm))
    return report
