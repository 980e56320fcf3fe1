"""Derivative-free maximization and minimization on intervals and boxes.

The scalar maximizer scans a uniform grid and polishes the best bracket by
golden-section search.  The box optimizers run a deterministic Nelder-Mead
simplex from every seed of a uniform grid (or caller-supplied seeds) and keep
the best local optimum, breaking exact ties in favour of the earliest seed.
No randomness anywhere; identical inputs give identical outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SearchSpec",
    "OptimizationError",
    "maximize_scalar",
    "maximize_box",
    "minimize_box",
    "nelder_mead",
]

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class OptimizationError(Exception):
    """Raised on non-finite objective values or empty search domains."""


@dataclass(frozen=True)
class SearchSpec:
    """Multistart layout, bounds and stopping tolerances for a search."""

    box: tuple[tuple[float, float], ...]
    multistart_count: int = 16
    x_tol: float = 1e-9
    f_tol: float = 1e-12
    max_iters: int = 2000

    def __post_init__(self):
        if self.multistart_count < 1:
            raise ValueError("multistart_count must be >= 1")
        if not (self.x_tol > 0 and self.f_tol > 0):
            raise ValueError("tolerances must be > 0")
        for lo, hi in self.box:
            if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
                raise ValueError(f"bounds must be finite with lo <= hi, got ({lo}, {hi})")


@dataclass
class OptResult:
    x: np.ndarray
    value: float
    evaluations: int
    seed_index: int = 0


def _check_finite(value: float, x) -> float:
    if not math.isfinite(value):
        raise OptimizationError(f"objective returned non-finite value {value!r} at {x!r}")
    return value


def maximize_scalar(f, lo: float, hi: float, spec: SearchSpec) -> tuple[float, float]:
    """Maximize f on [lo, hi]: best point of a uniform multistart grid,
    refined by golden-section search on the bracketing neighbours.

    Returns (argmax, max).  The argmax is within x_tol of a local maximizer
    and global up to the grid resolution.
    """
    if hi < lo:
        raise ValueError(f"need lo <= hi, got [{lo}, {hi}]")
    if hi == lo:
        return lo, _check_finite(f(lo), lo)
    n = max(spec.multistart_count, 2)
    xs = [lo + (hi - lo) * i / (n - 1) for i in range(n)]
    vals = [_check_finite(f(x), x) for x in xs]
    best = max(range(n), key=lambda i: (vals[i], -i))
    a = xs[max(best - 1, 0)]
    b = xs[min(best + 1, n - 1)]

    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = _check_finite(f(c), c)
    fd = _check_finite(f(d), d)
    for _ in range(spec.max_iters):
        if b - a <= spec.x_tol:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = _check_finite(f(c), c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = _check_finite(f(d), d)
    if fc > fd:
        x_best, f_best = c, fc
    else:
        x_best, f_best = d, fd
    if vals[best] > f_best:
        x_best, f_best = xs[best], vals[best]
    return x_best, f_best


def nelder_mead(f, x0, step, x_tol: float, f_tol: float, max_evals: int):
    """Deterministic Nelder-Mead minimization from x0 with per-coordinate
    initial step.  Returns (x_best, f_best, evaluations)."""
    x0 = np.asarray(x0, dtype=float)
    dim = x0.size
    pts = [x0.copy()]
    for i in range(dim):
        p = x0.copy()
        p[i] += step[i] if step[i] != 0.0 else 1e-4
        pts.append(p)
    vals = []
    evals = 0
    for p in pts:
        if evals >= max_evals:
            # budget exhausted during simplex construction: best seen so far
            i_best = min(range(len(vals)), key=lambda i: (vals[i], i))
            return pts[i_best], vals[i_best], evals
        vals.append(_check_finite(f(p), p))
        evals += 1

    alpha, gamma, rho, sigma = 1.0, 2.0, 0.5, 0.5
    while evals < max_evals:
        order = sorted(range(dim + 1), key=lambda i: (vals[i], i))
        pts = [pts[i] for i in order]
        vals = [vals[i] for i in order]
        spread_f = vals[-1] - vals[0]
        spread_x = max(np.max(np.abs(p - pts[0])) for p in pts[1:])
        if spread_f <= f_tol and spread_x <= x_tol:
            break
        centroid = np.mean(pts[:-1], axis=0)
        xr = centroid + alpha * (centroid - pts[-1])
        fr = _check_finite(f(xr), xr)
        evals += 1
        if fr < vals[0]:
            xe = centroid + gamma * (centroid - pts[-1])
            fe = _check_finite(f(xe), xe)
            evals += 1
            if fe < fr:
                pts[-1], vals[-1] = xe, fe
            else:
                pts[-1], vals[-1] = xr, fr
        elif fr < vals[-2]:
            pts[-1], vals[-1] = xr, fr
        else:
            xc = centroid + rho * (pts[-1] - centroid)
            fc = _check_finite(f(xc), xc)
            evals += 1
            if fc < vals[-1]:
                pts[-1], vals[-1] = xc, fc
            else:
                for i in range(1, dim + 1):
                    pts[i] = pts[0] + sigma * (pts[i] - pts[0])
                    vals[i] = _check_finite(f(pts[i]), pts[i])
                    evals += 1
    i_best = min(range(dim + 1), key=lambda i: (vals[i], i))
    return pts[i_best], vals[i_best], evals


def _grid_seeds(spec: SearchSpec) -> list[np.ndarray]:
    dim = len(spec.box)
    per_dim = max(2, int(round(spec.multistart_count ** (1.0 / dim))))
    axes = []
    for lo, hi in spec.box:
        if hi == lo:
            axes.append(np.array([lo]))
        else:
            # interior grid: avoids seeding exactly on the boundary
            axes.append(np.linspace(lo, hi, per_dim + 2)[1:-1])
    mesh = np.meshgrid(*axes, indexing="ij")
    return [np.array(p) for p in zip(*(m.ravel() for m in mesh))]


def minimize_box(f, spec: SearchSpec, seeds=None) -> OptResult:
    """Multistart Nelder-Mead minimization over the spec box.

    Seeds default to a uniform interior grid; evaluation points are clipped
    to the box.  Returns the best local minimum found (earliest seed wins on
    exact ties).
    """
    lo = np.array([b[0] for b in spec.box])
    hi = np.array([b[1] for b in spec.box])

    def clipped(x):
        return f(np.clip(x, lo, hi))

    if seeds is None:
        seeds = _grid_seeds(spec)
    if not seeds:
        raise OptimizationError("no seeds to start from")
    steps = 0.05 * (hi - lo)
    best_x, best_f, best_i = None, math.inf, -1
    total_evals = 0
    budget = max(spec.max_iters // len(seeds), 50)
    for i, s in enumerate(seeds):
        x, v, n = nelder_mead(clipped, s, steps, spec.x_tol, spec.f_tol, budget)
        total_evals += n
        v_seed = _check_finite(f(np.clip(np.asarray(s, dtype=float), lo, hi)), s)
        total_evals += 1
        if v_seed < v:
            x, v = np.asarray(s, dtype=float), v_seed
        if v < best_f:
            best_x, best_f, best_i = np.clip(x, lo, hi), v, i
    return OptResult(best_x, best_f, total_evals, seed_index=best_i)


def maximize_box(f, spec: SearchSpec, seeds=None) -> OptResult:
    """Multistart Nelder-Mead maximization over the spec box (mirror of
    minimize_box)."""
    res = minimize_box(lambda x: -f(x), spec, seeds=seeds)
    return OptResult(res.x, -res.value, res.evaluations, seed_index=res.seed_index)
