"""Bracketed one-dimensional minimization on an open interval."""
import math

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
GRID_POINTS = 64


def golden_section(f, lo, hi, xtol, max_iter=200):
    """Minimize a unimodal ``f`` on ``(lo, hi)``; the endpoints are never evaluated.

    Returns ``(x, f(x))`` for the best point seen.
    """
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if hi - lo <= xtol:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = f(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def _nan_to_inf(v):
    v = np.asarray(v, dtype=float)
    return np.where(np.isnan(v), np.inf, v)


def grid_minimize(f, lo, hi, xtol=None, n=GRID_POINTS):
    """Global minimum of ``f`` over the open interval ``(lo, hi)``.

    ``f`` must accept arrays.  A uniform interior grid locates every discrete
    local minimum; each is refined by golden section inside its neighbouring
    grid cells and the best refinement wins.  NaN counts as +inf.
    """
    width = hi - lo
    if xtol is None:
        xtol = 1e-12 * width
    grid = lo + width * np.arange(1, n + 1) / (n + 1)
    vals = _nan_to_inf(f(grid))
    padded = np.concatenate(([np.inf], vals, [np.inf]))
    local = np.nonzero((vals <= padded[:-2]) & (vals <= padded[2:]) & np.isfinite(vals))[0]
    if local.size == 0:
        i = int(np.argmin(vals))
        return float(grid[i]), float(vals[i])
    scalar = lambda x: float(_nan_to_inf(f(x)))
    best = (math.nan, math.inf)
    for i in local:
        a = lo if i == 0 else grid[i - 1]
        b = hi if i == n - 1 else grid[i + 1]
        x, fx = golden_section(scalar, a, b, xtol)
        if vals[i] < fx:
            x, fx = grid[i], vals[i]
        if fx < best[1]:
            best = (float(x), float(fx))
    return best


def grid_maximize(f, lo, hi, xtol=None, n=GRID_POINTS):
    x, v = grid_minimize(lambda t: -np.asarray(f(t), dtype=float), lo, hi, xtol, n)
    return x, -v
