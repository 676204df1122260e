"""Hot inner loops: chaotic map iteration and the GWO position update.

Each kernel has a numba version (``*_nb``) and a numpy / pure-Python version
(``*_py``). The unsuffixed names are bound to one of the two at import time,
see :mod:`chaoswolf._accel`.

The scalar map step is written once against ``math`` so the same source is
both the interpreted fallback and the numba input.
"""
import math

import numpy as np

from ._accel import USE_NUMBA, njit

GAUSS, LOGISTIC, CHEBYSHEV, ITERATIVE, SINGER, TENT, SINUSOIDAL = range(7)

DEGENERATE_TOL = 1e-12
KICK = 1e-6
# second kick when the first one lands back on the previous iterate
KICK2 = 1e-6 * 1.618033988749895


def native_range(code):
    if code == CHEBYSHEV or code == ITERATIVE:
        return -1.0, 1.0
    return 0.0, 1.0


def _raw_step(code, x, k, p, full):
    if code == GAUSS:
        if x == 0.0:
            return 0.0
        y = 1.0 / x
        return y - math.floor(y)
    if code == LOGISTIC:
        return p * x * (1.0 - x)
    if code == CHEBYSHEV:
        return math.cos(k * math.acos(x))
    if code == ITERATIVE:
        if x == 0.0:
            return 0.0
        return math.sin(p * math.pi / x)
    if code == SINGER:
        x2 = x * x
        return p * (7.86 * x - 23.31 * x2 + 28.75 * x2 * x - 13.3 * x2 * x2)
    if code == TENT:
        if x < 0.7:
            return x / 0.7
        return (10.0 / 3.0) * (1.0 - x)
    if full:
        return p * x * x * math.sin(math.pi * x)
    return math.sin(math.pi * x)


def _fold(y, lo, hi):
    # reflect back into the open interval
    for _ in range(64):
        if y >= hi:
            y = 2.0 * hi - y
        elif y <= lo:
            y = 2.0 * lo - y
        else:
            return y
    return 0.5 * (lo + hi)


def _settle(y, prev, lo, hi, fixed_points):
    bad = y != y or y <= lo + DEGENERATE_TOL or y >= hi - DEGENERATE_TOL or abs(y) < DEGENERATE_TOL
    if not bad:
        for fp in fixed_points:
            if abs(y - fp) < DEGENERATE_TOL:
                bad = True
                break
    if bad:
        if y != y:
            y = 0.5 * (lo + hi)
        y = _fold(y + KICK, lo, hi)
        if y == prev:
            y = _fold(y + KICK2, lo, hi)
    return y


def _advance(code, x, k, p, full, fixed_points, lo, hi):
    k += 1
    return _settle(_raw_step(code, x, k, p, full), x, lo, hi, fixed_points), k


def _fill(code, x, k, p, full, fixed_points, out):
    lo, hi = native_range(code)
    for i in range(out.shape[0]):
        k += 1
        x = _settle(_raw_step(code, x, k, p, full), x, lo, hi, fixed_points)
        out[i] = x
    return x, k


def _update_positions(X, leaders, A, C, lower, upper):
    n, dim = X.shape
    out = np.empty_like(X)
    for i in range(n):
        for j in range(dim):
            x = X[i, j]
            x1 = leaders[0, j] - A[i, 0, j] * abs(C[i, 0, j] * leaders[0, j] - x)
            x2 = leaders[1, j] - A[i, 1, j] * abs(C[i, 1, j] * leaders[1, j] - x)
            x3 = leaders[2, j] - A[i, 2, j] * abs(C[i, 2, j] * leaders[2, j] - x)
            v = (x1 + x2 + x3) / 3.0
            if v < lower[j]:
                v = lower[j]
            elif v > upper[j]:
                v = upper[j]
            out[i, j] = v
    return out


# --- numpy / pure-Python path -------------------------------------------------

advance_py = _advance
fill_py = _fill


def _raw_step_vec(code, x, k, p, full):
    if code == GAUSS:
        with np.errstate(divide="ignore"):
            y = np.where(x == 0.0, 0.0, 1.0 / np.where(x == 0.0, 1.0, x))
        return np.where(x == 0.0, 0.0, y - np.floor(y))
    if code == LOGISTIC:
        return p * x * (1.0 - x)
    if code == CHEBYSHEV:
        return np.cos(k * np.arccos(x))
    if code == ITERATIVE:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(x == 0.0, 0.0, np.sin(p * np.pi / np.where(x == 0.0, 1.0, x)))
    if code == SINGER:
        x2 = x * x
        return p * (7.86 * x - 23.31 * x2 + 28.75 * x2 * x - 13.3 * x2 * x2)
    if code == TENT:
        return np.where(x < 0.7, x / 0.7, (10.0 / 3.0) * (1.0 - x))
    if full:
        return p * x * x * np.sin(np.pi * x)
    return np.sin(np.pi * x)


def _settle_vec(y, prev, lo, hi, fixed_points):
    bad = np.isnan(y) | (y <= lo + DEGENERATE_TOL) | (y >= hi - DEGENERATE_TOL) | (np.abs(y) < DEGENERATE_TOL)
    for fp in fixed_points:
        bad |= np.abs(y - fp) < DEGENERATE_TOL
    if not bad.any():
        return y
    y = y.copy()
    for i in np.flatnonzero(bad):
        v = y[i]
        if v != v:
            v = 0.5 * (lo + hi)
        v = _fold(float(v) + KICK, lo, hi)
        if v == prev[i]:
            v = _fold(v + KICK2, lo, hi)
        y[i] = v
    return y


def orbit_extremes_py(code, xs, k, p, full, fixed_points, steps):
    lo, hi = native_range(code)
    x = np.array(xs, dtype=np.float64)
    mins = np.full(x.shape, np.inf)
    maxs = np.full(x.shape, -np.inf)
    for _ in range(steps):
        k += 1
        x = _settle_vec(_raw_step_vec(code, x, k, p, full), x, lo, hi, fixed_points)
        np.minimum(mins, x, out=mins)
        np.maximum(maxs, x, out=maxs)
    return x, mins, maxs


def update_positions_py(X, leaders, A, C, lower, upper):
    Xb = X[:, None, :]
    D = np.abs(C * leaders[None, :, :] - Xb)
    Xs = leaders[None, :, :] - A * D
    v = (Xs[:, 0] + Xs[:, 1] + Xs[:, 2]) / 3.0
    return np.clip(v, lower, upper)


# --- numba path ---------------------------------------------------------------

_raw_step_nb = njit(_raw_step)
_fold_nb = njit(_fold)
native_range_nb = njit(native_range)


def _settle_src(y, prev, lo, hi, fixed_points):
    bad = y != y or y <= lo + DEGENERATE_TOL or y >= hi - DEGENERATE_TOL or abs(y) < DEGENERATE_TOL
    if not bad:
        for fp in fixed_points:
            if abs(y - fp) < DEGENERATE_TOL:
                bad = True
                break
    if bad:
        if y != y:
            y = 0.5 * (lo + hi)
        y = _fold_nb(y + KICK, lo, hi)
        if y == prev:
            y = _fold_nb(y + KICK2, lo, hi)
    return y


_settle_nb = njit(_settle_src)


def _advance_src(code, x, k, p, full, fixed_points, lo, hi):
    k += 1
    return _settle_nb(_raw_step_nb(code, x, k, p, full), x, lo, hi, fixed_points), k


def _fill_src(code, x, k, p, full, fixed_points, out):
    lo, hi = native_range_nb(code)
    for i in range(out.shape[0]):
        k += 1
        x = _settle_nb(_raw_step_nb(code, x, k, p, full), x, lo, hi, fixed_points)
        out[i] = x
    return x, k


def _orbit_src(code, xs, k, p, full, fixed_points, steps):
    lo, hi = native_range_nb(code)
    n = xs.shape[0]
    final = np.empty(n)
    mins = np.empty(n)
    maxs = np.empty(n)
    for s in range(n):
        x = xs[s]
        kk = k
        mn = np.inf
        mx = -np.inf
        for _ in range(steps):
            kk += 1
            x = _settle_nb(_raw_step_nb(code, x, kk, p, full), x, lo, hi, fixed_points)
            if x < mn:
                mn = x
            if x > mx:
                mx = x
        final[s] = x
        mins[s] = mn
        maxs[s] = mx
    return final, mins, maxs


advance_nb = njit(_advance_src)
fill_nb = njit(_fill_src)
orbit_extremes_nb = njit(_orbit_src)
update_positions_nb = njit(_update_positions)

if USE_NUMBA:
    advance, fill, orbit_extremes, update_positions = advance_nb, fill_nb, orbit_extremes_nb, update_positions_nb
else:
    advance, fill, orbit_extremes, update_positions = advance_py, fill_py, orbit_extremes_py, update_positions_py
