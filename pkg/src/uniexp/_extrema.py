"""Vectorized golden-section search for per-interval maxima."""

import numpy as np

INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def golden_max(f, a, b, tol=1e-12):
    """Maximize ``f`` on each interval ``[a_k, b_k]`` simultaneously.

    ``f`` maps an array of abscissae to an array of values. Endpoints are not
    evaluated. Returns ``(x, f(x))`` arrays.
    """
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    width = np.max(b - a) if a.size else 0.0
    if width <= 0:
        x = 0.5 * (a + b)
        return x, f(x)
    steps = max(1, int(np.ceil(np.log(tol / width) / np.log(INVPHI))))
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(steps):
        left = fc > fd
        # left: keep [a, d], old c becomes new d
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        c_new = np.where(left, b - INVPHI * (b - a), d)
        d_new = np.where(left, c, a + INVPHI * (b - a))
        probe = np.where(left, c_new, d_new)
        fp = f(probe)
        fc, fd = np.where(left, fp, fd), np.where(left, fc, fp)
        c, d = c_new, d_new
    take_c = fc >= fd
    return np.where(take_c, c, d), np.where(take_c, fc, fd)


def interval_extrema(f, breakpoints, prescan=32, tol=1e-12, include_ends=True):
    """Maximum of ``f`` on every interval ``[breakpoints[k], breakpoints[k+1]]``.

    Each interval is first sampled at ``prescan`` uniform points (endpoints
    included); golden-section search then refines the bracket around the best
    sample. With ``include_ends`` the interval endpoints compete as candidates.

    Returns ``(x, f(x))`` arrays of length ``len(breakpoints) - 1``.
    """
    bp = np.asarray(breakpoints, dtype=float)
    lo, hi = bp[:-1], bp[1:]
    t = np.linspace(0.0, 1.0, prescan)
    grid = lo[:, None] + (hi - lo)[:, None] * t[None, :]
    vals = f(grid.ravel()).reshape(grid.shape)
    if not include_ends:
        vals[:, 0] = vals[:, -1] = -np.inf
    k = np.argmax(vals, axis=1)
    rows = np.arange(len(lo))
    a = grid[rows, np.maximum(k - 1, 0)]
    b = grid[rows, np.minimum(k + 1, prescan - 1)]
    x, fx = golden_max(f, a, b, tol)
    best_sample = vals[rows, k]
    use_sample = best_sample > fx
    return np.where(use_sample, grid[rows, k], x), np.where(use_sample, best_sample, fx)
