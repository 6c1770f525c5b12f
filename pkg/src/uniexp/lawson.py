"""Weighted least-squares (Lawson) unitary approximation with fixed Chebyshev
support nodes."""

from dataclasses import dataclass

import numpy as np

from .brasil import check_frequency
from .core import UnitaryBarycentric
from .errors import UniexpError
from .interp import chebyshev_nodes, null_vector

WEIGHT_FLOOR = 1e-30


@dataclass(frozen=True)
class LawsonOptions:
    grid_size: int = 2000
    iterations: int = 50
    stagnation_tol: float = 1e-3


@dataclass(frozen=True)
class LawsonInfo:
    sup_errors: np.ndarray  # grid sup error of every iterate
    weights: list           # Lawson weights used to build every iterate
    best_iteration: int


def _weighted_fit(omega, support, test, A, gamma):
    v, _ = null_vector(np.sqrt(gamma)[:, None] * A, check=False)
    return UnitaryBarycentric(omega, support, v)


def aaa_lawson_cheb(n, omega, opts=None, info=False):
    """Lawson iteration for the rotated Loewner least-squares problem.

    The n+1 support nodes are the Chebyshev points; rows of the rotated
    Loewner matrix over a Chebyshev test grid are scaled by the square roots
    of the Lawson weights, which are multiplied by the pointwise error after
    each step and renormalized to sum 1. The iteration stops after
    ``opts.iterations`` steps or when the sup error changes by less than
    ``opts.stagnation_tol`` relatively.

    Returns:
        The iterate with the smallest grid sup error, and a
        :class:`LawsonInfo` if ``info`` is set.
    """
    opts = opts or LawsonOptions()
    check_frequency(n, omega)
    if opts.grid_size <= 2 * n + 2:
        raise UniexpError("grid_size must exceed 2n+2")
    support = chebyshev_nodes(n + 1)
    test = chebyshev_nodes(opts.grid_size)
    test = test[np.min(np.abs(test[:, None] - support[None, :]), axis=1) > 0]
    d = test[:, None] - support[None, :]
    A = 0.5 * omega * np.sinc(0.5 * omega * d / np.pi)

    gamma = np.full(len(test), 1.0 / len(test))
    best, best_err, best_it = None, np.inf, 0
    errs, weights = [], []
    for it in range(max(1, opts.iterations)):
        r = _weighted_fit(omega, support, test, A, gamma)
        res = r.error(test)
        err = float(res.max())
        errs.append(err)
        weights.append(gamma)
        if err < best_err:
            best, best_err, best_it = r, err, it
        if err == 0.0:
            break
        if it > 0 and abs(errs[-2] - err) <= opts.stagnation_tol * err:
            break
        gamma = np.maximum(gamma * res / np.dot(gamma, res), WEIGHT_FLOOR)
        gamma = gamma / gamma.sum()
    if info:
        return best, LawsonInfo(np.array(errs), weights, best_it)
    return best
