"""Unitary best approximation by successive interval-length adjustment.

The interpolation nodes of a unitary interpolant are moved until its phase
error equioscillates between 2n+2 points, which characterizes the unique best
approximation in the class of degree (n, n) unitary rational functions.
"""

from dataclasses import dataclass, field, replace
import logging
import math

import numpy as np
from scipy.optimize import brentq

from . import analysis
from ._extrema import interval_extrema
from .errors import (
    ConvergenceError,
    InfeasibleFrequencyError,
    RankDeficiencyError,
    SignChangeError,
    UniexpError,
)
from .interp import chebyshev_nodes, interpolate_unitary
from .pade import best_error_estimate, pade_barycentric

log = logging.getLogger(__name__)

NEAR_DEGENERATE_POLE = 1e6
MIN_DAMPING = 1e-6
DAMPING_RECOVERY = 1.25
ROUNDING_SLACK = 1e-14  # absolute noise of a computed phase error
MIRROR_TOL = 1e-14
PRECISION_FLOOR = 1e-15  # best errors below this are not resolvable


@dataclass(frozen=True)
class SolverOptions:
    """Options for :func:`best_approx`.

    ``init`` is ``"chebyshev"``, ``"uniform"`` or an array of 2n+1 warm-start
    nodes; ``None`` picks Chebyshev nodes for omega <= n*pi and uniform nodes
    otherwise.
    """

    eq_tolerance: float = 1e-3
    max_iterations: int = 200
    rescale_exponent: float = 0.5
    damping: float = 1.0
    init: object = None
    extremum_search_tol: float = 1e-12
    prescan: int = 32
    continuation: bool = True

    def __post_init__(self):
        if not self.eq_tolerance > 0:
            raise UniexpError("eq_tolerance must be positive")
        if not self.rescale_exponent > 0:
            raise UniexpError("rescale_exponent must be positive")
        if not 0 < self.damping <= 1:
            raise UniexpError("damping must lie in (0, 1]")
        if self.max_iterations < 1:
            raise UniexpError("max_iterations must be at least 1")


@dataclass(frozen=True)
class BestApproximation:
    approximant: object
    interpolation_nodes: np.ndarray
    equioscillation_points: np.ndarray
    extrema_values: np.ndarray
    max_error: float
    estimate: float
    iterations: int
    converged: bool
    deviation: float
    near_degenerate: bool = False
    history: list = field(default_factory=list, repr=False)

    @property
    def n(self):
        return self.approximant.n

    @property
    def omega(self):
        return self.approximant.omega

    @property
    def poles(self):
        return self.approximant.poles()


def check_frequency(n, omega):
    if n < 0:
        raise UniexpError("degree must be non-negative")
    if not (0 < omega < (n + 1) * np.pi):
        raise InfeasibleFrequencyError(
            f"omega={omega} outside (0, (n+1)pi) = (0, {(n + 1) * np.pi:.6g}); "
            "every unitary function attains the maximal error 2 there")


def continuous_phase_error(r):
    """Phase error of ``r`` on the branch that is continuous in x.

    The principal value wraps at +-pi, which breaks sign tests for iterates
    whose phase error exceeds pi in magnitude. The branch is taken from the
    arctangent sum over the poles, anchored at x = 0; the value itself is
    still the accurate principal one shifted by a multiple of 2 pi.
    """
    try:
        s = np.asarray(r.poles())
    except UniexpError:
        s = np.empty(0, dtype=complex)
    s = s[s.real != 0]
    xi, mu = s.real, s.imag

    def arctan_sum(x):
        return 2.0 * np.arctan((x[..., None] - mu) / xi).sum(axis=-1) - r.omega * x

    shift = float(r.phase_error(np.array([0.0]))[0] - arctan_sum(np.array([0.0]))[0])

    def delta(x):
        x = np.asarray(x, dtype=float)
        d = r.phase_error(x)
        k = np.round((arctan_sum(x) + shift - d) / (2 * np.pi))
        return d + 2 * np.pi * k

    return delta


def phase_error_derivative(r):
    """``delta'(x) = sum_k 2 xi_k / (xi_k^2 + (x - mu_k)^2) - omega`` over poles ``xi_k + i mu_k``."""
    s = np.asarray(r.poles())
    s = s[np.isfinite(s) & (s.real != 0)]
    xi, mu = s.real, s.imag

    def d1(x):
        x = np.asarray(x, dtype=float)
        t = x[..., None] - mu
        return (2.0 * xi / (xi * xi + t * t)).sum(axis=-1) - r.omega

    return d1


def _polish_extrema(r, delta, eta, lo, hi):
    # golden-section search on |delta| is limited by the rounding of delta
    # itself, which for tiny errors leaves a flat plateau; the stationary point
    # is a simple root of delta' and resolves much more sharply. The bracket
    # is widened until delta' changes sign; a root is kept only if |delta|
    # does not drop there.
    try:
        d1 = phase_error_derivative(r)
    except UniexpError:
        return eta
    out = eta.copy()
    mag0 = np.abs(delta(eta))
    for k in range(len(eta)):
        h = 1e-6
        while True:
            a, b = max(lo[k], eta[k] - h), min(hi[k], eta[k] + h)
            fa, fb = d1(np.array([a, b]))
            if fa * fb < 0:
                t = brentq(lambda t: float(d1(np.array([t]))[0]), a, b,
                           xtol=1e-15, rtol=4 * np.finfo(float).eps)
                if abs(delta(np.array([t]))[0]) >= mag0[k] * (1 - 1e-6) - ROUNDING_SLACK:
                    out[k] = t
                break
            if a == lo[k] and b == hi[k]:
                break
            h *= 10.0
    return out


def local_extrema(r, nodes, prescan=32, tol=1e-12, check=True):
    """Signed extrema of the phase error between consecutive nodes.

    The partition is ``[-1, x_1], [x_1, x_2], ..., [x_{2n+1}, 1]``. Each
    inner interval contributes the point of largest ``|delta|``; the outer
    intervals contribute the endpoints -1 and 1.

    Returns:
        ``(eta, delta(eta))`` arrays of length ``len(nodes) + 1``.

    Raises:
        SignChangeError: if ``check`` is set and the extrema do not alternate
            in sign.
    """
    nodes = np.asarray(nodes, dtype=float)
    bp = np.concatenate(([-1.0], nodes, [1.0]))
    delta = continuous_phase_error(r)

    def mag(x):
        return np.abs(delta(x))

    eta, _ = interval_extrema(mag, bp, prescan=prescan, tol=tol)
    # the outer extrema of an equioscillating phase error sit at the endpoints
    eta[0], eta[-1] = -1.0, 1.0
    eta[1:-1] = _polish_extrema(r, delta, eta[1:-1], bp[1:-2], bp[2:-1])
    if np.max(np.abs(nodes + nodes[::-1]), initial=0.0) <= MIRROR_TOL:
        # mirrored nodes give a symmetric r with even |delta|; average the two
        # estimates of each mirrored extremum (they differ only by rounding)
        eta = symmetrize(eta)
    vals = delta(eta)
    signs = np.sign(vals)
    if check and (np.any(signs == 0) or np.any(signs[1:] == signs[:-1])):
        raise SignChangeError("phase error does not alternate across the nodes")
    return eta, vals


def rescale_intervals(nodes, extrema_magnitudes, gamma=1.0):
    """Shrink intervals with large error and grow those with small error.

    Lengths are updated as ``l_k * (mean / eps_k)**gamma`` with the geometric
    mean of the ``eps_k``, then renormalized to total length 2.
    """
    nodes = np.asarray(nodes, dtype=float)
    eps = np.asarray(extrema_magnitudes, dtype=float)
    if np.any(eps <= 0):
        raise UniexpError("zero extremum: the approximant is exact")
    lengths = np.diff(np.concatenate(([-1.0], nodes, [1.0])))
    logeps = np.log(eps)
    factor = np.exp(gamma * (logeps.mean() - logeps))
    lengths = lengths * factor
    lengths *= 2.0 / lengths.sum()
    return -1.0 + np.cumsum(lengths)[:-1]


def symmetrize(nodes):
    nodes = np.asarray(nodes, dtype=float)
    return 0.5 * (nodes - nodes[::-1])


def initial_nodes(n, omega, init=None):
    if init is None:
        init = "chebyshev" if omega <= n * np.pi else "uniform"
    if isinstance(init, str):
        if init == "chebyshev":
            return chebyshev_nodes(2 * n + 1)
        if init == "uniform":
            return symmetrize(-1.0 + np.arange(1, 2 * n + 2) / (n + 1))
        raise UniexpError(f"unknown init {init!r}")
    nodes = np.asarray(init, dtype=float)
    if nodes.shape != (2 * n + 1,):
        raise UniexpError(f"warm start needs {2 * n + 1} nodes")
    return nodes


@dataclass
class _Iterate:
    r: object
    nodes: np.ndarray
    eta: np.ndarray
    vals: np.ndarray

    @property
    def level(self):
        return float(np.max(np.abs(self.vals)))

    @property
    def deviation(self):
        mags = np.abs(self.vals)
        return float((mags.max() - mags.min()) / mags.max())


def _evaluate(omega, nodes, opts):
    r = interpolate_unitary(omega, nodes, check_rank=False)
    eta, vals = local_extrema(r, nodes, opts.prescan, opts.extremum_search_tol)
    return _Iterate(r, nodes, eta, vals)


def _iterate(n, omega, nodes, opts):
    """Run the node adjustment from ``nodes``.

    A step is accepted only if it lowers the deviation; otherwise the
    exponent is halved and the step retried. Accepted steps let the exponent
    recover gradually.

    Returns:
        ``(best iterate or None, iterations, converged, history)``.
    """
    try:
        cur = _evaluate(omega, nodes, opts)
    except (SignChangeError, RankDeficiencyError) as exc:
        log.debug("invalid start for n=%d omega=%g: %s", n, omega, exc)
        return None, 0, False, []
    history = [(cur.level, cur.deviation)]
    damp = opts.damping
    it = 0
    while it < opts.max_iterations:
        if cur.vals[0] > 0 and cur.deviation <= opts.eq_tolerance:
            return cur, it, True, history
        it += 1
        try:
            new_nodes = rescale_intervals(cur.nodes, np.abs(cur.vals),
                                          opts.rescale_exponent * damp)
        except UniexpError:
            return cur, it, True, history
        try:
            nxt = _evaluate(omega, symmetrize(new_nodes), opts)
        except UniexpError:
            nxt = None
        if nxt is None or nxt.deviation >= cur.deviation:
            damp *= 0.5
            if damp < MIN_DAMPING:
                break
            continue
        cur = nxt
        history.append((cur.level, cur.deviation))
        damp = min(opts.damping, DAMPING_RECOVERY * damp)
    return cur, it, False, history


def _finish(n, omega, it_state, iterations, converged, history):
    r = it_state.r
    max_error, _ = analysis.sup_error(r, omega)
    s = r.poles()
    near_degenerate = bool(len(s) and np.abs(s).max() > NEAR_DEGENERATE_POLE)
    return BestApproximation(
        approximant=r,
        interpolation_nodes=np.array(it_state.nodes),
        equioscillation_points=np.array(it_state.eta),
        extrema_values=np.array(it_state.vals),
        max_error=float(max_error),
        estimate=float(best_error_estimate(n, omega)),
        iterations=iterations,
        converged=converged,
        deviation=it_state.deviation,
        near_degenerate=near_degenerate,
        history=history,
    )


def _continuation_path(n, omega):
    # start where Chebyshev nodes are a safe initial guess and step towards omega
    start = min(omega, 0.5 * n * np.pi, 2.0)
    steps = max(2, int(math.ceil(abs(omega - start) / 0.5)) + 1)
    return np.linspace(start, omega, steps)


def best_approx(n, omega, opts=None, raise_on_failure=False):
    """Unitary best approximation of degree (n, n) to ``e^{i omega x}`` on [-1, 1].

    Args:
        n: degree.
        omega: frequency in (0, (n+1) pi).
        opts: :class:`SolverOptions`.
        raise_on_failure: raise :class:`ConvergenceError` instead of returning
            a result with ``converged=False``.

    Raises:
        InfeasibleFrequencyError: for omega outside (0, (n+1) pi).
    """
    opts = opts or SolverOptions()
    check_frequency(n, omega)
    if n == 0:
        r = interpolate_unitary(omega, [0.0])
        it_state = _Iterate(r, np.array([0.0]), np.array([-1.0, 1.0]),
                            r.phase_error(np.array([-1.0, 1.0])))
        return _finish(n, omega, it_state, 0, True, [])

    best, iterations, converged, history = None, 0, False, []

    def consider(cand, its, ok, hist):
        nonlocal best, iterations, converged, history
        iterations += its
        if cand is not None and (best is None or ok and not converged
                                 or ok == converged and cand.deviation < best.deviation):
            best, converged, history = cand, ok, hist

    for start in _starts(n, omega, opts.init):
        consider(*_iterate(n, omega, start, opts))
        if converged:
            break
    if not converged and opts.continuation and not _is_warm(opts.init):
        log.info("cold start failed for n=%d omega=%g, trying continuation", n, omega)
        nodes, cand = chebyshev_nodes(2 * n + 1), None
        for w in _continuation_path(n, omega):
            cand, its, ok, hist = _iterate(n, w, nodes, opts)
            if cand is None:
                break
            iterations += its
            nodes = cand.nodes
        if cand is not None:
            consider(cand, 0, ok, hist)
    if not converged and best_error_estimate(n, omega) < PRECISION_FLOOR:
        # the best error is below rounding level, so there is no usable sign
        # pattern and interpolants are fixed by rounding. Report the scaled
        # Pade approximant, the small-frequency limit, whose error is below
        # rounding level too.
        nodes = chebyshev_nodes(2 * n + 1)
        r = pade_barycentric(n, omega, chebyshev_nodes(n + 1))
        eta, vals = local_extrema(r, nodes, opts.prescan, opts.extremum_search_tol, check=False)
        best = _Iterate(r, nodes, eta, vals)
    elif best is None:
        nodes = initial_nodes(n, omega, opts.init)
        r = interpolate_unitary(omega, nodes, check_rank=False)
        eta, vals = local_extrema(r, nodes, opts.prescan, opts.extremum_search_tol, check=False)
        best = _Iterate(r, nodes, eta, vals)
    result = _finish(n, omega, best, iterations, converged, history)
    if not converged and raise_on_failure:
        raise ConvergenceError(
            f"no equioscillation after {iterations} iterations "
            f"(deviation {result.deviation:.3g})", result)
    return result


def _starts(n, omega, init):
    if _is_warm(init) or init is not None:
        return [initial_nodes(n, omega, init)]
    first = initial_nodes(n, omega, None)
    other = "uniform" if omega <= n * np.pi else "chebyshev"
    return [first, initial_nodes(n, omega, other)]


def _is_warm(init):
    return init is not None and not isinstance(init, str)


def sweep(n, omegas, opts=None, warm_start=True):
    """Solve for ascending ``omegas``, warm-starting each solve from the previous nodes.

    Failed solves are recorded as ``None`` and the sweep continues.
    """
    opts = opts or SolverOptions()
    out = []
    prev = None
    for w in omegas:
        o = opts if prev is None or not warm_start else replace(opts, init=prev)
        try:
            res = best_approx(n, w, o)
        except UniexpError as exc:
            log.warning("sweep: n=%d omega=%g failed: %s", n, w, exc)
            out.append(None)
            continue
        if warm_start and not res.converged and prev is not None:
            cold = best_approx(n, w, opts)
            if cold.converged or cold.deviation < res.deviation:
                res = cold
        out.append(res)
        if res.converged:
            prev = res.interpolation_nodes
    return out
