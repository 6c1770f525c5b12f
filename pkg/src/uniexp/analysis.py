"""Sup-error measurement, phase-error zeros and extrema, error curves and
limit diagnostics for unitary approximants of e^{i omega x}."""

from dataclasses import dataclass
import warnings

import numpy as np
from scipy.optimize import brentq

from ._extrema import golden_max, interval_extrema
from .errors import UniexpError, ZeroCountWarning
from .interp import chebyshev_nodes
from .pade import pade_poles

ZERO_TOL = 1e-13


def phase_error_of(r, omega, x):
    """Phase error of ``r`` against ``e^{i omega x}``.

    Uses the approximant's own accurate formula when it was built for the same
    frequency, otherwise falls back to ``arg(r(x) e^{-i omega x})``.
    """
    x = np.asarray(x, dtype=float)
    if getattr(r, "omega", None) == omega and hasattr(r, "phase_error"):
        return r.phase_error(x)
    q = np.asarray(r(x), dtype=complex) * np.exp(-1j * omega * x)
    return np.angle(q)


def error_of(r, omega, x):
    return 2.0 * np.abs(np.sin(0.5 * phase_error_of(r, omega, x)))


def _local_max_indices(vals):
    left = np.concatenate(([True], vals[1:] >= vals[:-1]))
    right = np.concatenate((vals[:-1] >= vals[1:], [True]))
    return np.flatnonzero(left & right)


def sup_error(r, omega, coarse=4096):
    """Maximum of ``|r(ix) - e^{i omega x}|`` over [-1, 1].

    A uniform scan is refined by golden-section search around every local
    maximum of the scan.

    Returns:
        ``(value, argmax)``.
    """
    if coarse < 64:
        raise UniexpError("coarse scan needs at least 64 points")

    def f(x):
        return error_of(r, omega, x)

    xs = np.linspace(-1.0, 1.0, coarse)
    vals = f(xs)
    idx = _local_max_indices(vals)
    a = xs[np.maximum(idx - 1, 0)]
    b = xs[np.minimum(idx + 1, coarse - 1)]
    xr, fr = golden_max(f, a, b)
    k = int(np.argmax(vals))
    best_x, best = xs[k], vals[k]
    j = int(np.argmax(fr))
    if fr[j] > best:
        best_x, best = xr[j], fr[j]
    return float(min(best, 2.0)), float(best_x)


def phase_zeros(r, omega, scan=8192, expected=None):
    """Sign changes of the phase error on [-1, 1], refined to ``1e-13``.

    Jumps across the branch cut at +-pi are not zeros. Warns with
    :class:`ZeroCountWarning` when the count differs from ``expected``
    (default ``2n+1`` if ``r`` has a degree).
    """
    def f(x):
        return phase_error_of(r, omega, x)

    xs = np.linspace(-1.0, 1.0, scan)
    d = f(xs)
    zeros = list(xs[d == 0.0])
    s = np.sign(d)
    flips = np.flatnonzero((s[:-1] * s[1:] < 0) & (np.abs(d[1:] - d[:-1]) < np.pi))
    for k in flips:
        zeros.append(brentq(lambda t: float(f(np.array([t]))[0]), xs[k], xs[k + 1],
                            xtol=ZERO_TOL, rtol=4 * np.finfo(float).eps))
    zeros = np.sort(np.array(zeros, dtype=float))
    if expected is None and hasattr(r, "n"):
        expected = 2 * r.n + 1
    if expected is not None and len(zeros) != expected:
        warnings.warn(f"found {len(zeros)} phase-error zeros, expected {expected}",
                      ZeroCountWarning, stacklevel=2)
    return zeros


@dataclass(frozen=True)
class EquioscillationReport:
    extrema: np.ndarray
    values: np.ndarray
    deviation: float
    alternating: bool
    first_sign_positive: bool
    zeros: np.ndarray

    @property
    def interlaced(self):
        z, e = self.zeros, self.extrema
        return len(e) == len(z) + 1 and bool(np.all(e[:-1] < z) and np.all(z < e[1:]))


def equioscillation_report(r, omega, scan=8192):
    """Locate the extremum of ``|delta|`` between consecutive phase-error zeros."""
    zeros = phase_zeros(r, omega, scan=scan)
    bp = np.concatenate(([-1.0], zeros, [1.0]))
    eta, _ = interval_extrema(lambda x: np.abs(phase_error_of(r, omega, x)), bp)
    vals = phase_error_of(r, omega, eta)
    mags = np.abs(vals)
    deviation = float((mags.max() - mags.min()) / mags.max()) if mags.max() > 0 else 0.0
    s = np.sign(vals)
    alternating = bool(np.all(s != 0) and np.all(s[1:] == -s[:-1]))
    return EquioscillationReport(eta, vals, deviation, alternating, bool(vals[0] > 0), zeros)


@dataclass(frozen=True)
class ErrorCurve:
    """Rows ``(x, Re err, Im err, |err|, delta)`` in ascending ``x``."""

    samples: np.ndarray

    @property
    def x(self):
        return self.samples[:, 0]

    @property
    def abs_err(self):
        return self.samples[:, 3]

    @property
    def phase_err(self):
        return self.samples[:, 4]

    def local_maxima(self):
        return count_local_maxima(self.abs_err)


def error_curve(r, omega, m):
    """Error at ``m`` Chebyshev points of [-1, 1].

    The complex error is assembled from the phase error as
    ``e^{i omega x} 2i sin(delta/2) e^{i delta/2}`` to avoid cancellation.
    """
    if m < 2:
        raise UniexpError("need at least two samples")
    x = chebyshev_nodes(m)
    d = phase_error_of(r, omega, x)
    half = np.sin(0.5 * d)
    err = 2j * half * np.exp(1j * (omega * x + 0.5 * d))
    return ErrorCurve(np.column_stack([x, err.real, err.imag, 2.0 * np.abs(half), d]))


def count_local_maxima(vals):
    """Strict local maxima of a sampled curve, endpoints counted against one neighbour."""
    vals = np.asarray(vals, dtype=float)
    if len(vals) < 2:
        return len(vals)
    left = np.concatenate(([True], vals[1:] > vals[:-1]))
    right = np.concatenate((vals[:-1] > vals[1:], [True]))
    return int(np.count_nonzero(left & right))


@dataclass(frozen=True)
class AsymptoticDiagnostics:
    d_cheb: float
    d_pade: float
    d_limit_poles: float
    d_limit_nodes: float


def _by_imag(z):
    z = np.asarray(z, dtype=complex)
    return z[np.lexsort((z.real, z.imag))]


def _match(a, b):
    if len(a) != len(b):
        return float("inf")
    if len(a) == 0:
        return 0.0
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def asymptotic_diagnostics(result):
    """Distances of nodes and poles to their small- and large-frequency limits.

    Sets are matched by sorting (nodes by value, poles by imaginary part).
    """
    n, omega = result.n, result.omega
    nodes = np.sort(result.interpolation_nodes)
    s = _by_imag(result.poles)
    d_cheb = _match(nodes, chebyshev_nodes(2 * n + 1))
    d_pade = _match(_by_imag(omega * s), _by_imag(pade_poles(n)))
    limit_poles = 1j * (-1.0 + 2.0 * np.arange(1, n + 1) / (n + 1))
    d_limit_poles = _match(s, limit_poles)
    d_limit_nodes = _match(nodes, -1.0 + np.arange(1, 2 * n + 2) / (n + 1))
    return AsymptoticDiagnostics(d_cheb, d_pade, d_limit_poles, d_limit_nodes)
