"""Unitary rational functions approximating exp(i*omega*x) on [-1, 1].

Two representations are provided:

* :class:`UnitaryBarycentric` -- barycentric form with real support nodes and
  real *rotated* weights ``v``. The complex weights ``w_j = v_j exp(-i omega s_j / 2)``
  make the numerator weights the complex conjugates of the denominator weights,
  so ``|r(ix)| = 1`` holds to machine precision for real ``x``.
* :class:`UnitaryPoleForm` -- poles ``s_j`` and phase ``theta`` with
  ``r(z) = (-1)^m e^{i theta} prod (z + conj(s_j)) / (z - s_j)``.

All approximants are callables ``r(x) -> r(ix)`` for real ``x``.
"""

from dataclasses import dataclass, field
import warnings

import numpy as np
import scipy.linalg

from .errors import (
    BranchWrapWarning,
    CoincidentNodeError,
    DegenerateNullSpaceError,
    DegeneratePoleError,
    IntervalMismatchError,
    PoleHitError,
    SpuriousPoleError,
    UniexpError,
)

SPURIOUS_POLE_TOL = 1e-13
INFINITE_EIGENVALUE = 1e12


def principal_half_angle(im, re):
    """Return ``arctan(im / re)`` in [-pi/2, pi/2], robust for ``re`` in {0, inf}."""
    return np.arctan2(np.where(re < 0, -im, im), np.abs(re))


class UnitaryApproximant:
    """Base class for callables ``x -> r(ix)`` that are unimodular on the real line.

    Subclasses set ``n`` and ``omega`` and implement ``__call__``.
    """

    n: int
    omega: float

    def __call__(self, x):
        raise NotImplementedError

    def phase_error(self, x):
        """Principal phase error ``arg(r(ix) e^{-i omega x})`` in (-pi, pi]."""
        x = np.asarray(x, dtype=float)
        return np.angle(self(x) * np.exp(-1j * self.omega * x))

    def error(self, x):
        """Pointwise error ``|r(ix) - e^{i omega x}|`` computed as ``2|sin(delta/2)|``."""
        return 2.0 * np.abs(np.sin(self.phase_error(x) / 2))

    def poles(self):
        raise NotImplementedError


def _as_real_vector(a, name):
    a = np.array(a, dtype=float).ravel()
    if not np.all(np.isfinite(a)):
        raise UniexpError(f"{name} must be finite")
    return a


class UnitaryBarycentric(UnitaryApproximant):
    """Degree (n, n) unitary rational function in rotated barycentric form.

    Args:
        omega: target frequency.
        support_nodes: n+1 strictly increasing reals in [-1, 1].
        rotated_weights: n+1 reals, not all zero. Stored normalized to unit
            Euclidean norm with the first nonzero entry positive.
    """

    def __init__(self, omega, support_nodes, rotated_weights):
        s = _as_real_vector(support_nodes, "support_nodes")
        v = _as_real_vector(rotated_weights, "rotated_weights")
        if len(s) == 0 or len(s) != len(v):
            raise UniexpError("support_nodes and rotated_weights need equal, nonzero length")
        if np.any(np.diff(s) <= 0):
            raise CoincidentNodeError("support nodes must be strictly increasing")
        if s[0] < -1 or s[-1] > 1:
            raise UniexpError("support nodes must lie in [-1, 1]")
        nrm = np.linalg.norm(v)
        if nrm == 0:
            raise UniexpError("rotated weights must not all vanish")
        v = v / nrm
        if v[np.flatnonzero(v)[0]] < 0:
            v = -v
        s.flags.writeable = False
        v.flags.writeable = False
        self.omega = float(omega)
        self.support_nodes = s
        self.rotated_weights = v
        self.n = len(s) - 1

    def __repr__(self):
        return f"UnitaryBarycentric(n={self.n}, omega={self.omega!r})"

    @property
    def weights(self):
        """Complex denominator weights ``v_j exp(-i omega s_j / 2)``."""
        return derived_weights(self)

    def _rotated_sums(self, x):
        # S(x) = D(x) e^{i omega x / 2} = sum v_j e^{i omega d_j / 2} / d_j, d_j = x - s_j
        x = np.asarray(x, dtype=float)
        d = x[..., None] - self.support_nodes
        half = 0.5 * self.omega
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            im = (half * np.sinc(half * d / np.pi)) @ self.rotated_weights
            re = (np.cos(half * d) / d) @ self.rotated_weights
            hit = ~np.isfinite(1.0 / d)
        if hit.any():
            # exact support-node hits: phase error is zero there
            rows = hit.any(axis=-1)
            re = np.where(rows, np.inf, re)
            im = np.where(rows, 0.0, im)
        return im, re

    def phase_error(self, x):
        """Principal phase error delta(x) = -2 arg S(x), in (-pi, pi].

        Evaluated from the real rotated sums, which avoids the cancellation of
        forming ``r(ix) e^{-i omega x}`` in complex arithmetic.
        """
        im, re = self._rotated_sums(x)
        delta = -2.0 * principal_half_angle(im, re)
        return np.where(delta == -np.pi, np.pi, delta)

    def __call__(self, x):
        """Evaluate ``r(ix)`` for real ``x`` (scalar or array)."""
        x = np.asarray(x, dtype=float)
        w = self.weights
        d = x[..., None] - self.support_nodes
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            c = 1.0 / d
            den = c @ w
            num = c @ w.conj()
            r = num / den
        # exact hits, and distances so small that 1/d overflows
        hit = ~np.isfinite(c)
        if hit.any():
            idx = np.argmax(hit, axis=-1)
            r = np.where(hit.any(axis=-1), np.exp(1j * self.omega * self.support_nodes[idx]), r)
        return r

    def at(self, z):
        """Evaluate the rational function at complex ``z`` (not only the imaginary axis)."""
        x = -1j * np.asarray(z, dtype=complex)
        w = self.weights
        d = x[..., None] - self.support_nodes
        with np.errstate(divide="ignore", invalid="ignore"):
            c = 1.0 / d
            return (c @ w.conj()) / (c @ w)

    def poles(self):
        return poles(self)

    def scaled(self, factor):
        """Same function with the rotated weights multiplied by ``factor``."""
        return UnitaryBarycentric(self.omega, self.support_nodes, factor * self.rotated_weights)


def derived_weights(b):
    """Complex weights ``w_j = v_j exp(-i omega s_j / 2)``."""
    return b.rotated_weights * np.exp(-0.5j * b.omega * b.support_nodes)


def eval_barycentric(b, x):
    """Evaluate ``b`` at a scalar real ``x`` with the spurious-pole guard.

    Raises:
        SpuriousPoleError: if ``|D(x)|`` is below ``1e-13 * sum |w_j| / |x - s_j|``.
    """
    x = float(x)
    d = x - b.support_nodes
    if np.any(d == 0):
        return complex(b(x))
    w = b.weights
    den = np.sum(w / d)
    scale = np.sum(np.abs(w) / np.abs(d))
    if abs(den) < SPURIOUS_POLE_TOL * scale:
        raise SpuriousPoleError(f"denominator collapses at x={x!r}")
    return complex(np.sum(w.conj() / d) / den)


def phase_error(r, x):
    """Principal phase error of ``r`` at ``x``. Works for any :class:`UnitaryApproximant`."""
    return r.phase_error(x)


def scan_phase_error(r, xs):
    """Phase error on an ascending grid, warning when consecutive samples wrap."""
    delta = r.phase_error(xs)
    if np.any(np.abs(np.diff(delta)) > np.pi):
        warnings.warn("phase error wraps around +-pi on the sample grid", BranchWrapWarning,
                      stacklevel=2)
    return PhaseCurve(np.asarray(xs, dtype=float), delta)


@dataclass(frozen=True)
class PhaseCurve:
    xs: np.ndarray
    delta: np.ndarray


def poles(b):
    """Finite z-plane poles of a barycentric approximant.

    The zeros ``lambda`` of ``D(x) = sum w_j / (x - s_j)`` are generalized
    eigenvalues of the arrowhead pencil; the z-plane poles are ``i * lambda``.

    Raises:
        DegenerateNullSpaceError: if fewer finite eigenvalues are found than the
            degree implied by the leading coefficient ``sum w_j``.
    """
    n = b.n
    if n == 0:
        return np.empty(0, dtype=complex)
    w = b.weights
    m = n + 2
    E = np.zeros((m, m), dtype=complex)
    E[0, 1:] = w
    E[1:, 0] = 1.0
    E[1:, 1:] = np.diag(b.support_nodes)
    B = np.eye(m)
    B[0, 0] = 0.0
    lam = scipy.linalg.eigvals(E, B)
    lam = lam[np.isfinite(lam) & (np.abs(lam) < INFINITE_EIGENVALUE)]
    lead = abs(np.sum(w))
    degree = n if lead > 1e-14 * np.sum(np.abs(w)) else n - 1
    if len(lam) > n:
        lam = lam[np.argsort(np.abs(lam))[:n]]
    if len(lam) < degree:
        raise DegenerateNullSpaceError(
            f"found {len(lam)} finite poles, expected {degree}")
    z = 1j * lam
    return z[np.lexsort((z.real, z.imag))]


@dataclass(frozen=True)
class UnitaryPoleForm:
    """``r(z) = (-1)^m e^{i theta} prod_j (z + conj(s_j)) / (z - s_j)``."""

    poles: np.ndarray
    theta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "poles", np.asarray(self.poles, dtype=complex).ravel())
        object.__setattr__(self, "theta", float(self.theta))

    @property
    def m(self):
        return len(self.poles)

    def __call__(self, z):
        return eval_pole_form(self, z)

    def phase_function(self, x):
        return phase_function(self, x)

    def is_irreducible(self, tol=1e-12):
        s = self.poles
        if len(s) == 0:
            return True
        gap = np.abs(s.conj()[:, None] + s[None, :])
        return bool(gap.min() > tol * max(1.0, np.abs(s).max()))

    @classmethod
    def from_barycentric(cls, b):
        """Pole form of ``b`` with theta fixed so that ``e^{i g(0)} = r(0)``."""
        s = poles(b)
        r0 = complex(b(0.0))
        factor = np.prod(s.conj() / s) if len(s) else 1.0
        theta = float(np.angle(r0 / factor))
        if theta == -np.pi:
            theta = np.pi
        return cls(s, theta)


def eval_pole_form(p, z, tol=1e-14):
    """Evaluate the pole form at complex ``z``.

    Raises:
        PoleHitError: if ``z`` is within ``tol`` of a pole.
    """
    z = np.asarray(z, dtype=complex)
    s = p.poles
    out = np.full(z.shape, (-1.0) ** len(s) * np.exp(1j * p.theta), dtype=complex)
    if len(s) == 0:
        return out if out.shape else complex(out)
    d = z[..., None] - s
    if np.any(np.abs(d) <= tol * np.maximum(1.0, np.abs(s))):
        raise PoleHitError("evaluation point coincides with a pole")
    out = out * np.prod((z[..., None] + s.conj()) / d, axis=-1)
    return out if out.shape else complex(out)


def phase_function(p, x):
    """Continuous phase ``g(x) = theta + 2 sum arctan((x - mu_j) / xi_j)``.

    Raises:
        DegeneratePoleError: if a pole has zero real part.
    """
    x = np.asarray(x, dtype=float)
    xi, mu = p.poles.real, p.poles.imag
    if np.any(xi == 0):
        raise DegeneratePoleError("pole on the imaginary axis")
    g = p.theta + 2.0 * np.arctan((x[..., None] - mu) / xi).sum(axis=-1)
    return g if g.shape else float(g)


@dataclass(frozen=True)
class IntervalTransform:
    """``r~(iy) = e^{i gamma} r(i (y - gamma) / omega)`` approximating ``e^{iy}`` on [a, b]."""

    base: UnitaryApproximant
    gamma: float
    scale: float
    prefactor: complex

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        return self.prefactor * self.base((y - self.gamma) * self.scale)

    def to_unit(self, y):
        """Map ``y`` in [a, b] to ``x`` in [-1, 1]."""
        return (np.asarray(y, dtype=float) - self.gamma) * self.scale


def transform_to_interval(b, a, bnd, rtol=1e-12):
    """Reuse an approximant of ``e^{i omega x}`` on [-1, 1] for ``e^{iy}`` on [a, bnd].

    Raises:
        IntervalMismatchError: unless ``omega == (bnd - a) / 2`` to ``rtol``.
    """
    if not a < bnd:
        raise UniexpError("need a < bnd")
    half = 0.5 * (bnd - a)
    if abs(b.omega - half) > rtol * max(1.0, half):
        raise IntervalMismatchError(f"omega={b.omega} but (bnd - a)/2 = {half}")
    gamma = 0.5 * (a + bnd)
    return IntervalTransform(b, gamma, 1.0 / b.omega, complex(np.exp(1j * gamma)))


@dataclass(frozen=True)
class StructuralReport:
    unitarity_defect: float
    symmetry_defect: float
    stability_ok: bool
    irreducible_ok: bool
    poles: np.ndarray = field(repr=False, default=None)

    @property
    def ok(self):
        return self.stability_ok and self.irreducible_ok


def structural_checks(r, grid_size=10000, pole_tol=1e-10):
    """Unitarity, symmetry, stability and irreducibility of an approximant.

    Defects are maxima over a uniform grid of ``grid_size`` points on [-1, 1].
    Stability means every finite pole has positive real part.
    """
    if grid_size < 2:
        raise UniexpError("grid_size must be at least 2")
    x = np.linspace(-1.0, 1.0, grid_size)
    rx = r(x)
    rmx = r(-x)
    unitarity = float(np.max(np.abs(np.abs(rx) - 1.0)))
    symmetry = float(np.max(np.abs(rmx - rx.conj())))
    s = r.poles()
    stable = bool(np.all(s.real > 0))
    if len(s):
        gap = np.abs(s.conj()[:, None] + s[None, :]).min()
        irreducible = bool(gap > pole_tol * max(1.0, np.abs(s).max()))
    else:
        irreducible = True
    return StructuralReport(unitarity, symmetry, stable, irreducible, s)
