"""Diagonal Pade approximants to e^z, error bound and estimate, and the
quotient-of-polynomials baseline."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import math

import numpy as np
from numpy.polynomial import chebyshev as C
from numpy.polynomial import polynomial as P
import scipy.linalg

from .core import UnitaryApproximant, principal_half_angle
from .errors import PoleHitError, UniexpError


def pade_denominator(n):
    """Coefficients (ascending) of the (n, n)-Pade denominator, constant term 1.

    ``c_k = (-1)^k (2n-k)! n! / ((2n)! k! (n-k)!)``, evaluated through log-gamma.
    """
    if n < 0:
        raise UniexpError("degree must be non-negative")
    k = np.arange(n + 1)
    lg = np.vectorize(math.lgamma)
    logc = lg(2 * n - k + 1) + math.lgamma(n + 1) - math.lgamma(2 * n + 1) - lg(k + 1) - lg(n - k + 1)
    return (-1.0) ** k * np.exp(logc)


@dataclass(frozen=True)
class PadeApproximant:
    """``r(z) = q(-z) / q(z)`` with the real Pade denominator ``q``."""

    n: int

    @property
    def denominator_coefficients(self):
        return pade_denominator(self.n)

    def __call__(self, z):
        return pade_eval(self.n, z)

    def poles(self):
        return pade_poles(self.n)

    def scaled(self, omega):
        """Approximant ``x -> r(i omega x)`` of ``e^{i omega x}``."""
        return ScaledPade(self.n, omega)


def _horner(c, z):
    out = np.zeros_like(z, dtype=complex)
    for coef in c[::-1]:
        out = out * z + coef
    return out


def pade_eval(n, z, tol=1e-14):
    """Evaluate the (n, n)-Pade approximant at complex ``z``.

    Raises:
        PoleHitError: if ``|q(z)|`` vanishes relative to ``|q(-z)|``.
    """
    c = pade_denominator(n)
    z = np.asarray(z, dtype=complex)
    den = _horner(c, z)
    num = _horner(c, -z)
    if np.any(np.abs(den) <= tol * np.abs(num)):
        raise PoleHitError("evaluation point is a Pade pole")
    out = num / den
    return out if out.shape else complex(out)


def pade_poles(n):
    """Roots of the Pade denominator (eigenvalues of its balanced companion matrix)."""
    if n == 0:
        return np.empty(0, dtype=complex)
    c = pade_denominator(n)
    lam = scipy.linalg.eigvals(P.polycompanion(c))
    return lam[np.lexsort((lam.real, lam.imag))]


class ScaledPade(UnitaryApproximant):
    """``x -> r_pade(i omega x)``."""

    def __init__(self, n, omega):
        self.n = int(n)
        self.omega = float(omega)
        self._c = pade_denominator(self.n)

    def __repr__(self):
        return f"ScaledPade(n={self.n}, omega={self.omega!r})"

    def __call__(self, x):
        z = 1j * self.omega * np.asarray(x, dtype=float)
        return _horner(self._c, -z) / _horner(self._c, z)

    def phase_error(self, x):
        # real q: r(i omega x) e^{-i omega x} = conj(Q)/Q with Q = q(i omega x) e^{i omega x / 2}
        x = np.asarray(x, dtype=float)
        y = self.omega * x
        Q = _horner(self._c, 1j * y) * np.exp(0.5j * y)
        im = Q.imag
        small = np.abs(y) <= series_radius(self.n)
        if np.any(small):
            # Im Q is tiny there and suffers cancellation; use its exact series instead
            im = np.where(small, _odd_series_eval(self.n, np.where(small, y, 0.0)), im)
        delta = -2.0 * principal_half_angle(im, Q.real)
        return np.where(delta == -np.pi, np.pi, delta)

    def poles(self):
        return pade_poles(self.n) / self.omega


SERIES_TERMS = 24


def series_radius(n):
    # measured crossover: below it the series beats the direct formula
    return n + 2.0


@lru_cache(maxsize=None)
def _odd_series(n):
    """Coefficients of ``Im(q(iy) e^{iy/2}) = sum_k a_k y^k`` for odd k >= 2n+1.

    ``F(z) = q(z) e^{z/2}`` satisfies ``F(-z) - F(z) = O(z^{2n+1})`` because
    ``q(-z)/q(z) - e^z = O(z^{2n+1})``, so all lower odd coefficients vanish.
    They are formed in exact rational arithmetic and rounded once.
    """
    c = [Fraction(math.factorial(2 * n - j) * math.factorial(n),
                  math.factorial(2 * n) * math.factorial(j) * math.factorial(n - j)) * (-1) ** j
         for j in range(n + 1)]
    ks = range(2 * n + 1, 2 * n + 1 + 2 * SERIES_TERMS, 2)
    out = []
    for k in ks:
        f = sum(c[j] / (2 ** (k - j) * math.factorial(k - j)) for j in range(min(n, k) + 1))
        out.append(float(f * (-1) ** ((k - 1) // 2)))
    return np.array(list(ks)), np.array(out)


def _odd_series_eval(n, y):
    ks, a = _odd_series(n)
    y2 = y * y
    acc = np.zeros_like(y)
    for coef in a[::-1]:
        acc = acc * y2 + coef
    return acc * y ** ks[0]


def pade_barycentric(n, omega, support):
    """Scaled Pade approximant in rotated barycentric form on ``n+1`` support nodes.

    With ``Q(x) = q(i omega x) e^{i omega x / 2}`` and ``l(x) = prod (x - s_j)``
    the partial fractions of ``q(i omega x) / l(x)`` give ``v_j = Q(s_j) / l'(s_j)``.
    ``Q`` is real up to the phase error, so the imaginary part is dropped; the
    result is exactly unitary and agrees with the Pade approximant to within
    its phase error.
    """
    from .core import UnitaryBarycentric

    s = np.asarray(support, dtype=float)
    if len(s) != n + 1:
        raise UniexpError("need n+1 support nodes")
    Q = _horner(pade_denominator(n), 1j * omega * s) * np.exp(0.5j * omega * s)
    dl = np.array([np.prod(sj - np.delete(s, j)) for j, sj in enumerate(s)])
    return UnitaryBarycentric(omega, s, (Q / dl).real)


def pade_error_bound(n, omega):
    """``(n!)^2 omega^(2n+1) / ((2n)! (2n+1)!)``."""
    if not omega > 0:
        raise UniexpError("omega must be positive")
    return math.exp(2 * math.lgamma(n + 1) + (2 * n + 1) * math.log(omega)
                    - math.lgamma(2 * n + 1) - math.lgamma(2 * n + 2))


def best_error_estimate(n, omega):
    """Leading-order error of the unitary best approximation,
    ``2 (n!)^2 / ((2n)! (2n+1)!) (omega/2)^(2n+1)``."""
    return 2.0 * pade_error_bound(n, 0.5 * omega)


def superlinear_thresholds(n):
    """Frequencies below which super-linear convergence is predicted by the
    Pade bound and by the best-approximation estimate, respectively."""
    base = 4.0 / math.e * (n + 0.5)
    return base, 2.0 * base


class ChebQuotient(UnitaryApproximant):
    """``p^dag / p`` where ``p(ix)`` is a degree-n polynomial fit of ``e^{-i omega x / 2}``.

    ``coefficients`` are Chebyshev coefficients of ``P(x) = p(ix)``.
    """

    def __init__(self, n, omega, coefficients):
        self.n = int(n)
        self.omega = float(omega)
        self.coefficients = np.asarray(coefficients, dtype=complex)

    def __repr__(self):
        return f"ChebQuotient(n={self.n}, omega={self.omega!r})"

    def __call__(self, x):
        p = C.chebval(np.asarray(x, dtype=float), self.coefficients)
        return p.conj() / p

    def phase_error(self, x):
        x = np.asarray(x, dtype=float)
        Q = C.chebval(x, self.coefficients) * np.exp(0.5j * self.omega * x)
        delta = -2.0 * principal_half_angle(Q.imag, Q.real)
        return np.where(delta == -np.pi, np.pi, delta)

    def poles(self):
        c = np.trim_zeros(self.coefficients, "b")
        if len(c) <= 1:
            return np.empty(0, dtype=complex)
        z = 1j * C.chebroots(c)
        return z[np.lexsort((z.real, z.imag))]


def cheb_quotient_baseline(n, omega, oversampling=64):
    """Baseline built from a least-squares Chebyshev fit of ``e^{-i omega x / 2}``
    on ``oversampling * (n+1)`` Chebyshev points."""
    if not omega > 0:
        raise UniexpError("omega must be positive")
    m = oversampling * (n + 1)
    x = np.cos((2 * np.arange(1, m + 1) - 1) * np.pi / (2 * m))
    V = C.chebvander(x, n)
    y = np.exp(-0.5j * omega * x)
    coef, *_ = np.linalg.lstsq(V.astype(complex), y, rcond=None)
    return ChebQuotient(n, omega, coef)
