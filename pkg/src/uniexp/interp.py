"""Unitary rational interpolation of exp(i*omega*x) at 2n+1 distinct real nodes."""

from dataclasses import dataclass

import numpy as np

from .core import UnitaryBarycentric
from .errors import CoincidentNodeError, RankDeficiencyError, UniexpError

RANK_TOL = 1e-14
ATTAINABILITY_TOL = 1e-8


def chebyshev_nodes(m):
    """Chebyshev points ``cos((2j-1) pi / (2m))``, j = 1..m, in ascending order."""
    if m < 1:
        raise UniexpError("need at least one node")
    j = np.arange(m, 0, -1)
    tau = np.cos((2 * j - 1) * np.pi / (2 * m))
    if m % 2:
        tau[m // 2] = 0.0
    # enforce exact mirror symmetry
    return 0.5 * (tau - tau[::-1])


def validate_nodes(nodes):
    nodes = np.array(nodes, dtype=float).ravel()
    if len(nodes) % 2 == 0:
        raise UniexpError(f"need an odd number 2n+1 of nodes, got {len(nodes)}")
    if np.any(np.diff(nodes) <= 0):
        raise CoincidentNodeError("nodes must be strictly increasing")
    if nodes[0] < -1 or nodes[-1] > 1:
        raise UniexpError("nodes must lie in [-1, 1]")
    return nodes


def split_support_test(nodes):
    """Even positions become support nodes, odd positions test nodes."""
    nodes = validate_nodes(nodes)
    return nodes[0::2].copy(), nodes[1::2].copy()


def rotated_loewner_matrix(omega, support, test):
    """Real n x (n+1) matrix ``sin(omega (t_k - s_j)/2) / (t_k - s_j)``."""
    support = np.asarray(support, dtype=float)
    test = np.asarray(test, dtype=float)
    d = test[:, None] - support[None, :]
    if np.any(d == 0):
        raise CoincidentNodeError("support and test nodes must be disjoint")
    half = 0.5 * omega
    return half * np.sinc(half * d / np.pi)


def _is_mirrored(x):
    return np.array_equal(x, -x[::-1])


def null_vector(A, check=True):
    """Right singular vector of ``A`` belonging to its smallest singular value.

    Raises:
        RankDeficiencyError: if the two smallest singular values (counting the
            trivial zero of a wide matrix) both vanish relative to the largest.
    """
    rows, cols = A.shape
    if rows == 0:
        v = np.zeros(cols)
        v[0] = 1.0
        return v, np.zeros(0)
    _, sv, vt = np.linalg.svd(A, full_matrices=True)
    if check and cols > rows and sv[0] > 0 and sv[-1] < RANK_TOL * sv[0]:
        raise RankDeficiencyError(
            f"null space dimension > 1 (sigma_min/sigma_max = {sv[-1] / sv[0]:.2e})")
    if check and sv[0] == 0:
        raise RankDeficiencyError("Loewner matrix vanishes")
    return vt[-1], sv


def _symmetrize(v):
    # reverse(v) = +-v for mirrored nodes; project onto the dominant parity
    even, odd = 0.5 * (v + v[::-1]), 0.5 * (v - v[::-1])
    return even if np.linalg.norm(even) >= np.linalg.norm(odd) else odd


@dataclass(frozen=True)
class InterpolationInfo:
    nodes: np.ndarray
    residuals: np.ndarray
    unattainable: np.ndarray
    singular_values: np.ndarray


def interpolate_unitary(omega, nodes, info=False, check_rank=True):
    """Unitary rational interpolant to ``e^{i omega x}`` at 2n+1 nodes.

    Args:
        omega: frequency, > 0.
        nodes: 2n+1 strictly increasing reals in [-1, 1].
        info: also return an :class:`InterpolationInfo` with per-node residuals
            and the unattainable-node mask.
        check_rank: raise when the null space is ambiguous.

    Returns:
        UnitaryBarycentric, or a pair ``(r, info)``.
    """
    if not omega > 0:
        raise UniexpError("omega must be positive")
    nodes = validate_nodes(nodes)
    support, test = nodes[0::2], nodes[1::2]
    A = rotated_loewner_matrix(omega, support, test)
    v, sv = null_vector(A, check=check_rank)
    if len(v) > 1 and _is_mirrored(nodes):
        v = _symmetrize(v)
    r = UnitaryBarycentric(omega, support, v)
    if not info:
        return r
    res = r.error(nodes)
    grid = np.linspace(-1.0, 1.0, 2001)
    sup = float(np.max(r.error(grid)))
    unattainable = res > ATTAINABILITY_TOL * max(1.0, sup)
    return r, InterpolationInfo(nodes, res, unattainable, sv)


def interpolate_chebyshev(n, omega, **kwargs):
    """Interpolant at the 2n+1 Chebyshev nodes."""
    return interpolate_unitary(omega, chebyshev_nodes(2 * n + 1), **kwargs)
