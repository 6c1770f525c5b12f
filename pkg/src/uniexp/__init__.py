"""Unitary rational approximation of exp(i omega x) on [-1, 1]."""

from .analysis import (
    asymptotic_diagnostics,
    equioscillation_report,
    error_curve,
    phase_zeros,
    sup_error,
)
from .brasil import BestApproximation, SolverOptions, best_approx, sweep
from .core import (
    UnitaryBarycentric,
    UnitaryPoleForm,
    structural_checks,
    transform_to_interval,
)
from .errors import *  # noqa: F401,F403
from .interp import chebyshev_nodes, interpolate_chebyshev, interpolate_unitary
from .lawson import LawsonOptions, aaa_lawson_cheb
from .pade import (
    PadeApproximant,
    best_error_estimate,
    cheb_quotient_baseline,
    pade_error_bound,
    pade_poles,
    superlinear_thresholds,
)

__version__ = "0.1.0"
