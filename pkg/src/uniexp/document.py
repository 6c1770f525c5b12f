"""JSON documents describing a computed approximant, and their schema."""

import math

import jsonschema
import numpy as np

from . import analysis
from .core import UnitaryBarycentric, structural_checks
from .errors import UniexpError
from .pade import ScaledPade, best_error_estimate, cheb_quotient_baseline, pade_error_bound

SCHEMA_VERSION = "1"
METHODS = ("best", "interp-cheb", "lawson", "pade", "cheb-quotient")
BARYCENTRIC_METHODS = ("best", "interp-cheb", "lawson")

_num = {"type": "number"}
_vec = {"type": "array", "items": _num}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ApproximantDocument",
    "type": "object",
    "required": ["schema_version", "method", "n", "omega", "poles", "max_error",
                 "error_estimate", "pade_bound", "checks"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "method": {"enum": list(METHODS)},
        "n": {"type": "integer", "minimum": 0},
        "omega": {"type": "number", "exclusiveMinimum": 0},
        "support_nodes": _vec,
        "rotated_weights": _vec,
        "interpolation_nodes": _vec,
        "equioscillation_points": _vec,
        "extrema_values": _vec,
        "poles": {
            "type": "object",
            "required": ["re", "im"],
            "properties": {"re": _vec, "im": _vec},
            "additionalProperties": False,
        },
        "max_error": {"type": "number", "minimum": 0, "maximum": 2},
        "error_estimate": _num,
        "pade_bound": _num,
        "iterations": {"type": "integer", "minimum": 0},
        "converged": {"type": "boolean"},
        "deviation": _num,
        "checks": {
            "type": "object",
            "required": ["unitarity_defect", "symmetry_defect", "stability_ok"],
            "properties": {
                "unitarity_defect": _num,
                "symmetry_defect": _num,
                "stability_ok": {"type": "boolean"},
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}


def _floats(a):
    return [float(v) for v in np.asarray(a, dtype=float).ravel()]


def build_document(method, r, n, omega, result=None, iterations=None,
                   interpolation_nodes=None):
    """Assemble a document for approximant ``r``.

    ``result`` is a :class:`~uniexp.brasil.BestApproximation` for ``best``;
    its nodes, extrema and convergence data are included.
    """
    if method not in METHODS:
        raise UniexpError(f"unknown method {method!r}")
    doc = {"schema_version": SCHEMA_VERSION, "method": method, "n": int(n), "omega": float(omega)}
    if isinstance(r, UnitaryBarycentric):
        doc["support_nodes"] = _floats(r.support_nodes)
        doc["rotated_weights"] = _floats(r.rotated_weights)
    if result is not None:
        doc["interpolation_nodes"] = _floats(result.interpolation_nodes)
        doc["equioscillation_points"] = _floats(result.equioscillation_points)
        doc["extrema_values"] = _floats(result.extrema_values)
    elif interpolation_nodes is not None:
        doc["interpolation_nodes"] = _floats(interpolation_nodes)
    rep = structural_checks(r)
    s = rep.poles
    doc["poles"] = {"re": _floats(s.real), "im": _floats(s.imag)}
    doc["max_error"] = result.max_error if result is not None else analysis.sup_error(r, omega)[0]
    doc["error_estimate"] = best_error_estimate(n, omega)
    doc["pade_bound"] = pade_error_bound(n, omega)
    if result is not None:
        doc["iterations"] = int(result.iterations)
        doc["converged"] = bool(result.converged)
        doc["deviation"] = float(result.deviation)
    elif iterations is not None:
        doc["iterations"] = int(iterations)
    doc["checks"] = {
        "unitarity_defect": float(rep.unitarity_defect),
        "symmetry_defect": float(rep.symmetry_defect),
        "stability_ok": bool(rep.stability_ok),
    }
    return {k: v for k, v in doc.items() if v is not None}


def load_approximant(doc):
    """Rebuild the evaluator described by a document."""
    method, n, omega = doc["method"], int(doc["n"]), float(doc["omega"])
    if method in BARYCENTRIC_METHODS:
        return UnitaryBarycentric(omega, doc["support_nodes"], doc["rotated_weights"])
    if method == "pade":
        return ScaledPade(n, omega)
    if method == "cheb-quotient":
        return cheb_quotient_baseline(n, omega)
    raise UniexpError(f"unknown method {method!r}")


def validate_document(doc):
    """Validate against :data:`SCHEMA` and check for non-finite numbers.

    Raises:
        jsonschema.ValidationError, UniexpError
    """
    jsonschema.validate(doc, SCHEMA)

    def walk(v):
        if isinstance(v, float) and not math.isfinite(v):
            raise UniexpError("document contains a non-finite number")
        if isinstance(v, dict):
            for x in v.values():
                walk(x)
        elif isinstance(v, list):
            for x in v:
                walk(x)

    walk(doc)
    n = doc["n"]
    if "support_nodes" in doc and len(doc["support_nodes"]) != n + 1:
        raise UniexpError("support_nodes must have n+1 entries")
    if "rotated_weights" in doc and len(doc["rotated_weights"]) != n + 1:
        raise UniexpError("rotated_weights must have n+1 entries")
    if "interpolation_nodes" in doc and len(doc["interpolation_nodes"]) != 2 * n + 1:
        raise UniexpError("interpolation_nodes must have 2n+1 entries")
    for key in ("equioscillation_points", "extrema_values"):
        if key in doc and len(doc[key]) != 2 * n + 2:
            raise UniexpError(f"{key} must have 2n+2 entries")
