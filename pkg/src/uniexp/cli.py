"""Command-line front end.

Exit status: 0 success, 1 failed ``check``, 2 solver did not converge,
3 frequency outside (0, (n+1) pi), 64 usage error, 74 I/O error.
"""

import argparse
from concurrent.futures import ThreadPoolExecutor
import json
import logging
import os
import sys

import jsonschema
import numpy as np

from . import analysis
from .brasil import SolverOptions, best_approx, check_frequency, sweep
from .core import structural_checks
from .document import METHODS, build_document, load_approximant, validate_document
from .errors import InfeasibleFrequencyError, UniexpError
from .interp import chebyshev_nodes, interpolate_chebyshev
from .lawson import LawsonOptions, aaa_lawson_cheb
from .pade import ScaledPade, best_error_estimate, cheb_quotient_baseline, pade_error_bound

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_NOT_CONVERGED = 2
EXIT_INFEASIBLE = 3
EXIT_USAGE = 64
EXIT_IO = 74

UNITARITY_TOL = 5e-15  # per degree + 1
SYMMETRY_TOL = 1e-12

CURVE_HEADER = "x,re_err,im_err,abs_err,phase_err"
SWEEP_HEADER = "omega,method,max_error,estimate,pade_bound"
POLES_HEADER = "omega,j,re,im,re_scaled,im_scaled"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(v):
    return "%.17g" % (v + 0.0)  # + 0.0 turns -0 into 0


def _emit(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _emit_json(doc, path):
    _emit(json.dumps(doc, indent=2, allow_nan=False) + "\n", path)


def _emit_csv(header, rows, path):
    _emit("\n".join([header] + [",".join(r) for r in rows]) + "\n", path)


def _threads():
    raw = os.environ.get("UNIEXP_THREADS")
    if raw is None:
        return min(4, os.cpu_count() or 1)
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"UNIEXP_THREADS must be an integer, got {raw!r}")


def _solver_options(args):
    return SolverOptions(eq_tolerance=args.tol, max_iterations=args.max_iter,
                         rescale_exponent=args.gamma, init=args.init)


def _solve(method, n, omega, args=None):
    """Compute ``(document, approximant)`` for one method."""
    check_frequency(n, omega)
    if method == "best":
        opts = _solver_options(args) if args is not None and hasattr(args, "tol") else SolverOptions()
        res = best_approx(n, omega, opts)
        return build_document("best", res.approximant, n, omega, result=res), res.approximant
    if method == "interp-cheb":
        r = interpolate_chebyshev(n, omega)
        return build_document(method, r, n, omega,
                              interpolation_nodes=chebyshev_nodes(2 * n + 1)), r
    if method == "lawson":
        lopts = LawsonOptions()
        if args is not None and hasattr(args, "grid"):
            lopts = LawsonOptions(grid_size=args.grid, iterations=args.iterations)
        r, info = aaa_lawson_cheb(n, omega, lopts, info=True)
        return build_document(method, r, n, omega, iterations=len(info.sup_errors)), r
    if method == "pade":
        r = ScaledPade(n, omega)
        return build_document(method, r, n, omega), r
    if method == "cheb-quotient":
        r = cheb_quotient_baseline(n, omega)
        return build_document(method, r, n, omega), r
    raise UsageError(f"unknown method {method!r}")


def cmd_solve(args):
    method = {"best": "best", "interp": "interp-cheb", "lawson": "lawson"}.get(args.command)
    if args.command == "pade":
        method = "cheb-quotient" if args.quotient else "pade"
    doc, _ = _solve(method, args.n, args.omega, args)
    _emit_json(doc, args.json)
    if doc.get("converged") is False:
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def _source(args):
    if args.input is not None:
        with open(args.input, encoding="utf-8") as fh:
            doc = json.load(fh)
        validate_document(doc)
        return doc, load_approximant(doc)
    if args.method is None or args.n is None or args.omega is None:
        raise UsageError("give --input PATH or METHOD N OMEGA")
    return _solve(args.method, args.n, args.omega)


def cmd_curve(args):
    if args.samples < 2:
        raise UsageError("need at least 2 samples")
    doc, r = _source(args)
    curve = analysis.error_curve(r, doc["omega"], args.samples)
    rows = [[_fmt(v) for v in row] for row in curve.samples]
    _emit_csv(CURVE_HEADER, rows, args.csv)
    return EXIT_OK


def _sweep_point(method, n, omega):
    try:
        doc, _ = _solve(method, n, omega)
        return doc["max_error"]
    except UniexpError as exc:
        logging.getLogger(__name__).warning("%s n=%d omega=%g failed: %s", method, n, omega, exc)
        return float("nan")


def cmd_sweep(args):
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in METHODS:
            raise UsageError(f"unknown method {m!r}")
    if args.omegas:
        omegas = np.array(sorted(float(w) for w in args.omegas.split(",")))
    elif None in (args.omega_start, args.omega_end, args.steps):
        raise UsageError("give OMEGA_START OMEGA_END STEPS or --omegas LIST")
    elif args.steps < 1:
        raise UsageError("steps must be positive")
    else:
        omegas = np.linspace(args.omega_start, args.omega_end, args.steps)
    for w in (omegas.min(), omegas.max()):
        check_frequency(args.n, w)
    errors = {}
    for m in methods:
        if m == "best":
            res = sweep(args.n, omegas, SolverOptions(), warm_start=True)
            errors[m] = [r.max_error if r is not None else float("nan") for r in res]
        else:
            # independent points: safe to run concurrently, map keeps the order
            with ThreadPoolExecutor(max_workers=_threads()) as ex:
                errors[m] = list(ex.map(lambda w, m=m: _sweep_point(m, args.n, w), omegas))
    rows = []
    for i, w in enumerate(omegas):
        for m in methods:
            rows.append([_fmt(w), m, _fmt(errors[m][i]),
                         _fmt(best_error_estimate(args.n, w)), _fmt(pade_error_bound(args.n, w))])
    _emit_csv(SWEEP_HEADER, rows, args.csv)
    if all(np.isnan(e) for m in methods for e in errors[m]):
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_poles(args):
    omegas = sorted(args.omegas)
    for w in omegas:
        check_frequency(args.n, w)
    rows, status = [], EXIT_OK
    for w in omegas:
        res = best_approx(args.n, w)
        if not res.converged:
            status = EXIT_NOT_CONVERGED
        s = res.poles
        s = s[np.lexsort((s.real, s.imag))]
        for j, z in enumerate(s, start=1):
            rows.append([_fmt(w), str(j), _fmt(z.real), _fmt(z.imag),
                         _fmt(w * z.real), _fmt(w * z.imag)])
    _emit_csv(POLES_HEADER, rows, args.csv)
    return status


def cmd_check(args):
    try:
        doc, r = _source(args)
        if args.input is None:
            validate_document(doc)
    except jsonschema.ValidationError as exc:
        _emit_json({"schema_valid": False, "message": exc.message, "ok": False}, args.json)
        return EXIT_CHECK_FAILED
    rep = structural_checks(r)
    out = {
        "schema_valid": True,
        "unitarity_defect": rep.unitarity_defect,
        "symmetry_defect": rep.symmetry_defect,
        "stability_ok": rep.stability_ok,
        "irreducible_ok": rep.irreducible_ok,
    }
    out["ok"] = bool(rep.unitarity_defect <= UNITARITY_TOL * (doc["n"] + 1)
                     and rep.symmetry_defect <= SYMMETRY_TOL
                     and rep.stability_ok and rep.irreducible_ok)
    _emit_json(out, args.json)
    return EXIT_OK if out["ok"] else EXIT_CHECK_FAILED


def _add_solver_flags(p):
    p.add_argument("--tol", type=float, default=1e-3, help="equioscillation tolerance")
    p.add_argument("--max-iter", type=int, default=200)
    p.add_argument("--gamma", type=float, default=SolverOptions.rescale_exponent,
                   help="interval rescaling exponent")
    p.add_argument("--init", choices=("chebyshev", "uniform"), default=None)


def _add_source(p):
    p.add_argument("--input", help="approximant document (JSON)")
    p.add_argument("method", nargs="?", choices=METHODS)
    p.add_argument("n", nargs="?", type=int)
    p.add_argument("omega", nargs="?", type=float)


def build_parser():
    parser = _Parser(prog="uniexp",
                     description="Unitary rational approximation of exp(i omega x) on [-1, 1].")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_ in [("best", "unitary best approximation"),
                        ("interp", "interpolant at Chebyshev nodes"),
                        ("lawson", "Lawson iteration with Chebyshev support nodes"),
                        ("pade", "scaled diagonal Pade approximant")]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("n", type=int)
        p.add_argument("omega", type=float)
        p.add_argument("--json", metavar="PATH", help="output file (default stdout)")
        if name == "best":
            _add_solver_flags(p)
        elif name == "lawson":
            p.add_argument("--grid", type=int, default=2000)
            p.add_argument("--iterations", type=int, default=50)
        elif name == "pade":
            p.add_argument("--quotient", action="store_true",
                           help="least-squares polynomial quotient baseline instead")
        p.set_defaults(func=cmd_solve)

    p = sub.add_parser("curve", help="error curve as CSV")
    _add_source(p)
    p.add_argument("-m", "--samples", type=int, default=1000)
    p.add_argument("--csv", metavar="PATH")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("sweep", help="sup errors over a frequency range as CSV")
    p.add_argument("n", type=int)
    p.add_argument("omega_start", type=float, nargs="?")
    p.add_argument("omega_end", type=float, nargs="?")
    p.add_argument("steps", type=int, nargs="?")
    p.add_argument("--omegas", metavar="LIST", help="comma-separated frequencies instead of a range")
    p.add_argument("--methods", default="best", help="comma-separated, from: " + ",".join(METHODS))
    p.add_argument("--csv", metavar="PATH")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("poles", help="poles of best approximations as CSV")
    p.add_argument("n", type=int)
    p.add_argument("omegas", type=float, nargs="+")
    p.add_argument("--csv", metavar="PATH")
    p.set_defaults(func=cmd_poles)

    p = sub.add_parser("check", help="validate a document and its structural properties")
    _add_source(p)
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InfeasibleFrequencyError as exc:
        print(f"uniexp: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (UsageError, UniexpError) as exc:
        print(f"uniexp: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"uniexp: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, KeyError, jsonschema.ValidationError) as exc:
        # malformed input documents
        print(f"uniexp: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
