"""``idemlab`` command-line front end.

Every command prints one JSON report to stdout (or a CSV eigenvalue list
with ``--csv``); diagnostics go to stderr.  Exit codes: 0 success,
1 parse/usage error, 2 precondition or validation failure, 3 conditioning
warning escalated by ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
import warnings

import numpy as np

from . import matrixio
from .errors import BadParameters, DimensionMismatch, IdemlabError, IllConditionedWarning, NotIdempotent, ParseError, UnknownSuite
from .essential import example54, nearest_exact_idempotent
from .idempotent import ando_form, composition_operator, default_tol, validate, witness_operator
from .numkernel import eig, opnorm
from .pairs import CERTIFY_TOL, extract_invariant_details
from .spectral import Contour, riesz_projection
from .subspace import DEFAULT_INVARIANCE_TOL, Subspace, is_invariant
from .trials import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_STRICT = 0, 1, 2, 3

_USAGE_ERRORS = (ParseError, UnknownSuite, BadParameters, DimensionMismatch)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class _Outcome(Exception):
    """Carries a partially filled report out of a command with a non-zero exit code."""

    def __init__(self, code, message, outputs=None):
        super().__init__(message)
        self.code = code
        self.outputs = outputs or {}


def _read_input(args):
    if args.infile:
        try:
            with open(args.infile, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {args.infile}: {exc}") from None
    else:
        text = sys.stdin.read()
    return matrixio.load_matrix(text)


def _tol(args, default):
    if args.tol is not None:
        return args.tol
    env = os.environ.get("IDEMLAB_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            raise ParseError(f"IDEMLAB_TOL={env!r} is not a number") from None
    return default


def _basis(s):
    return matrixio.matrix_to_dict(s.basis)


def _warned(caught):
    return [str(w.message) for w in caught if issubclass(w.category, IllConditionedWarning)]


def cmd_decompose(args):
    t = _read_input(args)
    if t.shape[0] != t.shape[1]:
        raise DimensionMismatch(f"matrix is {t.shape[0]}x{t.shape[1]}, not square")
    tol = _tol(args, None)
    inputs = {"matrix": matrixio.matrix_to_dict(t)}
    try:
        e = validate(t, tol)
    except NotIdempotent as exc:
        raise _Outcome(EXIT_FAILED, str(exc), {"idempotency_residual": exc.residual,
                                               "tolerance": exc.tol}) from None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IllConditionedWarning)
        form = ando_form(e)
    w = witness_operator(e, form)
    notes = _warned(caught)
    outputs = {
        "rank": e.rank,
        "idempotency_residual": e.residual,
        "kappa": form.kappa,
        "kappa_V": form.kappa_V,
        "X": matrixio.matrix_to_dict(form.X),
        "A": matrixio.matrix_to_dict(form.A),
        "V": matrixio.matrix_to_dict(form.V),
        "V_inv": matrixio.matrix_to_dict(form.V_inv),
        "W": matrixio.matrix_to_dict(w),
        "range_basis": _basis(e.range),
        "null_basis": _basis(e.null),
        "similarity_residual": form.similarity_residual,
        "block_residual": form.block_residual,
        "witness_minus_complement": opnorm(w - (np.eye(e.n) - e.T)),
        "eigenvalues": matrixio.complex_list(eig(t).eigenvalues),
        "warnings": notes,
    }
    tols = {"idempotency": tol if tol is not None else default_tol(t)}
    code = EXIT_STRICT if notes and args.strict else EXIT_OK
    return inputs, outputs, tols, code, eig(t).eigenvalues


def cmd_hardy(args):
    alpha = args.alpha
    degree = args.degree
    tol = _tol(args, DEFAULT_INVARIANCE_TOL)
    c = composition_operator(alpha, degree)
    e = validate(c)
    w = witness_operator(e)
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    powers = alpha ** np.arange(degree + 1)
    for _ in range(args.samples):
        f = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
        expected = f.copy()
        expected[0] -= powers @ f  # f - f(alpha)
        worst = max(worst, float(np.linalg.norm(w @ f - expected)))
    span_1z = Subspace.coordinate(degree + 1, [0, 1])
    span_z = Subspace.coordinate(degree + 1, [1])
    inv_1z = is_invariant(c, span_1z, tol)
    inv_z = is_invariant(c, span_z, tol)
    inputs = {"alpha": matrixio.complex_list([alpha])[0], "degree": degree, "samples": args.samples}
    outputs = {
        "C": matrixio.matrix_to_dict(c),
        "idempotency_residual": e.residual,
        "W": matrixio.matrix_to_dict(w),
        "witness_max_error": worst,
        "span_1_z_invariant": inv_1z.invariant,
        "span_1_z_residual": inv_1z.residual,
        "span_z_invariant": inv_z.invariant,
        "span_z_residual": inv_z.residual,
        "eigenvalues": matrixio.complex_list(eig(c).eigenvalues),
    }
    return inputs, outputs, {"invariance": tol, "witness": 1e-10}, EXIT_OK, eig(c).eigenvalues


def cmd_pipeline_nrr(args):
    a = _read_input(args)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"matrix is {a.shape[0]}x{a.shape[1]}, not square")
    tol = _tol(args, CERTIFY_TOL)
    rep = extract_invariant_details(a, tol)
    outputs = {"branch": rep.branch, "dimension": rep.subspace.dim, "residual": rep.residual,
               "subspace": _basis(rep.subspace)}
    d_spec = np.zeros(0, dtype=complex)
    if rep.pair is not None:
        d_spec = rep.pair.commutator_spectrum.eigenvalues
        outputs.update({
            "T1": matrixio.matrix_to_dict(rep.pair.T1.T),
            "T2": matrixio.matrix_to_dict(rep.pair.T2.T),
            "D_spectrum": matrixio.complex_list(d_spec),
            "D_spectral_radius": rep.pair.commutator_spectrum.spectral_radius,
        })
    if rep.common is not None:
        outputs.update({
            "M": _basis(rep.common.M),
            "M_residual_T1": rep.common.residual_T1,
            "M_residual_T2": rep.common.residual_T2,
            "construction_branch": rep.common.intermediate["branch"],
            "ordering": rep.common.intermediate["ordering"],
        })
    if rep.components is not None:
        outputs["T2_M"] = _basis(rep.components[0])
        outputs["complement_M"] = _basis(rep.components[1])
    return {"matrix": matrixio.matrix_to_dict(a)}, outputs, {"certify": tol}, EXIT_OK, d_spec


def cmd_spectrum(args):
    t = _read_input(args)
    spec = eig(t)
    outputs = {"eigenvalues": matrixio.complex_list(spec.eigenvalues),
               "spectral_radius": spec.spectral_radius}
    return {"matrix": matrixio.matrix_to_dict(t)}, outputs, {}, EXIT_OK, spec.eigenvalues


def cmd_riesz(args):
    t = _read_input(args)
    contour = Contour(complex(args.center), args.radius, args.nodes)
    res = riesz_projection(t, contour)
    outputs = {
        "P": matrixio.matrix_to_dict(res.P),
        "idempotency_residual": res.idempotency_residual,
        "invariance_residual_range": res.invariance_residual_range,
        "invariance_residual_null": res.invariance_residual_null,
        "quadrature_change": res.quadrature_change,
        "inside_spectrum": matrixio.complex_list(res.inside_spectrum),
        "outside_spectrum": matrixio.complex_list(res.outside_spectrum),
        "range_basis": _basis(res.range),
    }
    inputs = {"matrix": matrixio.matrix_to_dict(t), "center": matrixio.complex_list([contour.center])[0],
              "radius": contour.radius, "nodes": contour.nodes}
    return inputs, outputs, {}, EXIT_OK, res.inside_spectrum


def cmd_classify(args):
    t = _read_input(args)
    cls = nearest_exact_idempotent(t, eps_max=_tol(args, 0.1), nodes=args.nodes)
    outputs = {"case": cls.case.value, "eps": cls.eps, "distance": cls.distance,
               "clusters": cls.clusters, "S": matrixio.matrix_to_dict(cls.S.T),
               "S_idempotency_residual": cls.S.residual}
    return {"matrix": matrixio.matrix_to_dict(t)}, outputs, {"eps_max": _tol(args, 0.1)}, EXIT_OK, None


def cmd_example54(args):
    m = args.m
    if m < 1:
        raise BadParameters("m must be at least 1")
    ex = example54(np.eye(m), np.eye(m))
    outputs = dict(ex.report)
    outputs["T1"] = matrixio.matrix_to_dict(ex.T1.T)
    outputs["T2"] = matrixio.matrix_to_dict(ex.T2.T)
    return {"m": m}, outputs, {}, EXIT_OK, None


def cmd_trials(args):
    summary = run_suite(args.suite, args.count, args.seed, args.max_dim)
    out = summary.as_dict()
    out.pop("wall_time")
    inputs = {"suite": args.suite, "count": args.count, "max_dim": summary.max_dim}
    code = EXIT_OK if summary.ok else EXIT_FAILED
    return inputs, out, summary.tolerances, code, None


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--in", dest="infile", metavar="FILE", help="matrix JSON file (default: stdin)")
    common.add_argument("--tol", type=float, default=None, help="tolerance override")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--nodes", type=int, default=256, help="quadrature nodes for contour integrals")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", default="json")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv",
                     help="print the command's eigenvalue list as CSV (re, im)")
    common.add_argument("--strict", action="store_true", help="exit 3 on conditioning warnings")

    parser = _Parser(prog="idemlab", description="Numerical experiments on idempotent operators.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decompose", parents=[common], help="block form, similarity and witness of an idempotent")
    p.set_defaults(func=cmd_decompose)
    p = sub.add_parser("hardy", parents=[common], help="composition operator with constant symbol")
    p.add_argument("--alpha", type=complex, default=0.5)
    p.add_argument("--degree", type=int, default=8)
    p.add_argument("--samples", type=int, default=50)
    p.set_defaults(func=cmd_hardy)
    p = sub.add_parser("pipeline-nrr", parents=[common], help="invariant subspace of a nilpotent via an idempotent pair")
    p.set_defaults(func=cmd_pipeline_nrr)
    p = sub.add_parser("spectrum", parents=[common], help="eigenvalues of a matrix")
    p.set_defaults(func=cmd_spectrum)
    p = sub.add_parser("riesz", parents=[common], help="Riesz projection for a circle")
    p.add_argument("--center", type=complex, default=0)
    p.add_argument("--radius", type=float, required=True)
    p.set_defaults(func=cmd_riesz)
    p = sub.add_parser("classify", parents=[common], help="nearest exact idempotent of a near-idempotent")
    p.set_defaults(func=cmd_classify)
    p = sub.add_parser("example54", parents=[common], help="annihilated pair with large commutator")
    p.add_argument("--m", type=int, default=2)
    p.set_defaults(func=cmd_example54)
    p = sub.add_parser("trials", parents=[common], help="seeded randomized property suites")
    p.add_argument("suite", help=", ".join(SUITES))
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-dim", "--dims", dest="max_dim", type=int, default=None)
    p.set_defaults(func=cmd_trials)
    return parser


def main(argv=None):
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    report = {"command": args.command, "seed": args.seed}
    eigenvalues = None
    try:
        inputs, outputs, tols, code, eigenvalues = args.func(args)
        report.update(inputs=inputs, outputs=outputs, tolerances=tols)
    except _USAGE_ERRORS as exc:
        print(f"idemlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _Outcome as exc:
        code = exc.code
        report.update(outputs=exc.outputs, error={"type": "NotIdempotent", "message": str(exc)})
    except (IdemlabError, ValueError) as exc:
        code = EXIT_FAILED
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
    if "error" in report:
        print(f"idemlab: {report['error']['message']}", file=sys.stderr)
    report["passed"] = code == EXIT_OK
    report["exit_code"] = code
    report["wall_time"] = time.perf_counter() - start

    if args.fmt == "csv":
        if eigenvalues is None:
            if "error" in report:
                return code
            print(f"idemlab: {args.command} has no eigenvalue list for --csv", file=sys.stderr)
            return EXIT_USAGE
        sys.stdout.write(matrixio.eigenvalues_csv(eigenvalues))
    else:
        sys.stdout.write(json.dumps(report, indent=2, allow_nan=False, default=_jsonable) + "\n")
    return code


def _jsonable(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    raise TypeError(f"cannot serialise {type(x).__name__}")


if __name__ == "__main__":
    sys.exit(main())
