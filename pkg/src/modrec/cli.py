"""Command-line surface: parse curve configs, dispatch, emit documents.

Exit codes: 0 success, 1 bad input (usage, malformed config, failed
validation), 2 a mathematical identity failed.  Code 2 is the alarm bell:
it never fires on user mistakes, only when the cross-checked mathematics
disagrees, so CI can treat it as a defect signal.

All rational numbers are emitted as "p/q" strings; no floating point
appears in any output.  Output goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from .curve import (
    CurveData,
    HyperellipticModel,
    SpecializationField,
    zeta_from_counts,
    zeta_value,
)
from .errors import InvariantViolation, ValidationError
from .exactalg import RatFun, fraction_to_str, ratfun_to_json
from .hn import codim, enumerate_types
from .kirwan import WeightSystem, bb_decomposition, perfection_check, quotient_poincare, strata
from .matrixdiv import div_bridge_check, div_poincare
from .symprod import divisor_enumerate, sym_count, sym_poincare
from .tamagawa import fixed_determinant_count, siegel_check, ss_mass, stable_count
from .yangmills import fixed_determinant_poly, moduli_poincare

FORMATS = ("json", "csv", "plain")


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; we reserve 2 for broken
    mathematics, so remap usage problems to a validation error."""

    def error(self, message):
        raise ValidationError(message)


def load_curve(path):
    """Read and validate a curve config file; returns CurveData."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise ValidationError("cannot read curve file %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise ValidationError("curve file %s is not valid JSON: %s" % (path, exc))
    mode = _field(raw, "mode", str, path)
    if mode == "symbolic":
        return CurveData.symbolic(_field(raw, "genus", int, path))
    if mode == "counts":
        return zeta_from_counts(_field(raw, "q", int, path),
                                _field(raw, "genus", int, path),
                                _field(raw, "counts", list, path))
    if mode == "hyperelliptic":
        model = HyperellipticModel(p=_field(raw, "p", int, path),
                                   k=_field(raw, "k", int, path),
                                   f=tuple(_field(raw, "f", list, path)),
                                   h=tuple(raw.get("h", ())))
        return CurveData.from_model(model)
    raise ValidationError("%s: unknown curve mode %r" % (path, mode))


def load_model(path):
    """As load_curve but keeps the hyperelliptic model (for enumeration)."""
    with open(path, "r", encoding="utf-8") as handle:
        raw = json.load(handle)
    if raw.get("mode") != "hyperelliptic":
        raise ValidationError("%s: divisor enumeration needs a hyperelliptic model" % path)
    return HyperellipticModel(p=raw["p"], k=raw["k"],
                              f=tuple(raw["f"]), h=tuple(raw.get("h", ())))


def _field(raw, name, kind, path):
    if name not in raw:
        raise ValidationError("%s: missing field %r" % (path, name))
    value = raw[name]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise ValidationError("%s: field %r must be %s" % (path, name, kind.__name__))
    return value


def _numeric_field(args):
    curve = load_curve(args.curve)
    if not curve.is_arithmetic:
        raise ValidationError("this command needs an arithmetic curve config")
    return SpecializationField.numeric(curve)


def _poly_doc(poly, **extra):
    doc = dict(extra)
    doc["degree"] = max(poly.degree("t"), 0)
    if poly.is_zero:
        doc["coeffs"] = ["0"]
    else:
        doc["coeffs"] = [fraction_to_str(c) for c in poly.scalar_coeffs("t")]
    return doc


# -- subcommand handlers -----------------------------------------------------


def _cmd_betti(args):
    if args.fixed_det:
        poly = fixed_determinant_poly(args.n, args.d, args.g)
    else:
        poly = moduli_poincare(args.n, args.d, args.g)
    return _poly_doc(poly, n=args.n, d=args.d, g=args.g), 0


def _cmd_count(args):
    field = _numeric_field(args)
    doc = {"stable_count": fraction_to_str(stable_count(args.n, args.d, field))}
    if args.fixed_det:
        doc["fixed_det_count"] = fraction_to_str(fixed_determinant_count(args.n, args.d, field))
    return doc, 0


def _cmd_mass(args):
    if args.curve:
        field = _numeric_field(args)
    elif args.mode in ("betti", "hodge") and args.g:
        field = (SpecializationField.betti(args.g) if args.mode == "betti"
                 else SpecializationField.hodge(args.g))
    else:
        raise ValidationError("mass needs either --curve, or --mode betti|hodge with --g")
    value = ss_mass(args.n, args.d, field)
    doc = {"n": args.n, "d": args.d, "mode": field.mode}
    if field.mode == SpecializationField.NUMERIC:
        doc["value"] = fraction_to_str(value.const_value())
    else:
        doc["value"] = ratfun_to_json(value)
    return doc, 0


def _cmd_siegel(args):
    field = _numeric_field(args)
    report = siegel_check(args.n, args.d, field, args.max_codim)
    return report.to_json(), 0


def _cmd_hn_types(args):
    types = enumerate_types(args.n, args.d, args.g, args.max_codim)
    return {
        "n": args.n, "d": args.d, "g": args.g, "max_codim": args.max_codim,
        "types": [mu.to_json() for mu in types],
        "codims": [codim(mu, args.g) for mu in types],
    }, 0


def _cmd_symprod(args):
    if args.curve:
        curve = load_curve(args.curve)
        doc = {"n": args.n, "count": fraction_to_str(sym_count(curve, args.n))}
        if args.enumerate:
            model = load_model(args.curve)
            doc["enumerated"] = fraction_to_str(divisor_enumerate(model, args.n))
        return doc, 0
    if args.g is None:
        raise ValidationError("symprod needs --g (Betti mode) or --curve (counts)")
    return _poly_doc(sym_poincare(args.g, args.n), g=args.g, n=args.n), 0


def _cmd_matrixdiv(args):
    return _poly_doc(div_poincare(args.n, args.e, args.g),
                     n=args.n, e=args.e, g=args.g), 0


def _cmd_bridge(args):
    report = div_bridge_check(args.n, args.g, args.e, args.cutoff)
    return report.to_json(), 0 if report.match else 2


def _cmd_kirwan(args):
    try:
        weights = json.loads(args.weights)
    except json.JSONDecodeError as exc:
        raise ValidationError("weights must be a JSON integer array: %s" % exc)
    if not isinstance(weights, list) or not all(isinstance(w, int) for w in weights):
        raise ValidationError("weights must be a JSON integer array")
    ws = WeightSystem(tuple(weights))
    if args.op == "strata":
        return {"weights": ws.to_json(), "strata": [
            {"beta": s.beta, "fixed_dim": s.fixed_dim, "codim": s.codim}
            for s in strata(ws)]}, 0
    if args.op == "bb":
        return dict(bb_decomposition(ws).to_json(), weights=ws.to_json()), 0
    if args.op == "perfection":
        report = perfection_check(ws)
        return {
            "weights": ws.to_json(),
            "is_polynomial": report.is_polynomial,
            "series_coeffs": [fraction_to_str(c)
                              for c in report.series_coefficients(2 * ws.dim + 2)],
        }, 0
    return _poly_doc(quotient_poincare(ws), weights=ws.to_json()), 0


def _cmd_crosscheck(args):
    F = SpecializationField.betti(args.g)
    lhs = (F.q - RatFun.one()) * ss_mass(args.n, args.d, F)
    rhs = RatFun(moduli_poincare(args.n, args.d, args.g))
    match = lhs == rhs
    return {"match": match}, 0 if match else 2


def _cmd_zeta(args):
    curve = load_curve(args.curve)
    if not curve.is_arithmetic:
        raise ValidationError("zeta needs an arithmetic curve config")
    if args.i is not None:
        field = SpecializationField.numeric(curve)
        return {"i": args.i, "value": fraction_to_str(zeta_value(field, args.i))}, 0
    return {
        "genus": curve.genus,
        "q": curve.q,
        "numerator_coeffs": [str(c) for c in curve.coefficients()],
        "class_number": str(curve.class_number()),
        "counts": [str(curve.point_count(r)) for r in range(1, curve.genus + 1)],
    }, 0


# -- emission ------------------------------------------------------------------


def _emit(doc, fmt, stream):
    if fmt == "json":
        stream.write(json.dumps(doc, sort_keys=True) + "\n")
        return
    if fmt == "csv":
        for key in sorted(doc):
            value = doc[key]
            if isinstance(value, list):
                value = ";".join(_scalar(v) for v in value)
            else:
                value = _scalar(value)
            stream.write("%s,%s\n" % (key, value))
        return
    width = max(len(k) for k in doc)
    for key in sorted(doc):
        value = doc[key]
        if isinstance(value, list):
            value = " ".join(_scalar(v) for v in value)
        else:
            value = _scalar(value)
        stream.write("%-*s  %s\n" % (width, key, value))


def _scalar(value):
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


# -- parser --------------------------------------------------------------------


def build_parser():
    parser = _Parser(prog="modrec",
                     description="Exact invariants of moduli of bundles on a curve.")
    parser.add_argument("--format", choices=FORMATS, default="json")
    parser.add_argument("--selftest", action="store_true",
                        help="run the acceptance suite and exit")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("betti", help="moduli Poincare polynomial (coprime case)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--fixed-det", action="store_true", dest="fixed_det")
    p.set_defaults(handler=_cmd_betti)

    p = sub.add_parser("count", help="exact stable-bundle count over F_q")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--curve", required=True)
    p.add_argument("--fixed-det", action="store_true", dest="fixed_det")
    p.set_defaults(handler=_cmd_count)

    p = sub.add_parser("mass", help="semistable stacky mass")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--curve")
    p.add_argument("--g", type=int)
    p.add_argument("--mode", choices=("betti", "hodge"))
    p.set_defaults(handler=_cmd_mass)

    p = sub.add_parser("siegel", help="mass-formula partial sums and gaps")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--curve", required=True)
    p.add_argument("--max-codim", type=int, default=20, dest="max_codim")
    p.set_defaults(handler=_cmd_siegel)

    p = sub.add_parser("hn-types", help="filtration types under a codimension bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--max-codim", type=int, default=10, dest="max_codim")
    p.set_defaults(handler=_cmd_hn_types)

    p = sub.add_parser("symprod", help="symmetric powers: polynomial or divisor count")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int)
    p.add_argument("--curve")
    p.add_argument("--enumerate", action="store_true",
                   help="also run the brute-force divisor oracle")
    p.set_defaults(handler=_cmd_symprod)

    p = sub.add_parser("matrixdiv", help="matrix-divisor Betti polynomial")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.set_defaults(handler=_cmd_matrixdiv)

    p = sub.add_parser("bridge", help="stabilization and classifying-series bridge")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--cutoff", type=int, required=True)
    p.set_defaults(handler=_cmd_bridge)

    p = sub.add_parser("kirwan", help="rank-1 torus stratification toolkit")
    p.add_argument("--weights", required=True, help="JSON integer array")
    p.add_argument("--op", choices=("strata", "bb", "perfection", "quotient"),
                   default="strata")
    p.set_defaults(handler=_cmd_kirwan)

    p = sub.add_parser("crosscheck", help="arithmetic vs gauge pipeline equality")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.set_defaults(handler=_cmd_crosscheck)

    p = sub.add_parser("zeta", help="zeta data of a curve config")
    p.add_argument("--curve", required=True)
    p.add_argument("--i", type=int)
    p.set_defaults(handler=_cmd_zeta)

    return parser


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.selftest:
            from .acceptance import run_all

            return 0 if run_all(sys.stdout) else 2
        if not getattr(args, "command", None):
            parser.print_usage(sys.stderr)
            return 1
        doc, status = args.handler(args)
    except ValidationError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except (ZeroDivisionError,) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except InvariantViolation as exc:
        sys.stderr.write("invariant violation: %s\n" % exc)
        return 2
    _emit(doc, args.format, sys.stdout)
    return status


if __name__ == "__main__":
    sys.exit(main())
