"""Command-line surface: evaluation, identity verification, coupling,
measure realization/inversion, and the model oracle.

Exit codes: 0 success, 1 a requested verification exceeded its tolerance,
2 usage error.  Output is deterministic: fixed evaluation order and all
floating-point values rendered at 17 significant digits, so identical argv
yields byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Optional

from . import verify as verify_mod
from .core import (
    AnalyticFn,
    EvaluationGrid,
    FnKind,
    complex_to_json,
    constant_fn,
    default_grid,
    evaluate_on_grid,
    fmt_float,
    grid_from_json,
    sup_deviation,
)
from .coupling import (
    TaggedCharacteristic,
    add_weyl,
    couple_livsic,
    coupling_angles,
    general_k_identity_defect,
    multiply_characteristic,
)
from .errors import LivcalcError, PoleEncountered
from .extension import ClassVerdict, characteristic_from_livsic, class_C_check
from .measure import (
    BorelMeasureModel,
    normalization_defect,
    realize_herglotz,
    stieltjes_invert,
)
from .model import model_closed_forms
from .oracle import model_livsic_quadrature

_COMPLEX_RE = re.compile(
    r"^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"(?:([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i)?$"
)


def parse_complex(text: str) -> complex:
    """Parse 'a+bi' / 'a-bi' (real part mandatory, e.g. '0+2i', '1.5')."""
    match = _COMPLEX_RE.match(text.strip())
    if not match:
        raise argparse.ArgumentTypeError(
            f"cannot parse complex value {text!r}; expected a+bi with mandatory real part"
        )
    re_part = float(match.group(1))
    im_part = float(match.group(2)) if match.group(2) else 0.0
    return complex(re_part, im_part)


def parse_atoms(text: str):
    """Parse 'loc:weight,loc:weight,...'."""
    atoms = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            loc, weight = chunk.split(":")
            atoms.append((float(loc), float(weight)))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(
                f"cannot parse atom {chunk!r}; expected loc:weight"
            ) from exc
    if not atoms:
        raise argparse.ArgumentTypeError("at least one atom required")
    return tuple(atoms)


def parse_window(text: str):
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"cannot parse window {text!r}; expected lo:hi"
        ) from exc


def parse_eps(text: str):
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"cannot parse eps schedule {text!r}; expected comma-separated reals"
        ) from exc


def load_grid(spec: str) -> EvaluationGrid:
    if spec == "default":
        return default_grid()
    if spec.startswith("file:"):
        with open(spec[len("file:"):], "r", encoding="utf-8") as handle:
            return grid_from_json(json.load(handle))
    raise argparse.ArgumentTypeError(
        f"grid must be 'default' or 'file:<path>', got {spec!r}"
    )


def emit_json(report: dict) -> None:
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")


def emit_grid_csv(grid: EvaluationGrid, values) -> None:
    lines = ["re,im,f_re,f_im"]
    for z, value in zip(grid, values):
        if isinstance(value, PoleEncountered):
            f_re = f_im = "nan"
        else:
            f_re, f_im = fmt_float(value.real), fmt_float(value.imag)
        lines.append(f"{fmt_float(z.real)},{fmt_float(z.imag)},{f_re},{f_im}")
    sys.stdout.write("\n".join(lines) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="livcalc",
        description="Calculus of contractive/half-plane analytic functions: "
        "interval model, couplings, measure realizations, identity checks.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p_model = sub.add_parser("model", help="interval-model closed forms (and oracle)")
    p_model.add_argument("--length", type=float, required=True, help="interval length")
    p_model.add_argument("--eval", type=parse_complex, help="single point a+bi in C+")
    p_model.add_argument("--grid", type=str, help="'default' or file:<path> for a sweep")
    p_model.add_argument("--oracle", action="store_true",
                         help="cross-check s against the quadrature oracle")
    p_model.add_argument("--format", choices=("json", "csv"), default="json")

    p_couple = sub.add_parser("couple", help="couple two interval models and verify")
    p_couple.add_argument("--kappa1", type=float, required=True)
    p_couple.add_argument("--kappa2", type=float, required=True)
    p_couple.add_argument("--length", type=float, default=1.0,
                          help="length of the underlying interval models")
    p_couple.add_argument("--grid", type=str, default="default")
    p_couple.add_argument("--check", choices=("nunu", "formula1"), default="nunu")
    p_couple.add_argument("--format", choices=("json", "csv"), default="json")

    p_mult = sub.add_parser("multiply", help="multiply tagged characteristic functions")
    p_mult.add_argument("--kappa1", type=float, required=True)
    p_mult.add_argument("--kappa2", type=float, required=True)
    p_mult.add_argument("--length", type=float, default=1.0)
    p_mult.add_argument("--format", choices=("json", "csv"), default="json")

    p_add = sub.add_parser("add", help="convex combination of the two reference "
                                       "half-plane models")
    p_add.add_argument("--alpha", type=float, required=True)
    p_add.add_argument("--grid", type=str, default="default")
    p_add.add_argument("--format", choices=("json", "csv"), default="json")

    p_meas = sub.add_parser("measure", help="realize a measure model; optionally "
                                            "check normalization or invert")
    p_meas.add_argument("--atoms", type=parse_atoms, help='e.g. "0:1" or "1:1,-1:1"')
    p_meas.add_argument("--measure-file", type=str, help="measure model JSON file")
    p_meas.add_argument("--check-normalization", action="store_true")
    p_meas.add_argument("--invert", action="store_true")
    p_meas.add_argument("--window", type=parse_window, default=(-2.0, 2.0))
    p_meas.add_argument("--eps", type=parse_eps, default=(1e-2, 1e-3, 1e-4))
    p_meas.add_argument("--format", choices=("json", "csv"), default="json")

    p_class = sub.add_parser("check-class", help="membership heuristic for the "
                                                 "vanishing-at-i class")
    p_class.add_argument("--length", type=float, help="probe the interval model s")
    p_class.add_argument("--probe", type=str,
                         help="'cayley' or 'const:<a+bi>' counterexample probes")
    p_class.add_argument("--format", choices=("json", "csv"), default="json")

    p_all = sub.add_parser("verify-all", help="run every module invariant suite")
    p_all.add_argument("--format", choices=("json", "csv"), default="json")

    return parser


def cmd_model(args) -> int:
    forms = model_closed_forms(args.length)
    if args.eval is None and args.grid is None:
        raise UsageError("model requires --eval or --grid")
    if args.eval is not None and args.grid is not None:
        raise UsageError("--eval and --grid are mutually exclusive")
    if args.eval is not None:
        z = args.eval
        if z.imag <= 0:
            raise UsageError(f"evaluation point {z} must lie in the upper half-plane")
        report = {
            "ell": fmt_float(args.length),
            "kappa": fmt_float(forms.kappa),
            "s": complex_to_json(forms.livsic(z)),
            "S": complex_to_json(forms.characteristic(z)),
        }
        if args.oracle:
            s_quad = model_livsic_quadrature(args.length, z)
            report["s_oracle"] = complex_to_json(s_quad)
            report["oracle_deviation"] = fmt_float(abs(s_quad - forms.livsic(z)))
        emit_json(report)
        return 0
    grid = load_grid(args.grid)
    values = evaluate_on_grid(forms.livsic, grid)
    if args.format == "csv":
        emit_grid_csv(grid, values)
    else:
        emit_json(
            {
                "ell": fmt_float(args.length),
                "kappa": fmt_float(forms.kappa),
                "values": [
                    {"z": complex_to_json(z), "s": complex_to_json(v)}
                    if not isinstance(v, PoleEncountered)
                    else {"z": complex_to_json(z), "s": None}
                    for z, v in zip(grid, values)
                ],
            }
        )
    return 0


_COUPLE_TOL = 1e-10
_FORMULA1_KS = (0.0, 0.2, 0.37, 0.8)


def cmd_couple(args) -> int:
    grid = load_grid(args.grid)
    s1 = model_closed_forms(args.length).livsic
    s2 = model_closed_forms(args.length).livsic
    angles = coupling_angles(args.kappa1, args.kappa2)
    if args.check == "nunu":
        coupled = couple_livsic(s1, s2, angles)
        k = args.kappa1 * args.kappa2
        left = characteristic_from_livsic(coupled, k)
        t1 = TaggedCharacteristic(characteristic_from_livsic(s1, args.kappa1), args.kappa1)
        t2 = TaggedCharacteristic(characteristic_from_livsic(s2, args.kappa2), args.kappa2)
        deviation = sup_deviation(left, multiply_characteristic(t1, t2).fn, grid)
    else:
        deviation = max(
            general_k_identity_defect(k, s1, s2, angles, grid) for k in _FORMULA1_KS
        )
    passed = deviation < _COUPLE_TOL
    emit_json(
        {
            "check": args.check,
            "kappa1": fmt_float(args.kappa1),
            "kappa2": fmt_float(args.kappa2),
            "max_deviation": fmt_float(deviation),
            "tolerance": fmt_float(_COUPLE_TOL),
            "pass": passed,
        }
    )
    return 0 if passed else 1


def cmd_multiply(args) -> int:
    s = model_closed_forms(args.length).livsic
    t1 = TaggedCharacteristic(characteristic_from_livsic(s, args.kappa1), args.kappa1)
    t2 = TaggedCharacteristic(characteristic_from_livsic(s, args.kappa2), args.kappa2)
    product = multiply_characteristic(t1, t2)
    defect = abs(product.fn(1j) - product.kappa)
    passed = defect < 1e-12
    emit_json(
        {
            "kappa": complex_to_json(product.kappa),
            "tag_defect": fmt_float(defect),
            "tolerance": fmt_float(1e-12),
            "pass": passed,
        }
    )
    return 0 if passed else 1


def cmd_add(args) -> int:
    grid = load_grid(args.grid)
    m1, m2 = verify_mod.reference_measures()
    combined = add_weyl(realize_herglotz(m1), realize_herglotz(m2), args.alpha)
    at_i = combined(1j)
    min_im = min(combined(z).imag for z in grid)
    defect = abs(at_i - 1j)
    passed = defect < 1e-14 and min_im > 0.0
    emit_json(
        {
            "alpha": fmt_float(args.alpha),
            "M_at_i": complex_to_json(at_i),
            "normalization_defect": fmt_float(defect),
            "min_imag_on_grid": fmt_float(min_im),
            "pass": passed,
        }
    )
    return 0 if passed else 1


def cmd_measure(args) -> int:
    if (args.atoms is None) == (args.measure_file is None):
        raise UsageError("measure requires exactly one of --atoms / --measure-file")
    if args.atoms is not None:
        mu = BorelMeasureModel(args.atoms)
    else:
        with open(args.measure_file, "r", encoding="utf-8") as handle:
            mu = BorelMeasureModel.from_json(json.load(handle))
    M = realize_herglotz(mu)
    defect = normalization_defect(mu)
    report = {
        "defect": fmt_float(defect),
        "M_at_i": complex_to_json(M(1j)),
    }
    exit_code = 0
    if args.check_normalization and defect >= 1e-14:
        exit_code = 1
    if args.invert:
        result = stieltjes_invert(M, args.window, args.eps)
        report["recovered_atoms"] = [
            {
                "location": fmt_float(a.location),
                "weight": fmt_float(a.weight),
                "residual": fmt_float(a.residual),
            }
            for a in result.atoms
        ]
        report["scan_spacing"] = fmt_float(result.scan_spacing)
    emit_json(report)
    return exit_code


def cmd_check_class(args) -> int:
    if (args.length is None) == (args.probe is None):
        raise UsageError("check-class requires exactly one of --length / --probe")
    if args.length is not None:
        fn = model_closed_forms(args.length).livsic
    elif args.probe == "cayley":
        fn = AnalyticFn(lambda z: (z - 1j) / (z + 1j), FnKind.GENERIC, "cayley-probe")
    elif args.probe.startswith("const:"):
        fn = constant_fn(parse_complex(args.probe[len("const:"):]))
    else:
        raise UsageError(f"unknown probe {args.probe!r}")
    report = class_C_check(fn)
    emit_json(report.to_json())
    return 0 if report.verdict is ClassVerdict.CONSISTENT_WITH_C else 1


def cmd_verify_all(args) -> int:
    results = verify_mod.run_all()
    report = {
        suite: [check.to_json() for check in checks]
        for suite, checks in results.items()
    }
    all_passed = all(c.passed for checks in results.values() for c in checks)
    report["all_passed"] = all_passed
    emit_json(report)
    return 0 if all_passed else 1


class UsageError(Exception):
    pass


_DISPATCH = {
    "model": cmd_model,
    "couple": cmd_couple,
    "multiply": cmd_multiply,
    "add": cmd_add,
    "measure": cmd_measure,
    "check-class": cmd_check_class,
    "verify-all": cmd_verify_all,
}


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.verb](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (LivcalcError, ValueError, OSError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
