"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from modcalc.classes import canonical_class, k3_locus_class, logan_class
from modcalc.curves import CurveClass, pair
from modcalc.errors import (
    ConsistencyFailure,
    FaceCheckFailure,
    InvalidSpec,
    ModcalcError,
    RatioMismatch,
    StageFailure,
)
from modcalc.lefschetz import PencilSpec, cross_check, gamma_curve, pencil_surface_invariants
from modcalc.pic import DivisorClass, ModuliSignature, ParamValue, format_fraction, to_fraction
from modcalc.rigidity import certify_kodaira_zero_m1010, extremal_face_check, slope_bound

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
PIPELINES = ("m10-10-kodaira-zero", "m10-extremal-face")


class UsageError(Exception):
    pass


def _display_b() -> Fraction | None:
    raw = os.environ.get("MODCALC_B")
    if not raw:
        return None
    try:
        b = to_fraction(raw.strip())
    except (ValueError, TypeError, ModcalcError, ZeroDivisionError) as exc:
        raise UsageError(f"MODCALC_B={raw!r} is not a rational number") from exc
    if b < 6:
        raise UsageError(f"MODCALC_B={raw} is below the admissible bound 6")
    return b


def show(v: ParamValue) -> str:
    """Exact value; B-dependent values also get their value at MODCALC_B if set."""
    b = _display_b()
    if b is None or not v.slope:
        return str(v)
    return f"{v} (= {format_fraction(v.at(b))} at B = {format_fraction(b)})"


def _write_json(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text + "\n")
    else:
        Path(path).write_text(text + "\n", encoding="utf-8")


# -- invariants ----------------------------------------------------------


def cmd_invariants(args: argparse.Namespace) -> int:
    spec = PencilSpec(args.g, args.delta, args.ell)
    spec.validate()
    curve = gamma_curve(spec, numbered=args.numbered)
    inv = pencil_surface_invariants(spec)
    report = cross_check(spec, strict=False)
    if args.curve_out:
        Path(args.curve_out).write_text(curve.dumps() + "\n", encoding="utf-8")
    if args.json:
        doc = {
            "spec": {"g": spec.g, "delta": spec.delta, "ell": spec.ell},
            "signature": curve.sig.to_json(),
            "pairings": {b.key(): v.to_json() for b, v in curve.items()},
            "surface": inv.to_json(),
            "cross_check": report.to_json(),
        }
        print(json.dumps(doc, separators=(",", ":"), ensure_ascii=False))
    else:
        print(f"Gamma({spec.g},{spec.delta},{spec.ell}) on M({curve.sig.genus};{curve.sig.n})")
        width = max(len(b.key()) for b, _ in curve.items())
        for b, v in curve.items():
            print(f"  {b.key():<{width}}  {show(v)}")
        print("surface:")
        for key, val in inv.to_json().items():
            print(f"  {key:<{width}}  {val}")
        print("cross-check:")
        for ident in report.identities:
            mark = "ok" if ident.ok else "FAILED"
            print(f"  {ident.name:<{width}}  {format_fraction(ident.lhs)} = {format_fraction(ident.rhs)}  {mark}")
    return EXIT_OK if report.ok else EXIT_FAILED


# -- pair ----------------------------------------------------------------


def _load(path: str, kind: type):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return kind.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not JSON: {exc}") from exc


def cmd_pair(args: argparse.Namespace) -> int:
    C = _load(args.curve, CurveClass)
    D = _load(args.divisor, DivisorClass)
    print(show(pair(C, D)))
    return EXIT_OK


# -- certify -------------------------------------------------------------


def cmd_certify(args: argparse.Namespace) -> int:
    out = args.output or f"{args.pipeline}.json"
    try:
        if args.pipeline == "m10-10-kodaira-zero":
            cert = certify_kodaira_zero_m1010()
            extra: list[str] = []
        else:
            report = extremal_face_check()
            cert = report.certificate
            extra = [f"annihilated ({len(report.annihilated)}): " + ", ".join(report.annihilated)]
    except (StageFailure, FaceCheckFailure) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    text = cert.dumps()
    _write_json(text, out)
    status = EXIT_OK if cert.verified else EXIT_FAILED
    if args.recheck:
        from modcalc.certificate import recheck_certificate

        failures = {k: v for k, v in recheck_certificate(text).items() if v}
        for stage, msgs in failures.items():
            for m in msgs:
                print(f"recheck {stage}: {m}", file=sys.stderr)
        if failures:
            status = EXIT_FAILED
    log = sys.stderr if out in (None, "-") else sys.stdout
    print(f"{args.pipeline}: {cert.summary()}", file=log)
    for line in extra:
        print(line, file=log)
    print(f"conclusion: {cert.conclusion}", file=log)
    return status


# -- slope-scan ----------------------------------------------------------


def parse_range(text: str) -> range:
    """``a`` or ``a:b`` (inclusive)."""
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return range(int(lo), int(hi) + 1)
        v = int(text)
        return range(v, v + 1)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer or a:b range, got {text!r}") from exc


def cmd_slope_scan(args: argparse.Namespace) -> int:
    rows = []
    for g in args.g:
        for d in args.delta:
            if g < 3:
                print(f"skip (g={g}, δ={d}): needs g >= 3", file=sys.stderr)
                continue
            spec = PencilSpec(g + d, d, 0)
            if not spec.is_valid:
                print(f"skip (g={g}, δ={d}): " + "; ".join(f"{v} violated" for v in spec.violations()), file=sys.stderr)
                continue
            try:
                sb = slope_bound(g, d)
            except RatioMismatch as exc:
                print(f"verification failed at (g={g}, δ={d}): {exc}", file=sys.stderr)
                return EXIT_FAILED
            rows.append(sb)
    rows.sort(key=lambda r: (r.g, r.delta))
    if args.json:
        doc = [
            {
                "g": r.g,
                "delta": r.delta,
                "threshold": format_fraction(r.threshold),
                "ratio": format_fraction(r.ratio),
                "lambda": format_fraction(r.lam),
                "boundary": format_fraction(r.boundary_total),
            }
            for r in rows
        ]
        print(json.dumps(doc, separators=(",", ":")))
    else:
        print(f"{'g':>3} {'δ':>2} {'threshold':>10} {'C.lambda':>12} {'C.delta':>12}")
        for r in rows:
            print(
                f"{r.g:>3} {r.delta:>2} {format_fraction(r.threshold):>10} "
                f"{format_fraction(r.lam):>12} {format_fraction(r.boundary_total):>12}"
            )
    return EXIT_OK


# -- class ---------------------------------------------------------------


def cmd_class(args: argparse.Namespace) -> int:
    if args.name == "canonical":
        if args.g is None or args.n is None:
            raise UsageError("canonical needs --g and --n")
        D = canonical_class(ModuliSignature.standard(args.g, args.n))
    elif args.name == "logan":
        if args.g is None:
            raise UsageError("logan needs --g")
        if args.n is not None and args.n != args.g:
            raise UsageError("logan's divisor lives on M(g; 1..g), so --n must equal --g")
        D = logan_class(args.g)
    else:
        if (args.g, args.n) not in ((None, None), (10, None), (10, 0), (None, 0)):
            raise UsageError("the K3 locus class lives on M(10)")
        D = k3_locus_class()
    _write_json(D.dumps(), args.output)
    return EXIT_OK


# -- entry point ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modcalc", description="Exact divisor calculus on moduli of pointed curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="pairings and surface invariants of a pencil test curve")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--numbered", action="store_true", help="label the sections 1..n")
    p.add_argument("--curve-out", metavar="PATH", help="also write the curve class JSON here")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("pair", help="intersection number of a curve file and a divisor file")
    p.add_argument("curve")
    p.add_argument("divisor")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("certify", help="run a certification pipeline")
    p.add_argument("pipeline", choices=PIPELINES)
    p.add_argument("output", nargs="?", help="certificate path ('-' for stdout; default <pipeline>.json)")
    p.add_argument("--recheck", action="store_true", help="re-verify the written document from scratch")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("slope-scan", help="slope thresholds over a (g, δ) grid")
    p.add_argument("--g", type=parse_range, required=True, metavar="A[:B]")
    p.add_argument("--delta", type=parse_range, required=True, metavar="A[:B]")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_slope_scan)

    p = sub.add_parser("class", help="emit a standard divisor class as JSON")
    p.add_argument("--name", choices=("canonical", "logan", "k3"), required=True)
    p.add_argument("--g", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_class)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        _display_b()
        return args.func(args)
    except InvalidSpec as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConsistencyFailure, StageFailure, FaceCheckFailure, RatioMismatch) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except ModcalcError as exc:
        # RuntimeError-type library errors mean a computation failed to verify
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED if isinstance(exc, RuntimeError) else EXIT_USAGE
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
