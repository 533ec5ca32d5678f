"""``rl-alg``: decompose, dualize, plot and verify a root locus from the shell."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction

from .decompose import DegenerateInputError
from .dual import assemble_adrl, dualize_component
from .poly import PolynomialSyntaxError
from .report import (
    csv_rows,
    decomposition_json,
    finite_marks,
    svg_document,
    traced_components,
)
from .rootlocus import InvalidTransferFunction, TransferFunction, decompose_root_locus
from .verify import run_checks

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_VERIFY = 3

log = logging.getLogger("rlalg")


class InputError(ValueError):
    pass


def coefficient_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(c.strip()) for c in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad coefficient list {text!r}: {exc}") from None


def bbox_arg(text: str) -> tuple[float, float, float, float]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad bounding box {text!r}") from None
    if len(vals) != 4 or not (vals[1] > vals[0] and vals[3] > vals[2]):
        raise argparse.ArgumentTypeError("bounding box must be x0,x1,y0,y1 with x0<x1 and y0<y1")
    return vals


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--num", required=True, type=coefficient_list,
                        help="numerator coefficients, highest degree first (e.g. 1,1)")
    common.add_argument("--den", required=True, type=coefficient_list,
                        help="monic denominator coefficients, highest degree first (e.g. 1,0,0)")
    common.add_argument("--out", help="write to this file instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(
        prog="rl-alg",
        description="Algebraic root locus of G(s) = num(s)/den(s): irreducible components, "
                    "initial/terminal points and the dual root locus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="components of the projective root locus")
    p.add_argument("--dual", action="store_true", help="include the dual root locus")
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("dual", parents=[common], help="components plus the dual root locus")
    p.add_argument("--dual", action="store_true", help=argparse.SUPPRESS)
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("plot", parents=[common], help="trace the components to SVG or CSV")
    p.add_argument("--dual", action="store_true", help="plot the dual root locus in the (u, v) plane")
    p.add_argument("--format", choices=["svg", "csv"], default="svg")
    p.add_argument("--bbox", type=bbox_arg, default=(-5.0, 3.0, -4.0, 4.0),
                   help="x0,x1,y0,y1 (default -5,3,-4,4)")
    p.add_argument("--resolution", type=int, default=256, help="grid cells per side (>= 8)")

    p = sub.add_parser("verify", parents=[common], help="numeric and structural self-checks")
    p.add_argument("--samples", type=int, default=100, help="gain samples on [-10, 10]")
    p.add_argument("--tol", type=float, default=1e-8, help="normalized residual tolerance")
    p.add_argument("--no-dual", action="store_true", help="skip bidual and degree-law checks")
    return parser


def _transfer_function(args) -> TransferFunction:
    try:
        return TransferFunction(args.num, args.den)
    except InvalidTransferFunction as exc:
        raise InputError(str(exc)) from None


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {out}: {exc}") from None


def _analyse(args, want_dual: bool):
    tf = _transfer_function(args)
    timings = {}
    t0 = time.perf_counter()
    try:
        dec = decompose_root_locus(tf)
    except DegenerateInputError as exc:
        raise InputError(str(exc)) from None
    timings["decompose_s"] = round(time.perf_counter() - t0, 6)
    log.info("%d components in %.3fs", len(dec.components), timings["decompose_s"])
    adrl = None
    if want_dual:
        t0 = time.perf_counter()
        adrl = assemble_adrl([dualize_component(c) for c in dec.components])
        timings["dual_s"] = round(time.perf_counter() - t0, 6)
        log.info("dual components in %.3fs", timings["dual_s"])
    return dec, adrl, timings


def cmd_report(args) -> int:
    dec, adrl, timings = _analyse(args, args.command == "dual" or args.dual)
    doc = decomposition_json(dec, adrl, timings)
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_plot(args) -> int:
    if args.resolution < 8:
        raise InputError("resolution must be at least 8")
    dec, adrl, _ = _analyse(args, args.dual)
    if args.dual:
        curves = [dc.affine_equation for dc in adrl.components]
        axes = ("u", "v")
        marks = finite_marks(adrl.initial, adrl.terminal)
        title = "Algebraic dual root locus"
    else:
        curves = [c.affine_equation for c in dec.components]
        axes = ("x", "y")
        marks = finite_marks(dec.merged_points("initial"), dec.merged_points("terminal"))
        title = "Root locus"
    traces = traced_components(curves, args.bbox, args.resolution, *axes)
    if args.format == "csv":
        text = "\n".join(csv_rows(traces)) + "\n"
    else:
        labels = [f"{'?' if f is None else f.format()} = 0" for f in curves]
        text = svg_document(traces, labels, args.bbox, title, axes, marks)
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.samples < 1:
        raise InputError("--samples must be positive")
    dec, _, _ = _analyse(args, False)
    results = run_checks(dec, samples=args.samples, tol=args.tol, dual=not args.no_dual)
    text = "\n".join(r.line() for r in results) + "\n"
    failed = [r for r in results if r.status == "fail"]
    text += f"{'FAILED' if failed else 'OK'}: {len(failed)} of {len(results)} checks failed\n"
    _emit(text, args.out)
    return EXIT_VERIFY if failed else EXIT_OK


COMMANDS = {"decompose": cmd_report, "dual": cmd_report, "plot": cmd_plot, "verify": cmd_verify}


LIST_OPTIONS = ("--num", "--den", "--bbox")


def _glue_lists(argv: list[str]) -> list[str]:
    """Let ``--bbox -3,1,-2,2`` through: argparse reads a leading minus as an option."""
    out = []
    it = iter(argv)
    for a in it:
        if a in LIST_OPTIONS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_lists(sys.argv[1:] if argv is None else list(argv)))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (InputError, PolynomialSyntaxError) as exc:
        print(f"rl-alg: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001 - report, do not crash with a traceback
        log.debug("internal failure", exc_info=True)
        print(f"rl-alg: internal failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
