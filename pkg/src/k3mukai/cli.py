"""Command-line front end: exact numbers, reductions and identity checks.

Every command prints a single JSON document (rationals as exact "p/q"
strings, keys sorted, byte-stable across runs) or, with --format plain,
sorted key=value lines.  Exit codes: 0 on success, 1 when a verification
fails, 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from .lattice import (
    LatticeError,
    fingerprint,
    gram_matrix,
    gram_rank,
    mukai_vector_from_json,
    mukai_vector_to_json,
    nondegenerate_reduction,
    span_dim,
)
from .reduction import (
    KClassInvariants,
    ModuliData,
    dim2_evaluate,
    moduli_data_from_json,
    reduce_to_hilbert,
    reduction_target_to_json,
    segre_cross_check,
)
from .segre_verlinde import (
    SegreParams,
    VerlindeParams,
    check_correspondence,
    segre_number,
    verlinde_number,
)
from .series import SeriesError

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2


class _Parser(argparse.ArgumentParser):
    # treat any "-<digit>..." token as a value, so grids like -3:3 and
    # rationals like -1/2 can be passed without the --flag=value form
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d")


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _parse_alpha(text: str) -> KClassInvariants:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(
            "alpha must be four comma-separated rationals: rank,c1sq,c1L,v2"
        )
    rank, c1sq, c1L, v2 = (_parse_fraction(p) for p in parts)
    return KClassInvariants(rank=rank, c1sq=c1sq, c1L=c1L, v2=v2)


def _parse_grid(text: str) -> list[int]:
    """Integer grids: "3", "1,2,5", "lo:hi" (inclusive) or "lo:hi:step"."""
    values: list[int] = []
    for chunk in text.split(","):
        if ":" in chunk:
            pieces = chunk.split(":")
            if len(pieces) == 2:
                lo, hi, step = int(pieces[0]), int(pieces[1]), 1
            elif len(pieces) == 3:
                lo, hi, step = int(pieces[0]), int(pieces[1]), int(pieces[2])
            else:
                raise argparse.ArgumentTypeError(f"bad grid component: {chunk!r}")
            if step <= 0:
                raise argparse.ArgumentTypeError("grid step must be positive")
            values.extend(range(lo, hi + 1, step))
        elif chunk:
            values.append(int(chunk))
    return values


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "plain":
        for key in sorted(doc):
            print(f"{key}={json.dumps(doc[key], sort_keys=True)}")
    else:
        print(json.dumps(doc, sort_keys=True))


def _load_input(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


# -- single-point commands ----------------------------------------------------


def _cmd_segre(args) -> int:
    params = SegreParams(rho=args.rho, s=args.s, c2=args.c2, c1sq=args.c1sq, n=args.n)
    value = segre_number(params, order=args.order)
    _emit({"value": str(value)}, args.format)
    return EXIT_OK


def _cmd_verlinde(args) -> int:
    params = VerlindeParams(rho=args.rho, r=args.r, chiL=args.chiL, n=args.n)
    value = verlinde_number(params, order=args.order)
    _emit({"value": str(value)}, args.format)
    return EXIT_OK


def _report_doc(report) -> dict:
    return {
        "rho": report.rho,
        "r": report.r,
        "order": report.order,
        "g_identity": report.g_identity_holds,
        "f_identity": report.f_identity_holds,
        "first_discrepant_order": report.first_discrepant_order,
    }


def _cmd_check_sv(args) -> int:
    report = check_correspondence(args.rho, args.r, args.order)
    _emit(_report_doc(report), args.format)
    ok = report.g_identity_holds and report.f_identity_holds
    return EXIT_OK if ok else EXIT_VERIFICATION_FAILED


def _moduli_from_args(args, n: int | None = None) -> ModuliData:
    if args.input:
        return moduli_data_from_json(_load_input(args.input))
    missing = [name for name in ("rho", "alpha") if getattr(args, name) is None]
    if missing:
        raise ValueError(f"missing required flags: {', '.join('--' + m for m in missing)}")
    return ModuliData(
        rho=args.rho,
        n=n if n is not None else args.n,
        alpha=args.alpha,
        Lsq=args.Lsq,
        u=args.u,
    )


def _cmd_reduce(args) -> int:
    target = reduce_to_hilbert(_moduli_from_args(args))
    _emit(reduction_target_to_json(target), args.format)
    return EXIT_OK


def _cmd_dim2(args) -> int:
    value = dim2_evaluate(_moduli_from_args(args, n=1))
    _emit({"value": str(value)}, args.format)
    return EXIT_OK


def _vectors_from_input(path: str):
    obj = _load_input(path)
    v = mukai_vector_from_json(obj["v"])
    xs = [mukai_vector_from_json(item) for item in obj.get("xs", [])]
    return v, xs


def _cmd_fingerprint(args) -> int:
    v, xs = _vectors_from_input(args.input)
    fp = fingerprint(v, xs)
    doc = {"fingerprint": [[str(x) for x in row] for row in fp.matrix]}
    _emit(doc, args.format)
    return EXIT_OK


def _cmd_span_reduce(args) -> int:
    v, xs = _vectors_from_input(args.input)
    ys = nondegenerate_reduction(v, xs)
    full = [v, *ys]
    doc = {
        "ys": [mukai_vector_to_json(y) for y in ys],
        "fingerprint": [[str(x) for x in row] for row in fingerprint(v, ys).matrix],
        "gram_rank": gram_rank(gram_matrix(full)),
        "span_dim": span_dim(full),
    }
    _emit(doc, args.format)
    return EXIT_OK


# -- sweeps ---------------------------------------------------------------------


def _sweep_point_check_sv(point) -> dict:
    rho, r, order = point
    report = check_correspondence(rho, r, order)
    doc = _report_doc(report)
    doc["ok"] = report.g_identity_holds and report.f_identity_holds
    return doc


def _sweep_point_cross_check(point) -> dict:
    rho, s, c2, c1sq = point
    ok = segre_cross_check(rho, s, c2, c1sq)
    return {"rho": rho, "s": s, "c2": c2, "c1sq": c1sq, "ok": ok}


def _run_points(worker, points, jobs: int) -> list[dict]:
    if jobs <= 1 or len(points) < 2:
        return [worker(p) for p in points]
    try:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as executor:
            return list(executor.map(worker, points))
    except (ImportError, NotImplementedError, OSError, PermissionError):
        # restricted environments without process support fall back to serial
        return [worker(p) for p in points]


def _cmd_sweep(args) -> int:
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    if args.target == "check-sv":
        points = [
            (rho, r, args.order) for rho in args.rho for r in args.r
        ]
        results = _run_points(_sweep_point_check_sv, points, jobs)
    else:
        points = [
            (rho, s, c2, c1sq)
            for rho in args.rho
            for s in args.s
            for c2 in args.c2
            for c1sq in args.c1sq
        ]
        results = _run_points(_sweep_point_cross_check, points, jobs)
    failures = [r for r in results if not r["ok"]]
    doc = {
        "command": args.target,
        "total": len(results),
        "failures": failures,
        "all_ok": not failures,
        "points": results,
    }
    _emit(doc, args.format)
    return EXIT_OK if not failures else EXIT_VERIFICATION_FAILED


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="k3mukai",
        description="Exact Segre and Verlinde numbers for sheaf moduli on K3 surfaces",
    )
    parser.add_argument(
        "--format", choices=("json", "plain"), default="json",
        help="output format (default json)",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("segre", help="one Segre number")
    p.add_argument("--rho", type=int, required=True)
    p.add_argument("--s", type=_parse_fraction, required=True)
    p.add_argument("--c2", type=int, required=True)
    p.add_argument("--c1sq", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--order", type=int, default=None, help="working order (default n+4)")
    p.set_defaults(func=_cmd_segre)

    p = sub.add_parser("verlinde", help="one Verlinde number")
    p.add_argument("--rho", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--chiL", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(func=_cmd_verlinde)

    p = sub.add_parser("check-sv", help="verify the Segre-Verlinde correspondence")
    p.add_argument("--rho", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--order", type=int, default=12)
    p.set_defaults(func=_cmd_check_sv)

    p = sub.add_parser("reduce", help="reduce moduli data to Hilbert-scheme data")
    p.add_argument("--rho", type=int)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--alpha", type=_parse_alpha, help="rank,c1sq,c1L,v2")
    p.add_argument("--Lsq", type=_parse_fraction, default=Fraction(0))
    p.add_argument("--u", type=_parse_fraction, default=Fraction(0))
    p.add_argument("--input", help="JSON file with the moduli data")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("dim2", help="closed-form evaluation at n = 1")
    p.add_argument("--rho", type=int)
    p.add_argument("--alpha", type=_parse_alpha, help="rank,c1sq,c1L,v2")
    p.add_argument("--Lsq", type=_parse_fraction, default=Fraction(0))
    p.add_argument("--u", type=_parse_fraction, default=Fraction(0))
    p.add_argument("--input", help="JSON file with the moduli data")
    p.set_defaults(func=_cmd_dim2)

    p = sub.add_parser("fingerprint", help="pairing matrix of v and classes x_i")
    p.add_argument("--input", required=True, help='JSON file {"v": ..., "xs": [...]}')
    p.set_defaults(func=_cmd_fingerprint)

    p = sub.add_parser(
        "span-reduce", help="replace classes so the span becomes non-degenerate"
    )
    p.add_argument("--input", required=True, help='JSON file {"v": ..., "xs": [...]}')
    p.set_defaults(func=_cmd_span_reduce)

    p = sub.add_parser("sweep", help="evaluate a command over a parameter grid")
    p.add_argument("target", choices=("check-sv", "cross-check"))
    p.add_argument("--rho", type=_parse_grid, default=[])
    p.add_argument("--r", type=_parse_grid, default=[])
    p.add_argument("--s", type=_parse_grid, default=[])
    p.add_argument("--c2", type=_parse_grid, default=[])
    p.add_argument("--c1sq", type=_parse_grid, default=[])
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--jobs", type=int, default=None,
                   help="sweep parallelism (default: available cores)")
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT_ERROR
    try:
        return args.func(args)
    except (SeriesError, LatticeError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
