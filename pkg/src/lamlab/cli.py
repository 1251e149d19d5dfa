"""Command line front end: thin drivers over the library modules.

Exit codes: 0 success, 1 usage or domain error, 2 resource cap, 3 failed
check (invalid address, Theorem 3.5 hypothesis failure).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .circle import arc, conjugate_leaf, fmt_angle, parse_angle
from .errors import (
    DEFAULT_MAX_DEPTH,
    DEFAULT_MAX_PERIOD,
    DegenerateMinorError,
    DomainError,
    ResourceCapError,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAP = 2
EXIT_CHECK = 3


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, indent=2) + "\n")


def cmd_minor(args) -> int:
    from . import qml

    try:
        report = qml.minor_report(parse_angle(args.angle))
    except DegenerateMinorError:
        report = {"minor": ["0/1"], "period": 1, "degenerate": True}
    _emit(report)
    return EXIT_OK


def cmd_qml(args) -> int:
    from . import qml

    minors = qml.pairing_of_period(args.period)
    _emit({"period": args.period, "minors": [m.to_json() for m in minors]})
    return EXIT_OK


def _lam_report(p, depth: int, poly_bound: int):
    from . import lamination

    spec = lamination.spec_for(p)
    approx = lamination.build(spec, depth)
    polygons = lamination.polygons_of(spec, poly_bound)
    return spec, approx, approx.to_json(polygons)


def cmd_lam(args) -> int:
    from . import lamination, render

    spec, approx, report = _lam_report(parse_angle(args.angle), args.depth, args.poly_bound)
    _emit(report)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(report, indent=2) + "\n")
    if args.svg:
        polygons = lamination.polygons_of(spec, args.poly_bound)
        svg = render.render_svg(
            approx.leaves,
            (),
            polygons,
            render.RenderStyle(geodesic=args.geodesic, size=args.size),
        )
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg)
    return EXIT_OK


def cmd_mate(args) -> int:
    from . import lamination, mating, render

    mspec = mating.mating_spec(parse_angle(args.p), parse_angle(args.q))
    report = mating.check_theorem_3_5(mspec)
    _emit(report.to_json())
    if args.svg:
        p_leaves = lamination.build(mspec.p_spec, args.depth).leaves
        q_leaves = [
            conjugate_leaf(l) for l in lamination.build(mspec.q_spec, args.depth).leaves
        ]
        svg = render.render_svg(
            p_leaves,
            q_leaves,
            (),
            render.RenderStyle(geodesic=args.geodesic, size=args.size),
        )
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg)
    if args.check_3_5 and not report.thm35_ok:
        return EXIT_CHECK
    return EXIT_OK


def cmd_count(args) -> int:
    from . import symdyn

    if args.mandelbrot is not None:
        _emit(
            {
                "period_dividing": args.mandelbrot,
                "components": symdyn.mandelbrot_component_count(args.mandelbrot),
            }
        )
        return EXIT_OK
    if not args.matrix or args.period is None:
        raise DomainError("count needs --matrix and --period, or --mandelbrot")
    with open(args.matrix, encoding="utf-8") as fh:
        m = symdyn.load_matrix_json(json.load(fh))
    fixed = symdyn.count_fixed(m, args.period)
    report = {
        "period": args.period,
        "fixed": fixed,
        "components": symdyn.component_count_from_points(fixed),
    }
    if args.exact:
        report["exact"] = symdyn.count_exact_period(m, args.period)
    _emit(report)
    return EXIT_OK


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(",") if v != "")


def _address_json(addr) -> dict:
    from . import symdyn

    if isinstance(addr, symdyn.Address24):
        return {
            "scheme": "thm24",
            "m": addr.m,
            "j": list(addr.j),
            "m_seq": list(addr.m_seq),
            "tuning_tail": addr.tuning_tail,
        }
    return {
        "scheme": "s313",
        "m": addr.m,
        "i1": addr.i1,
        "j": list(addr.j),
        "m_seq": list(addr.m_seq),
    }


def cmd_address(args) -> int:
    from . import symdyn

    if args.action == "validate":
        j = _parse_int_list(args.j)
        m_seq = _parse_int_list(args.mseq)
        if args.scheme == "thm24":
            addr = symdyn.Address24(args.m, j, m_seq, tuning_tail=args.tuning_tail)
            verdict = symdyn.validate_thm24(addr)
        else:
            if args.i1 is None:
                raise DomainError("s313 validation needs --i1")
            addr = symdyn.Address313(args.m, args.i1, j, m_seq)
            verdict = symdyn.validate_lemma314(addr)
        _emit(verdict.to_json())
        return EXIT_OK if verdict.valid else EXIT_CHECK
    bounds = {"m": args.m, "N": args.N, "m_max": args.m_max}
    if args.j:
        bounds["j"] = _parse_int_list(args.j)
    else:
        bounds["j_max"] = args.j_max
    if args.scheme == "s313":
        if args.i1 is None:
            raise DomainError("s313 enumeration needs --i1")
        bounds["i1"] = args.i1
    for addr in symdyn.enumerate_addresses(args.scheme, bounds):
        sys.stdout.write(json.dumps(_address_json(addr)) + "\n")
    return EXIT_OK


def cmd_render(args) -> int:
    from . import lamination, render

    p_spec = lamination.spec_for(parse_angle(args.p))
    p_leaves = lamination.build(p_spec, args.depth).leaves
    q_leaves = []
    polygons = lamination.polygons_of(p_spec, args.poly_bound)
    if args.q:
        q_spec = lamination.spec_for(parse_angle(args.q))
        q_leaves = [conjugate_leaf(l) for l in lamination.build(q_spec, args.depth).leaves]
    svg = render.render_svg(
        p_leaves,
        q_leaves,
        polygons,
        render.RenderStyle(geodesic=args.geodesic, size=args.size),
    )
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lamlab",
        description="Exact combinatorics of quadratic invariant laminations and matings",
        allow_abbrev=False,
    )
    parser.add_argument("--max-period", type=int, default=None, help="resource cap on periods")
    parser.add_argument(
        "--max-depth", type=int, default=DEFAULT_MAX_DEPTH, help="resource cap on pullback depth"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_minor = sub.add_parser("minor", help="companion, limb root and tuning data of an angle")
    p_minor.add_argument("angle")
    p_minor.set_defaults(func=cmd_minor)

    p_qml = sub.add_parser("qml", help="Lavaurs pairing up to a period")
    p_qml.add_argument("period", type=int)
    p_qml.set_defaults(func=cmd_qml)

    p_lam = sub.add_parser("lam", help="lamination approximation and polygons")
    p_lam.add_argument("angle")
    p_lam.add_argument("--depth", type=int, default=4)
    p_lam.add_argument("--poly-bound", type=int, default=12)
    p_lam.add_argument("--json", default=None)
    p_lam.add_argument("--svg", default=None)
    p_lam.add_argument("--geodesic", action="store_true")
    p_lam.add_argument("--size", type=int, default=600)
    p_lam.set_defaults(func=cmd_lam)

    p_mate = sub.add_parser("mate", help="mating report for a pair of angles")
    p_mate.add_argument("p")
    p_mate.add_argument("q")
    p_mate.add_argument("--check-3-5", action="store_true", dest="check_3_5")
    p_mate.add_argument("--depth", type=int, default=5)
    p_mate.add_argument("--svg", default=None)
    p_mate.add_argument("--geodesic", action="store_true")
    p_mate.add_argument("--size", type=int, default=600)
    p_mate.set_defaults(func=cmd_mate)

    p_count = sub.add_parser("count", help="subshift and component counting")
    p_count.add_argument("--matrix", default=None)
    p_count.add_argument("--period", type=int, default=None)
    p_count.add_argument("--exact", action="store_true")
    p_count.add_argument("--mandelbrot", type=int, default=None)
    p_count.set_defaults(func=cmd_count)

    p_addr = sub.add_parser("address", help="validate or enumerate renormalization addresses")
    p_addr.add_argument("action", choices=["validate", "enumerate"])
    p_addr.add_argument("--scheme", choices=["thm24", "s313"], required=True)
    p_addr.add_argument("--m", type=int, required=True)
    p_addr.add_argument("--i1", type=int, default=None)
    p_addr.add_argument("--j", default=None)
    p_addr.add_argument("--j-max", type=int, default=2)
    p_addr.add_argument("--mseq", default=None)
    p_addr.add_argument("--tuning-tail", action="store_true", dest="tuning_tail")
    p_addr.add_argument("--N", type=int, default=2)
    p_addr.add_argument("--m-max", type=int, default=8)
    p_addr.set_defaults(func=cmd_address)

    p_render = sub.add_parser("render", help="SVG chord diagram of one or two laminations")
    p_render.add_argument("p")
    p_render.add_argument("q", nargs="?", default=None)
    p_render.add_argument("--depth", type=int, default=5)
    p_render.add_argument("--poly-bound", type=int, default=12)
    p_render.add_argument("--svg", default=None)
    p_render.add_argument("--geodesic", action="store_true")
    p_render.add_argument("--size", type=int, default=600)
    p_render.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.max_period is not None:
        os.environ["LAMLAB_MAX_PERIOD"] = str(args.max_period)
    try:
        if args.command == "address" and args.action == "validate" and (
            args.j is None or args.mseq is None
        ):
            raise DomainError("address validate needs --j and --mseq")
        return args.func(args)
    except ResourceCapError as exc:
        sys.stderr.write(f"resource cap: {exc}\n")
        return EXIT_CAP
    except (DomainError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
