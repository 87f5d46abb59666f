"""Command-line front end.

Exit codes: 0 success, 1 a sweep found a violation or a verify/slope
search failed, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from . import serialize as ser
from .achievability import certify_corner
from .polytope import DomainError, Point2, Polytope2D, SimplexRegion, gap_vertices, is_subset, rational, simplex_subset
from .ratesim import SnrGrid, estimate_slope, p2p_rate, scheme_rate
from .regions import AntennaConfig, ChannelClass, report
from .sweep import sweep

SEED_ENV = "DOFREGION_SEED"
CLASSES = ("bc", "ic", "crc", "ick", "crck")

# name -> (representative?, [(label, class, counts)])
PRESETS = {
    "fig2a": (True, [("bc", "bc", (2, 3, 4))]),  # M <= N1 <= N2
    "fig2b": (True, [("bc", "bc", (3, 4, 2))]),  # N2 < M <= N1
    "fig2c": (True, [("bc", "bc", (4, 3, 2))]),  # N2 <= N1 < M < N1+N2
    "fig2d": (True, [("bc", "bc", (5, 3, 2))]),  # N2 <= N1 < N1+N2 <= M
    "fig3": (True, [("ic", "ic", (2, 4, 5, 3))]),
    "fig4": (False, [("crc", "crc", (3, 4, 3, 2)), ("ic", "ic", (3, 4, 3, 2))]),
    "fig5": (False, [("ic", "ic", (2, 3, 4, 4))]),
    "fig6": (False, [("crc", "crc", (3, 5, 2, 4)), ("ic", "ic", (3, 5, 2, 4))]),
    "fig7": (False, [("crc", "crc", (2, 3, 4, 5)), ("ic", "ic", (2, 3, 4, 5))]),
}


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _rational_arg(text: str) -> Fraction:
    try:
        return rational(Fraction(text))
    except (ValueError, ZeroDivisionError, OverflowError, DomainError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def build_config(cls: str, counts: Sequence[int], tx=None, rx=None) -> AntennaConfig:
    """Turn a command-line class name and antenna counts into a config."""
    counts = list(counts or [])
    if cls in ("ick", "crck"):
        if tx is not None or rx is not None:
            if counts or tx is None or rx is None:
                raise UsageError(f"{cls} takes either --tx/--rx lists or M1 N1 M2 N2 ... counts")
            M, N = list(tx), list(rx)
        else:
            if len(counts) < 4 or len(counts) % 2:
                raise UsageError(f"{cls} needs pairs M1 N1 M2 N2 ... (at least two)")
            M, N = counts[0::2], counts[1::2]
        kind = ChannelClass.ICK if cls == "ick" else ChannelClass.CRCK
        return AntennaConfig(kind, tuple(M), tuple(N))
    if tx is not None or rx is not None:
        raise UsageError("--tx/--rx are only for ick and crck")
    if cls == "bc":
        if len(counts) < 2:
            raise UsageError("bc needs M N1 [N2 ...]")
        return AntennaConfig.bc(counts[0], *counts[1:])
    if cls in ("ic", "crc"):
        if len(counts) != 4:
            raise UsageError(f"{cls} needs exactly four counts: M1 N1 M2 N2")
        return getattr(AntennaConfig, cls)(*counts)
    raise UsageError(f"unknown channel class {cls!r}")


def _command_echo(args: argparse.Namespace) -> dict:
    skip = {"func", "timing", "output"}
    echo = {}
    for key, value in sorted(vars(args).items()):
        if key in skip:
            continue
        if isinstance(value, Fraction):
            value = ser.frac_str(value)
        elif isinstance(value, (list, tuple)):
            value = [ser.frac_str(v) if isinstance(v, Fraction) else v for v in value]
        echo[key] = value
    return echo


# -- subcommands -----------------------------------------------------------


def _targets(args) -> list[tuple[str, AntennaConfig, bool]]:
    if args.preset:
        if args.cls or args.counts or args.tx or args.rx:
            raise UsageError("--preset replaces the class and antenna counts")
        representative, items = PRESETS[args.preset]
        return [(name, build_config(cls, counts), representative) for name, cls, counts in items]
    if not args.cls:
        raise UsageError("give a channel class and antenna counts, or --preset")
    return [(args.cls, build_config(args.cls, args.counts, args.tx, args.rx), False)]


def cmd_region(args) -> tuple[int, object]:
    targets = _targets(args)
    reports = [(name, report(cfg, intersect_csit=args.intersect_csit), rep) for name, cfg, rep in targets]
    if args.format == "csv":
        wanted = ("inner", "outer", "csit") if args.which == "all" else (args.which,)
        multi = len(reports) > 1
        regions = {}
        for name, rep, _ in reports:
            for w in wanted:
                region = getattr(rep, w)
                if isinstance(region, SimplexRegion) and region.dim != 2:
                    raise UsageError("CSV output needs two-user regions")
                regions[f"{name}.{w}" if multi else w] = region
        return 0, ser.plot_csv(regions)
    result = {
        "reports": [
            {"name": name, "representative": rep_flag, **ser.report_json(rep, args.which)}
            for name, rep, rep_flag in reports
        ]
    }
    return 0, result


def cmd_classify(args) -> tuple[int, object]:
    cfg = build_config(args.cls, args.counts, args.tx, args.rx)
    rep = report(cfg)
    return 0, {"config": ser.config_json(cfg), "label": ser.label_json(rep.label)}


def _selector(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"selector must look like class:counts:kind, got {text!r}")
    cls, counts, kind = parts
    if cls not in CLASSES:
        raise UsageError(f"unknown channel class {cls!r} in selector")
    try:
        nums = _int_list(counts)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(str(exc)) from None
    rep = report(build_config(cls, nums))
    if kind == "region":
        if not rep.label.exact:
            raise DomainError(f"{text}: only bounds are known for case {rep.label.case_id}")
        region = rep.inner
    elif kind in ("inner", "outer", "csit"):
        region = getattr(rep, kind)
    else:
        raise UsageError(f"selector kind must be inner, outer, csit or region, got {kind!r}")
    if region is None:
        raise DomainError(f"{text}: region not available for {rep.label.case_id}")
    return region


def cmd_compare(args) -> tuple[int, object]:
    a, b = _selector(args.a), _selector(args.b)
    if isinstance(a, SimplexRegion) and isinstance(b, SimplexRegion) and a.dim == b.dim != 2:
        ab, ba = simplex_subset(a, b), simplex_subset(b, a)
        return 0, {"a": args.a, "b": args.b, "a_subset_b": ab, "b_subset_a": ba, "equal": ab and ba}
    a = a.to_polytope() if isinstance(a, SimplexRegion) else a
    b = b.to_polytope() if isinstance(b, SimplexRegion) else b
    if not (isinstance(a, Polytope2D) and isinstance(b, Polytope2D)):
        raise DomainError("regions have different dimensions")
    ab, ba = is_subset(a, b), is_subset(b, a)
    return 0, {
        "a": args.a,
        "b": args.b,
        "a_subset_b": ab,
        "b_subset_a": ba,
        "equal": ab and ba,
        "a_minus_b": [ser.point_json(p) for p in gap_vertices(a, b)],
        "b_minus_a": [ser.point_json(p) for p in gap_vertices(b, a)],
    }


def cmd_verify(args) -> tuple[int, object]:
    cfg = build_config(args.cls, args.counts, args.tx, args.rx)
    target = Point2(*args.point)
    cert = certify_corner(cfg, target, args.trials, args.seed)
    result = {"config": ser.config_json(cfg), "target": ser.point_json(target), **ser.certificate_json(cert)}
    return (0 if cert is not None else 1), result


def cmd_slope(args) -> tuple[int, object]:
    grid = SnrGrid.parse(args.snr, args.trials)
    result: dict = {"grid": {"points_dB": list(grid.points_dB), "trials_per_point": grid.trials_per_point}}
    if args.cls == "p2p":
        if len(args.counts) != 2 or args.point is not None:
            raise UsageError("p2p mode takes exactly M N and no --point")
        rates = p2p_rate(args.counts[0], args.counts[1], grid, args.seed)
        result.update(mode="p2p", rates=[list(rates)], estimate=ser.slope_json(estimate_slope(grid, rates)))
        return 0, result
    if args.point is None:
        raise UsageError("scheme mode needs --point D1 D2")
    cfg = build_config(args.cls, args.counts, args.tx, args.rx)
    cert = certify_corner(cfg, Point2(*args.point), args.oracle_trials, args.seed)
    result.update(mode="scheme", config=ser.config_json(cfg), certificate=ser.certificate_json(cert))
    if cert is None:
        return 1, result
    rates = scheme_rate(cfg, cert, grid, args.seed)
    result.update(rates=[list(r) for r in rates], estimate=ser.slope_json(estimate_slope(grid, rates)))
    return 0, result


def cmd_sweep(args) -> tuple[int, object]:
    summary = sweep(args.channel_class, args.max_antennas)
    return (0 if summary.ok else 1), summary.as_dict()


# -- parser ----------------------------------------------------------------


def _add_target(p: argparse.ArgumentParser, optional: bool = False, extra: Sequence[str] = ()) -> None:
    p.add_argument("cls", nargs="?" if optional else None, choices=CLASSES + tuple(extra), metavar="CLASS",
                   help=f"channel class: {', '.join(CLASSES + tuple(extra))}")
    p.add_argument("counts", nargs="*", type=int, help="antenna counts: M N1 N2 (bc) or M1 N1 M2 N2")
    p.add_argument("--tx", type=_int_list, help="K-user transmit antennas, e.g. 1,1,1")
    p.add_argument("--rx", type=_int_list, help="K-user receive antennas, e.g. 1,1,1")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--timing", action="store_true", help="add wall-clock timing to JSON output")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="dofregion", description="DoF regions of MIMO BC/IC/CRC without CSIT.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("region", parents=[common], help="compute regions")
    _add_target(p, optional=True)
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--which", choices=("inner", "outer", "csit", "all"), default="all")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--intersect-csit", action="store_true",
                   help="report outer bound intersected with the perfect-CSIT region")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("classify", parents=[common], help="case label and exactness")
    _add_target(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("compare", parents=[common], help="inclusion test between two regions")
    p.add_argument("a", help="selector class:counts:kind, e.g. ic:2,3,4,4:inner")
    p.add_argument("b")
    p.set_defaults(func=cmd_compare)

    seed_help = f"RNG seed (default: ${SEED_ENV} or 0)"
    p = sub.add_parser("verify", parents=[common], help="certify a DoF point by time-shared zero forcing")
    _add_target(p)
    p.add_argument("--point", nargs=2, type=_rational_arg, required=True, metavar=("D1", "D2"))
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, help=seed_help)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("slope", parents=[common], help="estimate pre-log slopes from simulated rates")
    _add_target(p, extra=("p2p",))
    p.add_argument("--point", nargs=2, type=_rational_arg, metavar=("D1", "D2"))
    p.add_argument("--snr", default="30:5:60", help="SNR grid lo:step:hi in dB")
    p.add_argument("--trials", type=int, default=50, help="channel draws per SNR point")
    p.add_argument("--oracle-trials", type=int, default=200)
    p.add_argument("--seed", type=int, help=seed_help)
    p.set_defaults(func=cmd_slope)

    p = sub.add_parser("sweep", parents=[common], help="exhaustive invariant checks")
    p.add_argument("--max-antennas", type=int, required=True, metavar="A")
    p.add_argument("--class", dest="channel_class", choices=("ic", "crc", "bc2"), required=True)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        started = time.perf_counter()
        code, result = args.func(args)
        elapsed = time.perf_counter() - started
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except (DomainError, OverflowError) as exc:
        print(f"dofregion: error: {exc}", file=sys.stderr)
        return 2
    if isinstance(result, str):
        text = result
    else:
        timing = {"seconds": round(elapsed, 6)} if args.timing else None
        text = ser.dumps(ser.envelope(_command_echo(args), result, timing))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


__all__ = ["main", "build_parser", "build_config", "PRESETS"]
