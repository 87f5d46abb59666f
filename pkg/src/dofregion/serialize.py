"""JSON and CSV renderings of regions, reports, certificates and fits.

Rationals are written as ``"num/den"`` strings so nothing exact ever
passes through a float; each exact value is paired with a ``"≈"``
decimal string for people reading the output.  Output is a pure
function of the inputs (no timestamps unless asked for), which keeps
repeated runs byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Mapping, Optional, Union

from .achievability import FeasibilityReport, GridCheck, TimeSharingCertificate
from .polytope import (
    DomainError,
    Halfspace,
    Point2,
    Polytope2D,
    SimplexRegion,
    equals,
    from_halfspaces,
    rational,
)
from .ratesim import SlopeEstimate
from .regions import AntennaConfig, CaseLabel, RegionReport

SCHEMA_VERSION = "1"
DECIMAL_DIGITS = 12
CSV_COLUMNS = ("region", "vertex", "d1_exact", "d2_exact", "d1", "d2")

Region = Union[Polytope2D, SimplexRegion]


def frac_str(q) -> str:
    q = rational(q)
    return f"{q.numerator}/{q.denominator}"


def parse_frac(text: str) -> Fraction:
    """Inverse of :func:`frac_str`; also accepts plain integers like ``"3"``."""
    try:
        num, _, den = str(text).partition("/")
        return rational(Fraction(int(num), int(den) if den else 1))
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"not a rational: {text!r}") from None


def decimal_str(q, digits: int = DECIMAL_DIGITS) -> str:
    """``q`` rounded to ``digits`` significant digits, no exponent."""
    q = rational(q)
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(q.numerator) / Decimal(q.denominator)
    text = format(d, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def point_json(p: Point2) -> dict:
    return {"d1": frac_str(p.d1), "d2": frac_str(p.d2), "≈": [decimal_str(p.d1), decimal_str(p.d2)]}


def point_from_json(doc: Mapping) -> Point2:
    return Point2(parse_frac(doc["d1"]), parse_frac(doc["d2"]))


def halfspace_json(h: Halfspace) -> dict:
    return {"a1": frac_str(h.a1), "a2": frac_str(h.a2), "b": frac_str(h.b), "text": str(h)}


def region_json(region: Optional[Region]) -> Optional[dict]:
    if region is None:
        return None
    if isinstance(region, SimplexRegion):
        return {
            "kind": "simplex",
            "weights": [frac_str(w) for w in region.weights],
            "intercepts": [frac_str(x) for x in region.intercepts()],
            "text": str(region),
        }
    return {
        "kind": "polytope",
        "halfspaces": [halfspace_json(h) for h in region.halfspaces],
        "vertices": [point_json(v) for v in region.vertices],
    }


def region_from_json(doc: Mapping) -> Region:
    """Rebuild a region; the vertex list must agree with the halfspaces."""
    kind = doc.get("kind")
    if kind == "simplex":
        return SimplexRegion(tuple(parse_frac(w) for w in doc["weights"]))
    if kind != "polytope":
        raise DomainError(f"unknown region kind {kind!r}")
    hs = [Halfspace.of(parse_frac(h["a1"]), parse_frac(h["a2"]), parse_frac(h["b"])) for h in doc["halfspaces"]]
    poly = from_halfspaces(hs)
    listed = tuple(point_from_json(v) for v in doc["vertices"])
    if listed != poly.vertices:
        raise DomainError("vertex list does not match the halfspaces")
    return poly


def config_json(config: AntennaConfig) -> dict:
    return {"class": config.channel_class.value, "tx": list(config.tx), "rx": list(config.rx)}


def label_json(label: CaseLabel) -> dict:
    return {
        "class": label.channel_class.value,
        "case": label.case_id,
        "exact": label.exact,
        "theorem_ref": label.theorem_ref,
    }


def report_json(rep: RegionReport, which: str = "all") -> dict:
    """Serialize a report; ``which`` picks inner, outer, csit or all regions."""
    doc: dict[str, Any] = {"config": config_json(rep.config), "label": label_json(rep.label)}
    wanted = ("inner", "outer", "csit") if which == "all" else (which,)
    doc["regions"] = {name: region_json(getattr(rep, name)) for name in wanted}
    if rep.corner_points is not None:
        doc["corner_points"] = [point_json(p) for p in rep.corner_points]
    doc["gap"] = [point_json(p) for p in rep.gap]
    doc["flags"] = list(rep.flags)
    return doc


def feasibility_json(rep: FeasibilityReport) -> dict:
    return {
        "allocation": list(rep.allocation),
        "trials": rep.trials,
        "successes": rep.successes,
        "verdict": rep.verdict,
        "min_singular_ratio": rep.min_singular_ratio,
    }


def certificate_json(cert: Optional[TimeSharingCertificate]) -> dict:
    if cert is None:
        return {"verdict": "search-failed", "phases": []}
    return {
        "verdict": "certified",
        "target": point_json(cert.target),
        "achieved": point_json(cert.achieved()),
        "phases": [
            {"allocation": list(alloc), "weight": frac_str(w), "oracle": feasibility_json(r)}
            for (alloc, w), r in zip(cert.phases, cert.reports)
        ],
    }


def grid_check_json(chk: GridCheck) -> dict:
    return {
        "config": config_json(chk.config),
        "ok": chk.ok,
        "hull_matches": chk.hull_matches,
        "feasible": [list(a) for a in chk.feasible],
        "ambiguous": [list(a) for a in chk.ambiguous],
        "hull": region_json(chk.hull),
        "expected": region_json(chk.expected),
        "witnesses": [point_json(p) for p in chk.witnesses],
        "uncertified": [point_json(p) for p in chk.uncertified],
        "min_singular_ratio": chk.min_singular_ratio,
    }


def slope_json(est: SlopeEstimate) -> dict:
    return {
        "slopes": list(est.slopes),
        "intercepts": list(est.intercepts),
        "residual_rms": list(est.residual_rms),
        "half_width_95": list(est.half_width),
    }


def envelope(command: Mapping, result: Any, timing: Optional[Mapping] = None) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "command": dict(command), "result": result}
    if timing is not None:
        doc["timing"] = dict(timing)
    return doc


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def plot_csv(regions: Mapping[str, Region]) -> str:
    """Closed counterclockwise polygons, one block of rows per region."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for name, region in regions.items():
        if region is None:
            continue
        if isinstance(region, SimplexRegion):
            region = region.to_polytope()
        ring = list(region.vertices) + [region.vertices[0]]
        for k, v in enumerate(ring):
            writer.writerow(
                [name, k, frac_str(v.d1), frac_str(v.d2), decimal_str(v.d1), decimal_str(v.d2)]
            )
    return buf.getvalue()


def regions_equal(a: Region, b: Region) -> bool:
    if isinstance(a, SimplexRegion) or isinstance(b, SimplexRegion):
        return a == b
    return equals(a, b)


__all__ = [
    "SCHEMA_VERSION",
    "CSV_COLUMNS",
    "frac_str",
    "parse_frac",
    "decimal_str",
    "point_json",
    "point_from_json",
    "region_json",
    "region_from_json",
    "config_json",
    "label_json",
    "report_json",
    "feasibility_json",
    "certificate_json",
    "grid_check_json",
    "slope_json",
    "envelope",
    "dumps",
    "plot_csv",
    "regions_equal",
]
