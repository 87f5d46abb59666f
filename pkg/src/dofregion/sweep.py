"""Exhaustive invariant sweeps over small antenna configurations.

The outer-only predicates below restate the known list of open antenna
orderings directly as inequalities.  They share no code with the case
classifier, so agreement between the two is evidence rather than a
tautology.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from .polytope import DomainError, equals, is_subset
from .regions import (
    bc2_csit,
    bc2_no_csit,
    crc_classify,
    crc_corner_points,
    crc_csit,
    crc_inner,
    crc_outer,
    ic_classify,
    ic_corner_points,
    ic_csit,
    ic_inner,
    ic_outer,
)

__all__ = [
    "MAX_SWEEP_ANTENNAS",
    "SweepSummary",
    "ic_outer_only_pattern",
    "crc_outer_only_pattern",
    "sweep",
]

MAX_SWEEP_ANTENNAS = 12

_IC_MIRROR_LABEL = {
    "IC-A": "IC-A",
    "IC-B1": "IC-C1",
    "IC-B2": "IC-C2",
    "IC-C1": "IC-B1",
    "IC-C2": "IC-B2",
    "IC-D1": "IC-D1",
    "IC-D2": "IC-D3",
    "IC-D3": "IC-D2",
}


def ic_outer_only_pattern(M1: int, N1: int, M2: int, N2: int) -> bool:
    """IC orderings for which only an outer bound is known."""
    return (
        M2 >= N2 > N1 > M1
        or M1 >= N1 > N2 > M2
        or N1 > M1 > N2 > M2
        or N2 > M2 > N1 > M1
    )


def crc_outer_only_pattern(M1: int, N1: int, M2: int, N2: int) -> bool:
    """CRC orderings for which only an outer bound is known."""
    return M1 >= N1 > N2 > M2 or (N1 > M1 and N2 > M2 and N2 < min(N1, M1 + M2))


@dataclass
class SweepSummary:
    channel_class: str
    max_antennas: int
    configs: int = 0
    exact: Counter = field(default_factory=Counter)
    outer_only: Counter = field(default_factory=Counter)
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "class": self.channel_class,
            "max_antennas": self.max_antennas,
            "configs": self.configs,
            "exact": dict(sorted(self.exact.items())),
            "outer_only": dict(sorted(self.outer_only.items())),
            "violations": list(self.violations),
            "ok": self.ok,
        }


def _check_ic(cfg: tuple[int, int, int, int], out: SweepSummary) -> None:
    M1, N1, M2, N2 = cfg
    bad = out.violations.append
    label = ic_classify(*cfg)
    inner, outer, csit = ic_inner(*cfg), ic_outer(*cfg), ic_csit(*cfg)
    (out.exact if label.exact else out.outer_only)[label.case_id] += 1

    if not is_subset(inner, outer):
        bad(f"IC {cfg}: inner not inside outer")
    if label.exact and not equals(inner, outer):
        bad(f"IC {cfg}: {label.case_id} is exact but inner != outer")
    if label.exact == ic_outer_only_pattern(*cfg):
        bad(f"IC {cfg}: exactness {label.exact} disagrees with the outer-only list")
    if any(c < 0 for p in ic_corner_points(*cfg) for c in p):
        bad(f"IC {cfg}: negative corner point")

    mirror = (M2, N2, M1, N1)
    if ic_classify(*mirror).case_id != _IC_MIRROR_LABEL[label.case_id]:
        bad(f"IC {cfg}: mirrored label mismatch")
    for name, fn, here in (("inner", ic_inner, inner), ("outer", ic_outer, outer), ("csit", ic_csit, csit)):
        if not equals(fn(*mirror), here.swapped()):
            bad(f"IC {cfg}: {name} not swap-symmetric")

    if not is_subset(inner, crc_inner(*cfg)):
        bad(f"IC {cfg}: ic_inner not inside crc_inner")
    if not is_subset(csit, crc_csit(*cfg)):
        bad(f"IC {cfg}: ic_csit not inside crc_csit")
    if label.case_id == "IC-D1" and not equals(inner, csit):
        bad(f"IC {cfg}: D1 inner != csit")
    if label.case_id == "IC-B1" and N2 >= M1 and not equals(inner, csit):
        bad(f"IC {cfg}: B1 with N2>=M1 but inner != csit")
    if label.case_id == "IC-D2" and M1 == N2 and not equals(inner, outer):
        bad(f"IC {cfg}: D2 boundary M1=N2 but inner != outer")


def _check_crc(cfg: tuple[int, int, int, int], out: SweepSummary) -> None:
    bad = out.violations.append
    label = crc_classify(*cfg)
    inner, outer = crc_inner(*cfg), crc_outer(*cfg)
    (out.exact if label.exact else out.outer_only)[label.case_id] += 1
    if not is_subset(inner, outer):
        bad(f"CRC {cfg}: inner not inside outer")
    if label.exact and not equals(inner, outer):
        bad(f"CRC {cfg}: {label.case_id} is exact but inner != outer")
    if label.exact == crc_outer_only_pattern(*cfg):
        bad(f"CRC {cfg}: exactness {label.exact} disagrees with the outer-only list")
    if any(c < 0 for p in crc_corner_points(*cfg) for c in p):
        bad(f"CRC {cfg}: negative corner point")


def _check_bc2(cfg: tuple[int, int, int], out: SweepSummary) -> None:
    M, N1, N2 = cfg
    no_csit, csit = bc2_no_csit(*cfg), bc2_csit(*cfg)
    out.exact["BC"] += 1
    if not is_subset(no_csit, csit):
        out.violations.append(f"BC2 {cfg}: no-CSIT region not inside CSIT region")
    if equals(no_csit, csit) != (M <= min(N1, N2)):
        out.violations.append(f"BC2 {cfg}: CSIT equality does not match M <= min(N1, N2)")


def sweep(channel_class: str, max_antennas: int) -> SweepSummary:
    """Check every config with antenna counts in ``1 .. max_antennas``.

    ``channel_class`` is ``"ic"``, ``"crc"`` or ``"bc2"``.
    """
    if not 1 <= max_antennas <= MAX_SWEEP_ANTENNAS:
        raise DomainError(f"max_antennas must be in 1..{MAX_SWEEP_ANTENNAS}")
    checks = {"ic": (_check_ic, 4), "crc": (_check_crc, 4), "bc2": (_check_bc2, 3)}
    if channel_class not in checks:
        raise DomainError(f"sweep class must be one of {sorted(checks)}")
    check, arity = checks[channel_class]
    out = SweepSummary(channel_class, max_antennas)
    for cfg in itertools.product(range(1, max_antennas + 1), repeat=arity):
        out.configs += 1
        check(cfg, out)
    return out
