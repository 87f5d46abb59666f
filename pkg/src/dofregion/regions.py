"""Closed-form DoF regions for MIMO BC, IC and CRC without transmitter CSI.

Antenna counts follow one convention throughout: ``M*`` are transmit
antennas, ``N*`` receive antennas, and two-user IC/CRC functions take
``(M1, N1, M2, N2)``.  In the CRC, pair 1 is the primary pair and
transmitter 2 is cognitive (it knows the primary message).

Each outer bound is built from the weighted-sum constraint that the
matching converse yields for that antenna ordering, never from the inner
bound, so ``inner == outer`` on the exact cases is a checked fact rather
than a construction artifact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .polytope import (
    DomainError,
    Halfspace,
    Point2,
    Polytope2D,
    SimplexRegion,
    equals,
    from_halfspaces,
    gap_vertices,
    hull_from_points,
    intersect,
    is_subset,
)

__all__ = [
    "ChannelClass",
    "AntennaConfig",
    "CaseLabel",
    "RegionReport",
    "bc2_no_csit",
    "bc2_csit",
    "bck_no_csit",
    "ic_corner_points",
    "ic_inner",
    "ic_csit",
    "ic_classify",
    "ic_outer",
    "crc_corner_points",
    "crc_inner",
    "crc_csit",
    "crc_classify",
    "crc_outer",
    "ick_region",
    "crck_region",
    "report",
]

Region = Union[Polytope2D, SimplexRegion]


class ChannelClass(str, enum.Enum):
    BC2 = "BC2"
    BCK = "BCK"
    IC2 = "IC2"
    CRC2 = "CRC2"
    ICK = "ICK"
    CRCK = "CRCK"

    @property
    def two_user(self) -> bool:
        return self in (ChannelClass.BC2, ChannelClass.IC2, ChannelClass.CRC2)


@dataclass(frozen=True)
class AntennaConfig:
    """Antenna counts of one channel instance.

    ``tx`` holds ``(M,)`` for broadcast channels and ``(M1, ..., MK)``
    otherwise; ``rx`` holds ``(N1, ..., NK)``.
    """

    channel_class: ChannelClass
    tx: tuple[int, ...]
    rx: tuple[int, ...]

    def __post_init__(self) -> None:
        cls = ChannelClass(self.channel_class)
        object.__setattr__(self, "channel_class", cls)
        tx = tuple(int(m) for m in self.tx)
        rx = tuple(int(n) for n in self.rx)
        object.__setattr__(self, "tx", tx)
        object.__setattr__(self, "rx", rx)
        if any(c < 1 for c in tx + rx):
            raise DomainError("antenna counts must be at least 1")
        if cls in (ChannelClass.BC2, ChannelClass.BCK):
            if len(tx) != 1:
                raise DomainError("a broadcast channel has one transmitter")
            if cls is ChannelClass.BC2 and len(rx) != 2:
                raise DomainError("BC2 needs exactly two receivers")
            if cls is ChannelClass.BCK and len(rx) < 1:
                raise DomainError("BCK needs at least one receiver")
        else:
            if len(tx) != len(rx):
                raise DomainError("need one transmitter per receiver")
            if cls in (ChannelClass.IC2, ChannelClass.CRC2) and len(tx) != 2:
                raise DomainError(f"{cls.value} needs exactly two pairs")
            if cls in (ChannelClass.ICK, ChannelClass.CRCK) and len(tx) < 2:
                raise DomainError(f"{cls.value} needs at least two pairs")

    @classmethod
    def bc(cls, M: int, *N: int) -> "AntennaConfig":
        kind = ChannelClass.BC2 if len(N) == 2 else ChannelClass.BCK
        return cls(kind, (M,), tuple(N))

    @classmethod
    def ic(cls, M1: int, N1: int, M2: int, N2: int) -> "AntennaConfig":
        return cls(ChannelClass.IC2, (M1, M2), (N1, N2))

    @classmethod
    def crc(cls, M1: int, N1: int, M2: int, N2: int) -> "AntennaConfig":
        return cls(ChannelClass.CRC2, (M1, M2), (N1, N2))

    @property
    def users(self) -> int:
        return len(self.rx)

    @property
    def counts(self) -> tuple[int, ...]:
        """Counts in command-line order: ``M N1 N2`` or ``M1 N1 M2 N2``."""
        if self.channel_class in (ChannelClass.BC2, ChannelClass.BCK):
            return self.tx + self.rx
        return tuple(c for pair in zip(self.tx, self.rx) for c in pair)

    @property
    def max_antennas(self) -> int:
        return max(self.tx + self.rx)


@dataclass(frozen=True)
class CaseLabel:
    channel_class: ChannelClass
    case_id: str
    exact: bool
    theorem_ref: str


@dataclass(frozen=True)
class RegionReport:
    config: AntennaConfig
    label: CaseLabel
    inner: Optional[Region]
    outer: Optional[Region]
    csit: Optional[Region] = None
    corner_points: Optional[tuple[Point2, Point2]] = None
    gap: tuple[Point2, ...] = ()
    flags: tuple[str, ...] = field(default_factory=tuple)


def _pos(x: int) -> int:
    return max(x, 0)


def _box_and(caps: tuple[int, int], *extra: Halfspace) -> Polytope2D:
    return from_halfspaces((Halfspace.of(1, 0, caps[0]), Halfspace.of(0, 1, caps[1])) + extra)


def _weighted(x_intercept: int, y_intercept: int) -> Halfspace:
    """``d1/x + d2/y <= 1`` scaled to integers: ``y*d1 + x*d2 <= x*y``."""
    return Halfspace.of(y_intercept, x_intercept, x_intercept * y_intercept)


def _sum_le(bound: int) -> Halfspace:
    return Halfspace.of(1, 1, bound)


# -- broadcast channel -----------------------------------------------------


def bc2_no_csit(M: int, N1: int, N2: int) -> Polytope2D:
    """Time-division triangle with intercepts ``min(M, N1)`` and ``min(M, N2)``."""
    return hull_from_points([Point2(min(M, N1), 0), Point2(0, min(M, N2))])


def bc2_csit(M: int, N1: int, N2: int) -> Polytope2D:
    """Perfect-CSIT region: per-user caps and ``d1 + d2 <= min(M, N1 + N2)``."""
    return _box_and((min(M, N1), min(M, N2)), _sum_le(min(M, N1 + N2)))


def bck_no_csit(M: int, N: Sequence[int]) -> SimplexRegion:
    if not N:
        raise DomainError("need at least one receiver")
    return SimplexRegion.from_intercepts(min(M, n) for n in N)


# -- interference channel --------------------------------------------------


def ic_corner_points(M1: int, N1: int, M2: int, N2: int) -> tuple[Point2, Point2]:
    """Zero-forcing corner points.

    ``P1`` gives user 1 its full ``min(M1, N1)`` streams and user 2 what
    fits in the leftover receive dimensions; ``P2`` is the mirror image.
    """
    p1 = Point2(
        min(M1, N1),
        min(N2, N1 - _pos(_pos(N1 - M1) - M2)) - min(N2, N1, M1),
    )
    p2 = Point2(
        min(N1, N2 - _pos(_pos(N2 - M2) - M1)) - min(N1, N2, M2),
        min(N2, M2),
    )
    return p1, p2


def ic_inner(M1: int, N1: int, M2: int, N2: int) -> Polytope2D:
    p1, p2 = ic_corner_points(M1, N1, M2, N2)
    return hull_from_points([Point2(min(M1, N1), 0), p1, p2, Point2(0, min(M2, N2))])


def ic_csit(M1: int, N1: int, M2: int, N2: int) -> Polytope2D:
    # per-user caps read min(Mi, Ni); the sum bound is the four-term minimum
    total = min(M1 + M2, N1 + N2, max(M1, N2), max(M2, N1))
    return _box_and((min(M1, N1), min(M2, N2)), _sum_le(total))


_IC_CASES = {
    # case_id: (exact, theorem_ref)
    "IC-A": (True, "IC region, case N1<=M1, N2<=M2"),
    "IC-B1": (True, "IC region, case N1>M1, N2<=M2, N2<=N1"),
    "IC-B2": (False, "IC outer bound, case M2>=N2>N1>M1"),
    "IC-C1": (True, "IC region, case N2>M2, N1<=M1, N1<=N2 (mirror of N1>M1, N2<=M2, N2<=N1)"),
    "IC-C2": (False, "IC outer bound, case M1>=N1>N2>M2 (mirror of M2>=N2>N1>M1)"),
    "IC-D1": (True, "IC region, case N1,N2>M1,M2"),
    "IC-D2": (False, "IC outer bound, case N1>M1>=N2>M2; exact when M1=N2"),
    "IC-D3": (False, "IC outer bound, case N2>M2>=N1>M1 (mirror); exact when M2=N1"),
}


def _ic_case(M1: int, N1: int, M2: int, N2: int) -> str:
    if N1 <= M1 and N2 <= M2:
        return "IC-A"
    if N1 > M1 and N2 <= M2:
        return "IC-B1" if N2 <= N1 else "IC-B2"
    if N1 <= M1 and N2 > M2:
        return "IC-C1" if N1 <= N2 else "IC-C2"
    if N1 > M2 and N2 > M1:
        return "IC-D1"
    if N1 > M2:  # and N2 <= M1, hence N1 > M1 >= N2 > M2
        return "IC-D2"
    return "IC-D3"  # N2 > M1, N1 <= M2: N2 > M2 >= N1 > M1


def ic_classify(M1: int, N1: int, M2: int, N2: int) -> CaseLabel:
    case = _ic_case(M1, N1, M2, N2)
    exact, ref = _IC_CASES[case]
    if case == "IC-D2":
        exact = M1 == N2
    elif case == "IC-D3":
        exact = M2 == N1
    return CaseLabel(ChannelClass.IC2, case, exact, ref)


def _ic_outer_user1_view(M1: int, N1: int, M2: int, N2: int, case: str) -> Polytope2D:
    """Outer bound for the cases stated with user 1 as the weaker receiver."""
    caps = (min(M1, N1), min(M2, N2))
    if case == "IC-A":
        # transmitter cooperation: the two-user BC with M1+M2 antennas
        return _box_and(caps, _weighted(min(M1 + M2, N1), min(M1 + M2, N2)))
    if case == "IC-B1":
        if N2 < M1:
            return _box_and(caps, _weighted(M1, N2))
        return _box_and(caps, _sum_le(N2))
    if case == "IC-B2":
        return from_halfspaces([Halfspace.of(1, 0, M1), _weighted(N1, N2)])
    if case == "IC-D1":
        return ic_csit(M1, N1, M2, N2)
    if case == "IC-D2":
        return from_halfspaces(
            [Halfspace.of(1, 0, M1), Halfspace.of(0, 1, M2), _weighted(M1, N2)]
        )
    raise AssertionError(case)


_MIRROR = {"IC-C1": "IC-B1", "IC-C2": "IC-B2", "IC-D3": "IC-D2"}


def ic_outer(M1: int, N1: int, M2: int, N2: int) -> Polytope2D:
    """Outer bound as the converse for the classified case states it.

    On exact cases this coincides with :func:`ic_inner`; mirrored cases
    are computed on the swapped channel and swapped back.
    """
    case = _ic_case(M1, N1, M2, N2)
    if case in _MIRROR:
        return _ic_outer_user1_view(M2, N2, M1, N1, _MIRROR[case]).swapped()
    return _ic_outer_user1_view(M1, N1, M2, N2, case)


# -- cognitive radio channel ----------------------------------------------


def crc_corner_points(M1: int, N1: int, M2: int, N2: int) -> tuple[Point2, Point2]:
    """``P1`` lets both transmitters serve the primary; ``P2`` equals the IC's."""
    p1 = Point2(min(N1, M1 + M2), 0)
    _, p2 = ic_corner_points(M1, N1, M2, N2)
    return p1, p2


def crc_inner(M1: int, N1: int, M2: int, N2: int) -> Polytope2D:
    p1, p2 = crc_corner_points(M1, N1, M2, N2)
    return hull_from_points([p1, p2, Point2(0, min(M2, N2))])


def crc_csit(M1: int, N1: int, M2: int, N2: int) -> Polytope2D:
    total = min(M1 + M2, N1 + N2, max(M2, N1))
    return _box_and((min(M1 + M2, N1), min(M2, N2)), _sum_le(total))


_CRC_CASES = {
    "CRC-A": (True, "CRC region, case N2<=M2"),
    "CRC-B1": (True, "CRC region, case N2>M2, M1>=N1, N1<=N2"),
    "CRC-B2": (False, "CRC outer bound, case M1>=N1>N2>M2"),
    "CRC-C1": (False, "CRC outer bound, case N1>M1, N2>M2, N2<min(N1,M1+M2)"),
    "CRC-C2a": (True, "CRC region, case N1>M1, N2>M2, N2>=min(N1,M1+M2), N1>=M2"),
    "CRC-C2b": (True, "CRC region, case N1>M1, N2>M2, N2>=min(N1,M1+M2), M2>N1"),
}


def _crc_case(M1: int, N1: int, M2: int, N2: int) -> str:
    if N2 <= M2:
        return "CRC-A"
    if M1 >= N1:
        return "CRC-B1" if N1 <= N2 else "CRC-B2"
    if N2 < min(N1, M1 + M2):
        return "CRC-C1"
    return "CRC-C2a" if N1 >= M2 else "CRC-C2b"


def crc_classify(M1: int, N1: int, M2: int, N2: int) -> CaseLabel:
    case = _crc_case(M1, N1, M2, N2)
    exact, ref = _CRC_CASES[case]
    return CaseLabel(ChannelClass.CRC2, case, exact, ref)


def crc_outer(M1: int, N1: int, M2: int, N2: int) -> Polytope2D:
    """Outer bound as the converse for the classified case states it."""
    case = _crc_case(M1, N1, M2, N2)
    cap2 = Halfspace.of(0, 1, min(M2, N2))
    if case == "CRC-A":
        # transmitter cooperation: the two-user BC with M1+M2 antennas
        return from_halfspaces([cap2, _weighted(min(N1, M1 + M2), N2)])
    if case == "CRC-B1":
        if M2 > N1:
            return from_halfspaces([cap2, _weighted(N1, M2)])
        return from_halfspaces([cap2, _sum_le(N1)])
    if case == "CRC-B2":
        return from_halfspaces([cap2, _weighted(N1, N2)])
    if case == "CRC-C1" or N2 == min(N1, M1 + M2):
        return from_halfspaces([cap2, _weighted(min(N1, M1 + M2), N2)])
    if case == "CRC-C2a":
        return crc_csit(M1, N1, M2, N2)
    return from_halfspaces([cap2, _weighted(N1, M2)])  # CRC-C2b


# -- K users ---------------------------------------------------------------


def _check_k(M: Sequence[int], N: Sequence[int]) -> None:
    if len(M) != len(N):
        raise DomainError("need one transmitter per receiver")
    if len(M) < 2:
        raise DomainError("K-user regions need K >= 2")


def ick_region(M: Sequence[int], N: Sequence[int]) -> Optional[SimplexRegion]:
    """Known only when every receiver is the bottleneck (``Ni <= Mi``)."""
    _check_k(M, N)
    if any(n > m for m, n in zip(M, N)):
        return None
    return SimplexRegion.from_intercepts(N)


def crck_region(M: Sequence[int], N: Sequence[int]) -> Optional[SimplexRegion]:
    """Known only when every cognitive pair has ``Mi >= Ni`` (``i > 1``)."""
    _check_k(M, N)
    if any(n > m for m, n in zip(M[1:], N[1:])):
        return None
    return SimplexRegion.from_intercepts([min(sum(M), N[0])] + list(N[1:]))


# -- bundled report --------------------------------------------------------

_M1_FLAG = "single transmit antenna: the broadcast model assumes M > 1"


def report(config: AntennaConfig, *, intersect_csit: bool = False) -> RegionReport:
    """Classify ``config`` and collect every region known for it.

    With ``intersect_csit`` the outer bound of a two-user IC/CRC is
    replaced by its intersection with the perfect-CSIT region, which is
    still a valid outer bound and can be tighter.
    """
    cls = config.channel_class
    if cls is ChannelClass.BC2:
        M, (N1, N2) = config.tx[0], config.rx
        region = bc2_no_csit(M, N1, N2)
        label = CaseLabel(cls, "BC", True, "BC region, two users")
        corners = (Point2(min(M, N1), 0), Point2(0, min(M, N2)))
        flags = (_M1_FLAG,) if M == 1 else ()
        return RegionReport(config, label, region, region, bc2_csit(M, N1, N2), corners, (), flags)
    if cls is ChannelClass.BCK:
        M = config.tx[0]
        region = bck_no_csit(M, config.rx)
        label = CaseLabel(cls, "BCK", True, "BC region, K users")
        flags = (_M1_FLAG,) if M == 1 else ()
        return RegionReport(config, label, region, region, flags=flags)
    if cls in (ChannelClass.ICK, ChannelClass.CRCK):
        fn = ick_region if cls is ChannelClass.ICK else crck_region
        region = fn(config.tx, config.rx)
        name = cls.value
        if region is None:
            hyp = "Ni<=Mi for all i" if cls is ChannelClass.ICK else "Mi>=Ni for all i>1"
            label = CaseLabel(cls, f"{name}-UNKNOWN", False, f"{name}: no result unless {hyp}")
        else:
            hyp = "Ni<=Mi for all i" if cls is ChannelClass.ICK else "Mi>=Ni for all i>1"
            label = CaseLabel(cls, name, True, f"{name} region, case {hyp}")
        return RegionReport(config, label, region, region)

    (M1, M2), (N1, N2) = config.tx, config.rx
    if cls is ChannelClass.IC2:
        label = ic_classify(M1, N1, M2, N2)
        inner, outer = ic_inner(M1, N1, M2, N2), ic_outer(M1, N1, M2, N2)
        csit = ic_csit(M1, N1, M2, N2)
        corners = ic_corner_points(M1, N1, M2, N2)
    else:
        label = crc_classify(M1, N1, M2, N2)
        inner, outer = crc_inner(M1, N1, M2, N2), crc_outer(M1, N1, M2, N2)
        csit = crc_csit(M1, N1, M2, N2)
        corners = crc_corner_points(M1, N1, M2, N2)
    flags: tuple[str, ...] = ()
    if intersect_csit:
        outer = intersect(outer, csit)
        flags = ("outer bound intersected with the perfect-CSIT region (tool-derived)",)
    if not is_subset(inner, outer):
        raise AssertionError(f"inner bound escapes outer bound for {config}")
    if label.exact and not equals(inner, outer):
        raise AssertionError(f"exact case {label.case_id} with inner != outer for {config}")
    gap = tuple(gap_vertices(outer, inner))
    return RegionReport(config, label, inner, outer, csit, corners, gap, flags)
