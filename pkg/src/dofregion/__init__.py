"""Degrees-of-freedom regions of two-user MIMO broadcast, interference and
cognitive radio channels without transmitter channel knowledge.

Regions are exact rational polygons; a Monte Carlo zero-forcing oracle and
a rate simulator cross-check them numerically.
"""

from .achievability import (
    FeasibilityReport,
    GridCheck,
    TimeSharingCertificate,
    certify_corner,
    inner_bound_grid_check,
    zf_feasible,
)
from .polytope import (
    DomainError,
    Halfspace,
    Point2,
    Polytope2D,
    SimplexRegion,
    contains,
    equals,
    from_halfspaces,
    gap_vertices,
    hull_from_points,
    intersect,
    is_subset,
    simplex_subset,
)
from .ratesim import SlopeEstimate, SnrGrid, estimate_slope, p2p_rate, scheme_rate
from .regions import (
    AntennaConfig,
    CaseLabel,
    ChannelClass,
    RegionReport,
    bc2_csit,
    bc2_no_csit,
    bck_no_csit,
    crc_classify,
    crc_corner_points,
    crc_csit,
    crc_inner,
    crc_outer,
    crck_region,
    ic_classify,
    ic_corner_points,
    ic_csit,
    ic_inner,
    ic_outer,
    ick_region,
    report,
)
from .sweep import SweepSummary, sweep

__version__ = "0.1.0"
