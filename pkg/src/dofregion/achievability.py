"""Monte Carlo zero-forcing oracle.

Transmitters have no channel knowledge, so each one sends its streams
through a random (generic) precoder.  Receiver ``i`` decodes its ``s_i``
streams by projecting out the interference subspace, which works iff

    rank([desired | interference]) == s_i + rank(interference)

for the sampled channel.  For generic continuous fading this is a
probability-one statement, so an allocation either passes every trial or
none of them; a mixed outcome points to a tolerance or degeneracy problem
and is reported as ``ambiguous`` instead of being voted away.

Channel entries and precoders are i.i.d. CN(0, 1) from the counter-based
streams in :mod:`dofregion._rng`, addressed by ``(seed, trial)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import _rng
from .polytope import DomainError, Point2, Polytope2D, equals, gap_vertices, hull_from_points, rational
from .regions import AntennaConfig, ChannelClass, bc2_no_csit, crc_inner, ic_inner

__all__ = [
    "RANK_RTOL",
    "FeasibilityReport",
    "TimeSharingCertificate",
    "GridCheck",
    "zf_feasible",
    "certify_corner",
    "inner_bound_grid_check",
]

RANK_RTOL = 1e-9
_BATCH = 512

Allocation = tuple[int, ...]


@dataclass(frozen=True)
class FeasibilityReport:
    allocation: Allocation
    trials: int
    successes: int
    verdict: str
    min_singular_ratio: float

    @property
    def feasible(self) -> bool:
        return self.verdict == "feasible"


@dataclass(frozen=True)
class TimeSharingCertificate:
    """Phases ``(allocation, weight)`` whose weighted stream counts hit ``target``.

    Weights may sum to less than one; the remainder is idle time.
    """

    target: Point2
    phases: tuple[tuple[Allocation, Fraction], ...]
    reports: tuple[FeasibilityReport, ...]

    def achieved(self) -> Point2:
        d1 = sum((w * s[0] for s, w in self.phases), Fraction(0))
        d2 = sum((w * s[1] for s, w in self.phases), Fraction(0))
        return Point2(d1, d2)


# -- channel sampling ------------------------------------------------------


def _precoder_rows(config: AntennaConfig) -> list[int]:
    cls = config.channel_class
    if cls in (ChannelClass.BC2, ChannelClass.BCK):
        return [config.tx[0]] * config.users
    if cls in (ChannelClass.CRC2, ChannelClass.CRCK):
        # primary streams may leave every transmitter (all of them know the
        # primary message); cognitive streams only their own
        return [sum(config.tx)] + list(config.tx[1:])
    return list(config.tx)


class _Batch:
    """Channels and precoders for a block of trials.

    Stream layout per trial: every channel matrix (receiver-major), then
    one precoder block of ``width`` columns per user.  An allocation uses
    the first ``s_j`` columns of user ``j``'s block, so the draw does not
    depend on the allocation as long as it fits in ``width``.
    """

    def __init__(self, config: AntennaConfig, seed: int, trials: np.ndarray, width: int):
        self.config, self.width = config, width
        stream = _rng.TrialStream(seed, trials)
        K, rx = config.users, config.rx
        if config.channel_class in (ChannelClass.BC2, ChannelClass.BCK):
            M = config.tx[0]
            self.H = [stream.take((rx[i], M)) for i in range(K)]
        else:
            tx = config.tx
            self.H = [[stream.take((rx[i], tx[j])) for j in range(K)] for i in range(K)]
        self.V = [stream.take((r, width)) for r in _precoder_rows(config)]
        self._interference: dict = {}

    def signal(self, i: int, j: int, s: int) -> np.ndarray:
        """Receiver ``i``'s view of user ``j``'s first ``s`` streams."""
        V = self.V[j][:, :, :s]
        cls = self.config.channel_class
        if cls in (ChannelClass.BC2, ChannelClass.BCK):
            return self.H[i] @ V
        if j == 0 and cls in (ChannelClass.CRC2, ChannelClass.CRCK):
            return np.concatenate(self.H[i], axis=2) @ V
        return self.H[i][j] @ V

    def interference(self, i: int, alloc: Allocation) -> tuple[np.ndarray, np.ndarray]:
        """Interference columns at receiver ``i`` and their ranks (memoized)."""
        key = (i,) + alloc[:i] + alloc[i + 1 :]
        hit = self._interference.get(key)
        if hit is None:
            cols = [self.signal(i, j, alloc[j]) for j in range(len(alloc)) if j != i]
            interf = np.concatenate(cols, axis=2)
            hit = (interf, _rank(_singular_values(interf), interf.shape[1:]))
            self._interference[key] = hit
        return hit

    def outcomes(self, alloc: Allocation) -> tuple[np.ndarray, np.ndarray]:
        """Per-trial success flags and critical singular-value ratios."""
        T = self.V[0].shape[0]
        ok = np.ones(T, dtype=bool)
        ratio = np.ones(T)
        for i, s in enumerate(alloc):
            if s == 0:
                continue  # nothing to decode
            interf, r_int = self.interference(i, alloc)
            combined = np.concatenate([self.signal(i, i, s), interf], axis=2)
            sv = _singular_values(combined)
            ok &= _rank(sv, combined.shape[1:]) == s + r_int
            need = s + r_int  # 1-based index of the singular value that must survive
            idx = np.clip(need - 1, 0, sv.shape[1] - 1)
            crit = np.take_along_axis(sv, idx[:, None], axis=1)[:, 0]
            crit = np.where(need <= sv.shape[1], crit, 0.0)
            ratio = np.minimum(ratio, crit / np.where(sv[:, 0] > 0, sv[:, 0], 1.0))
        return ok, ratio


def _singular_values(A: np.ndarray) -> np.ndarray:
    if A.shape[1] == 0 or A.shape[2] == 0:
        return np.zeros(A.shape[:1] + (0,))
    return np.linalg.svd(A, compute_uv=False)


def _rank(sv: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    if sv.shape[1] == 0:
        return np.zeros(sv.shape[0], dtype=int)
    tol = RANK_RTOL * sv[:, :1] * max(shape)
    return np.count_nonzero(sv > tol, axis=1)


def _validate(config: AntennaConfig, alloc: Sequence[int]) -> Allocation:
    alloc = tuple(int(s) for s in alloc)
    if len(alloc) != config.users:
        raise DomainError(f"allocation has {len(alloc)} entries for {config.users} users")
    if any(s < 0 for s in alloc):
        raise DomainError("stream counts must be nonnegative")
    return alloc


def _batches(config: AntennaConfig, seed: int, trials: int, width: int) -> list[_Batch]:
    return [
        _Batch(config, seed, np.arange(start, min(start + _BATCH, trials)), width)
        for start in range(0, trials, _BATCH)
    ]


def _report(alloc: Allocation, batches: list[_Batch], trials: int) -> FeasibilityReport:
    successes = 0
    min_ratio = 1.0
    for batch in batches:
        ok, ratio = batch.outcomes(alloc)
        successes += int(ok.sum())
        min_ratio = min(min_ratio, float(ratio.min()))
    if successes == trials:
        verdict = "feasible"
    elif successes == 0:
        verdict = "infeasible"
    else:
        verdict = "ambiguous"
    return FeasibilityReport(alloc, trials, successes, verdict, min_ratio)


def zf_feasible(
    config: AntennaConfig, alloc: Sequence[int], trials: int = 200, seed: int = 0
) -> FeasibilityReport:
    """Test an integer stream allocation against the zero-forcing rank condition.

    Trial ``t`` uses the stream ``(seed, t)`` only, so the report is a pure
    function of the arguments.
    """
    if trials < 1:
        raise DomainError("trials must be at least 1")
    alloc = _validate(config, alloc)
    width = max((config.max_antennas,) + alloc)
    return _report(alloc, _batches(config, seed, trials, width), trials)


# -- time sharing ----------------------------------------------------------


class _Oracle:
    """Memoized :func:`zf_feasible` for one ``(config, trials, seed)``."""

    def __init__(self, config: AntennaConfig, trials: int, seed: int):
        if trials < 1:
            raise DomainError("trials must be at least 1")
        self.config, self.trials, self.seed = config, trials, seed
        self.reports: dict[Allocation, FeasibilityReport] = {}
        self._batches: Optional[list[_Batch]] = None

    def __call__(self, alloc: Allocation) -> FeasibilityReport:
        rep = self.reports.get(alloc)
        if rep is None:
            # candidates never exceed max_antennas, matching zf_feasible's draw
            if self._batches is None:
                self._batches = _batches(self.config, self.seed, self.trials, self.config.max_antennas)
            rep = _report(alloc, self._batches, self.trials)
            self.reports[alloc] = rep
        return rep


def _candidates(config: AntennaConfig) -> list[Allocation]:
    top = config.max_antennas
    grid = itertools.product(range(top + 1), repeat=2)
    return sorted((a for a in grid if a != (0, 0)), key=lambda a: (sum(a), a))


def _single_phase(target: Point2, cands: list[Allocation]):
    sols = []
    for s in cands:
        if target.d1 * s[1] != target.d2 * s[0]:
            continue
        w = target.d1 / s[0] if s[0] else target.d2 / s[1]
        if 0 < w <= 1:
            sols.append((-w, s, ((s, w),)))
    return [p for *_, p in sorted(sols)]


def _two_phase(target: Point2, cands: list[Allocation]):
    sols = []
    t1, t2 = target.d1, target.d2
    for s, u in itertools.combinations(cands, 2):
        det = s[0] * u[1] - s[1] * u[0]
        if det == 0:
            continue
        w1 = Fraction(t1 * u[1] - t2 * u[0]) / det
        w2 = Fraction(s[0] * t2 - s[1] * t1) / det
        if w1 > 0 and w2 > 0 and w1 + w2 <= 1:
            sols.append((-(w1 + w2), s, u, ((s, w1), (u, w2))))
    return [p for *_, p in sorted(sols)]


def _certify(target: Point2, oracle: _Oracle) -> Optional[TimeSharingCertificate]:
    if target.d1 < 0 or target.d2 < 0:
        return None
    if target.d1 == 0 and target.d2 == 0:
        return TimeSharingCertificate(target, (), ())
    cands = _candidates(oracle.config)
    # Idle time makes the origin a free phase, and conv(S + origin) is the
    # fan of triangles (0, v_i, v_i+1); one or two phases therefore cover
    # every point the full hull covers.
    for search in (_single_phase, _two_phase):
        for phases in search(target, cands):
            reports = tuple(oracle(s) for s, _ in phases)
            if all(r.feasible for r in reports):
                return TimeSharingCertificate(target, phases, reports)
    return None


def _require_two_user(config: AntennaConfig) -> None:
    if not config.channel_class.two_user:
        raise DomainError("time-sharing certificates are defined for two-user channels")


def certify_corner(
    config: AntennaConfig, target, trials: int = 200, seed: int = 0
) -> Optional[TimeSharingCertificate]:
    """Find a time-sharing mix of oracle-feasible allocations reaching ``target``.

    Allocations range over ``0 .. max antenna count`` per user.  ``None``
    means the search is exhausted, which is not a proof that ``target`` is
    unachievable by other schemes.
    """
    _require_two_user(config)
    target = target if isinstance(target, Point2) else Point2(*(rational(x) for x in target))
    return _certify(target, _Oracle(config, trials, seed))


def _expected_inner(config: AntennaConfig) -> Polytope2D:
    cls = config.channel_class
    if cls is ChannelClass.BC2:
        return bc2_no_csit(config.tx[0], *config.rx)
    (M1, M2), (N1, N2) = config.tx, config.rx
    fn = ic_inner if cls is ChannelClass.IC2 else crc_inner
    return fn(M1, N1, M2, N2)


@dataclass(frozen=True)
class GridCheck:
    config: AntennaConfig
    feasible: tuple[Allocation, ...]
    ambiguous: tuple[Allocation, ...]
    hull: Polytope2D
    expected: Polytope2D
    uncertified: tuple[Point2, ...]
    min_singular_ratio: float

    @property
    def hull_matches(self) -> bool:
        return equals(self.hull, self.expected)

    @property
    def witnesses(self) -> tuple[Point2, ...]:
        """Vertices of either region that the other one misses."""
        return tuple(gap_vertices(self.hull, self.expected) + gap_vertices(self.expected, self.hull))

    @property
    def ok(self) -> bool:
        return self.hull_matches and not self.uncertified and not self.ambiguous


def inner_bound_grid_check(config: AntennaConfig, trials: int = 200, seed: int = 0) -> GridCheck:
    """Cross-check the closed-form inner bound against the oracle.

    Every allocation in ``[0, max antennas]^2`` is tested; the downward
    closed hull of the feasible ones must equal the inner bound, and every
    integer point of the inner bound must get a certificate.
    """
    _require_two_user(config)
    oracle = _Oracle(config, trials, seed)
    cands = _candidates(config)
    feasible, ambiguous = [], []
    min_ratio = 1.0
    for s in cands:
        rep = oracle(s)
        if rep.feasible:
            feasible.append(s)
            min_ratio = min(min_ratio, rep.min_singular_ratio)
        elif rep.verdict == "ambiguous":
            ambiguous.append(s)
    hull = hull_from_points([(0, 0)] + feasible)
    expected = _expected_inner(config)
    top1, top2 = int(expected.max_d1()), int(expected.max_d2())
    uncertified = []
    for d1 in range(top1 + 1):
        for d2 in range(top2 + 1):
            p = Point2(d1, d2)
            if expected.contains(p) and _certify(p, oracle) is None:
                uncertified.append(p)
    return GridCheck(
        config, tuple(feasible), tuple(ambiguous), hull, expected, tuple(uncertified), min_ratio
    )
