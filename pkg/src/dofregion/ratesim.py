"""Finite-SNR rate simulation and pre-log regression.

DoF are a high-SNR limit, so they are checked here by simulating ergodic
rates of the zero-forcing schemes over a grid of SNR values and fitting
``rate ~ slope * log2(P) + intercept`` by least squares.  Noise has unit
variance, so SNR and transmit power ``P`` are the same number.

Every SNR point reuses the same channel draws (common random numbers).
Per draw the log-det rate is nondecreasing in ``P``, so the averaged
curves are monotone as well and the slope estimate is not polluted by
independent sampling noise at each point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats

from . import _rng
from .achievability import TimeSharingCertificate, _Batch, _rank, _singular_values, _validate
from .polytope import DomainError
from .regions import AntennaConfig

__all__ = ["SnrGrid", "SlopeEstimate", "p2p_rate", "scheme_rate", "estimate_slope"]

MIN_POINTS = 3
MIN_SPAN_DB = 20.0


@dataclass(frozen=True)
class SnrGrid:
    """SNR points in dB and the number of channel draws averaged at each."""

    points_dB: tuple[float, ...] = (30.0, 35.0, 40.0, 45.0, 50.0, 55.0, 60.0)
    trials_per_point: int = 50

    def __post_init__(self) -> None:
        pts = tuple(float(p) for p in self.points_dB)
        object.__setattr__(self, "points_dB", pts)
        if len(pts) < MIN_POINTS:
            raise DomainError(f"SNR grid needs at least {MIN_POINTS} points")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise DomainError("SNR points must be strictly increasing")
        if pts[-1] - pts[0] < MIN_SPAN_DB:
            raise DomainError(f"SNR grid must span at least {MIN_SPAN_DB:g} dB")
        if self.trials_per_point < 1:
            raise DomainError("trials_per_point must be at least 1")

    @classmethod
    def parse(cls, spec: str, trials_per_point: int = 50) -> "SnrGrid":
        """Build a grid from ``"lo:step:hi"`` (inclusive of ``hi``)."""
        try:
            lo, step, hi = (float(x) for x in spec.split(":"))
        except ValueError:
            raise DomainError(f"SNR grid must look like lo:step:hi, got {spec!r}") from None
        if step <= 0:
            raise DomainError("SNR step must be positive")
        count = int(np.floor((hi - lo) / step + 1e-9)) + 1
        return cls(tuple(lo + k * step for k in range(count)), trials_per_point)

    @property
    def power(self) -> np.ndarray:
        return 10.0 ** (np.asarray(self.points_dB) / 10.0)

    @property
    def log2_power(self) -> np.ndarray:
        return np.asarray(self.points_dB) / (10.0 * np.log10(2.0))


@dataclass(frozen=True)
class SlopeEstimate:
    """Per-user least-squares fit of rate against ``log2(P)``.

    ``half_width`` is the 95% confidence half-width of each slope from the
    regression's standard error and a Student t quantile.
    """

    slopes: tuple[float, ...]
    intercepts: tuple[float, ...]
    residual_rms: tuple[float, ...]
    half_width: tuple[float, ...]


def _log2_rates(eigs: np.ndarray, scale: np.ndarray) -> np.ndarray:
    """``sum_k log2(1 + scale * eig_k)`` averaged over trials, one value per scale."""
    eigs = np.clip(eigs, 0.0, None)
    per_trial = np.log2(1.0 + eigs[:, None, :] * scale[None, :, None]).sum(axis=2)
    return per_trial.mean(axis=0)


def p2p_rate(M: int, N: int, grid: SnrGrid, seed: int = 0) -> np.ndarray:
    """Ergodic rate of an ``N x M`` Rayleigh channel with isotropic input.

    Returns one rate (bits per channel use) per grid point.
    """
    if M < 1 or N < 1:
        raise DomainError("antenna counts must be at least 1")
    stream = _rng.TrialStream(seed, np.arange(grid.trials_per_point))
    H = stream.take((N, M))
    eigs = np.linalg.eigvalsh(np.conj(np.swapaxes(H, 1, 2)) @ H)
    return _log2_rates(eigs, grid.power / M)


def _phase_eigs(config: AntennaConfig, alloc: tuple[int, ...], batch: _Batch) -> list[np.ndarray]:
    """Eigenvalues of each user's post-projection Gram matrix, per trial."""
    out = []
    for i, s in enumerate(alloc):
        if s == 0:
            out.append(np.zeros((batch.V[0].shape[0], 0)))
            continue
        V = batch.V[i][:, :, :s]
        desired = batch.signal(i, i, s) / np.linalg.norm(V, axis=1)[:, None, :]
        interf, r_int = batch.interference(i, alloc)
        if interf.shape[2]:
            U, sv, _ = np.linalg.svd(interf)
            keep = np.arange(U.shape[2])[None, :] < r_int[:, None]
            Q = U * keep[:, None, :]  # orthonormal basis of the interference span
            heff = desired - Q @ (np.conj(np.swapaxes(Q, 1, 2)) @ desired)
        else:
            heff = desired
        ranks = _rank(_singular_values(heff), heff.shape[1:])
        if np.any(ranks < s):
            raise DomainError(f"allocation {alloc} is not zero-forcing feasible for {config}")
        gram = np.conj(np.swapaxes(heff, 1, 2)) @ heff
        out.append(np.linalg.eigvalsh(gram))
    return out


def scheme_rate(
    config: AntennaConfig, certificate: TimeSharingCertificate, grid: SnrGrid, seed: int = 0
) -> np.ndarray:
    """Per-user ergodic rates of a time-shared zero-forcing scheme.

    Each phase gives every stream power ``P / s_i`` through a unit-norm
    Gaussian precoder column; receivers project onto the orthogonal
    complement of the interference span and decode.  Phase ``k`` uses
    trials ``k*T .. (k+1)*T - 1`` of the seeded stream family, so phases
    see independent channels.  Returns an array of shape
    ``(users, len(grid.points_dB))``.
    """
    T = grid.trials_per_point
    rates = np.zeros((config.users, len(grid.points_dB)))
    for k, (alloc, weight) in enumerate(certificate.phases):
        alloc = _validate(config, alloc)
        width = max((config.max_antennas,) + alloc)
        batch = _Batch(config, seed, np.arange(k * T, (k + 1) * T), width)
        for i, eigs in enumerate(_phase_eigs(config, alloc, batch)):
            if alloc[i]:
                rates[i] += float(weight) * _log2_rates(eigs, grid.power / alloc[i])
    return rates


def estimate_slope(grid: SnrGrid, rates: Sequence) -> SlopeEstimate:
    """Ordinary least squares of each rate curve against ``log2(P)``.

    ``rates`` is one curve (length = grid size) or a stack of curves.
    """
    y = np.atleast_2d(np.asarray(rates, dtype=float))
    x = grid.log2_power
    if y.shape[1] != len(x):
        raise DomainError(f"expected {len(x)} rates per curve, got {y.shape[1]}")
    if not np.all(np.isfinite(y)):
        raise DomainError("rates must be finite")
    tq = stats.t.ppf(0.975, len(x) - 2)
    slopes, icepts, rms, hw = [], [], [], []
    for curve in y:
        fit = stats.linregress(x, curve)
        resid = curve - (fit.slope * x + fit.intercept)
        slopes.append(float(fit.slope))
        icepts.append(float(fit.intercept))
        rms.append(float(np.sqrt(np.mean(resid**2))))
        hw.append(float(tq * fit.stderr))
    return SlopeEstimate(tuple(slopes), tuple(icepts), tuple(rms), tuple(hw))
