"""Counter-based complex Gaussian sampling.

Every Monte Carlo trial owns an independent stream addressed by
``(seed, trial)``: element ``k`` of that stream is a pure function of the
three integers, so trials can be evaluated in any order, in batches, or
in parallel and still reproduce bit for bit.

Mixing is the SplitMix64 finalizer.  The trial key is
``mix(mix(seed) ^ mix(trial + GOLDEN))`` and word ``k`` of the trial is
``mix(key + (k + 1) * GOLDEN)`` (all mod 2**64).  Two words make one
CN(0, 1) sample by Box-Muller: ``sqrt(-ln u1) * exp(2j*pi*u2)`` with
``u1`` in (0, 1] and ``u2`` in [0, 1).
"""

from __future__ import annotations

import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1


def mix64(x: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer, elementwise on a uint64 array."""
    x = np.asarray(x, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = x ^ (x >> np.uint64(30))
        z = z * _M1
        z = z ^ (z >> np.uint64(27))
        z = z * _M2
        return z ^ (z >> np.uint64(31))


def trial_keys(seed: int, trials: np.ndarray) -> np.ndarray:
    if not 0 <= seed <= _MASK64:
        raise ValueError("seed must fit in an unsigned 64-bit integer")
    s = mix64(np.array([seed], dtype=np.uint64))
    t = np.asarray(trials, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return mix64(s ^ mix64(t + GOLDEN))


def uniform_words(seed: int, trials: np.ndarray, count: int, start: int = 0) -> np.ndarray:
    """Words ``start .. start+count-1`` of each trial, shape ``(len(trials), count)``."""
    keys = trial_keys(seed, trials)[:, None]
    k = np.arange(start + 1, start + count + 1, dtype=np.uint64)[None, :]
    with np.errstate(over="ignore"):
        return mix64(keys + k * GOLDEN)


def complex_normal(seed: int, trials: np.ndarray, count: int, offset: int = 0) -> np.ndarray:
    """CN(0, 1) samples ``offset .. offset+count-1`` of each trial's stream.

    Returns an array of shape ``(len(trials), count)``.
    """
    words = uniform_words(seed, trials, 2 * count, 2 * offset)
    top = (words >> np.uint64(11)).astype(np.float64)
    u1 = (top[:, 0::2] + 1.0) * 2.0**-53
    u2 = top[:, 1::2] * 2.0**-53
    return np.sqrt(-np.log(u1)) * np.exp(2j * np.pi * u2)


class TrialStream:
    """Sequential reader over a batch of per-trial streams.

    ``take(shape)`` returns an array of shape ``(trials,) + shape`` and
    advances every trial's stream by ``prod(shape)`` samples.
    """

    def __init__(self, seed: int, trials: np.ndarray):
        self.seed = seed
        self.trials = np.asarray(trials)
        self.pos = 0

    def take(self, shape: tuple[int, ...]) -> np.ndarray:
        n = int(np.prod(shape)) if shape else 1
        out = complex_normal(self.seed, self.trials, n, self.pos)
        self.pos += n
        return out.reshape((len(self.trials),) + tuple(shape))
