"""Benchmark regression functions on a dyadic grid, with seeded Gaussian noise.

Signals are sampled at t_i = (i-1)/n for i = 1..n (so t starts at 0) and then
scaled so the sample standard deviation equals ``snr`` under the sigma = 1
noise convention.  No mean-centering is applied, matching the classical
wavelet simulation setup.  Blocks, Bumps, HeaviSine, and Doppler follow the
standard Donoho-Johnstone definitions; Spikes and Corner are documented
stand-ins rounding out a six-signal registry and can be replaced through
:func:`register_signal`.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._rng import substream

__all__ = [
    "CANONICAL_SIGNALS",
    "SIGNAL_NAMES",
    "TestSignal",
    "add_noise",
    "generate_signal",
    "register_signal",
]


@dataclass
class TestSignal:
    name: str
    samples: np.ndarray
    snr: float

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=float)
        n = self.samples.size
        if n < 2 or n & (n - 1):
            raise ValueError(f"signal length must be a power of two >= 2, got {n}")
        if not self.snr > 0:
            raise ValueError(f"snr must be positive, got {self.snr}")


_JUMP_POINTS = np.array([0.1, 0.13, 0.15, 0.23, 0.25, 0.4, 0.44, 0.65, 0.76, 0.78, 0.81])
_BLOCK_HEIGHTS = np.array([4.0, -5.0, 3.0, -4.0, 5.0, -4.2, 2.1, 4.3, -3.1, 2.1, -4.2])
_BUMP_HEIGHTS = np.array([4.0, 5.0, 3.0, 4.0, 5.0, 4.2, 2.1, 4.3, 3.1, 5.1, 4.2])
_BUMP_WIDTHS = np.array([0.005, 0.005, 0.006, 0.01, 0.01, 0.03, 0.01, 0.01, 0.005, 0.008, 0.005])


def _blocks(t):
    f = np.zeros_like(t)
    for t0, h in zip(_JUMP_POINTS, _BLOCK_HEIGHTS):
        f += h * (1.0 + np.sign(t - t0)) / 2.0
    return f


def _bumps(t):
    f = np.zeros_like(t)
    for t0, h, w in zip(_JUMP_POINTS, _BUMP_HEIGHTS, _BUMP_WIDTHS):
        f += h / (1.0 + np.abs((t - t0) / w)) ** 4
    return f


def _heavisine(t):
    return 4.0 * np.sin(4.0 * np.pi * t) - np.sign(t - 0.3) - np.sign(0.72 - t)


def _doppler(t):
    return np.sqrt(t * (1.0 - t)) * np.sin(2.0 * np.pi * 1.05 / (t + 0.05))


def _spikes(t):
    # stand-in: a train of narrow Gaussian peaks (sharp local features)
    centers = (0.2, 0.35, 0.5, 0.65, 0.78, 0.9)
    heights = (4.0, 5.0, 3.0, 4.4, 2.8, 4.1)
    f = np.zeros_like(t)
    for c, h in zip(centers, heights):
        f += h * np.exp(-0.5 * ((t - c) / 0.008) ** 2)
    return f


def _corner(t):
    # stand-in: continuous piecewise curve with slope breaks at 0.25 and 0.5
    return np.where(t < 0.25, 4.0 * t, np.where(t < 0.5, 2.0 - 4.0 * t, 8.0 * (t - 0.5) ** 2))


_REGISTRY = {
    "blocks": _blocks,
    "bumps": _bumps,
    "heavisine": _heavisine,
    "doppler": _doppler,
    "spikes": _spikes,
    "corner": _corner,
}

CANONICAL_SIGNALS = ("blocks", "bumps", "heavisine", "doppler")
SIGNAL_NAMES = tuple(_REGISTRY)


def register_signal(name, fn):
    """Add or replace a raw signal function f(t); enables swapping the stand-ins."""
    if not callable(fn):
        raise ValueError("fn must be callable")
    _REGISTRY[str(name)] = fn


def generate_signal(name, n, snr):
    """Sample the named function on the dyadic grid and scale sd to ``snr``."""
    if name not in _REGISTRY:
        raise ValueError(f"unknown signal {name!r}; known: {sorted(_REGISTRY)}")
    if n < 2 or n & (n - 1):
        raise ValueError(f"n must be a power of two >= 2, got {n}")
    if not snr > 0:
        raise ValueError(f"snr must be positive, got {snr}")
    t = np.arange(n, dtype=float) / n
    raw = np.asarray(_REGISTRY[name](t), dtype=float)
    sd = raw.std(ddof=1)
    if not sd > 0:
        raise ValueError(f"signal {name!r} is constant on this grid; cannot scale to an snr")
    return TestSignal(name=name, samples=raw * (snr / sd), snr=float(snr))


def add_noise(signal, sigma, seed):
    """Samples plus sigma times standard normal draws; deterministic per seed."""
    if not (sigma > 0 and math.isfinite(sigma)):
        raise ValueError(f"sigma must be positive and finite, got {sigma}")
    rng = substream(seed)
    return signal.samples + sigma * rng.standard_normal(signal.samples.size)
