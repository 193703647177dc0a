"""Deterministic random-stream construction shared across modules."""

import numpy as np


def substream(seed, *path):
    """Independent generator keyed by (seed, path); order- and parallelism-safe.

    Streams for distinct paths are statistically independent, and the mapping
    from (seed, path) to the stream is fixed, so Monte Carlo loops can be
    evaluated in any order (or split across workers) without changing results.
    """
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=tuple(path)))
