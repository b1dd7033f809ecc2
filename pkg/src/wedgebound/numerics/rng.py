"""Seedable, splittable random streams.

Backed by numpy's counter-based Philox generator; substream ``i`` of seed ``s``
is keyed by ``SeedSequence(s, spawn_key=(i,))`` so it can be rebuilt in any
order, on any worker.
"""

from __future__ import annotations

import numpy as np


class RngStream:
    """Deterministic uniform/gaussian sampler with indexed substreams."""

    def __init__(self, seed: int, key: tuple = ()):
        self.seed = int(seed)
        self.key = tuple(key)
        seq = np.random.SeedSequence(self.seed, spawn_key=self.key)
        self._gen = np.random.Generator(np.random.Philox(seq))

    def substream(self, index: int) -> "RngStream":
        return RngStream(self.seed, self.key + (int(index),))

    def uniform(self, size=None, low=0.0, high=1.0):
        return self._gen.uniform(low, high, size)

    def normal(self, size=None, scale=1.0):
        return self._gen.normal(0.0, scale, size)

    def integers(self, low, high=None, size=None):
        return self._gen.integers(low, high, size)

    @property
    def generator(self) -> np.random.Generator:
        return self._gen

    def __repr__(self):
        return f"RngStream(seed={self.seed}, key={self.key})"


def rng_stream(seed: int) -> RngStream:
    return RngStream(seed)
