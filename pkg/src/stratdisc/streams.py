"""Counter-based, splittable random streams.

Every logical draw is keyed by ``(master seed, purpose, replicate,
stratum)``: the first three select a Philox key, the stratum selects a
jumped substream of it.  Replicates and strata are therefore reproducible
bitwise regardless of execution order, which is what makes parallel
replication safe.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np


def _stream_key(master: int, purpose: str, replicate: int) -> int:
    """128-bit Philox key derived deterministically from the stream id."""
    h = hashlib.blake2s(digest_size=16)
    h.update(int(master).to_bytes(8, "little", signed=False))
    h.update(purpose.encode("utf-8"))
    h.update(b"\x00")
    h.update(int(replicate).to_bytes(8, "little", signed=False))
    return int.from_bytes(h.digest(), "little")


@dataclass(frozen=True)
class SeedSpec:
    """Master seed plus derivation of independent substreams."""

    master: int

    def __post_init__(self):
        if not 0 <= int(self.master) < 2**64:
            raise ValueError("master seed must be a 64-bit unsigned integer")

    def bit_generator(self, purpose: str, replicate: int = 0) -> np.random.Philox:
        return np.random.Philox(key=_stream_key(self.master, purpose, replicate))

    def generator(self, purpose: str, replicate: int = 0) -> np.random.Generator:
        return np.random.Generator(self.bit_generator(purpose, replicate))

    def stratum_generator(self, purpose: str, replicate: int, stratum: int) -> np.random.Generator:
        # jumped() advances the Philox counter by 2**128 per step: disjoint
        # substreams without consuming draws from the base stream.
        return np.random.Generator(self.bit_generator(purpose, replicate).jumped(stratum))

    def stratum_generators(self, purpose: str, replicate: int, count: int):
        base = self.bit_generator(purpose, replicate)
        for i in range(count):
            yield np.random.Generator(base.jumped(i))


def as_seed_spec(seed) -> SeedSpec:
    if isinstance(seed, SeedSpec):
        return seed
    return SeedSpec(int(seed))
