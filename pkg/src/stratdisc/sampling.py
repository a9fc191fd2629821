"""Seeded generation of Monte Carlo and stratified point sets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import DiagonalSlice, Partition, PartitionSet
from .streams import SeedSpec, as_seed_spec

REJECTION_CAP = 10**6


@dataclass(frozen=True)
class PointSet:
    """N points in the unit cube plus where they came from."""

    dim: int
    points: np.ndarray  # shape (N, dim)
    provenance: tuple = ("unknown", None, 0)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self.dim or pts.shape[0] < 1:
            raise ValueError("points must be a nonempty (N, dim) array")
        if pts.min() < 0.0 or pts.max() > 1.0:
            raise ValueError("points must lie in the unit cube")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]


def sample_mc(n: int, dim: int, seed, replicate: int = 0) -> PointSet:
    """n i.i.d. uniform points; deterministic given the seed spec."""
    if n < 1 or dim < 1:
        raise ValueError("need n >= 1 and dim >= 1")
    spec = as_seed_spec(seed)
    gen = spec.generator("mc", replicate)
    return PointSet(dim=dim, points=gen.random((n, dim)),
                    provenance=("mc", spec.master, replicate))


def sample_in_set(s: PartitionSet, gen) -> np.ndarray:
    """One point uniform on the stratum.

    Axis-box strata sample directly.  Diagonal slices use rejection from
    their bounding box; a draw budget of 10**6 guards against degenerate
    slices.
    """
    if isinstance(gen, (int, SeedSpec)):
        gen = as_seed_spec(gen).generator("set")
    box = s.bounding_box()
    lo = np.asarray(box.lo)
    span = np.asarray(box.hi) - lo
    if not isinstance(s, DiagonalSlice):
        return lo + span * gen.random(len(lo))

    c_lo = s.v_lo * np.sqrt(2.0)
    c_hi = s.v_hi * np.sqrt(2.0)
    bbox_area = float(np.prod(span))
    # Expected tries per accepted point; draw a whole batch at once.
    expect = bbox_area / s.measure()
    batch = min(max(16, int(4 * expect)), 65536)
    tries = 0
    while tries < REJECTION_CAP:
        cand = lo + span * gen.random((batch, 2))
        sums = cand[:, 0] + cand[:, 1]
        ok = np.nonzero((sums >= c_lo) & (sums <= c_hi))[0]
        if ok.size:
            return cand[ok[0]]
        tries += batch
    raise RuntimeError(f"rejection sampling exceeded {REJECTION_CAP} draws; "
                       "stratum is degenerate")


def sample_stratified(p: Partition, seed, replicate: int = 0) -> PointSet:
    """One uniform point per stratum, independent across strata.

    Stratum i draws from its own jumped substream, so the i-th point
    depends only on (master seed, replicate, i).
    """
    spec = as_seed_spec(seed)
    pts = np.empty((p.n, p.dim))
    for i, (s, gen) in enumerate(zip(p.sets, spec.stratum_generators("stratified", replicate, p.n))):
        pts[i] = sample_in_set(s, gen)
    return PointSet(dim=p.dim, points=pts,
                    provenance=(p.family, spec.master, replicate))


def stratified_replicates(p: Partition, seed, replicates: int, start: int = 0):
    """Yield seeded stratified samples for replicate indices start..start+R-1."""
    spec = as_seed_spec(seed)
    for r in range(start, start + replicates):
        yield sample_stratified(p, spec, replicate=r)
