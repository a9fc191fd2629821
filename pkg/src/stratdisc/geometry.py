"""Exact partition geometry on the unit cube.

Everything downstream (sampling, expected discrepancy, uniformity
diagnostics) consumes the areas computed here, so all intersection code is
closed form, not approximate.  Strata come in four variants: vertical
strips, anti-diagonal slices of the unit square, congruent grid cells, and
generic axis-aligned boxes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

import numpy as np

SQRT2 = math.sqrt(2.0)

# Shared tolerance for measure identities (sum to one, equivolume flag,
# containment decisions).
MEASURE_TOL = 1e-12


def halfplane_box_area(c, x, y):
    """Area of ``{(s, t) in [0,x] x [0,y] : s + t <= c}``.

    Clamped closed form.  The four-way corner case analysis (which corners
    of the rectangle lie below the line) collapses into one branch-free
    expression; ``(t)+ = max(t, 0)``::

        c^2/2 - ((c-x)+)^2/2 - ((c-y)+)^2/2 + ((c-x-y)+)^2/2

    Accepts scalars or broadcastable numpy arrays.  Negative inputs are
    rejected.
    """
    c = np.asarray(c, dtype=float)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(c < 0) or np.any(x < 0) or np.any(y < 0):
        raise ValueError("halfplane_box_area requires c, x, y >= 0")
    area = 0.5 * np.square(c)
    area = area - 0.5 * np.square(np.maximum(c - x, 0.0))
    area = area - 0.5 * np.square(np.maximum(c - y, 0.0))
    area = area + 0.5 * np.square(np.maximum(c - x - y, 0.0))
    if area.ndim == 0:
        return float(area)
    return area


def _diag_area_below(v):
    """Area of the unit square below the anti-diagonal line at distance v."""
    return halfplane_box_area(v * SQRT2, 1.0, 1.0)


@dataclass(frozen=True)
class AnchoredBox:
    """Half-open box ``[0, corner)`` anchored at the origin."""

    corner: tuple[float, ...]

    def __post_init__(self):
        if any(not 0.0 <= c <= 1.0 for c in self.corner):
            raise ValueError("anchored box corner must lie in the unit cube")

    @property
    def dim(self) -> int:
        return len(self.corner)

    def volume(self) -> float:
        return float(np.prod(self.corner))

    def as_axis_box(self) -> "AxisBox":
        return AxisBox((0.0,) * self.dim, self.corner)


@dataclass(frozen=True)
class AxisBox:
    """Half-open axis-aligned box ``[lo, hi)`` inside the unit cube."""

    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise ValueError("lo and hi must have the same dimension")
        if any(l > h for l, h in zip(self.lo, self.hi)):
            raise ValueError("axis box requires lo <= hi componentwise")
        if any(l < 0.0 or h > 1.0 for l, h in zip(self.lo, self.hi)):
            raise ValueError("axis box must lie inside the unit cube")

    @property
    def dim(self) -> int:
        return len(self.lo)

    def volume(self) -> float:
        return float(np.prod([h - l for l, h in zip(self.lo, self.hi)]))


def _interval_overlap(lo, hi, a, b):
    """Length of [lo, hi] ∩ [a, b]."""
    return max(0.0, min(hi, b) - max(lo, a))


@dataclass(frozen=True)
class VerticalStrip:
    """Stratum ``(i-1)/count <= x_1 <= i/count`` of the unit cube; i is 1-based."""

    index: int
    count: int
    dim: int

    def __post_init__(self):
        if not 1 <= self.index <= self.count:
            raise ValueError("strip index out of range")
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")

    def bounds(self):
        lo = [(self.index - 1) / self.count] + [0.0] * (self.dim - 1)
        hi = [self.index / self.count] + [1.0] * (self.dim - 1)
        return tuple(lo), tuple(hi)

    def measure(self) -> float:
        return 1.0 / self.count

    def box_intersection(self, box: AxisBox) -> float:
        lo, hi = self.bounds()
        area = 1.0
        for k in range(self.dim):
            area *= _interval_overlap(lo[k], hi[k], box.lo[k], box.hi[k])
        return area

    def bounding_box(self) -> AxisBox:
        lo, hi = self.bounds()
        return AxisBox(lo, hi)

    def contains(self, point) -> bool:
        lo, hi = self.bounds()
        return all(l <= p <= h for l, h, p in zip(lo, hi, point))

    def diameter(self) -> float:
        return math.sqrt((1.0 / self.count) ** 2 + (self.dim - 1))


@dataclass(frozen=True)
class DiagonalSlice:
    """Region of the unit square between two lines orthogonal to the main
    diagonal, at distances ``v_lo < v_hi`` from the origin.  d = 2 only."""

    v_lo: float
    v_hi: float

    def __post_init__(self):
        if not 0.0 <= self.v_lo < self.v_hi <= SQRT2 + 1e-15:
            raise ValueError("diagonal slice requires 0 <= v_lo < v_hi <= sqrt(2)")
        if self.measure() <= 0.0:
            raise ValueError("diagonal slice has zero measure")

    @property
    def dim(self) -> int:
        return 2

    def measure(self) -> float:
        return _diag_area_below(self.v_hi) - _diag_area_below(self.v_lo)

    def anchored_intersection(self, x: float, y: float) -> float:
        """Area of the slice within ``[0,x] x [0,y]``."""
        return (halfplane_box_area(self.v_hi * SQRT2, x, y)
                - halfplane_box_area(self.v_lo * SQRT2, x, y))

    def box_intersection(self, box: AxisBox) -> float:
        # Four-corner inclusion-exclusion over anchored boxes.
        (x0, y0), (x1, y1) = box.lo, box.hi
        area = (self.anchored_intersection(x1, y1)
                - self.anchored_intersection(x0, y1)
                - self.anchored_intersection(x1, y0)
                + self.anchored_intersection(x0, y0))
        return max(area, 0.0)

    def bounding_box(self) -> AxisBox:
        c_lo = self.v_lo * SQRT2
        c_hi = self.v_hi * SQRT2
        lo = max(0.0, c_lo - 1.0)
        hi = min(1.0, c_hi)
        return AxisBox((lo, lo), (hi, hi))

    def contains(self, point) -> bool:
        s = point[0] + point[1]
        return (self.v_lo * SQRT2 <= s <= self.v_hi * SQRT2
                and 0.0 <= point[0] <= 1.0 and 0.0 <= point[1] <= 1.0)

    def vertices(self):
        """Corners of the slice polygon, exact up to float rounding."""
        c_lo, c_hi = self.v_lo * SQRT2, self.v_hi * SQRT2
        pts = []
        for c in (c_lo, c_hi):
            # Intersections of x + y = c with the square boundary.
            if c <= 0.0 or c >= 2.0:
                continue
            if c <= 1.0:
                pts += [(c, 0.0), (0.0, c)]
            else:
                pts += [(1.0, c - 1.0), (c - 1.0, 1.0)]
        for corner in ((0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)):
            if c_lo <= corner[0] + corner[1] <= c_hi:
                pts.append(corner)
        return pts

    def diameter(self) -> float:
        pts = self.vertices()
        best = 0.0
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                best = max(best, math.dist(pts[i], pts[j]))
        return best


@dataclass(frozen=True)
class GridCell:
    """Axis-aligned cube of side ``1/side`` with 0-based multi-index."""

    index: tuple[int, ...]
    side: int

    def __post_init__(self):
        if self.side < 1:
            raise ValueError("side count must be >= 1")
        if any(not 0 <= k < self.side for k in self.index):
            raise ValueError("cell index out of range")

    @property
    def dim(self) -> int:
        return len(self.index)

    def bounds(self):
        lo = tuple(k / self.side for k in self.index)
        hi = tuple((k + 1) / self.side for k in self.index)
        return lo, hi

    def measure(self) -> float:
        return self.side ** (-self.dim)

    def box_intersection(self, box: AxisBox) -> float:
        lo, hi = self.bounds()
        area = 1.0
        for k in range(self.dim):
            area *= _interval_overlap(lo[k], hi[k], box.lo[k], box.hi[k])
        return area

    def bounding_box(self) -> AxisBox:
        lo, hi = self.bounds()
        return AxisBox(lo, hi)

    def contains(self, point) -> bool:
        lo, hi = self.bounds()
        return all(l <= p <= h for l, h, p in zip(lo, hi, point))

    def diameter(self) -> float:
        return math.sqrt(self.dim) / self.side


@dataclass(frozen=True)
class AxisRegion:
    """Generic axis-box stratum ``[lo, hi]``."""

    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise ValueError("lo and hi must have the same dimension")
        if any(h <= l for l, h in zip(self.lo, self.hi)):
            raise ValueError("axis region must have positive measure")

    @property
    def dim(self) -> int:
        return len(self.lo)

    def measure(self) -> float:
        return float(np.prod([h - l for l, h in zip(self.lo, self.hi)]))

    def box_intersection(self, box: AxisBox) -> float:
        area = 1.0
        for k in range(self.dim):
            area *= _interval_overlap(self.lo[k], self.hi[k], box.lo[k], box.hi[k])
        return area

    def bounding_box(self) -> AxisBox:
        return AxisBox(self.lo, self.hi)

    def contains(self, point) -> bool:
        return all(l <= p <= h for l, h, p in zip(self.lo, self.hi, point))

    def diameter(self) -> float:
        return math.dist(self.lo, self.hi)


PartitionSet = Union[VerticalStrip, DiagonalSlice, GridCell, AxisRegion]


def set_measure(s: PartitionSet) -> float:
    """Exact Lebesgue measure of a stratum."""
    return s.measure()


def set_box_intersection(s: PartitionSet, box: AxisBox) -> float:
    """Exact measure of ``s ∩ box``."""
    return s.box_intersection(box)


@dataclass(frozen=True)
class SuccessProfile:
    """Per-stratum inclusion probabilities of the anchored box ``[0, anchor)``.

    ``q[i]`` is the probability that the point sampled uniformly from the
    i-th stratum lands in the box.
    """

    q: np.ndarray
    anchor: tuple[float, ...]


@dataclass(frozen=True)
class Partition:
    """Ordered list of strata covering the unit cube.

    Overlap is validated through the measure-sum identity only; for the
    supported variants shared boundaries have measure zero by construction.
    Instances are immutable and safe to share across workers.
    """

    sets: tuple[PartitionSet, ...]
    dim: int
    family: str = "custom"
    v: tuple[float, ...] | None = None

    @cached_property
    def measures(self) -> np.ndarray:
        m = np.array([s.measure() for s in self.sets])
        m.flags.writeable = False
        return m

    @property
    def n(self) -> int:
        return len(self.sets)

    @cached_property
    def is_equivolume(self) -> bool:
        return bool(np.max(np.abs(self.measures - 1.0 / self.n)) < MEASURE_TOL)

    def validate(self) -> dict:
        """Report-only validation; never raises."""
        measures = self.measures
        return {
            "measure_sum": float(measures.sum()),
            "measure_sum_ok": bool(abs(measures.sum() - 1.0) < MEASURE_TOL * max(1, self.n)),
            "equivolume": self.is_equivolume,
            "measures": [float(m) for m in measures],
        }

    def success_profile(self, anchor: Sequence[float]) -> SuccessProfile:
        anchor = tuple(float(a) for a in anchor)
        box = AnchoredBox(anchor).as_axis_box()
        q = np.array([s.box_intersection(box) for s in self.sets]) / self.measures
        # Rounding can push a full-containment ratio past 1 by an ulp.
        np.clip(q, 0.0, 1.0, out=q)
        return SuccessProfile(q=q, anchor=anchor)

    def bias_at(self, anchor: Sequence[float]) -> float:
        """Mean of the box-count fraction minus the box volume."""
        prof = self.success_profile(anchor)
        return float(prof.q.sum() / self.n - np.prod(anchor))

    def diag_cuts(self) -> np.ndarray:
        """For diagonal families: line offsets ``v*sqrt(2)`` incl. 0 and 2."""
        if not all(isinstance(s, DiagonalSlice) for s in self.sets):
            raise TypeError("diag_cuts is defined for diagonal-slice partitions only")
        cuts = [0.0] + [s.v_hi * SQRT2 for s in self.sets]
        cuts[-1] = 2.0
        return np.asarray(cuts)


def validate_partition(p: Partition) -> dict:
    return p.validate()


def success_profile(p: Partition, anchor) -> SuccessProfile:
    return p.success_profile(anchor)


def bias_at(p: Partition, anchor) -> float:
    return p.bias_at(anchor)


def equivolume_diag_cuts(n: int) -> tuple[float, ...]:
    """Diagonal-line distances making all n slices of the square equal in area."""
    if n < 1:
        raise ValueError("n must be >= 1")
    v = [math.sqrt(i / n) for i in range(1, n // 2 + 1)]
    v += [SQRT2 - math.sqrt((n - i) / n) for i in range(n // 2 + 1, n)]
    return tuple(v)


def _diag_partition(v, family: str) -> Partition:
    v = tuple(float(x) for x in v)
    if any(b <= a for a, b in zip(v, v[1:])):
        raise ValueError("cut vector must be strictly increasing")
    if v and not (0.0 < v[0] and v[-1] < SQRT2):
        raise ValueError("cuts must lie strictly inside (0, sqrt(2))")
    edges = (0.0,) + v + (SQRT2,)
    sets = tuple(DiagonalSlice(a, b) for a, b in zip(edges, edges[1:]))
    return Partition(sets=sets, dim=2, family=family, v=v)


def diag(v) -> Partition:
    """Partition of the unit square by lines orthogonal to the main diagonal."""
    return _diag_partition(v, "diag")


def equivolume_diag(n: int) -> Partition:
    return _diag_partition(equivolume_diag_cuts(n), "equivolume_diag")


def equidistant_diag(n: int) -> Partition:
    if n < 1:
        raise ValueError("n must be >= 1")
    v = tuple(SQRT2 * i / n for i in range(1, n))
    return _diag_partition(v, "equidistant_diag")


def vertical(n: int, dim: int = 2) -> Partition:
    if n < 1 or dim < 1:
        raise ValueError("need n >= 1 and dim >= 1")
    sets = tuple(VerticalStrip(i, n, dim) for i in range(1, n + 1))
    return Partition(sets=sets, dim=dim, family="vertical")


def jittered(m: int, dim: int = 2) -> Partition:
    if m < 1 or dim < 1:
        raise ValueError("need m >= 1 and dim >= 1")
    idx = np.indices((m,) * dim).reshape(dim, -1).T
    sets = tuple(GridCell(tuple(int(k) for k in row), m) for row in idx)
    return Partition(sets=sets, dim=dim, family="jittered")


def custom_axis(regions: Sequence[AxisRegion], dim: int | None = None) -> Partition:
    regions = tuple(regions)
    if not regions:
        raise ValueError("need at least one region")
    d = dim if dim is not None else regions[0].dim
    p = Partition(sets=regions, dim=d, family="custom")
    report = p.validate()
    if not report["measure_sum_ok"]:
        raise ValueError(f"regions do not cover the cube: sum={report['measure_sum']}")
    return p


def build_partition(family: str, *, n: int | None = None, dim: int | None = None,
                    v=None) -> Partition:
    """Construct a validated partition from a family tag and parameters."""
    if family == "diag":
        if v is None:
            raise ValueError("diag family requires the cut vector v")
        return diag(v)
    if family == "equivolume_diag":
        if n is None:
            raise ValueError("equivolume_diag requires n")
        return equivolume_diag(n)
    if family == "equidistant_diag":
        if n is None:
            raise ValueError("equidistant_diag requires n")
        return equidistant_diag(n)
    if family == "vertical":
        if n is None:
            raise ValueError("vertical requires n")
        return vertical(n, dim if dim is not None else 2)
    if family == "jittered":
        d = dim if dim is not None else 2
        if n is None:
            raise ValueError("jittered requires n = m**dim")
        m = round(n ** (1.0 / d))
        if m**d != n:
            raise ValueError(f"jittered requires n to be a perfect {d}-th power, got {n}")
        return jittered(m, d)
    raise ValueError(f"unknown partition family: {family!r}")
