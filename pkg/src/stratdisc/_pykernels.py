"""Pure-numpy kernels: reference implementations of the hot loops.

The compiled extension in ``_ckernels`` mirrors these signatures; import
``stratdisc.kernels`` to get whichever backend is available.  These
versions are vectorized but allocate intermediate grids, so they are the
slower twin.
"""

from __future__ import annotations

import bisect

import numpy as np

BACKEND = "python"


def warnock_l2sq(points: np.ndarray) -> float:
    """Squared L2 discrepancy of a point set, O(N^2 d) pairwise form."""
    pts = np.ascontiguousarray(points, dtype=float)
    n, d = pts.shape
    z = 1.0 - pts  # (N, d)
    term1 = 3.0 ** (-d)
    term2 = (2.0 / n) * float(np.prod((1.0 - pts * pts) / 2.0, axis=1).sum())
    pair = 0.0
    chunk = max(1, int(2**22 // max(n, 1)))
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        block = np.minimum(z[lo:hi, None, :], z[None, :, :])
        pair += float(block.prod(axis=2).sum())
    term3 = pair / (n * n)
    return term1 - term2 + term3


def star_exact_2d(points: np.ndarray) -> float:
    """Exact star discrepancy in d=2.

    Sweeps the x-levels in increasing order, maintaining the sorted y-values
    of the swept points, and evaluates both the open-count and closed-count
    candidates at every critical corner.
    """
    pts = np.asarray(points, dtype=float)
    n = pts.shape[0]
    order = np.argsort(pts[:, 0], kind="stable")
    px = pts[order, 0]
    py = pts[order, 1]
    xlevels = np.unique(np.append(px, 1.0))
    ylevels = np.unique(np.append(py, 1.0))

    ys_in: list[float] = []   # sorted y's of swept points
    best = 0.0
    j = 0  # next point to insert
    for x in xlevels:
        while j < n and px[j] < x:
            bisect.insort(ys_in, py[j])
            j += 1
        # open counts: points with px < x and py < y
        cnt = np.searchsorted(ys_in, ylevels, side="left")
        gap = x * ylevels - cnt / n
        best = max(best, float(gap.max()))
        while j < n and px[j] <= x:
            bisect.insort(ys_in, py[j])
            j += 1
        # closed counts: points with px <= x and py <= y
        cnt = np.searchsorted(ys_in, ylevels, side="right")
        gap = cnt / n - x * ylevels
        best = max(best, float(gap.max()))
    return best


def _halfplane_grid(c: float, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    area = np.full(np.broadcast_shapes(x.shape, y.shape), 0.5 * c * c)
    area -= 0.5 * np.square(np.maximum(c - x, 0.0))
    area -= 0.5 * np.square(np.maximum(c - y, 0.0))
    area += 0.5 * np.square(np.maximum(c - x - y, 0.0))
    return area


def diag_moment_quad(cuts: np.ndarray, areas: np.ndarray, grid: int, order: int) -> float:
    """Midpoint-grid quadrature of E|Z - vol|^order for a diagonal-slice
    partition of the unit square; order in {2, 4}.

    The pointwise value is assembled from the Bernoulli cumulants of the
    per-stratum inclusion probabilities plus the bias, so non-equivolume
    cut vectors are handled exactly.
    """
    if order not in (2, 4):
        raise ValueError("order must be 2 or 4")
    cuts = np.asarray(cuts, dtype=float)
    areas = np.asarray(areas, dtype=float)
    n = areas.shape[0]
    t = (np.arange(grid) + 0.5) / grid
    total = 0.0
    rows = max(1, int(2**21 // grid))
    for lo in range(0, grid, rows):
        y = t[lo:min(grid, lo + rows), None]
        x = t[None, :]
        vol = x * y
        s1 = np.zeros_like(vol)
        s2 = np.zeros_like(vol)
        if order == 4:
            s3 = np.zeros_like(vol)
            s4 = np.zeros_like(vol)
        h_prev = np.zeros_like(vol)
        for i in range(n):
            h_cur = _halfplane_grid(cuts[i + 1], x, y)
            q = (h_cur - h_prev) / areas[i]
            h_prev = h_cur
            s1 += q
            qq = q * q
            s2 += qq
            if order == 4:
                s3 += qq * q
                s4 += qq * qq
        bias = s1 / n - vol
        if order == 2:
            val = (s1 - s2) / (n * n) + bias * bias
        else:
            k2 = s1 - s2
            k3 = s1 - 3.0 * s2 + 2.0 * s3
            k4 = s1 - 7.0 * s2 + 12.0 * s3 - 6.0 * s4
            m2 = k2 / n**2
            m3 = k3 / n**3
            m4 = (k4 + 3.0 * k2 * k2) / n**4
            val = m4 + 4.0 * m3 * bias + 6.0 * m2 * bias * bias + bias**4
        total += float(val.sum())
    return total / (grid * grid)
