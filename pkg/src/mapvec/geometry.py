"""Polyline and polygon geometry shared by rasterization, matching, and eval.

All functions are pure numpy on float64 arrays of shape [n, 2] (x, y meters).
"""

from __future__ import annotations

import numpy as np

from .errors import GeometryError


def polyline_lengths(points: np.ndarray, closed: bool = False) -> np.ndarray:
    """Per-segment lengths; a closed ring includes the wrap-around segment."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise GeometryError(f"polyline must be [n>=2, 2], got shape {pts.shape}")
    if closed:
        pts = np.vstack([pts, pts[:1]])
    return np.linalg.norm(np.diff(pts, axis=0), axis=1)


def arc_length(points: np.ndarray, closed: bool = False) -> float:
    return float(polyline_lengths(points, closed).sum())


def resample_polyline(points: np.ndarray, n_points: int, closed: bool = False) -> np.ndarray:
    """Arc-length-uniform resampling.

    Open polylines keep both endpoints and place n_points at fractions
    {0, 1/(n-1), ..., 1} of the total length.  Closed rings place n_points at
    fractions {0, 1/n, ..., (n-1)/n} starting from the first vertex (the ring
    is returned without a duplicated endpoint).
    """
    pts = np.asarray(points, dtype=np.float64)
    if n_points < 2:
        raise GeometryError("n_points must be >= 2")
    seg_len = polyline_lengths(pts, closed)
    total = float(seg_len.sum())
    if total <= 0.0:
        raise GeometryError("degenerate zero-length element cannot be resampled")
    if closed:
        verts = np.vstack([pts, pts[:1]])
        targets = np.arange(n_points, dtype=np.float64) / n_points * total
    else:
        verts = pts
        targets = np.linspace(0.0, total, n_points)
    cum = np.concatenate([[0.0], np.cumsum(seg_len)])
    seg_idx = np.clip(np.searchsorted(cum, targets, side="right") - 1, 0, len(seg_len) - 1)
    seg_start = cum[seg_idx]
    denom = np.where(seg_len[seg_idx] > 0, seg_len[seg_idx], 1.0)
    frac = (targets - seg_start) / denom
    out = verts[seg_idx] + frac[:, None] * (verts[seg_idx + 1] - verts[seg_idx])
    if not closed:
        out[0] = verts[0]
        out[-1] = verts[-1]
    return out


def point_segment_distance(points: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distance from each query point [m, 2] to the segment a-b."""
    p = np.asarray(points, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        return np.linalg.norm(p - a, axis=-1)
    t = np.clip(((p - a) @ ab) / denom, 0.0, 1.0)
    proj = a + t[:, None] * ab
    return np.linalg.norm(p - proj, axis=-1)


def points_to_polyline_distance(points: np.ndarray, polyline: np.ndarray, closed: bool = False) -> np.ndarray:
    """Min distance from each query point to any segment of the polyline."""
    p = np.asarray(points, dtype=np.float64)
    poly = np.asarray(polyline, dtype=np.float64)
    if closed:
        poly = np.vstack([poly, poly[:1]])
    a = poly[:-1]  # [s, 2]
    ab = poly[1:] - a  # [s, 2]
    denom = np.einsum("sd,sd->s", ab, ab)
    denom_safe = np.where(denom > 0, denom, 1.0)
    ap = p[:, None, :] - a[None, :, :]  # [m, s, 2]
    t = np.clip(np.einsum("msd,sd->ms", ap, ab) / denom_safe, 0.0, 1.0)
    t = np.where(denom[None, :] > 0, t, 0.0)
    diff = ap - t[:, :, None] * ab[None, :, :]
    return np.sqrt(np.einsum("msd,msd->ms", diff, diff)).min(axis=1)


def grid_near_polyline(xs: np.ndarray, ys: np.ndarray, polyline: np.ndarray, radius: float, closed: bool = False) -> np.ndarray:
    """Cells of the grid (xs x ys centers) within `radius` of the polyline.

    Equivalent to thresholding points_to_polyline_distance on the full grid,
    but each segment only tests the cells inside its padded bounding box.
    Returns bool [len(xs), len(ys)].
    """
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    poly = np.asarray(polyline, dtype=np.float64)
    if closed:
        poly = np.vstack([poly, poly[:1]])
    out = np.zeros((len(xs), len(ys)), dtype=bool)
    for k in range(len(poly) - 1):
        a, b = poly[k], poly[k + 1]
        lo = np.minimum(a, b) - radius
        hi = np.maximum(a, b) + radius
        i0, i1 = np.searchsorted(xs, [lo[0], hi[0]])
        j0, j1 = np.searchsorted(ys, [lo[1], hi[1]])
        if i0 >= i1 or j0 >= j1:
            continue
        gx, gy = np.meshgrid(xs[i0:i1], ys[j0:j1], indexing="ij")
        pts = np.stack([gx.ravel(), gy.ravel()], axis=-1)
        near = point_segment_distance(pts, a, b) <= radius
        out[i0:i1, j0:j1] |= near.reshape(i1 - i0, j1 - j0)
    return out


def points_in_polygon(points: np.ndarray, polygon: np.ndarray) -> np.ndarray:
    """Even-odd point-in-polygon test; boundary points count as inside.

    Vectorized ray casting along +x.  Points exactly on an edge are detected
    with a small tolerance and reported inside.
    """
    p = np.asarray(points, dtype=np.float64)
    poly = np.asarray(polygon, dtype=np.float64)
    if poly.ndim != 2 or poly.shape[0] < 3:
        raise GeometryError("polygon needs >= 3 vertices")
    x, y = p[:, 0], p[:, 1]
    inside = np.zeros(len(p), dtype=bool)
    on_edge = np.zeros(len(p), dtype=bool)
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        on_edge |= point_segment_distance(p, poly[i], poly[(i + 1) % n]) <= 1e-12
        crosses = (y1 > y) != (y2 > y)
        with np.errstate(divide="ignore", invalid="ignore"):
            x_int = x1 + (y - y1) / (y2 - y1) * (x2 - x1)
        inside ^= crosses & (x < np.where(crosses, x_int, np.inf))
    return inside | on_edge


def chamfer_points(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric chamfer distance between two point sets [n,2] and [m,2].

    0.5 * (mean over a of nearest distance in b + mean over b of nearest in a).
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 2 or b.ndim != 2 or a.shape[0] < 1 or b.shape[0] < 1:
        raise GeometryError("chamfer_points needs nonempty [n,2] and [m,2] arrays")
    d = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=-1)
    return 0.5 * (float(d.min(axis=1).mean()) + float(d.min(axis=0).mean()))
