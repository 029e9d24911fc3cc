"""Small planar helpers: shoelace areas, centroids, membership tests."""

from __future__ import annotations

import numpy as np

from .errors import NotClosedError

CLOSE_TOL = 1e-9


def require_closed(polyline: np.ndarray, tol: float = CLOSE_TOL) -> np.ndarray:
    pts = np.asarray(polyline, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
        raise NotClosedError("polyline must be an (n, 2) array with n >= 2")
    if np.max(np.abs(pts[0] - pts[-1])) > tol:
        raise NotClosedError("polyline endpoints differ by more than the tolerance")
    return pts


def signed_area(polyline: np.ndarray) -> float:
    pts = require_closed(polyline)
    x, y = pts[:-1, 0], pts[:-1, 1]
    xn, yn = pts[1:, 0], pts[1:, 1]
    return 0.5 * float(np.sum(x * yn - xn * y))


def polygon_area(polyline: np.ndarray) -> float:
    """Absolute shoelace area of a closed polyline."""
    return abs(signed_area(polyline))


def polygon_centroid(polyline: np.ndarray) -> np.ndarray:
    """Area centroid; falls back to the vertex mean for degenerate loops."""
    pts = require_closed(polyline)
    x, y = pts[:-1, 0], pts[:-1, 1]
    xn, yn = pts[1:, 0], pts[1:, 1]
    cross = x * yn - xn * y
    area = 0.5 * np.sum(cross)
    if abs(area) < 1e-12:
        return pts[:-1].mean(axis=0)
    cx = np.sum((x + xn) * cross) / (6.0 * area)
    cy = np.sum((y + yn) * cross) / (6.0 * area)
    return np.array([cx, cy])


def max_segment_length(polyline: np.ndarray) -> float:
    pts = np.asarray(polyline, dtype=float)
    if len(pts) < 2:
        return 0.0
    return float(np.max(np.linalg.norm(np.diff(pts, axis=0), axis=1)))


def _segment_distances(point, a, b):
    """Distances from one point to each segment a[i]->b[i]."""
    d = b - a
    pa = point - a
    denom = np.einsum("ij,ij->i", d, d)
    t = np.zeros(len(a))
    mask = denom > 0
    t[mask] = np.clip(np.einsum("ij,ij->i", pa[mask], d[mask]) / denom[mask], 0.0, 1.0)
    closest = a + t[:, None] * d
    return np.linalg.norm(point - closest, axis=1)


def points_in_polygon(polyline: np.ndarray, points: np.ndarray, eps: float) -> np.ndarray:
    """Even-odd membership with an eps-tube around the boundary counted as
    inside; returns a boolean mask."""
    pts = require_closed(polyline)
    a, b = pts[:-1], pts[1:]
    points = np.atleast_2d(np.asarray(points, dtype=float))
    out = np.zeros(len(points), dtype=bool)
    ay, by = a[:, 1], b[:, 1]
    ax, bx = a[:, 0], b[:, 0]
    for i, p in enumerate(points):
        straddle = (ay > p[1]) != (by > p[1])
        if straddle.any():
            xs = ax[straddle] + (p[1] - ay[straddle]) * (bx[straddle] - ax[straddle]) / (
                by[straddle] - ay[straddle]
            )
            inside = bool(np.count_nonzero(xs > p[0]) % 2)
        else:
            inside = False
        if not inside and eps > 0:
            inside = bool(np.min(_segment_distances(p, a, b)) <= eps)
        out[i] = inside
    return out
