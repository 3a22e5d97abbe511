"""Pure-Python geometry kernels.

Fallback backend used when the compiled extension is unavailable.  Both
backends implement exactly the same contract; ``fourd.geom.kernels``
selects one at import time.

Coordinate convention: rings and paths are flat lists ``[x0, y0, x1, y1,
...]``.  Rings are closed (first vertex repeated at the end).
"""
from __future__ import annotations

import math

BACKEND_NAME = "python"


def ring_signed_area(coords: list[float]) -> float:
    """Shoelace signed area of a closed flat ring (CCW positive)."""
    n = len(coords) // 2
    acc = 0.0
    for i in range(n - 1):
        x0 = coords[2 * i]
        y0 = coords[2 * i + 1]
        x1 = coords[2 * i + 2]
        y1 = coords[2 * i + 3]
        acc += x0 * y1 - x1 * y0
    return 0.5 * acc


def polyline_length(coords: list[float]) -> float:
    """Total length of a flat path (perimeter when the path is a closed ring)."""
    n = len(coords) // 2
    acc = 0.0
    for i in range(n - 1):
        dx = coords[2 * i + 2] - coords[2 * i]
        dy = coords[2 * i + 3] - coords[2 * i + 1]
        acc += math.sqrt(dx * dx + dy * dy)
    return acc


def _point_segment_dist2(px: float, py: float,
                         ax: float, ay: float, bx: float, by: float) -> float:
    dx = bx - ax
    dy = by - ay
    d2 = dx * dx + dy * dy
    if d2 <= 0.0:
        ex = px - ax
        ey = py - ay
        return ex * ex + ey * ey
    t = ((px - ax) * dx + (py - ay) * dy) / d2
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    ex = px - (ax + t * dx)
    ey = py - (ay + t * dy)
    return ex * ex + ey * ey


def point_in_ring(px: float, py: float, coords: list[float], tol: float = 0.0) -> int:
    """Locate a point against a closed flat ring.

    Returns 2 if within ``tol`` of the boundary, else 1 inside / 0 outside
    by crossing parity.
    """
    n = len(coords) // 2
    tol2 = tol * tol
    inside = False
    for i in range(n - 1):
        x0 = coords[2 * i]
        y0 = coords[2 * i + 1]
        x1 = coords[2 * i + 2]
        y1 = coords[2 * i + 3]
        if tol > 0.0 and _point_segment_dist2(px, py, x0, y0, x1, y1) <= tol2:
            return 2
        if (y0 > py) != (y1 > py):
            xint = x0 + (py - y0) * (x1 - x0) / (y1 - y0)
            if px < xint:
                inside = not inside
    return 1 if inside else 0


def segment_split_params(segs: list[float], eps: float) -> list[list[float]]:
    """All-pairs split parameters for a set of segments.

    ``segs`` is flat ``[ax, ay, bx, by] * n``.  Returns, per segment, the
    ``t`` parameters (strictly interior, unsorted, possibly duplicated)
    where other segments cross it, touch it, or overlap it collinearly.
    Split points closer than ``eps`` to an endpoint are suppressed; vertex
    snapping absorbs them later.
    """
    n = len(segs) // 4
    out: list[list[float]] = [[] for _ in range(n)]
    lens = [0.0] * n
    for i in range(n):
        dx = segs[4 * i + 2] - segs[4 * i]
        dy = segs[4 * i + 3] - segs[4 * i + 1]
        lens[i] = math.sqrt(dx * dx + dy * dy)

    for i in range(n):
        li = lens[i]
        if li <= eps:
            continue
        ax = segs[4 * i]
        ay = segs[4 * i + 1]
        dix = segs[4 * i + 2] - ax
        diy = segs[4 * i + 3] - ay
        for j in range(i + 1, n):
            lj = lens[j]
            if lj <= eps:
                continue
            cx = segs[4 * j]
            cy = segs[4 * j + 1]
            djx = segs[4 * j + 2] - cx
            djy = segs[4 * j + 3] - cy

            # collinear overlap: both endpoints of j within eps of line(i)
            da = abs((cx - ax) * diy - (cy - ay) * dix) / li
            db = abs((cx + djx - ax) * diy - (cy + djy - ay) * dix) / li
            if da <= eps and db <= eps:
                _project_onto(out[i], ax, ay, dix, diy, li, cx, cy, eps)
                _project_onto(out[i], ax, ay, dix, diy, li, cx + djx, cy + djy, eps)
                _project_onto(out[j], cx, cy, djx, djy, lj, ax, ay, eps)
                _project_onto(out[j], cx, cy, djx, djy, lj, ax + dix, ay + diy, eps)
                continue

            den = dix * djy - diy * djx
            if den == 0.0:
                continue
            ex = cx - ax
            ey = cy - ay
            t = (ex * djy - ey * djx) / den
            u = (ex * diy - ey * dix) / den
            # both parameters must lie on their segments (eps slack past ends)
            if t * li < -eps or (t - 1.0) * li > eps:
                continue
            if u * lj < -eps or (u - 1.0) * lj > eps:
                continue
            if t * li > eps and (1.0 - t) * li > eps:
                out[i].append(t)
            if u * lj > eps and (1.0 - u) * lj > eps:
                out[j].append(u)
    return out


def _project_onto(acc: list[float], ax: float, ay: float, dx: float, dy: float,
                  seg_len: float, px: float, py: float, eps: float) -> None:
    d2 = dx * dx + dy * dy
    t = ((px - ax) * dx + (py - ay) * dy) / d2
    if t * seg_len > eps and (1.0 - t) * seg_len > eps:
        acc.append(t)


def mesh_signed_volume(positions: list[float], indices: list[int]) -> float:
    """Divergence-theorem volume of a triangle mesh (positive when outward)."""
    acc = 0.0
    for k in range(0, len(indices), 3):
        i0 = 3 * indices[k]
        i1 = 3 * indices[k + 1]
        i2 = 3 * indices[k + 2]
        x0, y0, z0 = positions[i0], positions[i0 + 1], positions[i0 + 2]
        x1, y1, z1 = positions[i1], positions[i1 + 1], positions[i1 + 2]
        x2, y2, z2 = positions[i2], positions[i2 + 1], positions[i2 + 2]
        acc += (x0 * (y1 * z2 - z1 * y2)
                - y0 * (x1 * z2 - z1 * x2)
                + z0 * (x1 * y2 - y1 * x2))
    return acc / 6.0
