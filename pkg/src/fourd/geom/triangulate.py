"""Polygon triangulation for prism caps.

Ear clipping over a simple (or weakly simple) outer ring; holes are first
joined to the outer boundary through mutually visible bridge vertices, so
the clipped polygon is a single vertex cycle with duplicated bridge
points.  Output triangles are CCW in the plane.
"""
from __future__ import annotations

import math

from fourd.errors import LayerError
from fourd.geom.model import PolygonPart


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _point_in_triangle_strict(p, a, b, c) -> bool:
    d1 = _cross(a, b, p)
    d2 = _cross(b, c, p)
    d3 = _cross(c, a, p)
    return (d1 > 0 and d2 > 0 and d3 > 0) or (d1 < 0 and d2 < 0 and d3 < 0)


def _point_in_triangle_closed(p, a, b, c) -> bool:
    # boundary counts: grid-aligned polygons put vertices exactly on ear
    # diagonals, and those must block the clip
    d1 = _cross(a, b, p)
    d2 = _cross(b, c, p)
    d3 = _cross(c, a, p)
    return (d1 >= 0 and d2 >= 0 and d3 >= 0) or (d1 <= 0 and d2 <= 0 and d3 <= 0)


def _bridge_hole(cycle: list[int], verts: list[tuple[float, float]],
                 hole: list[int]) -> list[int]:
    """Splice a hole's vertex cycle into the outer cycle (Eberly's method)."""
    # hole vertex with maximum x is guaranteed to see the outer boundary
    m_pos = max(range(len(hole)), key=lambda i: verts[hole[i]])
    m = hole[m_pos]
    mx, my = verts[m]

    # closest intersection of the +x ray from m with outer cycle edges
    best_t = math.inf
    best_edge = -1
    n = len(cycle)
    for i in range(n):
        a = verts[cycle[i]]
        b = verts[cycle[(i + 1) % n]]
        if (a[1] > my) == (b[1] > my):
            continue
        t = a[0] + (my - a[1]) * (b[0] - a[0]) / (b[1] - a[1]) - mx
        if -1e-12 < t < best_t:
            best_t = t
            best_edge = i
    if best_edge < 0:
        raise LayerError("hole bridging failed: no visible outer edge")

    a_i = cycle[best_edge]
    b_i = cycle[(best_edge + 1) % n]
    ix = mx + best_t
    # candidate visible vertex: the intersected edge endpoint with larger x
    p = best_edge if verts[a_i][0] > verts[b_i][0] else (best_edge + 1) % n
    # reflex outer vertices inside triangle (m, i, p) can block the bridge;
    # take the one with the smallest angle off the ray (ties: nearest)
    tri_p = verts[cycle[p]]
    best_key = None
    for i in range(n):
        prev_v = verts[cycle[i - 1]]
        cur = verts[cycle[i]]
        nxt = verts[cycle[(i + 1) % n]]
        if _cross(prev_v, cur, nxt) >= 0:
            continue  # convex vertex cannot block
        if not _point_in_triangle_strict(cur, (mx, my), (ix, my), tri_p):
            continue
        dx = cur[0] - mx
        dy = cur[1] - my
        dist = math.hypot(dx, dy)
        key = (abs(dy) / dist if dist > 0 else 0.0, dist)
        if best_key is None or key < best_key:
            best_key = key
            p = i

    # splice: ... P, M, <hole in stored CW order>, M, P ... (bridge walked twice)
    rotated = hole[m_pos:] + hole[:m_pos]
    return cycle[: p + 1] + [m] + rotated[1:] + [m, cycle[p]] + cycle[p + 1:]


def triangulate_part(part: PolygonPart) -> tuple[list[tuple[float, float]], list[tuple[int, int, int]]]:
    """Triangulate one polygon part (outer ring CCW plus CW holes).

    Returns the vertex list (outer then hole vertices, closing duplicates
    dropped) and CCW triangles as index triples into it.
    """
    verts: list[tuple[float, float]] = []
    outer_idx: list[int] = []
    for x, y in part[0][:-1]:
        outer_idx.append(len(verts))
        verts.append((x, y))
    hole_cycles: list[list[int]] = []
    for hole in part[1:]:
        cycle = []
        for x, y in hole[:-1]:
            cycle.append(len(verts))
            verts.append((x, y))
        hole_cycles.append(cycle)

    cycle = list(outer_idx)
    # bridge holes right-to-left: holes further left cannot block a +x ray
    for hole in sorted(hole_cycles, key=lambda h: max(verts[i][0] for i in h), reverse=True):
        cycle = _bridge_hole(cycle, verts, hole)

    triangles: list[tuple[int, int, int]] = []
    remaining = list(cycle)
    guard = 0
    while len(remaining) > 3:
        guard += 1
        if guard > 4 * len(cycle) * len(cycle) + 64:
            raise LayerError("triangulation failed to converge")
        n = len(remaining)
        clipped = False
        # pass 0: proper ears, boundary-inclusive blocking
        # pass 1: also allow zero-area ears (collinear vertices drop out)
        # pass 2: strict-interior blocking only, as a last resort
        for mode in (0, 1, 2):
            for i in range(n):
                a = remaining[i - 1]
                b = remaining[i]
                c = remaining[(i + 1) % n]
                va, vb, vc = verts[a], verts[b], verts[c]
                area2 = _cross(va, vb, vc)
                if area2 < 0 or (area2 == 0 and mode == 0):
                    continue
                blocked = False
                for j in remaining:
                    if j in (a, b, c):
                        continue
                    vj = verts[j]
                    if vj == va or vj == vb or vj == vc:
                        continue  # coordinate duplicate (bridge / pinch copy)
                    inside = (_point_in_triangle_strict(vj, va, vb, vc) if mode == 2
                              else _point_in_triangle_closed(vj, va, vb, vc))
                    if inside:
                        blocked = True
                        break
                if blocked:
                    continue
                if area2 > 0:
                    triangles.append((a, b, c))
                remaining.pop(i)
                clipped = True
                break
            if clipped:
                break
        if not clipped:
            raise LayerError("triangulation stalled on degenerate polygon")
    a, b, c = remaining
    if _cross(verts[a], verts[b], verts[c]) > 0:
        triangles.append((a, b, c))
    return verts, triangles
