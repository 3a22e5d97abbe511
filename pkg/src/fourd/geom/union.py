"""Boolean union of polygons.

Overlapping or edge-adjacent footprints fuse into single rings with the
shared boundaries removed; disjoint footprints stay as parts of one
multipart polygon.

Method: snap vertices within epsilon, split every edge at its
intersections with every other edge, keep exactly the fragments that
separate union interior from exterior (sampled on both sides), then chain
the kept fragments into rings by always taking the tightest clockwise
turn.  That rule walks each boundary with the interior on its left, so
outer rings come out CCW and hole rings CW.
"""
from __future__ import annotations

import math

from fourd.errors import UnionError
from fourd.geom import kernels
from fourd.geom.model import (
    DEFAULT_EPSILON,
    Geometry,
    PolygonPart,
    Ring,
    flat_ring,
    ring_signed_area,
)

TWO_PI = 2.0 * math.pi


class _NodeIndex:
    """Snaps coordinates to stable node keys within epsilon."""

    def __init__(self, eps: float):
        self.eps = eps
        self.reps: dict[tuple[int, int], tuple[float, float]] = {}

    def key(self, x: float, y: float) -> tuple[int, int]:
        eps = self.eps
        kx = round(x / eps)
        ky = round(y / eps)
        # probe neighbor cells so near-boundary duplicates share one node
        for dx in (0, -1, 1):
            for dy in (0, -1, 1):
                k = (kx + dx, ky + dy)
                rep = self.reps.get(k)
                if rep is not None and abs(rep[0] - x) <= eps and abs(rep[1] - y) <= eps:
                    return k
        self.reps[(kx, ky)] = (x, y)
        return (kx, ky)

    def coords(self, key: tuple[int, int]) -> tuple[float, float]:
        return self.reps[key]


def _coverage_rings(geoms) -> list[list[tuple[list[float], list[list[float]]]]]:
    """Per input geometry: list of (outer_flat, [hole_flat, ...])."""
    out = []
    for g in geoms:
        parts = []
        for part in g.parts:
            parts.append((flat_ring(part[0]), [flat_ring(h) for h in part[1:]]))
        out.append(parts)
    return out


def _covers(parts, x: float, y: float) -> bool:
    for outer, holes in parts:
        if kernels.point_in_ring(x, y, outer) == 1:
            if all(kernels.point_in_ring(x, y, h) != 1 for h in holes):
                return True
    return False


def _simplify_ring(points: list[tuple[float, float]], eps: float) -> list[tuple[float, float]]:
    """Drop duplicate and collinear-within-eps vertices of a closed ring."""
    pts = [points[0]]
    for p in points[1:]:
        lx, ly = pts[-1]
        if abs(p[0] - lx) > eps or abs(p[1] - ly) > eps:
            pts.append(p)
    if len(pts) > 1 and abs(pts[0][0] - pts[-1][0]) <= eps and abs(pts[0][1] - pts[-1][1]) <= eps:
        pts.pop()
    changed = True
    while changed and len(pts) > 3:
        changed = False
        for i in range(len(pts)):
            ax, ay = pts[i - 1]
            bx, by = pts[i]
            cx, cy = pts[(i + 1) % len(pts)]
            dx = cx - ax
            dy = cy - ay
            d2 = dx * dx + dy * dy
            if d2 == 0.0:
                continue
            t = ((bx - ax) * dx + (by - ay) * dy) / d2
            if t < 0.0 or t > 1.0:
                continue
            ex = bx - (ax + t * dx)
            ey = by - (ay + t * dy)
            if ex * ex + ey * ey <= eps * eps:
                pts.pop(i)
                changed = True
                break
    return pts


def _rotate_to_min(pts: list[tuple[float, float]]) -> list[tuple[float, float]]:
    k = min(range(len(pts)), key=lambda i: pts[i])
    return pts[k:] + pts[:k]


def polygon_union(geoms, epsilon: float = DEFAULT_EPSILON) -> Geometry:
    """Union a list of polygon geometries into one (possibly multipart) polygon."""
    if epsilon <= 0.0:
        raise UnionError("epsilon must be > 0")
    geoms = list(geoms)
    for gi, g in enumerate(geoms):
        if g.kind != "polygon":
            raise UnionError(f"input {gi}: expected polygon geometry, got {g.kind}")
        for pi, part in enumerate(g.parts):
            if abs(ring_signed_area(part[0])) <= epsilon * epsilon:
                raise UnionError(f"degenerate zero-area polygon: input {gi}, part {pi}")
    if not geoms:
        raise UnionError("polygon_union needs at least one input polygon")

    coverage = _coverage_rings(geoms)

    def covered(x: float, y: float) -> int:
        return sum(1 for parts in coverage if _covers(parts, x, y))

    # collect edges of every ring of every part of every input
    segs: list[float] = []
    for g in geoms:
        for part in g.parts:
            for ring in part:
                for i in range(len(ring) - 1):
                    ax, ay = ring[i]
                    bx, by = ring[i + 1]
                    if math.hypot(bx - ax, by - ay) > epsilon:
                        segs.extend((ax, ay, bx, by))

    splits = kernels.segment_split_params(segs, epsilon)

    nodes = _NodeIndex(epsilon)
    fragments: dict[tuple, tuple] = {}  # unordered key pair -> (ka, kb)
    nseg = len(segs) // 4
    for i in range(nseg):
        ax, ay, bx, by = segs[4 * i: 4 * i + 4]
        ts = sorted(set([0.0, 1.0] + splits[i]))
        pts = [(ax + t * (bx - ax), ay + t * (by - ay)) for t in ts]
        keys = [nodes.key(x, y) for x, y in pts]
        for ka, kb in zip(keys, keys[1:]):
            if ka == kb:
                continue
            pair = (ka, kb) if ka <= kb else (kb, ka)
            fragments.setdefault(pair, (ka, kb))

    # keep only fragments separating interior from exterior, interior on left
    delta = 0.5 * epsilon
    directed: list[tuple[tuple, tuple]] = []
    for ka, kb in fragments.values():
        ax, ay = nodes.coords(ka)
        bx, by = nodes.coords(kb)
        dx = bx - ax
        dy = by - ay
        ln = math.hypot(dx, dy)
        if ln == 0.0:
            continue
        mx = 0.5 * (ax + bx)
        my = 0.5 * (ay + by)
        nx = -dy / ln
        ny = dx / ln
        left = covered(mx + nx * delta, my + ny * delta) > 0
        right = covered(mx - nx * delta, my - ny * delta) > 0
        if left == right:
            continue
        directed.append(((ka, kb) if left else (kb, ka)))

    if not directed:
        raise UnionError("internal: union produced no boundary")

    # node -> outgoing edges with departure angles
    out_edges: dict[tuple, list[tuple[float, tuple]]] = {}
    for a, b in directed:
        xa, ya = nodes.coords(a)
        xb, yb = nodes.coords(b)
        out_edges.setdefault(a, []).append((math.atan2(yb - ya, xb - xa), b))
    for lst in out_edges.values():
        lst.sort()

    def next_edge(prev: tuple, node: tuple) -> tuple[tuple, tuple]:
        xn, yn = nodes.coords(node)
        xp, yp = nodes.coords(prev)
        rev = math.atan2(yp - yn, xp - xn)
        best = None
        best_delta = TWO_PI + 1.0
        for ang, to in out_edges[node]:
            d = (rev - ang) % TWO_PI
            if d < 1e-12:
                d = TWO_PI  # pure back-track only as a last resort
            if d < best_delta:
                best_delta = d
                best = (node, to)
        if best is None:
            raise UnionError("internal: dead end while tracing boundary")
        return best

    used: set[tuple[tuple, tuple]] = set()
    rings: list[list[tuple[float, float]]] = []
    for start in sorted(directed):
        if start in used:
            continue
        walk = [start]
        used.add(start)
        while True:
            a, b = walk[-1]
            nxt = next_edge(a, b)
            if nxt == start:
                break
            if nxt in used:
                raise UnionError("internal: boundary tracing revisited an edge")
            used.add(nxt)
            walk.append(nxt)
        pts = [nodes.coords(a) for a, _ in walk]
        pts.append(nodes.coords(walk[-1][1]))
        pts = _simplify_ring(pts, epsilon)
        if len(pts) < 3:
            continue
        closed = tuple(_rotate_to_min(pts))
        ring: Ring = closed + (closed[0],)
        if abs(ring_signed_area(ring)) <= epsilon * epsilon:
            continue
        rings.append(list(ring))

    outers: list[Ring] = []
    holes: list[Ring] = []
    for pts in rings:
        ring = tuple(pts)
        if ring_signed_area(ring) > 0.0:
            outers.append(ring)
        else:
            holes.append(ring)
    if not outers:
        raise UnionError("internal: union produced no outer ring")

    outer_flats = [flat_ring(r) for r in outers]
    outer_areas = [ring_signed_area(r) for r in outers]
    part_holes: list[list[Ring]] = [[] for _ in outers]
    for hole in holes:
        # sample just inside the void (to the right of the CW hole boundary)
        (ax, ay), (bx, by) = hole[0], hole[1]
        ln = math.hypot(bx - ax, by - ay)
        sx = 0.5 * (ax + bx) + (by - ay) / ln * delta
        sy = 0.5 * (ay + by) - (bx - ax) / ln * delta
        best = None
        for i, flat in enumerate(outer_flats):
            if kernels.point_in_ring(sx, sy, flat) == 1:
                if best is None or outer_areas[i] < outer_areas[best]:
                    best = i
        if best is None:
            raise UnionError("internal: hole ring not contained in any outer ring")
        part_holes[best].append(hole)

    order = sorted(range(len(outers)), key=lambda i: outers[i][0])
    parts: list[PolygonPart] = []
    for i in order:
        hs = sorted(part_holes[i], key=lambda h: h[0])
        parts.append((outers[i],) + tuple(hs))
    return Geometry("polygon", tuple(parts))
