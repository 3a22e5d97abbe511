"""Independent oracles used to freeze expected values.

These deliberately avoid the engine's algorithms: the CPM oracle
enumerates every source-to-sink path, the union-area oracle samples a
grid, and the mesh check is plain analytic geometry.
"""
from __future__ import annotations

import math
import random

import numpy as np


def enumerate_paths(activities) -> list[list[str]]:
    """All source-to-sink paths of a DAG given as (id, duration, preds)."""
    by_id = {aid: (dur, preds) for aid, dur, preds in activities}
    succs: dict[str, list[str]] = {aid: [] for aid in by_id}
    for aid, (_, preds) in by_id.items():
        for p in preds:
            succs[p].append(aid)
    sources = [aid for aid, (_, preds) in by_id.items() if not preds]
    paths: list[list[str]] = []

    def walk(aid: str, acc: list[str]) -> None:
        acc = acc + [aid]
        if not succs[aid]:
            paths.append(acc)
            return
        for s in succs[aid]:
            walk(s, acc)

    for s in sources:
        walk(s, [])
    return paths


def cpm_oracle(activities):
    """Exhaustive-path CPM: es/ef/ls/lf/tf/ff per id plus project duration."""
    dur = {aid: d for aid, d, _ in activities}
    succs: dict[str, list[str]] = {aid: [] for aid in dur}
    for aid, _, preds in activities:
        for p in preds:
            succs[p].append(aid)
    paths = enumerate_paths(activities)
    project_duration = max(sum(dur[a] for a in path) for path in paths)

    es = {aid: 0 for aid in dur}
    ls = {aid: math.inf for aid in dur}
    for path in paths:
        acc = 0
        for a in path:
            es[a] = max(es[a], acc)
            acc += dur[a]
        tail = 0
        for a in reversed(path):
            tail += dur[a]
            ls[a] = min(ls[a], project_duration - tail)

    out = {}
    for aid in dur:
        ef = es[aid] + dur[aid]
        lf = int(ls[aid]) + dur[aid]
        ff = min((es[s] for s in succs[aid]), default=project_duration) - ef
        out[aid] = {
            "es": es[aid], "ef": ef, "ls": int(ls[aid]), "lf": lf,
            "total_float": int(ls[aid]) - es[aid], "free_float": ff,
        }
    return out, project_duration


def random_dag(rng: random.Random, max_activities: int = 10,
               max_duration: int = 9, edge_prob: float = 0.35):
    """Random DAG as (id, duration, preds) rows; acyclic by construction."""
    n = rng.randint(1, max_activities)
    ids = [f"T{i:02d}" for i in range(n)]
    rows = []
    for j in range(n):
        preds = {ids[i] for i in range(j) if rng.random() < edge_prob}
        rows.append((ids[j], rng.randint(0, max_duration), preds))
    return rows


def dag_to_csv(rows) -> str:
    lines = ["Activity_ID,Name,Duration,Predecessors"]
    for aid, dur, preds in rows:
        lines.append(f"{aid},task {aid},{dur},{';'.join(sorted(preds))}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# geometry oracles

GRID_RESOLUTION = 1e-3


def grid_union_area(rects, resolution: float = GRID_RESOLUTION) -> float:
    """Point-sampled area of a union of axis-aligned rectangles.

    Exact when all rectangle coordinates are multiples of the resolution,
    because cell centers then never fall on a boundary.
    """
    x0 = min(r[0] for r in rects)
    y0 = min(r[1] for r in rects)
    x1 = max(r[2] for r in rects)
    y1 = max(r[3] for r in rects)
    nx = int(round((x1 - x0) / resolution))
    ny = int(round((y1 - y0) / resolution))
    cx = x0 + (np.arange(nx) + 0.5) * resolution
    cy = y0 + (np.arange(ny) + 0.5) * resolution
    mask = np.zeros((ny, nx), dtype=bool)
    for rx0, ry0, rx1, ry1 in rects:
        ix = (cx >= rx0) & (cx < rx1)
        iy = (cy >= ry0) & (cy < ry1)
        mask |= iy[:, None] & ix[None, :]
    return float(mask.sum()) * resolution * resolution


def random_rect_set(rng: random.Random, max_rects: int = 6,
                    step: float = 0.01):
    """Axis-aligned rectangles on a coarse grid (multiples of ``step``).

    Coarse coordinates make shared edges and corners common, which is the
    hard regime for the union tracer, while staying exactly representable
    for the grid oracle.
    """
    count = rng.randint(1, max_rects)
    rects = []
    for _ in range(count):
        x0 = rng.randrange(0, 120) * step
        y0 = rng.randrange(0, 120) * step
        w = rng.randrange(5, 80) * step
        h = rng.randrange(5, 80) * step
        rects.append((round(x0, 10), round(y0, 10),
                      round(x0 + w, 10), round(y0 + h, 10)))
    return rects


def star_polygon(rng: random.Random, vertex_count: int,
                 r_min: float = 0.2, r_max: float = 1.5):
    """Simple polygon by construction: jittered angles, one radius each.

    Angular gaps stay below pi, so the origin is interior and radial
    ordering guarantees simplicity.
    """
    pts = []
    for i in range(vertex_count):
        a = 2 * math.pi * (i + rng.uniform(0.3, 0.7)) / vertex_count
        r = rng.uniform(r_min, r_max)
        pts.append((math.cos(a) * r, math.sin(a) * r))
    return tuple(pts) + (pts[0],)


def shoelace(ring) -> float:
    acc = 0.0
    for (x0, y0), (x1, y1) in zip(ring, ring[1:]):
        acc += x0 * y1 - x1 * y0
    return acc / 2.0
