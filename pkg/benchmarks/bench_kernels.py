#!/usr/bin/env python3
"""Benchmark the compiled geometry kernels against the pure-Python fallback.

Times each kernel on synthetic workloads and a full polygon union on both
backends.  Run after an editable install:

    python3 benchmarks/bench_kernels.py
"""
from __future__ import annotations

import math
import random
import time

from fourd.geom import _kernels_py, kernels
from fourd.geom.union import polygon_union
from fourd.geom.model import Geometry, normalize_polygon_part

try:
    from fourd.geom import _kernels_c
except ImportError:
    _kernels_c = None


def timed(fn, *args, repeats: int = 3) -> float:
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def big_ring(n: int) -> list[float]:
    coords: list[float] = []
    for i in range(n):
        a = 2 * math.pi * i / n
        r = 10.0 + math.sin(7 * a)
        coords.extend((r * math.cos(a), r * math.sin(a)))
    coords.extend(coords[:2])
    return coords


def random_segments(rng: random.Random, n: int) -> list[float]:
    out: list[float] = []
    for _ in range(n):
        x = rng.uniform(0, 50)
        y = rng.uniform(0, 50)
        out.extend((x, y, x + rng.uniform(-4, 4), y + rng.uniform(-4, 4)))
    return out


def big_mesh(rng: random.Random, tris: int):
    positions = [rng.uniform(-5, 5) for _ in range(3 * 3 * tris)]
    indices = list(range(3 * tris))
    return positions, indices


def rect_geoms(rng: random.Random, count: int):
    geoms = []
    for _ in range(count):
        x0 = rng.randrange(0, 200) * 0.05
        y0 = rng.randrange(0, 200) * 0.05
        w = rng.randrange(4, 60) * 0.05
        h = rng.randrange(4, 60) * 0.05
        ring = ((x0, y0), (x0 + w, y0), (x0 + w, y0 + h), (x0, y0 + h), (x0, y0))
        geoms.append(Geometry("polygon", (normalize_polygon_part([ring]),)))
    return geoms


def main() -> None:
    rng = random.Random(12)
    ring = big_ring(200_000)
    probe_ring = big_ring(1_000)
    segs = random_segments(rng, 700)
    positions, indices = big_mesh(rng, 300_000)

    def point_batch(mod):
        for i in range(20_000):
            mod.point_in_ring((i % 17) - 8.0, (i % 13) - 6.0, probe_ring)

    cases = [
        ("ring_signed_area (200k verts)",
         lambda m: m.ring_signed_area(ring)),
        ("polyline_length (200k verts)",
         lambda m: m.polyline_length(ring)),
        ("point_in_ring (20k x 1k ring)",
         point_batch),
        ("segment_split_params (700 segs)",
         lambda m: m.segment_split_params(segs, 1e-6)),
        ("mesh_signed_volume (300k tris)",
         lambda m: m.mesh_signed_volume(positions, indices)),
    ]

    print(f"{'kernel':38} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for name, runner in cases:
        py = timed(runner, _kernels_py)
        if _kernels_c is None:
            print(f"{name:38} {py * 1e3:9.1f}ms {'-':>10} {'-':>8}")
            continue
        cc = timed(runner, _kernels_c)
        print(f"{name:38} {py * 1e3:9.1f}ms {cc * 1e3:9.1f}ms {py / cc:7.1f}x")

    geoms = rect_geoms(rng, 120)
    results = {}
    for backend in kernels.available_backends():
        kernels.use_backend(backend)
        results[backend] = timed(lambda: polygon_union(geoms), repeats=2)
    kernels.use_backend("c" if _kernels_c is not None else "python")
    line = f"{'polygon_union (120 rects, end-to-end)':38}"
    line += f" {results.get('python', math.nan) * 1e3:9.1f}ms"
    if "c" in results:
        line += f" {results['c'] * 1e3:9.1f}ms {results['python'] / results['c']:7.1f}x"
    print(line)


if __name__ == "__main__":
    main()
