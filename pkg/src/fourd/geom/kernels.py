"""Kernel backend selection.

The compiled extension (``fourd.geom._kernels_c``) is preferred; the
pure-Python module is a drop-in fallback.  Set ``FOURD_PURE_PYTHON=1`` to
force the fallback, e.g. for benchmarking or debugging.

Callers access kernels as attributes of this module
(``kernels.ring_signed_area(...)``) so a backend switch takes effect
everywhere at once.
"""
from __future__ import annotations

import os

from fourd.geom import _kernels_py

_BACKENDS = {"python": _kernels_py}
try:
    from fourd.geom import _kernels_c

    _BACKENDS["c"] = _kernels_c
except ImportError:
    _kernels_c = None

backend_name = "python"
ring_signed_area = _kernels_py.ring_signed_area
polyline_length = _kernels_py.polyline_length
point_in_ring = _kernels_py.point_in_ring
segment_split_params = _kernels_py.segment_split_params
mesh_signed_volume = _kernels_py.mesh_signed_volume


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def use_backend(name: str) -> str:
    """Rebind the exported kernels to the named backend ('c' or 'python')."""
    global backend_name, ring_signed_area, polyline_length, point_in_ring
    global segment_split_params, mesh_signed_volume
    try:
        mod = _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown kernel backend {name!r}; available: {available_backends()}"
        ) from None
    backend_name = name
    ring_signed_area = mod.ring_signed_area
    polyline_length = mod.polyline_length
    point_in_ring = mod.point_in_ring
    segment_split_params = mod.segment_split_params
    mesh_signed_volume = mod.mesh_signed_volume
    return backend_name


if os.environ.get("FOURD_PURE_PYTHON") == "1":
    use_backend("python")
elif "c" in _BACKENDS:
    use_backend("c")
