"""glTF 2.0 export of scene snapshots.

One node per scene element, mesh positions as float32 VEC3 accessors and
indices as uint32 scalars in a single embedded (base64 data URI) buffer.
Activity id, status, and progress ride on each node's ``extras``.
"""
from __future__ import annotations

import base64
import json
import struct

from fourd.scene import SceneSnapshot

_FLOAT = 5126          # GL_FLOAT
_UNSIGNED_INT = 5125   # GL_UNSIGNED_INT
_ARRAY_BUFFER = 34962
_ELEMENT_ARRAY_BUFFER = 34963


def _pad4(blob: bytearray) -> None:
    while len(blob) % 4:
        blob.append(0)


def export_scene_gltf(snapshot: SceneSnapshot) -> bytes:
    blob = bytearray()
    buffer_views = []
    accessors = []
    meshes = []
    nodes = []

    for e in snapshot.elements:
        positions = [float(v) for v in e.mesh.positions]
        indices = [int(i) for i in e.mesh.indices]
        vertex_count = len(positions) // 3

        _pad4(blob)
        pos_offset = len(blob)
        blob.extend(struct.pack(f"<{len(positions)}f", *positions))
        buffer_views.append({"buffer": 0, "byteOffset": pos_offset,
                             "byteLength": len(positions) * 4,
                             "target": _ARRAY_BUFFER})
        mins = [min(positions[i::3]) for i in range(3)] if vertex_count else [0.0, 0.0, 0.0]
        maxs = [max(positions[i::3]) for i in range(3)] if vertex_count else [0.0, 0.0, 0.0]
        accessors.append({
            "bufferView": len(buffer_views) - 1,
            "componentType": _FLOAT,
            "count": vertex_count,
            "type": "VEC3",
            # glTF stores float32; min/max must match the stored precision
            "min": [struct.unpack("<f", struct.pack("<f", v))[0] for v in mins],
            "max": [struct.unpack("<f", struct.pack("<f", v))[0] for v in maxs],
        })
        pos_accessor = len(accessors) - 1

        _pad4(blob)
        idx_offset = len(blob)
        blob.extend(struct.pack(f"<{len(indices)}I", *indices))
        buffer_views.append({"buffer": 0, "byteOffset": idx_offset,
                             "byteLength": len(indices) * 4,
                             "target": _ELEMENT_ARRAY_BUFFER})
        accessors.append({
            "bufferView": len(buffer_views) - 1,
            "componentType": _UNSIGNED_INT,
            "count": len(indices),
            "type": "SCALAR",
        })
        idx_accessor = len(accessors) - 1

        meshes.append({
            "name": e.activity_id,
            "primitives": [{
                "attributes": {"POSITION": pos_accessor},
                "indices": idx_accessor,
                "mode": 4,
            }],
        })
        nodes.append({
            "name": e.activity_id,
            "mesh": len(meshes) - 1,
            "extras": {
                "activity_id": e.activity_id,
                "status": e.status,
                "progress": e.progress,
            },
        })

    uri = "data:application/octet-stream;base64," + base64.b64encode(bytes(blob)).decode("ascii")
    doc = {
        "asset": {"version": "2.0", "generator": "fourd"},
        "scene": 0,
        "scenes": [{
            "name": snapshot.date.isoformat(),
            "nodes": list(range(len(nodes))),
            "extras": {"date": snapshot.date.isoformat(),
                       "summary": dict(snapshot.summary)},
        }],
        "nodes": nodes,
        "meshes": meshes,
        "accessors": accessors,
        "bufferViews": buffer_views,
        "buffers": [{"byteLength": len(blob), "uri": uri}],
    }
    if not nodes:
        for key in ("nodes", "meshes", "accessors", "bufferViews"):
            del doc[key]
        doc["buffers"] = []
        doc["scenes"][0]["nodes"] = []
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":")).encode("utf-8")
