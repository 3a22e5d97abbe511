"""Shared fixtures: the diamond network and a full demo bundle on disk."""
from __future__ import annotations

import json

import pytest

from fourd.schedule import compute_cpm, parse_schedule

DIAMOND_CSV = """Activity_ID,Name,Duration,Predecessors
A,Start,1,
B,Short branch,2,A
C,Long branch,5,A
D,Finish,1,B;C
"""

DEMO_SCHEDULE_CSV = """Activity_ID,Name,Duration,Predecessors
EXC,Excavation,2,
FND,Foundation,3,EXC
COL,Columns,2,FND
WAL,Walls,4,FND
SLB,Slab,2,COL;WAL
FIN,Finishing,3,SLB
"""

DEMO_RESOURCES_CSV = """Activity_ID,Item,Unit,Unit_Rate,Manual_Quantity
EXC,Excavation,m3,8.5,
FND,Concrete C25,m3,110,
COL,Column erection,count,75,
WAL,Blockwork,m2,24,
SLB,Slab concrete,m3,120,
FIN,Finishing works,manual,1000,1
"""


def rect_ring(x0, y0, x1, y1):
    return [[x0, y0], [x1, y0], [x1, y1], [x0, y1], [x0, y0]]


def polygon_feature(activity_id, rings, base=0.0, height=3.0, **extra):
    return {
        "geometry": {"rings": rings},
        "attributes": {"Activity_ID": activity_id, "Base_Height": base,
                       "Feature_Height": height, **extra},
    }


def layer_doc(name, kind, features, extra_fields=()):
    fields = [
        {"name": "Activity_ID", "type": "string"},
        {"name": "Base_Height", "type": "number"},
        {"name": "Feature_Height", "type": "number"},
    ]
    fields.extend(extra_fields)
    return {"name": name, "geometry_kind": kind, "fields": fields,
            "features": features}


def demo_blocks_layer() -> dict:
    features = [
        # excavation pit below grade
        polygon_feature("EXC", [rect_ring(0, 0, 10, 8)], base=-1.0, height=1.0),
        # two disjoint foundation pads, same activity -> multipart after merge
        polygon_feature("FND", [rect_ring(1, 1, 4, 3)], base=0.0, height=0.5),
        polygon_feature("FND", [rect_ring(6, 1, 9, 3)], base=0.0, height=0.5),
        # slab out of two edge-adjacent halves -> single ring after merge
        polygon_feature("SLB", [rect_ring(0, 0, 5, 8)], base=3.5, height=0.3),
        polygon_feature("SLB", [rect_ring(5, 0, 10, 8)], base=3.5, height=0.3),
        polygon_feature("FIN", [rect_ring(0, 0, 10, 8)], base=3.8, height=0.2),
    ]
    return layer_doc("blocks", "polygon", features)


def demo_walls_layer() -> dict:
    features = [
        {
            "geometry": {"path": [[0, 0], [10, 0], [10, 8]]},
            "attributes": {"Activity_ID": "WAL", "Base_Height": 0.5,
                           "Feature_Height": 3.0},
        },
        {
            "geometry": {"path": [[10, 8], [0, 8], [0, 0]]},
            "attributes": {"Activity_ID": "WAL", "Base_Height": 0.5,
                           "Feature_Height": 3.0},
        },
    ]
    return layer_doc("walls", "polyline", features)


def demo_columns_layer() -> dict:
    features = [
        {
            "geometry": {"point": [x, y]},
            "attributes": {"Activity_ID": "COL", "Base_Height": 0.5,
                           "Feature_Height": 3.0},
        }
        for x, y in ((2, 2), (8, 2), (2, 6), (8, 6))
    ]
    return layer_doc("columns", "point", features)


def write_demo_bundle(root, schedule_csv: str = DEMO_SCHEDULE_CSV,
                      resources_csv: str | None = DEMO_RESOURCES_CSV,
                      project_start: str = "2007-01-01"):
    """Write the demo project files under ``root``; returns manifest path."""
    (root / "schedule.csv").write_text(schedule_csv, encoding="utf-8")
    for doc in (demo_blocks_layer(), demo_walls_layer(), demo_columns_layer()):
        path = root / f"{doc['name']}.layer.json"
        path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    manifest = {
        "name": "demo",
        "project_start": project_start,
        "schedule": "schedule.csv",
        "layers": ["blocks.layer.json", "walls.layer.json", "columns.layer.json"],
    }
    if resources_csv is not None:
        (root / "resources.csv").write_text(resources_csv, encoding="utf-8")
        manifest["resources"] = "resources.csv"
    manifest_path = root / "project.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return manifest_path


@pytest.fixture
def diamond_schedule():
    return parse_schedule(DIAMOND_CSV)


@pytest.fixture
def diamond_cpm(diamond_schedule):
    return compute_cpm(diamond_schedule)


@pytest.fixture
def demo_manifest(tmp_path):
    return write_demo_bundle(tmp_path)
