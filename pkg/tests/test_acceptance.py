"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""
import json
import random
import threading
import time
from datetime import date

import pytest
from fastapi.testclient import TestClient

from conftest import (
    DEMO_SCHEDULE_CSV,
    demo_blocks_layer,
    layer_doc,
    polygon_feature,
    rect_ring,
    write_demo_bundle,
)
from oracles import (
    cpm_oracle,
    dag_to_csv,
    grid_union_area,
    random_dag,
    random_rect_set,
    shoelace,
    star_polygon,
)

from fourd.bundle import load_bundle
from fourd.extrusion import Mesh, extrude_feature
from fourd.geom.model import (
    Feature,
    Geometry,
    Layer,
    measure,
    normalize_polygon_part,
    parse_layer_file,
    serialize_layer,
)
from fourd.geom.union import polygon_union
from fourd.linkage import validate_linkage
from fourd.schedule import ProjectCalendar, compute_cpm, parse_schedule
from fourd.scene import build_scene, export_scene, parse_scene
from fourd.service import create_app
from fourd.takeoff import ResourceItem, build_boq


def _pass(name: str) -> None:
    print(f"\nACCEPTANCE {name}: PASS")


def rect_geom(x0, y0, x1, y1):
    ring = ((float(x0), float(y0)), (float(x1), float(y0)),
            (float(x1), float(y1)), (float(x0), float(y1)),
            (float(x0), float(y0)))
    return Geometry("polygon", (normalize_polygon_part([ring]),))


def test_cpm_oracle_equivalence():
    """500 random DAGs match exhaustive path enumeration exactly, < 10 s."""
    rng = random.Random(20070101)
    started = time.perf_counter()
    for _ in range(500):
        rows = random_dag(rng, max_activities=10, max_duration=9)
        result = compute_cpm(parse_schedule(dag_to_csv(rows)))
        expected, duration = cpm_oracle(rows)
        assert result.project_duration == duration
        for t in result.times:
            e = expected[t.activity_id]
            assert t.es == e["es"] and t.ef == e["ef"]
            assert t.ls == e["ls"] and t.lf == e["lf"]
            assert t.total_float == e["total_float"]
            assert t.free_float == e["free_float"]
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0, f"CPM oracle sweep took {elapsed:.1f}s"
    _pass("CPM oracle equivalence (500 DAGs)")


def test_diamond_fixture():
    """A(1)->{B(2),C(5)}->D(1): duration 7, TF(B)=FF(B)=3, critical {A,C,D}."""
    result = compute_cpm(parse_schedule(
        "Activity_ID,Name,Duration,Predecessors\nA,,1,\nB,,2,A\nC,,5,A\nD,,1,B;C\n"))
    assert result.project_duration == 7
    b = result.by_id["B"]
    assert b.total_float == 3 and b.free_float == 3
    assert result.critical_activity_ids == ("A", "C", "D")
    _pass("diamond fixture")


def test_union_area_oracle():
    """200 random rect sets within 0.5% of the grid oracle; adjacency fixture."""
    rng = random.Random(20070102)
    for _ in range(200):
        rects = random_rect_set(rng, max_rects=6, step=0.01)
        out = polygon_union([rect_geom(*r) for r in rects])
        expected = grid_union_area(rects, resolution=1e-3)
        assert measure(out).area == pytest.approx(expected, rel=5e-3)

    out = polygon_union([rect_geom(0, 0, 1, 1), rect_geom(1, 0, 2, 1)])
    assert len(out.parts) == 1
    ring = out.parts[0][0]
    assert len(ring) == 5  # 4 distinct vertices, closing duplicate
    assert abs(measure(out).area - 2.0) <= 1e-9
    _pass("union area oracle (200 rect sets + adjacency fixture)")


def test_extrusion_consistency():
    """Mesh signed volume vs shoelace * height; translation invariance."""
    rng = random.Random(20070103)
    for _ in range(100):
        ring = star_polygon(rng, rng.randint(3, 12))
        height = rng.uniform(0.05, 9.0)
        base = rng.uniform(-4.0, 4.0)
        feature = Feature(
            geometry=Geometry("polygon", (normalize_polygon_part([ring]),)),
            attributes={"Activity_ID": "A", "Base_Height": base,
                        "Feature_Height": height})
        prism = extrude_feature(feature)
        expected = abs(shoelace(ring)) * height
        assert prism.mesh.signed_volume() == pytest.approx(expected, rel=1e-6)

        moved = tuple((x + 101.5, y - 57.25) for x, y in ring)
        moved_prism = extrude_feature(Feature(
            geometry=Geometry("polygon", (normalize_polygon_part([moved]),)),
            attributes={"Activity_ID": "A", "Base_Height": base,
                        "Feature_Height": height}))
        assert abs(moved_prism.volume - prism.volume) < 1e-9
        assert abs(moved_prism.mesh.signed_volume()
                   - prism.mesh.signed_volume()) < 1e-9 * max(1.0, expected)
    _pass("extrusion consistency (100 polygons)")


def _six_activity_fixture():
    schedule = parse_schedule(DEMO_SCHEDULE_CSV)
    ids = list(schedule.ids())
    features = [polygon_feature(aid, [rect_ring(i * 3, 0, i * 3 + 2, 2)])
                for i, aid in enumerate(ids)]
    layer = parse_layer_file(json.dumps(layer_doc("geom", "polygon", features)))
    return schedule, layer, ids


def test_linkage_fault_injection():
    """Every single-fault mutation yields exactly one report entry."""
    schedule, layer, ids = _six_activity_fixture()
    baseline = validate_linkage(schedule, [layer])
    assert baseline.complete

    for aid in ids:
        kept = tuple(f for f in layer.features
                     if f.attributes["Activity_ID"] != aid)
        mutated = Layer(name=layer.name, geometry_kind=layer.geometry_kind,
                        fields=layer.fields, features=kept)
        report = validate_linkage(schedule, [mutated])
        assert report.unlinked_activities == (aid,)
        assert report.orphan_features == ()

    for position in range(len(ids)):
        orphan = parse_layer_file(json.dumps(layer_doc(
            "geom", "polygon",
            [polygon_feature("ZZ9", [rect_ring(50, 50, 51, 51)])]))).features[0]
        features = list(layer.features)
        features.insert(position, orphan)
        mutated = Layer(name=layer.name, geometry_kind=layer.geometry_kind,
                        fields=layer.fields, features=tuple(features))
        report = validate_linkage(schedule, [mutated])
        assert report.unlinked_activities == ()
        assert len(report.orphan_features) == 1
        assert report.orphan_features[0][2] == "ZZ9"
    _pass("linkage fault injection (6-activity fixture)")


def test_scene_monotonicity():
    """Completed sets nest over all dates; counts always sum; end completed."""
    rows = ["Activity_ID,Name,Duration,Predecessors",
            "A,,2,", "B,,3,A", "C,,1,A", "D,,4,B;C", "E,,0,D",
            "F,,2,D", "G,,5,A", "H,,2,F;G", "I,,3,H", "J,,1,E;I"]
    schedule = parse_schedule("\n".join(rows) + "\n")
    cpm = compute_cpm(schedule)
    calendar = ProjectCalendar(date(2007, 1, 1))
    box = Mesh((0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0), (0, 1, 2))
    meshes = {aid: box for aid in schedule.ids()}

    previous_completed: set = set()
    previous_not_started = set(schedule.ids())
    last = None
    for offset in range(cpm.project_duration + 1):
        snap = build_scene(cpm, calendar, meshes, calendar.date_of(offset))
        completed = snap.completed_ids()
        not_started = snap.not_started_ids()
        assert previous_completed <= completed
        assert not_started <= previous_not_started
        assert sum(snap.summary.values()) == 10
        previous_completed, previous_not_started = completed, not_started
        last = snap
    assert last.summary["completed"] == 10
    assert len(last.elements) == 10
    _pass("scene monotonicity (10 activities, every date)")


def test_boq_determinism():
    """Grand total invariant under permutation; duplicates/omissions reported."""
    rng = random.Random(20070104)
    prisms = []
    items = []
    for i in range(8):
        aid = f"A{i}"
        feature = Feature(
            geometry=rect_geom(i * 2, 0, i * 2 + 1.5, 1.25),
            attributes={"Activity_ID": aid, "Base_Height": 0.0,
                        "Feature_Height": rng.uniform(0.5, 4.0)})
        prisms.append(extrude_feature(feature))
        items.append(ResourceItem(activity_id=aid, item="Concrete", unit="m3",
                                  unit_rate=rng.uniform(50, 200)))
    _, base_report = build_boq(prisms, items)
    for _ in range(10):
        shuffled_p = prisms[:]
        shuffled_i = items[:]
        rng.shuffle(shuffled_p)
        rng.shuffle(shuffled_i)
        _, report = build_boq(shuffled_p, shuffled_i)
        assert report.grand_total == pytest.approx(base_report.grand_total, rel=1e-9)

    dup_items = items + [ResourceItem(activity_id="A0", item="Concrete",
                                      unit="m3", unit_rate=10.0)]
    _, dup_report = build_boq(prisms, dup_items)
    assert ("A0", "Concrete") in dup_report.duplicate_items

    _, omit_report = build_boq(prisms, items[:-1])
    assert omit_report.omitted_activities == ("A7",)
    _pass("BOQ determinism + duplicate/omission detection")


def test_service_consistency(tmp_path):
    """Concurrent reads see single-revision-consistent, expected bytes."""
    manifest = write_demo_bundle(tmp_path)
    probe = "2007-01-08"

    slow = DEMO_SCHEDULE_CSV.replace("EXC,Excavation,2,", "EXC,Excavation,6,")
    fast = DEMO_SCHEDULE_CSV.replace("WAL,Walls,4,FND", "WAL,Walls,1,FND")
    valid_sequence = [slow, fast, DEMO_SCHEDULE_CSV, slow, fast]
    invalid = "Activity_ID,Name,Duration,Predecessors\nA,X,1,B\nB,Y,1,A\n"

    # expected scene bytes per revision, computed offline from the same files
    expected: dict[int, bytes] = {}
    offline = load_bundle(manifest)
    project = offline.current().project
    expected[1] = export_scene(build_scene(
        project.cpm, project.calendar, project.element_meshes,
        date.fromisoformat(probe)))
    for i, csv_text in enumerate(valid_sequence, start=2):
        offline.submit_revision(csv_text)
        p = offline.current().project
        expected[i] = export_scene(build_scene(
            p.cpm, p.calendar, p.element_meshes, date.fromisoformat(probe)))

    bundle = load_bundle(manifest)
    app = create_app(bundle)
    stop = threading.Event()
    failures: list[str] = []

    def reader(worker: int) -> None:
        client = TestClient(app)
        last_revision = 0
        while not stop.is_set():
            response = client.get("/api/v1/scene", params={"date": probe})
            revision = int(response.headers["X-Revision"])
            if revision < last_revision:
                failures.append(f"reader {worker}: revision went backwards")
                return
            last_revision = revision
            if response.content != expected[revision]:
                failures.append(
                    f"reader {worker}: body inconsistent with revision {revision}")
                return

    threads = [threading.Thread(target=reader, args=(i,)) for i in range(50)]
    for t in threads:
        t.start()
    try:
        writer = TestClient(app)
        submissions = []
        for csv_text in valid_sequence:
            submissions.extend([invalid, csv_text])
        revision = 1
        for body in submissions:
            response = writer.post("/api/v1/revisions", content=body)
            if body is invalid:
                assert response.status_code == 422
                assert int(response.json()["revision"]) == revision
                check = writer.get("/api/v1/scene", params={"date": probe})
                assert check.content == expected[revision]
                assert int(check.headers["X-Revision"]) == revision
            else:
                assert response.status_code == 200
                revision = int(response.json()["revision"])
            time.sleep(0.02)
        assert revision == 6
    finally:
        stop.set()
        for t in threads:
            t.join(timeout=10)
    assert not failures, failures
    _pass("service consistency (50 readers, 10 submissions)")


def test_round_trips(tmp_path):
    """Layer JSON and scene_json serialize -> parse -> serialize byte-identically."""
    layer_text = serialize_layer(parse_layer_file(json.dumps(demo_blocks_layer())))
    assert serialize_layer(parse_layer_file(layer_text)) == layer_text

    manifest = write_demo_bundle(tmp_path)
    project = load_bundle(manifest).current().project
    for offset in (0, 5, 14):
        on = project.calendar.date_of(offset)
        data = export_scene(build_scene(project.cpm, project.calendar,
                                        project.element_meshes, on))
        assert export_scene(parse_scene(data)) == data
    _pass("round-trips (layer JSON + scene_json)")
