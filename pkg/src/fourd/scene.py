"""Dated scene snapshots and schedule revision diffs.

Status comes from early dates: an activity is in progress from its
early-start date through the day before its early-finish date (work
occupies days es .. ef-1), so it is completed on the ef date itself.
Zero-duration activities are completed at their es date and never in
progress.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import date, timedelta

from fourd.extrusion import Mesh
from fourd.schedule import CpmResult, ProjectCalendar, Schedule

STATUSES = ("not_started", "in_progress", "completed")


@dataclass(frozen=True)
class SceneElement:
    activity_id: str
    status: str
    progress: float
    mesh: Mesh


@dataclass(frozen=True)
class SceneSnapshot:
    date: date
    elements: tuple[SceneElement, ...]  # sorted by activity_id
    summary: dict  # status -> count

    def completed_ids(self) -> set[str]:
        return {e.activity_id for e in self.elements if e.status == "completed"}

    def not_started_ids(self) -> set[str]:
        return {e.activity_id for e in self.elements if e.status == "not_started"}


def element_status(times, offset: int) -> tuple[str, float]:
    """Status and progress fraction of one activity at a day offset."""
    if offset < times.es:
        return "not_started", 0.0
    if offset >= times.ef:
        return "completed", 1.0
    return "in_progress", (offset - times.es) / times.duration


def build_scene(cpm: CpmResult, calendar: ProjectCalendar,
                meshes: dict[str, Mesh], on: date) -> SceneSnapshot:
    """Snapshot of every linked activity (those with a mesh) at a date."""
    if on < calendar.project_start:
        raise ValueError("date before project start")
    offset = calendar.offset_of(on)
    elements = []
    counts = {status: 0 for status in STATUSES}
    for times in sorted(cpm.times, key=lambda t: t.activity_id):
        mesh = meshes.get(times.activity_id)
        if mesh is None:
            continue
        status, progress = element_status(times, offset)
        counts[status] += 1
        elements.append(SceneElement(
            activity_id=times.activity_id, status=status,
            progress=progress, mesh=mesh))
    return SceneSnapshot(date=on, elements=tuple(elements), summary=counts)


def scene_sequence(cpm: CpmResult, calendar: ProjectCalendar,
                   meshes: dict[str, Mesh], start: date, end: date,
                   step: int = 1) -> list[SceneSnapshot]:
    """Snapshots at start, start+step, ..., plus one at end if not hit."""
    if start > end:
        raise ValueError("invalid range: from > to")
    if step < 1:
        raise ValueError("step must be >= 1 day")
    snapshots = []
    current = start
    while current <= end:
        snapshots.append(build_scene(cpm, calendar, meshes, current))
        current = current + timedelta(days=step)
    if snapshots[-1].date != end:
        snapshots.append(build_scene(cpm, calendar, meshes, end))
    return snapshots


# ---------------------------------------------------------------------------
# revision diff

@dataclass(frozen=True)
class RevisionDiff:
    added: tuple[str, ...]
    removed: tuple[str, ...]
    changed: tuple[tuple[str, str, object, object], ...]  # (id, field, old, new)
    retimed: tuple[str, ...]  # es or ef moved

    @property
    def is_empty(self) -> bool:
        return not (self.added or self.removed or self.changed or self.retimed)

    def to_dict(self) -> dict:
        return {
            "added": list(self.added),
            "removed": list(self.removed),
            "changed": [
                {"activity_id": aid, "field": fld, "old": old, "new": new}
                for aid, fld, old, new in self.changed
            ],
            "retimed": list(self.retimed),
        }


def diff_revisions(old_schedule: Schedule, old_cpm: CpmResult,
                   new_schedule: Schedule, new_cpm: CpmResult) -> RevisionDiff:
    """Field-level diff over duration/predecessors plus CPM retiming."""
    old_by_id = old_schedule.by_id
    new_by_id = new_schedule.by_id
    added = tuple(sorted(set(new_by_id) - set(old_by_id)))
    removed = tuple(sorted(set(old_by_id) - set(new_by_id)))
    common = sorted(set(old_by_id) & set(new_by_id))

    changed = []
    for aid in common:
        o, n = old_by_id[aid], new_by_id[aid]
        if o.duration != n.duration:
            changed.append((aid, "duration", o.duration, n.duration))
        if o.predecessors != n.predecessors:
            changed.append((aid, "predecessors",
                            sorted(o.predecessors), sorted(n.predecessors)))

    old_times = old_cpm.by_id
    new_times = new_cpm.by_id
    retimed = tuple(
        aid for aid in common
        if (old_times[aid].es, old_times[aid].ef) != (new_times[aid].es, new_times[aid].ef)
    )
    return RevisionDiff(added=added, removed=removed,
                        changed=tuple(changed), retimed=retimed)


# ---------------------------------------------------------------------------
# serialization

def scene_document(snapshot: SceneSnapshot) -> dict:
    """scene_json document with keys in canonical order."""
    return {
        "date": snapshot.date.isoformat(),
        "elements": [
            {
                "activity_id": e.activity_id,
                "status": e.status,
                "progress": e.progress,
                "mesh": {
                    "positions": list(e.mesh.positions),
                    "indices": list(e.mesh.indices),
                },
            }
            for e in snapshot.elements
        ],
        "summary": {status: snapshot.summary.get(status, 0) for status in STATUSES},
    }


def export_scene(snapshot: SceneSnapshot, format: str = "scene_json") -> bytes:
    """Serialize a snapshot; scene_json output is byte-deterministic."""
    if format == "scene_json":
        doc = scene_document(snapshot)
        return (json.dumps(doc, ensure_ascii=False, separators=(",", ":"))).encode("utf-8")
    if format == "gltf_like":
        from fourd.gltf import export_scene_gltf

        return export_scene_gltf(snapshot)
    raise ValueError(f"unknown scene format {format!r}")


def parse_scene(data: bytes) -> SceneSnapshot:
    """Parse scene_json back into a snapshot (round-trip inverse)."""
    doc = json.loads(data.decode("utf-8"))
    elements = tuple(
        SceneElement(
            activity_id=e["activity_id"],
            status=e["status"],
            progress=e["progress"],
            mesh=Mesh(tuple(e["mesh"]["positions"]), tuple(e["mesh"]["indices"])),
        )
        for e in doc["elements"]
    )
    return SceneSnapshot(date=date.fromisoformat(doc["date"]),
                         elements=elements, summary=dict(doc["summary"]))
