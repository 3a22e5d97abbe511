"""Project bundle: load, link, solve, extrude; accept schedule revisions.

A manifest JSON names the input files::

    {
      "name": "hostel-block",
      "project_start": "2007-01-01",
      "schedule": "schedule.csv",
      "layers": ["walls.layer.json", "columns.layer.json"],
      "resources": "resources.csv"        // optional
    }

Paths are relative to the manifest.  Loading parses the schedule, merges
each layer's features per activity, validates linkage, solves CPM, and
extrudes the merged geometry.  Revisions replace the whole schedule CSV:
geometry is immutable at runtime, so a revision re-links and re-solves
against the already-extruded prisms and publishes a complete new snapshot
atomically (readers never see a partial state).
"""
from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from datetime import date
from pathlib import Path

from fourd.errors import BundleError, FourdError, ScheduleParseError
from fourd.extrusion import ExtrusionIssue, Mesh, Prism, combine_meshes, extrude_layer
from fourd.geom.model import FieldDef, Layer, merge_features, parse_layer_file
from fourd.linkage import (
    AttributeTable,
    LinkageReport,
    Relate,
    parse_table_csv,
    relate_tables,
    validate_linkage,
)
from fourd.schedule import (
    CpmResult,
    ProjectCalendar,
    Schedule,
    ValidationReport,
    compute_cpm,
    parse_schedule,
    validate_network,
)
from fourd.scene import RevisionDiff, diff_revisions
from fourd.takeoff import ResourceItem, resources_from_table


@dataclass(frozen=True)
class LinkedProject:
    """One immutable, fully linked and solved snapshot of the project."""

    name: str
    calendar: ProjectCalendar
    schedule: Schedule
    schedule_csv: str
    cpm: CpmResult
    layers: tuple[Layer, ...]            # merged, one feature per activity each
    merge_warnings: tuple[str, ...]
    validation: ValidationReport
    linkage: LinkageReport
    prisms: tuple[Prism, ...]
    extrusion_issues: tuple[ExtrusionIssue, ...]
    element_meshes: dict[str, Mesh]      # per linked activity, layers combined
    resources: tuple[ResourceItem, ...]
    resource_table: AttributeTable | None
    resource_relate: Relate | None

    @property
    def project_end(self) -> date:
        return self.calendar.date_of(self.cpm.project_duration)

    def activity_prisms(self, activity_id: str) -> tuple[Prism, ...]:
        return tuple(p for p in self.prisms if p.activity_id == activity_id)


@dataclass(frozen=True)
class BundleState:
    project: LinkedProject
    revision: int


@dataclass(frozen=True)
class RevisionResult:
    accepted: bool
    revision: int
    errors: tuple[str, ...] = ()
    validation: ValidationReport | None = None
    diff: RevisionDiff | None = None
    linkage: LinkageReport | None = None


def _link_and_solve(name: str, calendar: ProjectCalendar, schedule: Schedule,
                    schedule_csv: str, layers: tuple[Layer, ...],
                    merge_warnings: tuple[str, ...],
                    prisms: tuple[Prism, ...],
                    extrusion_issues: tuple[ExtrusionIssue, ...],
                    resources: tuple[ResourceItem, ...],
                    resource_table: AttributeTable | None) -> LinkedProject:
    validation = validate_network(schedule)
    if not validation.is_valid:
        raise BundleError("invalid schedule network: " + "; ".join(validation.messages()))
    cpm = compute_cpm(schedule)
    linkage = validate_linkage(schedule, list(layers))

    schedule_ids = set(schedule.ids())
    per_activity: dict[str, list[Mesh]] = {}
    for prism in prisms:
        if prism.activity_id in schedule_ids:
            per_activity.setdefault(prism.activity_id, []).append(prism.mesh)
    element_meshes = {
        aid: meshes[0] if len(meshes) == 1 else combine_meshes(meshes)
        for aid, meshes in per_activity.items()
    }

    resource_relate = None
    if resource_table is not None:
        schedule_table = AttributeTable(
            name="schedule", key_field="Activity_ID",
            fields=(FieldDef("Activity_ID", "string"),),
            rows=tuple({"Activity_ID": aid} for aid in schedule.ids()))
        resource_relate = relate_tables(schedule_table, resource_table,
                                        "Activity_ID", "Activity_ID")

    return LinkedProject(
        name=name, calendar=calendar, schedule=schedule,
        schedule_csv=schedule_csv, cpm=cpm, layers=layers,
        merge_warnings=merge_warnings, validation=validation, linkage=linkage,
        prisms=prisms, extrusion_issues=extrusion_issues,
        element_meshes=element_meshes, resources=resources,
        resource_table=resource_table, resource_relate=resource_relate)


def load_bundle(manifest_path: str | Path) -> "ProjectBundle":
    """Load and fully link a project bundle; any parse error aborts."""
    manifest_path = Path(manifest_path)
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise BundleError(f"manifest not found: {manifest_path}") from None
    except json.JSONDecodeError as exc:
        raise BundleError(f"{manifest_path}: invalid JSON: {exc}") from None
    for key in ("project_start", "schedule", "layers"):
        if key not in manifest:
            raise BundleError(f"{manifest_path}: manifest missing {key!r}")
    base = manifest_path.parent
    name = str(manifest.get("name", manifest_path.stem))
    try:
        calendar = ProjectCalendar(date.fromisoformat(manifest["project_start"]))
    except ValueError as exc:
        raise BundleError(f"{manifest_path}: bad project_start: {exc}") from None

    schedule_path = base / manifest["schedule"]
    schedule_csv = _read(schedule_path)
    try:
        schedule = parse_schedule(schedule_csv)
    except ScheduleParseError as exc:
        raise BundleError(f"{schedule_path}: {exc}") from exc

    layers: list[Layer] = []
    merge_warnings: list[str] = []
    prisms: list[Prism] = []
    issues: list[ExtrusionIssue] = []
    if not manifest["layers"]:
        raise BundleError(f"{manifest_path}: manifest lists no layers")
    for rel in manifest["layers"]:
        layer_path = base / rel
        try:
            layer = parse_layer_file(_read(layer_path))
            merged, warnings = merge_features(layer, "Activity_ID")
        except FourdError as exc:
            raise BundleError(f"{layer_path}: {exc}") from exc
        layers.append(merged)
        merge_warnings.extend(f"{merged.name}: {w}" for w in warnings)
        layer_prisms, layer_issues = extrude_layer(merged)
        prisms.extend(layer_prisms)
        issues.extend(layer_issues)

    resources: tuple[ResourceItem, ...] = ()
    resource_table = None
    if manifest.get("resources"):
        resource_path = base / manifest["resources"]
        try:
            resource_table = parse_table_csv(_read(resource_path), "resources",
                                             "Activity_ID")
            resources = tuple(resources_from_table(resource_table))
        except FourdError as exc:
            raise BundleError(f"{resource_path}: {exc}") from exc

    try:
        project = _link_and_solve(
            name, calendar, schedule, schedule_csv, tuple(layers),
            tuple(merge_warnings), tuple(prisms), tuple(issues),
            resources, resource_table)
    except FourdError as exc:
        raise BundleError(f"{manifest_path}: {exc}") from exc
    return ProjectBundle(manifest_path=manifest_path, state=BundleState(project, 1))


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise BundleError(f"file not found: {path}") from None


class ProjectBundle:
    """Serves immutable project snapshots; revisions swap them atomically.

    Reads take the current :class:`BundleState` reference (a single
    attribute read); revision submissions serialize on a lock and publish
    a complete new state or none at all.
    """

    def __init__(self, manifest_path: Path, state: BundleState):
        self.manifest_path = manifest_path
        self._state = state
        self._lock = threading.Lock()

    def current(self) -> BundleState:
        return self._state

    def submit_revision(self, schedule_csv: str) -> RevisionResult:
        """Replace the schedule; rejected submissions change nothing."""
        with self._lock:
            old = self._state
            try:
                schedule = parse_schedule(schedule_csv)
            except ScheduleParseError as exc:
                return RevisionResult(accepted=False, revision=old.revision,
                                      errors=(str(exc),))
            validation = validate_network(schedule)
            if not validation.is_valid:
                return RevisionResult(accepted=False, revision=old.revision,
                                      errors=tuple(validation.messages()),
                                      validation=validation)
            project = _link_and_solve(
                old.project.name, old.project.calendar, schedule, schedule_csv,
                old.project.layers, old.project.merge_warnings,
                old.project.prisms, old.project.extrusion_issues,
                old.project.resources, old.project.resource_table)
            diff = diff_revisions(old.project.schedule, old.project.cpm,
                                  schedule, project.cpm)
            state = BundleState(project=project, revision=old.revision + 1)
            self._state = state
            return RevisionResult(accepted=True, revision=state.revision,
                                  validation=validation, diff=diff,
                                  linkage=project.linkage)
