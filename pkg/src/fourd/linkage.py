"""Attribute tables, join/relate, and schedule/geometry completeness.

Tables join on a key field (one-to-one or many-to-one, widening the
destination) or relate (one-to-many, navigable without widening).  Key
fields may have different names but must share a type: number-to-number
or string-to-string.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from fourd.errors import JoinError
from fourd.geom.model import FieldDef, Layer
from fourd.schedule import Schedule


@dataclass(frozen=True)
class AttributeTable:
    name: str
    key_field: str
    fields: tuple[FieldDef, ...]
    rows: tuple[dict, ...]

    def field_names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.fields)

    def field_type(self, name: str) -> str:
        for f in self.fields:
            if f.name == name:
                return f.type
        raise JoinError(f"table {self.name!r} has no field {name!r}")


def parse_table_csv(csv_text: str, name: str, key_field: str) -> AttributeTable:
    """Ingest a CSV with header row; a column is numeric iff every
    non-empty cell parses as a finite number."""
    reader = csv.reader(io.StringIO(csv_text))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise JoinError(f"table {name!r}: empty file") from None
    raw_rows = [row for row in reader if any(cell.strip() for cell in row)]
    for i, row in enumerate(raw_rows, start=2):
        if len(row) != len(header):
            raise JoinError(f"table {name!r}: malformed row at line {i}")

    numeric = []
    for col in range(len(header)):
        cells = [row[col].strip() for row in raw_rows]
        non_empty = [c for c in cells if c]
        numeric.append(bool(non_empty) and all(_is_number(c) for c in non_empty))

    fields = tuple(FieldDef(h, "number" if numeric[i] else "string")
                   for i, h in enumerate(header))
    rows = []
    for row in raw_rows:
        rec = {}
        for i, h in enumerate(header):
            cell = row[i].strip()
            if not cell:
                rec[h] = None
            elif numeric[i]:
                rec[h] = float(cell)
            else:
                rec[h] = cell
        rows.append(rec)
    if key_field not in header:
        raise JoinError(f"table {name!r}: key field {key_field!r} not in header")
    return AttributeTable(name=name, key_field=key_field, fields=fields,
                          rows=tuple(rows))


def _is_number(cell: str) -> bool:
    try:
        return math.isfinite(float(cell))
    except ValueError:
        return False


def _check_key_types(dest: AttributeTable, src: AttributeTable,
                     dest_key: str, src_key: str) -> None:
    dt = dest.field_type(dest_key)
    st = src.field_type(src_key)
    if dt != st:
        raise JoinError(
            f"key type mismatch: {dest.name}.{dest_key} is {dt}, "
            f"{src.name}.{src_key} is {st}")


def _source_index(src: AttributeTable, src_key: str) -> dict:
    index: dict = {}
    for row in src.rows:
        key = row.get(src_key)
        if key is None:
            continue
        if key in index:
            raise JoinError(f"duplicate key {key!r} in source table {src.name!r}")
        index[key] = row
    return index


def join_tables(dest: AttributeTable, src: AttributeTable, dest_key: str,
                src_key: str, cardinality: str = "many_to_one") -> AttributeTable:
    """Widen the destination with the source's fields, matched on key.

    Unmatched destination rows get nulls.  Duplicate source keys are an
    error under any cardinality; under one_to_one a source key matching
    more than one destination row is a violation.
    """
    if cardinality not in ("one_to_one", "many_to_one"):
        raise JoinError(f"unknown cardinality {cardinality!r}")
    _check_key_types(dest, src, dest_key, src_key)
    index = _source_index(src, src_key)

    if cardinality == "one_to_one":
        counts: dict = {}
        for row in dest.rows:
            key = row.get(dest_key)
            if key in index:
                counts[key] = counts.get(key, 0) + 1
        bad = sorted((k for k, n in counts.items() if n > 1), key=repr)
        if bad:
            raise JoinError(
                f"one_to_one violation: source key {bad[0]!r} matches "
                f"{counts[bad[0]]} destination rows")

    dest_names = set(dest.field_names())
    add_fields = []
    rename: dict[str, str] = {}
    for f in src.fields:
        if f.name == src_key:
            continue
        out = f.name if f.name not in dest_names else f"{f.name}_src"
        rename[f.name] = out
        add_fields.append(FieldDef(out, f.type))

    rows = []
    for row in dest.rows:
        match = index.get(row.get(dest_key))
        out = dict(row)
        for f in src.fields:
            if f.name == src_key:
                continue
            out[rename[f.name]] = match.get(f.name) if match is not None else None
        rows.append(out)
    return AttributeTable(name=dest.name, key_field=dest.key_field,
                          fields=dest.fields + tuple(add_fields), rows=tuple(rows))


@dataclass(frozen=True)
class Relate:
    """A navigable one-to-many association from key values to source rows."""

    name: str
    dest_key: str
    src_key: str
    _index: dict

    def lookup(self, key) -> tuple[dict, ...]:
        return tuple(self._index.get(key, ()))


def relate_tables(dest: AttributeTable, src: AttributeTable, dest_key: str,
                  src_key: str) -> Relate:
    """One-to-many association; the destination table is not widened."""
    _check_key_types(dest, src, dest_key, src_key)
    index: dict = {}
    for row in src.rows:
        key = row.get(src_key)
        if key is None:
            continue
        index.setdefault(key, []).append(row)
    return Relate(name=f"{dest.name}->{src.name}", dest_key=dest_key,
                  src_key=src_key, _index=index)


# ---------------------------------------------------------------------------
# schedule/geometry completeness

@dataclass(frozen=True)
class LinkageReport:
    unlinked_activities: tuple[str, ...]                      # no geometry
    orphan_features: tuple[tuple[str, int, str | None], ...]  # (layer, index, id)
    duplicate_linkages: tuple[tuple[str, tuple[tuple[str, int], ...]], ...]

    @property
    def complete(self) -> bool:
        return not (self.unlinked_activities or self.orphan_features)

    def to_dict(self) -> dict:
        return {
            "complete": self.complete,
            "unlinked_activities": list(self.unlinked_activities),
            "orphan_features": [
                {"layer": layer, "feature_index": idx, "activity_id": aid}
                for layer, idx, aid in self.orphan_features
            ],
            "duplicate_linkages": [
                {"activity_id": aid,
                 "occurrences": [{"layer": layer, "feature_index": idx}
                                 for layer, idx in occ]}
                for aid, occ in self.duplicate_linkages
            ],
        }


def validate_linkage(schedule: Schedule, layers: list[Layer]) -> LinkageReport:
    """Two-way completeness check between schedule and geometry.

    Complete iff every activity has at least one feature and every feature
    names a scheduled activity.  Activities appearing in more than one
    feature (e.g. across merged layers) are reported as collisions.
    """
    for layer in layers:
        if "Activity_ID" not in layer.field_names():
            raise JoinError(f"layer {layer.name!r} has no Activity_ID field")

    schedule_ids = set(schedule.ids())
    occurrences: dict[str, list[tuple[str, int]]] = {}
    orphans: list[tuple[str, int, str | None]] = []
    for layer in layers:
        for i, feature in enumerate(layer.features):
            aid = feature.attributes.get("Activity_ID")
            if aid is None or aid not in schedule_ids:
                orphans.append((layer.name, i, aid))
            if aid is not None:
                occurrences.setdefault(aid, []).append((layer.name, i))

    unlinked = sorted(schedule_ids - set(occurrences))
    duplicates = tuple(
        (aid, tuple(occ)) for aid, occ in sorted(occurrences.items())
        if len(occ) > 1 and aid in schedule_ids
    )
    return LinkageReport(
        unlinked_activities=tuple(unlinked),
        orphan_features=tuple(orphans),
        duplicate_linkages=duplicates,
    )
